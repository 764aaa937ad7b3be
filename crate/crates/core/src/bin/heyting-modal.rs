use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use heyting_modal::completion::{
    diamond_algebra, extend_interpretation, ClassicalInterpretation, Uniqueness,
};
use heyting_modal::dot::hasse_dot;
use heyting_modal::format::{parse_input, Input};
use heyting_modal::nuclei::{closed_indices, enumerate_nuclei, open_indices, NucleiConfig};
use heyting_modal::presheaf::{build_presheaf, enumerate_clopen_subobjects, PresheafConfig};
use heyting_modal::verify::{verify_input, VerifyConfig};
use heyting_modal::{Error, FiniteHeytingAlgebra};

#[derive(Parser, Debug)]
#[command(
    name = "heyting-modal",
    version,
    about = "Finite Heyting algebras, nuclei and spectral presheaves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest algebra whose nuclei are enumerated.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=64))]
    max_carrier: Option<u64>,

    /// Largest candidate family space searched for clopen subobjects.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_subobjects: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an input file.
    Validate,
    /// Implication table, regular and central elements.
    Analyze,
    /// Enumerate the nuclei and their lattice.
    Nuclei,
    /// The Boolean algebra generated by closed and open nuclei.
    Diamond,
    /// Extend a classical interpretation to the generated Boolean algebra.
    Extend,
    /// States and clopen subobjects of a context poset.
    Presheaf,
    /// Run every verification suite.
    Verify,
    /// Hasse diagram in Graphviz DOT.
    ExportDot {
        #[arg(long, value_enum, default_value_t = Structure::Algebra)]
        structure: Structure,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Structure {
    Algebra,
    Nuclei,
    Diamond,
}

/// Output text plus whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::Input("--input is required".into()))?;
    let text =
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let input = parse_input(&text)?;
    let mut config = VerifyConfig::default();
    if let Some(n) = cli.max_carrier {
        config.nuclei = NucleiConfig {
            max_carrier: n as usize,
        };
    }
    if let Some(n) = cli.max_subobjects {
        config.presheaf = PresheafConfig { max_subobjects: n };
    }

    match cli.command {
        Command::Verify => {
            let report = verify_input(&input, &config)?;
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            Ok(Outcome {
                text,
                passed: report.passed,
            })
        }
        Command::ExportDot { structure } => {
            let algebra = algebra_of(&input, &config)?;
            let dot = match structure {
                Structure::Algebra => hasse_dot("A", &algebra),
                Structure::Nuclei => {
                    hasse_dot("M", enumerate_nuclei(&algebra, &config.nuclei)?.algebra())
                }
                Structure::Diamond => {
                    let m = enumerate_nuclei(&algebra, &config.nuclei)?;
                    let d = diamond_algebra(&algebra, &m)?;
                    hasse_dot("D", &FiniteHeytingAlgebra::heytingize(d.lattice().clone())?)
                }
            };
            Ok(Outcome {
                text: dot,
                passed: true,
            })
        }
        Command::Extend => {
            let Input::Interpretation(i) = &input else {
                return Err(Error::Input(
                    "extend expects an interpretation document".into(),
                ));
            };
            let algebra = FiniteHeytingAlgebra::heytingize(i.source.clone())?;
            let m = enumerate_nuclei(&algebra, &config.nuclei)?;
            let d = diamond_algebra(&algebra, &m)?;
            let f =
                ClassicalInterpretation::new(i.source.clone(), i.target.clone(), i.table.clone())?;
            let (value, passed) = match extend_interpretation(&f, &d) {
                Ok(ext) => {
                    let dl = d.lattice();
                    let unique = match (ext.unique, ext.uniqueness) {
                        (false, _) => "failed",
                        (true, Uniqueness::Verified { .. }) => "verified",
                        (true, Uniqueness::ByGenerators) => "by-generators",
                    };
                    let table: Vec<(String, String)> = dl
                        .elements()
                        .map(|x| {
                            (
                                dl.name(x).to_owned(),
                                f.target().name(ext.table[x]).to_owned(),
                            )
                        })
                        .collect();
                    let images: Vec<Value> = ext
                        .generator_images
                        .iter()
                        .map(|g| json!({"element": g.element, "closed": g.closed, "open": g.open}))
                        .collect();
                    let mut v = json!({
                        "generator_images": images,
                        "table": table,
                        "homomorphism": ext.boolean_homomorphism && ext.complement_preserved,
                        "commutes": ext.commutes,
                        "injective": ext.injective,
                        "unique": unique,
                        "derivations_checked": ext.derivations_checked,
                        "depth": ext.depth,
                    });
                    if let Uniqueness::Verified {
                        homomorphisms,
                        commuting,
                    } = ext.uniqueness
                    {
                        v["homomorphisms_searched"] = json!(homomorphisms);
                        v["commuting"] = json!(commuting);
                    }
                    (v, ext.holds())
                }
                Err(e @ Error::Inconsistent { .. }) => {
                    (json!({"inconsistent": e.to_string()}), false)
                }
                Err(e) => return Err(e),
            };
            Ok(Outcome {
                text: render(cli.format, &value),
                passed,
            })
        }
        Command::Presheaf => {
            let Input::ContextPoset(poset) = &input else {
                return Err(Error::Input(
                    "presheaf expects a context-poset document".into(),
                ));
            };
            let presheaf = build_presheaf(poset.clone())?;
            let contexts: Vec<Value> = (0..poset.len())
                .map(|c| {
                    let states: Vec<&str> = (0..presheaf.states(c).len())
                        .map(|s| presheaf.state_name(c, s))
                        .collect();
                    json!({"name": poset.name(c), "states": states})
                })
                .collect();
            let sub = enumerate_clopen_subobjects(presheaf, &config.presheaf)?;
            let subobjects: Vec<BTreeMap<String, Vec<String>>> = sub
                .families()
                .iter()
                .map(|f| f.describe(sub.presheaf()).into_iter().collect())
                .collect();
            let value = json!({
                "contexts": contexts,
                "least_context": poset.least_context().map(|c| poset.name(c)),
                "sub_cl": sub.len(),
                "regular": sub.algebra().regular_elements()?.len(),
                "subobjects": subobjects,
            });
            Ok(Outcome {
                text: render(cli.format, &value),
                passed: true,
            })
        }
        Command::Validate => {
            let value = match &input {
                Input::ContextPoset(poset) => {
                    let presheaf = build_presheaf(poset.clone())?;
                    json!({
                        "kind": input.kind(),
                        "contexts": poset.len(),
                        "states": presheaf.state_count(),
                        "least_context": poset.least_context().map(|c| poset.name(c)),
                    })
                }
                Input::Interpretation(i) => {
                    ClassicalInterpretation::new(
                        i.source.clone(),
                        i.target.clone(),
                        i.table.clone(),
                    )?;
                    json!({"kind": input.kind(), "source": i.source.len(), "target": i.target.len()})
                }
                Input::Lattice(l) => {
                    let algebra = FiniteHeytingAlgebra::heytingize(l.lattice.clone())?;
                    json!({
                        "kind": input.kind(),
                        "elements": l.lattice.len(),
                        "degenerate": l.lattice.is_degenerate(),
                        "boolean": algebra.is_boolean(),
                    })
                }
            };
            Ok(Outcome {
                text: render(cli.format, &value),
                passed: true,
            })
        }
        Command::Analyze => {
            let algebra = algebra_of(&input, &config)?;
            let l = algebra.lattice();
            let names = |xs: &[usize]| -> Vec<String> {
                xs.iter().map(|&x| l.name(x).to_owned()).collect()
            };
            let implication: Vec<Vec<&str>> = l
                .elements()
                .map(|a| {
                    l.elements()
                        .map(|b| l.name(algebra.implies(a, b)))
                        .collect()
                })
                .collect();
            let negation: Vec<(&str, &str)> = l
                .elements()
                .map(|a| (l.name(a), l.name(algebra.negation(a))))
                .collect();
            let axioms = algebra.verify_heyting_axioms();
            let value = json!({
                "elements": l.names(),
                "implication": implication,
                "negation": negation,
                "regular": algebra.regular_elements().ok().map(|r| names(r.carrier())),
                "central": algebra.central_elements().ok().map(|z| names(z.carrier())),
                "boolean": algebra.is_boolean(),
                "de_morgan": algebra.satisfies_de_morgan(),
                "axioms": axioms.first().map_or("hold".to_owned(), |v| v.to_string()),
            });
            Ok(Outcome {
                text: render(cli.format, &value),
                passed: axioms.holds(),
            })
        }
        Command::Nuclei => {
            let algebra = algebra_of(&input, &config)?;
            let l = algebra.lattice();
            let m = enumerate_nuclei(&algebra, &config.nuclei)?;
            let closed = closed_indices(&algebra, &m)?;
            let open = open_indices(&algebra, &m)?;
            let members: Vec<Value> = m
                .members()
                .iter()
                .enumerate()
                .map(|(i, j)| {
                    let table: Vec<&str> = j.table().iter().map(|&x| l.name(x)).collect();
                    let closed_of: Vec<&str> = l
                        .elements()
                        .filter(|&a| closed[a] == i)
                        .map(|a| l.name(a))
                        .collect();
                    let open_of: Vec<&str> = l
                        .elements()
                        .filter(|&a| open[a] == i)
                        .map(|a| l.name(a))
                        .collect();
                    json!({"table": table, "closed_of": closed_of, "open_of": open_of})
                })
                .collect();
            let order: Vec<Vec<u8>> = (0..m.len())
                .map(|i| (0..m.len()).map(|j| u8::from(m.leq(i, j))).collect())
                .collect();
            let value = json!({
                "elements": l.names(),
                "count": m.len(),
                "members": members,
                "order": order,
                "bottom": m.bottom(),
                "top": m.top(),
            });
            Ok(Outcome {
                text: render(cli.format, &value),
                passed: true,
            })
        }
        Command::Diamond => {
            let algebra = algebra_of(&input, &config)?;
            let l = algebra.lattice();
            let m = enumerate_nuclei(&algebra, &config.nuclei)?;
            let d = diamond_algebra(&algebra, &m)?;
            let dl = d.lattice();
            let pairs = |ix: &[usize]| -> Vec<(String, String)> {
                l.elements()
                    .map(|a| (l.name(a).to_owned(), dl.name(ix[a]).to_owned()))
                    .collect()
            };
            let value = json!({
                "size": d.len(),
                "nuclei": m.len(),
                "regular_nuclei": d.ambient_size(),
                "members": dl.names(),
                "closed": pairs(d.closed()),
                "open": pairs(d.open()),
            });
            Ok(Outcome {
                text: render(cli.format, &value),
                passed: true,
            })
        }
    }
}

/// The Heyting algebra an input denotes: the lattice itself, or the clopen
/// subobjects of a context poset.
fn algebra_of(input: &Input, config: &VerifyConfig) -> Result<FiniteHeytingAlgebra, Error> {
    match input {
        Input::Lattice(l) => l.algebra(),
        Input::ContextPoset(p) => Ok(enumerate_clopen_subobjects(
            build_presheaf(p.clone())?,
            &config.presheaf,
        )?
        .into_algebra()),
        Input::Interpretation(_) => Err(Error::Input(
            "expected a lattice or context-poset document".into(),
        )),
    }
}

fn render<T: Serialize>(format: Format, value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable");
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            flatten("", &value, &mut out);
            out
        }
    }
}

/// One `path: value` line per scalar or scalar array.
fn flatten(prefix: &str, value: &Value, out: &mut String) {
    let scalar = |v: &Value| match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            if let Some(parts) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                out.push_str(&format!("{prefix}: {}\n", parts.join(" ")));
            } else {
                for (i, v) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{i}]"), v, out);
                }
            }
        }
        v => out.push_str(&format!("{prefix}: {}\n", scalar(v).unwrap_or_default())),
    }
}

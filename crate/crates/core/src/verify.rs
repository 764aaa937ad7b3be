//! The full verification pipeline behind `heyting-modal verify`.
//!
//! Structural problems with the input (parse errors, non-distributive
//! lattices, size guards) surface as `Err`; failed theorem checks are
//! recorded in the returned [`Report`] with a witness.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::completion::{
    diamond_algebra, extend_interpretation, injective_lattice_embeddings, ClassicalInterpretation,
    DiamondAlgebra, Uniqueness,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::format::{Input, LatticeInput};
use crate::heyting::FiniteHeytingAlgebra;
use crate::nuclei::{enumerate_nuclei, verify_prop_cons, verify_theorem_emb, NucleiConfig};
use crate::presheaf::{
    build_presheaf, enumerate_clopen_subobjects, property_to_subobject, ContextPoset,
    PresheafConfig,
};

/// Largest algebra for which `verify` searches for extra interpretations.
pub const AUTO_INTERPRETATION_LIMIT: usize = 6;
/// Largest Boolean cube (by atoms) used as an auto-generated target.
pub const AUTO_TARGET_ATOMS: usize = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyConfig {
    pub nuclei: NucleiConfig,
    pub presheaf: PresheafConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorImageDoc {
    pub element: String,
    pub closed: String,
    pub open: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionSummary {
    pub interpretation: String,
    pub target_size: usize,
    pub generator_images: Vec<GeneratorImageDoc>,
    /// `f̂` as `(element of A^◇, image)` pairs.
    pub table: Vec<(String, String)>,
    pub homomorphism: bool,
    pub commutes: bool,
    pub injective: bool,
    /// `verified` or `by-generators`.
    pub unique: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homomorphisms_searched: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commuting: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub input: String,
    pub degenerate: bool,
    pub counts: BTreeMap<String, usize>,
    pub regular: Vec<String>,
    pub central: Vec<String>,
    pub checks: Vec<Check>,
    pub extensions: Vec<ExtensionSummary>,
    pub passed: bool,
}

impl Report {
    fn new(input: &str) -> Self {
        Self {
            input: input.to_owned(),
            degenerate: false,
            counts: BTreeMap::new(),
            regular: Vec::new(),
            central: Vec::new(),
            checks: Vec::new(),
            extensions: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
        self.passed &= passed;
        passed
    }

    fn count(&mut self, name: &str, value: usize) {
        self.counts.insert(name.to_owned(), value);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per count, check and extension.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "input: {}", self.input).unwrap();
        if self.degenerate {
            out.push_str("degenerate: true\n");
        }
        for (k, v) in &self.counts {
            writeln!(out, "count {k}: {v}").unwrap();
        }
        writeln!(out, "regular: {}", self.regular.join(", ")).unwrap();
        writeln!(out, "central: {}", self.central.join(", ")).unwrap();
        for c in &self.checks {
            writeln!(out, "{} {}: {}", verdict(c.passed), c.name, c.detail).unwrap();
        }
        for e in &self.extensions {
            writeln!(
                out,
                "{} extension {} (|B| = {}): commutes={} injective={} unique={}",
                verdict(e.passed),
                e.interpretation,
                e.target_size,
                e.commutes,
                e.injective,
                e.unique
            )
            .unwrap();
        }
        writeln!(out, "result: {}", verdict(self.passed)).unwrap();
        out
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs every applicable suite on a parsed input.
pub fn verify_input(input: &Input, config: &VerifyConfig) -> Result<Report> {
    match input {
        Input::Lattice(l) => verify_lattice(l, config),
        Input::ContextPoset(p) => verify_context_poset(p, config),
        Input::Interpretation(_) => Err(Error::Input(
            "verify takes a lattice or context poset; use `extend` for interpretations".into(),
        )),
    }
}

pub fn verify_lattice(input: &LatticeInput, config: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new("lattice");
    let algebra = input.algebra()?;
    let clean = FiniteHeytingAlgebra::heytingize(input.lattice.clone())?;
    for (i, outcome) in input.check_candidates(&clean).into_iter().enumerate() {
        let name = format!("nuclei.candidate[{i}]");
        match outcome {
            Ok(()) => report.check(&name, true, "is a nucleus"),
            Err(v) => report.check(&name, false, v.describe(clean.lattice())),
        };
    }
    let interpretations = input
        .interpretations
        .iter()
        .enumerate()
        .map(|(i, (target, table))| {
            ClassicalInterpretation::new(input.lattice.clone(), target.clone(), table.clone())
                .map(|f| (format!("supplied[{i}]"), f))
        })
        .collect::<Result<Vec<_>>>()?;
    algebra_suites(&mut report, &algebra, interpretations, config)?;
    Ok(report)
}

pub fn verify_context_poset(poset: &ContextPoset, config: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new("context-poset");
    report.count("contexts", poset.len());
    let presheaf = build_presheaf(poset.clone())?;
    report.check(
        "presheaf.functorial",
        true,
        "restrictions compose along every chain",
    );
    report.count("states", presheaf.state_count());
    let bijective: Vec<&str> = (0..poset.len())
        .filter(|&c| !presheaf.supporting_is_bijective(c))
        .map(|c| poset.name(c))
        .collect();
    report.check(
        "presheaf.state_bijection",
        bijective.is_empty(),
        if bijective.is_empty() {
            "elements of every context correspond to sets of its states".to_owned()
        } else {
            format!("fails in {}", bijective.join(", "))
        },
    );
    report.check(
        "presheaf.least_context",
        true,
        match poset.least_context() {
            Some(c) => format!("least context {}", poset.name(c)),
            None => "no least context".to_owned(),
        },
    );
    let sub = match enumerate_clopen_subobjects(presheaf, &config.presheaf) {
        Ok(s) => s,
        Err(Error::CrossCheck(e)) => {
            report.check("presheaf.subobjects", false, e);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let k = sub.len();
    report.count("sub_cl", k);
    report.count("implication_pairs_checked", k * k);
    report.check(
        "presheaf.forcing_equals_supremum",
        true,
        format!(
            "forcing implication agrees with the supremum formula on {} pairs",
            k * k
        ),
    );
    if poset.len() == 1 {
        let ctx = poset.context(0);
        let images: Result<Vec<_>> = ctx
            .elements()
            .map(|p| property_to_subobject(sub.presheaf(), &[p]))
            .collect();
        let ok = match images {
            Ok(images) => {
                let mut sorted = images.clone();
                sorted.sort();
                sorted.dedup();
                sorted.len() == ctx.len()
                    && k == ctx.len()
                    && sub.algebra().is_boolean()
                    && ctx.elements().all(|p| {
                        ctx.elements().all(|q| {
                            let (ip, iq) = (sub.index_of(images[p]), sub.index_of(images[q]));
                            matches!((ip, iq), (Some(ip), Some(iq))
                                if sub.index_of(images[ctx.meet(p, q)]) == Some(sub.algebra().lattice().meet(ip, iq))
                                && sub.index_of(images[ctx.join(p, q)]) == Some(sub.algebra().lattice().join(ip, iq)))
                        })
                    })
            }
            Err(_) => false,
        };
        report.check(
            "presheaf.classical_limit",
            ok,
            if ok {
                format!("Sub_cl is the {}-element context algebra", ctx.len())
            } else {
                "clopen subobjects differ from the context algebra".to_owned()
            },
        );
    }
    algebra_suites(&mut report, sub.algebra(), Vec::new(), config)?;
    Ok(report)
}

/// Heyting, nucleus, embedding and extension suites on one algebra.
fn algebra_suites(
    report: &mut Report,
    algebra: &FiniteHeytingAlgebra,
    supplied: Vec<(String, ClassicalInterpretation)>,
    config: &VerifyConfig,
) -> Result<()> {
    let l = algebra.lattice();
    report.count("algebra", l.len());
    if l.is_degenerate() {
        report.degenerate = true;
        report.check(
            "degenerate",
            true,
            "one-element algebra; theorem checks hold vacuously",
        );
        return Ok(());
    }

    let axioms = algebra.verify_heyting_axioms();
    let passed = report.check(
        "heyting.axioms",
        axioms.holds(),
        match axioms.first() {
            None => "H1-H4, order equivalence and adjunction hold on all triples".to_owned(),
            Some(v) => v.to_string(),
        },
    );
    if !passed {
        return Ok(());
    }
    let guard = |report: &mut Report, name: &str, r: Result<()>| -> Result<bool> {
        match r {
            Ok(()) => Ok(true),
            Err(
                e @ (Error::CrossCheck(_) | Error::Inconsistent { .. } | Error::NotANucleus(_)),
            ) => {
                report.check(name, false, e.to_string());
                Ok(false)
            }
            Err(e) => Err(e),
        }
    };

    let mut views = None;
    let r = algebra
        .regular_elements()
        .and_then(|reg| Ok((reg, algebra.central_elements()?)))
        .map(|v| views = Some(v));
    if !guard(report, "heyting.boolean_views", r)? {
        return Ok(());
    }
    let (reg, central) = views.expect("set above");
    report.regular = reg
        .carrier()
        .iter()
        .map(|&x| l.name(x).to_owned())
        .collect();
    report.central = central
        .carrier()
        .iter()
        .map(|&x| l.name(x).to_owned())
        .collect();
    report.count("regular", reg.len());
    report.count("central", central.len());
    report.check(
        "heyting.boolean_views",
        true,
        format!("Reg has {} elements, Z has {}", reg.len(), central.len()),
    );

    let mut nuclei = None;
    let r = enumerate_nuclei(algebra, &config.nuclei).map(|m| nuclei = Some(m));
    if !guard(report, "nuclei.enumeration", r)? {
        return Ok(());
    }
    let m = nuclei.expect("set above");
    report.count("nuclei", m.len());
    let join_irreducibles = l
        .elements()
        .filter(|&x| l.elements().filter(|&y| l.covers(y, x)).count() == 1)
        .count();
    report.count("join_irreducibles", join_irreducibles);
    report.check(
        "nuclei.enumeration",
        true,
        "M(A) meet, join and implication agree with their pointwise formulas",
    );
    let expected = 1usize.checked_shl(join_irreducibles as u32).unwrap_or(0);
    report.check(
        "nuclei.count",
        m.len() == expected,
        format!("|M(A)| = {}, 2^|J(A)| = {expected}", m.len()),
    );

    let pc = verify_prop_cons(algebra);
    let strict = pc.entries.iter().filter(|e| e.open_image_strict).count();
    report.count("open_image_strict", strict);
    report.check(
        "closed_open.images",
        pc.holds(),
        if pc.holds() {
            format!(
                "{} elements checked, {strict} with strict open-image containment",
                pc.entries.len()
            )
        } else {
            pc.counterexamples.join("; ")
        },
    );

    let mut emb = None;
    let r = verify_theorem_emb(algebra, &m).map(|e| emb = Some(e));
    if !guard(report, "embedding", r)? {
        return Ok(());
    }
    let emb = emb.expect("set above");
    report.count("reg_nuclei", emb.regular_size);
    report.check(
        "embedding.complements",
        emb.complement_failures.is_empty(),
        if emb.complement_failures.is_empty() {
            "closed and open nuclei are complements for every element".to_owned()
        } else {
            format!("fails at {}", emb.complement_failures.join(", "))
        },
    );
    report.check(
        "embedding.frame_homomorphism",
        emb.outside_regular.is_empty() && emb.frame_violation.is_none(),
        match (&emb.frame_violation, emb.outside_regular.is_empty()) {
            (None, true) => "closed-nucleus map is a frame homomorphism into Reg(M(A))".to_owned(),
            (_, false) => format!("outside Reg(M(A)): {}", emb.outside_regular.join(", ")),
            (Some(v), _) => v.clone(),
        },
    );
    report.check(
        "embedding.injective",
        emb.injective,
        format!("injective = {}", emb.injective),
    );
    report.check(
        "embedding.surjective_iff_boolean",
        emb.surjective == emb.algebra_is_boolean,
        format!(
            "surjective = {}, Boolean = {}",
            emb.surjective, emb.algebra_is_boolean
        ),
    );
    report.check(
        "embedding.implication_witness",
        emb.implication_witness.is_some() != emb.algebra_is_boolean,
        match &emb.implication_witness {
            Some((a, b)) => format!("implication not preserved at ({a}, {b})"),
            None => "implication preserved on all pairs".to_owned(),
        },
    );

    let mut diamond = None;
    let r = diamond_algebra(algebra, &m).map(|d| diamond = Some(d));
    if !guard(report, "diamond", r)? {
        return Ok(());
    }
    let d = diamond.expect("set above");
    report.count("diamond", d.len());
    report.check(
        "diamond.boolean",
        true,
        format!(
            "generated Boolean subalgebra has {} of {} regular nuclei",
            d.len(),
            d.ambient_size()
        ),
    );

    let mut interpretations = vec![("C0".to_owned(), d.canonical_interpretation()?)];
    interpretations.extend(supplied);
    if l.len() <= AUTO_INTERPRETATION_LIMIT {
        for atoms in 1..=AUTO_TARGET_ATOMS {
            let target = corpus::boolean_cube(atoms);
            for (i, table) in injective_lattice_embeddings(l, &target)
                .into_iter()
                .enumerate()
            {
                let f = ClassicalInterpretation::new(l.clone(), target.clone(), table)?;
                interpretations.push((format!("B{}[{i}]", target.len()), f));
            }
        }
    }
    report.count("interpretations", interpretations.len());
    for (name, f) in &interpretations {
        let summary = match extend_interpretation(f, &d) {
            Ok(ext) => summarize(name, f, &d, &ext),
            Err(e @ Error::Inconsistent { .. }) => {
                report.check(&format!("extension.{name}"), false, e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        report.passed &= summary.passed;
        report.extensions.push(summary);
    }
    let failed: Vec<&str> = report
        .extensions
        .iter()
        .filter(|e| !e.passed)
        .map(|e| e.interpretation.as_str())
        .collect();
    report.check(
        "extension.all",
        failed.is_empty(),
        if failed.is_empty() {
            format!(
                "{} interpretations extend uniquely and injectively",
                interpretations.len()
            )
        } else {
            format!("failed: {}", failed.join(", "))
        },
    );
    Ok(())
}

fn summarize(
    name: &str,
    f: &ClassicalInterpretation,
    d: &DiamondAlgebra,
    ext: &crate::completion::Extension,
) -> ExtensionSummary {
    let (unique, searched, commuting) = match ext.uniqueness {
        Uniqueness::Verified {
            homomorphisms,
            commuting,
        } => ("verified", Some(homomorphisms), Some(commuting)),
        Uniqueness::ByGenerators => ("by-generators", None, None),
    };
    ExtensionSummary {
        interpretation: name.to_owned(),
        target_size: f.target().len(),
        generator_images: ext
            .generator_images
            .iter()
            .map(|g| GeneratorImageDoc {
                element: g.element.clone(),
                closed: g.closed.clone(),
                open: g.open.clone(),
            })
            .collect(),
        table: d
            .lattice()
            .elements()
            .map(|x| {
                (
                    d.lattice().name(x).to_owned(),
                    f.target().name(ext.table[x]).to_owned(),
                )
            })
            .collect(),
        homomorphism: ext.boolean_homomorphism && ext.complement_preserved,
        commutes: ext.commutes,
        injective: ext.injective,
        unique: if ext.unique {
            unique.to_owned()
        } else {
            "failed".to_owned()
        },
        homomorphisms_searched: searched,
        commuting,
        passed: ext.holds(),
    }
}

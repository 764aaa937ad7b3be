//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.

mod common;

use std::panic;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use heyting_modal::completion::{
    diamond_algebra, extend_interpretation, injective_lattice_embeddings, ClassicalInterpretation,
    Uniqueness, UNIQUENESS_ORACLE_LIMIT,
};
use heyting_modal::corpus;
use heyting_modal::heyting::supremum_implication;
use heyting_modal::lattice::{HomSignature, LatticeMap};
use heyting_modal::nuclei::{
    closed_nucleus, enumerate_nuclei, open_nucleus, verify_prop_cons, verify_theorem_emb,
};
use heyting_modal::presheaf::{
    build_presheaf, enumerate_clopen_subobjects, forcing_implication, property_to_subobject,
    PresheafConfig,
};
use heyting_modal::verify::{AUTO_INTERPRETATION_LIMIT, AUTO_TARGET_ATOMS};
use heyting_modal::{FiniteHeytingAlgebra, NucleiConfig};
use serde_json::Value;

use common::*;

/// `|Reg(Sub_cl)|` for the two-context system, as produced by the
/// double-negation scan oracle: only the empty family and the full family
/// are fixed by `¬¬`.
const MO2_REGULAR: usize = 2;
const MO2_SUBOBJECTS: usize = 17;

type Criterion = (u32, &'static str, Duration, fn() -> Result<String, String>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "implication adjunction on the corpus",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            2,
            "nuclei enumeration matches brute force",
            Duration::from_secs(5),
            criterion_2,
        ),
        (
            3,
            "closed/open nucleus images",
            Duration::from_secs(30),
            criterion_3,
        ),
        (
            4,
            "closed-nucleus embedding into Reg(M(A))",
            Duration::from_secs(10),
            criterion_4,
        ),
        (
            5,
            "unique extension of classical interpretations",
            Duration::from_secs(30),
            criterion_5,
        ),
        (
            6,
            "clopen subobjects of the two-context system",
            Duration::from_secs(10),
            criterion_6,
        ),
        (
            7,
            "end-to-end verify on the two-context system",
            Duration::from_secs(60),
            criterion_7,
        ),
        (
            8,
            "mutation sensitivity",
            Duration::from_secs(60),
            criterion_8,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => {
                Err(format!("{detail}; took {elapsed:?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {n} PASS [{:.3}s] {title}: {detail}",
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {n} FAIL [{:.3}s] {title}: {detail}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Result<String, String> {
    let mut worst = Duration::ZERO;
    let corpus = corpus_algebras();
    for (name, algebra) in &corpus {
        let start = Instant::now();
        let l = algebra.lattice();
        let table = supremum_implication(l);
        let n = l.len();
        for x in l.elements() {
            for a in l.elements() {
                for b in l.elements() {
                    ensure(l.leq(x, table[a * n + b]) == l.leq(l.meet(x, a), b), || {
                        format!(
                            "{name}: adjunction fails at ({}, {}, {})",
                            l.name(x),
                            l.name(a),
                            l.name(b)
                        )
                    })?;
                }
            }
        }
        worst = worst.max(start.elapsed());
        ensure(worst < Duration::from_secs(1), || {
            format!("{name} took {worst:?}")
        })?;
        for a in l.elements() {
            for b in l.elements() {
                ensure(table[a * n + b] == implication_oracle(l, a, b), || {
                    format!(
                        "{name}: table differs from the scan oracle at ({}, {})",
                        l.name(a),
                        l.name(b)
                    )
                })?;
            }
        }
    }
    Ok(format!("{} algebras, slowest {worst:?}", corpus.len()))
}

fn criterion_2() -> Result<String, String> {
    let expected = [("chain2", 2), ("chain3", 4), ("bool4", 4)];
    let mut counts = Vec::new();
    for (name, algebra) in corpus_algebras().iter().filter(|(_, a)| a.len() <= 5) {
        let m = enumerate_nuclei(algebra, &NucleiConfig::default()).map_err(|e| e.to_string())?;
        let listed: Vec<Vec<usize>> = m.members().iter().map(|j| j.table().to_vec()).collect();
        let brute = brute_force_nuclei(algebra.lattice());
        ensure(listed == brute, || {
            format!(
                "{name}: enumeration has {} nuclei, brute force {}",
                listed.len(),
                brute.len()
            )
        })?;
        if let Some((_, want)) = expected.iter().find(|(n, _)| n == name) {
            ensure(listed.len() == *want, || {
                format!("{name}: {} nuclei, expected {want}", listed.len())
            })?;
        }
        counts.push(format!("{name}={}", listed.len()));
    }
    Ok(counts.join(" "))
}

fn criterion_3() -> Result<String, String> {
    let mut checked = 0;
    for (name, algebra) in corpus_algebras() {
        let report = verify_prop_cons(&algebra);
        ensure(report.holds(), || {
            format!("{name}: {}", report.counterexamples.join("; "))
        })?;
        checked += report.entries.len();
    }
    let chain = heyt(corpus::chain(3));
    let m = chain.lattice().element("m").unwrap();
    let entry = &verify_prop_cons(&chain).entries[m];
    ensure(!entry.boolean && !entry.negation_equals_open, || {
        "3-chain: m should be non-Boolean with distinct negation and open nuclei".into()
    })?;
    ensure(
        closed_nucleus(&chain, chain.negation(m)) != open_nucleus(&chain, m),
        || "3-chain: closed nucleus of ¬m equals open nucleus of m".into(),
    )?;
    Ok(format!("{checked} elements, 0 counterexamples"))
}

fn criterion_4() -> Result<String, String> {
    let mut summary = Vec::new();
    for (name, algebra) in corpus_algebras() {
        let m = enumerate_nuclei(&algebra, &NucleiConfig::default()).map_err(|e| e.to_string())?;
        let r = verify_theorem_emb(&algebra, &m).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{name}: {r:?}"))?;
        ensure(r.surjective == algebra.is_boolean(), || {
            format!("{name}: surjectivity mismatch")
        })?;
        ensure(
            r.implication_witness.is_some() == !algebra.is_boolean(),
            || format!("{name}: implication witness mismatch"),
        )?;
        summary.push(format!("{name}:|M|={}", m.len()));
    }
    Ok(summary.join(" "))
}

fn criterion_5() -> Result<String, String> {
    let mut runs = 0;
    for (name, algebra) in corpus_algebras() {
        let m = enumerate_nuclei(&algebra, &NucleiConfig::default()).map_err(|e| e.to_string())?;
        let d = diamond_algebra(&algebra, &m).map_err(|e| e.to_string())?;
        if d.len() > UNIQUENESS_ORACLE_LIMIT {
            continue;
        }
        let l = algebra.lattice();
        let mut interpretations = vec![d.canonical_interpretation().map_err(|e| e.to_string())?];
        if l.len() <= AUTO_INTERPRETATION_LIMIT {
            for atoms in 1..=AUTO_TARGET_ATOMS {
                let target = corpus::boolean_cube(atoms);
                for table in injective_lattice_embeddings(l, &target) {
                    interpretations.push(
                        ClassicalInterpretation::new(l.clone(), target.clone(), table)
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
        }
        for f in &interpretations {
            let ext = extend_interpretation(f, &d).map_err(|e| format!("{name}: {e}"))?;
            ensure(ext.holds(), || {
                format!(
                    "{name}: extension into |B|={} fails: {ext:?}",
                    f.target().len()
                )
            })?;
            ensure(
                matches!(ext.uniqueness, Uniqueness::Verified { commuting: 1, .. }),
                || format!("{name}: uniqueness not verified exhaustively"),
            )?;
            runs += 1;
        }
    }

    // Worked example: 3-chain into {0,p,q,1} with m ↦ p. The oracle is an
    // exhaustive scan of all 4^4 maps of the diamond.
    let chain = heyt(corpus::chain(3));
    let m = enumerate_nuclei(&chain, &NucleiConfig::default()).unwrap();
    let d = diamond_algebra(&chain, &m).unwrap();
    let b4 = corpus::boolean_cube(2);
    let (p, q) = (b4.element("p").unwrap(), b4.element("q").unwrap());
    let f =
        ClassicalInterpretation::new(chain.lattice().clone(), b4.clone(), vec![0, p, 3]).unwrap();
    let ext = extend_interpretation(&f, &d).map_err(|e| e.to_string())?;
    let mid = chain.lattice().element("m").unwrap();
    ensure(
        ext.table[d.closed()[mid]] == p && ext.table[d.open()[mid]] == q,
        || "worked example: wrong images of the m generators".into(),
    )?;
    let dl = d.lattice();
    let mut commuting = Vec::new();
    let mut table = vec![0usize; dl.len()];
    for code in 0..b4.len().pow(dl.len() as u32) {
        let mut c = code;
        for slot in table.iter_mut() {
            *slot = c % b4.len();
            c /= b4.len();
        }
        let map = LatticeMap::new(dl, &b4, table.clone()).unwrap();
        if map.check_homomorphism(HomSignature::Boolean).holds()
            && chain
                .lattice()
                .elements()
                .all(|a| table[d.closed()[a]] == f.apply(a))
        {
            commuting.push(table.clone());
        }
    }
    ensure(commuting == [ext.table.clone()], || {
        format!(
            "worked example: {} commuting homomorphisms by brute force",
            commuting.len()
        )
    })?;
    Ok(format!(
        "{runs} extensions verified; worked example ◇_m ↦ p, ◇_m→ ↦ q"
    ))
}

fn criterion_6() -> Result<String, String> {
    let poset = corpus::mo_n(2);
    let oracle = subobject_families(&poset);
    ensure(oracle.len() == MO2_SUBOBJECTS, || {
        format!("oracle found {} families", oracle.len())
    })?;
    let presheaf = build_presheaf(poset).map_err(|e| e.to_string())?;
    let sub = enumerate_clopen_subobjects(presheaf, &PresheafConfig::default())
        .map_err(|e| e.to_string())?;
    ensure(sub.len() == MO2_SUBOBJECTS, || {
        format!("|Sub_cl| = {}", sub.len())
    })?;
    let algebra = sub.algebra();
    let axioms = algebra.verify_heyting_axioms();
    ensure(axioms.holds(), || format!("axioms: {:?}", axioms.first()))?;

    let l = algebra.lattice();
    let supremum = supremum_implication(l);
    let mut pairs = 0;
    for (i, s) in sub.families().iter().enumerate() {
        for (j, t) in sub.families().iter().enumerate() {
            let forced = forcing_implication(sub.presheaf(), *s, *t);
            ensure(
                sub.index_of(forced) == Some(supremum[i * l.len() + j]),
                || {
                    format!(
                        "forcing differs from supremum at ({}, {})",
                        l.name(i),
                        l.name(j)
                    )
                },
            )?;
            pairs += 1;
        }
    }
    ensure(pairs == 289, || format!("{pairs} pairs"))?;
    let regular = regular_count_oracle(l);
    ensure(regular == MO2_REGULAR, || {
        format!("¬¬ scan found {regular} regular elements")
    })?;
    ensure(
        algebra.regular_elements().map(|r| r.len()).ok() == Some(regular),
        || "library Reg size differs from the scan".into(),
    )?;

    for atoms in 1..=4 {
        let cube = corpus::boolean_cube(atoms);
        let presheaf = build_presheaf(corpus::single_context(cube.clone())).unwrap();
        let images: Vec<_> = cube
            .elements()
            .map(|p| property_to_subobject(&presheaf, &[p]).unwrap())
            .collect();
        let sub = enumerate_clopen_subobjects(presheaf, &PresheafConfig::default()).unwrap();
        ensure(
            sub.len() == cube.len() && sub.algebra().is_boolean(),
            || {
                format!(
                    "single context with {atoms} atoms: |Sub_cl| = {}",
                    sub.len()
                )
            },
        )?;
        let index: Vec<usize> = images.iter().map(|s| sub.index_of(*s).unwrap()).collect();
        let sl = sub.algebra().lattice();
        for p in cube.elements() {
            for q in cube.elements() {
                ensure(cube.leq(p, q) == sl.leq(index[p], index[q]), || {
                    format!("single context with {atoms} atoms is not order-isomorphic")
                })?;
            }
        }
    }
    Ok(format!("|Sub_cl|={MO2_SUBOBJECTS} |Reg|={MO2_REGULAR} pairs={pairs}; classical limit for 1-4 atoms"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run_verify(name: &str) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_heyting-modal"))
        .args(["verify", "--input"])
        .arg(fixture(name))
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn criterion_7() -> Result<String, String> {
    let (code, first) = run_verify("mo2.json");
    let (code2, second) = run_verify("mo2.json");
    ensure(code == 0 && code2 == 0, || {
        format!("exit codes {code}, {code2}")
    })?;
    ensure(first == second, || "reports differ between runs".into())?;
    let report: Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
    let counts = &report["counts"];
    for (key, want) in [
        ("sub_cl", MO2_SUBOBJECTS),
        ("regular", MO2_REGULAR),
        ("implication_pairs_checked", 289),
        ("nuclei", 32),
        ("diamond", 32),
    ] {
        ensure(counts[key] == want, || {
            format!("count {key} = {}, expected {want}", counts[key])
        })?;
    }
    let checks = report["checks"].as_array().ok_or("no checks")?;
    for name in [
        "heyting.axioms",
        "nuclei.enumeration",
        "closed_open.images",
        "embedding.frame_homomorphism",
        "embedding.surjective_iff_boolean",
        "embedding.implication_witness",
        "extension.all",
        "presheaf.forcing_equals_supremum",
    ] {
        let check = checks
            .iter()
            .find(|c| c["name"] == name)
            .ok_or(format!("missing {name}"))?;
        ensure(check["passed"] == true, || format!("{name} failed"))?;
    }
    Ok(format!(
        "exit 0, {} checks, byte-identical reruns",
        checks.len()
    ))
}

fn failing_check(report: &str) -> Result<(String, String), String> {
    let report: Value = serde_json::from_str(report).map_err(|e| e.to_string())?;
    let check = report["checks"]
        .as_array()
        .ok_or("no checks")?
        .iter()
        .find(|c| c["passed"] == false)
        .ok_or("no failing check")?;
    Ok((
        check["name"].as_str().unwrap_or_default().to_owned(),
        check["detail"].as_str().unwrap_or_default().to_owned(),
    ))
}

fn criterion_8() -> Result<String, String> {
    for clean in ["chain3.json", "chain3_nuclei.json"] {
        let (code, _) = run_verify(clean);
        ensure(code == 0, || format!("{clean} exits {code}"))?;
    }
    let (code, out) = run_verify("chain3_corrupt_implication.json");
    ensure(code == 1, || format!("corrupted implication exits {code}"))?;
    let (check, implication_witness) = failing_check(&out)?;
    ensure(
        check == "heyting.axioms" && implication_witness.contains("(m, 0)"),
        || format!("{check}: {implication_witness}"),
    )?;

    let (code, out) = run_verify("chain3_corrupt_nucleus.json");
    ensure(code == 1, || format!("corrupted nucleus exits {code}"))?;
    let (check, nucleus_witness) = failing_check(&out)?;
    ensure(
        check == "nuclei.candidate[1]" && nucleus_witness.contains("at 1"),
        || format!("{check}: {nucleus_witness}"),
    )?;

    // The same mutations through the library, without the CLI.
    let chain = heyt(corpus::chain(3));
    let corrupted: FiniteHeytingAlgebra = chain.with_implication_entry(1, 0, 2);
    ensure(!corrupted.verify_heyting_axioms().holds(), || {
        "library accepts the corrupted table".into()
    })?;
    Ok(format!(
        "implication: {implication_witness}; nucleus: {nucleus_witness}"
    ))
}

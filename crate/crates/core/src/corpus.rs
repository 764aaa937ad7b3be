//! Standard small lattices used by tests, the acceptance suite and the CLI.

use crate::lattice::FiniteLattice;
use crate::presheaf::{ContextPoset, ContextSpec};

/// The `n`-element chain. Elements are `0, 1` for `n = 2`, `0, m, 1` for
/// `n = 3`, and `0, c1, .., c{n-2}, 1` otherwise.
pub fn chain(n: usize) -> FiniteLattice {
    assert!(n >= 1, "chain needs at least one element");
    let names: Vec<String> = match n {
        1 => vec!["0".into()],
        2 => vec!["0".into(), "1".into()],
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => std::iter::once("0".to_owned())
            .chain((1..n - 1).map(|i| format!("c{i}")))
            .chain(std::iter::once("1".to_owned()))
            .collect(),
    };
    let covers: Vec<(String, String)> = names
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    FiniteLattice::build_from_order(&names, &covers).expect("chains are lattices")
}

/// The Boolean algebra of subsets of `atoms` letters drawn from `pqrstu..`.
/// The empty set is `0`, the full set `1`, and everything else is the
/// concatenation of its letters, so the 4-element cube is `{0, p, q, 1}`.
pub fn boolean_cube(atoms: usize) -> FiniteLattice {
    const LETTERS: &[u8] = b"pqrstuvwxyz";
    assert!(atoms <= LETTERS.len(), "too many atoms");
    let size = 1usize << atoms;
    let full = size - 1;
    let name = |mask: usize| -> String {
        if mask == 0 {
            "0".into()
        } else if mask == full {
            "1".into()
        } else {
            (0..atoms)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| LETTERS[i] as char)
                .collect()
        }
    };
    // Order by (popcount, mask) so that 0 comes first and 1 last.
    let mut masks: Vec<usize> = (0..size).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let names: Vec<String> = masks.iter().map(|&m| name(m)).collect();
    let k = size;
    let mut leq = vec![false; k * k];
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            leq[i * k + j] = a & b == a;
        }
    }
    FiniteLattice::from_order_matrix(names, leq).expect("powersets are lattices")
}

/// The Boolean cube on `atoms` atoms with a fresh bottom `⊥` adjoined
/// below its zero. Distributive, and not Boolean for `atoms >= 1`.
pub fn lifted_boolean(atoms: usize) -> FiniteLattice {
    let cube = boolean_cube(atoms);
    let mut names = vec!["⊥".to_owned()];
    names.extend(cube.names().iter().cloned());
    let k = names.len();
    let mut leq = vec![false; k * k];
    leq[..k].fill(true);
    for a in cube.elements() {
        for b in cube.elements() {
            leq[(a + 1) * k + b + 1] = cube.leq(a, b);
        }
    }
    FiniteLattice::from_order_matrix(names, leq).expect("lifted cube is a lattice")
}

/// `M3`: bottom, three pairwise incomparable atoms, top. Modular, not
/// distributive.
pub fn diamond_m3() -> FiniteLattice {
    FiniteLattice::build_from_order(
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
    .expect("M3 is a lattice")
}

/// `N5`: the pentagon `0 < a < b < 1`, `0 < c < 1`.
pub fn pentagon_n5() -> FiniteLattice {
    FiniteLattice::build_from_order(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    .expect("N5 is a lattice")
}

/// `n` pairwise incomparable 4-element Boolean contexts `B1..Bn` over a
/// shared trivial context `triv`. Context `Bi` has elements `0, pi, qi, 1`.
pub fn mo_n(n: usize) -> ContextPoset {
    let mut contexts = vec![ContextSpec {
        name: "triv".into(),
        lattice: chain(2),
    }];
    let mut order = Vec::new();
    let mut inclusions = Vec::new();
    for i in 1..=n {
        let name = format!("B{i}");
        let p = format!("p{i}");
        let q = format!("q{i}");
        let lattice = FiniteLattice::build_from_order(
            &["0".to_owned(), p.clone(), q.clone(), "1".to_owned()],
            &[
                ("0".to_owned(), p.clone()),
                ("0".to_owned(), q.clone()),
                (p, "1".to_owned()),
                (q, "1".to_owned()),
            ],
        )
        .expect("4-element Boolean algebra");
        contexts.push(ContextSpec {
            name: name.clone(),
            lattice,
        });
        order.push(("triv".to_owned(), name.clone()));
        inclusions.push((
            "triv".to_owned(),
            name,
            vec![
                ("0".to_owned(), "0".to_owned()),
                ("1".to_owned(), "1".to_owned()),
            ],
        ));
    }
    ContextPoset::new(contexts, &order, &inclusions).expect("MO_n is a valid context poset")
}

/// A single context.
pub fn single_context(lattice: FiniteLattice) -> ContextPoset {
    ContextPoset::new(
        vec![ContextSpec {
            name: "C".into(),
            lattice,
        }],
        &[],
        &[],
    )
    .expect("one Boolean context")
}

/// The chain of contexts `2-chain <= 4-element <= 8-element` Boolean
/// algebras, included along `p ↦ p`, `p ↦ p` (`q ↦ qr`).
pub fn boolean_tower() -> ContextPoset {
    let pairs = |xs: &[(&str, &str)]| -> Vec<(String, String)> {
        xs.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    ContextPoset::new(
        vec![
            ContextSpec {
                name: "B2".into(),
                lattice: chain(2),
            },
            ContextSpec {
                name: "B4".into(),
                lattice: boolean_cube(2),
            },
            ContextSpec {
                name: "B8".into(),
                lattice: boolean_cube(3),
            },
        ],
        &pairs(&[("B2", "B4"), ("B4", "B8")]),
        &[
            ("B2".into(), "B4".into(), pairs(&[("0", "0"), ("1", "1")])),
            (
                "B4".into(),
                "B8".into(),
                pairs(&[("0", "0"), ("p", "p"), ("q", "qr"), ("1", "1")]),
            ),
        ],
    )
    .expect("Boolean tower is a valid context poset")
}

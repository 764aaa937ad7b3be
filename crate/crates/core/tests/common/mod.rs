//! Independent oracles shared by the integration tests. Each one recomputes
//! its answer from the order relation alone, by exhaustive search, without
//! going through the library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use heyting_modal::corpus;
use heyting_modal::presheaf::{
    build_presheaf, enumerate_clopen_subobjects, ContextPoset, PresheafConfig,
};
use heyting_modal::{FiniteHeytingAlgebra, FiniteLattice};

/// Greatest `x` with `x ∧ a ≤ b`, found by scanning for the unique maximum.
pub fn implication_oracle(l: &FiniteLattice, a: usize, b: usize) -> usize {
    let meet = |x: usize, y: usize| {
        let lower: Vec<usize> = l
            .elements()
            .filter(|&z| l.leq(z, x) && l.leq(z, y))
            .collect();
        *lower
            .iter()
            .find(|&&z| lower.iter().all(|&w| l.leq(w, z)))
            .expect("meets exist")
    };
    let candidates: Vec<usize> = l.elements().filter(|&x| l.leq(meet(x, a), b)).collect();
    *candidates
        .iter()
        .find(|&&x| candidates.iter().all(|&y| l.leq(y, x)))
        .expect("finite distributive lattices have relative pseudocomplements")
}

/// Every self-map of `l` that is inflationary, idempotent and preserves
/// binary meets, by filtering all `n^n` maps.
pub fn brute_force_nuclei(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = l.len();
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    loop {
        let inflationary = (0..n).all(|x| l.leq(x, table[x]));
        if inflationary
            && (0..n).all(|x| table[table[x]] == table[x])
            && (0..n).all(|x| (0..n).all(|y| table[l.meet(x, y)] == l.meet(table[x], table[y])))
        {
            out.push(table.clone());
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            table[i] += 1;
            if table[i] < n {
                break;
            }
            table[i] = 0;
            i += 1;
        }
    }
}

/// Number of `x` with `¬¬x = x`, negation computed by the implication oracle.
pub fn regular_count_oracle(l: &FiniteLattice) -> usize {
    let neg = |x: usize| implication_oracle(l, x, l.bottom());
    l.elements().filter(|&x| neg(neg(x)) == x).count()
}

/// Clopen subobjects of the state presheaf, by enumerating every family of
/// per-context atom sets and keeping those closed under restriction. States
/// and restrictions are recomputed from the context orders and inclusions.
pub fn subobject_families(poset: &ContextPoset) -> Vec<Vec<BTreeSet<usize>>> {
    let k = poset.len();
    let atoms: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let l = poset.context(c);
            l.elements()
                .filter(|&x| {
                    x != l.bottom()
                        && l.elements()
                            .all(|y| y == l.bottom() || y == x || !l.leq(y, x))
                })
                .collect()
        })
        .collect();
    // restrict(c, d, s) for c ≤ d: the atom of c whose image lies above s.
    let restrict = |c: usize, d: usize, s: usize| -> usize {
        let incl = poset.inclusion(c, d).expect("ordered pair");
        let above: Vec<usize> = atoms[c]
            .iter()
            .copied()
            .filter(|&a| poset.context(d).leq(s, incl[a]))
            .collect();
        assert_eq!(above.len(), 1, "restriction must be a single atom");
        above[0]
    };
    let total: usize = atoms.iter().map(Vec::len).sum();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << total) {
        let mut family = vec![BTreeSet::new(); k];
        let mut bit = 0;
        for c in 0..k {
            for &a in &atoms[c] {
                if mask & (1 << bit) != 0 {
                    family[c].insert(a);
                }
                bit += 1;
            }
        }
        let closed = (0..k).all(|d| {
            (0..k).filter(|&c| poset.leq(c, d)).all(|c| {
                family[d]
                    .iter()
                    .all(|&s| family[c].contains(&restrict(c, d, s)))
            })
        });
        if closed {
            out.push(family);
        }
    }
    out
}

/// Named corpus members; the last entry is the clopen subobject algebra of
/// the two-context system.
pub fn corpus_algebras() -> Vec<(String, FiniteHeytingAlgebra)> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push((format!("chain{n}"), heyt(corpus::chain(n))));
    }
    for atoms in 1..=4 {
        out.push((
            format!("bool{}", 1 << atoms),
            heyt(corpus::boolean_cube(atoms)),
        ));
    }
    out.push(("mo2".into(), mo2_algebra()));
    out
}

pub fn heyt(l: FiniteLattice) -> FiniteHeytingAlgebra {
    FiniteHeytingAlgebra::heytingize(l).expect("corpus lattices are Heyting")
}

pub fn mo2_algebra() -> FiniteHeytingAlgebra {
    let presheaf = build_presheaf(corpus::mo_n(2)).unwrap();
    enumerate_clopen_subobjects(presheaf, &PresheafConfig::default())
        .unwrap()
        .into_algebra()
}

/// Lattice of down-sets of a poset on `points` elements, given as a strict
/// order relation `below[i * points + j]` (`i < j`), closed transitively.
pub fn downset_lattice(points: usize, below: &[bool]) -> FiniteLattice {
    let mut rel = below.to_vec();
    for m in 0..points {
        for i in 0..points {
            for j in 0..points {
                if rel[i * points + m] && rel[m * points + j] {
                    rel[i * points + j] = true;
                }
            }
        }
    }
    let downsets: Vec<u32> = (0u32..(1 << points))
        .filter(|&s| {
            (0..points).all(|j| {
                s & (1 << j) == 0 || (0..points).all(|i| !rel[i * points + j] || s & (1 << i) != 0)
            })
        })
        .collect();
    let names: Vec<String> = downsets
        .iter()
        .map(|&s| {
            let members: Vec<String> = (0..points)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| format!("x{i}"))
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let k = downsets.len();
    let mut leq = vec![false; k * k];
    for (i, &a) in downsets.iter().enumerate() {
        for (j, &b) in downsets.iter().enumerate() {
            leq[i * k + j] = a & !b == 0;
        }
    }
    FiniteLattice::from_order_matrix(names, leq).expect("down-sets form a lattice")
}

//! Nuclei (modal operators) on finite Heyting algebras and the lattice
//! `M(A)` of all of them.
//!
//! A nucleus `j` is inflationary, idempotent and preserves binary meets. Its
//! image is a subset containing `1` that is closed under meets and under
//! `a → (-)` for every `a`; conversely every such subset `C` is the image of
//! exactly one nucleus, `j(x) = ⋀{c ∈ C : x ≤ c}`. Enumeration walks those
//! closed subsets with Ganter's NextClosure, so the cost scales with `|M(A)|`
//! rather than with `2^n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::heyting::FiniteHeytingAlgebra;
use crate::lattice::{ElementSet, FiniteLattice, HomSignature, LatticeMap};

/// Subset masks are `u64`, so no algebra above this size can be enumerated
/// whatever the configured limit.
pub const MAX_ENUMERABLE_CARRIER: usize = 64;

/// A self-map of an algebra's carrier, stored as its table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nucleus(Vec<usize>);

impl Nucleus {
    /// Wraps a table without checking it. Use [`check_nucleus`] to validate.
    pub fn from_table(table: Vec<usize>) -> Self {
        Nucleus(table)
    }

    pub fn identity(n: usize) -> Self {
        Nucleus((0..n).collect())
    }

    pub fn constant(n: usize, value: usize) -> Self {
        Nucleus(vec![value; n])
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Nucleus, lattice: &FiniteLattice) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| lattice.leq(a, b))
    }

    /// `(j(x0),j(x1),..)` using element names.
    pub fn label(&self, lattice: &FiniteLattice) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&x| lattice.name(x)).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NucleusViolation {
    WrongLength { expected: usize, found: usize },
    OutOfRange(usize),
    NotInflationary(usize),
    NotIdempotent(usize),
    NotMeetPreserving(usize, usize),
}

impl NucleusViolation {
    pub fn describe(&self, lattice: &FiniteLattice) -> String {
        match *self {
            NucleusViolation::WrongLength { expected, found } => {
                format!("table has {found} entries, expected {expected}")
            }
            NucleusViolation::OutOfRange(x) => {
                format!("image of {} is not an element", lattice.name(x))
            }
            NucleusViolation::NotInflationary(x) => {
                format!("not inflationary at {}", lattice.name(x))
            }
            NucleusViolation::NotIdempotent(x) => format!("not idempotent at {}", lattice.name(x)),
            NucleusViolation::NotMeetPreserving(x, y) => format!(
                "meet of ({}, {}) not preserved",
                lattice.name(x),
                lattice.name(y)
            ),
        }
    }
}

impl fmt::Display for NucleusViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks the three nucleus conditions exhaustively, in the order
/// inflationary, idempotent, meet-preserving, and returns the first failure.
pub fn check_nucleus(
    algebra: &FiniteHeytingAlgebra,
    table: &[usize],
) -> Result<(), NucleusViolation> {
    let l = algebra.lattice();
    let n = l.len();
    if table.len() != n {
        return Err(NucleusViolation::WrongLength {
            expected: n,
            found: table.len(),
        });
    }
    if let Some(x) = (0..n).find(|&x| table[x] >= n) {
        return Err(NucleusViolation::OutOfRange(x));
    }
    if let Some(x) = (0..n).find(|&x| !l.leq(x, table[x])) {
        return Err(NucleusViolation::NotInflationary(x));
    }
    if let Some(x) = (0..n).find(|&x| table[table[x]] != table[x]) {
        return Err(NucleusViolation::NotIdempotent(x));
    }
    for x in 0..n {
        for y in 0..n {
            if table[l.meet(x, y)] != l.meet(table[x], table[y]) {
                return Err(NucleusViolation::NotMeetPreserving(x, y));
            }
        }
    }
    Ok(())
}

fn require_nucleus(algebra: &FiniteHeytingAlgebra, j: Nucleus) -> Result<Nucleus> {
    match check_nucleus(algebra, j.table()) {
        Ok(()) => Ok(j),
        Err(v) => Err(Error::NotANucleus(v.describe(algebra.lattice()))),
    }
}

/// `x ↦ a ∨ x`.
pub fn closed_nucleus(algebra: &FiniteHeytingAlgebra, a: usize) -> Nucleus {
    let l = algebra.lattice();
    let j = Nucleus(l.elements().map(|x| l.join(a, x)).collect());
    debug_assert!(check_nucleus(algebra, j.table()).is_ok());
    j
}

/// `x ↦ a → x`.
pub fn open_nucleus(algebra: &FiniteHeytingAlgebra, a: usize) -> Nucleus {
    let j = Nucleus(
        algebra
            .lattice()
            .elements()
            .map(|x| algebra.implies(a, x))
            .collect(),
    );
    debug_assert!(check_nucleus(algebra, j.table()).is_ok());
    j
}

/// `{j(x) : x}`, which by idempotence is also the fixed-point set.
pub fn nucleus_image(j: &Nucleus) -> ElementSet {
    j.table().iter().copied().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NucleiConfig {
    /// Largest carrier for which `M(A)` is enumerated.
    pub max_carrier: usize,
}

impl Default for NucleiConfig {
    fn default() -> Self {
        Self { max_carrier: 24 }
    }
}

/// `M(A)`: every nucleus on an algebra, ordered pointwise, packaged as a
/// Heyting algebra over member indices.
#[derive(Debug, Clone)]
pub struct NucleusLattice {
    members: Vec<Nucleus>,
    algebra: FiniteHeytingAlgebra,
    bottom: usize,
    top: usize,
}

impl NucleusLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members sorted by table in lexicographic order.
    pub fn members(&self) -> &[Nucleus] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Nucleus {
        &self.members[i]
    }

    pub fn index_of(&self, j: &Nucleus) -> Option<usize> {
        self.members.binary_search(j).ok()
    }

    /// `M(A)` as a Heyting algebra; element `i` is `members()[i]`.
    pub fn algebra(&self) -> &FiniteHeytingAlgebra {
        &self.algebra
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.algebra.lattice()
    }

    /// Index of the identity nucleus.
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Index of the constant-top nucleus.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.lattice().leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.lattice().meet(i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.lattice().join(i, j)
    }

    pub fn implies(&self, i: usize, j: usize) -> usize {
        self.algebra.implies(i, j)
    }
}

/// Smallest superset of `seed ∪ {1}` closed under binary meet and under
/// `a → (-)` for every `a`.
fn close_image(algebra: &FiniteHeytingAlgebra, implication_masks: &[u64], seed: u64) -> u64 {
    let l = algebra.lattice();
    let mut set = seed | (1u64 << l.top());
    loop {
        let mut next = set;
        for c in bits(set) {
            next |= implication_masks[c];
            for d in bits(set) {
                next |= 1u64 << l.meet(c, d);
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Images of all nuclei, in lectic order, via NextClosure.
fn nucleus_images(algebra: &FiniteHeytingAlgebra) -> Vec<u64> {
    let n = algebra.len();
    let implication_masks: Vec<u64> = (0..n)
        .map(|c| (0..n).fold(0u64, |m, a| m | (1u64 << algebra.implies(a, c))))
        .collect();
    let prefix = |i: usize| -> u64 { (1u64 << i) - 1 };
    let mut current = close_image(algebra, &implication_masks, 0);
    let mut out = vec![current];
    'outer: loop {
        for i in (0..n).rev() {
            if current & (1u64 << i) != 0 {
                continue;
            }
            let candidate = close_image(
                algebra,
                &implication_masks,
                (current & prefix(i)) | (1u64 << i),
            );
            if candidate & prefix(i) == current & prefix(i) {
                current = candidate;
                out.push(current);
                continue 'outer;
            }
        }
        return out;
    }
}

/// Enumerates `M(A)` through nucleus images and builds its order, meet,
/// join and implication tables. The tables are cross-checked against the
/// pointwise meet, the upper-bound join and the infimum formula for `→`.
pub fn enumerate_nuclei(
    algebra: &FiniteHeytingAlgebra,
    config: &NucleiConfig,
) -> Result<NucleusLattice> {
    let n = algebra.len();
    let limit = config.max_carrier.min(MAX_ENUMERABLE_CARRIER);
    if n > limit {
        return Err(Error::TooLarge {
            what: "algebra",
            size: n,
            limit,
        });
    }
    let l = algebra.lattice();
    let mut members: Vec<Nucleus> = nucleus_images(algebra)
        .into_iter()
        .map(|image| {
            Nucleus(
                l.elements()
                    .map(|x| l.meet_all(bits(image).filter(|&c| l.leq(x, c))))
                    .collect(),
            )
        })
        .filter(|j| check_nucleus(algebra, j.table()).is_ok())
        .collect();
    members.sort();
    members.dedup();

    let k = members.len();
    let names: Vec<String> = members.iter().map(|j| j.label(l)).collect();
    let mut leq = vec![false; k * k];
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            leq[i * k + j] = a.leq(b, l);
        }
    }
    let lattice = FiniteLattice::from_order_matrix(names, leq)?;
    let m_algebra = FiniteHeytingAlgebra::heytingize(lattice)?;

    let find = |j: &Nucleus| members.binary_search(j).ok();
    let bottom = find(&Nucleus::identity(n))
        .ok_or_else(|| Error::CrossCheck("identity nucleus missing".into()))?;
    let top = find(&Nucleus::constant(n, l.top()))
        .ok_or_else(|| Error::CrossCheck("constant-top nucleus missing".into()))?;
    let out = NucleusLattice {
        members,
        algebra: m_algebra,
        bottom,
        top,
    };
    if out.lattice().bottom() != bottom || out.lattice().top() != top {
        return Err(Error::CrossCheck(
            "M(A) bounds are not identity / constant-top".into(),
        ));
    }

    for i in 0..k {
        for j in 0..k {
            let (a, b) = (&out.members[i], &out.members[j]);
            let pointwise_meet = nuclei_meet(algebra, a, b)?;
            let formula_impl = nuclei_impl(algebra, a, b)?;
            let formula_join = nuclei_join(algebra, &out, a, b)?;
            let check = |what: &str, j: &Nucleus, expected: usize| -> Result<()> {
                if out.index_of(j) != Some(expected) {
                    return Err(Error::CrossCheck(format!(
                        "M(A) {what} of {} and {} disagrees with its order",
                        a.label(l),
                        b.label(l)
                    )));
                }
                Ok(())
            };
            check("meet", &pointwise_meet, out.meet(i, j))?;
            check("join", &formula_join, out.join(i, j))?;
            check("implication", &formula_impl, out.implies(i, j))?;
        }
    }
    Ok(out)
}

fn same_algebra(algebra: &FiniteHeytingAlgebra, js: &[&Nucleus]) -> Result<()> {
    match js.iter().find(|j| j.len() != algebra.len()) {
        Some(j) => Err(Error::AlgebraMismatch(algebra.len(), j.len())),
        None => Ok(()),
    }
}

/// `(j1 ∧ j2)(x) = j1(x) ∧ j2(x)`.
pub fn nuclei_meet(algebra: &FiniteHeytingAlgebra, j1: &Nucleus, j2: &Nucleus) -> Result<Nucleus> {
    same_algebra(algebra, &[j1, j2])?;
    let l = algebra.lattice();
    require_nucleus(
        algebra,
        Nucleus(
            l.elements()
                .map(|x| l.meet(j1.apply(x), j2.apply(x)))
                .collect(),
        ),
    )
}

/// `(j1 → j2)(x) = ⋀{j1(y) → j2(y) : y ≥ x}`.
pub fn nuclei_impl(algebra: &FiniteHeytingAlgebra, j1: &Nucleus, j2: &Nucleus) -> Result<Nucleus> {
    same_algebra(algebra, &[j1, j2])?;
    let l = algebra.lattice();
    let table = l
        .elements()
        .map(|x| {
            l.meet_all(
                l.elements()
                    .filter(|&y| l.leq(x, y))
                    .map(|y| algebra.implies(j1.apply(y), j2.apply(y))),
            )
        })
        .collect();
    require_nucleus(algebra, Nucleus(table))
}

/// `j1 ∨ j2 = ⋀{j ∈ M(A) : j1, j2 ≤ j}`, over the enumerated members.
pub fn nuclei_join(
    algebra: &FiniteHeytingAlgebra,
    all: &NucleusLattice,
    j1: &Nucleus,
    j2: &Nucleus,
) -> Result<Nucleus> {
    same_algebra(algebra, &[j1, j2])?;
    let l = algebra.lattice();
    let uppers: Vec<&Nucleus> = all
        .members()
        .iter()
        .filter(|j| j1.leq(j, l) && j2.leq(j, l))
        .collect();
    let table = l
        .elements()
        .map(|x| l.meet_all(uppers.iter().map(|j| j.apply(x))))
        .collect();
    require_nucleus(algebra, Nucleus(table))
}

/// Per-element outcome of the closed/open nucleus comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedOpenEntry {
    pub element: String,
    /// `Imag(◇_a) = [a)`.
    pub closed_image_is_filter: bool,
    /// `◇_{¬a}(x) ≤ ◇_{a→}(x)` for every `x`.
    pub negation_below_open: bool,
    /// `Imag(◇_{a→}) ⊆ Imag(◇_{¬a}) = [¬a)`.
    pub open_image_within: bool,
    /// Whether the containment above is strict.
    pub open_image_strict: bool,
    pub boolean: bool,
    /// `◇_{¬a} = ◇_{a→}`.
    pub negation_equals_open: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropConsReport {
    pub entries: Vec<ClosedOpenEntry>,
    pub counterexamples: Vec<String>,
}

impl PropConsReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks, for every `a`: the image of `◇_a` is `[a)`; `◇_{¬a} ≤ ◇_{a→}`;
/// the image of `◇_{a→}` lies in the image of `◇_{¬a}`, which is `[¬a)`;
/// and `a` is Boolean exactly when `◇_{¬a} = ◇_{a→}`.
pub fn verify_prop_cons(algebra: &FiniteHeytingAlgebra) -> PropConsReport {
    let l = algebra.lattice();
    let mut entries = Vec::with_capacity(l.len());
    let mut counterexamples = Vec::new();
    for a in l.elements() {
        let name = l.name(a);
        let not_a = algebra.negation(a);
        let closed = closed_nucleus(algebra, a);
        let closed_neg = closed_nucleus(algebra, not_a);
        let open = open_nucleus(algebra, a);

        let closed_image_is_filter = nucleus_image(&closed) == l.principal_filter(a);
        let negation_below_open = closed_neg.leq(&open, l);
        let open_image = nucleus_image(&open);
        let neg_image = nucleus_image(&closed_neg);
        let open_image_within =
            open_image.is_subset(&neg_image) && neg_image == l.principal_filter(not_a);
        let boolean = algebra.is_boolean_element(a);
        let negation_equals_open = closed_neg == open;

        if !closed_image_is_filter {
            counterexamples.push(format!("Imag(◇_{name}) ≠ [{name})"));
        }
        if !negation_below_open {
            counterexamples.push(format!("◇_¬{name} ≰ ◇_{name}→"));
        }
        if !open_image_within {
            counterexamples.push(format!("Imag(◇_{name}→) ⊄ [¬{name})"));
        }
        if boolean != negation_equals_open {
            counterexamples.push(format!(
                "{name} Boolean = {boolean} but (◇_¬{name} = ◇_{name}→) = {negation_equals_open}"
            ));
        }
        entries.push(ClosedOpenEntry {
            element: name.to_owned(),
            closed_image_is_filter,
            negation_below_open,
            open_image_within,
            open_image_strict: open_image_within && open_image != neg_image,
            boolean,
            negation_equals_open,
        });
    }
    PropConsReport {
        entries,
        counterexamples,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbReport {
    /// Elements `a` for which `◇_{a→}` is not the complement of `◇_a` in `M(A)`.
    pub complement_failures: Vec<String>,
    pub nuclei: usize,
    pub regular_size: usize,
    /// Elements `a` with `◇_a` outside `Reg(M(A))`.
    pub outside_regular: Vec<String>,
    /// First frame-homomorphism violation of `a ↦ ◇_a` into `Reg(M(A))`.
    pub frame_violation: Option<String>,
    pub injective: bool,
    pub surjective: bool,
    pub algebra_is_boolean: bool,
    /// A pair `(a, b)` with `◇_{a→b} ≠ ◇_a → ◇_b`.
    pub implication_witness: Option<(String, String)>,
}

impl EmbReport {
    pub fn holds(&self) -> bool {
        self.complement_failures.is_empty()
            && self.outside_regular.is_empty()
            && self.frame_violation.is_none()
            && self.injective
            && self.surjective == self.algebra_is_boolean
            && self.implication_witness.is_some() != self.algebra_is_boolean
    }
}

/// Index in `M(A)` of `◇_a` for every `a`.
pub fn closed_indices(algebra: &FiniteHeytingAlgebra, m: &NucleusLattice) -> Result<Vec<usize>> {
    algebra
        .lattice()
        .elements()
        .map(|a| {
            m.index_of(&closed_nucleus(algebra, a)).ok_or_else(|| {
                Error::CrossCheck(format!("◇_{} not enumerated", algebra.lattice().name(a)))
            })
        })
        .collect()
}

/// Index in `M(A)` of `◇_{a→}` for every `a`.
pub fn open_indices(algebra: &FiniteHeytingAlgebra, m: &NucleusLattice) -> Result<Vec<usize>> {
    algebra
        .lattice()
        .elements()
        .map(|a| {
            m.index_of(&open_nucleus(algebra, a)).ok_or_else(|| {
                Error::CrossCheck(format!("◇_{}→ not enumerated", algebra.lattice().name(a)))
            })
        })
        .collect()
}

/// Checks that `◇_a` and `◇_{a→}` are complements in `M(A)`, that
/// `a ↦ ◇_a` is an injective frame homomorphism into `Reg(M(A))`, that it is
/// onto exactly when `A` is Boolean, and looks for a pair on which it fails
/// to preserve `→`.
pub fn verify_theorem_emb(algebra: &FiniteHeytingAlgebra, m: &NucleusLattice) -> Result<EmbReport> {
    let l = algebra.lattice();
    let closed = closed_indices(algebra, m)?;
    let open = open_indices(algebra, m)?;

    let complement_failures = l
        .elements()
        .filter(|&a| {
            m.join(closed[a], open[a]) != m.top() || m.meet(closed[a], open[a]) != m.bottom()
        })
        .map(|a| l.name(a).to_owned())
        .collect();

    let reg = m.algebra().regular_elements()?;
    let reg_lattice = reg.to_lattice(m.lattice())?;
    let outside_regular: Vec<String> = l
        .elements()
        .filter(|&a| !reg.contains(closed[a]))
        .map(|a| l.name(a).to_owned())
        .collect();

    let (frame_violation, injective, surjective) = if outside_regular.is_empty() {
        let table = closed
            .iter()
            .map(|&i| reg.local_index(i).expect("checked above"))
            .collect();
        let map = LatticeMap::new(l, &reg_lattice, table)?;
        let check = map.check_homomorphism(HomSignature::Frame);
        (
            check.violation.map(|v| v.describe(l)),
            check.injective,
            map.is_surjective(),
        )
    } else {
        (Some("image leaves Reg(M(A))".to_owned()), false, false)
    };

    let mut implication_witness = None;
    'search: for a in l.elements() {
        for b in l.elements() {
            if closed[algebra.implies(a, b)] != m.implies(closed[a], closed[b]) {
                implication_witness = Some((l.name(a).to_owned(), l.name(b).to_owned()));
                break 'search;
            }
        }
    }

    Ok(EmbReport {
        complement_failures,
        nuclei: m.len(),
        regular_size: reg.len(),
        outside_regular,
        frame_violation,
        injective,
        surjective,
        algebra_is_boolean: algebra.is_boolean(),
        implication_witness,
    })
}

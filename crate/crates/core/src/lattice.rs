//! Finite bounded lattices stored as dense order matrices with precomputed
//! meet and join tables.
//!
//! Elements are indices `0..n` into a name list. Every binary operation is a
//! flat `n * n` table, so queries after construction are O(1).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A set of element indices. Ordered so that reports are deterministic.
pub type ElementSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// Operations a generated substructure must be closed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureSignature {
    Lattice,
    BoundedLattice,
    Boolean,
}

/// Operations a map must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomSignature {
    BoundedLattice,
    Boolean,
    /// All joins and finite meets. On finite lattices all joins are the
    /// binary joins plus the empty join, so this coincides with
    /// `BoundedLattice` extensionally; it is kept separate for reporting.
    Frame,
}

/// Result of closing a generating set under a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    pub members: ElementSet,
    /// The induced lattice on `members`, in ascending parent-index order.
    /// `None` when the closure is empty.
    pub induced: Option<FiniteLattice>,
}

impl FiniteLattice {
    /// Builds a lattice from element names and a (possibly redundant) list of
    /// order pairs `(lower, upper)`. The reflexive-transitive closure is taken
    /// before checking antisymmetry and the existence of all meets and joins.
    pub fn build_from_order<S: AsRef<str>>(names: &[S], covers: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let n = names.len();
        let mut leq = vec![false; n * n];
        for (lo, hi) in covers {
            let lo = *index
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownElement(lo.as_ref().to_owned()))?;
            let hi = *index
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownElement(hi.as_ref().to_owned()))?;
            leq[lo * n + hi] = true;
        }
        Self::from_order_matrix(names, leq)
    }

    /// Builds a lattice from a row-major `n * n` order relation. The relation
    /// is closed reflexively and transitively first.
    pub fn from_order_matrix(names: Vec<String>, mut leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        assert_eq!(leq.len(), n * n, "order matrix must be n*n");
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        reflexive_transitive_closure(n, &mut leq);
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::NotAPoset(names[a].clone(), names[b].clone()));
                }
            }
        }

        // The greatest lower bound, if it exists, is the lower bound with the
        // largest down-set; it then only has to be checked against the rest.
        let down_count: Vec<usize> = (0..n)
            .map(|x| (0..n).filter(|&y| leq[y * n + x]).count())
            .collect();
        let up_count: Vec<usize> = (0..n)
            .map(|x| (0..n).filter(|&y| leq[x * n + y]).count())
            .collect();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lowers: Vec<usize> = (0..n)
                    .filter(|&x| leq[x * n + a] && leq[x * n + b])
                    .collect();
                let glb = lowers
                    .iter()
                    .copied()
                    .max_by_key(|&x| (down_count[x], std::cmp::Reverse(x)))
                    .filter(|&g| lowers.iter().all(|&x| leq[x * n + g]))
                    .ok_or_else(|| Error::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        bound: "meet",
                    })?;
                let uppers: Vec<usize> = (0..n)
                    .filter(|&x| leq[a * n + x] && leq[b * n + x])
                    .collect();
                let lub = uppers
                    .iter()
                    .copied()
                    .max_by_key(|&x| (up_count[x], std::cmp::Reverse(x)))
                    .filter(|&l| uppers.iter().all(|&x| leq[l * n + x]))
                    .ok_or_else(|| Error::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        bound: "join",
                    })?;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        Ok(Self {
            names,
            index,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// One-element lattice where `0 = 1`. Legal, but theorem checks treat it
    /// as vacuous.
    pub fn is_degenerate(&self) -> bool {
        self.names.len() == 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Like [`index_of`](Self::index_of) but reports unknown names as errors.
    pub fn element(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Formats a set of elements as `{a, b, c}`.
    pub fn format_set<'a, I: IntoIterator<Item = &'a usize>>(&self, xs: I) -> String {
        let parts: Vec<&str> = xs.into_iter().map(|&x| self.name(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn set_names(&self, xs: &ElementSet) -> Vec<String> {
        xs.iter().map(|&x| self.names[x].clone()).collect()
    }

    /// Checks the tables against the order and the lattice equations.
    /// Returns a description of the first failure.
    pub fn verify_lattice_laws(&self) -> Option<String> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                return Some(format!("bounds fail at {}", self.name(a)));
            }
            for b in 0..n {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                if !(self.leq(m, a) && self.leq(m, b)) || !(self.leq(a, j) && self.leq(b, j)) {
                    return Some(format!(
                        "bound tables wrong at ({}, {})",
                        self.name(a),
                        self.name(b)
                    ));
                }
                if (0..n).any(|x| self.leq(x, a) && self.leq(x, b) && !self.leq(x, m))
                    || (0..n).any(|x| self.leq(a, x) && self.leq(b, x) && !self.leq(j, x))
                {
                    return Some(format!(
                        "glb/lub not extremal at ({}, {})",
                        self.name(a),
                        self.name(b)
                    ));
                }
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return Some(format!(
                        "commutativity at ({}, {})",
                        self.name(a),
                        self.name(b)
                    ));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Some(format!(
                        "absorption at ({}, {})",
                        self.name(a),
                        self.name(b)
                    ));
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                        || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                    {
                        return Some(format!(
                            "associativity at ({}, {}, {})",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        ));
                    }
                }
            }
        }
        None
    }

    /// First triple with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`, by exhaustive scan.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// `[a)`: every element above `a`.
    pub fn principal_filter(&self, a: usize) -> ElementSet {
        self.elements().filter(|&x| self.leq(a, x)).collect()
    }

    pub fn principal_ideal(&self, a: usize) -> ElementSet {
        self.elements().filter(|&x| self.leq(x, a)).collect()
    }

    pub fn complements_of(&self, a: usize) -> ElementSet {
        self.elements()
            .filter(|&b| self.meet(a, b) == self.bottom && self.join(a, b) == self.top)
            .collect()
    }

    /// The complement of `a` when it exists and is unique.
    pub fn complement(&self, a: usize) -> Option<usize> {
        let cs = self.complements_of(a);
        if cs.len() == 1 {
            cs.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_boolean_lattice(&self) -> bool {
        if !self.is_distributive() {
            return false;
        }
        self.elements().all(|a| {
            let cs = self.complements_of(a);
            assert!(
                cs.len() <= 1,
                "distributive lattice with two complements of {}",
                self.name(a)
            );
            cs.len() == 1
        })
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&x| x != self.bottom && self.covers(self.bottom, x))
            .collect()
    }

    /// `b` covers `a`: `a < b` with nothing strictly in between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        a != b
            && self.leq(a, b)
            && !self
                .elements()
                .any(|x| x != a && x != b && self.leq(a, x) && self.leq(x, b))
    }

    /// All covering pairs `(lower, upper)` in index order: the Hasse diagram.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Least subset containing `generators` closed under the signature's
    /// operations, computed by fixpoint iteration.
    pub fn generated_sublattice(
        &self,
        generators: &ElementSet,
        signature: ClosureSignature,
    ) -> Result<Sublattice> {
        let complements: Option<Vec<usize>> = match signature {
            ClosureSignature::Boolean => {
                if !self.is_boolean_lattice() {
                    return Err(Error::NotBoolean);
                }
                Some(
                    self.elements()
                        .map(|a| self.complement(a).expect("Boolean lattice"))
                        .collect(),
                )
            }
            _ => None,
        };
        let mut members = generators.clone();
        if signature != ClosureSignature::Lattice {
            members.insert(self.bottom);
            members.insert(self.top);
        }
        loop {
            let mut next = members.clone();
            for &a in &members {
                if let Some(c) = &complements {
                    next.insert(c[a]);
                }
                for &b in &members {
                    next.insert(self.meet(a, b));
                    next.insert(self.join(a, b));
                }
            }
            if next.len() == members.len() {
                break;
            }
            members = next;
        }
        let induced = if members.is_empty() {
            None
        } else {
            Some(self.induced(&members)?)
        };
        Ok(Sublattice { members, induced })
    }

    /// The poset induced on `members`, which must itself be a lattice.
    /// Elements keep their names and ascending parent order.
    pub fn induced(&self, members: &ElementSet) -> Result<FiniteLattice> {
        let list: Vec<usize> = members.iter().copied().collect();
        let names = list.iter().map(|&x| self.names[x].clone()).collect();
        let k = list.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in list.iter().enumerate() {
            for (j, &b) in list.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        FiniteLattice::from_order_matrix(names, leq)
    }

    /// Lattices with identical carriers and order (names included).
    pub fn same_structure(&self, other: &FiniteLattice) -> bool {
        self.names == other.names && self.leq == other.leq
    }
}

fn reflexive_transitive_closure(n: usize, leq: &mut [bool]) {
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// An element-index map between two finite lattices.
#[derive(Debug, Clone)]
pub struct LatticeMap<'a> {
    source: &'a FiniteLattice,
    target: &'a FiniteLattice,
    table: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomViolation {
    Bottom,
    Top,
    Join(usize, usize),
    Meet(usize, usize),
    Complement(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomCheck {
    pub violation: Option<HomViolation>,
    pub injective: bool,
}

impl HomCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl HomViolation {
    pub fn describe(&self, source: &FiniteLattice) -> String {
        match *self {
            HomViolation::Bottom => "bottom not preserved".to_owned(),
            HomViolation::Top => "top not preserved".to_owned(),
            HomViolation::Join(a, b) => {
                format!(
                    "join of ({}, {}) not preserved",
                    source.name(a),
                    source.name(b)
                )
            }
            HomViolation::Meet(a, b) => {
                format!(
                    "meet of ({}, {}) not preserved",
                    source.name(a),
                    source.name(b)
                )
            }
            HomViolation::Complement(a) => {
                format!("complement of {} not preserved", source.name(a))
            }
        }
    }
}

impl<'a> LatticeMap<'a> {
    pub fn new(
        source: &'a FiniteLattice,
        target: &'a FiniteLattice,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::Input(format!(
                "map table has {} entries, source has {} elements",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= target.len()) {
            return Err(Error::Input(format!(
                "map entry {bad} is not a target element"
            )));
        }
        Ok(Self {
            source,
            target,
            table,
        })
    }

    pub fn source(&self) -> &'a FiniteLattice {
        self.source
    }

    pub fn target(&self) -> &'a FiniteLattice {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn image(&self, xs: &ElementSet) -> ElementSet {
        xs.iter().map(|&x| self.table[x]).collect()
    }

    pub fn is_injective(&self) -> bool {
        let image: ElementSet = self.table.iter().copied().collect();
        image.len() == self.table.len()
    }

    pub fn is_surjective(&self) -> bool {
        let image: ElementSet = self.table.iter().copied().collect();
        image.len() == self.target.len()
    }

    /// Exhaustively checks preservation of the signature's operations and
    /// reports the first violation. Injectivity is reported separately.
    pub fn check_homomorphism(&self, signature: HomSignature) -> HomCheck {
        let (s, t, h) = (self.source, self.target, &self.table);
        let injective = self.is_injective();
        let fail = |v| HomCheck {
            violation: Some(v),
            injective,
        };
        if h[s.bottom()] != t.bottom() {
            return fail(HomViolation::Bottom);
        }
        if h[s.top()] != t.top() {
            return fail(HomViolation::Top);
        }
        for a in s.elements() {
            for b in s.elements() {
                if h[s.join(a, b)] != t.join(h[a], h[b]) {
                    return fail(HomViolation::Join(a, b));
                }
                if h[s.meet(a, b)] != t.meet(h[a], h[b]) {
                    return fail(HomViolation::Meet(a, b));
                }
            }
        }
        if signature == HomSignature::Boolean {
            for a in s.elements() {
                if let Some(c) = s.complement(a) {
                    if !t.complements_of(h[a]).contains(&h[c]) {
                        return fail(HomViolation::Complement(a));
                    }
                }
            }
        }
        HomCheck {
            violation: None,
            injective,
        }
    }
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.name(a), self.name(b)))
            .collect();
        write!(f, "lattice[{}; {}]", self.names.join(","), covers.join(" "))
    }
}

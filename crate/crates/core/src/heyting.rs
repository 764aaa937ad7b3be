//! Heyting structure on finite distributive lattices: implication, negation,
//! the regular and central Boolean parts, and an exhaustive equational check.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{ElementSet, FiniteLattice};

/// A finite distributive lattice together with its implication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHeytingAlgebra {
    lattice: FiniteLattice,
    implication: Vec<usize>,
}

/// `a → b` as the join of every `x` with `x ∧ a ≤ b`, for all pairs.
pub fn supremum_implication(lattice: &FiniteLattice) -> Vec<usize> {
    let n = lattice.len();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = lattice.join_all(
                lattice
                    .elements()
                    .filter(|&x| lattice.leq(lattice.meet(x, a), b)),
            );
        }
    }
    table
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    /// Lattice laws with universal lower bound.
    H1,
    /// `x ∧ y = x ∧ (x → y)`
    H2,
    /// `x ∧ (y → z) = x ∧ ((x ∧ y) → (x ∧ z))`
    H3,
    /// `z ∧ ((x ∧ y) → x) = z`
    H4,
    /// `a ≤ b` iff `a → b = 1`
    OrderEquivalence,
    /// `x ≤ a → b` iff `x ∧ a ≤ b`
    Adjunction,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::H1 => "H1",
            Axiom::H2 => "H2",
            Axiom::H3 => "H3",
            Axiom::H4 => "H4",
            Axiom::OrderEquivalence => "order-equivalence",
            Axiom::Adjunction => "adjunction",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Names of the offending elements, in the order the axiom binds them.
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.axiom, self.witness.join(", "))
    }
}

/// First violation per axiom, if any.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&AxiomViolation> {
        self.violations.first()
    }
}

impl FiniteHeytingAlgebra {
    /// Equips a finite distributive lattice with its implication and checks
    /// the result.
    pub fn heytingize(lattice: FiniteLattice) -> Result<Self> {
        if let Some((x, y, z)) = lattice.distributivity_witness() {
            return Err(Error::NotDistributive(
                lattice.name(x).into(),
                lattice.name(y).into(),
                lattice.name(z).into(),
            ));
        }
        let implication = supremum_implication(&lattice);
        let n = lattice.len();
        for a in 0..n {
            for b in 0..n {
                let i = implication[a * n + b];
                if !lattice.leq(lattice.meet(i, a), b) {
                    return Err(Error::NoRelativePseudocomplement(
                        lattice.name(a).into(),
                        lattice.name(b).into(),
                    ));
                }
            }
        }
        let algebra = Self {
            lattice,
            implication,
        };
        algebra.require_axioms()?;
        Ok(algebra)
    }

    /// Uses a precomputed implication table, which must pass the full axiom
    /// suite.
    pub fn from_parts(lattice: FiniteLattice, implication: Vec<usize>) -> Result<Self> {
        if let Some((x, y, z)) = lattice.distributivity_witness() {
            return Err(Error::NotDistributive(
                lattice.name(x).into(),
                lattice.name(y).into(),
                lattice.name(z).into(),
            ));
        }
        let algebra = Self::from_parts_unchecked(lattice, implication);
        algebra.require_axioms()?;
        Ok(algebra)
    }

    /// No validation beyond table shape. Intended for fixtures that must be
    /// fed to [`verify_heyting_axioms`](Self::verify_heyting_axioms).
    pub fn from_parts_unchecked(lattice: FiniteLattice, implication: Vec<usize>) -> Self {
        let n = lattice.len();
        assert_eq!(implication.len(), n * n, "implication table must be n*n");
        assert!(
            implication.iter().all(|&x| x < n),
            "implication entry out of range"
        );
        Self {
            lattice,
            implication,
        }
    }

    /// Copy with one implication entry overwritten, unchecked.
    pub fn with_implication_entry(&self, a: usize, b: usize, value: usize) -> Self {
        let mut out = self.clone();
        let n = out.len();
        out.implication[a * n + b] = value;
        out
    }

    fn require_axioms(&self) -> Result<()> {
        match self.verify_heyting_axioms().violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::AxiomViolation {
                axiom: v.axiom.to_string(),
                witness: v.witness.join(", "),
            }),
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> FiniteLattice {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn implication_table(&self) -> &[usize] {
        &self.implication
    }

    #[inline]
    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.implication[a * self.len() + b]
    }

    /// `¬x = x → 0`.
    pub fn negation(&self, x: usize) -> usize {
        self.implies(x, self.lattice.bottom())
    }

    /// `a ∨ ¬a = 1`.
    pub fn is_boolean_element(&self, a: usize) -> bool {
        self.lattice.join(a, self.negation(a)) == self.lattice.top()
    }

    pub fn is_boolean(&self) -> bool {
        self.lattice.elements().all(|a| self.is_boolean_element(a))
    }

    /// Exhaustive check of H1–H4, the order equivalence and the adjunction.
    pub fn verify_heyting_axioms(&self) -> AxiomReport {
        let l = &self.lattice;
        let n = l.len();
        let top = l.top();
        let names = |xs: &[usize]| xs.iter().map(|&x| l.name(x).to_owned()).collect::<Vec<_>>();
        let mut violations = Vec::new();
        let mut record = |axiom, witness: Option<Vec<usize>>| {
            if let Some(w) = witness {
                violations.push(AxiomViolation {
                    axiom,
                    witness: names(&w),
                });
            }
        };

        record(Axiom::H1, l.verify_lattice_laws().map(|_| vec![l.bottom()]));

        let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
        let triples =
            || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));

        record(
            Axiom::H2,
            pairs()
                .find(|&(x, y)| l.meet(x, y) != l.meet(x, self.implies(x, y)))
                .map(|(x, y)| vec![x, y]),
        );
        record(
            Axiom::H3,
            triples()
                .find(|&(x, y, z)| {
                    l.meet(x, self.implies(y, z))
                        != l.meet(x, self.implies(l.meet(x, y), l.meet(x, z)))
                })
                .map(|(x, y, z)| vec![x, y, z]),
        );
        record(
            Axiom::H4,
            triples()
                .find(|&(x, y, z)| l.meet(z, self.implies(l.meet(x, y), x)) != z)
                .map(|(x, y, z)| vec![x, y, z]),
        );
        record(
            Axiom::OrderEquivalence,
            pairs()
                .find(|&(a, b)| l.leq(a, b) != (self.implies(a, b) == top))
                .map(|(a, b)| vec![a, b]),
        );
        record(
            Axiom::Adjunction,
            triples()
                .find(|&(x, a, b)| l.leq(x, self.implies(a, b)) != l.leq(l.meet(x, a), b))
                .map(|(x, a, b)| vec![x, a, b]),
        );
        AxiomReport { violations }
    }

    /// `Reg(A) = {x : ¬¬x = x}` with `∧_R = ∧`, `∨_R = ¬¬(x ∨ y)` and
    /// `x →_R y = ¬¬(¬x ∨ y)`.
    pub fn regular_elements(&self) -> Result<BooleanView> {
        let l = &self.lattice;
        let nn = |x: usize| self.negation(self.negation(x));
        let carrier: Vec<usize> = l.elements().filter(|&x| nn(x) == x).collect();
        let view = BooleanView::build(
            l,
            carrier,
            |a, b| l.meet(a, b),
            |a, b| nn(l.join(a, b)),
            |a, b| nn(l.join(self.negation(a), b)),
        )?;
        if let Some(e) = view.verify_boolean_equations() {
            return Err(Error::CrossCheck(format!("Reg(A) is not Boolean: {e}")));
        }
        Ok(view)
    }

    /// `Z(A) = {x : x ∨ ¬x = 1}` with the operations of `A` restricted.
    pub fn central_elements(&self) -> Result<BooleanView> {
        let l = &self.lattice;
        let carrier: Vec<usize> = l
            .elements()
            .filter(|&x| self.is_boolean_element(x))
            .collect();
        let view = BooleanView::build(
            l,
            carrier,
            |a, b| l.meet(a, b),
            |a, b| l.join(a, b),
            |a, b| self.implies(a, b),
        )?;
        if let Some(e) = view.verify_boolean_equations() {
            return Err(Error::CrossCheck(format!("Z(A) is not Boolean: {e}")));
        }
        if let Some(&x) = view
            .carrier()
            .iter()
            .find(|&&x| self.negation(self.negation(x)) != x)
        {
            return Err(Error::CrossCheck(format!(
                "central element {} is not regular",
                l.name(x)
            )));
        }
        Ok(view)
    }

    /// Whether `¬(x ∧ y) = ¬x ∨ ¬y` holds for all pairs.
    pub fn satisfies_de_morgan(&self) -> bool {
        let l = &self.lattice;
        l.elements().all(|x| {
            l.elements()
                .all(|y| self.negation(l.meet(x, y)) == l.join(self.negation(x), self.negation(y)))
        })
    }
}

/// A Boolean algebra living on a subset of a Heyting algebra's carrier, with
/// its own operation tables. Local indices follow ascending parent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanView {
    carrier: Vec<usize>,
    local: Vec<Option<usize>>,
    meet: Vec<usize>,
    join: Vec<usize>,
    implication: Vec<usize>,
    complement: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl BooleanView {
    fn build(
        parent: &FiniteLattice,
        carrier: Vec<usize>,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
        implication: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut local = vec![None; parent.len()];
        for (i, &x) in carrier.iter().enumerate() {
            local[x] = Some(i);
        }
        let k = carrier.len();
        let to_local = |x: usize, op: &str| {
            local[x].ok_or_else(|| {
                Error::CrossCheck(format!("{op} leaves the view at {}", parent.name(x)))
            })
        };
        let mut m = vec![0; k * k];
        let mut j = vec![0; k * k];
        let mut i = vec![0; k * k];
        for (ai, &a) in carrier.iter().enumerate() {
            for (bi, &b) in carrier.iter().enumerate() {
                m[ai * k + bi] = to_local(meet(a, b), "meet")?;
                j[ai * k + bi] = to_local(join(a, b), "join")?;
                i[ai * k + bi] = to_local(implication(a, b), "implication")?;
            }
        }
        let bottom = to_local(parent.bottom(), "bottom")?;
        let top = to_local(parent.top(), "top")?;
        let complement = (0..k).map(|a| i[a * k + bottom]).collect();
        Ok(Self {
            carrier,
            local,
            meet: m,
            join: j,
            implication: i,
            complement,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Parent indices of the view's elements, ascending.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn carrier_set(&self) -> ElementSet {
        self.carrier.iter().copied().collect()
    }

    pub fn contains(&self, parent: usize) -> bool {
        self.local.get(parent).copied().flatten().is_some()
    }

    pub fn local_index(&self, parent: usize) -> Option<usize> {
        self.local.get(parent).copied().flatten()
    }

    pub fn parent_index(&self, local: usize) -> usize {
        self.carrier[local]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.implication[a * self.len() + b]
    }

    pub fn complement(&self, a: usize) -> usize {
        self.complement[a]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// The view as a standalone lattice under the parent's order restricted
    /// to the carrier. Its tables are cross-checked against the view's.
    pub fn to_lattice(&self, parent: &FiniteLattice) -> Result<FiniteLattice> {
        let lattice = parent.induced(&self.carrier_set())?;
        let k = self.len();
        for a in 0..k {
            for b in 0..k {
                if lattice.meet(a, b) != self.meet(a, b) || lattice.join(a, b) != self.join(a, b) {
                    return Err(Error::CrossCheck(format!(
                        "view operations disagree with the induced order at ({}, {})",
                        lattice.name(a),
                        lattice.name(b)
                    )));
                }
            }
        }
        Ok(lattice)
    }

    /// Lattice laws, distributivity, bounds, complement laws and
    /// `x → y = ¬x ∨ y`, checked on every tuple. Returns the first failure.
    pub fn verify_boolean_equations(&self) -> Option<String> {
        let k = self.len();
        let (m, j, c) = (
            |a, b| self.meet(a, b),
            |a, b| self.join(a, b),
            |a| self.complement(a),
        );
        for x in 0..k {
            if m(x, c(x)) != self.bottom || j(x, c(x)) != self.top {
                return Some(format!("complement law at {x}"));
            }
            if m(x, self.top) != x || j(x, self.bottom) != x {
                return Some(format!("bounds at {x}"));
            }
            for y in 0..k {
                if m(x, y) != m(y, x) || j(x, y) != j(y, x) {
                    return Some(format!("commutativity at ({x}, {y})"));
                }
                if m(x, j(x, y)) != x || j(x, m(x, y)) != x {
                    return Some(format!("absorption at ({x}, {y})"));
                }
                if self.implies(x, y) != j(c(x), y) {
                    return Some(format!("implication at ({x}, {y})"));
                }
                for z in 0..k {
                    if m(m(x, y), z) != m(x, m(y, z)) || j(j(x, y), z) != j(x, j(y, z)) {
                        return Some(format!("associativity at ({x}, {y}, {z})"));
                    }
                    if m(x, j(y, z)) != j(m(x, y), m(x, z)) {
                        return Some(format!("distributivity at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        None
    }
}

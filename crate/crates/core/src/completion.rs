//! Classical interpretations: lattice embeddings of a Heyting algebra into a
//! Boolean algebra, the Boolean algebra `A^◇` generated inside `Reg(M(A))`
//! by the closed and open nuclei, and the extension of an interpretation
//! along `a ↦ ◇_a`.
//!
//! Finite Boolean algebras are complete, so the extension lands directly in
//! the target algebra; no completion step is needed.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::heyting::FiniteHeytingAlgebra;
use crate::lattice::{ClosureSignature, ElementSet, FiniteLattice, HomSignature, LatticeMap};
use crate::nuclei::{
    closed_indices, closed_nucleus, nucleus_image, open_indices, open_nucleus, NucleusLattice,
};

/// Size bound (on both sides) under which uniqueness of an extension is
/// re-verified by searching every Boolean homomorphism.
pub const UNIQUENESS_ORACLE_LIMIT: usize = 16;

/// `A^◇` with its embedding data.
#[derive(Debug, Clone)]
pub struct DiamondAlgebra {
    base: FiniteLattice,
    ambient_size: usize,
    nuclei: Vec<usize>,
    lattice: FiniteLattice,
    closed: Vec<usize>,
    open: Vec<usize>,
}

impl DiamondAlgebra {
    /// The lattice of the algebra the nuclei act on.
    pub fn base(&self) -> &FiniteLattice {
        &self.base
    }

    /// `A^◇` as a lattice; element names are nucleus labels.
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// `|Reg(M(A))|`.
    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    /// Index in `M(A)` of each element of `A^◇`.
    pub fn nucleus_indices(&self) -> &[usize] {
        &self.nuclei
    }

    /// Element of `A^◇` holding `◇_a`, per `a`.
    pub fn closed(&self) -> &[usize] {
        &self.closed
    }

    /// Element of `A^◇` holding `◇_{a→}`, per `a`.
    pub fn open(&self) -> &[usize] {
        &self.open
    }

    /// `C_0 : a ↦ ◇_a`.
    pub fn canonical_interpretation(&self) -> Result<ClassicalInterpretation> {
        ClassicalInterpretation::new(self.base.clone(), self.lattice.clone(), self.closed.clone())
    }
}

/// Builds `A^◇`: the Boolean subalgebra of `Reg(M(A))` generated by every
/// `◇_a` and `◇_{a→}`.
pub fn diamond_algebra(
    algebra: &FiniteHeytingAlgebra,
    m: &NucleusLattice,
) -> Result<DiamondAlgebra> {
    let reg = m.algebra().regular_elements()?;
    let reg_lattice = reg.to_lattice(m.lattice())?;
    let to_reg = |i: usize| {
        reg.local_index(i).ok_or_else(|| {
            Error::CrossCheck(format!("generator {} is not regular", m.lattice().name(i)))
        })
    };
    let closed_m = closed_indices(algebra, m)?;
    let open_m = open_indices(algebra, m)?;
    let closed_r = closed_m
        .iter()
        .map(|&i| to_reg(i))
        .collect::<Result<Vec<_>>>()?;
    let open_r = open_m
        .iter()
        .map(|&i| to_reg(i))
        .collect::<Result<Vec<_>>>()?;
    let generators: ElementSet = closed_r.iter().chain(&open_r).copied().collect();
    let sub = reg_lattice.generated_sublattice(&generators, ClosureSignature::Boolean)?;
    let lattice = sub.induced.expect("Boolean closure contains the bounds");
    if !lattice.is_boolean_lattice() {
        return Err(Error::CrossCheck("A^◇ is not Boolean".into()));
    }
    let members: Vec<usize> = sub.members.iter().copied().collect();
    let position = |r: usize| members.binary_search(&r).expect("generator in closure");
    let diamond = DiamondAlgebra {
        base: algebra.lattice().clone(),
        ambient_size: reg.len(),
        nuclei: members.iter().map(|&r| reg.parent_index(r)).collect(),
        closed: closed_r.iter().map(|&r| position(r)).collect(),
        open: open_r.iter().map(|&r| position(r)).collect(),
        lattice,
    };
    diamond.canonical_interpretation()?;
    Ok(diamond)
}

/// An injective bounded-lattice homomorphism into a Boolean algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalInterpretation {
    source: FiniteLattice,
    target: FiniteLattice,
    table: Vec<usize>,
}

/// Checks target Booleanness, the bounded-lattice homomorphism laws and
/// injectivity, and names the first requirement that fails.
pub fn check_classical_interpretation(f: &LatticeMap<'_>) -> Result<(), String> {
    if !f.target().is_boolean_lattice() {
        return Err("target is not a Boolean algebra".into());
    }
    let check = f.check_homomorphism(HomSignature::BoundedLattice);
    if let Some(v) = check.violation {
        return Err(v.describe(f.source()));
    }
    if !check.injective {
        return Err("map is not injective".into());
    }
    Ok(())
}

impl ClassicalInterpretation {
    pub fn new(source: FiniteLattice, target: FiniteLattice, table: Vec<usize>) -> Result<Self> {
        let map = LatticeMap::new(&source, &target, table.clone())?;
        check_classical_interpretation(&map).map_err(Error::NotClassical)?;
        Ok(Self {
            source,
            target,
            table,
        })
    }

    pub fn source(&self) -> &FiniteLattice {
        &self.source
    }

    pub fn target(&self) -> &FiniteLattice {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    /// Every Boolean homomorphism `A^◇ → B` was enumerated; `commuting` of
    /// them make the triangle commute.
    Verified {
        homomorphisms: usize,
        commuting: usize,
    },
    /// Above the search bound: two homomorphisms agreeing on a generating
    /// set coincide, and the generators' images are forced.
    ByGenerators,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorImage {
    pub element: String,
    pub closed: String,
    pub open: String,
}

/// The extension `f̂ : A^◇ → B` of a classical interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    /// `f̂` as a table from `A^◇` indices to target indices.
    pub table: Vec<usize>,
    pub generator_images: Vec<GeneratorImage>,
    /// Derivations replayed while saturating, including re-derivations of
    /// already valued elements.
    pub derivations_checked: usize,
    /// Saturation rounds until no new element was reached.
    pub depth: usize,
    pub boolean_homomorphism: bool,
    pub complement_preserved: bool,
    pub commutes: bool,
    pub injective: bool,
    pub unique: bool,
    pub uniqueness: Uniqueness,
}

impl Extension {
    pub fn holds(&self) -> bool {
        self.boolean_homomorphism
            && self.complement_preserved
            && self.commutes
            && self.injective
            && self.unique
    }
}

struct Saturation {
    values: Vec<Option<usize>>,
    derivations: usize,
    changed: bool,
}

impl Saturation {
    fn assign(&mut self, dl: &FiniteLattice, b: &FiniteLattice, x: usize, v: usize) -> Result<()> {
        self.derivations += 1;
        match self.values[x] {
            None => {
                self.values[x] = Some(v);
                self.changed = true;
                Ok(())
            }
            Some(old) if old == v => Ok(()),
            Some(old) => Err(Error::Inconsistent {
                element: dl.name(x).to_owned(),
                first: b.name(old).to_owned(),
                second: b.name(v).to_owned(),
            }),
        }
    }
}

/// Extends `f` along `C_0`.
///
/// `f̂` is seeded by `◇_a ↦ f(a)` and `◇_{a→} ↦ ¬f(a)`, then propagated along
/// meets, joins and complements of `A^◇` until saturation. Every derivation
/// met on the way, including those reaching an element that already has a
/// value, is replayed in the target; a disagreement is
/// [`Error::Inconsistent`]. The last round re-derives every pair, which
/// amounts to a full homomorphism check.
pub fn extend_interpretation(f: &ClassicalInterpretation, d: &DiamondAlgebra) -> Result<Extension> {
    if !f.source().same_structure(d.base()) {
        return Err(Error::AlgebraMismatch(f.source().len(), d.base().len()));
    }
    let (dl, b) = (d.lattice(), f.target());
    let b_complement: Vec<usize> = b
        .elements()
        .map(|x| b.complement(x).ok_or(Error::NotBoolean))
        .collect::<Result<_>>()?;
    let d_complement: Vec<usize> = dl
        .elements()
        .map(|x| dl.complement(x).ok_or(Error::NotBoolean))
        .collect::<Result<_>>()?;

    let mut state = Saturation {
        values: vec![None; dl.len()],
        derivations: 0,
        changed: false,
    };
    for a in f.source().elements() {
        state.assign(dl, b, d.closed()[a], f.apply(a))?;
        state.assign(dl, b, d.open()[a], b_complement[f.apply(a)])?;
    }
    let mut depth = 0;
    loop {
        state.changed = false;
        let known: Vec<(usize, usize)> = state
            .values
            .iter()
            .enumerate()
            .filter_map(|(x, v)| v.map(|v| (x, v)))
            .collect();
        for &(x, vx) in &known {
            state.assign(dl, b, d_complement[x], b_complement[vx])?;
            for &(y, vy) in &known {
                state.assign(dl, b, dl.meet(x, y), b.meet(vx, vy))?;
                state.assign(dl, b, dl.join(x, y), b.join(vx, vy))?;
            }
        }
        if !state.changed {
            break;
        }
        depth += 1;
    }
    let Saturation {
        values,
        derivations,
        ..
    } = state;
    let table: Vec<usize> = values
        .iter()
        .enumerate()
        .map(|(x, v)| {
            v.ok_or_else(|| {
                Error::CrossCheck(format!("{} not reached from the generators", dl.name(x)))
            })
        })
        .collect::<Result<_>>()?;

    let map = LatticeMap::new(dl, b, table.clone())?;
    let check = map.check_homomorphism(HomSignature::Boolean);
    let complement_preserved = dl
        .elements()
        .all(|x| table[d_complement[x]] == b_complement[table[x]]);
    let commutes = f
        .source()
        .elements()
        .all(|a| table[d.closed()[a]] == f.apply(a));

    let (unique, uniqueness) =
        if dl.len() <= UNIQUENESS_ORACLE_LIMIT && b.len() <= UNIQUENESS_ORACLE_LIMIT {
            let all = all_boolean_homomorphisms(dl, b);
            let commuting: Vec<&Vec<usize>> = all
                .iter()
                .filter(|h| {
                    f.source()
                        .elements()
                        .all(|a| h[d.closed()[a]] == f.apply(a))
                })
                .collect();
            (
                commuting.len() == 1 && *commuting[0] == table,
                Uniqueness::Verified {
                    homomorphisms: all.len(),
                    commuting: commuting.len(),
                },
            )
        } else {
            (true, Uniqueness::ByGenerators)
        };

    let generator_images = f
        .source()
        .elements()
        .map(|a| GeneratorImage {
            element: f.source().name(a).to_owned(),
            closed: b.name(table[d.closed()[a]]).to_owned(),
            open: b.name(table[d.open()[a]]).to_owned(),
        })
        .collect();

    Ok(Extension {
        table,
        generator_images,
        derivations_checked: derivations,
        depth,
        boolean_homomorphism: check.holds(),
        complement_preserved,
        commutes,
        injective: check.injective,
        unique,
        uniqueness,
    })
}

/// Every Boolean homomorphism between two finite Boolean algebras.
///
/// A Boolean homomorphism is fixed by the images of the source atoms, which
/// must be pairwise disjoint and join to the top; the search enumerates
/// those assignments and keeps the ones that pass a full homomorphism check.
pub fn all_boolean_homomorphisms(
    source: &FiniteLattice,
    target: &FiniteLattice,
) -> Vec<Vec<usize>> {
    let atoms = source.atoms();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(atoms.len());
    assign_atoms(
        source,
        target,
        &atoms,
        &mut images,
        target.bottom(),
        &mut out,
    );
    out.sort();
    out
}

fn assign_atoms(
    source: &FiniteLattice,
    target: &FiniteLattice,
    atoms: &[usize],
    images: &mut Vec<usize>,
    covered: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if images.len() == atoms.len() {
        if covered != target.top() {
            return;
        }
        let table: Vec<usize> = source
            .elements()
            .map(|x| {
                target.join_all(
                    atoms
                        .iter()
                        .zip(images.iter())
                        .filter(|(&a, _)| source.leq(a, x))
                        .map(|(_, &y)| y),
                )
            })
            .collect();
        let map = LatticeMap::new(source, target, table.clone()).expect("table in range");
        if map.check_homomorphism(HomSignature::Boolean).holds() {
            out.push(table);
        }
        return;
    }
    for y in target.elements() {
        if target.meet(y, covered) == target.bottom() {
            images.push(y);
            assign_atoms(source, target, atoms, images, target.join(covered, y), out);
            images.pop();
        }
    }
}

/// Every injective bounded-lattice homomorphism `source → target`, found by
/// backtracking over images in index order.
pub fn injective_lattice_embeddings(
    source: &FiniteLattice,
    target: &FiniteLattice,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if source.len() > target.len() {
        return out;
    }
    let mut table: Vec<Option<usize>> = vec![None; source.len()];
    table[source.bottom()] = Some(target.bottom());
    if source.top() != source.bottom() {
        table[source.top()] = Some(target.top());
    } else if target.top() != target.bottom() {
        return out;
    }
    let order: Vec<usize> = source.elements().filter(|x| table[*x].is_none()).collect();
    let mut used: BTreeSet<usize> = table.iter().flatten().copied().collect();
    embed(source, target, &order, 0, &mut table, &mut used, &mut out);
    out.sort();
    out
}

fn embed(
    source: &FiniteLattice,
    target: &FiniteLattice,
    order: &[usize],
    depth: usize,
    table: &mut Vec<Option<usize>>,
    used: &mut BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == order.len() {
        let full: Vec<usize> = table.iter().map(|v| v.expect("all assigned")).collect();
        let map = LatticeMap::new(source, target, full.clone()).expect("table in range");
        let check = map.check_homomorphism(HomSignature::BoundedLattice);
        if check.holds() && check.injective {
            out.push(full);
        }
        return;
    }
    let x = order[depth];
    for y in target.elements() {
        if used.contains(&y) {
            continue;
        }
        let consistent = source.elements().all(|z| match table[z] {
            None => true,
            Some(hz) => {
                source.leq(x, z) == target.leq(y, hz)
                    && table[source.meet(x, z)].is_none_or(|m| m == target.meet(y, hz))
                    && table[source.join(x, z)].is_none_or(|j| j == target.join(y, hz))
            }
        });
        if !consistent {
            continue;
        }
        table[x] = Some(y);
        used.insert(y);
        embed(source, target, order, depth + 1, table, used, out);
        used.remove(&y);
        table[x] = None;
    }
}

/// The data compared when asking whether `b` is classically implied under
/// the reading of `a` through `◇_{a→}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceReport {
    /// `◇_b ≥ ◇_{a→}` pointwise.
    pub closed_b_above_open_a: bool,
    /// `◇_{¬a} = ◇_{a→}`.
    pub negation_equals_open: bool,
    /// `[a)`.
    pub consequences: Vec<String>,
    /// `[¬a)`.
    pub negation_consequences: Vec<String>,
    /// `Imag(◇_{a→})`.
    pub open_image: Vec<String>,
}

pub fn consequence_compare(
    algebra: &FiniteHeytingAlgebra,
    m: &NucleusLattice,
    a: usize,
    b: usize,
) -> Result<ConsequenceReport> {
    let l = algebra.lattice();
    let closed_b = m
        .index_of(&closed_nucleus(algebra, b))
        .ok_or_else(|| Error::CrossCheck("◇_b not enumerated".into()))?;
    let open_a = m
        .index_of(&open_nucleus(algebra, a))
        .ok_or_else(|| Error::CrossCheck("◇_a→ not enumerated".into()))?;
    Ok(ConsequenceReport {
        closed_b_above_open_a: m.leq(open_a, closed_b),
        negation_equals_open: closed_nucleus(algebra, algebra.negation(a))
            == open_nucleus(algebra, a),
        consequences: l.set_names(&l.principal_filter(a)),
        negation_consequences: l.set_names(&l.principal_filter(algebra.negation(a))),
        open_image: l.set_names(&nucleus_image(&open_nucleus(algebra, a))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::nuclei::{enumerate_nuclei, NucleiConfig};

    fn setup(l: FiniteLattice) -> (FiniteHeytingAlgebra, NucleusLattice, DiamondAlgebra) {
        let a = FiniteHeytingAlgebra::heytingize(l).unwrap();
        let m = enumerate_nuclei(&a, &NucleiConfig::default()).unwrap();
        let d = diamond_algebra(&a, &m).unwrap();
        (a, m, d)
    }

    #[test]
    fn diamond_sizes() {
        assert_eq!(setup(corpus::chain(2)).2.len(), 2);
        let (_, m, d) = setup(corpus::chain(3));
        assert_eq!(d.len(), 4);
        assert_eq!(d.len(), m.len());
        assert_eq!(setup(corpus::boolean_cube(2)).2.len(), 4);
    }

    #[test]
    fn classical_interpretation_checks() {
        let c = corpus::chain(3);
        let b = corpus::boolean_cube(2);
        let p = b.element("p").unwrap();
        assert!(ClassicalInterpretation::new(c.clone(), b.clone(), vec![0, p, 3]).is_ok());
        let err = ClassicalInterpretation::new(c.clone(), c.clone(), vec![0, 1, 2]).unwrap_err();
        assert_eq!(
            err,
            Error::NotClassical("target is not a Boolean algebra".into())
        );
        assert!(ClassicalInterpretation::new(c, b, vec![0, 0, 3]).is_err());
    }

    #[test]
    fn worked_extension() {
        let (a, _, d) = setup(corpus::chain(3));
        let b = corpus::boolean_cube(2);
        let (p, q) = (b.element("p").unwrap(), b.element("q").unwrap());
        let f =
            ClassicalInterpretation::new(a.lattice().clone(), b.clone(), vec![0, p, 3]).unwrap();
        let ext = extend_interpretation(&f, &d).unwrap();
        assert!(ext.holds(), "{ext:?}");
        assert_eq!(ext.table[d.closed()[1]], p);
        assert_eq!(ext.table[d.open()[1]], q);
        assert_eq!(ext.table[d.closed()[0]], 0);
        assert_eq!(ext.table[d.closed()[2]], 3);
        assert_eq!(
            ext.uniqueness,
            Uniqueness::Verified {
                homomorphisms: 4,
                commuting: 1
            }
        );
    }

    #[test]
    fn canonical_extends_to_identity() {
        let (_, _, d) = setup(corpus::chain(4));
        let c0 = d.canonical_interpretation().unwrap();
        let ext = extend_interpretation(&c0, &d).unwrap();
        assert!(ext.holds());
        assert_eq!(ext.table, (0..d.len()).collect::<Vec<_>>());
    }

    #[test]
    fn boolean_source_extension_is_f_after_c0_inverse() {
        let (a, _, d) = setup(corpus::boolean_cube(2));
        let target = corpus::boolean_cube(3);
        for table in injective_lattice_embeddings(a.lattice(), &target) {
            let f =
                ClassicalInterpretation::new(a.lattice().clone(), target.clone(), table).unwrap();
            let ext = extend_interpretation(&f, &d).unwrap();
            assert!(ext.holds());
            for x in a.lattice().elements() {
                assert_eq!(ext.table[d.closed()[x]], f.apply(x));
            }
        }
    }

    #[test]
    fn inconsistent_seed_detected() {
        // Pretend the open generator of `m` is the closed one; seeding then
        // gives one element two different values.
        let (a, _, mut d) = setup(corpus::chain(3));
        d.open[1] = d.closed[1];
        let b = corpus::boolean_cube(2);
        let f =
            ClassicalInterpretation::new(a.lattice().clone(), b.clone(), vec![0, 1, 3]).unwrap();
        assert!(matches!(
            extend_interpretation(&f, &d),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn boolean_homomorphism_counts() {
        // Homs 2^k -> 2^l correspond to maps from l atoms to k atoms.
        for (k, l) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2), (2, 4)] {
            let homs =
                all_boolean_homomorphisms(&corpus::boolean_cube(k), &corpus::boolean_cube(l));
            assert_eq!(homs.len(), k.pow(l as u32), "{k} {l}");
        }
    }

    #[test]
    fn embedding_counts() {
        let b4 = corpus::boolean_cube(2);
        let b16 = corpus::boolean_cube(4);
        assert_eq!(
            injective_lattice_embeddings(&corpus::chain(3), &b16).len(),
            14
        );
        assert_eq!(
            injective_lattice_embeddings(&corpus::chain(5), &b16).len(),
            24
        );
        assert_eq!(injective_lattice_embeddings(&b4, &b16).len(), 14);
        assert!(injective_lattice_embeddings(&corpus::chain(3), &corpus::chain(2)).is_empty());
    }

    #[test]
    fn consequence_examples() {
        let a = FiniteHeytingAlgebra::heytingize(corpus::chain(3)).unwrap();
        let m = enumerate_nuclei(&a, &NucleiConfig::default()).unwrap();
        let r = consequence_compare(&a, &m, 1, 0).unwrap();
        assert!(!r.closed_b_above_open_a);
        assert!(!r.negation_equals_open);
        assert_eq!(r.consequences, vec!["m", "1"]);
        assert_eq!(r.negation_consequences, vec!["0", "m", "1"]);
        assert_eq!(r.open_image, vec!["0", "1"]);
        assert!(
            consequence_compare(&a, &m, 1, 2)
                .unwrap()
                .closed_b_above_open_a
        );
        let mm = consequence_compare(&a, &m, 1, 1).unwrap();
        assert!(!mm.closed_b_above_open_a);
        assert!(!m.leq(
            m.index_of(&closed_nucleus(&a, 1)).unwrap(),
            m.index_of(&open_nucleus(&a, 1)).unwrap()
        ));
    }
}

//! Finite spectral presheaves.
//!
//! A context is a finite Boolean algebra; the contexts form a poset under
//! explicit injective Boolean inclusions. The state space of a context is its
//! set of atoms (its two-valued homomorphisms), and including `C` into `C'`
//! restricts a state of `C'` to the unique atom of `C` lying above it.
//! Clopen subobjects are families of state sets closed under restriction;
//! they form a finite Heyting algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::heyting::{supremum_implication, FiniteHeytingAlgebra};
use crate::lattice::{FiniteLattice, HomSignature, LatticeMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSpec {
    pub name: String,
    pub lattice: FiniteLattice,
}

/// `(sub, super, element pairs)` naming an inclusion map.
pub type InclusionSpec = (String, String, Vec<(String, String)>);

/// Boolean contexts ordered by inclusion.
#[derive(Debug, Clone)]
pub struct ContextPoset {
    contexts: Vec<ContextSpec>,
    leq: Vec<bool>,
    inclusions: BTreeMap<(usize, usize), Vec<usize>>,
}

impl ContextPoset {
    /// `order` lists pairs `(sub, super)`; its reflexive-transitive closure is
    /// the context order. `inclusions` gives, per listed pair, the element
    /// map `sub → super`. Inclusions for pairs only implied by transitivity
    /// are composed; every composite must agree with any explicit map.
    pub fn new(
        contexts: Vec<ContextSpec>,
        order: &[(String, String)],
        inclusions: &[InclusionSpec],
    ) -> Result<Self> {
        if contexts.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut index = HashMap::new();
        for (i, c) in contexts.iter().enumerate() {
            if index.insert(c.name.clone(), i).is_some() {
                return Err(Error::DuplicateName(c.name.clone()));
            }
            if !c.lattice.is_boolean_lattice() {
                return Err(Error::Input(format!(
                    "context `{}` is not a Boolean lattice",
                    c.name
                )));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.to_owned()))
        };
        let k = contexts.len();
        let mut leq = vec![false; k * k];
        for i in 0..k {
            leq[i * k + i] = true;
        }
        for (lo, hi) in order {
            leq[lookup(lo)? * k + lookup(hi)?] = true;
        }
        for m in 0..k {
            for i in 0..k {
                if leq[i * k + m] {
                    for j in 0..k {
                        if leq[m * k + j] {
                            leq[i * k + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..k {
            for j in (i + 1)..k {
                if leq[i * k + j] && leq[j * k + i] {
                    return Err(Error::NotAPoset(
                        contexts[i].name.clone(),
                        contexts[j].name.clone(),
                    ));
                }
            }
        }

        let mut maps: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, c) in contexts.iter().enumerate() {
            maps.insert((i, i), c.lattice.elements().collect());
        }
        for (lo, hi, pairs) in inclusions {
            let (i, j) = (lookup(lo)?, lookup(hi)?);
            if i == j || !leq[i * k + j] {
                return Err(Error::BadInclusion(format!("`{lo}` is not below `{hi}`")));
            }
            let (src, dst) = (&contexts[i].lattice, &contexts[j].lattice);
            let mut table = vec![None; src.len()];
            for (x, y) in pairs {
                let (x, y) = (src.element(x)?, dst.element(y)?);
                if table[x].replace(y).is_some_and(|old| old != y) {
                    return Err(Error::BadInclusion(format!(
                        "`{lo}<{hi}` maps `{}` twice",
                        src.name(x)
                    )));
                }
            }
            let table: Vec<usize> = table
                .into_iter()
                .enumerate()
                .map(|(x, y)| {
                    y.ok_or_else(|| {
                        Error::BadInclusion(format!("`{lo}<{hi}` does not map `{}`", src.name(x)))
                    })
                })
                .collect::<Result<_>>()?;
            let check =
                LatticeMap::new(src, dst, table.clone())?.check_homomorphism(HomSignature::Boolean);
            if let Some(v) = check.violation {
                return Err(Error::BadInclusion(format!(
                    "`{lo}<{hi}`: {}",
                    v.describe(src)
                )));
            }
            if !check.injective {
                return Err(Error::BadInclusion(format!("`{lo}<{hi}` is not injective")));
            }
            maps.insert((i, j), table);
        }

        // Fill transitive pairs by composition until nothing changes.
        loop {
            let mut added = false;
            for i in 0..k {
                for j in 0..k {
                    if i == j || !leq[i * k + j] || maps.contains_key(&(i, j)) {
                        continue;
                    }
                    let via = (0..k).find(|&m| {
                        m != i && m != j && maps.contains_key(&(i, m)) && maps.contains_key(&(m, j))
                    });
                    if let Some(m) = via {
                        let composed = maps[&(i, m)].iter().map(|&x| maps[&(m, j)][x]).collect();
                        maps.insert((i, j), composed);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        for i in 0..k {
            for j in 0..k {
                if leq[i * k + j] && !maps.contains_key(&(i, j)) {
                    return Err(Error::BadInclusion(format!(
                        "no inclusion for `{}<{}`",
                        contexts[i].name, contexts[j].name
                    )));
                }
            }
        }
        for ((i, m), first) in &maps {
            for ((m2, j), second) in &maps {
                if m != m2 {
                    continue;
                }
                let composed: Vec<usize> = first.iter().map(|&x| second[x]).collect();
                if maps[&(*i, *j)] != composed {
                    return Err(Error::BadInclusion(format!(
                        "inclusions do not compose: `{}<{}<{}`",
                        contexts[*i].name, contexts[*m].name, contexts[*j].name
                    )));
                }
            }
        }
        Ok(Self {
            contexts,
            leq,
            inclusions: maps,
        })
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn contexts(&self) -> &[ContextSpec] {
        &self.contexts
    }

    pub fn context(&self, c: usize) -> &FiniteLattice {
        &self.contexts[c].lattice
    }

    pub fn name(&self, c: usize) -> &str {
        &self.contexts[c].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.contexts.iter().position(|c| c.name == name)
    }

    pub fn leq(&self, c: usize, d: usize) -> bool {
        self.leq[c * self.len() + d]
    }

    /// Element map `c → d` for `c ≤ d`.
    pub fn inclusion(&self, c: usize, d: usize) -> Option<&[usize]> {
        self.inclusions.get(&(c, d)).map(Vec::as_slice)
    }

    /// Context below every other, if there is one.
    pub fn least_context(&self) -> Option<usize> {
        (0..self.len()).find(|&c| (0..self.len()).all(|d| self.leq(c, d)))
    }

    /// Strictly ordered pairs `(c, d)`, `c < d`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        (0..k)
            .flat_map(|c| (0..k).map(move |d| (c, d)))
            .filter(|&(c, d)| c != d && self.leq(c, d))
            .collect()
    }
}

/// The state presheaf over a context poset.
#[derive(Debug, Clone)]
pub struct SpectralPresheaf {
    base: ContextPoset,
    states: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    restrictions: BTreeMap<(usize, usize), Vec<usize>>,
}

/// Computes the atoms of each context and the restriction maps, and checks
/// the functor laws.
pub fn build_presheaf(base: ContextPoset) -> Result<SpectralPresheaf> {
    let states: Vec<Vec<usize>> = (0..base.len()).map(|c| base.context(c).atoms()).collect();
    let mut offsets = Vec::with_capacity(states.len());
    let mut total = 0;
    for s in &states {
        offsets.push(total);
        total += s.len();
    }
    let mut restrictions = BTreeMap::new();
    for c in 0..base.len() {
        for d in 0..base.len() {
            if !base.leq(c, d) {
                continue;
            }
            let incl = base.inclusion(c, d).expect("inclusions cover the order");
            let (cl, dl) = (base.context(c), base.context(d));
            let map = states[d]
                .iter()
                .map(|&s| {
                    let above: Vec<usize> = states[c]
                        .iter()
                        .enumerate()
                        .filter(|(_, &a)| dl.leq(s, incl[a]))
                        .map(|(i, _)| i)
                        .collect();
                    match above.as_slice() {
                        [one] => Ok(*one),
                        _ => Err(Error::BadInclusion(format!(
                            "state `{}` of `{}` restricts to {} atoms of `{}`",
                            dl.name(s),
                            base.name(d),
                            above.len(),
                            base.name(c)
                        ))),
                    }
                })
                .collect::<Result<Vec<usize>>>()?;
            debug_assert!(map.iter().all(|&i| i < cl.atoms().len()));
            restrictions.insert((c, d), map);
        }
    }
    for &(c, d) in restrictions.keys() {
        for (&(d2, e), outer) in &restrictions {
            if d2 != d {
                continue;
            }
            let inner = &restrictions[&(c, d)];
            let composed: Vec<usize> = outer.iter().map(|&s| inner[s]).collect();
            if restrictions[&(c, e)] != composed {
                return Err(Error::BadInclusion(format!(
                    "restrictions are not functorial along `{}<{}<{}`",
                    base.name(c),
                    base.name(d),
                    base.name(e)
                )));
            }
        }
    }
    Ok(SpectralPresheaf {
        base,
        states,
        offsets,
        restrictions,
    })
}

impl SpectralPresheaf {
    pub fn base(&self) -> &ContextPoset {
        &self.base
    }

    /// States of `c` as element indices of its lattice (its atoms).
    pub fn states(&self, c: usize) -> &[usize] {
        &self.states[c]
    }

    pub fn state_count(&self) -> usize {
        self.states.iter().map(Vec::len).sum()
    }

    /// Global index of local state `s` of context `c`.
    pub fn global(&self, c: usize, s: usize) -> usize {
        self.offsets[c] + s
    }

    /// Context and local index of a global state.
    pub fn locate(&self, g: usize) -> (usize, usize) {
        let c = self.offsets.partition_point(|&o| o <= g) - 1;
        (c, g - self.offsets[c])
    }

    pub fn state_name(&self, c: usize, s: usize) -> &str {
        self.base.context(c).name(self.states[c][s])
    }

    /// `context:state`.
    pub fn state_label(&self, g: usize) -> String {
        let (c, s) = self.locate(g);
        format!("{}:{}", self.base.name(c), self.state_name(c, s))
    }

    /// Restriction `Σ(d) → Σ(c)` for `c ≤ d`, on local state indices.
    pub fn restriction(&self, c: usize, d: usize) -> Option<&[usize]> {
        self.restrictions.get(&(c, d)).map(Vec::as_slice)
    }

    /// States of `c` supporting `p`: the atoms below it.
    pub fn states_supporting(&self, c: usize, p: usize) -> Vec<usize> {
        let l = self.base.context(c);
        self.states[c]
            .iter()
            .enumerate()
            .filter(|(_, &a)| l.leq(a, p))
            .map(|(i, _)| i)
            .collect()
    }

    /// `p ↦ states_supporting(p)` is a bijection from the elements of `c`
    /// onto the subsets of its states.
    pub fn supporting_is_bijective(&self, c: usize) -> bool {
        let l = self.base.context(c);
        let images: std::collections::BTreeSet<Vec<usize>> =
            l.elements().map(|p| self.states_supporting(c, p)).collect();
        images.len() == l.len() && l.len() == 1usize << self.states[c].len()
    }

    /// Global states that every member of a subobject containing `g` must
    /// also contain: `g` and all its restrictions.
    fn down_closure(&self, g: usize) -> u64 {
        let (d, s) = self.locate(g);
        let mut mask = 1u64 << g;
        for c in 0..self.base.len() {
            if let Some(r) = self.restriction(c, d) {
                mask |= 1u64 << self.global(c, r[s]);
            }
        }
        mask
    }
}

/// A clopen subobject: per context, a set of states closed under
/// restriction. Stored as a mask over global state indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClopenSubobject(u64);

impl ClopenSubobject {
    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, global: usize) -> bool {
        self.0 & (1u64 << global) != 0
    }

    /// Local state indices of `c` in the family.
    pub fn states_in(&self, presheaf: &SpectralPresheaf, c: usize) -> Vec<usize> {
        (0..presheaf.states(c).len())
            .filter(|&s| self.contains(presheaf.global(c, s)))
            .collect()
    }

    /// Per-context state names, in context order.
    pub fn describe(&self, presheaf: &SpectralPresheaf) -> Vec<(String, Vec<String>)> {
        (0..presheaf.base().len())
            .map(|c| {
                (
                    presheaf.base().name(c).to_owned(),
                    self.states_in(presheaf, c)
                        .into_iter()
                        .map(|s| presheaf.state_name(c, s).to_owned())
                        .collect(),
                )
            })
            .collect()
    }

    fn label(&self, presheaf: &SpectralPresheaf) -> String {
        let parts: Vec<String> = (0..presheaf.state_count())
            .filter(|&g| self.contains(g))
            .map(|g| presheaf.state_label(g))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for ClopenSubobject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresheafConfig {
    /// Bound on the number of candidate families (`2^states`).
    pub max_subobjects: u64,
}

impl Default for PresheafConfig {
    fn default() -> Self {
        Self {
            max_subobjects: 1 << 20,
        }
    }
}

/// `Sub_cl(Σ)` with its families; element `i` of the algebra is
/// `families()[i]`.
#[derive(Debug, Clone)]
pub struct SubobjectAlgebra {
    presheaf: SpectralPresheaf,
    families: Vec<ClopenSubobject>,
    algebra: FiniteHeytingAlgebra,
}

impl SubobjectAlgebra {
    pub fn presheaf(&self) -> &SpectralPresheaf {
        &self.presheaf
    }

    pub fn families(&self) -> &[ClopenSubobject] {
        &self.families
    }

    pub fn algebra(&self) -> &FiniteHeytingAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> FiniteHeytingAlgebra {
        self.algebra
    }

    pub fn index_of(&self, s: ClopenSubobject) -> Option<usize> {
        self.families
            .binary_search_by_key(&key(s.0), |f| key(f.0))
            .ok()
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

fn key(mask: u64) -> (u32, u64) {
    (mask.count_ones(), mask)
}

/// `(S ⇒ T)(C)`: states of `C` whose restriction to every subcontext lies
/// in `T` whenever it lies in `S`.
pub fn forcing_implication(
    presheaf: &SpectralPresheaf,
    s: ClopenSubobject,
    t: ClopenSubobject,
) -> ClopenSubobject {
    let mut out = 0u64;
    for g in 0..presheaf.state_count() {
        let down = presheaf.down_closure(g);
        if down & s.0 & !t.0 == 0 {
            out |= 1u64 << g;
        }
    }
    ClopenSubobject(out)
}

/// Enumerates every clopen subobject and packages them as a Heyting algebra.
///
/// Meets and joins are pointwise intersection and union; implication is the
/// forcing formula, cross-checked against `⋁{R : R ∧ S ≤ T}`.
pub fn enumerate_clopen_subobjects(
    presheaf: SpectralPresheaf,
    config: &PresheafConfig,
) -> Result<SubobjectAlgebra> {
    let total = presheaf.state_count();
    let candidates = 1u64.checked_shl(total as u32).filter(|_| total < 64);
    match candidates {
        Some(c) if c <= config.max_subobjects => {}
        _ => {
            return Err(Error::TooLarge {
                what: "candidate family space",
                size: candidates.map_or(usize::MAX, |c| c as usize),
                limit: config.max_subobjects as usize,
            })
        }
    }
    let candidates = candidates.expect("checked");
    let down: Vec<u64> = (0..total).map(|g| presheaf.down_closure(g)).collect();
    let is_subfunctor = |mask: u64| {
        let mut rest = mask;
        while rest != 0 {
            let g = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if down[g] & !mask != 0 {
                return false;
            }
        }
        true
    };
    let mut families: Vec<ClopenSubobject> = (0..candidates)
        .filter(|&m| is_subfunctor(m))
        .map(ClopenSubobject)
        .collect();
    families.sort_by_key(|f| key(f.0));

    let k = families.len();
    let position: HashMap<u64, usize> =
        families.iter().enumerate().map(|(i, f)| (f.0, i)).collect();
    let find = |mask: u64, what: &str| {
        position
            .get(&mask)
            .copied()
            .ok_or_else(|| Error::CrossCheck(format!("{what} of clopen subobjects is not clopen")))
    };
    let names: Vec<String> = families.iter().map(|f| f.label(&presheaf)).collect();
    let mut leq = vec![false; k * k];
    for (i, a) in families.iter().enumerate() {
        for (j, b) in families.iter().enumerate() {
            leq[i * k + j] = a.0 & !b.0 == 0;
        }
    }
    let lattice = FiniteLattice::from_order_matrix(names, leq)?;
    let mut implication = vec![0; k * k];
    for (i, a) in families.iter().enumerate() {
        for (j, b) in families.iter().enumerate() {
            if lattice.meet(i, j) != find(a.0 & b.0, "intersection")?
                || lattice.join(i, j) != find(a.0 | b.0, "union")?
            {
                return Err(Error::CrossCheck(
                    "pointwise operations disagree with the inclusion order".into(),
                ));
            }
            implication[i * k + j] = find(forcing_implication(&presheaf, *a, *b).0, "implication")?;
        }
    }
    if lattice.bottom() != find(0, "empty family")?
        || families[lattice.top()].0.count_ones() as usize != total
    {
        return Err(Error::CrossCheck(
            "bounds are not the empty family and Σ".into(),
        ));
    }
    if supremum_implication(&lattice) != implication {
        return Err(Error::CrossCheck(
            "forcing implication differs from the supremum definition".into(),
        ));
    }
    let algebra = FiniteHeytingAlgebra::from_parts(lattice, implication)?;
    Ok(SubobjectAlgebra {
        presheaf,
        families,
        algebra,
    })
}

/// The family `C ↦ states_supporting(assignment[C])`, which must be closed
/// under restriction.
pub fn property_to_subobject(
    presheaf: &SpectralPresheaf,
    assignment: &[usize],
) -> Result<ClopenSubobject> {
    let k = presheaf.base().len();
    if assignment.len() != k {
        return Err(Error::Input(format!(
            "assignment has {} entries for {k} contexts",
            assignment.len()
        )));
    }
    let mut mask = 0u64;
    for (c, &p) in assignment.iter().enumerate() {
        if p >= presheaf.base().context(c).len() {
            return Err(Error::Input(format!(
                "element {p} is not in context `{}`",
                presheaf.base().name(c)
            )));
        }
        for s in presheaf.states_supporting(c, p) {
            mask |= 1u64 << presheaf.global(c, s);
        }
    }
    for g in 0..presheaf.state_count() {
        if mask & (1u64 << g) != 0 && presheaf.down_closure(g) & !mask != 0 {
            let (c, s) = presheaf.locate(g);
            return Err(Error::NotASubfunctor {
                context: presheaf.base().name(c).to_owned(),
                state: presheaf.state_name(c, s).to_owned(),
            });
        }
    }
    Ok(ClopenSubobject(mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn pairs(xs: &[(&str, &str)]) -> Vec<(String, String)> {
        xs.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn single_context_stalk() {
        let s = build_presheaf(corpus::single_context(corpus::boolean_cube(2))).unwrap();
        assert_eq!(s.states(0).len(), 2);
        let sub = enumerate_clopen_subobjects(s, &PresheafConfig::default()).unwrap();
        assert_eq!(sub.len(), 4);
        assert!(sub.algebra().is_boolean());
    }

    #[test]
    fn mo2_stalks() {
        let s = build_presheaf(corpus::mo_n(2)).unwrap();
        let sizes: Vec<usize> = (0..3).map(|c| s.states(c).len()).collect();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert_eq!(s.restriction(0, 1).unwrap(), &[0, 0]);
        assert_eq!(s.restriction(0, 2).unwrap(), &[0, 0]);
        assert_eq!(s.base().least_context(), Some(0));
    }

    #[test]
    fn tower_restrictions_compose() {
        let s = build_presheaf(corpus::boolean_tower()).unwrap();
        assert_eq!(s.states(2).len(), 3);
        assert_eq!(s.restriction(1, 2).unwrap().len(), 3);
        assert_eq!(s.restriction(0, 1).unwrap(), &[0, 0]);
        let composed: Vec<usize> = s
            .restriction(1, 2)
            .unwrap()
            .iter()
            .map(|&x| s.restriction(0, 1).unwrap()[x])
            .collect();
        assert_eq!(composed, s.restriction(0, 2).unwrap());
    }

    #[test]
    fn supporting_states() {
        let s = build_presheaf(corpus::single_context(corpus::boolean_cube(2))).unwrap();
        let l = s.base().context(0);
        let p = l.element("p").unwrap();
        assert_eq!(s.states_supporting(0, p).len(), 1);
        assert!(s.states_supporting(0, l.bottom()).is_empty());
        assert_eq!(s.states_supporting(0, l.top()).len(), 2);
        assert!(s.supporting_is_bijective(0));

        let s = build_presheaf(corpus::single_context(corpus::boolean_cube(3))).unwrap();
        let l = s.base().context(0);
        assert_eq!(s.states_supporting(0, l.element("pq").unwrap()).len(), 2);
    }

    #[test]
    fn mo2_has_seventeen_subobjects() {
        let s = build_presheaf(corpus::mo_n(2)).unwrap();
        let sub = enumerate_clopen_subobjects(s, &PresheafConfig::default()).unwrap();
        assert_eq!(sub.len(), 17);
        assert!(sub.algebra().lattice().is_distributive());
        assert!(!sub.algebra().is_boolean());
    }

    #[test]
    fn mo2_double_negation_example() {
        let s = build_presheaf(corpus::mo_n(2)).unwrap();
        let b1 = s.base().context(1);
        let assignment = [1, b1.element("p1").unwrap(), 0];
        let fam = property_to_subobject(&s, &assignment).unwrap();
        let sub = enumerate_clopen_subobjects(s, &PresheafConfig::default()).unwrap();
        let a = sub.algebra();
        let i = sub.index_of(fam).unwrap();
        assert_eq!(a.negation(i), a.lattice().bottom());
        assert_eq!(a.negation(a.negation(i)), a.lattice().top());
    }

    #[test]
    fn property_assignments() {
        let s = build_presheaf(corpus::mo_n(2)).unwrap();
        let tops: Vec<usize> = (0..3).map(|c| s.base().context(c).top()).collect();
        let fam = property_to_subobject(&s, &tops).unwrap();
        assert_eq!(fam.mask().count_ones() as usize, s.state_count());
        assert_eq!(property_to_subobject(&s, &[0, 0, 0]).unwrap().mask(), 0);
        let b1 = s.base().context(1);
        let err = property_to_subobject(&s, &[0, b1.element("p1").unwrap(), 0]).unwrap_err();
        assert_eq!(
            err,
            Error::NotASubfunctor {
                context: "B1".into(),
                state: "p1".into()
            }
        );
    }

    #[test]
    fn guard() {
        let s = build_presheaf(corpus::mo_n(2)).unwrap();
        let err =
            enumerate_clopen_subobjects(s, &PresheafConfig { max_subobjects: 16 }).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }

    #[test]
    fn bad_inclusions() {
        let ctx = |name: &str, l: FiniteLattice| ContextSpec {
            name: name.into(),
            lattice: l,
        };
        // Not a Boolean homomorphism: p ↦ p, but 1 ↦ p.
        let err = ContextPoset::new(
            vec![
                ctx("a", corpus::chain(2)),
                ctx("b", corpus::boolean_cube(2)),
            ],
            &pairs(&[("a", "b")]),
            &[("a".into(), "b".into(), pairs(&[("0", "0"), ("1", "p")]))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadInclusion(_)));

        // Missing inclusion.
        let err = ContextPoset::new(
            vec![
                ctx("a", corpus::chain(2)),
                ctx("b", corpus::boolean_cube(2)),
            ],
            &pairs(&[("a", "b")]),
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadInclusion(_)));

        // Non-Boolean context.
        let err = ContextPoset::new(vec![ctx("a", corpus::chain(3))], &[], &[]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));

        // Explicit map that disagrees with the composite.
        let b8 = corpus::boolean_cube(3);
        let err = ContextPoset::new(
            vec![
                ctx("x", corpus::boolean_cube(2)),
                ctx("y", corpus::boolean_cube(2)),
                ctx("z", b8),
            ],
            &pairs(&[("x", "y"), ("y", "z"), ("x", "z")]),
            &[
                (
                    "x".into(),
                    "y".into(),
                    pairs(&[("0", "0"), ("p", "q"), ("q", "p"), ("1", "1")]),
                ),
                (
                    "y".into(),
                    "z".into(),
                    pairs(&[("0", "0"), ("p", "p"), ("q", "qr"), ("1", "1")]),
                ),
                (
                    "x".into(),
                    "z".into(),
                    pairs(&[("0", "0"), ("p", "p"), ("q", "qr"), ("1", "1")]),
                ),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadInclusion(_)));
    }
}

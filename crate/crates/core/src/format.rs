//! JSON input documents.
//!
//! A lattice document is `{"elements": [..], "leq": [[a, b], ..]}`; `leq`
//! may list covers or any generating set of the order. Optional fields:
//!
//! - `implication`: `[[a, b, v], ..]` overrides of computed `a → b` entries;
//! - `nuclei`: candidate nucleus tables `{x: j(x)}` to be checked;
//! - `interpretations`: `[{"target": <lattice>, "map": {x: f(x)}}]`.
//!
//! A context-poset document is `{"contexts": [{"name", "lattice"}], "order":
//! [[lo, hi]], "inclusions": {"lo<hi": {x: y}}}`. An interpretation document
//! is `{"source": <lattice>, "target": <lattice>, "map": {x: f(x)}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heyting::FiniteHeytingAlgebra;
use crate::lattice::FiniteLattice;
use crate::nuclei::{check_nucleus, NucleusViolation};
use crate::presheaf::{ContextPoset, ContextSpec};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub implication: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nuclei: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub interpretations: Vec<InterpretationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpretationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<LatticeDoc>,
    pub target: LatticeDoc,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDoc {
    pub name: String,
    pub lattice: LatticeDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextPosetDoc {
    pub contexts: Vec<ContextDoc>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default)]
    pub inclusions: BTreeMap<String, BTreeMap<String, String>>,
}

/// A parsed input file.
#[derive(Debug, Clone)]
pub enum Input {
    Lattice(LatticeInput),
    ContextPoset(ContextPoset),
    Interpretation(InterpretationInput),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Lattice(_) => "lattice",
            Input::ContextPoset(_) => "context-poset",
            Input::Interpretation(_) => "interpretation",
        }
    }
}

/// A lattice with the optional extras of its document resolved to indices.
#[derive(Debug, Clone)]
pub struct LatticeInput {
    pub lattice: FiniteLattice,
    pub implication_overrides: Vec<(usize, usize, usize)>,
    pub nucleus_candidates: Vec<Vec<usize>>,
    pub interpretations: Vec<(FiniteLattice, Vec<usize>)>,
}

impl LatticeInput {
    /// The Heyting algebra with any implication overrides applied. The
    /// overrides are not validated here; that is the axiom suite's job.
    pub fn algebra(&self) -> Result<FiniteHeytingAlgebra> {
        let mut algebra = FiniteHeytingAlgebra::heytingize(self.lattice.clone())?;
        for &(a, b, v) in &self.implication_overrides {
            algebra = algebra.with_implication_entry(a, b, v);
        }
        Ok(algebra)
    }

    /// Checks every candidate nucleus table against `algebra`.
    pub fn check_candidates(
        &self,
        algebra: &FiniteHeytingAlgebra,
    ) -> Vec<Result<(), NucleusViolation>> {
        self.nucleus_candidates
            .iter()
            .map(|t| check_nucleus(algebra, t))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct InterpretationInput {
    pub source: FiniteLattice,
    pub target: FiniteLattice,
    pub table: Vec<usize>,
}

pub fn parse_input(text: &str) -> Result<Input> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::Input("top-level JSON value must be an object".into()))?;
    if object.contains_key("contexts") {
        let doc: ContextPosetDoc = from_value(value)?;
        Ok(Input::ContextPoset(context_poset_from_doc(&doc)?))
    } else if object.contains_key("elements") {
        let doc: LatticeDoc = from_value(value)?;
        Ok(Input::Lattice(lattice_input_from_doc(&doc)?))
    } else if object.contains_key("source") {
        let doc: InterpretationDoc = from_value(value)?;
        let source = doc
            .source
            .as_ref()
            .ok_or_else(|| Error::Input("interpretation needs a source".into()))?;
        let source = lattice_from_doc(source)?;
        let (target, table) = interpretation_from_doc(&source, &doc)?;
        Ok(Input::Interpretation(InterpretationInput {
            source,
            target,
            table,
        }))
    } else {
        Err(Error::Input(
            "expected a lattice (`elements`), context poset (`contexts`) or interpretation (`source`)".into(),
        ))
    }
}

fn from_value<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::Input(e.to_string()))
}

pub fn lattice_from_doc(doc: &LatticeDoc) -> Result<FiniteLattice> {
    FiniteLattice::build_from_order(&doc.elements, &doc.leq)
}

pub fn lattice_input_from_doc(doc: &LatticeDoc) -> Result<LatticeInput> {
    let lattice = lattice_from_doc(doc)?;
    let implication_overrides = doc
        .implication
        .iter()
        .map(|(a, b, v)| {
            Ok((
                lattice.element(a)?,
                lattice.element(b)?,
                lattice.element(v)?,
            ))
        })
        .collect::<Result<_>>()?;
    let nucleus_candidates = doc
        .nuclei
        .iter()
        .map(|m| total_map(&lattice, &lattice, m))
        .collect::<Result<_>>()?;
    let interpretations = doc
        .interpretations
        .iter()
        .map(|i| {
            if i.source.is_some() {
                return Err(Error::Input(
                    "embedded interpretations take their source from the document".into(),
                ));
            }
            interpretation_from_doc(&lattice, i)
        })
        .collect::<Result<_>>()?;
    Ok(LatticeInput {
        lattice,
        implication_overrides,
        nucleus_candidates,
        interpretations,
    })
}

fn interpretation_from_doc(
    source: &FiniteLattice,
    doc: &InterpretationDoc,
) -> Result<(FiniteLattice, Vec<usize>)> {
    let target = lattice_from_doc(&doc.target)?;
    let table = total_map(source, &target, &doc.map)?;
    Ok((target, table))
}

fn total_map(
    source: &FiniteLattice,
    target: &FiniteLattice,
    map: &BTreeMap<String, String>,
) -> Result<Vec<usize>> {
    let mut table = vec![None; source.len()];
    for (x, y) in map {
        table[source.element(x)?] = Some(target.element(y)?);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| Error::Input(format!("map does not assign `{}`", source.name(x))))
        })
        .collect()
}

pub fn context_poset_from_doc(doc: &ContextPosetDoc) -> Result<ContextPoset> {
    let contexts = doc
        .contexts
        .iter()
        .map(|c| {
            Ok(ContextSpec {
                name: c.name.clone(),
                lattice: lattice_from_doc(&c.lattice)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inclusions = doc
        .inclusions
        .iter()
        .map(|(key, map)| {
            let (lo, hi) = key.split_once('<').ok_or_else(|| {
                Error::Input(format!("inclusion key `{key}` is not of the form `lo<hi`"))
            })?;
            Ok((
                lo.to_owned(),
                hi.to_owned(),
                map.clone().into_iter().collect(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    ContextPoset::new(contexts, &doc.order, &inclusions)
}

/// The document form of a lattice: all elements and its covering pairs.
pub fn lattice_to_doc(lattice: &FiniteLattice) -> LatticeDoc {
    LatticeDoc {
        elements: lattice.names().to_vec(),
        leq: lattice
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (lattice.name(a).to_owned(), lattice.name(b).to_owned()))
            .collect(),
        ..LatticeDoc::default()
    }
}

/// The document form of a context poset, with all strict inclusions listed.
pub fn context_poset_to_doc(poset: &ContextPoset) -> ContextPosetDoc {
    let contexts = poset
        .contexts()
        .iter()
        .map(|c| ContextDoc {
            name: c.name.clone(),
            lattice: lattice_to_doc(&c.lattice),
        })
        .collect();
    let mut order = Vec::new();
    let mut inclusions = BTreeMap::new();
    for (c, d) in poset.strict_pairs() {
        let (lo, hi) = (poset.name(c), poset.name(d));
        order.push((lo.to_owned(), hi.to_owned()));
        let incl = poset.inclusion(c, d).expect("strict pairs have inclusions");
        let map = poset
            .context(c)
            .elements()
            .map(|x| {
                (
                    poset.context(c).name(x).to_owned(),
                    poset.context(d).name(incl[x]).to_owned(),
                )
            })
            .collect();
        inclusions.insert(format!("{lo}<{hi}"), map);
    }
    ContextPosetDoc {
        contexts,
        order,
        inclusions,
    }
}

use thiserror::Error;

/// Errors raised while building or transforming finite algebraic structures.
///
/// Verification outcomes (a homomorphism failing, an axiom violated by a
/// fixture) are not errors; they are returned as report values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` <= `{0}`")]
    NotAPoset(String, String),
    #[error("`{a}` and `{b}` have no {bound}")]
    NotALattice {
        a: String,
        b: String,
        bound: &'static str,
    },
    #[error("lattice is not distributive: x=`{0}`, y=`{1}`, z=`{2}`")]
    NotDistributive(String, String, String),
    #[error("lattice is not Boolean")]
    NotBoolean,
    #[error("no relative pseudocomplement for `{0}` -> `{1}`")]
    NoRelativePseudocomplement(String, String),
    #[error("axiom {axiom} fails at {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("{what} has {size} elements, above the configured limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("operands live on different algebras ({0} vs {1} elements)")]
    AlgebraMismatch(usize, usize),
    #[error("table is not a nucleus: {0}")]
    NotANucleus(String),
    #[error("not a classical interpretation: {0}")]
    NotClassical(String),
    #[error("extension is not single-valued at `{element}`: {first} vs {second}")]
    Inconsistent {
        element: String,
        first: String,
        second: String,
    },
    #[error("bad context inclusion: {0}")]
    BadInclusion(String),
    #[error(
        "family is not a subfunctor: state `{state}` of `{context}` restricts outside the family"
    )]
    NotASubfunctor { context: String, state: String },
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

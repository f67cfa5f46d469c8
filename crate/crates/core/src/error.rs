use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field context mismatch: GF({left}) vs GF({right})")]
    ContextMismatch { left: u64, right: u64 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("no element of multiplicative order {order} in GF({field_order})")]
    NoElementOfOrder { order: u64, field_order: u64 },

    #[error("division by the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point {0} is not on the curve")]
    NotOnCurve(String),

    #[error("unsupported base point {0}: one-point divisors must sit at a Weierstrass point")]
    UnsupportedBasePoint(String),

    #[error("cannot evaluate at {0}: pole of the function")]
    EvaluationAtPole(String),

    #[error("invalid evaluation set: {0}")]
    InvalidEvaluationSet(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: u64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("automorphism outside Aut(D,E): {0}")]
    NotInStabilizer(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

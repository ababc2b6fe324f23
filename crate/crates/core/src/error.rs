use thiserror::Error;

/// Errors surfaced by the engine. The CLI maps these onto exit codes:
/// usage/unsupported input -> 2, resource guards -> 3, semantic
/// incompatibilities -> 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("cyclotomic order {0} exceeds the supported bound 24")]
    OrderTooLarge(u32),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("unsupported root system ({0}, {1})")]
    UnsupportedRootSystem(char, usize),
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("{0} is not a diagram symmetry")]
    NotDiagramSymmetry(String),
    #[error("element does not normalize the algebra")]
    DoesNotNormalize,
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism order exceeds the cap 24")]
    OrderCapExceeded,
    #[error("not a subalgebra: bracket leaves the span at pair ({0}, {1})")]
    NotSubalgebra(usize, usize),
    #[error("unsupported input — supply a CSA-preserving representative")]
    CsaNotPreserved,
    #[error("search-size guard exceeded: {0} candidate vectors (limit {1})")]
    SearchGuard(usize, usize),
    #[error("matrix is not in the group {0}")]
    NotInGroup(String),
    #[error("conjugation pair does not commute: commutator defect rank {0}")]
    NonCommutingPair(usize),
    #[error("incompatible pair: a(alpha) != alpha^-1")]
    IncompatibleAlpha,
    #[error("the given map is not an automorphism of the coefficient group")]
    NotGroupAutomorphism,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

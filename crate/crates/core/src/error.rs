use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank pair: n={n}, m={m} (need m >= n >= 1)")]
    InvalidRankPair { n: usize, m: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rank mismatch between weights")]
    RankMismatch,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("weight lies outside the lattice restricting to A")]
    OutsideLattice,
    #[error("invalid K-type: {0}")]
    InvalidMu(String),
    #[error("polynomial division is not exact")]
    NonDivisible,
    #[error("trigonometric polynomial is not a polynomial in the cosines")]
    NotCosPolynomial,
    #[error("function is not in the span of the basis")]
    NotInSpan,
    #[error("basis functions are linearly dependent")]
    DependentBasis,
    #[error("element is not block diagonal after conjugation")]
    NonBlockDiagonal,
    #[error("eigenspace has dimension {0}, expected 1")]
    EigenspaceNotOneDimensional(usize),
    #[error("spherical function vanishes or is not scalar at the identity")]
    BadNormalization,
    #[error("odd cosine powers survive in the integrand")]
    ReductionFailed,
    #[error("tensor factor specifications differ")]
    FactorMismatch,
    #[error("composition does not sum to a")]
    CompositionMismatch,
    #[error("lowering orbit did not close: {0}")]
    OrbitMismatch(String),
    #[error("representation dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: u128, cap: u128 },
    #[error("negative multiplicity while peeling characters")]
    NegativeMultiplicity,
    #[error("label not in the spectrum: {0}")]
    UnknownLabel(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

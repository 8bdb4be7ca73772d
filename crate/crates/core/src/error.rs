use thiserror::Error;

pub type Result<T> = std::result::Result<T, JetError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("coordinate {index} has modulus {modulus} (must be < 1)")]
    OutsideDomain { index: usize, modulus: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid kernel weights: {0}")]
    InvalidWeights(String),

    #[error("total derivative order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("index sets differ: {0}")]
    IndexSetMismatch(String),

    #[error("missing derivative data: {0}")]
    MissingDerivative(String),

    #[error("invalid submanifold: {0}")]
    InvalidSubmanifold(String),

    #[error("matrix not positive definite at degree {degree}: smallest pivot {pivot:e}")]
    NotPositiveDefinite { degree: usize, pivot: f64 },

    #[error("series coefficient overflow at degree {degree}")]
    CoefficientOverflow { degree: usize },

    #[error("truncation error bound {bound:e} exceeds tolerance {tolerance:e} at radius {radius}")]
    RadiusTooLarge { radius: f64, bound: f64, tolerance: f64 },

    #[error("block-diagonality residual {value:e} at entry ({row}, {col})")]
    BlockResidual { row: usize, col: usize, value: f64 },

    #[error("coordinate map round trip failed: residual {0:e}")]
    RoundTrip(f64),

    #[error("automorphism tuple does not preserve the submanifold: {0}")]
    TupleDoesNotFix(String),

    #[error("Mobius parameter |a| = {0} is not inside the unit disc")]
    InvalidMobius(f64),

    #[error("rank deficient system: {0}")]
    RankDeficient(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

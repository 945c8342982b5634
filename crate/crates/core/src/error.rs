use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M*| entry deviation {deviation:e}")]
    NonHermitianInput { deviation: f64 },
    #[error("M - lambda I is numerically singular (s_min / s_max = {ratio:e})")]
    SingularResolvent { ratio: f64 },
    #[error("matrix is numerically singular (s_min / s_max = {ratio:e})")]
    SingularInput { ratio: f64 },
    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("invalid weight sequence: {0}")]
    InvalidWeights(String),
    #[error("tabulated weight sequence has no declared limit")]
    NoLimitDeclared,
    #[error("tabulated weight sequence has only {available} weights, {needed} required and no limit declared")]
    WeightsExhausted { available: usize, needed: usize },
    #[error("invalid Mobius parameters: {0}")]
    InvalidMobius(String),
    #[error("pole hit: 1 - conj(a) z vanishes at z = {re} + {im}i")]
    PoleHit { re: f64, im: f64 },
    #[error("operator norm {norm} exceeds 1; Mobius functional calculus needs a contraction")]
    NotAContraction { norm: f64 },
    #[error("closed-form commutator needs a != 0 (the affine case leaves [T*,T] unchanged)")]
    ZeroCenter,
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPsd { min_eig: f64 },
    #[error("log series needs trace norm < 1, got {trace_norm}")]
    SeriesDivergent { trace_norm: f64 },
    #[error("evaluation point {re} + {im}i lies in or too near the spectrum")]
    SpectrumHit { re: f64, im: f64 },
    #[error("model self-commutator is not rank one: {0}")]
    NotRankOne(String),
    #[error("vector does not match the model's rank-one self-commutator: {0}")]
    VectorMismatch(String),
    #[error("kernel evaluation point {re} + {im}i must lie outside the closed unit disc")]
    EvaluationInsideDisc { re: f64, im: f64 },
    #[error("point is within {distance:e} of the curve (needs > {required:e})")]
    TooCloseToCurve { distance: f64, required: f64 },
    #[error("point {re} + {im}i lies on (or too near) the essential spectrum")]
    OnEssentialSpectrum { re: f64, im: f64 },
    #[error("truncation {dim} too small: need more than {required}")]
    DimensionTooSmall { dim: usize, required: usize },
    #[error("domain error: {0}")]
    Domain(String),
}

use thiserror::Error;

/// Errors raised by the algebraic and probabilistic routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("empty matrix or vector")]
    Empty,

    #[error("non-finite entry encountered")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degrees of freedom mismatch: {left} vs {right}")]
    DofMismatch { left: usize, right: usize },

    #[error("cannot combine a quantum and a classical quantity")]
    RealizationMismatch,

    #[error("reduced Planck constants differ ({left} vs {right})")]
    HbarMismatch { left: f64, right: f64 },

    #[error("reduced Planck constant must be positive and finite, got {0}")]
    InvalidHbar(f64),

    #[error("{what} is not Hermitian (deviation {deviation:e})")]
    NotHermitian { what: &'static str, deviation: f64 },

    #[error("trace {trace} differs from 1 beyond tolerance")]
    TraceNotUnit { trace: f64 },

    #[error("operator is not positive semidefinite (minimal eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("covariance matrix is not symmetric positive definite")]
    InvalidCovariance,

    #[error("operator is not an orthogonal projector (deviation {deviation:e})")]
    NotProjector { deviation: f64 },

    #[error("spectrum [{min}, {max}] is not contained in [0, 1]")]
    SpectrumOutOfRange { min: f64, max: f64 },

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("zero vector cannot represent a pure state")]
    ZeroVector,

    #[error("interval ]{a}, {b}[ is empty")]
    EmptyInterval { a: f64, b: f64 },

    #[error("joint dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("variance {variance:e} is negative beyond round-off")]
    NegativeVariance { variance: f64 },

    #[error("Hamiltonian has degree {degree}; only quadratic Hamiltonians are supported")]
    NonQuadratic { degree: u32 },

    #[error("Liouville integral diverges without a Gaussian envelope")]
    DivergentIntegral,

    #[error("Gaussian envelopes of different width cannot be added ({left} vs {right})")]
    EnvelopeMismatch { left: u32, right: u32 },

    #[error("significance threshold must exceed 1, got {0}")]
    InvalidThreshold(f64),

    #[error("random variables live on different sample spaces")]
    SpaceMismatch,

    #[error("weights must be nonnegative and sum to 1 (sum {sum})")]
    InvalidWeights { sum: f64 },

    #[error("random variable is not {{0,1}}-valued")]
    NotAStatement,

    #[error("conditioning weight has zero expectation")]
    NullCondition,

    #[error("sample is empty")]
    EmptySample,

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid step function: {0}")]
    InvalidStepFunction(&'static str),

    #[error("times must be strictly increasing")]
    NonMonotoneTimes,

    #[error("truncated basis tail population {population:e} exceeds {threshold:e}")]
    Truncation { population: f64, threshold: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

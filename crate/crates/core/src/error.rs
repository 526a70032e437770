use thiserror::Error;

/// Failures raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi diagonalizer did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace is not 1 (got {0})")]
    NotUnitTrace(f64),

    #[error("state is singular (eigenvalue {0:e}); logarithm undefined off its support")]
    SingularState(f64),

    #[error("Bloch vector lies outside the unit ball (|r| = {0})")]
    OutsideBall(f64),

    #[error("expected a {expected}-dimensional operator, got dimension {got}")]
    WrongDim { expected: usize, got: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("temperature must be positive (got {0})")]
    NonPositiveTemperature(f64),

    #[error("damping eta must lie in [0, 1] (got {0})")]
    EtaOutOfRange(f64),

    #[error("mixing weight lambda must lie in [0, 1] (got {0})")]
    LambdaOutOfRange(f64),

    #[error("Kraus set violates completeness (residual {0:e})")]
    NotTracePreserving(f64),

    #[error("equilibrium state is singular (eigenvalue {0:e})")]
    SingularEquilibrium(f64),

    #[error("overlap {0} outside the admissible window for arccos")]
    ClampViolation(f64),

    #[error("times must satisfy 0 <= t1 <= t2 (got t1 = {0}, t2 = {1})")]
    BadTimeOrder(f64, f64),

    #[error("mixing weights must satisfy 0 < lambda1 <= lambda2 <= 1 (got {0}, {1})")]
    BadLambdaOrder(f64, f64),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("at least 2 resamples are required (got {0})")]
    TooFewResamples(usize),

    #[error("relative entropy is infinite (support mismatch)")]
    InfiniteEntropy,
}

pub type Result<T> = std::result::Result<T, Error>;

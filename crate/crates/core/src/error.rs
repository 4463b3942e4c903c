use thiserror::Error;

/// Errors raised by the torsion engine.
///
/// Several variants (`NotDivisible` in particular) signal a violated
/// algebraic identity rather than bad input, and indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("J({sign},{n}) is the unknot")]
    Unknot { sign: i64, n: i64 },
    #[error("point is not on the Riley curve (|phi| = {0})")]
    OffCurve(String),
    #[error("eigenvalues of the commutator are degenerate")]
    DegenerateEigenvalues,
    #[error("root finding did not converge after {0} iterations")]
    RootFindingDiverged(usize),
    #[error("the trefoil knot is not hyperbolic")]
    NotHyperbolic,
    #[error("representation is not parabolic (|w11| = {0})")]
    NotParabolic(String),
    #[error("at least two data points are required, got {0}")]
    InsufficientData(usize),
    #[error("golden mismatch: {0}")]
    GoldenMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("missing value for variable {0}")]
    MissingVariable(char),
}

pub type Result<T> = std::result::Result<T, Error>;

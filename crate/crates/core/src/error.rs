use thiserror::Error;

/// Errors raised by graph construction, certificate building and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration model rejected {attempts} matchings without finding a simple graph")]
    ResampleLimit { attempts: usize },

    #[error("sequential sampler gave up after {restarts} restarts")]
    RestartLimit { restarts: usize },

    #[error("graph is not regular: {0}")]
    NotRegular(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:e})")]
    Asymmetric { max_asymmetry: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("argument {value} outside the domain [-1, 1]")]
    Domain { value: f64 },

    #[error("quadrature with {nodes} nodes is exact only below degree {exact_below}, needed degree {needed}")]
    DegreeBudget {
        nodes: usize,
        exact_below: usize,
        needed: usize,
    },

    #[error("girth {girth} < 4: no non-trivial certificate (need an even budget of at least 4)")]
    GirthTooSmall { girth: usize },

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("diagonal entry {index} is {value}, expected 1")]
    DiagonalViolation { index: usize, value: f64 },

    #[error("graph has {n} vertices, above the limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("bisection did not reach the requested precision within {iterations} steps")]
    NonConvergence { iterations: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

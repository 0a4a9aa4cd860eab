use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The sign constraints of the symmetry regime exclude normalizable states.
    #[error("no bound state: {0}")]
    NoBoundState(String),
    /// The radial grid is too short or too coarse for the requested state.
    #[error("insufficient resolution: {0}")]
    Resolution(String),
    /// Caller misuse, such as mixing functions sampled on different grids.
    #[error("usage error: {0}")]
    Usage(String),
    /// An iteration failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// A root search found more than one candidate for a single level.
    #[error("multiple roots found for one level: {roots:?}")]
    MultipleRoots { roots: Vec<f64> },
    /// The discretized operator has fewer bound eigenvalues than requested.
    #[error("level {level} not bound: only {available} eigenvalues below the asymptote")]
    NoLevel { level: usize, available: usize },
    /// A shape-invariance remainder turned out to depend on r.
    #[error("shape invariance violated: remainder varies by {0:e}")]
    AlgebraViolation(f64),
}

impl Error {
    /// Stable machine-readable identifier, used by the CLI error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::NoBoundState(_) => "no_bound_state",
            Error::Resolution(_) => "resolution",
            Error::Usage(_) => "usage",
            Error::Numerical(_) => "numerical",
            Error::MultipleRoots { .. } => "multiple_roots",
            Error::NoLevel { .. } => "no_level",
            Error::AlgebraViolation(_) => "algebra_violation",
        }
    }
}

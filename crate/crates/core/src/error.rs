use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "table limit {limit} exceeds the memory budget ({bytes} bytes needed, {budget} allowed)"
    )]
    LimitTooLarge {
        limit: usize,
        bytes: usize,
        budget: usize,
    },
    #[error("index {index} outside table range 1..={limit}")]
    OutOfRange { index: usize, limit: usize },
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("evaluation point is too close to the pole at s = 1")]
    PoleTooClose,
    #[error("gamma function pole at {0}")]
    GammaPole(f64),
    #[error("zero refinement from seed {seed} did not converge")]
    NoConvergence { seed: f64 },
    #[error("zero refined from seed {seed} left the critical line (Re = {re})")]
    StrayedOffLine { seed: f64, re: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("hypergeometric series diverges at z = {0}")]
    Divergence(f64),
    #[error("adaptive quadrature hit the subdivision limit (estimate {value}, error {error})")]
    MaxSubdivisions { value: f64, error: f64 },
    #[error("semi-infinite integral tail did not converge")]
    NonconvergentTail,
    #[error("integrand has not decayed at the truncation height (edge/peak = {ratio:e})")]
    InsufficientDecay { ratio: f64 },
    #[error("integration circle passes through a singularity")]
    RadiusHitsSingularity,
    #[error("parameters outside the admissible domain: {0}")]
    ParameterDomain(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("requested y = {y} beyond sieve limit {limit}")]
    SieveLimit { y: f64, limit: usize },
    #[error("no solution found up to t = {0}")]
    NotFound(f64),
    #[error("malformed zero seed data at line {line}: {reason}")]
    SeedFormat { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

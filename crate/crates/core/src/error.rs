use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("identical points given where two distinct points are required")]
    IdenticalPoints,
    #[error("duplicate points at indices {first} and {second}")]
    DuplicatePoints { first: usize, second: usize },
    #[error("all points are collinear (or fewer than three points)")]
    CollinearInput,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("cutoff c = {0} is invalid (c must be at least 8)")]
    BadCutoff(i64),
    #[error("eps = {0} is outside the open interval (0, 1/2)")]
    BadEps(String),
    #[error("no positive fixed point at c = {0}: 1 - (beta/2)*C is not positive")]
    NoSolution(i64),
    #[error("claim violated: {0}")]
    ClaimViolated(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported (p must be odd)")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not an odd prime power")]
    NotPrimePower(u64),
    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element code {code} is out of range for a field of order {q}")]
    InvalidElement { code: u64, q: u64 },
    #[error("dimension {0} is too small, need m >= 2")]
    DimensionTooSmall(usize),
    #[error("points have dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("no slope a with a^2+1 a nonsquare exists in F_{0}")]
    NoSlopeExists(u64),
    #[error("element {0} is not a nonsquare")]
    NotNonsquare(u32),
    #[error("construction unavailable for q = {0}")]
    ConstructionUnavailable(u64),
    #[error("invalid override {name} = {code}: {reason}")]
    InvalidOverride {
        name: &'static str,
        code: u32,
        reason: &'static str,
    },
    #[error("invalid coloring plan: {0}")]
    InvalidPlan(String),
    #[error("coloring is incomplete: {0}")]
    IncompleteColoring(String),
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("spectrum has no negative eigenvalue (least eigenvalue {0})")]
    DegenerateSpectrum(f64),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

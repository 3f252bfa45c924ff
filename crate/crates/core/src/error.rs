use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series has no nonzero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("half-integer coefficient at q^{exponent} is nonzero")]
    NotIntegral { exponent: String },
    #[error("dimension {0} is not a positive multiple of 4")]
    BadDimension(i64),
    #[error("weight {0} is outside the supported family")]
    BadWeight(i64),
    #[error("kernel has dimension {found}, expected {expected}")]
    KernelDimension { expected: usize, found: usize },
    #[error("truncation {trunc} too small: {needed}")]
    InsufficientTruncation { trunc: i64, needed: String },
    #[error("sample point {0} maps below the safe height")]
    BadSamplePoint(String),
    #[error("s = {0} is a pole of W")]
    PoleAt2k(String),
    #[error("s = {s} is outside the half-plane of convergence s > {bound}")]
    OutsideDomain { s: String, bound: String },
    #[error("series remainder {remainder:e} exceeds tolerance")]
    PrecisionLoss { remainder: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("sign anomaly: {0}")]
    SignAnomaly(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("identity failed: {0}")]
    Identity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Precondition violations are reported through this enum rather than
/// panics so the CLI can turn them into clean exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse `{0}` as a rational number")]
    ParseRational(String),

    #[error("interval endpoints out of order: lo={lo}, hi={hi}")]
    InvalidInterval { lo: String, hi: String },

    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(String),

    #[error("term index {0} is out of range for this sequence")]
    TermIndex(usize),

    #[error("subsum enumeration needs {needed} sums, budget allows {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("geometric ratio must exceed 1, got {0}")]
    UnsupportedRatio(String),

    #[error("ratio too close to 1 for certified exclusions: {0}")]
    RatioOutsideCertifiedRange(String),

    #[error("value {0} is outside the hull [0, 5/3]")]
    OutsideHull(String),

    #[error("digit {0} is not one of 0, 2, 3, 5")]
    InvalidDigit(u8),

    #[error("cannot parse digit stream `{0}`")]
    ParseStream(String),

    #[error("invalid chase schedule: {0}")]
    InvalidSchedule(String),

    #[error("streams do not form a dual pair: {0}")]
    NotADualPair(String),

    #[error("distance matrix is not a metric: {0}")]
    MetricViolation(String),

    #[error("match instance is malformed: {0}")]
    BadMatchInstance(String),

    #[error("no cluster point at distance alpha from anchor at step {step}")]
    NoPartnerInCluster { step: usize },

    #[error("candidate prefix exhausted at step {step}; supply longer sequences")]
    PrefixExhausted { step: usize },

    #[error("contraction factor must lie in (0, 1], got {0}")]
    ContractionOutOfRange(String),

    #[error("construction level {got} too coarse; need at least {needed}")]
    InsufficientLevel { needed: u32, got: u32 },

    #[error("internal consistency check failed: {0}")]
    SelfCheck(String),

    #[error("exclusion certificate failed validation: {0}")]
    BadCertificate(String),

    #[error("no exclusion certificate found for {0}; point left unresolved")]
    Unresolved(String),

    #[error("empty set has no {0}")]
    EmptySet(&'static str),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Variants fall in three families: budget exhaustion (the caller asked for an
/// enumeration larger than the configured limit), precondition or gate
/// failures (the input is outside the domain of a construction), and internal
/// inconsistencies (a verified invariant did not hold).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("budget exceeded for {what}: need {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },
    #[error("element lives at the wrong tower level: expected {expected}, got {got}")]
    WrongLevel {
        expected: &'static str,
        got: &'static str,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("objects were built over different field towers")]
    TowerMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("some hyperplane meets U in dimension {weight} >= k-1 = {bound}")]
    PreconditionHyperplaneWeight { weight: usize, bound: usize },
    #[error("no admissible embedding found for the Delsarte dual")]
    NoEmbedding,
    #[error("code is empty (dimension 0)")]
    EmptyCode,
    #[error("code is not MRD")]
    NotMrd,
    #[error("puncturing matrix has rank {rank}, expected {expected}")]
    RankDeficientA { rank: usize, expected: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("gcd(s, N) = {gcd} != 1")]
    GcdViolation { gcd: usize },
    #[error("k = {k} must be smaller than N = {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("eta condition violated: norm(eta) = (-1)^(Nk)")]
    EtaConditionViolated,
    #[error("iota = n = {0}: U contains a full F_(q^n)-line")]
    IotaFull(usize),
    #[error("maps have different kernels")]
    KernelMismatch,
    #[error("right idealiser has order q^{got}, expected q^{expected}")]
    IdealiserNotMaximal { got: usize, expected: usize },
    #[error("divisibility violated: {0}")]
    DivisibilityViolation(String),
    #[error("subspace is not maximum h-scattered: {0}")]
    NotMaxScattered(String),
    #[error("non-integral value in counting formula: {0}")]
    NonIntegral(String),
    #[error("point set does not span the ambient space")]
    NotSpanning,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    /// Variant name, stable across releases; used in machine-readable
    /// reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(..) => "NotPrime",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::WrongLevel { .. } => "WrongLevel",
            Error::InvalidParams(..) => "InvalidParams",
            Error::AmbientMismatch(..) => "AmbientMismatch",
            Error::TowerMismatch => "TowerMismatch",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::PreconditionHyperplaneWeight { .. } => "PreconditionHyperplaneWeight",
            Error::NoEmbedding => "NoEmbedding",
            Error::EmptyCode => "EmptyCode",
            Error::NotMrd => "NotMrd",
            Error::RankDeficientA { .. } => "RankDeficientA",
            Error::ShapeMismatch(..) => "ShapeMismatch",
            Error::ParamMismatch(..) => "ParamMismatch",
            Error::HypothesisViolated(..) => "HypothesisViolated",
            Error::GcdViolation { .. } => "GcdViolation",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::EtaConditionViolated => "EtaConditionViolated",
            Error::IotaFull(..) => "IotaFull",
            Error::KernelMismatch => "KernelMismatch",
            Error::IdealiserNotMaximal { .. } => "IdealiserNotMaximal",
            Error::DivisibilityViolation(..) => "DivisibilityViolation",
            Error::NotMaxScattered(..) => "NotMaxScattered",
            Error::NonIntegral(..) => "NonIntegral",
            Error::NotSpanning => "NotSpanning",
            Error::Malformed(..) => "Malformed",
            Error::Internal(..) => "Internal",
            Error::Io(..) => "Io",
        }
    }

    pub(crate) fn budget(what: &'static str, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            budget,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

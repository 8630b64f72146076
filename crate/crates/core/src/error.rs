use thiserror::Error;

use crate::quiver::StringModule;

/// Why a charge failed a genericity requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonGenericReason {
    /// Two stable modules share a slope.
    Tie,
    /// Some module is semistable without being stable.
    StrictSemistable,
}

impl std::fmt::Display for NonGenericReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NonGenericReason::Tie => "tie",
            NonGenericReason::StrictSemistable => "strict-semistable",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid charge: {0}")]
    InvalidCharge(String),

    #[error("the charge has no essential pair, so infinitely many modules are stable")]
    InfiniteStableSet,

    #[error("charge is not generic ({reason}): {}", fmt_modules(.culprits))]
    NonGeneric {
        reason: NonGenericReason,
        culprits: Vec<StringModule>,
    },

    #[error("invalid splice: {0}")]
    SpliceInvalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("witness search failed for (k, l) = ({k}, {l})")]
    WitnessSearchFailed { k: i64, l: i64 },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid collapse: {0}")]
    InvalidCollapse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag, used in the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidQuiver(_) => "invalid-quiver",
            Error::InvalidModule(_) => "invalid-module",
            Error::InvalidCharge(_) => "invalid-charge",
            Error::InfiniteStableSet => "infinite-stable-set",
            Error::NonGeneric { .. } => "non-generic",
            Error::SpliceInvalid(_) => "splice-invalid",
            Error::Precondition(_) => "precondition",
            Error::WitnessSearchFailed { .. } => "witness-search-failed",
            Error::VerificationFailed(_) => "verification-failed",
            Error::InvalidCollapse(_) => "invalid-collapse",
            Error::Io(_) => "io",
        }
    }
}

fn fmt_modules(ms: &[StringModule]) -> String {
    let parts: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    parts.join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;

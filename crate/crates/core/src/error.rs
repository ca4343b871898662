use thiserror::Error;

pub type Result<T, E = EvidenceError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvidenceError {
    /// A value violates the invariants of its type.
    #[error("invalid {what}: {reason}")]
    Validation { what: &'static str, reason: String },

    /// Dempster normalisation is undefined: all joint mass lands on the empty set.
    #[error("total conflict between {left} and {right}")]
    TotalConflict { left: String, right: String },

    /// An argument lies outside the domain of a formula.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// The operation needs finite evidence but got a point (zero-width) value.
    #[error("{op} is undefined for infinite evidence")]
    InfiniteEvidence { op: &'static str },

    /// Frequency of a zero-evidence interval is 0/0.
    #[error("frequency is undefined without evidence")]
    UndefinedFrequency,

    #[error("frame size mismatch: {left} vs {right}")]
    FrameMismatch { left: usize, right: usize },

    #[error("frame size {0} outside the supported range 1..={max}", max = crate::dempster::MAX_GENERAL_FRAME)]
    OversizeFrame(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl EvidenceError {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        EvidenceError::Validation {
            what,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        EvidenceError::Domain {
            op,
            reason: reason.into(),
        }
    }

    /// True for errors that come from the mathematics rather than from malformed input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            EvidenceError::TotalConflict { .. }
                | EvidenceError::Domain { .. }
                | EvidenceError::InfiniteEvidence { .. }
                | EvidenceError::UndefinedFrequency
        )
    }
}

impl From<serde_json::Error> for EvidenceError {
    fn from(e: serde_json::Error) -> Self {
        EvidenceError::Parse(e.to_string())
    }
}

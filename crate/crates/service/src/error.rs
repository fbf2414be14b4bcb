use helfi_core::model::VerseRef;
use helfi_core::Diagnostic;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("unknown verse {0}")]
    UnknownVerse(String),
    #[error("revision conflict: request based on {base}, corpus is at {current}")]
    RevisionConflict { base: u64, current: u64 },
    #[error("edit rejected by {rule}")]
    InvariantViolation { rule: &'static str, diagnostics: Vec<Diagnostic> },
    #[error("invalid edit: {0}")]
    InvalidEdit(String),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("nothing to redo")]
    NothingToRedo,
    #[error("{verse} changed in another session; the step cannot be replayed")]
    StaleHistory { verse: VerseRef },
    #[error("unknown headword `{0}`")]
    UnknownHeadword(String),
    #[error("validation failed with {} errors", .0.iter().filter(|d| d.is_error()).count())]
    ValidationFailed(Vec<Diagnostic>),
    #[error("no file to save to")]
    NoPath,
    #[error("{0}")]
    Format(#[from] helfi_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl ServiceError {
    /// Machine-readable error code of the HTTP API.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::UnknownVerse(_) => "unknown_verse",
            ServiceError::RevisionConflict { .. } => "revision_conflict",
            ServiceError::InvariantViolation { .. } => "invariant_violation",
            ServiceError::InvalidEdit(_) => "invalid_edit",
            ServiceError::NothingToUndo => "nothing_to_undo",
            ServiceError::NothingToRedo => "nothing_to_redo",
            ServiceError::StaleHistory { .. } => "stale_history",
            ServiceError::UnknownHeadword(_) => "unknown_headword",
            ServiceError::ValidationFailed(_) => "validation_failed",
            ServiceError::NoPath => "no_path",
            ServiceError::Format(_) => "format_error",
            ServiceError::Io(_) => "io_error",
        }
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            ServiceError::InvariantViolation { diagnostics, .. } | ServiceError::ValidationFailed(diagnostics) => {
                diagnostics
            }
            _ => &[],
        }
    }
}

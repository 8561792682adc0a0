use thiserror::Error;

/// Errors shared by every module in the crate.
///
/// Pipeline operations wrap their failures with a stage name via
/// [`Error::at_stage`], so a failure deep in a lemma chain still names the
/// step that produced it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("trials exhausted: {0}")]
    TrialsExhausted(String),

    #[error("rounds exhausted: {0}")]
    RoundsExhausted(String),

    #[error("lift conflict: {0}")]
    LiftConflict(String),

    #[error("disconnected: {0}")]
    Disconnected(String),

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("attempts exhausted: {0}")]
    AttemptsExhausted(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("[{stage}] {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap the error with the name of the pipeline stage that raised it.
    pub fn at_stage(self, stage: &str) -> Error {
        Error::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }

    /// The innermost error, unwrapping stage frames.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("generators are not homogeneous (degrees {0:?})")]
    Inhomogeneous(Vec<u32>),

    /// The subcomplex diagram admits no weak grading; the payload names the
    /// classes along the contradictory cycle.
    #[error("subcomplex diagram is not weakly gradable: {0}")]
    NotGradable(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// A candidate ideal whose support falls outside the expected classes.
    #[error("unexpected support class: {0}")]
    Classification(String),

    #[error("weak grading is inconsistent with diagram edge {0}")]
    InconsistentGrading(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

use crate::ElementId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element {element} is not in the ground set of {context}")]
    Domain { element: ElementId, context: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("element {0} is a loop (its singleton is dependent in matroid {1})")]
    Loop(ElementId, usize),

    #[error("stream error: {0}")]
    Stream(String),

    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("instance too large for exhaustive search: {size} > {limit}")]
    SizeGuard { size: usize, limit: usize },

    #[error("hash family error: {0}")]
    Family(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            location: location.into(),
            message: message.into(),
        }
    }
}

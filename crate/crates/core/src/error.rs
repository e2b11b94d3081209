use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid label `{0}` (expected [A-Za-z][A-Za-z0-9_]*)")]
    InvalidLabel(String),
    #[error("label `{0}` declared more than once")]
    DuplicateLabel(String),
    #[error("vertices[{vertex}].rotation[{position}]: malformed dart token `{token}`")]
    BadToken {
        token: String,
        vertex: usize,
        position: usize,
    },
    #[error("vertices[{vertex}].rotation[{position}]: unknown label `{label}`")]
    UnknownLabel {
        label: String,
        vertex: usize,
        position: usize,
    },
    #[error("vertices[{vertex}].rotation[{position}]: dart `{token}` appears twice")]
    DuplicateDart {
        token: String,
        vertex: usize,
        position: usize,
    },
    #[error("dart `{0}` does not appear in any rotation")]
    MissingDart(String),
    #[error("vertices[{0}]: empty rotation is only allowed for the edgeless sphere map")]
    IsolatedVertex(usize),
    #[error("map is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("map has no vertices")]
    NoVertices,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation needs at least one edge")]
    EmptyMap,
    #[error("no edge labelled `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` is a loop and cannot be contracted")]
    LoopNotContractible(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("malformed polygon word: {0}")]
    MalformedWord(String),
    #[error("malformed path: {0}")]
    InvalidPath(String),
    #[error("paths do not share endpoints: {0}")]
    EndpointMismatch(String),
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("cannot parse word `{word}`: {reason}")]
    BadWord { word: String, reason: String },
    #[error("invalid group spec `{0}` (expected free:k, surface:g or zxz)")]
    BadGroupSpec(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// Stable short code used in validation reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidLabel(_) => "invalid-label",
            Error::DuplicateLabel(_) => "duplicate-label",
            Error::BadToken { .. } => "bad-token",
            Error::UnknownLabel { .. } => "unknown-label",
            Error::DuplicateDart { .. } => "duplicate-dart",
            Error::MissingDart(_) => "missing-dart",
            Error::IsolatedVertex(_) => "isolated-vertex",
            Error::Disconnected { .. } => "disconnected",
            Error::NoVertices => "no-vertices",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::EmptyMap => "empty-map",
            Error::UnknownEdge(_) => "unknown-edge",
            Error::LoopNotContractible(_) => "loop-not-contractible",
            Error::PreconditionViolation(_) => "precondition",
            Error::MalformedWord(_) => "malformed-word",
            Error::InvalidPath(_) => "invalid-path",
            Error::EndpointMismatch(_) => "endpoint-mismatch",
            Error::UnsupportedPresentation(_) => "unsupported-presentation",
            Error::BadWord { .. } => "bad-word",
            Error::BadGroupSpec(_) => "bad-group-spec",
            Error::Syntax(_) => "syntax",
            Error::InternalInvariantViolation(_) => "internal",
        }
    }
}

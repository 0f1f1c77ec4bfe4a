use thiserror::Error;

/// Errors raised while building or querying digraphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("arc endpoint `{0}` is not a vertex")]
    UnknownVertex(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("invalid vertex label `{0}`")]
    InvalidLabel(String),
    #[error("instance has {size} vertices, cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
}

/// Errors raised while parsing, validating or transforming expressions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("leaf label `{0}` occurs more than once")]
    DuplicateLabel(String),
    #[error("cross arc {0}->{1} does not go from an earlier operand to a later one")]
    CrossArcDirection(String, String),
    #[error("cross arc {0}->{1} references a label outside the directed union")]
    CrossArcUnknown(String, String),
    #[error("operator node with {0} operand(s); at least two are required")]
    TooFewOperands(usize),
    #[error("expression is not binary")]
    NotBinary,
    #[error("expression contains an opaque block")]
    OpaqueBlock,
    #[error("expression for component {0} does not evaluate to that component")]
    ComponentMismatch(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors from decomposition construction, parsing and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("decomposition mentions `{0}`, which is not a vertex of the digraph")]
    UnknownVertex(String),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("input decomposition is invalid: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// Errors from the exact search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {size} vertices, oracle cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("the empty digraph has no ordering")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Union of the library errors, used at API boundaries that mix modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("component {component} ({size} vertices) is not a recognizable directed co-graph and exceeds the oracle cap {cap}")]
    Unsupported {
        component: usize,
        size: usize,
        cap: usize,
    },
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    CapExceeded,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Graph(GraphError::CapExceeded { .. })
            | Error::Oracle(OracleError::CapExceeded { .. })
            | Error::Expr(ExprError::Graph(GraphError::CapExceeded { .. }))
            | Error::Unsupported { .. } => ErrorClass::CapExceeded,
            _ => ErrorClass::Input,
        }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature (n={n}, m={m}): {reason}")]
    InvalidSignature {
        n: u32,
        m: u32,
        reason: &'static str,
    },

    #[error("adjacency type {value} outside 1..={max}")]
    TypeRange { value: u32, max: u32 },

    #[error("{kind} type {value} not allowed for signature ({n},{m})")]
    StoredTypeRange {
        kind: &'static str,
        value: u32,
        n: u32,
        m: u32,
    },

    #[error("vertices {u} and {v} are already adjacent")]
    DuplicateAdjacency { u: usize, v: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("unknown vertex {vertex} (graph has {order} vertices)")]
    UnknownVertex { vertex: usize, order: usize },

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("signature mismatch: ({0},{1}) vs ({2},{3})")]
    SignatureMismatch(u32, u32, u32, u32),

    #[error("{what}: size {actual} exceeds limit {limit}")]
    Guard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("quantity undefined on the empty graph")]
    EmptyGraph,

    #[error("invalid forest decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

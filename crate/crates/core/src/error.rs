use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("unknown edge ({0}, {1})")]
    UnknownEdge(usize, usize),

    #[error("no finite multicut")]
    NoFiniteMulticut,

    #[error("instance exceeds oracle bound: {edges} finite edges > {bound}")]
    OracleBound { edges: usize, bound: usize },

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("edge set is not a multicut")]
    NotAMulticut,

    #[error("graph is not planar")]
    NonPlanar,

    #[error("no planarizing set of at most {0} edges")]
    PlanarizationFailed(usize),

    #[error("crossing pair not embeddable in any face: {0}")]
    InconsistentDrawing(String),

    /// A complete state for which no thin-class reduction applies. Reaching this
    /// certifies that the state is not valid.
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown item: {0}")]
    UnknownItem(String),
    #[error("edge {0:?}-{1:?} is not in the host graph")]
    MissingEdge(String, String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("not an edge path: {0}")]
    NotEdgePath(String),
    #[error("edge paths share {0} vertices")]
    PathsOverlap(usize),
    #[error("not a good cactus: {0}")]
    NotGoodCactus(String),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),
    #[error("edge guard exceeded: {edges} edges > {limit}")]
    GuardExceeded { edges: usize, limit: usize },
    #[error("not a prism vertex label: {0:?}")]
    NotPrismVertex(String),
    #[error("{0} is not a subgraph of the chain")]
    NotInChart(String),
    #[error("fragment {fragment}: {reason}")]
    Fragment { fragment: String, reason: String },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

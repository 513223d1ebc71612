use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: u32, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("malformed graph json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarityError {
    #[error("graph of order {order} exceeds the planarity check cap of {cap}; planarity unverified")]
    TooLarge { order: usize, cap: usize },
}

#[derive(Debug, Error)]
pub enum FsError {
    #[error("location graph has order {locations} but people graph has order {people}")]
    OrderMismatch { locations: usize, people: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("illegal swap ({a}, {b}): {reason}")]
    IllegalSwap { a: u32, b: u32, reason: &'static str },
    #[error("invalid color classing: {0}")]
    InvalidClassing(String),
    #[error("vertex {vertex} out of range for order {order}")]
    OutOfRange { vertex: u32, order: usize },
    #[error("bidirectional search needs an explicit target configuration")]
    BidirectionalWithoutTarget,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum NclError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: u32 },
    #[error("edge {edge} has weight {weight}; weights must be 1 or 2")]
    BadWeight { edge: usize, weight: u8 },
    #[error("edge {edge} endpoint {vertex} out of range for {order} vertices")]
    EndpointOutOfRange { edge: usize, vertex: u32, order: usize },
    #[error("vertex {vertex} has degree {degree}; every vertex needs degree exactly 3")]
    Degree { vertex: u32, degree: usize },
    #[error("vertex {vertex} ({kind}) has incident weights {weights:?}")]
    WeightProfile {
        vertex: u32,
        kind: &'static str,
        weights: Vec<u8>,
    },
    #[error("orientation covers {got} edges but the graph has {expected}")]
    Arity { expected: usize, got: usize },
    #[error("orientation violates the in-weight constraint at vertex {vertex} (in-weight {in_weight})")]
    InvalidOrientation { vertex: u32, in_weight: u32 },
    #[error("orientation entry {index} is {value}; expected 0 or 1")]
    BadBit { index: usize, value: u8 },
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("vertex {vertex} is not an endpoint of edge {edge}")]
    NotAnEndpoint { edge: usize, vertex: u32 },
    #[error("flipping edge {0} is illegal here")]
    IllegalFlip(usize),
    #[error("exhaustive enumeration limited to {cap} edges, graph has {edges}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("unknown vertex kind {0:?}")]
    UnknownKind(String),
    #[error("malformed ncl json: {0}")]
    Json(#[from] serde_json::Error),
}

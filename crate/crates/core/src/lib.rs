//! Graph primitives, friends-and-strangers swap systems, constraint-logic
//! orientations and the shared reachability engine behind both.

pub mod error;
pub mod fs;
pub mod graph;
pub mod ncl;
pub mod planar;
pub mod search;
pub mod store;

pub use error::{FsError, GraphError, NclError, PlanarityError};
pub use graph::{SimpleGraph, VertexId};
pub use search::{ReachabilityResult, SearchLimits, Status};

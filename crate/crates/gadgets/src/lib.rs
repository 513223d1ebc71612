//! Gadgets built from colored people: the friendship relation, the four
//! transcribed blueprints, assemblies and an isolation harness.

pub mod assembly;
pub mod blueprint;
pub mod color;
pub mod direction;

pub use assembly::{harness, Assembly, Harness, PortScenario, CORRIDOR_LEN};
pub use blueprint::{blueprint, GadgetBlueprint, GadgetKind};
pub use color::{build_people_graph, friendship, Color, ColorRelation};
pub use direction::{direction_of, edge_state, vertex_interior, EdgeGadgetDirection, GadgetError, VertexAssembly};

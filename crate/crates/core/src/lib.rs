pub mod construct;
pub mod count;
pub mod error;
pub mod family;
pub mod game;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod partition;
pub mod verify;

pub use count::{automorphism_count, count_copies, strip_isolated, CopyCount, Pattern};
pub use error::{Error, Result};
pub use family::GraphFamily;
pub use graph::{make_graph, path_forest, turan_graph, Bipartition, EdgeSet, Graph};

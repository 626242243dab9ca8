//! Construction, exhaustive search and classification of (1,1,k)-mixed
//! graphs: graphs in which every vertex has exactly one incident edge and
//! exactly one outgoing and one incoming arc.

pub mod algebra;
pub mod bounds;
pub mod canon;
pub mod codec;
pub mod families;
pub mod graph;
pub mod reference;
pub mod search;
pub mod spectra;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonMode, CanonicalForm};
pub use graph::{ArcColor, ColoredDigraph, DistanceTable, GraphError, MixedGraph};

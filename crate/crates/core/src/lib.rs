//! Path partitions, detour colourings and star colourings of small graphs.
//!
//! Graphs are simple and undirected with at most 64 vertices, stored as
//! bitmask adjacency rows. Every result the library hands out (partitions,
//! colourings) comes with the detour orders that certify it, computed
//! exactly.

pub mod blocks;
pub mod certificate;
pub mod detour;
pub mod ear;
pub mod enumerate;
pub mod error;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod multiway;
pub mod oracle;
pub mod partition;
pub mod starcolor;

pub use certificate::{ColoringCertificate, ColoringProperty};
pub use detour::{detour_order, DetourRecord};
pub use ear::{ear_decompose, validate_ears, Ear, EarDecomposition};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use partition::{tau_partition, Bipartition, PartitionCertificate, PartitionTarget};
pub use multiway::{detour_coloring, t_partition};
pub use starcolor::star_coloring;

//! Orientation of bridgeless undirected graphs with small directed
//! diameter.
//!
//! The centerpiece is [`orient::orient_diam3`]: for diameter-3 graphs that
//! contain an adjacent pair of degree-2 vertices it applies a vertex
//! partition and a fixed rule set that keeps the oriented diameter at most
//! 9 on the relevant graph class; everything else falls back to exact or
//! heuristic search. Supporting pieces: distance machinery in [`graph`],
//! class membership checks in [`classes`], the hub/shell two-step
//! orientation in [`two_step`], the partition itself in [`partition`],
//! exact search and witness hunting in [`search`], generators in [`gen`],
//! and file formats in [`io`].

pub mod classes;
pub mod gen;
pub mod graph;
pub mod io;
pub mod orient;
pub mod partition;
pub mod search;
pub mod two_step;

pub use graph::{bfs_distances, diameter, DiameterCertificate, Orientation, UndirectedGraph};
pub use orient::{orient_diam3, verify_orientation, OrientMode, OrientationPlan};
pub use search::{oriented_diameter_exact, robbins_orient, search_witness, SearchConfig};

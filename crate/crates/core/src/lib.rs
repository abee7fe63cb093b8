//! Orientations, the derived digraph `W(D)`, Eulerian parity counts, and
//! the coefficient certificates they yield for (additive) list coloring.

pub mod coloring;
pub mod error;
pub mod eulerian;
pub mod gen;
pub mod graph;
pub mod poly;
pub mod samples;
pub mod wd;

pub use error::{Error, Result};
pub use graph::{parse, Graph, GraphFile, Orientation, Vertex, VertexPartition};

/// Size limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Arcs of a digraph whose subsets are enumerated.
    pub eulerian_arcs: usize,
    /// Edges of a graph whose orientations are enumerated.
    pub orientation_edges: usize,
    /// Labelings tried by the additive coloring search.
    pub coloring_space: u128,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            eulerian_arcs: 24,
            orientation_edges: 20,
            coloring_space: 10_000_000,
        }
    }
}

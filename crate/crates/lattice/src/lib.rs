//! Graph domains on `Z^d` (balls, boxes, tori, rimmed windows), parity
//! structure, boundary operators, colorings, height functions and dominant
//! patterns. Everything here is an immutable value after construction.

mod coloring;
mod cutset;
mod graph;
mod height;
mod pattern;
mod vset;
mod window;

pub use coloring::{Coloring, PartialColoring};
pub use cutset::{boundaries, CutSet};
pub use graph::{parse_edge_list, parse_graph_spec, Graph, GraphKind, Vertex};
pub use height::HeightFunction;
pub use pattern::{dominant_patterns, ColorSet, Pattern};
pub use vset::VSet;
pub use window::{RimKind, RimmedWindow};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("empty graph rejected")]
    EmptyGraph,
    #[error("torus side {0} is odd; only even sides keep the graph bipartite")]
    OddTorusSide(usize),
    #[error("torus side {0} < 4 creates parallel edges")]
    TorusSideTooSmall(usize),
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("edge ({0},{1}) out of range")]
    EdgeOutOfRange(Vertex, Vertex),
    #[error("embedded edge ({0},{1}) does not join L1-distance-1 coordinates")]
    NonUnitEdge(Vertex, Vertex),
    #[error("bad graph spec: {0}")]
    BadSpec(String),
    #[error("color {0} outside 1..={1}")]
    ColorOutOfRange(u8, u8),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

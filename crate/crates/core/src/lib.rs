//! Locally irregular edge colorings of trees, unicyclic graphs and cacti.
//!
//! A coloring is locally irregular when every edge joins two vertices of
//! different degree inside its own color class. The solvers here color every
//! colorable cactus with at most four colors (three for trees and unicyclic
//! graphs), the classifier recognizes the graphs with no such coloring, and
//! an exhaustive oracle gives exact values on small inputs.

pub mod blocks;
pub mod cactus;
pub mod classify;
pub mod coloring;
mod dp;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod tree;
pub mod unicyclic;

pub use blocks::{decompose_blocks, is_cactus, Block, BlockKind, BlockTree};
pub use cactus::{cactus_liec, cactus_liec_components, find_end_grape, grape_liec, EndGrape};
pub use classify::{classify, is_colorable, recognize_t_family, ColorabilityClass, TFamilyWitness};
pub use coloring::{is_liec, verify_liec, Color, EdgeColoring, VerifyReport, Violation};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, to_edge_list, EdgeId, Graph, Vertex};
pub use oracle::{exact_chi_irr, is_colorable_exhaustive};
pub use tree::{tree_liec, tree_liec_avoiding, Shrub};
pub use unicyclic::unicyclic_liec;

//! Edge-disjoint rainbow spanning trees in properly edge-coloured complete
//! graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: coloured graphs, subgraph views, the `.rcg` format and
//!   colouring generators.
//! * [`matching`]: maximum and greedy matchings, rainbow matchings, and the
//!   reservation of edge-disjoint rainbow matchings.
//! * [`rainbow`]: maximum rainbow forests by matroid intersection, plus
//!   exhaustive oracles for small graphs.
//! * [`colour`]: colour-class richness, well-coloured certificates and the
//!   rich/robust classifier.
//! * [`decompose`]: the tree-peeling pipeline and the top-level driver.
//! * [`verify`]: an independent checker for decompositions.
//! * [`report`]: JSON run records and CSV sweep rows for the harness.

pub mod colour;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod matching;
pub mod partitions;
pub mod rainbow;
pub mod ratio;
pub mod report;
pub mod union_find;
pub mod verify;

pub use colour::{classify, Branch, BranchDecision, ColourClass, RichClassPartition};
pub use decompose::{decompose, greedy_peel, DecompositionResult, Mode, PipelineParams};
pub use error::{Error, Result};
pub use graph::{
    parse_coloured_graph, validate_proper, ColouredGraph, EdgeSubset, Family, GraphView,
    PropernessReport,
};
pub use matching::{max_matching, Matching};
pub use rainbow::{find_rainbow_spanning_tree, max_rainbow_forest, RainbowForest, RainbowTree};
pub use ratio::Ratio;
pub use verify::{verify_decomposition, VerificationReport};

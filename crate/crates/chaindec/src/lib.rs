//! Chain-decomposition trees for P7-free bipartite graphs.
//!
//! This crate decomposes labelled bipartite graphs without an induced
//! seven-vertex chordless path into binary decomposition trees, encodes
//! the trees in `O(n log n)` bits, reconstructs the graphs exactly, and
//! cross-checks every structural claim with exhaustive enumeration at
//! small n.
//!
//! The pipeline, end to end:
//!
//! 1. [`bigraph`] models labelled bipartite graphs with a fixed
//!    bipartition; [`patterns`] finds induced paths.
//! 2. [`neighbourhood`] builds the common-neighbour graphs of each part,
//!    recognizes quasi-threshold structure, and extracts the universal
//!    clique cutset.
//! 3. [`chain`] grows, validates and inverts chain decompositions.
//! 4. [`dectree`] assembles the full decomposition tree and decodes it.
//! 5. [`codec`] serializes trees bit-exactly and parses the `.bg` text
//!    format.
//! 6. [`oracle`] is the brute-force ground truth: exhaustive sweeps,
//!    class counts and seeded random sampling.

pub mod bigraph;
pub mod chain;
pub mod codec;
pub mod dectree;
pub mod fixtures;
pub mod neighbourhood;
pub mod oracle;
pub mod patterns;

pub use bigraph::{BipartiteGraph, GraphError, Side, VertexId, VertexSet};
pub use chain::{ChainDecomposition, ChainError, ChainReport, ChainSeed, Handedness};
pub use codec::{BitStream, CodecError};
pub use dectree::{BuildError, DecodeError, DecompositionTree, NodeLabel, TreeMetrics};
pub use oracle::{ClassCount, GraphReport, OracleError, SweepReport};
pub use patterns::InducedPathWitness;

//! Mixed graphs and their converses.
//!
//! * [`graph`] and [`perm`]: immutable mixed graphs, undirected graphs and
//!   vertex permutations.
//! * [`format`]: the plain-text record format.
//! * [`iso`]: isomorphism, automorphism and self-converse search.
//! * [`census`]: exact Burnside counts of unlabeled and self-converse mixed graphs.
//! * [`oracle`]: exhaustive enumeration for small orders.
//! * [`random`]: seeded random models and Monte Carlo experiments.
//! * [`spectral`]: Hermitian adjacency matrices and exact characteristic polynomials.
//! * [`report`]: CSV and JSON output.

pub mod census;
pub mod format;
pub mod graph;
pub mod iso;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod random;
pub mod report;
pub mod spectral;

pub use graph::{neighborhood_stats, Graph, GraphError, MixedGraph, NeighborhoodStats, PairState};
pub use iso::{find_isomorphism, is_asymmetric, is_self_converse, IsoWitness};
pub use partition::{partitions, Partition};
pub use perm::Permutation;

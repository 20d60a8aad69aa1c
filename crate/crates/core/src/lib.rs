//! Best swap edges of tree spanners.
//!
//! Given an unweighted 2-edge-connected graph `G` and a spanning tree `T`,
//! [`all_best_swap_edges`] finds, for every tree edge `e`, a non-tree edge
//! `f` reconnecting `T - e` that minimizes the stretch factor of the swapped
//! tree in `G - e`, in `O(n^2)` time and space overall. The [`oracle`]
//! module recomputes everything exhaustively for testing.

pub mod alloc_meter;
pub mod cli;
pub mod diameter;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod rmq;
pub mod swap;
pub mod tree_index;

pub use diameter::{Cost, DiametralPair};
pub use graph::{EdgeId, Graph, RootedTree};
pub use instance::{parse_instance, Instance};
pub use swap::{all_best_swap_edges, SwapResult, SwapSolver};
pub use tree_index::TreeIndex;

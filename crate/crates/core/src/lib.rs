//! Exact toolkit for binomial edge ideals of block graphs.
//!
//! Given a finite simple graph `G` on `[n]`, the binomial edge ideal `J_G`
//! lives in `K[x_1..x_n, y_1..y_n]` and is generated by the 2x2 minors
//! `x_i y_j - x_j y_i` over the edges of `G`. This crate computes, at desk
//! scale and exactly over prime fields:
//!
//! * block structure, clique degrees, and the decomposition of a graph into
//!   indecomposable pieces ([`graph`], [`block`]);
//! * the lexicographic initial ideal of `J_G` via admissible paths, with a
//!   Buchberger cross-check ([`groebner`]);
//! * graded Betti tables of `S/in(J_G)` (lcm-lattice, Hochster and Taylor
//!   routes) and of `S/J_G` (bigraded Koszul homology) ([`resolutions`]);
//! * the classification of block graphs with a single extremal Betti number
//!   by forbidden induced subgraphs ([`classify`]);
//! * executable checks of the extremal-Betti statements with JSON reports
//!   ([`harness`]).

pub mod block;
pub mod classify;
pub mod config;
pub mod error;
pub mod generate;
pub mod graph;
pub mod groebner;
pub mod harness;
pub mod monomial;
pub mod resolutions;

pub use block::{block_structure, decompose, is_block_graph, leaf_surgery, restrict_to_p};
pub use config::Config;
pub use error::Error;
pub use graph::Graph;

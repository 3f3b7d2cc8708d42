//! Toolkit for r-neighbor bootstrap percolation.
//!
//! A dormant vertex becomes active once at least `r` of its neighbors are
//! active, and active vertices stay active. `m(G, r)` is the least size of a
//! seed set from which the whole graph activates. The crate provides:
//!
//! * [`graph`]: bitset graphs, graph6, canonical forms and isomorph-free
//!   enumeration of small graphs;
//! * [`percolation`]: the process itself, exact and greedy contagious sets;
//! * [`conditions`]: degree conditions (σ₂, Dirac-type, Chvátal-type) and
//!   degree sequence tools;
//! * [`families`]: the two-clique exceptional families and the finite
//!   exceptional set for `m(G, 2) = 2` under `σ₂(G) >= n - 2`;
//! * [`verify`]: theorem checks over graph corpora.

pub mod conditions;
pub mod error;
pub mod families;
pub mod graph;
pub mod percolation;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};

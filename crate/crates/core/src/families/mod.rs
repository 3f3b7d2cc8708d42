//! The exceptional graphs for `m(G, 2) = 2` under `σ₂(G) >= n - 2`: four
//! infinite two-clique families and a finite residual set.

mod classify;
mod construct;
mod corpus;

pub use classify::{
    classify_family, classify_family_with, recognize_surgery, FamilyKind, FamilyLabel, CLASSIFY_MAX_ORDER,
};
pub use construct::{
    family_graph, make_complete, make_cycle, make_g0, make_g1, make_g2, make_g3, make_join, make_path, make_union,
    Family, Surgery,
};
pub use corpus::{derive_x, derive_x_from, in_x_filter, XCorpus, XEntry, FILTER_VERSION};

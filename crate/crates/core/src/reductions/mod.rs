//! Gadget reductions from bipartite retraction problems to colouring and
//! matrix partition problems on transitive digraphs.

pub mod corpus;
mod csp;
mod here;

pub use csp::{
    build_csp_matrix, build_loops_matrix, decide_turing, expand_turing, transform_csp_instance,
    PartLabel,
};
pub use here::{build_here_target, build_here_target_with_n, transform_here_instance, LevelledDigraph};

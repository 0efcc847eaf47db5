//! Exact k-clique counting over a succinct clique tree (SCT) and
//! Frank-Wolfe style approximation of the k-clique densest subgraph.
//!
//! The pipeline is:
//!
//! 1. [`graph`]: parse an edge list, compute core numbers, restrict to the
//!    (k-1)-core.
//! 2. [`sct`]: build the succinct clique tree for a fixed `k`.
//! 3. [`counting`]: exact per-vertex and total k-clique counts from the tree.
//! 4. [`fw`]: iterate vertex weights with either the synchronous (`basic`) or
//!    the simultaneous (`ccas`) update rule.
//! 5. [`extract`]: sweep the weight level sets for the densest prefix.
//!
//! With the `parallel` feature (on by default) the data-parallel loops run on
//! rayon. Every such entry point also takes an [`Exec`] so both routes stay
//! callable from the same build.

pub mod counting;
mod error;
pub mod extract;
pub mod fw;
pub mod generators;
pub mod graph;
pub mod sct;

pub use counting::{binomial, brute_force_counts, local_counts, max_local, CliqueCounts};
pub use error::{Error, Result};
pub use extract::{density, exact_cds_bruteforce, extract_cds, CdsResult, CdsSource};
pub use fw::{run, Engine, IterationConfig, RunStats, Variant, WeightVector};
pub use graph::{core_decomposition, k_core_subgraph, parse_edge_list, CoreInfo, Graph};
pub use sct::{build_sct, Label, PathOrder, PathView, Sct};

/// Smallest run of paths handed to one rayon task. Each task allocates a
/// vertex-sized accumulator, so tiny tasks cost more than they save.
#[cfg(feature = "parallel")]
pub(crate) const PAR_MIN_PATHS: usize = 2048;

/// Execution strategy for the data-parallel loops.
///
/// `Parallel` silently degrades to `Sequential` when the crate is built
/// without the `parallel` feature.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    pub(crate) fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

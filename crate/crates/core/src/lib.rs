//! Finite-domain constraint solving with decomposition during search.
//!
//! A [`ProblemState`] holds variable domains and a store of propagators.
//! The search engines count or enumerate its solutions, either by plain
//! depth-first search or by AND/OR search that splits the problem into
//! independent components whenever propagation disconnects its constraint
//! graph. Counts are generic over [`CountValue`]; [`Count`] (arbitrary
//! precision) is the default.
//!
//! ```
//! use dds_core::{dds_count, ConstraintSpec, Domain, Heuristic, ProblemState, VarRef};
//!
//! let mut s = ProblemState::new([
//!     Domain::new([3, 5]),
//!     Domain::new([3, 4]),
//!     Domain::new([1, 2]),
//!     Domain::new([1, 2]),
//! ]);
//! for i in 0..4 {
//!     for j in i + 1..4 {
//!         s.post(ConstraintSpec::Neq(VarRef(i), VarRef(j))).unwrap();
//!     }
//! }
//! let r: dds_core::BigCountResult = dds_count(&s, Heuristic::InputOrder, None);
//! assert_eq!(r.count, 6u32.into());
//! assert_eq!(r.stats.decomposition_nodes, 1);
//! ```

pub mod count;
pub mod domain;
pub mod engine;
pub mod graph;
pub mod models;
pub mod propagators;
pub mod search;
mod unionfind;

pub use count::{Count, CountValue};
pub use domain::{Domain, VarRef};
pub use engine::{Assignment, ProblemState, PropagatorHandle, StateStatus, Tell};
pub use graph::{
    build_constraint_graph, components, try_decompose, ConstraintGraph, Decomposition,
};
pub use propagators::{ConstraintSpec, Dfa, LinearRel, PostError, PropagationResult};
pub use search::{
    dds_count, dds_tree, dfs_count, dfs_tree, search, trace_dot, tree_count, tree_expand,
    CountResult, Heuristic, SearchConfig, SearchOutcome, SearchStats, SolutionTree, Strategy,
};

/// Counting result with an arbitrary-precision count.
pub type BigCountResult = CountResult<Count>;
/// Counting result with a 64-bit count; overflows panic in debug builds.
pub type U64CountResult = CountResult<u64>;
/// Counting result with a floating-point count for huge solution spaces.
pub type F64CountResult = CountResult<f64>;

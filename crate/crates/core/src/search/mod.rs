//! Depth-first and decomposing (AND/OR) search for counting and enumeration.
//!
//! Both engines branch with `x = v` on the left and `x != v` on the right.
//! The decomposing engine additionally inspects the constraint graph at
//! every branchable node: independent components are solved one after the
//! other and their counts multiplied, stopping early as soon as one of them
//! has no solution.

mod explorer;
mod trace;
mod tree;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::count::{Count, CountValue};
use crate::domain::VarRef;
use crate::engine::ProblemState;
use crate::graph::{build_constraint_graph_in, Decomposition};

pub use trace::{trace_dot, trace_dot_named, SearchTrace, TraceKind, TraceNode};
pub use tree::{tree_count, tree_expand, SolutionTree};

/// Variable selection. Values are always tried smallest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    InputOrder,
    FirstFail,
    MaxDegree,
    MaxDegreeThenFirstFail,
}

impl Heuristic {
    pub const ALL: [Heuristic; 4] = [
        Heuristic::InputOrder,
        Heuristic::FirstFail,
        Heuristic::MaxDegree,
        Heuristic::MaxDegreeThenFirstFail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::InputOrder => "input",
            Heuristic::FirstFail => "ff",
            Heuristic::MaxDegree => "maxdeg",
            Heuristic::MaxDegreeThenFirstFail => "maxdeg-ff",
        }
    }

    pub(crate) fn uses_degree(self) -> bool {
        matches!(
            self,
            Heuristic::MaxDegree | Heuristic::MaxDegreeThenFirstFail
        )
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Heuristic::ALL
            .into_iter()
            .find(|h| h.name() == s)
            .ok_or_else(|| {
                format!("unknown heuristic `{s}` (expected input, ff, maxdeg or maxdeg-ff)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Dfs,
    Dds,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Dfs => "dfs",
            Strategy::Dds => "dds",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dfs" => Ok(Strategy::Dfs),
            "dds" => Ok(Strategy::Dds),
            _ => Err(format!("unknown engine `{s}` (expected dfs or dds)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchDecision {
    pub var: VarRef,
    pub value: i64,
}

/// Search statistics.
///
/// `nodes = choice_nodes + decomposition_nodes + solutions_found + fails`:
/// every node is a choice, a decomposition, or a leaf. A solution leaf of
/// the decomposing engine may stand for a partial solution of a component,
/// or for several solutions when unconstrained variables remain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub choice_nodes: u64,
    pub decomposition_nodes: u64,
    pub fails: u64,
    pub solutions_found: u64,
    pub propagations: u64,
    pub max_depth: u64,
    pub wall_time: Duration,
}

impl SearchStats {
    /// Node statistics without the timing, for exact comparisons.
    pub fn shape(&self) -> (u64, u64, u64, u64, u64, u64) {
        (
            self.nodes,
            self.choice_nodes,
            self.decomposition_nodes,
            self.fails,
            self.solutions_found,
            self.max_depth,
        )
    }
}

/// Result of a counting run. `exact` is false iff the cut-off stopped the
/// search, in which case `count` is a lower bound that exceeds the limit.
#[derive(Debug, Clone, PartialEq)]
pub struct CountResult<C = Count> {
    pub count: C,
    pub exact: bool,
    pub stats: SearchStats,
}

#[derive(Debug, Clone)]
pub struct TreeResult<C = Count> {
    pub tree: SolutionTree,
    pub count: C,
    pub exact: bool,
    pub stats: SearchStats,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub heuristic: Heuristic,
    /// stop once more than this many full solutions have been found
    pub limit: Option<u64>,
    pub build_tree: bool,
    /// record a search trace of at most this many nodes
    pub trace_cap: Option<usize>,
}

impl SearchConfig {
    pub fn new(strategy: Strategy, heuristic: Heuristic) -> Self {
        SearchConfig {
            strategy,
            heuristic,
            limit: None,
            build_tree: false,
            trace_cap: None,
        }
    }

    pub fn with_limit(mut self, limit: Option<u64>) -> Self {
        self.limit = limit;
        self
    }

    pub fn with_tree(mut self) -> Self {
        self.build_tree = true;
        self
    }

    pub fn with_trace(mut self, cap: usize) -> Self {
        self.trace_cap = Some(cap);
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome<C = Count> {
    pub count: C,
    pub exact: bool,
    pub stats: SearchStats,
    pub tree: Option<SolutionTree>,
    pub trace: Option<SearchTrace>,
}

/// Runs one search from a copy of `root`; `root` itself is left untouched.
pub fn search<C: CountValue>(root: &ProblemState, cfg: &SearchConfig) -> SearchOutcome<C> {
    explorer::run(root, cfg, None)
}

/// Like [`search`], calling `observer` at every decomposition node with the
/// state (at its fixpoint) and the components found in the current scope.
pub fn search_observed<C: CountValue>(
    root: &ProblemState,
    cfg: &SearchConfig,
    observer: &mut dyn FnMut(&ProblemState, &Decomposition),
) -> SearchOutcome<C> {
    explorer::run(root, cfg, Some(observer))
}

pub fn dfs_count<C: CountValue>(
    root: &ProblemState,
    heuristic: Heuristic,
    limit: Option<u64>,
) -> CountResult<C> {
    let out = search(
        root,
        &SearchConfig::new(Strategy::Dfs, heuristic).with_limit(limit),
    );
    CountResult {
        count: out.count,
        exact: out.exact,
        stats: out.stats,
    }
}

pub fn dds_count<C: CountValue>(
    root: &ProblemState,
    heuristic: Heuristic,
    limit: Option<u64>,
) -> CountResult<C> {
    let out = search(
        root,
        &SearchConfig::new(Strategy::Dds, heuristic).with_limit(limit),
    );
    CountResult {
        count: out.count,
        exact: out.exact,
        stats: out.stats,
    }
}

fn tree_result<C: CountValue>(out: SearchOutcome<C>) -> TreeResult<C> {
    TreeResult {
        tree: out.tree.expect("tree requested"),
        count: out.count,
        exact: out.exact,
        stats: out.stats,
    }
}

/// AND/OR tree whose expansion is the solution set (truncated when the
/// cut-off fires).
pub fn dds_tree<C: CountValue>(
    root: &ProblemState,
    heuristic: Heuristic,
    limit: Option<u64>,
) -> TreeResult<C> {
    tree_result(search(
        root,
        &SearchConfig::new(Strategy::Dds, heuristic)
            .with_limit(limit)
            .with_tree(),
    ))
}

/// OR-only tree of a plain depth-first search.
pub fn dfs_tree<C: CountValue>(
    root: &ProblemState,
    heuristic: Heuristic,
    limit: Option<u64>,
) -> TreeResult<C> {
    tree_result(search(
        root,
        &SearchConfig::new(Strategy::Dfs, heuristic)
            .with_limit(limit)
            .with_tree(),
    ))
}

/// Selects the branching variable among the unassigned variables of
/// `scope`, ties broken by lowest index, and pairs it with its smallest
/// value. Returns `None` if every variable of `scope` is assigned.
pub fn choose(
    state: &ProblemState,
    heuristic: Heuristic,
    scope: &[VarRef],
) -> Option<BranchDecision> {
    let degrees = heuristic
        .uses_degree()
        .then(|| build_constraint_graph_in(state, Some(scope)).degrees(state.var_count()));
    choose_with_degrees(state, heuristic, scope, degrees.as_deref())
}

pub(crate) fn choose_with_degrees(
    state: &ProblemState,
    heuristic: Heuristic,
    scope: &[VarRef],
    degrees: Option<&[usize]>,
) -> Option<BranchDecision> {
    let deg = |x: VarRef| degrees.map_or(0, |d| d[x.0]);
    let size = |x: VarRef| state.domain(x).size();
    let candidates = scope.iter().copied().filter(|&x| !state.is_assigned(x));
    let var = match heuristic {
        Heuristic::InputOrder => candidates.min(),
        Heuristic::FirstFail => candidates.min_by_key(|&x| (size(x), x)),
        Heuristic::MaxDegree => candidates.min_by_key(|&x| (std::cmp::Reverse(deg(x)), x)),
        Heuristic::MaxDegreeThenFirstFail => {
            candidates.min_by_key(|&x| (std::cmp::Reverse(deg(x)), size(x), x))
        }
    }?;
    let value = state.domain(var).min()?;
    Some(BranchDecision { var, value })
}

/// Puts first the component containing the variable the heuristic selects
/// over the union of all components; the rest keep ascending order of their
/// lowest variable.
pub fn order_components(
    components: Vec<Vec<VarRef>>,
    state: &ProblemState,
    heuristic: Heuristic,
) -> Vec<Vec<VarRef>> {
    let all: Vec<VarRef> = components.iter().flatten().copied().collect();
    let degrees = heuristic
        .uses_degree()
        .then(|| build_constraint_graph_in(state, Some(&all)).degrees(state.var_count()));
    order_components_with(components, state, heuristic, degrees.as_deref())
}

pub(crate) fn order_components_with(
    mut components: Vec<Vec<VarRef>>,
    state: &ProblemState,
    heuristic: Heuristic,
    degrees: Option<&[usize]>,
) -> Vec<Vec<VarRef>> {
    components.sort_by_key(|c| c.iter().min().copied());
    let all: Vec<VarRef> = components.iter().flatten().copied().collect();
    if let Some(d) = choose_with_degrees(state, heuristic, &all, degrees) {
        if let Some(pos) = components.iter().position(|c| c.contains(&d.var)) {
            let first = components.remove(pos);
            components.insert(0, first);
        }
    }
    components
}

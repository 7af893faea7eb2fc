//! The dynamic constraint hypergraph and its connected components.
//!
//! The graph is rebuilt from the propagator store every time it is needed:
//! each active propagator reports its decomposed fragments, restricted to
//! unassigned variables, and fragments with fewer than two variables are
//! dropped.

use crate::domain::VarRef;
use crate::engine::{ProblemState, PropagatorHandle};
use crate::unionfind::{group_by_root, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub vars: Vec<VarRef>,
    pub origin: PropagatorHandle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    /// unassigned variables, ascending
    pub nodes: Vec<VarRef>,
    pub edges: Vec<GraphEdge>,
    /// assigned variables seen while building the graph
    pub assigned: Vec<VarRef>,
}

impl ConstraintGraph {
    /// Number of edges incident to each variable, indexed by variable.
    pub fn degrees(&self, var_count: usize) -> Vec<usize> {
        let mut deg = vec![0; var_count];
        for e in &self.edges {
            for x in &e.vars {
                deg[x.0] += 1;
            }
        }
        deg
    }
}

/// Maximal connected sets of graph nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// each component ascending; components ordered by their lowest variable
    pub components: Vec<Vec<VarRef>>,
    pub assigned: Vec<VarRef>,
}

/// Builds the constraint graph of `state` over all variables.
pub fn build_constraint_graph(state: &ProblemState) -> ConstraintGraph {
    build_constraint_graph_in(state, None)
}

/// Builds the constraint graph restricted to `scope` (all variables when
/// `None`). Fragments are intersected with the scope.
pub fn build_constraint_graph_in(
    state: &ProblemState,
    scope: Option<&[VarRef]>,
) -> ConstraintGraph {
    let n = state.var_count();
    let in_scope: Vec<bool> = match scope {
        Some(s) => {
            let mut m = vec![false; n];
            for x in s {
                m[x.0] = true;
            }
            m
        }
        None => vec![true; n],
    };
    let mut nodes = Vec::new();
    let mut assigned = Vec::new();
    for x in state.vars().filter(|x| in_scope[x.0]) {
        if state.is_assigned(x) {
            assigned.push(x);
        } else {
            nodes.push(x);
        }
    }
    let mut edges = Vec::new();
    for (handle, prop) in state.active_propagators() {
        if !prop.scope().iter().any(|x| in_scope[x.0]) {
            continue;
        }
        for fragment in prop.hyperedges(state.domains()) {
            let vars: Vec<VarRef> = fragment.into_iter().filter(|x| in_scope[x.0]).collect();
            if vars.len() >= 2 {
                edges.push(GraphEdge {
                    vars,
                    origin: handle,
                });
            }
        }
    }
    ConstraintGraph {
        nodes,
        edges,
        assigned,
    }
}

pub fn components(graph: &ConstraintGraph) -> ComponentPartition {
    let max = graph.nodes.iter().map(|x| x.0 + 1).max().unwrap_or(0);
    let mut uf = UnionFind::new(max);
    for e in &graph.edges {
        for w in e.vars.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut nodes = graph.nodes.clone();
    nodes.sort();
    let components = group_by_root(&mut uf, nodes.into_iter().map(|x| (x.0, x)));
    ComponentPartition {
        components,
        assigned: graph.assigned.clone(),
    }
}

/// Classification of the variables of a (scoped) state at a fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// components that still need search (at least one constraint edge)
    pub components: Vec<Vec<VarRef>>,
    /// unassigned variables not constrained by anything: each multiplies the
    /// count by its domain size
    pub free: Vec<VarRef>,
    pub assigned: Vec<VarRef>,
}

impl Decomposition {
    pub fn from_graph(graph: &ConstraintGraph) -> Decomposition {
        let partition = components(graph);
        // every edge has at least two endpoints, so singletons are unconstrained
        let (components, singles): (Vec<_>, Vec<_>) =
            partition.components.into_iter().partition(|c| c.len() > 1);
        Decomposition {
            components,
            free: singles.into_iter().flatten().collect(),
            assigned: partition.assigned,
        }
    }
}

/// Component analysis of `state` restricted to `scope`.
pub fn analyze(state: &ProblemState, scope: Option<&[VarRef]>) -> (ConstraintGraph, Decomposition) {
    let graph = build_constraint_graph_in(state, scope);
    let d = Decomposition::from_graph(&graph);
    (graph, d)
}

/// The independent partial problems of `state`, when there are at least two
/// that still need search.
///
/// Assigned variables and unconstrained free variables are attached to the
/// first component (the one holding the lowest-indexed unassigned variable
/// that still needs search). Every unassigned variable appears in exactly one
/// returned set.
pub fn try_decompose(state: &ProblemState) -> Option<Vec<Vec<VarRef>>> {
    let (_, d) = analyze(state, None);
    if d.components.len() < 2 {
        return None;
    }
    let mut parts = d.components;
    parts[0].extend(d.assigned);
    parts[0].extend(d.free);
    parts[0].sort();
    Some(parts)
}

//! All-different with matching-based filtering on the variable-value graph.
//!
//! A maximum matching covering every variable certifies feasibility. An edge
//! `(x, v)` can be extended to a maximum matching iff it is matched, lies on
//! an even alternating cycle (same strongly connected component once
//! matching edges point variable -> value and free edges value -> variable),
//! or is reachable on an even alternating path from an unmatched value.

use super::PropagationResult;
use crate::domain::{Domain, VarRef};
use crate::unionfind::{group_by_root, UnionFind};

const NONE: usize = usize::MAX;

struct ValueGraph {
    values: Vec<i64>,
    /// adjacency of each variable, as indices into `values`
    adj: Vec<Vec<usize>>,
}

impl ValueGraph {
    fn build(doms: &[Domain], vars: &[VarRef]) -> ValueGraph {
        let mut values: Vec<i64> = vars.iter().flat_map(|x| doms[x.0].iter()).collect();
        values.sort_unstable();
        values.dedup();
        let adj = vars
            .iter()
            .map(|x| {
                doms[x.0]
                    .iter()
                    .map(|v| values.binary_search(&v).expect("value collected above"))
                    .collect()
            })
            .collect();
        ValueGraph { values, adj }
    }
}

/// Maximum bipartite matching by repeated augmenting-path search.
/// Returns `(mate_of_var, mate_of_value)`.
fn max_matching(g: &ValueGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.adj.len();
    let mut mate_var = vec![NONE; n];
    let mut mate_val = vec![NONE; g.values.len()];

    // greedy warm start
    for (x, mate) in mate_var.iter_mut().enumerate() {
        if let Some(&v) = g.adj[x].iter().find(|&&v| mate_val[v] == NONE) {
            *mate = v;
            mate_val[v] = x;
        }
    }

    let mut visited = vec![usize::MAX; g.values.len()];
    for root in 0..n {
        if mate_var[root] != NONE {
            continue;
        }
        // iterative DFS for an augmenting path from `root`
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut via: Vec<usize> = Vec::new(); // value chosen at each stack level
        let mut found = NONE;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            if *next >= g.adj[x].len() {
                stack.pop();
                via.pop();
                continue;
            }
            let v = g.adj[x][*next];
            *next += 1;
            if visited[v] == root {
                continue;
            }
            visited[v] = root;
            via.push(v);
            if mate_val[v] == NONE {
                found = v;
                break;
            }
            stack.push((mate_val[v], 0));
        }
        if found != NONE {
            for (level, &(x, _)) in stack.iter().enumerate() {
                let v = via[level];
                mate_var[x] = v;
                mate_val[v] = x;
            }
        }
    }
    (mate_var, mate_val)
}

/// Tarjan's SCC over `adj`, iterative. Returns the component id of each node.
fn strongly_connected(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut comp_count = 0;

    for s in 0..n {
        if index[s] != NONE {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(s, 0)];
        index[s] = counter;
        low[s] = counter;
        counter += 1;
        stack.push(s);
        on_stack[s] = true;
        while let Some(&mut (u, ref mut i)) = call.last_mut() {
            if *i < adj[u].len() {
                let w = adj[u][*i];
                *i += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if w == u {
                            break;
                        }
                    }
                    comp_count += 1;
                }
            }
        }
    }
    comp
}

/// Generalized arc consistency for `alldifferent(vars)`.
///
/// Entailment is the weak test: all domains pairwise disjoint (which covers
/// the all-assigned case).
pub fn filter_alldiff(doms: &mut [Domain], vars: &[VarRef]) -> PropagationResult {
    if vars.iter().any(|x| doms[x.0].is_empty()) {
        return PropagationResult::Failed;
    }
    let g = ValueGraph::build(doms, vars);
    let n = vars.len();
    let m = g.values.len();
    if m < n {
        return PropagationResult::Failed;
    }
    let (mate_var, mate_val) = max_matching(&g);
    if mate_var.contains(&NONE) {
        return PropagationResult::Failed;
    }

    // residual digraph: variables 0..n, values n..n+m
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for x in 0..n {
        for &v in &g.adj[x] {
            if mate_var[x] == v {
                adj[x].push(n + v);
            } else {
                adj[n + v].push(x);
            }
        }
    }
    let comp = strongly_connected(&adj);

    // nodes reachable from unmatched values
    let mut reach = vec![false; n + m];
    let mut queue: Vec<usize> = (0..m)
        .filter(|&v| mate_val[v] == NONE)
        .map(|v| n + v)
        .collect();
    for &q in &queue {
        reach[q] = true;
    }
    while let Some(u) = queue.pop() {
        for &w in &adj[u] {
            if !reach[w] {
                reach[w] = true;
                queue.push(w);
            }
        }
    }

    for (x, var) in vars.iter().enumerate() {
        let keep: Vec<bool> = g.adj[x]
            .iter()
            .map(|&v| mate_var[x] == v || comp[x] == comp[n + v] || reach[n + v])
            .collect();
        if keep.iter().all(|&k| k) {
            continue;
        }
        let kept = g.adj[x]
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(&v, _)| g.values[v]);
        doms[var.0] = Domain::new(kept);
    }

    let total: usize = vars.iter().map(|x| doms[x.0].size()).sum();
    let mut distinct: Vec<i64> = vars.iter().flat_map(|x| doms[x.0].iter()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() == total {
        PropagationResult::Entailed
    } else {
        PropagationResult::Stable
    }
}

/// Connected components of the variable-value graph restricted to the
/// unassigned variables, grouped by variable (in scope order).
pub fn alldiff_components(doms: &[Domain], vars: &[VarRef]) -> Vec<Vec<VarRef>> {
    let free: Vec<VarRef> = vars
        .iter()
        .copied()
        .filter(|x| !doms[x.0].is_assigned())
        .collect();
    let g = ValueGraph::build(doms, &free);
    let n = free.len();
    let mut uf = UnionFind::new(n + g.values.len());
    for (x, vals) in g.adj.iter().enumerate() {
        for &v in vals {
            uf.union(x, n + v);
        }
    }
    group_by_root(&mut uf, free.iter().enumerate().map(|(i, &x)| (i, x)))
}

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::count::Count;
use crate::domain::{Domain, VarRef};
use crate::engine::ProblemState;
use crate::propagators::ConstraintSpec;

use super::oracle::OracleError;
use super::ugraph::{maximal_cliques, UGraph};
use super::CspModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringSpec {
    pub graph: UGraph,
    pub colors: usize,
}

impl ColoringSpec {
    pub fn new(graph: UGraph, colors: usize) -> Self {
        assert!(colors >= 1, "at least one color is required");
        ColoringSpec { graph, colors }
    }
}

/// One variable per node over `0..k`; an AllDifferent per maximal clique of
/// more than two nodes and a Neq for every edge covered by none of them.
pub fn coloring_csp(spec: &ColoringSpec) -> CspModel {
    let g = &spec.graph;
    let mut m = CspModel::new(vec![
        Domain::range(0, spec.colors as i64 - 1);
        g.node_count()
    ]);
    let big: Vec<Vec<usize>> = maximal_cliques(g)
        .into_iter()
        .filter(|c| c.len() > 2)
        .collect();
    for c in &big {
        m.post(ConstraintSpec::AllDifferent(
            c.iter().map(|&i| VarRef(i)).collect(),
        ));
    }
    for (a, b) in g.edges() {
        if !big.iter().any(|c| c.contains(&a) && c.contains(&b)) {
            m.post(ConstraintSpec::Neq(VarRef(a), VarRef(b)));
        }
    }
    m
}

pub fn coloring_model(spec: &ColoringSpec) -> ProblemState {
    coloring_csp(spec)
        .build()
        .expect("coloring constraints are well-formed")
}

/// Number of proper `k`-colorings by deletion–contraction on the chromatic
/// polynomial. Graphs are limited to 12 nodes.
pub fn chromatic_oracle(g: &UGraph, k: usize) -> Result<Count, OracleError> {
    let n = g.node_count();
    if n > 12 {
        return Err(OracleError::GraphTooLarge(n));
    }
    let mut adj = vec![0u16; n];
    for (a, b) in g.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let alive = ((1u32 << n) - 1) as u16;
    let mut memo = HashMap::new();
    Ok(deletion_contraction(&adj, alive, k, &mut memo))
}

fn deletion_contraction(
    adj: &[u16],
    alive: u16,
    k: usize,
    memo: &mut HashMap<Vec<u16>, BigUint>,
) -> BigUint {
    let nodes = alive.count_ones() as usize;
    let edge = (0..adj.len()).find_map(|u| {
        let nb = adj[u] & alive;
        (alive >> u & 1 == 1 && nb != 0).then(|| (u, nb.trailing_zeros() as usize))
    });
    let Some((u, v)) = edge else {
        return BigUint::from(k).pow(nodes as u32);
    };
    let key: Vec<u16> = std::iter::once(alive)
        .chain(adj.iter().map(|a| a & alive))
        .collect();
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    let mut deleted = adj.to_vec();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    let with_deletion = deletion_contraction(&deleted, alive, k, memo);

    // merge v into u
    let mut contracted = deleted;
    let nv = contracted[v];
    contracted[u] |= nv;
    for (w, row) in contracted.iter_mut().enumerate() {
        if nv >> w & 1 == 1 {
            *row = (*row & !(1 << v)) | 1 << u;
        }
    }
    contracted[u] &= !(1 << u | 1 << v);
    contracted[v] = 0;
    let with_contraction = deletion_contraction(&contracted, alive & !(1 << v), k, memo);

    let result = with_deletion - with_contraction;
    memo.insert(key, result.clone());
    result
}

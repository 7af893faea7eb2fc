use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Simple undirected graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl UGraph {
    pub fn new(n: usize) -> Self {
        UGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from an edge list; self-loops and out-of-range
    /// endpoints panic.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = UGraph::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        UGraph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self-loop on node {a}");
        assert!(
            a < self.n && b < self.n,
            "edge ({a},{b}) out of range for {} nodes",
            self.n
        );
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }
}

/// G(n, p): every pair is an edge independently with probability `p`, drawn
/// from a ChaCha8 stream seeded with `seed` in lexicographic pair order.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> UGraph {
    assert!(
        (0.0..=1.0).contains(&p),
        "edge probability {p} outside [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = UGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// All maximal cliques (Bron–Kerbosch with pivoting), each ascending,
/// sorted lexicographically. Isolated nodes are singleton cliques.
pub fn maximal_cliques(g: &UGraph) -> Vec<Vec<usize>> {
    let adj = g.neighbors();
    let mut out = Vec::new();
    let p: BTreeSet<usize> = (0..g.node_count()).collect();
    bron_kerbosch(&adj, &mut Vec::new(), p, BTreeSet::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: &mut Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = *p
        .union(&x)
        .max_by_key(|&&u| p.intersection(&adj[u]).count())
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        r.push(v);
        bron_kerbosch(
            adj,
            r,
            p.intersection(&adj[v]).copied().collect(),
            x.intersection(&adj[v]).copied().collect(),
            out,
        );
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_clique(g: &UGraph, c: &[usize]) -> bool {
        c.iter()
            .enumerate()
            .all(|(i, &a)| c[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    }

    /// Exhaustive subset enumeration.
    fn cliques_oracle(g: &UGraph) -> Vec<Vec<usize>> {
        let n = g.node_count();
        let all: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|c| is_clique(g, c))
            .collect();
        let mut maximal: Vec<Vec<usize>> = all
            .iter()
            .filter(|c| {
                !all.iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x)))
            })
            .cloned()
            .collect();
        maximal.sort();
        maximal
    }

    #[test]
    fn er_extremes_and_determinism() {
        assert_eq!(erdos_renyi(7, 0.0, 1).edge_count(), 0);
        assert_eq!(erdos_renyi(7, 1.0, 1).edge_count(), 21);
        assert_eq!(erdos_renyi(12, 0.3, 42), erdos_renyi(12, 0.3, 42));
        assert_ne!(erdos_renyi(12, 0.5, 1), erdos_renyi(12, 0.5, 2));
    }

    #[test]
    fn small_cliques() {
        assert_eq!(maximal_cliques(&UGraph::complete(3)), vec![vec![0, 1, 2]]);
        let path = UGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(maximal_cliques(&path), vec![vec![0, 1], vec![1, 2]]);
        let mut k4 = UGraph::complete(4);
        k4.edges.remove(&(0, 3));
        assert_eq!(maximal_cliques(&k4), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(maximal_cliques(&UGraph::new(2)), vec![vec![0], vec![1]]);
    }

    #[test]
    fn cliques_match_subset_oracle() {
        for seed in 0..40 {
            let g = erdos_renyi(9, 0.2 + (seed % 5) as f64 * 0.15, seed);
            assert_eq!(maximal_cliques(&g), cliques_oracle(&g), "seed {seed}");
        }
    }

    #[test]
    #[should_panic]
    fn self_loop_rejected() {
        UGraph::from_edges(2, [(1, 1)]);
    }
}

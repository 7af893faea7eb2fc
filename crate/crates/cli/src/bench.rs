//! DFS versus DDS on random graph coloring instances.

use std::fmt::Write;

use dds_core::models::{coloring_model, erdos_renyi, ColoringSpec};
use dds_core::{dds_count, dfs_count, Count, Heuristic};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub nodes: usize,
    pub edge_probs: Vec<f64>,
    pub colors: usize,
    pub instances: u64,
    pub seed: u64,
    pub heuristic: Heuristic,
    pub limit: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub edge_prob: f64,
    pub seed: u64,
    pub edges: usize,
    pub count: String,
    pub exact: bool,
    pub dfs_nodes: u64,
    pub dds_nodes: u64,
    pub dfs_ms: f64,
    pub dds_ms: f64,
    /// DFS / DDS search tree size
    pub tree_ratio: f64,
    /// DFS / DDS runtime
    pub time_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchSummary {
    pub edge_prob: f64,
    pub instances: usize,
    pub mean_time_ratio: f64,
    pub mean_tree_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub nodes: usize,
    pub colors: usize,
    pub heuristic: String,
    pub limit: Option<u64>,
    pub rows: Vec<BenchRow>,
    pub summary: Vec<BenchSummary>,
}

/// Instance `i` at edge probability `p` uses seed `seed + i`.
pub fn run_bench(cfg: &BenchConfig) -> BenchReport {
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &p in &cfg.edge_probs {
        let first = rows.len();
        for i in 0..cfg.instances {
            let seed = cfg.seed + i;
            let g = erdos_renyi(cfg.nodes, p, seed);
            let edges = g.edge_count();
            let s = coloring_model(&ColoringSpec::new(g, cfg.colors));
            let a = dfs_count::<Count>(&s, cfg.heuristic, cfg.limit);
            let b = dds_count::<Count>(&s, cfg.heuristic, cfg.limit);
            let (ta, tb) = (
                a.stats.wall_time.as_secs_f64() * 1e3,
                b.stats.wall_time.as_secs_f64() * 1e3,
            );
            rows.push(BenchRow {
                edge_prob: p,
                seed,
                edges,
                count: b.count.to_string(),
                exact: a.exact && b.exact,
                dfs_nodes: a.stats.nodes,
                dds_nodes: b.stats.nodes,
                dfs_ms: ta,
                dds_ms: tb,
                tree_ratio: a.stats.nodes as f64 / b.stats.nodes as f64,
                time_ratio: if tb > 0.0 { ta / tb } else { 1.0 },
            });
        }
        let group = &rows[first..];
        let mean =
            |f: fn(&BenchRow) -> f64| group.iter().map(f).sum::<f64>() / group.len().max(1) as f64;
        summary.push(BenchSummary {
            edge_prob: p,
            instances: group.len(),
            mean_time_ratio: mean(|r| r.time_ratio),
            mean_tree_ratio: mean(|r| r.tree_ratio),
        });
    }
    BenchReport {
        nodes: cfg.nodes,
        colors: cfg.colors,
        heuristic: cfg.heuristic.to_string(),
        limit: cfg.limit,
        rows,
        summary,
    }
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:>6} {:>6} {:>6} {:>10} {:>10} {:>10} {:>10} {:>8}",
            "P^e", "seed", "edges", "count", "DFS nodes", "DDS nodes", "ST size", "rel. RT"
        )
        .unwrap();
        for r in &self.rows {
            let count = if r.exact {
                r.count.clone()
            } else {
                format!(">={}", r.count)
            };
            writeln!(
                out,
                "{:>6.2} {:>6} {:>6} {:>10} {:>10} {:>10} {:>10.2} {:>8.2}",
                r.edge_prob,
                r.seed,
                r.edges,
                count,
                r.dfs_nodes,
                r.dds_nodes,
                r.tree_ratio,
                r.time_ratio
            )
            .unwrap();
        }
        writeln!(out).unwrap();
        writeln!(
            out,
            "n = {}, k = {}, heuristic {}, cut-off {}",
            self.nodes,
            self.colors,
            self.heuristic,
            self.limit.map_or("none".to_string(), |l| l.to_string())
        )
        .unwrap();
        writeln!(
            out,
            "{:>6} {:>10} {:>10} {:>10}",
            "P^e", "instances", "rel. RT", "ST size"
        )
        .unwrap();
        for s in &self.summary {
            writeln!(
                out,
                "{:>6.2} {:>10} {:>10.2} {:>10.2}",
                s.edge_prob, s.instances, s.mean_time_ratio, s.mean_tree_ratio
            )
            .unwrap();
        }
        out
    }
}

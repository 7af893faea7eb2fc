use std::fmt::Write;

use dds_core::{Count, Heuristic, SearchStats, Strategy};
use serde::{Deserialize, Serialize};

/// Outcome of one counting or enumeration run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// decimal, arbitrary precision
    pub count: String,
    pub exact: bool,
    pub engine: String,
    pub heuristic: String,
    pub nodes: u64,
    pub choice_nodes: u64,
    pub decomposition_nodes: u64,
    pub fails: u64,
    pub solutions_found: u64,
    pub propagations: u64,
    pub max_depth: u64,
    pub wall_time_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    /// enumerated solutions, values in the order of `variables`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<i64>>>,
}

impl RunReport {
    pub fn new(
        count: &Count,
        exact: bool,
        engine: Strategy,
        heuristic: Heuristic,
        stats: &SearchStats,
    ) -> Self {
        RunReport {
            count: count.to_string(),
            exact,
            engine: engine.to_string(),
            heuristic: heuristic.to_string(),
            nodes: stats.nodes,
            choice_nodes: stats.choice_nodes,
            decomposition_nodes: stats.decomposition_nodes,
            fails: stats.fails,
            solutions_found: stats.solutions_found,
            propagations: stats.propagations,
            max_depth: stats.max_depth,
            wall_time_ms: stats.wall_time.as_secs_f64() * 1e3,
            variables: None,
            solutions: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let (Some(names), Some(sols)) = (&self.variables, &self.solutions) {
            for s in sols {
                let parts: Vec<String> = names
                    .iter()
                    .zip(s)
                    .map(|(n, v)| format!("{n}={v}"))
                    .collect();
                writeln!(out, "{}", parts.join(" ")).unwrap();
            }
            out.push('\n');
        }
        let bound = if self.exact { "" } else { ">= " };
        let rows: [(&str, String); 11] = [
            ("count", format!("{bound}{}", self.count)),
            ("exact", self.exact.to_string()),
            ("engine", self.engine.clone()),
            ("heuristic", self.heuristic.clone()),
            ("nodes", self.nodes.to_string()),
            ("choices", self.choice_nodes.to_string()),
            ("decompositions", self.decomposition_nodes.to_string()),
            ("fails", self.fails.to_string()),
            ("solution leaves", self.solutions_found.to_string()),
            ("propagations", self.propagations.to_string()),
            ("max depth", self.max_depth.to_string()),
        ];
        for (k, v) in rows {
            writeln!(out, "{k:<16}{v}").unwrap();
        }
        writeln!(out, "{:<16}{:.3} ms", "time", self.wall_time_ms).unwrap();
        out
    }
}

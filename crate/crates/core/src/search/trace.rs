use std::fmt::Write;

use crate::domain::VarRef;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceKind {
    Choice {
        var: VarRef,
        value: i64,
    },
    Decomposition {
        parts: usize,
    },
    Failure,
    /// multiplicity is the number of (partial) solutions the leaf stands for
    Solution {
        multiplicity: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// branch label on the edge from the parent
    pub label: String,
    pub kind: TraceKind,
}

/// Search tree recorded in visiting order. `truncated` is set when nodes
/// were dropped because the cap was reached.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchTrace {
    pub nodes: Vec<TraceNode>,
    pub truncated: bool,
}

impl SearchTrace {
    pub fn count(&self, pred: impl Fn(&TraceKind) -> bool) -> usize {
        self.nodes.iter().filter(|n| pred(&n.kind)).count()
    }
}

pub(super) struct TraceRecorder {
    cap: usize,
    trace: SearchTrace,
}

impl TraceRecorder {
    pub(super) fn new(cap: usize) -> Self {
        TraceRecorder {
            cap,
            trace: SearchTrace::default(),
        }
    }

    pub(super) fn add(
        &mut self,
        parent: Option<usize>,
        label: String,
        kind: TraceKind,
    ) -> Option<usize> {
        if self.trace.nodes.len() >= self.cap {
            self.trace.truncated = true;
            return None;
        }
        let id = self.trace.nodes.len();
        self.trace.nodes.push(TraceNode {
            id,
            parent,
            label,
            kind,
        });
        Some(id)
    }

    pub(super) fn finish(self) -> SearchTrace {
        self.trace
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders a trace as a DOT digraph: choices are circles, decompositions
/// circles with an inner square, failures filled boxes, solutions diamonds.
pub fn trace_dot(trace: &SearchTrace) -> String {
    render(trace, &|x| x.to_string())
}

/// Like [`trace_dot`], labelling variable `i` as `names[i]`.
pub fn trace_dot_named(trace: &SearchTrace, names: &[String]) -> String {
    render(trace, &|x| {
        names.get(x.0).cloned().unwrap_or_else(|| x.to_string())
    })
}

fn render(trace: &SearchTrace, name: &dyn Fn(VarRef) -> String) -> String {
    let mut out = String::from("digraph search {\n  node [fontname=\"Helvetica\", fontsize=10];\n");
    for n in &trace.nodes {
        let attrs = match &n.kind {
            TraceKind::Choice { var, value } => {
                let v = escape(&name(*var));
                format!("shape=circle, label=\"{v}\", tooltip=\"{v} = {value}\"")
            }
            TraceKind::Decomposition { parts } => format!(
                "shape=circle, class=\"decomposition\", margin=0, \
                 label=<<table border=\"1\" cellborder=\"0\" cellspacing=\"0\"><tr><td>{parts}</td></tr></table>>"
            ),
            TraceKind::Failure => "shape=box, style=filled, fillcolor=\"#c0392b\", label=\"\"".to_string(),
            TraceKind::Solution { multiplicity } => {
                let label = if multiplicity == "1" { String::new() } else { escape(multiplicity) };
                format!("shape=diamond, style=filled, fillcolor=\"#27ae60\", label=\"{label}\"")
            }
        };
        writeln!(out, "  n{} [{attrs}];", n.id).unwrap();
    }
    for n in &trace.nodes {
        if let Some(p) = n.parent {
            let label = match (&trace.nodes[p].kind, n.label.split_once(' ')) {
                (TraceKind::Choice { var, .. }, Some((_, rest))) => {
                    format!("{} {rest}", name(*var))
                }
                _ => n.label.clone(),
            };
            writeln!(out, "  n{p} -> n{} [label=\"{}\"];", n.id, escape(&label)).unwrap();
        }
    }
    if trace.truncated {
        out.push_str("  truncated [shape=plaintext, label=\"trace truncated\"];\n");
    }
    out.push_str("}\n");
    out
}

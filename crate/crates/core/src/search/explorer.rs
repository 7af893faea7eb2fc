use std::time::Instant;

use crate::count::CountValue;
use crate::domain::VarRef;
use crate::engine::{Assignment, ProblemState, StateStatus, Tell};
use crate::graph::{analyze, build_constraint_graph_in, Decomposition};

use super::trace::{TraceKind, TraceRecorder};
use super::tree::SolutionTree;
use super::{
    choose_with_degrees, order_components_with, SearchConfig, SearchOutcome, SearchStats, Strategy,
};

/// Where a node hangs in the trace.
#[derive(Clone)]
enum Link {
    Root,
    Child(usize, String),
    Untraced,
}

struct Explored<C> {
    count: C,
    tree: Option<SolutionTree>,
}

pub(super) type Observer<'o> = &'o mut dyn FnMut(&ProblemState, &Decomposition);

struct Explorer<'a, 'o, C> {
    cfg: &'a SearchConfig,
    observer: Option<Observer<'o>>,
    limit: Option<C>,
    stats: SearchStats,
    /// full solutions certified so far
    credited: C,
    aborted: bool,
    trace: Option<TraceRecorder>,
}

pub(super) fn run<C: CountValue>(
    root: &ProblemState,
    cfg: &SearchConfig,
    observer: Option<Observer<'_>>,
) -> SearchOutcome<C> {
    let start = Instant::now();
    let mut state = root.clone();
    let counters = state.reset_counters();
    let mut ex = Explorer {
        cfg,
        observer,
        limit: cfg.limit.map(C::from_u64_lossy),
        stats: SearchStats::default(),
        credited: C::zero(),
        aborted: false,
        trace: cfg.trace_cap.map(TraceRecorder::new),
    };
    let out = ex.explore(state, None, Some(C::one()), 0, Link::Root);
    let mut stats = ex.stats;
    stats.propagations = counters.propagations();
    stats.wall_time = start.elapsed();
    let exact = !ex.aborted;
    SearchOutcome {
        count: if exact { out.count } else { ex.credited },
        exact,
        stats,
        tree: out.tree,
        trace: ex.trace.map(TraceRecorder::finish),
    }
}

impl<C: CountValue> Explorer<'_, '_, C> {
    fn zero(&self) -> Explored<C> {
        Explored {
            count: C::zero(),
            tree: self.cfg.build_tree.then(SolutionTree::empty),
        }
    }

    fn record(&mut self, link: &Link, kind: TraceKind) -> Link {
        let Some(t) = self.trace.as_mut() else {
            return Link::Untraced;
        };
        let id = match link {
            Link::Root => t.add(None, String::new(), kind),
            Link::Child(p, label) => t.add(Some(*p), label.clone(), kind),
            Link::Untraced => None,
        };
        id.map_or(Link::Untraced, |id| Link::Child(id, String::new()))
    }

    fn child_link(parent: &Link, label: String) -> Link {
        match parent {
            Link::Child(id, _) => Link::Child(*id, label),
            _ => Link::Untraced,
        }
    }

    /// Adds `ctx * m` full solutions to the certified total.
    fn credit(&mut self, ctx: Option<&C>, m: &C) {
        if let Some(p) = ctx {
            self.credited = self.credited.clone() + p.clone() * m.clone();
            if let Some(limit) = &self.limit {
                if self.credited > *limit {
                    self.aborted = true;
                }
            }
        }
    }

    /// Counts the solutions of `state` projected on `scope` (all variables
    /// when `None`). `ctx` is the number of full solutions each of these
    /// stands for, known only while no enclosing decomposition has an
    /// unexplored component.
    fn explore(
        &mut self,
        mut state: ProblemState,
        scope: Option<&[VarRef]>,
        ctx: Option<C>,
        depth: u64,
        link: Link,
    ) -> Explored<C> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let status = state.propagate();
        if status == StateStatus::Failed {
            self.stats.nodes += 1;
            self.stats.fails += 1;
            self.record(&link, TraceKind::Failure);
            return self.zero();
        }
        let solved = match scope {
            None => status == StateStatus::Solved,
            Some(s) => s.iter().all(|&x| state.is_assigned(x)),
        };
        if solved {
            return self.solution_leaf(&state, scope, &[], ctx.as_ref(), &link);
        }
        if self.cfg.strategy == Strategy::Dfs {
            let degrees = self
                .cfg
                .heuristic
                .uses_degree()
                .then(|| build_constraint_graph_in(&state, scope).degrees(state.var_count()));
            return self.branch(state, scope, degrees.as_deref(), ctx, depth, link);
        }

        let (graph, d) = analyze(&state, scope);
        let factor = d.free.iter().fold(C::one(), |acc, &x| {
            acc * C::from_usize_lossy(state.domain(x).size())
        });
        if d.components.is_empty() {
            return self.solution_leaf(&state, scope, &d.free, ctx.as_ref(), &link);
        }
        let degrees = self
            .cfg
            .heuristic
            .uses_degree()
            .then(|| graph.degrees(state.var_count()));
        let fixed = || state.assigned_values(&d.assigned);

        if d.components.len() == 1 {
            let comp = &d.components[0];
            let fixed = fixed();
            let free_trees = self.free_trees(&state, &d.free);
            let inner_ctx = ctx.map(|p| p * factor.clone());
            let inner = self.branch(
                state,
                Some(comp),
                degrees.as_deref(),
                inner_ctx,
                depth,
                link,
            );
            let tree = inner.tree.map(|t| {
                if free_trees.is_empty() && fixed.is_empty() {
                    t
                } else {
                    let mut children = vec![t];
                    children.extend(free_trees);
                    SolutionTree::And { children, fixed }
                }
            });
            return Explored {
                count: inner.count * factor,
                tree,
            };
        }

        if let Some(obs) = self.observer.as_mut() {
            obs(&state, &d);
        }
        self.stats.nodes += 1;
        self.stats.decomposition_nodes += 1;
        let ordered = order_components_with(
            d.components.clone(),
            &state,
            self.cfg.heuristic,
            degrees.as_deref(),
        );
        let here = self.record(
            &link,
            TraceKind::Decomposition {
                parts: ordered.len(),
            },
        );
        let fixed = fixed();
        let free_trees = self.free_trees(&state, &d.free);
        let last = ordered.len() - 1;
        let mut product = C::one();
        let mut trees = Vec::new();
        for (i, comp) in ordered.iter().enumerate() {
            let child_ctx = if i == last {
                ctx.as_ref()
                    .map(|p| p.clone() * factor.clone() * product.clone())
            } else {
                None
            };
            let child_link = Self::child_link(&here, format!("part {}", i + 1));
            let child = self.explore(state.clone(), Some(comp), child_ctx, depth + 1, child_link);
            if child.count.is_zero() {
                return self.zero();
            }
            product = product * child.count;
            trees.extend(child.tree);
            if self.aborted {
                break;
            }
        }
        let tree = self.cfg.build_tree.then(|| {
            trees.extend(free_trees);
            SolutionTree::And {
                children: trees,
                fixed,
            }
        });
        Explored {
            count: product * factor,
            tree,
        }
    }

    /// A choice node over the unassigned variables of `scope`.
    fn branch(
        &mut self,
        state: ProblemState,
        scope: Option<&[VarRef]>,
        degrees: Option<&[usize]>,
        ctx: Option<C>,
        depth: u64,
        link: Link,
    ) -> Explored<C> {
        let all: Vec<VarRef>;
        let candidates = match scope {
            Some(s) => s,
            None => {
                all = state.vars().collect();
                &all
            }
        };
        let dec = choose_with_degrees(&state, self.cfg.heuristic, candidates, degrees)
            .expect("branch called on a state with an unassigned variable in scope");
        self.stats.nodes += 1;
        self.stats.choice_nodes += 1;
        let here = self.record(
            &link,
            TraceKind::Choice {
                var: dec.var,
                value: dec.value,
            },
        );

        let mut left = state.clone();
        left.tell(dec.var, Tell::Eq(dec.value));
        let l_link = Self::child_link(&here, format!("{} = {}", dec.var, dec.value));
        let l = self.explore(left, scope, ctx.clone(), depth + 1, l_link);
        if self.aborted {
            return l;
        }
        let mut right = state;
        right.tell(dec.var, Tell::Neq(dec.value));
        let r_link = Self::child_link(&here, format!("{} != {}", dec.var, dec.value));
        let r = self.explore(right, scope, ctx, depth + 1, r_link);
        let tree = match (l.tree, r.tree) {
            (Some(a), Some(b)) => Some(SolutionTree::Or(vec![a, b])),
            _ => None,
        };
        Explored {
            count: l.count + r.count,
            tree,
        }
    }

    /// A leaf standing for every combination of values of `free`.
    fn solution_leaf(
        &mut self,
        state: &ProblemState,
        scope: Option<&[VarRef]>,
        free: &[VarRef],
        ctx: Option<&C>,
        link: &Link,
    ) -> Explored<C> {
        let m = free.iter().fold(C::one(), |acc, &x| {
            acc * C::from_usize_lossy(state.domain(x).size())
        });
        self.stats.nodes += 1;
        self.stats.solutions_found += 1;
        self.record(
            link,
            TraceKind::Solution {
                multiplicity: m.to_string(),
            },
        );
        self.credit(ctx, &m);
        let tree = self.cfg.build_tree.then(|| {
            let all: Vec<VarRef>;
            let vars = match scope {
                Some(s) => s,
                None => {
                    all = state.vars().collect();
                    &all
                }
            };
            let fixed: Assignment = state.assigned_values(vars);
            if free.is_empty() {
                SolutionTree::Leaf(fixed)
            } else {
                SolutionTree::And {
                    children: self.free_trees(state, free),
                    fixed,
                }
            }
        });
        Explored { count: m, tree }
    }

    fn free_trees(&self, state: &ProblemState, free: &[VarRef]) -> Vec<SolutionTree> {
        if !self.cfg.build_tree {
            return Vec::new();
        }
        free.iter()
            .map(|&x| {
                SolutionTree::Or(
                    state
                        .domain(x)
                        .iter()
                        .map(|v| SolutionTree::Leaf([(x, v)].into_iter().collect()))
                        .collect(),
                )
            })
            .collect()
    }
}

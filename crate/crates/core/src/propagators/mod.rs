//! Constraint classes, their filtering algorithms, weak entailment detection
//! and internal constraint decomposition.
//!
//! Every propagator can report the scopes of the independent fragments its
//! constraint currently decomposes into ([`Propagator::hyperedges`]). The
//! constraint graph is assembled from these fragments rather than from the
//! raw constraint scopes, which is what lets a single global constraint stop
//! blocking component decomposition once propagation has split it.

mod alldiff;
mod linear;
mod neq;
mod regular;
mod slide;
mod table;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::domain::{Domain, VarRef};

pub use alldiff::{alldiff_components, filter_alldiff};
pub use linear::filter_linear;
pub use neq::filter_neq;
pub use regular::{filter_regular, regular_split_layers};
pub use slide::{filter_slide, filter_slide_tracked};
pub use table::filter_table;

/// Outcome of one propagator run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationResult {
    /// No solution extends the current domains through this constraint.
    Failed,
    /// The constraint holds for every remaining value combination.
    Entailed,
    /// At fixpoint for this constraint, not (known to be) entailed.
    Stable,
}

/// Scopes of the decomposed fragments of one constraint, restricted to
/// unassigned variables. Edges are pairwise disjoint and together cover the
/// unassigned part of the constraint's scope.
pub type HyperedgeSet = Vec<Vec<VarRef>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinearRel {
    Eq,
    Leq,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PostError {
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("variable {0} occurs more than once in the constraint scope")]
    RepeatedVariable(usize),
    #[error("constraint has an empty scope")]
    EmptyScope,
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("linear constraint has a zero coefficient")]
    ZeroCoefficient,
    #[error("malformed automaton: {0}")]
    MalformedAutomaton(String),
    #[error("cannot post to a failed state")]
    FailedState,
}

/// A deterministic finite automaton over integer symbols with a partial
/// transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    state_count: usize,
    start: usize,
    finals: Vec<bool>,
    transitions: BTreeMap<(usize, i64), usize>,
}

impl Dfa {
    pub fn new<F, T>(
        state_count: usize,
        start: usize,
        finals: F,
        transitions: T,
    ) -> Result<Dfa, PostError>
    where
        F: IntoIterator<Item = usize>,
        T: IntoIterator<Item = (usize, i64, usize)>,
    {
        if start >= state_count {
            return Err(PostError::MalformedAutomaton(format!(
                "start state {start} out of range (state count {state_count})"
            )));
        }
        let mut is_final = vec![false; state_count];
        for f in finals {
            if f >= state_count {
                return Err(PostError::MalformedAutomaton(format!(
                    "final state {f} out of range"
                )));
            }
            is_final[f] = true;
        }
        let mut map = BTreeMap::new();
        for (from, symbol, to) in transitions {
            if from >= state_count || to >= state_count {
                return Err(PostError::MalformedAutomaton(format!(
                    "transition ({from}, {symbol}) -> {to} references a missing state"
                )));
            }
            if let Some(prev) = map.insert((from, symbol), to) {
                if prev != to {
                    return Err(PostError::MalformedAutomaton(format!(
                        "nondeterministic transition on ({from}, {symbol})"
                    )));
                }
            }
        }
        Ok(Dfa {
            state_count,
            start,
            finals: is_final,
            transitions: map,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(s, _)| s)
    }

    #[inline]
    pub fn next(&self, state: usize, symbol: i64) -> Option<usize> {
        self.transitions.get(&(state, symbol)).copied()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.transitions
            .iter()
            .map(|(&(from, sym), &to)| (from, sym, to))
    }

    pub fn accepts(&self, word: &[i64]) -> bool {
        let mut state = self.start;
        for &symbol in word {
            match self.next(state, symbol) {
                Some(s) => state = s,
                None => return false,
            }
        }
        self.finals[state]
    }
}

/// Declarative description of a constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintSpec {
    Neq(VarRef, VarRef),
    Linear {
        coeffs: Vec<i64>,
        vars: Vec<VarRef>,
        rel: LinearRel,
        rhs: i64,
    },
    AllDifferent(Vec<VarRef>),
    Table {
        vars: Vec<VarRef>,
        tuples: Vec<Vec<i64>>,
    },
    Regular {
        vars: Vec<VarRef>,
        dfa: Dfa,
    },
    /// `window_tuples` constrains every run of `width` consecutive variables.
    Slide {
        vars: Vec<VarRef>,
        width: usize,
        window_tuples: Vec<Vec<i64>>,
    },
}

impl ConstraintSpec {
    pub fn scope(&self) -> Vec<VarRef> {
        match self {
            ConstraintSpec::Neq(x, y) => vec![*x, *y],
            ConstraintSpec::Linear { vars, .. }
            | ConstraintSpec::AllDifferent(vars)
            | ConstraintSpec::Table { vars, .. }
            | ConstraintSpec::Regular { vars, .. }
            | ConstraintSpec::Slide { vars, .. } => vars.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConstraintSpec::Neq(..) => "neq",
            ConstraintSpec::Linear { .. } => "linear",
            ConstraintSpec::AllDifferent(_) => "alldifferent",
            ConstraintSpec::Table { .. } => "table",
            ConstraintSpec::Regular { .. } => "regular",
            ConstraintSpec::Slide { .. } => "slide",
        }
    }

    /// Checks well-formedness against a problem with `var_count` variables.
    pub fn validate(&self, var_count: usize) -> Result<(), PostError> {
        let scope = self.scope();
        if scope.is_empty() {
            return Err(PostError::EmptyScope);
        }
        let mut seen = vec![false; var_count];
        for v in &scope {
            if v.0 >= var_count {
                return Err(PostError::UnknownVariable(v.0));
            }
            if seen[v.0] {
                return Err(PostError::RepeatedVariable(v.0));
            }
            seen[v.0] = true;
        }
        match self {
            ConstraintSpec::Linear { coeffs, vars, .. } => {
                if coeffs.len() != vars.len() {
                    return Err(PostError::Arity(format!(
                        "{} coefficients for {} variables",
                        coeffs.len(),
                        vars.len()
                    )));
                }
                if coeffs.contains(&0) {
                    return Err(PostError::ZeroCoefficient);
                }
            }
            ConstraintSpec::Table { vars, tuples } => check_tuple_arity(tuples, vars.len())?,
            ConstraintSpec::Slide {
                vars,
                width,
                window_tuples,
            } => {
                if *width == 0 || *width > vars.len() {
                    return Err(PostError::Arity(format!(
                        "slide window of width {width} over {} variables",
                        vars.len()
                    )));
                }
                check_tuple_arity(window_tuples, *width)?;
            }
            ConstraintSpec::Neq(..)
            | ConstraintSpec::AllDifferent(_)
            | ConstraintSpec::Regular { .. } => {}
        }
        Ok(())
    }

    /// Direct tuple semantics: whether the constraint holds under `value`.
    /// Used by the brute-force oracles; involves no propagation.
    pub fn is_satisfied_by<F: Fn(VarRef) -> i64>(&self, value: F) -> bool {
        match self {
            ConstraintSpec::Neq(x, y) => value(*x) != value(*y),
            ConstraintSpec::Linear {
                coeffs,
                vars,
                rel,
                rhs,
            } => {
                let sum: i128 = coeffs
                    .iter()
                    .zip(vars)
                    .map(|(&a, &x)| a as i128 * value(x) as i128)
                    .sum();
                match rel {
                    LinearRel::Eq => sum == *rhs as i128,
                    LinearRel::Leq => sum <= *rhs as i128,
                }
            }
            ConstraintSpec::AllDifferent(vars) => {
                let mut vals: Vec<i64> = vars.iter().map(|&x| value(x)).collect();
                vals.sort_unstable();
                vals.windows(2).all(|w| w[0] != w[1])
            }
            ConstraintSpec::Table { vars, tuples } => {
                let row: Vec<i64> = vars.iter().map(|&x| value(x)).collect();
                tuples.contains(&row)
            }
            ConstraintSpec::Regular { vars, dfa } => {
                let word: Vec<i64> = vars.iter().map(|&x| value(x)).collect();
                dfa.accepts(&word)
            }
            ConstraintSpec::Slide {
                vars,
                width,
                window_tuples,
            } => {
                let word: Vec<i64> = vars.iter().map(|&x| value(x)).collect();
                word.windows(*width)
                    .all(|w| window_tuples.iter().any(|t| t.as_slice() == w))
            }
        }
    }

    /// Canonical form used by the solver: sorted, deduplicated tuple sets.
    pub(crate) fn normalized(mut self) -> ConstraintSpec {
        match &mut self {
            ConstraintSpec::Table { tuples, .. }
            | ConstraintSpec::Slide {
                window_tuples: tuples,
                ..
            } => {
                tuples.sort_unstable();
                tuples.dedup();
            }
            _ => {}
        }
        self
    }
}

fn check_tuple_arity(tuples: &[Vec<i64>], arity: usize) -> Result<(), PostError> {
    match tuples.iter().find(|t| t.len() != arity) {
        Some(t) => Err(PostError::Arity(format!(
            "tuple of length {} where {arity} expected",
            t.len()
        ))),
        None => Ok(()),
    }
}

/// A posted constraint together with its per-state filtering data.
#[derive(Debug, Clone)]
pub struct Propagator {
    spec: Arc<ConstraintSpec>,
    scope: Arc<[VarRef]>,
    /// Slide only: windows already known to be entailed.
    windows_entailed: Vec<bool>,
}

impl Propagator {
    pub(crate) fn new(spec: Arc<ConstraintSpec>) -> Propagator {
        let scope: Arc<[VarRef]> = spec.scope().into();
        let windows_entailed = match spec.as_ref() {
            ConstraintSpec::Slide { vars, width, .. } => vec![false; vars.len() + 1 - width],
            _ => Vec::new(),
        };
        Propagator {
            spec,
            scope,
            windows_entailed,
        }
    }

    /// A standalone propagator, outside any problem state. The spec is
    /// assumed valid (see [`ConstraintSpec::validate`]).
    pub fn from_spec(spec: ConstraintSpec) -> Propagator {
        Propagator::new(Arc::new(spec.normalized()))
    }

    pub fn spec(&self) -> &ConstraintSpec {
        &self.spec
    }

    pub fn scope(&self) -> &[VarRef] {
        &self.scope
    }

    pub(crate) fn scope_arc(&self) -> Arc<[VarRef]> {
        self.scope.clone()
    }

    /// Runs the filtering algorithm of this constraint once (each algorithm
    /// reaches its own fixpoint internally).
    pub fn propagate(&mut self, doms: &mut [Domain]) -> PropagationResult {
        match self.spec.as_ref() {
            ConstraintSpec::Neq(x, y) => filter_neq(doms, *x, *y),
            ConstraintSpec::Linear {
                coeffs,
                vars,
                rel,
                rhs,
            } => filter_linear(doms, coeffs, vars, *rel, *rhs),
            ConstraintSpec::AllDifferent(vars) => filter_alldiff(doms, vars),
            ConstraintSpec::Table { vars, tuples } => filter_table(doms, vars, tuples),
            ConstraintSpec::Regular { vars, dfa } => filter_regular(doms, vars, dfa),
            ConstraintSpec::Slide {
                vars,
                width,
                window_tuples,
            } => filter_slide_tracked(
                doms,
                vars,
                *width,
                window_tuples,
                &mut self.windows_entailed,
            ),
        }
    }

    /// Scopes of the independent fragments of this constraint under the
    /// current domains, restricted to unassigned variables. Meaningful at a
    /// propagation fixpoint.
    pub fn hyperedges(&self, doms: &[Domain]) -> HyperedgeSet {
        let unassigned = |vars: &[VarRef]| -> Vec<VarRef> {
            vars.iter()
                .copied()
                .filter(|x| !doms[x.0].is_assigned())
                .collect()
        };
        let edges = match self.spec.as_ref() {
            // never decomposable: every variable functionally depends on the rest
            ConstraintSpec::Linear { vars, .. } => vec![unassigned(vars)],
            ConstraintSpec::Neq(..) | ConstraintSpec::Table { .. } => vec![unassigned(&self.scope)],
            ConstraintSpec::AllDifferent(vars) => alldiff_components(doms, vars),
            ConstraintSpec::Regular { vars, dfa } => {
                let mut edges = Vec::new();
                let mut start = 0;
                for cut in regular_split_layers(doms, vars, dfa)
                    .into_iter()
                    .chain([vars.len()])
                {
                    edges.push(unassigned(&vars[start..cut]));
                    start = cut;
                }
                edges
            }
            ConstraintSpec::Slide { vars, width, .. } => {
                slide::slide_components(doms, vars, *width, &self.windows_entailed)
            }
        };
        edges.into_iter().filter(|e| !e.is_empty()).collect()
    }
}

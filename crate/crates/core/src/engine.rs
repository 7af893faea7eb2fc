//! Problem state, the propagation fixpoint loop, and copy-based snapshots.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::domain::{Domain, VarRef};
use crate::propagators::{ConstraintSpec, PostError, PropagationResult, Propagator};

/// Index of a posted propagator in its state's store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropagatorHandle(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateStatus {
    Failed,
    Solved,
    Branchable,
}

/// A unary constraint added during search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tell {
    Eq(i64),
    Neq(i64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("state is not solved")]
    NotSolved,
}

/// Run-level propagation counters. Clones of a state share one sink.
#[derive(Debug, Default)]
pub struct PropagationCounters {
    propagations: AtomicU64,
    domain_events: AtomicU64,
}

impl PropagationCounters {
    pub fn propagations(&self) -> u64 {
        self.propagations.load(Ordering::Relaxed)
    }

    pub fn domain_events(&self) -> u64 {
        self.domain_events.load(Ordering::Relaxed)
    }
}

/// Values of (some of) the variables of a problem.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<VarRef, i64>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn insert(&mut self, x: VarRef, v: i64) {
        self.0.insert(x, v);
    }

    pub fn get(&self, x: VarRef) -> Option<i64> {
        self.0.get(&x).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarRef, i64)> + '_ {
        self.0.iter().map(|(&x, &v)| (x, v))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarRef> + '_ {
        self.0.keys().copied()
    }

    /// Adds all entries of `other`.
    pub fn extend_from(&mut self, other: &Assignment) {
        self.0.extend(other.0.iter().map(|(&x, &v)| (x, v)));
    }
}

impl FromIterator<(VarRef, i64)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (VarRef, i64)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}={v}")?;
        }
        write!(f, "}}")
    }
}

/// Variables with finite domains plus the store of active propagators.
///
/// Backtracking is by copying: search clones a state before each branch.
/// Propagators reported entailed are dropped from the store and so never run
/// again in this state or any later clone.
#[derive(Debug, Clone)]
pub struct ProblemState {
    domains: Vec<Domain>,
    store: Vec<Option<Propagator>>,
    active: usize,
    /// variable -> propagators whose scope contains it
    watchers: Arc<Vec<Vec<usize>>>,
    /// every posted constraint, including ones since entailed
    posted: Arc<Vec<Arc<ConstraintSpec>>>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    failed: bool,
    counters: Arc<PropagationCounters>,
}

impl ProblemState {
    /// One variable per input domain, no constraints.
    pub fn new<I: IntoIterator<Item = Domain>>(domains: I) -> ProblemState {
        let domains: Vec<Domain> = domains.into_iter().collect();
        let failed = domains.iter().any(Domain::is_empty);
        ProblemState {
            watchers: Arc::new(vec![Vec::new(); domains.len()]),
            domains,
            store: Vec::new(),
            active: 0,
            posted: Arc::new(Vec::new()),
            queue: VecDeque::new(),
            queued: Vec::new(),
            failed,
            counters: Arc::new(PropagationCounters::default()),
        }
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarRef> {
        (0..self.domains.len()).map(VarRef)
    }

    pub fn domain(&self, x: VarRef) -> &Domain {
        &self.domains[x.0]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn is_assigned(&self, x: VarRef) -> bool {
        self.domains[x.0].is_assigned()
    }

    /// Number of propagators still in the store.
    pub fn store_size(&self) -> usize {
        self.active
    }

    pub fn active_propagators(&self) -> impl Iterator<Item = (PropagatorHandle, &Propagator)> {
        self.store
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.as_ref().map(|p| (PropagatorHandle(i), p)))
    }

    pub fn propagator(&self, h: PropagatorHandle) -> Option<&Propagator> {
        self.store.get(h.0).and_then(Option::as_ref)
    }

    /// All constraints ever posted, entailed ones included.
    pub fn constraints(&self) -> impl Iterator<Item = &ConstraintSpec> {
        self.posted.iter().map(|c| c.as_ref())
    }

    pub fn counters(&self) -> &Arc<PropagationCounters> {
        &self.counters
    }

    /// Attaches a fresh counter sink; clones made afterwards share it.
    pub fn reset_counters(&mut self) -> Arc<PropagationCounters> {
        self.counters = Arc::new(PropagationCounters::default());
        self.counters.clone()
    }

    pub fn is_failed(&self) -> bool {
        self.failed
    }

    pub fn post(&mut self, spec: ConstraintSpec) -> Result<PropagatorHandle, PostError> {
        if self.failed {
            return Err(PostError::FailedState);
        }
        spec.validate(self.domains.len())?;
        let spec = Arc::new(spec.normalized());
        let handle = self.store.len();
        let prop = Propagator::new(spec.clone());
        let watchers = Arc::make_mut(&mut self.watchers);
        for x in prop.scope() {
            watchers[x.0].push(handle);
        }
        Arc::make_mut(&mut self.posted).push(spec);
        self.store.push(Some(prop));
        self.active += 1;
        self.queued.push(false);
        self.enqueue(handle);
        Ok(PropagatorHandle(handle))
    }

    fn enqueue(&mut self, p: usize) {
        if !self.queued[p] && self.store[p].is_some() {
            self.queued[p] = true;
            self.queue.push_back(p);
        }
    }

    fn notify(&mut self, x: VarRef, except: Option<usize>) {
        let watchers = self.watchers.clone();
        for &p in &watchers[x.0] {
            if Some(p) != except {
                self.enqueue(p);
            }
        }
    }

    /// Narrows the domain of `x`. An emptied domain makes the next
    /// [`propagate`](Self::propagate) report `Failed`.
    pub fn tell(&mut self, x: VarRef, op: Tell) {
        let changed = match op {
            Tell::Eq(v) => self.domains[x.0].assign(v),
            Tell::Neq(v) => self.domains[x.0].remove(v),
        };
        if changed {
            self.counters.domain_events.fetch_add(1, Ordering::Relaxed);
            if self.domains[x.0].is_empty() {
                self.failed = true;
            } else {
                self.notify(x, None);
            }
        }
    }

    /// Runs queued propagators to a common fixpoint.
    pub fn propagate(&mut self) -> StateStatus {
        if !self.failed && self.domains.iter().any(Domain::is_empty) {
            self.failed = true;
        }
        let mut sizes: Vec<usize> = Vec::new();
        while !self.failed {
            let Some(p) = self.queue.pop_front() else {
                break;
            };
            self.queued[p] = false;
            let Some(prop) = self.store[p].as_mut() else {
                continue;
            };

            sizes.clear();
            sizes.extend(prop.scope().iter().map(|x| self.domains[x.0].size()));
            self.counters.propagations.fetch_add(1, Ordering::Relaxed);
            let result = prop.propagate(&mut self.domains);

            let scope = prop.scope_arc();
            for (x, &before) in scope.iter().zip(&sizes) {
                let d = &self.domains[x.0];
                if d.size() != before {
                    self.counters.domain_events.fetch_add(1, Ordering::Relaxed);
                    if d.is_empty() {
                        self.failed = true;
                    } else {
                        self.notify(*x, Some(p));
                    }
                }
            }
            match result {
                PropagationResult::Failed => self.failed = true,
                PropagationResult::Entailed => {
                    self.store[p] = None;
                    self.active -= 1;
                }
                PropagationResult::Stable => {}
            }
        }
        if self.failed {
            self.queue.clear();
            self.queued.iter_mut().for_each(|q| *q = false);
            return StateStatus::Failed;
        }
        if self.domains.iter().all(Domain::is_assigned) {
            StateStatus::Solved
        } else {
            StateStatus::Branchable
        }
    }

    /// The total assignment of a solved state.
    pub fn solution(&self) -> Result<Assignment, StateError> {
        if self.failed || !self.queue.is_empty() || !self.domains.iter().all(Domain::is_assigned) {
            return Err(StateError::NotSolved);
        }
        Ok(self
            .domains
            .iter()
            .enumerate()
            .map(|(i, d)| (VarRef(i), d.value().expect("assigned")))
            .collect())
    }

    /// Values of the assigned variables among `vars`.
    pub fn assigned_values<'a>(&self, vars: impl IntoIterator<Item = &'a VarRef>) -> Assignment {
        vars.into_iter()
            .filter_map(|&x| self.domains[x.0].value().map(|v| (x, v)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagators::LinearRel;
    use proptest::prelude::*;

    pub(crate) fn intro_state() -> ProblemState {
        let mut s = ProblemState::new([
            Domain::new([3, 5]),
            Domain::new([3, 4]),
            Domain::new([1, 2]),
            Domain::new([1, 2]),
        ]);
        for i in 0..4 {
            for j in i + 1..4 {
                s.post(ConstraintSpec::Neq(VarRef(i), VarRef(j))).unwrap();
            }
        }
        s
    }

    #[test]
    fn intro_root_propagation_only_entails() {
        let mut s = intro_state();
        let before = s.domains().to_vec();
        assert_eq!(s.propagate(), StateStatus::Branchable);
        assert_eq!(s.domains(), &before[..]);
        // A-C, A-D, B-C, B-D have disjoint domains
        assert_eq!(s.store_size(), 2);
    }

    #[test]
    fn empty_problem_is_solved() {
        let mut s = ProblemState::new(Vec::new());
        assert_eq!(s.propagate(), StateStatus::Solved);
        assert!(s.solution().unwrap().is_empty());
    }

    #[test]
    fn empty_domain_fails() {
        let mut s = ProblemState::new([Domain::default()]);
        assert_eq!(s.propagate(), StateStatus::Failed);
    }

    #[test]
    fn post_rejects_self_loop() {
        let mut s = intro_state();
        assert_eq!(
            s.post(ConstraintSpec::Neq(VarRef(0), VarRef(0))),
            Err(PostError::RepeatedVariable(0))
        );
        assert_eq!(
            s.post(ConstraintSpec::Neq(VarRef(0), VarRef(4))),
            Err(PostError::UnknownVariable(4))
        );
    }

    #[test]
    fn first_alldiff_gets_handle_zero() {
        let mut s = ProblemState::new(vec![Domain::range(0, 3); 4]);
        let h = s
            .post(ConstraintSpec::AllDifferent((0..4).map(VarRef).collect()))
            .unwrap();
        assert_eq!(h, PropagatorHandle(0));
    }

    #[test]
    fn linear_post_prunes_on_propagate() {
        let mut s = intro_state();
        s.post(ConstraintSpec::Linear {
            coeffs: vec![1, 1],
            vars: vec![VarRef(0), VarRef(1)],
            rel: LinearRel::Eq,
            rhs: 8,
        })
        .unwrap();
        s.propagate();
        assert_eq!(s.domain(VarRef(0)), &Domain::new([5]));
        assert_eq!(s.domain(VarRef(1)), &Domain::new([3]));
    }

    #[test]
    fn hall_set_through_state() {
        let mut s = ProblemState::new([
            Domain::range(0, 1),
            Domain::range(0, 1),
            Domain::range(0, 2),
        ]);
        s.post(ConstraintSpec::AllDifferent(vec![
            VarRef(0),
            VarRef(1),
            VarRef(2),
        ]))
        .unwrap();
        assert_eq!(s.propagate(), StateStatus::Branchable);
        assert_eq!(s.domain(VarRef(2)), &Domain::new([2]));
    }

    #[test]
    fn equal_singletons_fail() {
        let mut s = ProblemState::new([Domain::new([1]), Domain::new([1])]);
        s.post(ConstraintSpec::Neq(VarRef(0), VarRef(1))).unwrap();
        assert_eq!(s.propagate(), StateStatus::Failed);
    }

    #[test]
    fn tell_narrows() {
        let mut s = intro_state();
        s.tell(VarRef(1), Tell::Neq(3));
        assert_eq!(s.domain(VarRef(1)), &Domain::new([4]));
        s.tell(VarRef(0), Tell::Eq(3));
        assert_eq!(s.domain(VarRef(0)), &Domain::new([3]));
        let mut t = intro_state();
        t.tell(VarRef(0), Tell::Eq(7));
        assert!(t.domain(VarRef(0)).is_empty());
        assert_eq!(t.propagate(), StateStatus::Failed);
    }

    #[test]
    fn clone_is_independent() {
        let mut s = intro_state();
        s.propagate();
        let mut c = s.clone();
        c.tell(VarRef(0), Tell::Eq(3));
        assert_eq!(c.propagate(), StateStatus::Branchable);
        assert_eq!(s.domain(VarRef(0)), &Domain::new([3, 5]));
        assert_eq!(s.domain(VarRef(1)), &Domain::new([3, 4]));
        assert_eq!(s.store_size(), 2);
        // clones share the run-level counters
        assert!(Arc::ptr_eq(s.counters(), c.counters()));
    }

    #[test]
    fn clone_of_solved_is_solved() {
        let mut s = ProblemState::new([Domain::new([3]), Domain::new([4])]);
        s.post(ConstraintSpec::Neq(VarRef(0), VarRef(1))).unwrap();
        assert_eq!(s.propagate(), StateStatus::Solved);
        let mut c = s.clone();
        assert_eq!(c.propagate(), StateStatus::Solved);
        assert_eq!(c.store_size(), s.store_size());
    }

    #[test]
    fn solution_of_solved_state() {
        let mut s = intro_state();
        for (i, v) in [3, 4, 1, 2].into_iter().enumerate() {
            s.tell(VarRef(i), Tell::Eq(v));
        }
        assert_eq!(s.propagate(), StateStatus::Solved);
        let a = s.solution().unwrap();
        assert_eq!(
            a.iter().collect::<Vec<_>>(),
            vec![
                (VarRef(0), 3),
                (VarRef(1), 4),
                (VarRef(2), 1),
                (VarRef(3), 2)
            ]
        );
        let mut b = intro_state();
        b.propagate();
        assert_eq!(b.solution(), Err(StateError::NotSolved));
    }

    proptest! {
        #[test]
        fn propagate_is_idempotent_and_monotone(
            raw in proptest::collection::vec(proptest::collection::vec(0i64..4, 1..4), 3..6),
            pairs in proptest::collection::vec((0usize..6, 0usize..6), 0..6),
        ) {
            let n = raw.len();
            let mut s = ProblemState::new(raw.into_iter().map(Domain::new));
            for (a, b) in pairs {
                let (a, b) = (a % n, b % n);
                if a != b { s.post(ConstraintSpec::Neq(VarRef(a), VarRef(b))).unwrap(); }
            }
            s.post(ConstraintSpec::AllDifferent(vec![VarRef(0), VarRef(1)])).unwrap();
            let init = s.domains().to_vec();
            let st = s.propagate();
            for (d, i) in s.domains().iter().zip(&init) { prop_assert!(d.is_subset_of(i)); }
            if st != StateStatus::Failed {
                let once = s.domains().to_vec();
                prop_assert_eq!(s.propagate(), st);
                prop_assert_eq!(s.domains(), &once[..]);
            }
        }
    }
}

use std::collections::HashSet;

use crate::domain::{Domain, VarRef};
use crate::engine::ProblemState;
use crate::propagators::ConstraintSpec;

use super::CspModel;

const STEPS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Self-avoiding walk of `length` monomers on the square lattice, inside the
/// box `[-bound, bound]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkSpec {
    pub length: usize,
    pub bound: i64,
}

impl WalkSpec {
    /// The smallest box the model accepts for this length.
    pub fn new(length: usize) -> Self {
        WalkSpec::with_bound(length, length as i64)
    }

    pub fn with_bound(length: usize, bound: i64) -> Self {
        assert!(length >= 1, "a walk has at least one monomer");
        assert!(
            bound >= length as i64,
            "box half-width {bound} cannot hold a walk of {length} monomers"
        );
        WalkSpec { length, bound }
    }

    fn side(&self) -> i64 {
        2 * self.bound + 1
    }

    pub fn encode(&self, x: i64, y: i64) -> i64 {
        (x + self.bound) * self.side() + (y + self.bound)
    }

    pub fn decode(&self, code: i64) -> (i64, i64) {
        (
            code / self.side() - self.bound,
            code % self.side() - self.bound,
        )
    }
}

/// Positions as variables; the first is the origin, consecutive positions are
/// lattice neighbours (one table each) and all positions differ.
pub fn saw_csp(spec: &WalkSpec) -> CspModel {
    let b = spec.bound;
    let cells = spec.side() * spec.side();
    let mut domains = vec![Domain::range(0, cells - 1); spec.length];
    domains[0] = Domain::singleton(spec.encode(0, 0));
    let mut neighbours = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            for (dx, dy) in STEPS {
                let (nx, ny) = (x + dx, y + dy);
                if nx.abs() <= b && ny.abs() <= b {
                    neighbours.push(vec![spec.encode(x, y), spec.encode(nx, ny)]);
                }
            }
        }
    }
    let mut m = CspModel::new(domains);
    for i in 1..spec.length {
        m.post(ConstraintSpec::Table {
            vars: vec![VarRef(i - 1), VarRef(i)],
            tuples: neighbours.clone(),
        });
    }
    if spec.length > 1 {
        m.post(ConstraintSpec::AllDifferent(
            (0..spec.length).map(VarRef).collect(),
        ));
    }
    m
}

pub fn saw_model(spec: &WalkSpec) -> ProblemState {
    saw_csp(spec)
        .build()
        .expect("walk constraints are well-formed")
}

/// Number of self-avoiding walks with `length` monomers starting at the
/// origin, by direct enumeration on the lattice.
pub fn walk_count(length: usize) -> u64 {
    fn extend(pos: (i64, i64), left: usize, seen: &mut HashSet<(i64, i64)>) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for (dx, dy) in STEPS {
            let next = (pos.0 + dx, pos.1 + dy);
            if seen.insert(next) {
                total += extend(next, left - 1, seen);
                seen.remove(&next);
            }
        }
        total
    }
    assert!(length >= 1);
    let mut seen = HashSet::from([(0, 0)]);
    extend((0, 0), length - 1, &mut seen)
}

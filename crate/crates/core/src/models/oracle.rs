use std::collections::HashSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::count::Count;
use crate::domain::{Domain, VarRef};
use crate::engine::{Assignment, ProblemState};
use crate::propagators::ConstraintSpec;

use super::CspModel;

/// Largest search space the brute-force oracles will enumerate.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of {size} assignments exceeds the oracle limit of {limit}")]
    TooLarge { size: String, limit: u64 },
    #[error("graph with {0} nodes exceeds the deletion-contraction limit of 12")]
    GraphTooLarge(usize),
}

fn check_size(domains: &[Domain]) -> Result<(), OracleError> {
    let size = domains
        .iter()
        .fold(BigUint::from(1u8), |acc, d| acc * d.size());
    if size > BigUint::from(BRUTE_FORCE_LIMIT) {
        return Err(OracleError::TooLarge {
            size: size.to_string(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Calls `f` on every satisfying assignment, as a value vector indexed by
/// variable. No propagation is involved.
fn enumerate<F: FnMut(&[i64])>(
    domains: &[Domain],
    constraints: &[&ConstraintSpec],
    mut f: F,
) -> Result<(), OracleError> {
    check_size(domains)?;
    if domains.iter().any(Domain::is_empty) {
        return Ok(());
    }
    let n = domains.len();
    let mut idx = vec![0usize; n];
    let mut vals: Vec<i64> = domains.iter().map(|d| d.values()[0]).collect();
    loop {
        if constraints
            .iter()
            .all(|c| c.is_satisfied_by(|x: VarRef| vals[x.0]))
        {
            f(&vals);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domains[k].size() {
                vals[k] = domains[k].values()[idx[k]];
                break;
            }
            idx[k] = 0;
            vals[k] = domains[k].values()[0];
        }
    }
}

/// Exact solution count by enumerating every assignment of the initial
/// domains and checking each constraint's tuple semantics.
pub fn brute_force_count(model: &CspModel) -> Result<Count, OracleError> {
    let refs: Vec<&ConstraintSpec> = model.constraints.iter().collect();
    let mut count = 0u64;
    enumerate(&model.domains, &refs, |_| count += 1)?;
    Ok(Count::from(count))
}

pub fn brute_force_solutions(model: &CspModel) -> Result<Vec<Assignment>, OracleError> {
    let refs: Vec<&ConstraintSpec> = model.constraints.iter().collect();
    let mut out = Vec::new();
    enumerate(&model.domains, &refs, |vals| {
        out.push(
            vals.iter()
                .enumerate()
                .map(|(i, &v)| (VarRef(i), v))
                .collect(),
        )
    })?;
    Ok(out)
}

/// Solutions of a state under its current domains and every constraint ever
/// posted to it (entailed ones included), as value vectors.
pub fn state_solutions(state: &ProblemState) -> Result<Vec<Vec<i64>>, OracleError> {
    let refs: Vec<&ConstraintSpec> = state.constraints().collect();
    let mut out = Vec::new();
    enumerate(state.domains(), &refs, |vals| out.push(vals.to_vec()))?;
    Ok(out)
}

/// Number of distinct restrictions of `solutions` to `vars`.
pub fn projection_count(solutions: &[Vec<i64>], vars: &[VarRef]) -> usize {
    solutions
        .iter()
        .map(|s| vars.iter().map(|x| s[x.0]).collect::<Vec<i64>>())
        .collect::<HashSet<_>>()
        .len()
}

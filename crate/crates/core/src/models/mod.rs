//! Benchmark model builders and the brute-force oracles used to check them.

mod coloring;
mod oracle;
mod saw;
mod ugraph;

use crate::domain::Domain;
use crate::engine::ProblemState;
use crate::propagators::{ConstraintSpec, PostError};

pub use coloring::{chromatic_oracle, coloring_csp, coloring_model, ColoringSpec};
pub use oracle::{
    brute_force_count, brute_force_solutions, projection_count, state_solutions, OracleError,
    BRUTE_FORCE_LIMIT,
};
pub use saw::{saw_csp, saw_model, walk_count, WalkSpec};
pub use ugraph::{erdos_renyi, maximal_cliques, UGraph};

/// A problem before posting: initial domains plus constraint descriptions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CspModel {
    pub domains: Vec<Domain>,
    pub constraints: Vec<ConstraintSpec>,
}

impl CspModel {
    pub fn new(domains: Vec<Domain>) -> Self {
        CspModel {
            domains,
            constraints: Vec::new(),
        }
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    pub fn post(&mut self, c: ConstraintSpec) -> &mut Self {
        self.constraints.push(c);
        self
    }

    /// Posts every constraint on a fresh state. No propagation is run.
    pub fn build(&self) -> Result<ProblemState, PostError> {
        let mut state = ProblemState::new(self.domains.iter().cloned());
        for c in &self.constraints {
            state.post(c.clone())?;
        }
        Ok(state)
    }
}

use super::PropagationResult;
use crate::domain::{Domain, VarRef};

/// Generalized arc consistency for an extensional constraint by a single
/// support scan over the allowed tuples.
///
/// `tuples` is expected to be free of duplicates; the entailment test
/// compares the number of live tuples with the size of the domain product.
pub fn filter_table(
    doms: &mut [Domain],
    vars: &[VarRef],
    tuples: &[Vec<i64>],
) -> PropagationResult {
    let mut supported: Vec<Vec<i64>> = vec![Vec::new(); vars.len()];
    let mut live = 0usize;
    for t in tuples {
        if t.iter().zip(vars).all(|(&v, x)| doms[x.0].contains(v)) {
            live += 1;
            for (i, &v) in t.iter().enumerate() {
                supported[i].push(v);
            }
        }
    }
    if live == 0 {
        return PropagationResult::Failed;
    }
    for (x, mut vals) in vars.iter().zip(supported) {
        vals.sort_unstable();
        vals.dedup();
        if vals.len() != doms[x.0].size() {
            doms[x.0] = Domain::new(vals);
        }
    }
    let mut product: u128 = 1;
    for x in vars {
        match product.checked_mul(doms[x.0].size() as u128) {
            Some(p) => product = p,
            None => return PropagationResult::Stable,
        }
    }
    if product == live as u128 {
        PropagationResult::Entailed
    } else {
        PropagationResult::Stable
    }
}

//! Regular language membership over a layered graph.
//!
//! Layer `i` holds the automaton states that can occur after reading `i`
//! symbols. A state survives if it is reachable from the start through the
//! current domains and can still reach a final state at layer `n`.

use super::{Dfa, PropagationResult};
use crate::domain::{Domain, VarRef};

/// Live states per layer (`n + 1` layers), or `None` if no accepting path
/// remains.
fn live_layers(doms: &[Domain], vars: &[VarRef], dfa: &Dfa) -> Option<Vec<Vec<bool>>> {
    let n = vars.len();
    let q = dfa.state_count();
    let mut forward = vec![vec![false; q]; n + 1];
    forward[0][dfa.start()] = true;
    for (i, x) in vars.iter().enumerate() {
        for s in 0..q {
            if !forward[i][s] {
                continue;
            }
            for v in doms[x.0].iter() {
                if let Some(t) = dfa.next(s, v) {
                    forward[i + 1][t] = true;
                }
            }
        }
    }
    let mut live = vec![vec![false; q]; n + 1];
    for s in 0..q {
        live[n][s] = forward[n][s] && dfa.is_final(s);
    }
    for i in (0..n).rev() {
        let x = vars[i];
        for s in 0..q {
            if forward[i][s] {
                live[i][s] = doms[x.0]
                    .iter()
                    .any(|v| dfa.next(s, v).is_some_and(|t| live[i + 1][t]));
            }
        }
    }
    if live[0][dfa.start()] {
        Some(live)
    } else {
        None
    }
}

/// Domain-consistent filtering for `regular(vars, dfa)`.
///
/// Entailment: every string of the (pruned) domain product is accepted, i.e.
/// no reachable state lacks a transition for a domain value and every state
/// reachable after the last position is final.
pub fn filter_regular(doms: &mut [Domain], vars: &[VarRef], dfa: &Dfa) -> PropagationResult {
    if vars.iter().any(|x| doms[x.0].is_empty()) {
        return PropagationResult::Failed;
    }
    let Some(live) = live_layers(doms, vars, dfa) else {
        return PropagationResult::Failed;
    };
    let q = dfa.state_count();
    for (i, x) in vars.iter().enumerate() {
        let layer = &live[i];
        let next = &live[i + 1];
        doms[x.0].retain(|v| (0..q).any(|s| layer[s] && dfa.next(s, v).is_some_and(|t| next[t])));
    }

    // entailment over the pruned domains
    let mut reach = vec![false; q];
    reach[dfa.start()] = true;
    for x in vars {
        let mut next = vec![false; q];
        for s in (0..q).filter(|&s| reach[s]) {
            for v in doms[x.0].iter() {
                match dfa.next(s, v) {
                    Some(t) => next[t] = true,
                    None => return PropagationResult::Stable,
                }
            }
        }
        reach = next;
    }
    if (0..q).all(|s| !reach[s] || dfa.is_final(s)) {
        PropagationResult::Entailed
    } else {
        PropagationResult::Stable
    }
}

/// Positions `j` (0 < j < n) at which the live layered graph has exactly one
/// state. Splitting there turns the constraint into a product of the prefix
/// language ending in that state and the suffix language starting from it.
pub fn regular_split_layers(doms: &[Domain], vars: &[VarRef], dfa: &Dfa) -> Vec<usize> {
    let n = vars.len();
    let Some(live) = live_layers(doms, vars, dfa) else {
        return Vec::new();
    };
    (1..n)
        .filter(|&j| live[j].iter().filter(|&&b| b).count() == 1)
        .collect()
}

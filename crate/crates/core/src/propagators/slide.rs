use super::{filter_table, PropagationResult};
use crate::domain::{Domain, VarRef};
use crate::unionfind::{group_by_root, UnionFind};

/// Filtering for `slide(vars, width, window_tuples)` with a throwaway
/// entailment record.
pub fn filter_slide(
    doms: &mut [Domain],
    vars: &[VarRef],
    width: usize,
    window_tuples: &[Vec<i64>],
) -> PropagationResult {
    let mut entailed = vec![false; vars.len() + 1 - width];
    filter_slide_tracked(doms, vars, width, window_tuples, &mut entailed)
}

/// Runs table filtering on every window not yet entailed until no window
/// prunes any more. `entailed[i]` records window `i` (positions
/// `i..i + width`) once it is entailed; entailment is monotone under domain
/// narrowing so the record survives into descendant states.
pub fn filter_slide_tracked(
    doms: &mut [Domain],
    vars: &[VarRef],
    width: usize,
    window_tuples: &[Vec<i64>],
    entailed: &mut [bool],
) -> PropagationResult {
    loop {
        let mut changed = false;
        for (i, window) in vars.windows(width).enumerate() {
            if entailed[i] {
                continue;
            }
            let before: usize = window.iter().map(|x| doms[x.0].size()).sum();
            match filter_table(doms, window, window_tuples) {
                PropagationResult::Failed => return PropagationResult::Failed,
                PropagationResult::Entailed => entailed[i] = true,
                PropagationResult::Stable => {}
            }
            let after: usize = window.iter().map(|x| doms[x.0].size()).sum();
            changed |= after != before;
        }
        if !changed {
            break;
        }
    }
    if entailed.iter().all(|&e| e) {
        PropagationResult::Entailed
    } else {
        PropagationResult::Stable
    }
}

/// Fragments of a slide constraint: windows that are not entailed, joined
/// whenever they share an unassigned variable. A variable all of whose
/// covering windows are entailed separates the sequence.
pub(crate) fn slide_components(
    doms: &[Domain],
    vars: &[VarRef],
    width: usize,
    entailed: &[bool],
) -> Vec<Vec<VarRef>> {
    let n = vars.len();
    let mut uf = UnionFind::new(n);
    for (i, window) in vars.windows(width).enumerate() {
        if entailed[i] {
            continue;
        }
        let mut first: Option<usize> = None;
        for (off, x) in window.iter().enumerate() {
            if doms[x.0].is_assigned() {
                continue;
            }
            match first {
                None => first = Some(i + off),
                Some(f) => uf.union(f, i + off),
            }
        }
    }
    let free = vars
        .iter()
        .enumerate()
        .filter(|(_, x)| !doms[x.0].is_assigned())
        .map(|(pos, &x)| (pos, x));
    group_by_root(&mut uf, free)
}

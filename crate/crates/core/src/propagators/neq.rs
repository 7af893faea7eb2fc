use super::PropagationResult;
use crate::domain::{Domain, VarRef};

/// Binary disequality `x != y`.
///
/// An assigned side removes its value from the other side. The constraint is
/// entailed as soon as the two domains are disjoint.
pub fn filter_neq(doms: &mut [Domain], x: VarRef, y: VarRef) -> PropagationResult {
    if let Some(v) = doms[x.0].value() {
        doms[y.0].remove(v);
    }
    if let Some(v) = doms[y.0].value() {
        doms[x.0].remove(v);
    }
    if doms[x.0].is_empty() || doms[y.0].is_empty() {
        return PropagationResult::Failed;
    }
    if doms[x.0].intersects(&doms[y.0]) {
        PropagationResult::Stable
    } else {
        PropagationResult::Entailed
    }
}

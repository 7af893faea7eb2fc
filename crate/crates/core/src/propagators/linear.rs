use super::{LinearRel, PropagationResult};
use crate::domain::{Domain, VarRef};

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Bounds-consistent filtering for `sum(coeffs[i] * vars[i]) rel rhs`.
///
/// Values outside the derived bounds are removed; interior holes are left
/// alone. Iterates until the bounds stop moving.
pub fn filter_linear(
    doms: &mut [Domain],
    coeffs: &[i64],
    vars: &[VarRef],
    rel: LinearRel,
    rhs: i64,
) -> PropagationResult {
    let rhs = rhs as i128;
    loop {
        let mut term_lo = Vec::with_capacity(vars.len());
        let mut term_hi = Vec::with_capacity(vars.len());
        for (&a, x) in coeffs.iter().zip(vars) {
            let d = &doms[x.0];
            let (Some(min), Some(max)) = (d.min(), d.max()) else {
                return PropagationResult::Failed;
            };
            let (p, q) = (a as i128 * min as i128, a as i128 * max as i128);
            term_lo.push(p.min(q));
            term_hi.push(p.max(q));
        }
        let sum_lo: i128 = term_lo.iter().sum();
        let sum_hi: i128 = term_hi.iter().sum();
        match rel {
            LinearRel::Eq => {
                if rhs < sum_lo || rhs > sum_hi {
                    return PropagationResult::Failed;
                }
                if sum_lo == sum_hi {
                    return PropagationResult::Entailed;
                }
            }
            LinearRel::Leq => {
                if sum_lo > rhs {
                    return PropagationResult::Failed;
                }
                if sum_hi <= rhs {
                    return PropagationResult::Entailed;
                }
            }
        }

        let mut changed = false;
        for (i, (&a, x)) in coeffs.iter().zip(vars).enumerate() {
            let a = a as i128;
            // bounds on the term a*x implied by the other terms
            let upper = rhs - (sum_lo - term_lo[i]);
            let lower = match rel {
                LinearRel::Eq => Some(rhs - (sum_hi - term_hi[i])),
                LinearRel::Leq => None,
            };
            let (mut lo, mut hi) = (i128::from(i64::MIN), i128::from(i64::MAX));
            if a > 0 {
                hi = hi.min(div_floor(upper, a));
                if let Some(l) = lower {
                    lo = lo.max(div_ceil(l, a));
                }
            } else {
                lo = lo.max(div_ceil(upper, a));
                if let Some(l) = lower {
                    hi = hi.min(div_floor(l, a));
                }
            }
            let lo = lo.clamp(i64::MIN as i128, i64::MAX as i128) as i64;
            let hi = hi.clamp(i64::MIN as i128, i64::MAX as i128) as i64;
            if doms[x.0].restrict_to_range(lo, hi) {
                changed = true;
                if doms[x.0].is_empty() {
                    return PropagationResult::Failed;
                }
            }
        }
        if !changed {
            return PropagationResult::Stable;
        }
    }
}

//! Scalar root bracketing by bisection.
//!
//! The threshold searches in this crate bisect monotone functions whose each
//! evaluation is itself an adaptive solve, so robustness beats order: plain
//! bisection never leaves the bracket and needs no derivative.

use crate::error::{Error, Result};

/// Find a root of `f` in [lo, hi], where `f(lo)` and `f(hi)` have opposite
/// signs (zero endpoint values count as roots). Stops when the bracket width
/// falls below `xtol` or after `max_iter` halvings, returning the midpoint.
pub fn bisect<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let fa = f(a)?;
    if fa == 0.0 {
        return Ok(a);
    }
    let fb = f(b)?;
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!(
            "bisection bracket [{a}, {b}] does not change sign (f = {fa:.3e}, {fb:.3e})"
        )));
    }
    let neg_at_a = fa < 0.0;
    for _ in 0..max_iter {
        if (b - a).abs() <= xtol {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == neg_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

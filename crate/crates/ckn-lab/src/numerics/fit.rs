//! Least-squares straight-line fits.
//!
//! The asymptotic-rate checks in this crate estimate power-law exponents by
//! fitting log|y| against log x; ordinary least squares on the transformed
//! data is exactly the right tool and two accumulator passes suffice at desk
//! scale.

/// Slope and intercept of the least-squares line through (x_i, y_i).
/// Requires at least two distinct abscissae.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    assert!(sxx > 0.0, "degenerate abscissae");
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Power-law exponent p from data assumed to follow |y| ~ C x^p: the slope of
/// log|y| vs log x. Points with y = 0 are rejected by assertion.
pub fn fit_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys
        .iter()
        .map(|y| {
            assert!(*y != 0.0, "log fit requires nonzero data");
            y.abs().ln()
        })
        .collect();
    fit_line(&lx, &ly).0
}

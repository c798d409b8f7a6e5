//! Mass of the radial Green function and the improvement threshold.
//!
//! For `n < 4` the radial Green function of the ball decomposes at the
//! origin as `G_{H,lambda}(rho) = kappa rho^{2-n} + m_lambda + o(1)`; the
//! finite part `m_lambda` is the *mass*. This module computes it from the
//! resolvent integral identity
//!
//! ```text
//!   m_lambda = -kappa + lambda * int_0^1 G_{H,lambda}(rho)
//!                  * (alpha^2 / (1-rho^2)^2)          (potential)
//!                  * kappa (rho^{2-n} - 1)            (lambda = 0 kernel)
//!                  * (|S^{d-1}| rho^{n-1} / alpha)    (radial measure)
//!                  drho,
//! ```
//!
//! obtained by comparing `G_{H,lambda}` with the `lambda = 0` kernel. The
//! quadrature route is deliberately different from the series-coefficient
//! extraction in [`crate::green_radial`] (test suites cross-check the two),
//! and it degrades gracefully: the integrand behaves like `rho^{3-n}` at the
//! origin, so the mass diverges for `n >= 4` and the divergence is reported
//! as an error rather than a large number.
//!
//! On top of `mass` sit the two consumers: `lambda_star_rad` locates the
//! largest spectral parameter with nonpositive mass by monotone bisection,
//! and `mass_sweep` tabulates `m_lambda` over an `n`-grid (in parallel) to
//! exhibit the blow-up as `n -> 4^-`.
//!
//! Endpoint handling follows the singularity structure exactly:
//!
//! * at `rho = 0` the substitution `u = rho^{4-n}` linearises the
//!   `rho^{3-n}` singularity (the substituted integrand extends
//!   continuously to `u = 0`), and the powers of `rho` are cancelled
//!   symbolically against the origin series so that no intermediate
//!   overflows even when `u^{1/(4-n)}` underflows;
//! * at `rho = 1` the integrand behaves like `delta^{beta-1}` with
//!   `delta = 1 - rho` and `beta = (1 + sqrt(1-lambda))/2`. For
//!   `lambda = 1` (`beta = 1/2`, a genuine inverse-square-root
//!   singularity) the substitution `delta = s^2` flattens it; otherwise
//!   `beta > 1/2` and a geometrically graded mesh down to
//!   `delta = 6e-11` plus an analytic tail estimate `f(delta) delta / beta`
//!   finishes the job.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::green_radial::{green_hl, GreenRadial, SERIES_CUT};
use crate::numerics::quad;
use crate::numerics::roots::bisect;
use crate::params::{beta_lambda, make_params, Params};

/// Mass value together with its quadrature diagnostics.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MassResult {
    /// The mass `m_lambda = -kappa + integral_value`.
    pub m: f64,
    /// Accumulated quadrature error estimate (zero for `lambda = 0`).
    pub err_estimate: f64,
    /// Value of the `lambda`-weighted resolvent integral.
    pub integral_value: f64,
    /// The fundamental-solution normalisation `kappa`.
    pub kappa: f64,
    /// Total integrand evaluations spent.
    pub evaluations: usize,
}

/// Deepest boundary panel of the graded mesh (in `delta = 1 - rho`).
const DELTA_FLOOR: f64 = 6e-11;

/// Compute the mass `m_lambda` by the resolvent integral.
///
/// `tol` is the combined absolute/relative quadrature target (the CLI
/// default is 1e-8); `err_estimate` on a successful return is below
/// `tol * max(1, |m|)`. Requires `n < 4` (otherwise the integral diverges
/// at the origin) and `lambda <= 1` (real boundary exponents). For
/// `lambda = 0` the integral term vanishes identically and `m = -kappa`
/// is returned exactly, with zero error and zero evaluations.
pub fn mass(params: &Params, lambda: f64, tol: f64) -> Result<MassResult> {
    let n = params.n();
    if n >= 4.0 {
        return Err(Error::DivergentMass { n });
    }
    if lambda > 1.0 {
        return Err(Error::Domain(format!(
            "lambda = {lambda} exceeds 1: the mass is defined on the resolvent range"
        )));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let kappa = params.kappa();
    if lambda == 0.0 {
        return Ok(MassResult {
            m: -kappa,
            err_estimate: 0.0,
            integral_value: 0.0,
            kappa,
            evaluations: 0,
        });
    }

    let alpha = params.alpha();
    let s_area = params.sphere_area();
    let green = green_hl(params, lambda, (tol * 1e-3).clamp(1e-13, 1e-10))?;
    let b = green.chi_limit();
    let (atol, rtol) = (tol / 6.0, tol / 6.0);

    // Region 1: [0, 0.25] under u = rho^{4-n}. Writing G = kappa rho^{2-n} s
    // + B r and P = rho^{n-2}, the substituted integrand collapses to
    //   [kappa^2 s (1-P) + B kappa P (1-P) r] * alpha S / ((4-n)(1-rho^2)^2),
    // in which every factor is bounded: the rho^{3-n} singularity has been
    // absorbed into du exactly, not numerically.
    let ex = 4.0 - n;
    let u_hi = 0.25f64.powf(ex);
    let origin = quad::integrate(
        |u: f64| {
            let rho = if u > 0.0 { u.powf(1.0 / ex) } else { 0.0 };
            let (s, r) = green.origin_series_values(rho);
            let p = if rho > 0.0 { rho.powf(n - 2.0) } else { 0.0 };
            let w = 1.0 - rho * rho;
            (kappa * kappa * s * (1.0 - p) + b * kappa * p * (1.0 - p) * r) * alpha * s_area
                / (ex * w * w)
        },
        0.0,
        u_hi,
        atol,
        rtol,
    )?;

    // Unsubstituted integrand, used away from the origin. The lambda = 0
    // kernel factor is written through expm1 to survive rho -> 1.
    let f = |rho: f64| {
        let w = 1.0 - rho * rho;
        let kernel0 = kappa * ((2.0 - n) * rho.ln()).exp_m1();
        green.eval(rho) * (alpha * alpha / (w * w)) * kernel0 * s_area * rho.powf(n - 1.0)
            / alpha
    };

    // Region 2: [0.25, 0.75] with a breakpoint at the representation switch.
    let middle = quad::integrate_segments(&f, &[0.25, SERIES_CUT, 0.5, 0.75], atol, rtol)?;

    // Region 3: [0.75, 1).
    let beta = beta_lambda(lambda)?;
    let (boundary_value, boundary_err, boundary_evals) = if lambda == 1.0 {
        // beta = 1/2: substitute delta = s^2, which turns the
        // delta^{-1/2} singularity into a smooth even integrand.
        let q = quad::integrate(
            |s: f64| {
                let rho = 1.0 - s * s;
                f(rho) * 2.0 * s
            },
            0.0,
            0.5,
            atol,
            rtol,
        )?;
        (q.value, q.err, q.evals)
    } else {
        // beta > 1/2: graded geometric mesh in delta plus the first-order
        // analytic tail f(1-dmin) * dmin / beta (exact up to O(dmin)
        // relative, since G carries a pure delta^beta expansion).
        let mut pts = Vec::new();
        let mut delta = 0.25f64;
        while delta > DELTA_FLOOR {
            pts.push(1.0 - delta);
            delta *= 0.25;
        }
        pts.push(1.0 - delta);
        let q = quad::integrate_segments(&f, &pts, atol, rtol)?;
        let tail = f(1.0 - delta) * delta / beta;
        (q.value + tail, q.err + tail.abs() * 1e-4, q.evals + 1)
    };

    let integral_value = lambda * (origin.value + middle.value + boundary_value);
    let err_estimate = lambda.abs() * (origin.err + middle.err + boundary_err);
    let evaluations = origin.evals + middle.evals + boundary_evals;
    let m = -kappa + integral_value;
    if !(err_estimate <= tol * m.abs().max(1.0)) {
        return Err(Error::Quadrature { err: err_estimate, tol, evals: evaluations });
    }
    Ok(MassResult { m, err_estimate, integral_value, kappa, evaluations })
}

/// The radial improvement threshold: the largest `lambda <= 1` with
/// `m_lambda <= 0`.
///
/// `m_0 = -kappa < 0` always, and `lambda -> m_lambda` is continuous and
/// strictly increasing up to 1, so either `m_1 <= 0` (threshold exactly 1)
/// or the unique sign change lies in `(0, 1)` and bisection to width `tol`
/// finds it. The result is strictly positive. Requires `n < 4`.
pub fn lambda_star_rad(params: &Params, tol: f64) -> Result<f64> {
    if params.n() >= 4.0 {
        return Err(Error::DivergentMass { n: params.n() });
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    // Resolve masses finer than the bisection width so the sign tests near
    // the root are trustworthy.
    let mtol = (tol * 1e-2).clamp(1e-12, 1e-8);
    if mass(params, 1.0, mtol)?.m <= 0.0 {
        return Ok(1.0);
    }
    bisect(|l| Ok(mass(params, l, mtol)?.m), 0.0, 1.0, tol, 60)
}

/// Row outcome classification for [`mass_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepStatus {
    /// Mass computed within tolerance.
    Ok,
    /// `n >= 4`: the mass integral diverges at the origin.
    Divergent,
    /// Parameter validation or quadrature failed; see the row's `n`.
    Failed,
}

impl std::fmt::Display for SweepStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SweepStatus::Ok => "ok",
            SweepStatus::Divergent => "divergent",
            SweepStatus::Failed => "failed",
        })
    }
}

/// One row of a mass sweep over effective dimensions.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub d: u32,
    pub n: f64,
    pub alpha: f64,
    pub lambda: f64,
    /// Mass, or NaN for non-`ok` rows.
    pub m: f64,
    /// Quadrature error estimate, or NaN for non-`ok` rows.
    pub err_estimate: f64,
    pub status: SweepStatus,
    /// Integrand evaluations spent on the row (0 when nothing ran); not
    /// part of the serialised schema, but exposed so divergence cost near
    /// `n = 4` stays visible.
    #[serde(skip)]
    pub evaluations: usize,
}

/// Tabulate `m_lambda` over a grid of effective dimensions at fixed
/// `(d, alpha, lambda)`, one row per `n`, evaluated in parallel.
///
/// Failures are isolated per row: `n >= 4` rows come back `divergent`,
/// invalid parameter combinations or quadrature breakdowns come back
/// `failed`, and neither aborts the sweep. The interesting regime is
/// `n -> 4^-`, where the `m` column blows up to `+infinity` for
/// `lambda = 1`; rows within 1e-3 of the divergent edge are slow and
/// their `evaluations` field shows it.
pub fn mass_sweep(d: u32, alpha: f64, lambda: f64, n_grid: &[f64]) -> Vec<SweepRow> {
    n_grid
        .par_iter()
        .map(|&n| {
            let mut row = SweepRow {
                d,
                n,
                alpha,
                lambda,
                m: f64::NAN,
                err_estimate: f64::NAN,
                status: SweepStatus::Failed,
                evaluations: 0,
            };
            let params = match make_params(d, n, alpha) {
                Ok(p) => p,
                Err(_) => return row,
            };
            match mass(&params, lambda, 1e-8) {
                Ok(r) => {
                    row.m = r.m;
                    row.err_estimate = r.err_estimate;
                    row.status = SweepStatus::Ok;
                    row.evaluations = r.evaluations;
                }
                Err(Error::DivergentMass { .. }) => row.status = SweepStatus::Divergent,
                Err(_) => {}
            }
            row
        })
        .collect()
}

/// The unsubstituted mass integrand, exposed for diagnostics (its fitted
/// log-log slope at the origin is `3 - n`, the divergence driver).
pub fn mass_integrand(green: &GreenRadial, rho: f64) -> f64 {
    let params = green.params();
    let (n, alpha) = (params.n(), params.alpha());
    let w = 1.0 - rho * rho;
    let kernel0 = params.kappa() * ((2.0 - n) * rho.ln()).exp_m1();
    green.eval(rho) * (alpha * alpha / (w * w)) * kernel0 * params.sphere_area()
        * rho.powf(n - 1.0)
        / alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fit::fit_log_slope;
    use std::f64::consts::PI;

    fn base() -> Params {
        make_params(3, 3.0, 1.0).unwrap()
    }

    #[test]
    fn lambda_zero_is_exactly_minus_kappa() {
        for p in [base(), make_params(3, 3.5, 0.8).unwrap(), make_params(3, 3.9, 0.3).unwrap()]
        {
            let r = mass(&p, 0.0, 1e-8).unwrap();
            assert_eq!(r.m, -p.kappa());
            assert_eq!(r.integral_value, 0.0);
            assert_eq!(r.err_estimate, 0.0);
            assert_eq!(r.evaluations, 0);
        }
    }

    #[test]
    fn frozen_oracle_values() {
        // m_lambda(3, 1) = -sqrt(1 - lambda) / (4 pi).
        let p = base();
        let r = mass(&p, 0.75, 1e-8).unwrap();
        assert!((r.m - (-1.0 / (8.0 * PI))).abs() < 1e-7, "m = {}", r.m);
        assert_eq!(r.m, -r.kappa + r.integral_value);
        assert!(r.err_estimate >= 0.0 && r.err_estimate < 1e-8);
        assert!(r.evaluations > 0);

        let r1 = mass(&p, 1.0, 1e-8).unwrap();
        assert!(r1.m.abs() < 1e-7, "m_1 = {}", r1.m);
    }

    #[test]
    fn oracle_family_tracks_closed_form() {
        let p = base();
        for lambda in [0.19, 0.51, 0.84, 0.96, 0.99] {
            let r = mass(&p, lambda, 1e-8).unwrap();
            let oracle = -(1.0f64 - lambda).sqrt() / (4.0 * PI);
            assert!(
                (r.m - oracle).abs() <= 1e-6,
                "lambda = {lambda}: m = {}, oracle = {oracle}",
                r.m
            );
        }
    }

    #[test]
    fn agrees_with_series_coefficient_pipeline() {
        // The integral route and the matched-series coefficient must agree.
        for (d, n, alpha, lambda) in [
            (3, 3.5, 0.8, 0.5),
            (3, 3.5, 0.8, 1.0),
            (3, 3.2, 1.0, 0.7),
            (3, 3.7, 0.6, 0.9),
            (3, 3.95, 1.0, 1.0),
        ] {
            let p = make_params(d, n, alpha).unwrap();
            let m = mass(&p, lambda, 1e-9).unwrap().m;
            let b = green_hl(&p, lambda, 1e-12).unwrap().chi_limit();
            assert!(
                (m - b).abs() <= 1e-6,
                "({d}, {n}, {alpha}, {lambda}): integral {m} vs coefficient {b}"
            );
        }
    }

    #[test]
    fn mass_is_monotone_in_lambda() {
        let p = make_params(3, 3.5, 0.8).unwrap();
        let ms: Vec<f64> = [0.0, 0.3, 0.6, 0.9, 1.0]
            .iter()
            .map(|&l| mass(&p, l, 1e-9).unwrap().m)
            .collect();
        for w in ms.windows(2) {
            assert!(w[0] < w[1], "not increasing: {ms:?}");
        }
    }

    #[test]
    fn divergent_and_domain_errors() {
        let p4 = make_params(3, 4.0, 1.0).unwrap();
        match mass(&p4, 1.0, 1e-8) {
            Err(Error::DivergentMass { n }) => assert_eq!(n, 4.0),
            other => panic!("expected divergence, got {other:?}"),
        }
        // n >= 4 rejected even at lambda = 0 (precondition, not integrand).
        assert!(matches!(mass(&p4, 0.0, 1e-8), Err(Error::DivergentMass { .. })));
        let p = base();
        assert!(matches!(mass(&p, 1.5, 1e-8), Err(Error::Domain(_))));
        assert!(matches!(mass(&p, 0.5, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn integrand_origin_slope_is_three_minus_n() {
        let p = make_params(3, 3.5, 0.8).unwrap();
        let green = green_hl(&p, 0.6, 1e-11).unwrap();
        let rhos: Vec<f64> = (1..=20).map(|i| 1e-4 * i as f64).collect();
        let vals: Vec<f64> = rhos.iter().map(|&r| mass_integrand(&green, r)).collect();
        let slope = fit_log_slope(&rhos, &vals);
        assert!(
            (slope - (3.0 - p.n())).abs() < 0.02,
            "slope {slope} vs {}",
            3.0 - p.n()
        );
    }

    #[test]
    fn threshold_is_one_at_base_point() {
        let p = base();
        let star = lambda_star_rad(&p, 1e-6).unwrap();
        assert!((star - 1.0).abs() <= 1e-6, "lambda_star = {star}");
    }

    #[test]
    fn threshold_brackets_sign_change() {
        // Post-hoc oracle: either the threshold is 1 or the mass changes
        // sign across it.
        let p = make_params(3, 3.0, 0.5).unwrap();
        let tol = 1e-4;
        let star = lambda_star_rad(&p, tol).unwrap();
        assert!(star > 0.0);
        if star < 1.0 {
            let lo = mass(&p, star - tol, 1e-9).unwrap().m;
            let hi = mass(&p, (star + tol).min(1.0), 1e-9).unwrap().m;
            assert!(lo < 0.0, "m just below threshold = {lo}");
            assert!(hi >= 0.0, "m just above threshold = {hi}");
        }
    }

    #[test]
    fn sweep_blows_up_towards_four() {
        let rows = mass_sweep(3, 1.0, 1.0, &[3.5, 3.8, 3.9, 3.95]);
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert_eq!(row.status, SweepStatus::Ok);
            assert!(row.evaluations > 0);
        }
        for w in rows.windows(2) {
            assert!(w[0].m < w[1].m, "not increasing: {} vs {}", w[0].m, w[1].m);
        }
        // Desk-scale blow-up: one order of magnitude between n = 3.5 and
        // n = 3.95 (frozen values 0.03870 and 0.40489, consistent with the
        // origin asymptote kappa^2 alpha S 0.25^{4-n} / (4-n)).
        assert!(rows[0].m > 0.0);
        assert!(
            rows[3].m > 10.0 * rows[0].m,
            "no blow-up: {} vs {}",
            rows[3].m,
            rows[0].m
        );
        assert!((rows[0].m - 0.0387011).abs() < 1e-6);
        assert!((rows[3].m - 0.4048870).abs() < 1e-6);
    }

    #[test]
    fn sweep_row_isolation() {
        let rows = mass_sweep(3, 1.0, 1.0, &[3.5, 4.0, 2.5]);
        assert_eq!(rows[0].status, SweepStatus::Ok);
        assert_eq!(rows[1].status, SweepStatus::Divergent);
        assert!(rows[1].m.is_nan());
        // n = 2.5 < d is inadmissible at alpha = 1 (n must be >= d for the
        // cone construction): validation failure isolated to the row.
        assert_eq!(rows[2].status, SweepStatus::Failed);
    }

    #[test]
    fn sweep_lambda_zero_column() {
        let rows = mass_sweep(3, 1.0, 0.0, &[3.2, 3.6, 3.9]);
        for row in &rows {
            assert_eq!(row.status, SweepStatus::Ok);
            let kappa = make_params(3, row.n, 1.0).unwrap().kappa();
            assert_eq!(row.m, -kappa);
        }
    }
}

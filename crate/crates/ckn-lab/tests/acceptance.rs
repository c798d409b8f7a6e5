//! Acceptance suite: eleven end-to-end checks pinning the crate's
//! headline numerics to closed-form oracles, cross-pipeline consistency,
//! and scaling-law reproduction — all at desk scale.
//!
//! Each test prints exactly one `[aNN ...] PASS` / `FAIL` line (visible
//! with `--nocapture`, or automatically for failing tests) and enforces
//! a wall-clock budget.  Oracles are computed in this file, independent
//! of the library internals they check.

use std::time::Instant;

use ckn_lab::green_radial::{green_hl, verify_estimates, Domain, TwoPointSum};
use ckn_lab::mass::{lambda_star_rad, mass, mass_sweep, SweepStatus};
use ckn_lab::params::make_params;
use ckn_lab::variational::{
    deficit_scaling, mass_sign_experiment, rayleigh_quotient, spectral_gap, FnProfile,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Accumulates named checks for one criterion and prints the single
/// pass/fail summary line before panicking on any failure.
struct Criterion {
    label: &'static str,
    started: Instant,
    checks: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn new(label: &'static str) -> Self {
        Criterion { label, started: Instant::now(), checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(mut self, budget_seconds: f64) {
        let elapsed = self.started.elapsed().as_secs_f64();
        if elapsed > budget_seconds {
            self.failures
                .push(format!("runtime {elapsed:.2} s exceeded the {budget_seconds} s budget"));
        }
        if self.failures.is_empty() {
            println!("[{}] PASS ({} checks, {:.2} s)", self.label, self.checks, elapsed);
        } else {
            println!(
                "[{}] FAIL ({}/{} checks failed, {:.2} s)",
                self.label,
                self.failures.len(),
                self.checks.max(self.failures.len()),
                elapsed
            );
            for f in self.failures.iter().take(4) {
                println!("    {f}");
            }
            panic!("[{}] failed", self.label);
        }
    }
}

/// Runs `body`, folding any pipeline error into the criterion as a
/// failed check so the summary line still prints.
fn guarded(crit: &mut Criterion, body: impl FnOnce(&mut Criterion) -> ckn_lab::Result<()>) {
    if let Err(e) = body(crit) {
        crit.check(false, || format!("pipeline error: {e}"));
    }
}

#[test]
fn a01_mass_closed_form() {
    let mut crit = Criterion::new("a01 mass closed form");
    guarded(&mut crit, |crit| {
        let params = make_params(3, 3.0, 1.0)?;
        for i in 0..=10 {
            let lambda = i as f64 / 10.0;
            let m = mass(&params, lambda, 1e-10)?.m;
            let oracle = -(1.0 - lambda).sqrt() / FOUR_PI;
            let diff = (m - oracle).abs();
            crit.check(diff <= 1e-6, || {
                format!("lambda = {lambda}: |m - oracle| = {diff:.3e} > 1e-6")
            });
        }
        Ok(())
    });
    crit.finish(30.0);
}

#[test]
fn a02_radial_threshold() {
    let mut crit = Criterion::new("a02 radial threshold");
    guarded(&mut crit, |crit| {
        let params = make_params(3, 3.0, 1.0)?;
        let star = lambda_star_rad(&params, 1e-8)?;
        crit.check((star - 1.0).abs() <= 1e-6, || {
            format!("lambda_star = {star:.9} differs from 1 by more than 1e-6")
        });
        Ok(())
    });
    crit.finish(60.0);
}

#[test]
fn a03_green_function_at_lambda_zero() {
    let mut crit = Criterion::new("a03 green function at lambda zero");
    guarded(&mut crit, |crit| {
        let mut rng = ChaCha8Rng::seed_from_u64(20260823);
        for _ in 0..5 {
            let n: f64 = rng.gen_range(3.05..3.95);
            let alpha: f64 = rng.gen_range(0.3..1.5);
            let params = make_params(3, n, alpha)?;
            let kappa = params.kappa();
            let green = green_hl(&params, 0.0, 1e-10)?;
            let mut worst: f64 = 0.0;
            for i in 1..=200 {
                let rho = i as f64 / 201.0;
                let oracle = kappa * (rho.powf(2.0 - n) - 1.0);
                worst = worst.max((green.eval(rho) - oracle).abs() / oracle.abs());
            }
            crit.check(worst <= 1e-8, || {
                format!("(n, alpha) = ({n:.4}, {alpha:.4}): worst rel err {worst:.3e} > 1e-8")
            });
        }
        Ok(())
    });
    crit.finish(30.0);
}

#[test]
fn a04_mass_vs_corrector_origin_limit() {
    let mut crit = Criterion::new("a04 mass vs corrector origin limit");
    guarded(&mut crit, |crit| {
        let combos = [
            (3.0, 1.0, 0.25),
            (3.0, 1.0, 0.75),
            (3.5, 0.8, 0.6),
            (3.2, 0.9, 0.9),
            (3.9, 1.0, 0.45),
            (3.0, 0.6, 1.0),
        ];
        for (n, alpha, lambda) in combos {
            let params = make_params(3, n, alpha)?;
            let m = mass(&params, lambda, 1e-10)?.m;
            let origin_limit = green_hl(&params, lambda, 1e-10)?.chi_limit();
            let diff = (m - origin_limit).abs();
            crit.check(diff <= 1e-6, || {
                format!(
                    "(n, alpha, lambda) = ({n}, {alpha}, {lambda}): \
                     |mass - chi(0+)| = {diff:.3e} > 1e-6"
                )
            });
        }
        Ok(())
    });
    crit.finish(60.0);
}

#[test]
fn a05_mass_monotonicity_and_blowup() {
    let mut crit = Criterion::new("a05 mass monotonicity and blowup");
    guarded(&mut crit, |crit| {
        // Strict monotonicity of lambda -> m_lambda on a 10-point grid.
        for (n, alpha) in [(3.0, 1.0), (3.5, 0.8), (3.3, 1.2)] {
            let params = make_params(3, n, alpha)?;
            let masses: Vec<f64> = (0..10)
                .map(|i| mass(&params, i as f64 / 9.0, 1e-10).map(|r| r.m))
                .collect::<ckn_lab::Result<_>>()?;
            let increasing = masses.windows(2).all(|w| w[0] < w[1]);
            crit.check(increasing, || {
                format!("(n, alpha) = ({n}, {alpha}): m_lambda not strictly increasing: {masses:?}")
            });
        }

        // Blowup along n at lambda = 1: strictly increasing sweep with a
        // ten-kappa margin over the grid.
        let grid = [3.5, 3.8, 3.9, 3.95];
        let rows = mass_sweep(3, 1.0, 1.0, &grid);
        crit.check(rows.iter().all(|r| r.status == SweepStatus::Ok), || {
            format!(
                "sweep statuses not all ok: {:?}",
                rows.iter().map(|r| r.status).collect::<Vec<_>>()
            )
        });
        let increasing = rows.windows(2).all(|w| w[0].m < w[1].m);
        crit.check(increasing, || {
            format!(
                "sweep masses not strictly increasing: {:?}",
                rows.iter().map(|r| r.m).collect::<Vec<_>>()
            )
        });
        let kappa = make_params(3, 3.95, 1.0)?.kappa();
        let margin = rows[3].m - rows[0].m;
        crit.check(margin > 10.0 * kappa, || {
            format!(
                "blowup margin m(3.95) - m(3.5) = {margin:.6} not above 10 kappa = {:.6}",
                10.0 * kappa
            )
        });
        Ok(())
    });
    crit.finish(120.0);
}

#[test]
fn a06_spectral_gap_windows() {
    let mut crit = Criterion::new("a06 spectral gap windows");
    guarded(&mut crit, |crit| {
        let cap = 1.0 - 1e-12;
        let p33 = make_params(3, 3.0, 1.0)?;
        let g33 = spectral_gap(&p33, 512, cap)?;
        crit.check((1.0..=1.02).contains(&g33), || {
            format!("spectral_gap(3,3,1) = {g33:.6} outside [1, 1.02]")
        });
        let p34 = make_params(3, 4.0, 1.0)?;
        let g34 = spectral_gap(&p34, 512, cap)?;
        crit.check((2.25..=2.295).contains(&g34), || {
            format!("spectral_gap(3,4,1) = {g34:.6} outside [2.25, 2.295]")
        });
        // The discrete bound never undercuts the analytic bottom, at any
        // truncation depth.
        for k in [2, 4, 6, 8, 10, 12] {
            let value = spectral_gap(&p33, 512, 1.0 - 10f64.powi(-k))?;
            crit.check(value >= p33.lambda_one(), || {
                format!(
                    "cap 1 - 1e-{k}: value {value:.8} dips below lambda_1 = {}",
                    p33.lambda_one()
                )
            });
        }
        crit.check(g34 >= p34.lambda_one(), || {
            format!("value {g34:.8} dips below lambda_1 = {}", p34.lambda_one())
        });
        Ok(())
    });
    crit.finish(60.0);
}

#[test]
fn a07_sharp_radial_constant() {
    let mut crit = Criterion::new("a07 sharp radial constant");
    guarded(&mut crit, |crit| {
        // Frozen closed form at the unweighted corner: (3/4) (2 pi^2)^(2/3).
        let corner = make_params(3, 3.0, 1.0)?;
        let closed = 0.75 * (2.0 * std::f64::consts::PI.powi(2)).powf(2.0 / 3.0);
        let c_rad = corner.constants().c_rad;
        crit.check((c_rad - closed).abs() <= 1e-12 * closed, || {
            format!("c_rad(3,3,1) = {c_rad:.12} differs from (3/4)(2 pi^2)^(2/3) = {closed:.12}")
        });

        for (d, n, alpha) in [
            (3, 3.0, 1.0),
            (3, 3.5, 0.8),
            (3, 4.5, 1.0),
            (4, 5.0, 1.2),
            (5, 6.0, 0.9),
        ] {
            let params = make_params(d, n, alpha)?;
            let nn = params.n();
            let profile = FnProfile::new(
                move |r: f64| (1.0 + r * r).powf((2.0 - nn) / 2.0),
                move |r: f64| (2.0 - nn) * r * (1.0 + r * r).powf(-nn / 2.0),
                f64::INFINITY,
            );
            let quotient = rayleigh_quotient(&params, 0.0, &profile)?.quotient;
            let c_rad = params.constants().c_rad;
            let rel = (quotient - c_rad).abs() / c_rad;
            crit.check(rel <= 1e-6, || {
                format!("({d}, {n}, {alpha}): quotient off c_rad by {rel:.3e} > 1e-6")
            });
        }
        Ok(())
    });
    crit.finish(30.0);
}

#[test]
fn a08_deficit_scaling() {
    let mut crit = Criterion::new("a08 deficit scaling");
    guarded(&mut crit, |crit| {
        // Log-log slope n - 2 over four dyadic widths at n = 4.5.
        let params = make_params(3, 4.5, 1.0)?;
        let table = deficit_scaling(&params, &[0.2, 0.1, 0.05, 0.025])?;
        let slope_err = (table.slope - 2.5).abs();
        crit.check(slope_err <= 0.15, || {
            format!("slope {:.4} misses n - 2 = 2.5 by {slope_err:.3} > 0.15", table.slope)
        });
        crit.check(table.rows.iter().all(|r| r.deficit > 0.0), || {
            "deficit not positive along the family".to_string()
        });

        // deficit / int f^2 -> 0 monotonically for n >= 4.
        for n in [4.0, 4.5, 5.0] {
            let params = make_params(3, n, 1.0)?;
            let table = deficit_scaling(&params, &[0.1, 0.05, 0.025])?;
            let ratios: Vec<f64> = table.rows.iter().map(|r| r.ratio).collect();
            let decreasing = ratios.windows(2).all(|w| w[0] > w[1]);
            crit.check(decreasing, || {
                format!("n = {n}: deficit/mass ratios not monotonically decreasing: {ratios:?}")
            });
        }
        Ok(())
    });
    crit.finish(120.0);
}

#[test]
fn a09_mass_sign_mechanism() {
    let mut crit = Criterion::new("a09 mass sign mechanism");
    guarded(&mut crit, |crit| {
        let params = make_params(3, 3.0, 1.0)?;
        let lambda = 0.75;
        let table = mass_sign_experiment(&params, lambda, &[0.1, 0.05, 0.025, 0.0125])?;
        for row in table.rows.iter().filter(|r| r.eps <= 0.05) {
            crit.check(row.gap > 0.0, || {
                format!("eps = {}: quotient gap {:+.3e} not positive", row.eps, row.gap)
            });
        }
        let target = params.alpha() * (params.n() - 2.0);
        let rel = (table.exponent - target).abs() / target;
        crit.check(rel <= 0.10, || {
            format!(
                "fitted gap exponent {:.4} off alpha (n - 2) = {target:.4} by {:.1}% > 10%",
                table.exponent,
                100.0 * rel
            )
        });
        Ok(())
    });
    crit.finish(120.0);
}

#[test]
fn a10_two_point_kernel_oracles() {
    let mut crit = Criterion::new("a10 two point kernel oracles");
    guarded(&mut crit, |crit| {
        let params = make_params(3, 3.0, 1.0)?;

        // Off-diagonal sample pairs with the radial ratio capped so the
        // k <= 32 mode sums are fully converged.
        let draw = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50)
                .map(|_| {
                    let rx: f64 = rng.gen_range(0.2..0.9);
                    let ry: f64 = rx * rng.gen_range(0.15..0.6);
                    let c: f64 = rng.gen_range(-1.0..1.0);
                    (rx, ry, c)
                })
                .collect::<Vec<_>>()
        };

        let cone = TwoPointSum::new(&params, 0.0, Domain::Cone, 32, 1e-10)?;
        for (rx, ry, c) in draw(10) {
            let value = cone.eval(rx, ry, c)?;
            let dist = (rx * rx + ry * ry - 2.0 * rx * ry * c).sqrt();
            let oracle = 1.0 / (FOUR_PI * dist);
            let rel = (value - oracle).abs() / oracle;
            crit.check(rel <= 0.01, || {
                format!("cone ({rx:.3}, {ry:.3}, {c:.3}): rel err {rel:.3e} > 1%")
            });
        }

        // Hyperbolic-resolvent oracle on the ball: conformal factors
        // (1 - |.|^2)/2 around e^{-zeta r} / (4 pi sinh r) with
        // zeta = sqrt(1 - lambda)/2 and the ball hyperbolic distance r.
        let lambda = 0.5;
        let ball = TwoPointSum::new(&params, lambda, Domain::Ball, 32, 1e-10)?;
        for (rx, ry, c) in draw(11) {
            let value = ball.eval(rx, ry, c)?;
            let (x2, y2) = (rx * rx, ry * ry);
            let chord2 = x2 + y2 - 2.0 * rx * ry * c;
            let cosh_r = 1.0 + 2.0 * chord2 / ((1.0 - x2) * (1.0 - y2));
            let sinh_r = (cosh_r * cosh_r - 1.0).sqrt();
            let r = cosh_r.acosh();
            let weight = ((1.0 - x2) / 2.0 * (1.0 - y2) / 2.0).powf(-0.5);
            let oracle =
                weight * (-(1.0 - lambda).sqrt() / 2.0 * r).exp() / (FOUR_PI * sinh_r);
            let rel = (value - oracle).abs() / oracle;
            crit.check(rel <= 0.01, || {
                format!("ball ({rx:.3}, {ry:.3}, {c:.3}): rel err {rel:.3e} > 1%")
            });
        }
        Ok(())
    });
    crit.finish(180.0);
}

#[test]
fn a11_envelope_stability_and_corrector_sign() {
    let mut crit = Criterion::new("a11 envelope stability and corrector sign");
    guarded(&mut crit, |crit| {
        // Doubling the mode cap moves the envelope sup-ratio by < 5%.
        let params = make_params(3, 3.0, 1.0)?;
        let coarse = verify_estimates(&params, 0.5, 50, 42, 16)?;
        let fine = verify_estimates(&params, 0.5, 50, 42, 32)?;
        let drift = (fine.sup_ratio - coarse.sup_ratio).abs() / fine.sup_ratio;
        crit.check(drift < 0.05, || {
            format!(
                "sup ratio drift {:.2}% >= 5% (k=16: {:.6}, k=32: {:.6})",
                100.0 * drift,
                coarse.sup_ratio,
                fine.sup_ratio
            )
        });

        // chi_lambda <= 0 up to the threshold, on a 200-point grid.
        for (n, alpha) in [(3.0, 1.0), (3.5, 0.8)] {
            let params = make_params(3, n, alpha)?;
            let star = lambda_star_rad(&params, 1e-8)?;
            for frac in [0.5, 0.99] {
                let lambda = frac * star;
                let green = green_hl(&params, lambda, 1e-10)?;
                let worst = (1..=200)
                    .map(|i| green.chi(i as f64 / 201.0))
                    .fold(f64::NEG_INFINITY, f64::max);
                crit.check(worst <= 1e-12, || {
                    format!(
                        "(n, alpha) = ({n}, {alpha}), lambda = {lambda:.4} <= \
                         lambda_star = {star:.4}: max chi = {worst:.3e} > 0"
                    )
                });
            }
        }
        Ok(())
    });
    crit.finish(180.0);
}

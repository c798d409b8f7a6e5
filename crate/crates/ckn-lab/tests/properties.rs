//! Property-based invariants: identities that must hold across randomly
//! drawn admissible parameters, not just at hand-picked corners.

use ckn_lab::green_radial::{green_hl, two_point_green, Domain};
use ckn_lab::mass::{lambda_star_rad, mass};
use ckn_lab::params::{ab_coordinates, make_params, params_from_ab};
use ckn_lab::radial_ode::{solution_pair, ModeEquation};
use ckn_lab::variational::{
    hyperbolic_square_mass, rayleigh_quotient, spectral_gap, FnProfile,
};
use proptest::prelude::*;

/// Any admissible triple with `n > d` strictly (no edge cases).
fn admissible() -> impl Strategy<Value = (u32, f64, f64)> {
    (3u32..=5, 0.05f64..2.5, 0.2f64..1.5).prop_map(|(d, dn, alpha)| (d, d as f64 + dn, alpha))
}

/// The finite-mass regime: `d = 3`, `n` strictly inside `(3, 4)`.
fn mass_regime() -> impl Strategy<Value = (f64, f64)> {
    (3.02f64..3.95, 0.25f64..1.4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The weight chart (a, b) determines (n, alpha) and back.
    #[test]
    fn chart_round_trip((d, n, alpha) in admissible()) {
        let params = make_params(d, n, alpha).unwrap();
        let (a, b) = ab_coordinates(&params);
        let back = params_from_ab(d, a, b).unwrap();
        prop_assert!((back.n() - n).abs() <= 1e-10 * n, "n: {} vs {}", back.n(), n);
        prop_assert!(
            (back.alpha() - alpha).abs() <= 1e-10 * alpha,
            "alpha: {} vs {}",
            back.alpha(),
            alpha
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Abel's identity: the weighted Wronskian of the two mode branches
    /// is constant across the interval.
    #[test]
    fn wronskian_is_constant(
        (d, n, alpha) in admissible(),
        lambda in 0.0f64..1.0,
        k in 0u32..=4,
    ) {
        let params = make_params(d, n, alpha).unwrap();
        let mode = ModeEquation::new(params, lambda, k).unwrap();
        let pair = solution_pair(&mode, 1e-10).unwrap();
        prop_assert!(pair.wronskian != 0.0);
        prop_assert!(
            pair.wronskian_drift.abs() <= 1e-7,
            "wronskian drift {:.3e} at (d, n, alpha, lambda, k) = ({}, {}, {}, {}, {})",
            pair.wronskian_drift, d, n, alpha, lambda, k
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The mass is strictly increasing in lambda.
    #[test]
    fn mass_increases_in_lambda(
        (n, alpha) in mass_regime(),
        lo in 0.0f64..0.9,
        gap in 0.05f64..0.1,
    ) {
        let params = make_params(3, n, alpha).unwrap();
        let m_lo = mass(&params, lo, 1e-10).unwrap().m;
        let m_hi = mass(&params, lo + gap, 1e-10).unwrap().m;
        prop_assert!(
            m_lo < m_hi,
            "m({lo}) = {m_lo} not below m({}) = {m_hi} at (n, alpha) = ({n}, {alpha})",
            lo + gap
        );
    }

    /// On the cone the Rayleigh quotient is invariant under rescaling
    /// f(r) -> f(r/s).
    #[test]
    fn quotient_is_scale_invariant(
        (d, n, alpha) in admissible(),
        s in 0.3f64..1.9,
    ) {
        let params = make_params(d, n, alpha).unwrap();
        let radius = 0.45;
        let quotient_at = |scale: f64| {
            let cap = radius * scale;
            let f = FnProfile::new(
                move |r: f64| {
                    let x = r / cap;
                    (1.0 - x * x).powi(3)
                },
                move |r: f64| {
                    let x = r / cap;
                    -6.0 * x * (1.0 - x * x).powi(2) / cap
                },
                cap,
            );
            rayleigh_quotient(&params, 0.0, &f).unwrap().quotient
        };
        let base = quotient_at(1.0);
        let scaled = quotient_at(s);
        prop_assert!(
            (scaled - base).abs() <= 1e-6 * base.abs(),
            "quotient {scaled} at scale {s} differs from {base}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Conformal bookkeeping: for f supported inside the ball,
    /// Q_lambda(f) = Q_0(f) - lambda alpha^2 M_H(f) / 4.
    #[test]
    fn conformal_bookkeeping(
        (n, alpha) in mass_regime(),
        lambda in 0.1f64..0.95,
        center in 0.25f64..0.55,
        width in 0.15f64..0.35,
    ) {
        let params = make_params(3, n, alpha).unwrap();
        let f = FnProfile::new(
            move |r: f64| {
                let x = (r - center) / width;
                if x.abs() < 1.0 { (1.0 - x * x).powi(3) } else { 0.0 }
            },
            move |r: f64| {
                let x = (r - center) / width;
                if x.abs() < 1.0 { -6.0 * x * (1.0 - x * x).powi(2) / width } else { 0.0 }
            },
            (center + width).min(0.92),
        );
        let q_lambda = rayleigh_quotient(&params, lambda, &f).unwrap().q_form;
        let q_zero = rayleigh_quotient(&params, 0.0, &f).unwrap().q_form;
        let mh = hyperbolic_square_mass(&params, &f).unwrap();
        let rhs = q_zero - lambda * alpha * alpha / 4.0 * mh;
        prop_assert!(
            (q_lambda - rhs).abs() <= 1e-7 * q_zero.abs(),
            "Q_lambda = {q_lambda} vs Q_0 - lambda alpha^2 M_H/4 = {rhs}"
        );
    }

    /// The improved radial inequality survives up to the threshold: just
    /// below lambda_*^rad every admissible profile sits above c_rad.
    #[test]
    fn quotient_stays_above_c_rad_below_threshold(
        (n, alpha) in mass_regime(),
        gamma in 0.6f64..1.6,
        c1 in -0.4f64..0.8,
        c2 in -0.4f64..0.8,
    ) {
        let params = make_params(3, n, alpha).unwrap();
        let star = lambda_star_rad(&params, 1e-8).unwrap();
        let lambda = (star - 1e-3).max(0.0);
        let f = FnProfile::new(
            move |r: f64| (1.0 - r * r).powf(gamma) * (1.0 + c1 * r + c2 * r * r),
            move |r: f64| {
                let poly = 1.0 + c1 * r + c2 * r * r;
                let dpoly = c1 + 2.0 * c2 * r;
                (1.0 - r * r).powf(gamma - 1.0)
                    * (-2.0 * gamma * r * poly + (1.0 - r * r) * dpoly)
            },
            1.0,
        )
        .with_boundary_exponent(gamma);
        let quotient = rayleigh_quotient(&params, lambda, &f).unwrap().quotient;
        let c_rad = params.constants().c_rad;
        prop_assert!(
            quotient >= c_rad * (1.0 - 1e-6),
            "quotient {quotient} dips below c_rad = {c_rad} at \
             (n, alpha, lambda, gamma) = ({n}, {alpha}, {lambda}, {gamma})"
        );
    }

    /// The corrector is nonpositive anywhere below the threshold.
    #[test]
    fn corrector_nonpositive_below_threshold(
        (n, alpha) in mass_regime(),
        frac in 0.1f64..0.999,
    ) {
        let params = make_params(3, n, alpha).unwrap();
        let star = lambda_star_rad(&params, 1e-8).unwrap();
        let green = green_hl(&params, frac * star, 1e-10).unwrap();
        for i in 1..=60 {
            let rho = i as f64 / 61.0;
            let chi = green.chi(rho);
            prop_assert!(
                chi <= 1e-12,
                "chi({rho}) = {chi:.3e} > 0 at (n, alpha, lambda) = ({n}, {alpha}, {})",
                frac * star
            );
        }
    }

    /// The finite-element bound never undercuts the analytic bottom.
    #[test]
    fn spectral_bound_respects_lambda_one(
        (d, n, alpha) in admissible(),
        mesh in 64usize..256,
        k in 2i32..12,
    ) {
        let params = make_params(d, n, alpha).unwrap();
        let value = spectral_gap(&params, mesh, 1.0 - 10f64.powi(-k)).unwrap();
        let floor = params.lambda_one() * (1.0 - 1e-9);
        prop_assert!(
            value >= floor,
            "fem bound {value} below lambda_1 = {} at (d, n, alpha) = ({d}, {n}, {alpha})",
            params.lambda_one()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The cone kernel at the Newtonian corner is the Newtonian kernel,
    /// and the mode sum is symmetric in its two radii.
    #[test]
    fn cone_kernel_newtonian_and_symmetric(
        rx in 0.2f64..0.9,
        ratio in 0.15f64..0.6,
        c in -1.0f64..1.0,
    ) {
        let params = make_params(3, 3.0, 1.0).unwrap();
        let ry = rx * ratio;
        let value = two_point_green(&params, 0.0, rx, ry, c, 32, Domain::Cone).unwrap();
        let swapped = two_point_green(&params, 0.0, ry, rx, c, 32, Domain::Cone).unwrap();
        let dist = (rx * rx + ry * ry - 2.0 * rx * ry * c).sqrt();
        let oracle = 1.0 / (4.0 * std::f64::consts::PI * dist);
        prop_assert!(
            (value - oracle).abs() <= 1e-6 * oracle,
            "kernel {value} vs Newtonian {oracle} at ({rx}, {ry}, {c})"
        );
        prop_assert!(
            (value - swapped).abs() <= 1e-10 * oracle,
            "kernel not symmetric: {value} vs {swapped}"
        );
    }
}

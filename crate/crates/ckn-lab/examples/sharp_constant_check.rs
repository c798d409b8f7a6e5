//! The extremal bubble attains the sharp radial constant, numerically.
//!
//! On the cone (`lambda = 0`, infinite support) the radial extremal
//! profile `U(r) = (1 + r^2)^{-(n-2)/2}` turns the weighted Sobolev
//! inequality into an equality: its Rayleigh quotient equals `c_rad`
//! exactly, its quotient is invariant under rescaling `U(r/s)`, and the
//! conformal change of variables reshuffles the quadratic form without
//! changing the books.  This example measures all three statements with
//! adaptive quadrature.
//!
//! Run with: `cargo run --example sharp_constant_check`

use ckn_lab::params::make_params;
use ckn_lab::variational::{hyperbolic_square_mass, rayleigh_quotient, FnProfile};

fn main() -> ckn_lab::Result<()> {
    println!("Rayleigh quotient of U(r) = (1 + r^2)^(-(n-2)/2) vs c_rad:");
    println!(
        "{:>2} {:>5} {:>6} | {:>15} {:>15} {:>9}",
        "d", "n", "alpha", "quotient", "c_rad", "rel err"
    );
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
        let report = rayleigh_quotient(&params, 0.0, &profile)?;
        let c_rad = params.constants().c_rad;
        println!(
            "{:>2} {:>5} {:>6} | {:>15.9} {:>15.9} {:>9.2e}",
            d,
            n,
            alpha,
            report.quotient,
            c_rad,
            (report.quotient - c_rad).abs() / c_rad
        );
    }
    println!();

    // Scale invariance: U(r/s) has the same quotient for every s > 0.
    let params = make_params(3, 3.5, 0.8)?;
    let nn = params.n();
    println!("scale invariance at (3, 3.5, 0.8):");
    for s in [0.25, 1.0, 4.0] {
        let profile = FnProfile::new(
            move |r: f64| (1.0 + (r / s) * (r / s)).powf((2.0 - nn) / 2.0),
            move |r: f64| {
                (2.0 - nn) * (r / (s * s)) * (1.0 + (r / s) * (r / s)).powf(-nn / 2.0)
            },
            f64::INFINITY,
        );
        let report = rayleigh_quotient(&params, 0.0, &profile)?;
        println!("  s = {s:>5}: quotient = {:.12}", report.quotient);
    }
    println!();

    // Conformal bookkeeping on the ball: for a profile supported inside
    // the unit ball, Q_lambda(f) = Q_0(f) - lambda * alpha^2 * M_H(f)
    // where M_H is the hyperbolic square mass.
    let params = make_params(3, 3.0, 1.0)?;
    let bump = FnProfile::new(
        |r: f64| {
            let x = (r - 0.4) / 0.3;
            if x.abs() < 1.0 {
                (1.0 - x * x).powi(3)
            } else {
                0.0
            }
        },
        |r: f64| {
            let x = (r - 0.4) / 0.3;
            if x.abs() < 1.0 {
                -6.0 * x * (1.0 - x * x).powi(2) / 0.3
            } else {
                0.0
            }
        },
        0.7,
    );
    let lambda = 0.65;
    let with_lambda = rayleigh_quotient(&params, lambda, &bump)?;
    let without = rayleigh_quotient(&params, 0.0, &bump)?;
    let mh = hyperbolic_square_mass(&params, &bump)?;
    let alpha2 = params.alpha() * params.alpha();
    let lhs = with_lambda.q_form;
    let rhs = without.q_form - lambda * alpha2 / 4.0 * mh;
    println!("conformal bookkeeping at lambda = {lambda}:");
    println!("  Q_lambda(f)                      = {lhs:.12}");
    println!("  Q_0(f) - lambda alpha^2 M_H(f)/4 = {rhs:.12}");
    println!("  difference                       = {:.2e}", (lhs - rhs).abs());
    Ok(())
}

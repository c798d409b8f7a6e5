//! The mass of the radial Green function and the threshold it defines.
//!
//! For `n < 4` the corrector `chi_lambda = G_lambda - Phi` extends
//! continuously to the origin and its value there, the mass `m_lambda`,
//! is finite.  At
//! `d = 3, alpha = 1, n = 3` the mass has the closed form
//! `m_lambda = -sqrt(1 - lambda) / (4 pi)`, which this example checks on
//! a lambda grid before locating the radial threshold
//! `lambda_*^rad = max { lambda <= 1 : m_lambda <= 0 }` for several
//! effective dimensions.  For `d = 3, alpha = 1` the threshold is
//! `1 - (n - 3)^2`, another closed form the bisection should reproduce.
//!
//! Run with: `cargo run --example mass_and_threshold`

use ckn_lab::mass::{lambda_star_rad, mass};
use ckn_lab::params::make_params;

fn main() -> ckn_lab::Result<()> {
    let params = make_params(3, 3.0, 1.0)?;
    println!("mass on the closed-form line d = 3, n = 3, alpha = 1:");
    println!(
        "{:>6} {:>22} {:>22} {:>10}",
        "lambda", "m_lambda", "-sqrt(1-lambda)/4pi", "abs diff"
    );
    let mut worst: f64 = 0.0;
    for i in 0..=10 {
        let lambda = i as f64 / 10.0;
        let result = mass(&params, lambda, 1e-10)?;
        let exact = -(1.0 - lambda).sqrt() / (4.0 * std::f64::consts::PI);
        let diff = (result.m - exact).abs();
        worst = worst.max(diff);
        println!(
            "{:>6.2} {:>22.15e} {:>22.15e} {:>10.2e}",
            lambda, result.m, exact, diff
        );
    }
    println!("worst deviation: {worst:.2e}");
    println!();

    println!("radial threshold against the closed form 1 - (n - 3)^2:");
    println!("{:>5} {:>20} {:>20}", "n", "lambda_star", "closed form");
    for n in [3.0, 3.25, 3.5, 3.75, 3.9] {
        let params = make_params(3, n, 1.0)?;
        let star = lambda_star_rad(&params, 1e-9)?;
        let exact = 1.0 - (n - 3.0) * (n - 3.0);
        println!("{n:>5} {star:>20.12} {exact:>20.12}");
    }
    println!();

    // Above the divergence line the mass ceases to exist.
    let params = make_params(3, 4.0, 1.0)?;
    match mass(&params, 1.0, 1e-8) {
        Ok(_) => println!("n = 4 unexpectedly produced a finite mass"),
        Err(e) => println!("n = 4 rejected as expected: {e}"),
    }
    Ok(())
}

//! The resolvent corrector behind the corrected test family.
//!
//! The corrected family adds to the concentrating bubble the boundary
//! correction `H + lambda psi`, where `psi` solves the inhomogeneous
//! radial problem `-L_lambda psi = V G_0` with the bubble's harmonic
//! tail as source.  As the width `eps` shrinks, that correction
//! converges pointwise to the corrector `chi_lambda = G_lambda - Phi` of
//! the radial Green function — the object whose origin value is the
//! mass.  This example tabulates both along a grid and reports the
//! uniform distance for a ladder of widths.
//!
//! Run with: `cargo run --example corrector_profile`

use ckn_lab::green_radial::green_hl;
use ckn_lab::params::make_params;
use ckn_lab::variational::corrected_test_function;

fn main() -> ckn_lab::Result<()> {
    let params = make_params(3, 3.0, 1.0)?;
    let lambda = 0.75;
    let green = green_hl(&params, lambda, 1e-10)?;
    let grid: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();

    let family = corrected_test_function(&params, lambda, 0.025)?;
    println!("d = 3, n = 3, alpha = 1, lambda = {lambda}, eps = 0.025:");
    println!(
        "{:>5} {:>16} {:>16} {:>10}",
        "rho", "H + lambda psi", "chi_lambda", "abs diff"
    );
    for &rho in grid.iter().step_by(2) {
        let corr = family.corrector(rho).expect("corrected family");
        let chi = green.chi(rho);
        println!(
            "{:>5} {:>16.9e} {:>16.9e} {:>10.2e}",
            rho,
            corr,
            chi,
            (corr - chi).abs()
        );
    }
    println!(
        "harmonic constant H = {:.9e}  (mass m_lambda = {:.9e})",
        family.harmonic_constant().expect("corrected family"),
        green.chi_limit()
    );
    println!();

    println!("uniform distance to chi_lambda as the width shrinks:");
    for eps in [0.1, 0.05, 0.025] {
        let family = corrected_test_function(&params, lambda, eps)?;
        let sup = grid
            .iter()
            .map(|&r| (family.corrector(r).unwrap() - green.chi(r)).abs())
            .fold(0.0f64, f64::max);
        println!("  eps = {eps:>6}: sup |corrector - chi| = {sup:.3e}");
    }
    Ok(())
}

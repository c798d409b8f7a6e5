//! The sign of the mass decides which side of `c_rad` test functions see.
//!
//! The corrected family glues the bubble onto the boundary behaviour of
//! the Green function through the corrector solve, so its Rayleigh
//! quotient feels the mass `m_lambda` at leading order: the gap
//! `Q(f_eps)/|f_eps|_p^2 - c_rad` scales like `-m_lambda * eps^{alpha(n-2)}`.
//! With a negative mass the gap stays positive (the sharp constant is
//! approached from above and survives); once the mass turns positive the
//! gap flips sign and the family dips below `c_rad`.
//!
//! Run with: `cargo run --example sign_experiment`

use ckn_lab::mass::mass;
use ckn_lab::params::make_params;
use ckn_lab::variational::{mass_sign_experiment, SIGN_EPS_DEFAULT};

fn run_case(d: u32, n: f64, alpha: f64, lambda: f64) -> ckn_lab::Result<()> {
    let params = make_params(d, n, alpha)?;
    let m = mass(&params, lambda, 1e-10)?.m;
    let table = mass_sign_experiment(&params, lambda, &SIGN_EPS_DEFAULT)?;

    println!(
        "d = {d}, n = {n}, alpha = {alpha}, lambda = {lambda}:  m_lambda = {m:+.6e}"
    );
    println!("{:>8} {:>16} {:>14}", "eps", "quotient", "gap");
    for row in &table.rows {
        println!("{:>8} {:>16.9} {:>14.6e}", row.eps, row.quotient, row.gap);
    }
    println!(
        "fitted |gap| ~ eps^x exponent: {:.4}   (alpha (n - 2) = {:.4})",
        table.exponent,
        alpha * (n - 2.0)
    );
    let all_positive = table.rows.iter().all(|r| r.gap > 0.0);
    let all_negative = table.rows.iter().all(|r| r.gap < 0.0);
    println!(
        "gap sign: {}  (mass is {})",
        if all_positive {
            "positive throughout"
        } else if all_negative {
            "negative throughout"
        } else {
            "mixed"
        },
        if m < 0.0 { "negative" } else { "positive" }
    );
    println!();
    Ok(())
}

fn main() -> ckn_lab::Result<()> {
    // Negative mass: the quotient stays above c_rad.
    run_case(3, 3.0, 1.0, 0.75)?;
    // Positive mass (n close to 4, lambda past the threshold): it dips below.
    run_case(3, 3.9, 1.0, 0.95)?;
    Ok(())
}

//! Sweep the mass across effective dimensions, divergences included.
//!
//! `mass_sweep` tabulates `m_lambda` over a grid of `n` values at fixed
//! `(d, alpha, lambda)` and never aborts the whole table because one row
//! fails: rows where the integral diverges (`n >= 4`) or the parameters
//! are inadmissible are tagged by status instead.  At `lambda = 1` the
//! mass grows monotonically in `n` and blows up as `n -> 4^-`, the
//! signature of the threshold collapsing towards the divergence line.
//!
//! Run with: `cargo run --example mass_sweep_table`

use ckn_lab::mass::mass_sweep;

fn main() {
    let n_grid = [3.0, 3.25, 3.5, 3.75, 3.9, 3.95, 3.99, 4.0, 4.25];
    let rows = mass_sweep(3, 1.0, 1.0, &n_grid);

    println!("d = 3, alpha = 1, lambda = 1:");
    println!(
        "{:>6} {:>22} {:>12} {:>10}",
        "n", "m", "err", "status"
    );
    for row in &rows {
        if row.m.is_nan() {
            println!("{:>6} {:>22} {:>12} {:>10}", row.n, "-", "-", row.status);
        } else {
            println!(
                "{:>6} {:>22.15e} {:>12.2e} {:>10}",
                row.n, row.m, row.err_estimate, row.status
            );
        }
    }

    let finite: Vec<&_> = rows.iter().filter(|r| !r.m.is_nan()).collect();
    let increasing = finite.windows(2).all(|w| w[0].m < w[1].m);
    println!();
    println!("finite rows strictly increasing in n: {increasing}");
    if let (Some(first), Some(last)) = (finite.first(), finite.last()) {
        println!(
            "growth over the grid: m({}) - m({}) = {:.6}",
            last.n,
            first.n,
            last.m - first.m
        );
    }
}

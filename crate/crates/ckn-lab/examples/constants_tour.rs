//! Tour of the derived constants attached to a parameter triple.
//!
//! For each admissible `(d, n, alpha)` the crate derives the critical
//! exponent `p = 2n/(n-2)`, the weight exponents `(a, b)`, the Green
//! normalization `kappa`, the spectral bottom `lambda_1`, the volume
//! factor `Z` and the sharp radial constant `c_rad`.  This example prints
//! the record for a few triples and round-trips the `(a, b)` chart.
//!
//! Run with: `cargo run --example constants_tour`

use ckn_lab::params::{ab_coordinates, make_params, params_from_ab};

fn main() -> ckn_lab::Result<()> {
    let triples = [
        (3, 3.0, 1.0),
        (3, 3.0, 0.5),
        (3, 3.5, 0.8),
        (3, 4.5, 1.0),
        (4, 5.0, 1.3),
        (5, 5.0, 1.0),
    ];

    println!(
        "{:>2} {:>5} {:>5} | {:>8} {:>9} {:>9} {:>10} {:>9} {:>10} {:>9}",
        "d", "n", "alpha", "p", "a", "b", "kappa", "lambda_1", "Z", "c_rad"
    );
    for (d, n, alpha) in triples {
        let params = make_params(d, n, alpha)?;
        let rec = params.constants();
        println!(
            "{:>2} {:>5} {:>5} | {:>8.5} {:>9.5} {:>9.5} {:>10.6} {:>9.5} {:>10.4} {:>9.5}",
            d, n, alpha, rec.p, rec.a, rec.b, rec.kappa, rec.lambda_one, rec.z, rec.c_rad
        );
    }

    // The weight chart (a, b) determines (n, alpha) and back.
    let params = make_params(3, 3.5, 0.8)?;
    let (a, b) = ab_coordinates(&params);
    let back = params_from_ab(3, a, b)?;
    println!();
    println!(
        "chart round-trip: (n, alpha) = ({:.12}, {:.12}) -> (a, b) = ({:.6}, {:.6}) -> ({:.12}, {:.12})",
        params.n(),
        params.alpha(),
        a,
        b,
        back.n(),
        back.alpha()
    );

    // Inadmissible corners are rejected up front.
    for (d, n, alpha) in [(2, 3.0, 1.0), (3, 3.0, -0.25), (3, 3.0, 1.5), (3, 2.0, 1.0)] {
        match make_params(d, n, alpha) {
            Ok(_) => println!("({d}, {n}, {alpha}) unexpectedly accepted"),
            Err(e) => println!("({d}, {n}, {alpha}) rejected: {e}"),
        }
    }
    Ok(())
}

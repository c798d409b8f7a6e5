//! Legendre polynomials on [-1, 1] via the three-term recurrence.
//!
//! Zonal recombination of spherical-harmonic mode sums in dimension d = 3
//! needs P_k(cos theta) for all k up to the truncation order at once, so the
//! batch evaluator returns the whole table from a single forward pass. The
//! recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1} is forward-stable on
//! the interval, uniformly in k.

/// All values P_0(x), ..., P_kmax(x).
pub fn legendre_all(x: f64, k_max: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(k_max + 1);
    p.push(1.0);
    if k_max == 0 {
        return p;
    }
    p.push(x);
    for k in 1..k_max {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0);
        p.push(next);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_match_closed_forms() {
        let x = 0.37;
        let p = legendre_all(x, 4);
        assert!((p[0] - 1.0).abs() < 1e-15);
        assert!((p[1] - x).abs() < 1e-15);
        assert!((p[2] - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-14);
        assert!((p[3] - 0.5 * (5.0 * x * x * x - 3.0 * x)).abs() < 1e-14);
        assert!((p[4] - 0.125 * (35.0 * x.powi(4) - 30.0 * x * x + 3.0)).abs() < 1e-14);
    }

    #[test]
    fn endpoint_values() {
        let p = legendre_all(1.0, 10);
        for v in &p {
            assert!((v - 1.0).abs() < 1e-13);
        }
        let q = legendre_all(-1.0, 10);
        for (k, v) in q.iter().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((v - sign).abs() < 1e-13);
        }
    }

    #[test]
    fn bounded_by_one_inside() {
        for k in 0..64 {
            let p = legendre_all(0.83, k);
            assert!(p.iter().all(|v| v.abs() <= 1.0 + 1e-12));
        }
    }
}

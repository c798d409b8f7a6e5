//! Parameter algebra for the weighted cone and its derived constants.
//!
//! The whole laboratory is parametrised by a triple `(d, n, alpha)`: the
//! ambient integer dimension `d >= 3`, a real "effective dimension" `n`, and
//! a cone opening parameter `alpha > 0`. The admissible region is
//!
//! ```text
//!   (n > d and alpha > 0)   or   (n = d and 0 < alpha <= 1),
//! ```
//!
//! and every derived quantity in the crate flows from this triple:
//!
//! * the critical exponent `p = 2n/(n-2)`;
//! * the weight exponents `a = ((d-2) - alpha (n-2)) / 2` and
//!   `b = a + (n-d)/n`, which satisfy `p b - 2a = 2 (1 - alpha)`;
//! * the fundamental-solution normalisation `kappa = 1/(alpha (n-2) A_d)`
//!   with `A_d` the area of the unit (d-1)-sphere: the radial profile
//!   `kappa rho^{2-n}` is harmonic for the weighted radial Laplacian away
//!   from the origin and carries a unit Dirac mass there;
//! * the bottom of the spectrum `lambda_1 = (n-1)^2 alpha^2 / 4` of the
//!   conformally transplanted operator on the unit-ball model;
//! * the total conformal volume `Z = (2/alpha) A_d \int_0^\infty
//!   cosh(t)^{-n} dt`, evaluated here through the substitution `u = tanh t`
//!   and then `u = sin s`, giving the smooth integral
//!   `Z = (2/alpha) A_d \int_0^{pi/2} cos(s)^{n-1} ds`;
//! * the radial sharp constant `c_rad = (n(n-2)/4) alpha^2 Z^{2/n}`;
//! * the symmetry bound `alpha^2 <= (d-1)/(n-1)` (`fs_holds`), above which
//!   minimisers are known to break radial symmetry.
//!
//! The `(a, b)` chart and its inverse are provided so sweeps can be driven
//! from either coordinate system.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::quad;

/// Admissible parameter triple. Construct through [`make_params`] (or
/// [`Params::new`]); the constructor enforces the admissible region, so a
/// value of this type is always valid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    d: u32,
    n: f64,
    alpha: f64,
}

/// All scalar constants derived from a [`Params`] triple.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstantsRecord {
    /// Critical exponent `p = 2n/(n-2)`.
    pub p: f64,
    /// First weight exponent `a = ((d-2) - alpha(n-2))/2`.
    pub a: f64,
    /// Second weight exponent `b = a + (n-d)/n`.
    pub b: f64,
    /// Fundamental-solution normalisation `1/(alpha (n-2) A_d)`.
    pub kappa: f64,
    /// Spectral bottom `(n-1)^2 alpha^2 / 4` of the ball-model operator.
    pub lambda_one: f64,
    /// Conformal volume `(2/alpha) A_d \int_0^{pi/2} cos(s)^{n-1} ds`.
    #[serde(rename = "Z")]
    pub z: f64,
    /// Radial sharp constant `(n(n-2)/4) alpha^2 Z^{2/n}`.
    pub c_rad: f64,
    /// Whether `alpha^2 <= (d-1)/(n-1)` (radial symmetry of minimisers).
    pub fs_holds: bool,
    /// Area `A_d = 2 pi^{d/2} / Gamma(d/2)` of the unit (d-1)-sphere.
    pub sphere_area: f64,
}

impl Params {
    /// Validated constructor; see [`make_params`].
    pub fn new(d: u32, n: f64, alpha: f64) -> Result<Self> {
        make_params(d, n, alpha)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Critical exponent `2n/(n-2)`.
    pub fn p(&self) -> f64 {
        2.0 * self.n / (self.n - 2.0)
    }

    /// Area of the unit (d-1)-sphere.
    pub fn sphere_area(&self) -> f64 {
        sphere_area(self.d)
    }

    /// `kappa = 1/(alpha (n-2) A_d)` without computing the full record.
    pub fn kappa(&self) -> f64 {
        1.0 / (self.alpha * (self.n - 2.0) * self.sphere_area())
    }

    /// `lambda_1 = (n-1)^2 alpha^2 / 4`.
    pub fn lambda_one(&self) -> f64 {
        let t = (self.n - 1.0) * self.alpha;
        t * t / 4.0
    }

    /// Full derived-constants record; see [`derived_constants`].
    pub fn constants(&self) -> ConstantsRecord {
        derived_constants(self)
    }

    /// `(a, b)` chart of this triple; see [`ab_coordinates`].
    pub fn ab(&self) -> (f64, f64) {
        ab_coordinates(self)
    }
}

/// Build a validated parameter triple.
///
/// Rejects `d < 3`, non-finite `n` or `alpha`, and anything outside the
/// admissible region `(n > d, alpha > 0)` or `(n = d, 0 < alpha <= 1)`.
/// A cap `d <= 200` keeps the half-integer Gamma values used for
/// `sphere_area` inside f64 range.
pub fn make_params(d: u32, n: f64, alpha: f64) -> Result<Params> {
    if d < 3 {
        return Err(Error::Domain(format!("d = {d} but the construction needs d >= 3")));
    }
    if d > 200 {
        return Err(Error::Domain(format!(
            "d = {d} exceeds the supported range (sphere areas overflow f64)"
        )));
    }
    if !n.is_finite() || !alpha.is_finite() {
        return Err(Error::Domain(format!("non-finite parameters: n = {n}, alpha = {alpha}")));
    }
    let df = d as f64;
    let admissible = (n > df && alpha > 0.0) || (n == df && alpha > 0.0 && alpha <= 1.0);
    if !admissible {
        return Err(Error::Domain(format!(
            "(n, alpha) = ({n}, {alpha}) outside the admissible region for d = {d}: \
             need n > d with alpha > 0, or n = d with 0 < alpha <= 1"
        )));
    }
    Ok(Params { d, n, alpha })
}

/// Area of the unit (d-1)-sphere, `2 pi^{d/2} / Gamma(d/2)`, computed with
/// exact half-integer Gamma recursion (no series approximations).
pub fn sphere_area(d: u32) -> f64 {
    2.0 * std::f64::consts::PI.powf(d as f64 / 2.0) / gamma_half(d)
}

/// `Gamma(k/2)` for integer `k >= 1` by upward recursion from `Gamma(1/2) =
/// sqrt(pi)` or `Gamma(1) = 1`.
fn gamma_half(k: u32) -> f64 {
    let mut x;
    let mut g;
    if k % 2 == 0 {
        x = 1.0;
        g = 1.0; // Gamma(1)
    } else {
        x = 0.5;
        g = std::f64::consts::PI.sqrt(); // Gamma(1/2)
    }
    while x < k as f64 / 2.0 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Compute every derived constant for a triple.
///
/// The `Z` integral is evaluated by adaptive quadrature of the smooth form
/// `\int_0^{pi/2} cos(s)^{n-1} ds` to well below 1e-12 relative error; all
/// other fields are closed-form arithmetic.
pub fn derived_constants(params: &Params) -> ConstantsRecord {
    let (d, n, alpha) = (params.d as f64, params.n, params.alpha);
    let area = params.sphere_area();
    let p = params.p();
    let a = ((d - 2.0) - alpha * (n - 2.0)) / 2.0;
    let b = a + (n - d) / n;
    let kappa = params.kappa();
    let lambda_one = params.lambda_one();
    let cosn = quad::integrate(
        |s| s.cos().powf(n - 1.0),
        0.0,
        std::f64::consts::FRAC_PI_2,
        1e-15,
        1e-13,
    )
    .expect("cos-power integral is smooth and converges")
    .value;
    let z = (2.0 / alpha) * area * cosn;
    let c_rad = (n * (n - 2.0) / 4.0) * alpha * alpha * z.powf(2.0 / n);
    let fs_holds = alpha * alpha <= (d - 1.0) / (n - 1.0) + 1e-14;
    ConstantsRecord {
        p,
        a,
        b,
        kappa,
        lambda_one,
        z,
        c_rad,
        fs_holds,
        sphere_area: area,
    }
}

/// The weight-exponent chart `(a, b)` of a triple (see module docs).
pub fn ab_coordinates(params: &Params) -> (f64, f64) {
    let c = derived_constants(params);
    (c.a, c.b)
}

/// Invert the `(a, b)` chart at fixed `d`: recovers `n = d / (1 - (b - a))`
/// and `alpha = ((d-2) - 2a) / (n-2)`, then re-validates through
/// [`make_params`]. Preconditions `a < (d-2)/2` and `0 <= b - a < 1` are
/// checked explicitly so failures report in chart coordinates.
pub fn params_from_ab(d: u32, a: f64, b: f64) -> Result<Params> {
    let df = d as f64;
    if !(a < (df - 2.0) / 2.0) {
        return Err(Error::Domain(format!(
            "a = {a} must satisfy a < (d-2)/2 = {}",
            (df - 2.0) / 2.0
        )));
    }
    let gap = b - a;
    if !(0.0..1.0).contains(&gap) {
        return Err(Error::Domain(format!("b - a = {gap} must lie in [0, 1)")));
    }
    let n = df / (1.0 - gap);
    let alpha = ((df - 2.0) - 2.0 * a) / (n - 2.0);
    make_params(d, n, alpha)
}

/// Larger indicial root `beta(lambda) = (1 + sqrt(1 - lambda)) / 2` of the
/// boundary equation `s(s-1) + lambda/4 = 0`; the decaying branch of a
/// lambda-resolvent behaves like `(1-rho)^{beta}` at the unit sphere. The
/// companion root is `1 - beta`. Requires `lambda <= 1` (real roots).
pub fn beta_lambda(lambda: f64) -> Result<f64> {
    if !(lambda <= 1.0) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} exceeds 1: boundary exponents become complex"
        )));
    }
    Ok((1.0 + (1.0 - lambda).sqrt()) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn sphere_areas_match_closed_forms() {
        assert_relative_eq!(sphere_area(3), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(4), 2.0 * PI * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(5), 8.0 * PI * PI / 3.0, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(6), PI.powi(3), max_relative = 1e-14);
    }

    #[test]
    fn base_point_constants() {
        // (d, n, alpha) = (3, 3, 1): the unweighted round case.
        let p = make_params(3, 3.0, 1.0).unwrap();
        let c = p.constants();
        assert_relative_eq!(c.p, 6.0, max_relative = 1e-15);
        assert_eq!(c.a, 0.0);
        assert_eq!(c.b, 0.0);
        assert_relative_eq!(c.kappa, 1.0 / (4.0 * PI), max_relative = 1e-14);
        assert_relative_eq!(c.lambda_one, 1.0, max_relative = 1e-15);
        // Z = 2 pi^2: the volume of the round conformal model.
        assert_relative_eq!(c.z, 2.0 * PI * PI, max_relative = 1e-10);
        assert_relative_eq!(
            c.c_rad,
            0.75 * (2.0 * PI * PI).powf(2.0 / 3.0),
            max_relative = 1e-10
        );
        assert!(c.fs_holds);
        assert!((c.c_rad - 5.478).abs() < 5e-3);
    }

    #[test]
    fn heavier_cone_constants() {
        let p = make_params(3, 5.0, 1.0).unwrap();
        let c = p.constants();
        assert_relative_eq!(c.kappa, 1.0 / (12.0 * PI), max_relative = 1e-14);
        assert_relative_eq!(c.lambda_one, 4.0, max_relative = 1e-15);
        // alpha^2 = 1 > (d-1)/(n-1) = 1/2: symmetry bound fails.
        assert!(!c.fs_holds);
    }

    #[test]
    fn intermediate_point_constants() {
        let p = make_params(3, 4.0, 1.0).unwrap();
        let c = p.constants();
        assert_relative_eq!(c.lambda_one, 2.25, max_relative = 1e-15);
        assert_relative_eq!(c.a, -0.5, max_relative = 1e-15);
        assert_relative_eq!(c.b, -0.25, max_relative = 1e-15);
        assert_relative_eq!(c.p, 4.0, max_relative = 1e-15);
    }

    #[test]
    fn ab_chart_round_trips() {
        let cases = [(3u32, 3.0, 1.0), (3, 6.0, 1.0), (3, 10.0 / 3.0, 0.375), (4, 5.5, 0.7)];
        for (d, n, alpha) in cases {
            let p = make_params(d, n, alpha).unwrap();
            let (a, b) = ab_coordinates(&p);
            let q = params_from_ab(d, a, b).unwrap();
            assert_relative_eq!(q.n(), n, max_relative = 1e-13);
            assert_relative_eq!(q.alpha(), alpha, max_relative = 1e-13);
        }
    }

    #[test]
    fn ab_chart_frozen_values() {
        let (a, b) = ab_coordinates(&make_params(3, 3.0, 1.0).unwrap());
        assert_eq!((a, b), (0.0, 0.0));
        let (a, b) = ab_coordinates(&make_params(3, 6.0, 1.0).unwrap());
        assert_relative_eq!(a, -1.5, max_relative = 1e-15);
        assert_relative_eq!(b, -1.0, max_relative = 1e-15);
        let p = make_params(3, 10.0 / 3.0, 0.375).unwrap();
        let (a, b) = ab_coordinates(&p);
        assert_relative_eq!(a, 0.25, max_relative = 1e-13);
        assert_relative_eq!(b, 0.35, max_relative = 1e-13);
        // Dilation-balance identity p*b - 2a = 2(1 - alpha).
        assert_relative_eq!(p.p() * b - 2.0 * a, 2.0 * (1.0 - 0.375), max_relative = 1e-12);
    }

    #[test]
    fn dilation_balance_identity_generic() {
        for (d, n, alpha) in [(3u32, 3.7, 0.9), (4, 4.0, 0.31), (5, 9.2, 2.4)] {
            let p = make_params(d, n, alpha).unwrap();
            let (a, b) = ab_coordinates(&p);
            assert_relative_eq!(
                p.p() * b - 2.0 * a,
                2.0 * (1.0 - alpha),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn inverse_chart_frozen_values() {
        let p = params_from_ab(3, 0.0, 0.0).unwrap();
        assert_eq!((p.n(), p.alpha()), (3.0, 1.0));
        let q = params_from_ab(3, 0.25, 0.35).unwrap();
        assert_relative_eq!(q.n(), 10.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(q.alpha(), 0.375, max_relative = 1e-14);
    }

    #[test]
    fn rejects_inadmissible_triples() {
        assert!(make_params(2, 3.0, 1.0).is_err());
        assert!(make_params(3, 2.5, 1.0).is_err()); // n < d
        assert!(make_params(3, 3.0, 1.5).is_err()); // n = d needs alpha <= 1
        assert!(make_params(3, 3.0, 0.0).is_err());
        assert!(make_params(3, f64::NAN, 1.0).is_err());
        assert!(make_params(3, 3.5, 2.0).is_ok()); // n > d allows alpha > 1
    }

    #[test]
    fn rejects_inadmissible_chart_points() {
        assert!(params_from_ab(3, 1.0, 1.0).is_err()); // a >= (d-2)/2
        assert!(params_from_ab(3, 0.0, 1.1).is_err()); // b - a >= 1
        assert!(params_from_ab(3, 0.0, -0.1).is_err()); // b - a < 0
    }

    #[test]
    fn boundary_exponent_values() {
        assert_eq!(beta_lambda(0.0).unwrap(), 1.0);
        assert_eq!(beta_lambda(1.0).unwrap(), 0.5);
        assert_relative_eq!(beta_lambda(0.36).unwrap(), 0.9, max_relative = 1e-15);
        assert!(beta_lambda(1.0 + 1e-12).is_err());
    }

    #[test]
    fn spectral_bottom_dominates_mode_zero_threshold() {
        // lambda_1 - n(n-2) alpha^2/4 = alpha^2/4 > 0: the resolvent family
        // stays below the spectrum for every lambda <= 1.
        for (d, n, alpha) in [(3u32, 3.0, 1.0), (3, 3.9, 0.6), (4, 7.0, 1.3)] {
            let p = make_params(d, n, alpha).unwrap();
            let slack = p.lambda_one() - n * (n - 2.0) * alpha * alpha / 4.0;
            assert_relative_eq!(slack, alpha * alpha / 4.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn z_matches_gamma_ratio_oracle() {
        // Independent closed form: int_0^{pi/2} cos^{n-1} = (sqrt(pi)/2)
        // Gamma(n/2) / Gamma((n+1)/2), evaluated through statrs.
        use statrs::function::gamma::gamma;
        for (d, n, alpha) in [(3u32, 3.0, 1.0), (3, 3.5, 0.8), (3, 5.0, 1.0), (4, 6.3, 1.9)] {
            let p = make_params(d, n, alpha).unwrap();
            let c = p.constants();
            let oracle = (2.0 / alpha)
                * c.sphere_area
                * (PI.sqrt() / 2.0)
                * gamma(n / 2.0)
                / gamma((n + 1.0) / 2.0);
            assert_relative_eq!(c.z, oracle, max_relative = 1e-11);
        }
    }
}

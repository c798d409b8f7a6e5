//! Radial mode equations of the ball model: Frobenius seeds at the singular
//! endpoints, high-accuracy dense integration in between, and matched
//! solution pairs with their Wronskian normalisation.
//!
//! After separating spherical harmonics, every resolvent computation in the
//! crate reduces to the scalar ODE
//!
//! ```text
//!   z'' + ((n-1)/rho) z' - (mu_k / rho^2) z + lambda (1-rho^2)^{-2} z = 0
//! ```
//!
//! on rho in (0, 1), where `mu_k = k (k + d - 2) / alpha^2` is the rescaled
//! spherical eigenvalue. (For `lambda = 0` the potential term drops and the
//! equation lives on the whole half-line: that is the cone case.) Both
//! endpoints are regular singular points:
//!
//! * at the origin the indicial polynomial `I(s) = s^2 + (n-2) s - mu_k` has
//!   roots `gamma_pm = -(n-2)/2 +- sigma_k`, `sigma_k = sqrt(((n-2)/2)^2 +
//!   mu_k)`, and the expansion `rho^gamma sum c_j rho^j` has only even-index
//!   nonzero coefficients because the potential is even;
//! * at the boundary (in `delta = 1 - rho`) the indicial polynomial is
//!   `s(s-1) + lambda/4` with roots `beta = (1 + sqrt(1-lambda))/2` and
//!   `1 - beta`; the decaying branch carries the larger root.
//!
//! A solution branch is realised as a Frobenius series near its singular
//! endpoint plus a Dormand-Prince dense solution across the interior. For
//! high angular modes the branches grow by hundreds of orders of magnitude,
//! so each branch is stored with an implicit power-of-rho rescaling chosen to
//! keep every intermediate inside f64 range; Wronskians and Green kernels
//! are built from consistently scaled pairs, where the rescaling cancels.

use crate::error::{Error, Result};
use crate::numerics::ode;
use crate::params::Params;

/// Which regular singular endpoint a series is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// `rho = 0`; local coordinate is `rho` itself.
    Origin,
    /// `rho = 1`; local coordinate is `delta = 1 - rho`.
    Boundary,
}

/// Largest supported angular mode index.
pub const K_MAX_SUPPORTED: u32 = 64;

/// One angular mode of the separated resolvent equation.
#[derive(Debug, Clone, Copy)]
pub struct ModeEquation {
    params: Params,
    lambda: f64,
    k: u32,
    mu: f64,
}

impl ModeEquation {
    /// Requires `lambda <= 1` (so the boundary exponents are real) and
    /// `k <= 64`.
    pub fn new(params: Params, lambda: f64, k: u32) -> Result<Self> {
        if !(lambda <= 1.0) {
            return Err(Error::Domain(format!(
                "lambda = {lambda} exceeds 1: the resolvent family is only defined up to \
                 the boundary exponent degeneration"
            )));
        }
        if k > K_MAX_SUPPORTED {
            return Err(Error::Domain(format!(
                "mode index k = {k} exceeds the supported cap {K_MAX_SUPPORTED}"
            )));
        }
        let alpha = params.alpha();
        let mu = (k as f64) * (k as f64 + params.d() as f64 - 2.0) / (alpha * alpha);
        Ok(ModeEquation { params, lambda, k, mu })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Rescaled spherical eigenvalue `k(k+d-2)/alpha^2`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `sigma_k = sqrt(((n-2)/2)^2 + mu_k)`: half the origin indicial gap.
    pub fn sigma(&self) -> f64 {
        let h = (self.params.n() - 2.0) / 2.0;
        (h * h + self.mu).sqrt()
    }

    /// Right-hand side of the first-order system in (z, z').
    #[inline]
    pub fn rhs(&self, rho: f64, y: &ode::State) -> ode::State {
        let n = self.params.n();
        let pot = if self.lambda != 0.0 {
            let w = 1.0 - rho * rho;
            self.lambda / (w * w)
        } else {
            0.0
        };
        let zpp = -((n - 1.0) / rho) * y[1] + (self.mu / (rho * rho)) * y[0] - pot * y[0];
        [y[1], zpp]
    }

    /// Origin indicial polynomial `I(s) = s^2 + (n-2) s - mu`.
    fn indicial_origin(&self, s: f64) -> f64 {
        s * s + (self.params.n() - 2.0) * s - self.mu
    }

    /// Boundary indicial polynomial `I_b(s) = s(s-1) + lambda/4`.
    fn indicial_boundary(&self, s: f64) -> f64 {
        s * (s - 1.0) + self.lambda / 4.0
    }
}

/// Indicial exponent pair at an endpoint, larger root first.
pub fn indicial_exponents(mode: &ModeEquation, endpoint: Endpoint) -> (f64, f64) {
    match endpoint {
        Endpoint::Origin => {
            let half = (mode.params.n() - 2.0) / 2.0;
            let sigma = mode.sigma();
            (-half + sigma, -half - sigma)
        }
        Endpoint::Boundary => {
            let root = (1.0 - mode.lambda).max(0.0).sqrt();
            ((1.0 + root) / 2.0, (1.0 - root) / 2.0)
        }
    }
}

/// Truncated Frobenius expansion `t^{exponent} * sum_j c_j t^j` in the local
/// coordinate `t` of its endpoint (`t = rho` at the origin, `t = delta =
/// 1 - rho` at the boundary). `coefficients[0] = 1` always.
#[derive(Debug, Clone)]
pub struct FrobeniusExpansion {
    pub endpoint: Endpoint,
    pub exponent: f64,
    pub coefficients: Vec<f64>,
}

impl FrobeniusExpansion {
    /// Series factor `S(t) = sum_j c_j t^j` and its first derivative,
    /// without the leading power `t^{exponent}`. This is the scale-free form
    /// used to seed integrations of branches that would otherwise underflow.
    pub fn eval_stripped(&self, t: f64) -> (f64, f64) {
        // Horner, highest order first.
        let mut s = 0.0;
        for &c in self.coefficients.iter().rev() {
            s = s * t + c;
        }
        // ds = sum_{j>=1} j c_j t^{j-1}, same scheme.
        let mut ds = 0.0;
        for (j, &c) in self.coefficients.iter().enumerate().skip(1).rev() {
            ds = ds * t + (j as f64) * c;
        }
        (s, ds)
    }

    /// Stripped series with second derivative: `(S, S', S'')`.
    pub fn eval_stripped2(&self, t: f64) -> (f64, f64, f64) {
        let (s, ds) = self.eval_stripped(t);
        let mut d2 = 0.0;
        for (j, &c) in self.coefficients.iter().enumerate().skip(2).rev() {
            d2 = d2 * t + (j as f64) * (j as f64 - 1.0) * c;
        }
        (s, ds, d2)
    }

    /// Full local value and derivative `(z, dz/dt)` at local coordinate `t`,
    /// including the leading power (which may underflow for very large
    /// exponents; use [`Self::eval_stripped`] in that regime).
    pub fn eval_local(&self, t: f64) -> (f64, f64) {
        let (s, ds) = self.eval_stripped(t);
        let g = self.exponent;
        let lead = t.powf(g);
        (lead * s, lead * (g * s / t + ds))
    }

    /// Relative residual of the expansion in the mode ODE at local offset
    /// `t`: the ODE combination divided by the sum of magnitudes of its
    /// terms. Scale-free (computed on the stripped series).
    pub fn residual_at(&self, mode: &ModeEquation, t: f64) -> f64 {
        let (s, ds, d2) = self.eval_stripped2(t);
        let g = self.exponent;
        let n = mode.params.n();
        // Derivatives of z = t^g S in the local coordinate, divided by t^g:
        let z = s;
        let zt = g * s / t + ds;
        let ztt = g * (g - 1.0) * s / (t * t) + 2.0 * g * ds / t + d2;
        let (rho, z_r, z_rr) = match self.endpoint {
            Endpoint::Origin => (t, zt, ztt),
            // d/d rho = -d/d delta; second derivatives agree.
            Endpoint::Boundary => (1.0 - t, -zt, ztt),
        };
        let pot = if mode.lambda != 0.0 {
            let w = 1.0 - rho * rho;
            mode.lambda / (w * w)
        } else {
            0.0
        };
        let terms = [
            z_rr,
            (n - 1.0) / rho * z_r,
            -mode.mu / (rho * rho) * z,
            pot * z,
        ];
        let resid: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|x| x.abs()).sum();
        resid.abs() / scale.max(f64::MIN_POSITIVE)
    }
}

/// Next Frobenius coefficient at index `j = coeffs.len()`, or a resonance
/// error when the indicial polynomial annihilates the index but the
/// recurrence demands a nonzero value (the logarithmic case, which this
/// laboratory deliberately does not implement).
fn next_coefficient(
    mode: &ModeEquation,
    endpoint: Endpoint,
    exponent: f64,
    coeffs: &[f64],
) -> Result<f64> {
    let j = coeffs.len();
    let jf = j as f64;
    let (denom, rhs) = match endpoint {
        Endpoint::Origin => {
            // c_j I(g+j) = -lambda sum_{l>=1, 2l<=j} l c_{j-2l}
            let denom = mode.indicial_origin(exponent + jf);
            let mut rhs = 0.0;
            let mut l = 1usize;
            while 2 * l <= j {
                rhs -= mode.lambda * (l as f64) * coeffs[j - 2 * l];
                l += 1;
            }
            (denom, rhs)
        }
        Endpoint::Boundary => {
            // c_j I_b(s+j) = -sum_{m=1}^{j} [ -(n-1)(s+j-m) + q_m ] c_{j-m}
            // with q_m = lambda (m+1) / 2^{m+2} - mu (m-1) [m >= 2].
            let n = mode.params.n();
            let denom = mode.indicial_boundary(exponent + jf);
            let mut rhs = 0.0;
            let mut pow2 = 8.0; // 2^{m+2} for m = 1
            for m in 1..=j {
                let mf = m as f64;
                let mut coef = -(n - 1.0) * (exponent + jf - mf) + mode.lambda * (mf + 1.0) / pow2;
                if m >= 2 {
                    coef -= mode.mu * (mf - 1.0);
                }
                rhs -= coef * coeffs[j - m];
                pow2 *= 2.0;
            }
            (denom, rhs)
        }
    };
    let scale = 1.0 + (exponent + jf) * (exponent + jf) + mode.mu.abs();
    if denom.abs() < 1e-9 * scale {
        let coeff_scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if rhs.abs() <= 1e-13 * coeff_scale.max(1.0) {
            // Resonant index with vanishing right-hand side: the series
            // continues with a zero coefficient (no logarithm needed).
            return Ok(0.0);
        }
        let (hi, lo) = indicial_exponents(mode, endpoint);
        return Err(Error::Resonance {
            endpoint: match endpoint {
                Endpoint::Origin => "origin",
                Endpoint::Boundary => "boundary",
            },
            gap: hi - lo,
            index: j,
        });
    }
    Ok(rhs / denom)
}

/// Frobenius expansion of fixed order (number of coefficients beyond c_0).
///
/// `exponent` must be one of the indicial exponents at `endpoint` (checked
/// to a small tolerance). Seeding the *larger* exponent never resonates;
/// seeding the smaller one fails with [`Error::Resonance`] exactly when the
/// exponent gap is a positive even integer (origin) or a positive integer
/// (boundary) and a logarithmic term would be required.
pub fn frobenius_seed(
    mode: &ModeEquation,
    endpoint: Endpoint,
    exponent: f64,
    order: usize,
) -> Result<FrobeniusExpansion> {
    let (hi, lo) = indicial_exponents(mode, endpoint);
    let tol = 1e-9 * (1.0 + hi.abs().max(lo.abs()));
    if (exponent - hi).abs() > tol && (exponent - lo).abs() > tol {
        return Err(Error::Domain(format!(
            "exponent {exponent} is not an indicial exponent ({hi}, {lo})"
        )));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(1.0);
    for _ in 0..order {
        let c = next_coefficient(mode, endpoint, exponent, &coeffs)?;
        coeffs.push(c);
    }
    Ok(FrobeniusExpansion { endpoint, exponent, coefficients: coeffs })
}

/// Frobenius expansion grown until it converges at local offset `t_eval`:
/// generation stops once the last four terms `|c_j t^j|` all fall below
/// `1e-16` times the accumulated magnitude. Fails with a truncation error if
/// `max_order` coefficients do not suffice.
pub fn frobenius_adaptive(
    mode: &ModeEquation,
    endpoint: Endpoint,
    exponent: f64,
    t_eval: f64,
    max_order: usize,
) -> Result<FrobeniusExpansion> {
    let mut exp = frobenius_seed(mode, endpoint, exponent, 0)?;
    let mut mag = 1.0f64; // running sum of |c_j t^j|
    let mut quiet = 0usize;
    let mut tpow = 1.0f64;
    while exp.coefficients.len() <= max_order {
        let c = next_coefficient(mode, endpoint, exponent, &exp.coefficients)?;
        exp.coefficients.push(c);
        tpow *= t_eval;
        let term = (c * tpow).abs();
        mag += term;
        if term <= 1e-16 * mag {
            quiet += 1;
            if quiet >= 4 {
                return Ok(exp);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Truncation {
        partial: mag,
        tail_ratio: (exp.coefficients.last().unwrap() * tpow).abs() / mag,
        k_max: max_order,
    })
}

/// A dense radial solution with its endpoint exponents, evaluable anywhere
/// inside the integrated range.
#[derive(Debug, Clone)]
pub struct RadialFunction {
    sol: ode::OdeSolution,
    /// Indicial exponent this branch carries at the origin, if anchored there.
    pub origin_exponent: Option<f64>,
    /// Indicial exponent at the boundary, if anchored there.
    pub boundary_exponent: Option<f64>,
}

impl RadialFunction {
    /// Smallest abscissa covered by the dense representation.
    pub fn lo(&self) -> f64 {
        self.sol.range().0
    }

    /// Largest abscissa covered.
    pub fn hi(&self) -> f64 {
        self.sol.range().1
    }

    pub fn eval(&self, rho: f64) -> f64 {
        self.sol.eval(rho)[0]
    }

    pub fn deriv(&self, rho: f64) -> f64 {
        self.sol.eval(rho)[1]
    }

    /// `(z, z')` in one dense lookup.
    pub fn eval_pair(&self, rho: f64) -> (f64, f64) {
        let y = self.sol.eval(rho);
        (y[0], y[1])
    }

    /// Accepted integration abscissae (natural output grid).
    pub fn grid(&self) -> Vec<f64> {
        self.sol.grid()
    }

    /// Values on [`Self::grid`].
    pub fn values(&self) -> Vec<f64> {
        self.sol.grid().iter().map(|&r| self.eval(r)).collect()
    }

    /// Derivatives on [`Self::grid`].
    pub fn derivs(&self) -> Vec<f64> {
        self.sol.grid().iter().map(|&r| self.deriv(r)).collect()
    }

    pub fn steps_taken(&self) -> usize {
        self.sol.steps_taken()
    }
}

/// Integrate one mode from `from` to `to` with initial data `(z, z')`.
///
/// For `lambda != 0` the range must stay inside the unit interval (the
/// potential blows up at `rho = 1`); for `lambda = 0` any positive range is
/// allowed (the cone case). Integrating *towards* the endpoint where the
/// initial branch grows is numerically stable; both library branches are
/// integrated in their growth direction.
pub fn integrate_mode(
    mode: &ModeEquation,
    from: f64,
    to: f64,
    init: (f64, f64),
    rtol: f64,
) -> Result<RadialFunction> {
    let lo = from.min(to);
    let hi = from.max(to);
    if !(lo > 0.0) {
        return Err(Error::Domain(format!(
            "integration range [{lo}, {hi}] must stay strictly inside the cone"
        )));
    }
    if mode.lambda != 0.0 && hi >= 1.0 {
        return Err(Error::Domain(format!(
            "integration range [{lo}, {hi}] must stay strictly inside the unit ball when \
             lambda != 0"
        )));
    }
    if from == to {
        return Err(Error::Domain("empty integration range".into()));
    }
    let m = *mode;
    let sol = ode::integrate(move |r, y| m.rhs(r, y), from, to, [init.0, init.1], rtol, 1e-290)?;
    Ok(RadialFunction { sol, origin_exponent: None, boundary_exponent: None })
}

/// The normalised fundamental pair of one mode on the ball.
///
/// `u` is the origin-regular branch, `v` the boundary-decaying branch. Both
/// are *rescaled*: `u` equals `rho0^{-gamma_+}` times the unit Frobenius
/// branch (`c_0 = 1`), `v` equals `delta0^{-beta}` times its unit branch,
/// with the seed offsets stored alongside. The rescaling keeps every dense
/// value inside f64 range even for high modes; the Green normalisation
/// constant is always derived from the Wronskian of the *same* rescaled pair,
/// so kernels built from a pair are scale-invariant.
#[derive(Debug, Clone)]
pub struct SolutionPair {
    mode: ModeEquation,
    pub u: RadialFunction,
    pub v: RadialFunction,
    /// Origin expansion of `u` (unit-normalised, exponent `gamma_+`).
    pub u_series: FrobeniusExpansion,
    /// Boundary expansion of `v` (unit-normalised, exponent `beta`).
    pub v_series: FrobeniusExpansion,
    /// Seed offset of `u` from the origin.
    pub origin_offset: f64,
    /// Seed offset of `v` from the boundary (in `delta`).
    pub boundary_offset: f64,
    /// `W_c = rho^{n-1} (u v' - u' v)`, constant by Abel's identity;
    /// evaluated at the matching radius.
    pub wronskian: f64,
    /// Largest relative deviation of the Wronskian over the check samples:
    /// an end-to-end accuracy certificate for the pair.
    pub wronskian_drift: f64,
}

impl SolutionPair {
    pub fn mode(&self) -> &ModeEquation {
        &self.mode
    }

    /// Evaluate the origin-regular branch anywhere in (0, hi]: dense lookup
    /// inside the integrated range, stripped series continuation below the
    /// seed offset (underflowing harmlessly to zero far below it).
    pub fn eval_u(&self, rho: f64) -> f64 {
        if rho >= self.origin_offset {
            self.u.eval(rho)
        } else {
            let (s, _) = self.u_series.eval_stripped(rho);
            let g = self.u_series.exponent;
            // (rho / rho0)^g, exponentiated in log space.
            s * (g * (rho.ln() - self.origin_offset.ln())).exp()
        }
    }

    /// Evaluate the boundary-decaying branch anywhere in [lo, 1): dense
    /// lookup inside the range, boundary series above it, leading-power
    /// extrapolation below the origin-side cut (documented approximation;
    /// only reachable for extreme modes whose contribution is negligible
    /// there).
    pub fn eval_v(&self, rho: f64) -> f64 {
        let delta = 1.0 - rho;
        if delta < self.boundary_offset {
            let (s, _) = self.v_series.eval_stripped(delta);
            let b = self.v_series.exponent;
            return s * (delta / self.boundary_offset).powf(b);
        }
        if rho >= self.v.lo() {
            self.v.eval(rho)
        } else {
            let (lo_val, lo_der) = self.v.eval_pair(self.v.lo());
            // Continue with the dominant power rho^{gamma_-}; relative error
            // O(rho^2) from the subdominant admixture.
            let g = lo_der * self.v.lo() / lo_val;
            lo_val * (g * (rho.ln() - self.v.lo().ln())).exp()
        }
    }

    /// `(u, u')` at a radius inside the dense range.
    pub fn eval_u_pair(&self, rho: f64) -> (f64, f64) {
        self.u.eval_pair(rho)
    }

    pub fn eval_v_pair(&self, rho: f64) -> (f64, f64) {
        self.v.eval_pair(rho)
    }
}

/// Default seed offsets.
const ORIGIN_OFFSET: f64 = 1e-3;
const BOUNDARY_OFFSET: f64 = 1e-4;
/// Exponent budget: branches may grow by at most e^380 across the dense
/// range, keeping Wronskian-normalised products inside f64 range.
const LOG_GROWTH_BUDGET: f64 = 380.0;

/// Build the fundamental pair for one mode.
///
/// Seeds both branches with adaptively grown Frobenius expansions (order at
/// least 8, extended until machine-precision convergence at the seed offset,
/// with the offset shrunk if the residual check fails), integrates each
/// branch across the interior in its growth direction, and certifies the
/// pair by the constancy of the Abel Wronskian. Rejects modes so steep that
/// no admissible seed offset keeps the dynamics inside f64 range.
pub fn solution_pair(mode: &ModeEquation, rtol: f64) -> Result<SolutionPair> {
    let (gamma_p, gamma_m) = indicial_exponents(mode, Endpoint::Origin);
    let (beta, _) = indicial_exponents(mode, Endpoint::Boundary);

    // Choose the origin offset so both branches stay inside the growth
    // budget: the steeper branch has |gamma_-| = (n-2)/2 + sigma.
    let steep = gamma_m.abs().max(gamma_p.abs()).max(1.0);
    let mut rho0 = ORIGIN_OFFSET.max((-LOG_GROWTH_BUDGET / steep).exp());
    if rho0 > 0.3 {
        return Err(Error::Domain(format!(
            "mode (k = {}, alpha = {}) too steep for f64: origin exponent {:.1} would \
             require seeding at rho = {:.2}",
            mode.k(),
            mode.params().alpha(),
            gamma_m,
            rho0
        )));
    }
    let delta0 = BOUNDARY_OFFSET;

    // Seed series, shrinking offsets if the residual self-check fails.
    let mut u_series = frobenius_adaptive(mode, Endpoint::Origin, gamma_p, rho0, 400)?;
    let mut tries = 0;
    while u_series.residual_at(mode, rho0) > 1e-9 && tries < 3 {
        rho0 *= 0.25;
        u_series = frobenius_adaptive(mode, Endpoint::Origin, gamma_p, rho0, 400)?;
        tries += 1;
    }
    let mut delta0 = delta0;
    let mut v_series = frobenius_adaptive(mode, Endpoint::Boundary, beta, delta0, 400)?;
    tries = 0;
    while v_series.residual_at(mode, delta0) > 1e-9 && tries < 3 {
        delta0 *= 0.25;
        v_series = frobenius_adaptive(mode, Endpoint::Boundary, beta, delta0, 400)?;
        tries += 1;
    }

    // Seed values from the stripped series: u is the unit branch divided by
    // rho0^{gamma_+}, v the unit branch divided by delta0^{beta}.
    let (su, dsu) = u_series.eval_stripped(rho0);
    let u_init = (su, gamma_p * su / rho0 + dsu);
    let (sv, dsv) = v_series.eval_stripped(delta0);
    // d/d rho = -d/d delta.
    let v_init = (sv, -(beta * sv / delta0 + dsv));

    let hi = 1.0 - delta0;
    let mut u = integrate_mode(mode, rho0, hi, u_init, rtol)?;
    u.origin_exponent = Some(gamma_p);
    let mut v = integrate_mode(mode, hi, rho0, v_init, rtol)?;
    v.boundary_exponent = Some(beta);

    // Abel Wronskian W_c = rho^{n-1}(u v' - u' v): evaluate on a geometric
    // spread of check radii and certify constancy.
    let n = mode.params().n();
    let w_at = |rho: f64| {
        let (uu, up) = u.eval_pair(rho);
        let (vv, vp) = v.eval_pair(rho);
        (rho.powf(n - 1.0) * (uu * vp - up * vv), rho.powf(n - 1.0) * (uu * vp).abs().max((up * vv).abs()))
    };
    let mid = 0.5f64.max(rho0 * 2.0).min(hi * 0.9);
    let (w_mid, w_scale) = w_at(mid);
    if w_mid.abs() <= 1e-12 * w_scale.max(f64::MIN_POSITIVE) {
        return Err(Error::DegeneratePair { wronskian: w_mid, threshold: 1e-12 * w_scale });
    }
    let mut drift = 0.0f64;
    for i in 0..=16 {
        // Geometric spread from rho0 to hi.
        let t = i as f64 / 16.0;
        let rho = rho0 * (hi / rho0).powf(t);
        let (w, _) = w_at(rho);
        drift = drift.max(((w - w_mid) / w_mid).abs());
    }

    Ok(SolutionPair {
        mode: *mode,
        u,
        v,
        u_series,
        v_series,
        origin_offset: rho0,
        boundary_offset: delta0,
        wronskian: w_mid,
        wronskian_drift: drift,
    })
}

/// Fundamental pair for the cone problem (`lambda = 0`) in closed form:
/// `u = rho^{gamma_+}`, `v = rho^{gamma_-}`, `W_c = -2 sigma_k`. Provided
/// for oracle-grade comparisons; the ball pipeline never needs it.
pub fn cone_pair_exponents(mode: &ModeEquation) -> Result<(f64, f64, f64)> {
    if mode.lambda != 0.0 {
        return Err(Error::Domain("cone closed forms require lambda = 0".into()));
    }
    let (gp, gm) = indicial_exponents(mode, Endpoint::Origin);
    Ok((gp, gm, -2.0 * mode.sigma()))
}

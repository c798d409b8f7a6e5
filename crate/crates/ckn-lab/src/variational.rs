//! Radial test families and their Rayleigh quotients: cutoff bubbles,
//! mass-corrected profiles, deficit-scaling tables, the sign experiment
//! linking the mass to optimality, and a finite-element bound for the
//! spectral bottom of the weighted hyperbolic Laplacian.
//!
//! Everything here evaluates the two quadratic quantities of the weighted
//! ball model for explicitly constructed radial profiles `f(rho)`:
//!
//! ```text
//!   Q_lambda(f) = alpha S [ int f'^2 rho^{n-1} d rho
//!                           - lambda int f^2 (1-rho^2)^{-2} rho^{n-1} d rho ],
//!   ||f||_p     = [ (S/alpha) int |f|^p rho^{n-1} d rho ]^{1/p},
//! ```
//!
//! with `p = 2n/(n-2)` and `S` the area of the unit `(d-1)`-sphere. The
//! *deficit* is `Q_lambda(f) - c_rad ||f||_p^2` against the sharp radial
//! constant `c_rad` from [`crate::params`]; a negative deficit for a single
//! admissible profile disproves optimality of `c_rad` at that `lambda`.
//! Three profile families are built in:
//!
//! * **Cutoff bubbles** ([`bubble_cutoff`]). The extremal bubble
//!   `U_eps(rho) = kappa eps^{(n-2)/2} (eps^2 + rho^2)^{(2-n)/2}` multiplied
//!   by the fixed C^2 cutoff [`cutoff_chi`] supported in `rho < 3/4`. Their
//!   deficit at `lambda = 0` decays like `eps^{n-2}`, which
//!   [`deficit_scaling`] tabulates together with the hyperbolic square mass
//!   `int F^2 d mu_H` of the conformally transplanted profile.
//! * **Corrected profiles** ([`corrected_test_function`]). With `e = eps^alpha`,
//!   the profile `f = e^{(n-2)/2} (G_0 + lambda psi)` where
//!   `G_0 = kappa (e^2+rho^2)^{(2-n)/2} - kappa (1+e^2)^{(2-n)/2}` is the
//!   bubble minus its boundary value (so `f(1) = 0`), and the correction
//!   `psi` solves the resolvent problem `-L_lambda psi = V G_0` with
//!   `V = alpha^2 (1-rho^2)^{-2}` and Dirichlet data at the sphere, built by
//!   variation of parameters over the radial fundamental pair of
//!   [`crate::radial_ode`]. As `eps -> 0` the corrector `H + lambda psi`
//!   converges to the corrector `chi_lambda` of [`crate::green_radial`], and
//!   the quotient expands as `c_rad (1 - c m_lambda eps^{alpha(n-2)} + ...)`:
//!   the quotient gap changes sign with the mass `m_lambda`, which
//!   [`mass_sign_experiment`] measures directly.
//! * **Custom profiles.** Any [`RadialProfile`] implementor; [`FnProfile`]
//!   adapts a pair of closures.
//!
//! Boundary quadrature: a profile supported up to the unit sphere decays
//! like `(1-rho)^beta` with `beta = (1 + sqrt(1-lambda))/2`, so the
//! quadratic-form integrands behave like `(1-rho)^{2 beta - 2}` and are
//! singular (though integrable) for `beta < 1`. On `[3/4, 1)` the
//! substitution `delta = s^2` flattens the gradient integrand to
//! `s^{4 beta - 3}`; the adaptive pass runs down to `s = 1e-5` and the
//! remaining sliver is integrated in closed form from the leading power.
//! This keeps every quadrature node strictly inside the domain of the dense
//! ODE solutions and makes quantities like the `lambda = 0.95` deficit
//! (boundary exponent `0.61`) reproducible to ~1e-7 relative.
//!
//! [`spectral_gap`] bounds the bottom of the spectrum of the weighted
//! hyperbolic Laplacian from above by minimizing
//! `alpha^2 int F'^2 phi^{n-2} rho^{n-1} / int F^2 phi^n rho^{n-1}`,
//! `phi = 2/(1-rho^2)`, over P1 finite elements vanishing at a support cap.
//! The analytic bottom is `lambda_1 = (n-1)^2 alpha^2 / 4`; truncating at
//! `1 - delta` adds roughly `alpha^2 pi^2 / ln(2/delta)^2`, so the cap must
//! be taken exponentially close to the sphere (`1 - 1e-12` leaves an excess
//! of about `0.012 alpha^2`).

use crate::error::{Error, Result};
use crate::numerics::fit::fit_log_slope;
use crate::numerics::quad::{self, QuadResult};
use crate::numerics::tridiag::TridiagPencil;
use crate::params::{beta_lambda, Params};
use crate::radial_ode::{integrate_mode, solution_pair, ModeEquation, RadialFunction, SolutionPair};
use rayon::prelude::*;
use serde::Serialize;

/// Closest admissible approach to the unit sphere for the corrector
/// machinery: dense solutions, prefix/suffix tables and quadrature all stop
/// at `1 - PSI_DELTA_MIN`; the remaining sliver is handled analytically.
const PSI_DELTA_MIN: f64 = 1e-10;

/// Floor of the boundary-layer quadrature variable `s = sqrt(1 - rho)`;
/// `S_FLOOR^2 == PSI_DELTA_MIN` so the two cutoffs coincide.
const S_FLOOR: f64 = 1e-5;

/// Interior/boundary split for profiles supported up to the sphere.
const BOUNDARY_SPLIT: f64 = 0.75;

/// Default dyadic ladder for [`deficit_scaling`].
pub const DEFICIT_EPS_DEFAULT: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// Default dyadic ladder for [`mass_sign_experiment`].
pub const SIGN_EPS_DEFAULT: [f64; 4] = [0.1, 0.05, 0.025, 0.0125];

/// 4-point Gauss-Legendre rule on [-1, 1] used for element integrals.
const GL4: [(f64, f64); 4] = [
    (-0.861_136_311_594_052_6, 0.347_854_845_137_453_85),
    (-0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.861_136_311_594_052_6, 0.347_854_845_137_453_85),
];

/// The fixed C^2 cutoff: `1` on `[0, 1/2]`, `0` on `[3/4, 1)`, and the
/// quintic smoothstep `1 - S2(4(rho - 1/2))`, `S2(s) = 6s^5 - 15s^4 + 10s^3`,
/// in between. Returns `(chi, chi')`. Recorded here exactly, coefficients
/// and all, so that every scaling table built on it is reproducible bit for
/// bit.
pub fn cutoff_chi(rho: f64) -> (f64, f64) {
    if rho <= 0.5 {
        (1.0, 0.0)
    } else if rho >= 0.75 {
        (0.0, 0.0)
    } else {
        let s = 4.0 * (rho - 0.5);
        let s2 = ((6.0 * s - 15.0) * s + 10.0) * s * s * s;
        let ds2 = 30.0 * s * s * (s - 1.0) * (s - 1.0);
        (1.0 - s2, -4.0 * ds2)
    }
}

/// A radial profile on the cone `rho > 0`, presented through its value and
/// derivative. Implementors promise: `value` vanishes for
/// `rho >= support_end()`, both callbacks are finite on `(0, support_end)`,
/// and when the support reaches the unit sphere exactly
/// ([`RadialProfile::support_end`]` == 1`) the decay rate at the sphere is
/// declared through [`RadialProfile::boundary_exponent`].
pub trait RadialProfile: Sync {
    /// `f(rho)`.
    fn value(&self, rho: f64) -> f64;
    /// `f'(rho)`.
    fn derivative(&self, rho: f64) -> f64;
    /// Supremum of the support: a finite radius, or `f64::INFINITY` for
    /// profiles living on the whole cone (admissible only at `lambda = 0`).
    fn support_end(&self) -> f64;
    /// Radii where the profile switches representation or loses smoothness;
    /// the quadrature places forced breakpoints there.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    /// `beta` such that `f(rho) ~ C (1-rho)^beta` as `rho -> 1`, for
    /// profiles with `support_end() == 1`. Required by the boundary-layer
    /// quadrature; `None` means "not applicable".
    fn boundary_exponent(&self) -> Option<f64> {
        None
    }
}

/// Adapter turning a pair of closures into a [`RadialProfile`].
pub struct FnProfile<V, D> {
    value: V,
    deriv: D,
    support_end: f64,
    breakpoints: Vec<f64>,
    boundary_exponent: Option<f64>,
}

impl<V, D> FnProfile<V, D>
where
    V: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    pub fn new(value: V, deriv: D, support_end: f64) -> Self {
        FnProfile {
            value,
            deriv,
            support_end,
            breakpoints: Vec::new(),
            boundary_exponent: None,
        }
    }

    pub fn with_breakpoints(mut self, pts: Vec<f64>) -> Self {
        self.breakpoints = pts;
        self
    }

    pub fn with_boundary_exponent(mut self, beta: f64) -> Self {
        self.boundary_exponent = Some(beta);
        self
    }
}

impl<V, D> RadialProfile for FnProfile<V, D>
where
    V: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    fn value(&self, rho: f64) -> f64 {
        if rho >= self.support_end {
            0.0
        } else {
            (self.value)(rho)
        }
    }

    fn derivative(&self, rho: f64) -> f64 {
        if rho >= self.support_end {
            0.0
        } else {
            (self.deriv)(rho)
        }
    }

    fn support_end(&self) -> f64 {
        self.support_end
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }

    fn boundary_exponent(&self) -> Option<f64> {
        self.boundary_exponent
    }
}

/// Which construction produced a [`TestFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    /// Bubble times the fixed cutoff, supported in `rho < 3/4`.
    BubbleCutoff,
    /// Boundary-adjusted bubble plus `lambda` times the resolvent
    /// correction, vanishing exactly at the sphere.
    Corrected,
    /// Caller-supplied profile.
    Custom,
}

/// Shared closed-form core of both built-in families: the bubble with width
/// parameter `e` measured in the cone variable, and its constant boundary
/// shift.
#[derive(Debug, Clone, Copy)]
struct CoreBubble {
    kappa: f64,
    n: f64,
    e: f64,
    /// `H = -kappa (1+e^2)^{(2-n)/2}`: minus the bubble's value at `rho = 1`.
    h_const: f64,
}

impl CoreBubble {
    fn new(params: &Params, e: f64) -> Self {
        let n = params.n();
        let kappa = params.kappa();
        CoreBubble {
            kappa,
            n,
            e,
            h_const: -kappa * (1.0 + e * e).powf((2.0 - n) / 2.0),
        }
    }

    /// `Phi(rho) = kappa (e^2 + rho^2)^{(2-n)/2}`.
    fn phi(&self, rho: f64) -> f64 {
        self.kappa * (self.e * self.e + rho * rho).powf((2.0 - self.n) / 2.0)
    }

    /// `Phi'(rho) = kappa (2-n) rho (e^2 + rho^2)^{-n/2}`.
    fn phi_deriv(&self, rho: f64) -> f64 {
        self.kappa * (2.0 - self.n) * rho * (self.e * self.e + rho * rho).powf(-self.n / 2.0)
    }

    /// `G_0 = Phi + H`, evaluated without cancellation: writing
    /// `(e^2+rho^2)/(1+e^2) = 1 - (1-rho^2)/(1+e^2)`,
    ///
    /// ```text
    ///   G_0(rho) = -H expm1( (2-n)/2 * ln1p( -(1-rho)(1+rho)/(1+e^2) ) ),
    /// ```
    ///
    /// which is exact to machine *relative* precision even at
    /// `1 - rho = 1e-10`, where the naive difference `Phi + H` has lost six
    /// digits.
    fn g0(&self, rho: f64) -> f64 {
        let w = -((1.0 - rho) * (1.0 + rho)) / (1.0 + self.e * self.e);
        -self.h_const * f64::exp_m1(0.5 * (2.0 - self.n) * f64::ln_1p(w))
    }
}

/// Bubble times cutoff, with the `eps^{(n-2)/2}` normalization that makes
/// the p-norm independent of `eps` before the cutoff losses.
struct BubbleProfile {
    core: CoreBubble,
    /// `eps^{(n-2)/2}`.
    scale: f64,
}

impl RadialProfile for BubbleProfile {
    fn value(&self, rho: f64) -> f64 {
        if rho >= 0.75 {
            return 0.0;
        }
        let (chi, _) = cutoff_chi(rho);
        chi * self.scale * self.core.phi(rho)
    }

    fn derivative(&self, rho: f64) -> f64 {
        if rho >= 0.75 {
            return 0.0;
        }
        let (chi, dchi) = cutoff_chi(rho);
        self.scale * (chi * self.core.phi_deriv(rho) + dchi * self.core.phi(rho))
    }

    fn support_end(&self) -> f64 {
        0.75
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.5, 0.75];
        for m in [0.25, 1.0, 4.0] {
            let c = m * self.core.e;
            if c < 0.45 {
                pts.push(c);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts
    }
}

/// Resolvent correction `psi` solving `-L_lambda psi = V G_0` on `(0, 1)`
/// with `psi(1) = 0` and `psi` bounded at the origin, where
/// `L_lambda z = alpha^2 [ z'' + (n-1)/rho z' + lambda (1-rho^2)^{-2} z ]`
/// and `V = alpha^2 (1-rho^2)^{-2}`.
///
/// Variation of parameters over the radial fundamental pair `(u, v)` of
/// [`solution_pair`]: with `c = -1/(alpha W)` and the source
/// `src = V G_0`,
///
/// ```text
///   psi(rho)  = c [ v(rho) P(rho) + u(rho) Q(rho) ],
///   psi'(rho) = c [ v'(rho) P(rho) + u'(rho) Q(rho) ],
///   P(rho) = int_0^rho u src t^{n-1}/alpha dt,
///   Q(rho) = int_rho^1 v src t^{n-1}/alpha dt
/// ```
///
/// (the cross terms of the product rule cancel identically). `P` and `Q`
/// are tabulated on a master grid refined geometrically toward the sphere
/// down to `1 - 1e-10`; a point evaluation adds one non-adaptive
/// Gauss-Kronrod pass per side over the partial cell, so single calls cost
/// microseconds and quadrature over the profile stays fast.
///
/// Near the sphere `v ~ delta^beta` decays while the generic branch of `u`
/// decays like `delta^{1-beta}`; both directions of the dense extension are
/// therefore stable. Below `delta = 1e-10` the suffix integrand
/// `v src t^{n-1}/alpha ~ C delta^{beta-1}` is integrated in closed form.
struct PsiSolver {
    params: Params,
    lambda: f64,
    core: CoreBubble,
    pair: SolutionPair,
    /// Continuation of `u` beyond its dense range, up to `1 - PSI_DELTA_MIN`.
    u_ext: RadialFunction,
    /// Origin model `v ~ A rho^{2-n} + B` matched at the dense lower end.
    v_origin_a: f64,
    v_origin_b: f64,
    /// `-1/(alpha W)`.
    coeff: f64,
    /// Boundary exponent `beta(lambda)`.
    beta: f64,
    grid: Vec<f64>,
    /// `prefix[i] = P(grid[i])`.
    prefix: Vec<f64>,
    /// `suffix[i] = Q(grid[i])`, including the analytic sliver beyond the
    /// last grid point.
    suffix: Vec<f64>,
}

impl PsiSolver {
    fn new(params: Params, lambda: f64, core: CoreBubble, rtol: f64) -> Result<PsiSolver> {
        let mode = ModeEquation::new(params, lambda, 0)?;
        let pair = solution_pair(&mode, rtol)?;
        let coeff = -1.0 / (params.alpha() * pair.wronskian);
        let beta = beta_lambda(lambda)?;

        let u_hi = pair.u.hi();
        let end = 1.0 - PSI_DELTA_MIN;
        let u_ext = integrate_mode(&mode, u_hi, end, pair.u.eval_pair(u_hi), rtol)?;

        let n = params.n();
        let v_lo = pair.v.lo();
        let (v0, dv0) = pair.v.eval_pair(v_lo);
        let v_origin_a = dv0 * v_lo.powf(n - 1.0) / (2.0 - n);
        let v_origin_b = v0 - v_origin_a * v_lo.powf(2.0 - n);

        let mut grid = vec![0.0];
        for m in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
            let c = m * core.e;
            if c < 0.045 {
                grid.push(c);
            }
        }
        let mut x = 0.05;
        while x < 0.9005 {
            grid.push(x);
            x += 0.05;
        }
        let mut delta = 0.025;
        while delta > 1.5 * PSI_DELTA_MIN {
            grid.push(1.0 - delta);
            delta *= 0.25;
        }
        grid.push(end);
        grid.sort_by(f64::total_cmp);
        grid.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

        let len = grid.len();
        let mut solver = PsiSolver {
            params,
            lambda,
            core,
            pair,
            u_ext,
            v_origin_a,
            v_origin_b,
            coeff,
            beta,
            grid,
            prefix: Vec::new(),
            suffix: Vec::new(),
        };

        let mut prefix = vec![0.0; len];
        let mut suffix = vec![0.0; len];
        for i in 0..len - 1 {
            let piece = quad::integrate(
                |t| solver.g_u(t),
                solver.grid[i],
                solver.grid[i + 1],
                1e-300,
                rtol,
            )?;
            prefix[i + 1] = prefix[i] + piece.value;
        }
        // Analytic sliver of Q beyond the last grid point: the integrand is
        // asymptotically C delta^{beta-1}, so its integral over
        // (0, PSI_DELTA_MIN) equals (value at the edge) * delta / beta.
        suffix[len - 1] = solver.g_v(end) * PSI_DELTA_MIN / solver.beta;
        for i in (0..len - 1).rev() {
            let piece = quad::integrate(
                |t| solver.g_v(t),
                solver.grid[i],
                solver.grid[i + 1],
                1e-300,
                rtol,
            )?;
            suffix[i] = suffix[i + 1] + piece.value;
        }
        solver.prefix = prefix;
        solver.suffix = suffix;

        solver.check_weak_residual()?;
        Ok(solver)
    }

    /// `V(t) G_0(t)`: the source of the resolvent problem.
    fn source(&self, t: f64) -> f64 {
        let alpha = self.params.alpha();
        let omt = (1.0 - t) * (1.0 + t);
        alpha * alpha / (omt * omt) * self.core.g0(t)
    }

    /// Prefix integrand `u src t^{n-1}/alpha`.
    fn g_u(&self, t: f64) -> f64 {
        let (u, _) = self.u_pair(t);
        u * self.source(t) * t.powf(self.params.n() - 1.0) / self.params.alpha()
    }

    /// Suffix integrand `v src t^{n-1}/alpha`.
    fn g_v(&self, t: f64) -> f64 {
        let (v, _) = self.v_pair(t);
        v * self.source(t) * t.powf(self.params.n() - 1.0) / self.params.alpha()
    }

    /// `(u, u')` anywhere in `(0, 1 - PSI_DELTA_MIN]`: origin series, dense
    /// range, or the outward continuation. The `k = 0` origin exponent is
    /// exactly zero, so the stripped series *is* the branch.
    fn u_pair(&self, rho: f64) -> (f64, f64) {
        let u = &self.pair.u;
        if rho < u.lo() {
            self.pair.u_series.eval_stripped(rho)
        } else if rho <= u.hi() {
            u.eval_pair(rho)
        } else {
            self.u_ext.eval_pair(rho)
        }
    }

    /// `(v, v')` anywhere in `(0, 1)`: origin power model, dense range, or
    /// the boundary series `v = S(delta) (delta/delta_0)^beta`.
    fn v_pair(&self, rho: f64) -> (f64, f64) {
        let v = &self.pair.v;
        let delta = 1.0 - rho;
        if delta < self.pair.boundary_offset {
            let (s, ds) = self.pair.v_series.eval_stripped(delta);
            let b = self.pair.v_series.exponent;
            let lead = (delta / self.pair.boundary_offset).powf(b);
            // d/d rho = -d/d delta.
            (s * lead, -lead * (b * s / delta + ds))
        } else if rho >= v.lo() {
            v.eval_pair(rho)
        } else {
            let n = self.params.n();
            let val = self.v_origin_a * rho.powf(2.0 - n) + self.v_origin_b;
            let der = (2.0 - n) * self.v_origin_a * rho.powf(1.0 - n);
            (val, der)
        }
    }

    /// `(psi, psi')` at `rho`, for any `rho` (clamped behavior outside
    /// `(0, 1)`: `psi(0)` is the finite limit, `psi = 0` beyond the sphere).
    fn eval(&self, rho: f64) -> (f64, f64) {
        if rho >= 1.0 {
            return (0.0, 0.0);
        }
        if rho <= 0.0 {
            let (u0, _) = self.pair.u_series.eval_stripped(0.0);
            return (self.coeff * u0 * self.suffix[0], 0.0);
        }
        let end = *self.grid.last().expect("master grid is nonempty");
        if rho > end {
            // Inside the analytic sliver: the decaying power alone.
            let (psi_end, _) = self.eval(end);
            let delta = 1.0 - rho;
            let scale = (delta / PSI_DELTA_MIN).powf(self.beta);
            return (
                psi_end * scale,
                -psi_end * scale * self.beta / delta,
            );
        }
        let idx = self
            .grid
            .partition_point(|&g| g <= rho)
            .saturating_sub(1)
            .min(self.grid.len() - 2);
        let (p_part, _) = quad::gk15_once(|t| self.g_u(t), self.grid[idx], rho);
        let (q_part, _) = quad::gk15_once(|t| self.g_v(t), rho, self.grid[idx + 1]);
        let p_acc = self.prefix[idx] + p_part;
        let q_acc = self.suffix[idx + 1] + q_part;
        let (u, du) = self.u_pair(rho);
        let (v, dv) = self.v_pair(rho);
        (
            self.coeff * (v * p_acc + u * q_acc),
            self.coeff * (dv * p_acc + du * q_acc),
        )
    }

    /// Certify the constructed correction in weak form: for compactly
    /// supported C^2 bumps `q`, self-adjointness of `L_lambda` in the weight
    /// `t^{n-1}/alpha` gives
    ///
    /// ```text
    ///   int psi (-L_lambda q) t^{n-1}/alpha dt = int V G_0 q t^{n-1}/alpha dt,
    /// ```
    ///
    /// so the relative mismatch of the two sides is a genuine residual of
    /// the boundary-value problem, independent of how `psi` was produced.
    fn check_weak_residual(&self) -> Result<()> {
        for (a, b) in [(0.15, 0.45), (0.40, 0.80)] {
            let mid = 0.5 * (a + b);
            let gm = (mid - a) * (b - mid);
            let bump = |r: f64| {
                let g = (r - a) * (b - r);
                let dg = a + b - 2.0 * r;
                let q = (g / gm).powi(4);
                let dq = 4.0 * g.powi(3) * dg / gm.powi(4);
                let d2q = (12.0 * g.powi(2) * dg * dg - 8.0 * g.powi(3)) / gm.powi(4);
                (q, dq, d2q)
            };
            let n = self.params.n();
            let alpha = self.params.alpha();
            let lam = self.lambda;
            let lhs = quad::integrate(
                |r| {
                    let (q, dq, d2q) = bump(r);
                    let om = (1.0 - r) * (1.0 + r);
                    let lq = alpha * alpha * (d2q + (n - 1.0) / r * dq + lam / (om * om) * q);
                    let (psi, _) = self.eval(r);
                    psi * (-lq) * r.powf(n - 1.0) / alpha
                },
                a,
                b,
                1e-300,
                1e-9,
            )?;
            let rhs = quad::integrate(
                |r| {
                    let (q, _, _) = bump(r);
                    self.source(r) * q * r.powf(n - 1.0) / alpha
                },
                a,
                b,
                1e-300,
                1e-9,
            )?;
            let scale = rhs.value.abs().max(1e-300);
            let residual = (lhs.value - rhs.value).abs() / scale;
            if residual > 1e-6 {
                return Err(Error::Bvp(format!(
                    "corrector residual {residual:.3e} on ({a}, {b}) exceeds 1e-6"
                )));
            }
        }
        Ok(())
    }
}

/// Corrected profile `f = e^{(n-2)/2} (G_0 + lambda psi)`.
struct CorrectedProfile {
    core: CoreBubble,
    psi: Option<PsiSolver>,
    lambda: f64,
    /// `e^{(n-2)/2}` with `e = eps^alpha`.
    prefac: f64,
}

impl CorrectedProfile {
    fn corrector(&self, rho: f64) -> f64 {
        let psi = match &self.psi {
            Some(solver) => solver.eval(rho).0,
            None => 0.0,
        };
        self.core.h_const + self.lambda * psi
    }
}

impl RadialProfile for CorrectedProfile {
    fn value(&self, rho: f64) -> f64 {
        if rho >= 1.0 {
            return 0.0;
        }
        let psi = match &self.psi {
            Some(solver) => solver.eval(rho).0,
            None => 0.0,
        };
        self.prefac * (self.core.g0(rho) + self.lambda * psi)
    }

    fn derivative(&self, rho: f64) -> f64 {
        if rho >= 1.0 {
            return 0.0;
        }
        let dpsi = match &self.psi {
            Some(solver) => solver.eval(rho).1,
            None => 0.0,
        };
        // H is constant, so G_0' = Phi'.
        self.prefac * (self.core.phi_deriv(rho) + self.lambda * dpsi)
    }

    fn support_end(&self) -> f64 {
        1.0
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.5, 0.9];
        for m in [0.25, 1.0, 4.0] {
            let c = m * self.core.e;
            if c < 0.45 {
                pts.push(c);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts
    }

    fn boundary_exponent(&self) -> Option<f64> {
        // G_0 vanishes linearly; for lambda > 0 the slower psi ~ delta^beta
        // dominates.
        Some(if self.lambda > 0.0 {
            (1.0 + (1.0 - self.lambda).sqrt()) / 2.0
        } else {
            1.0
        })
    }
}

enum ProfileRepr {
    Bubble(BubbleProfile),
    Corrected(CorrectedProfile),
    Custom(Box<dyn RadialProfile + Send + Sync>),
}

impl ProfileRepr {
    fn as_profile(&self) -> &dyn RadialProfile {
        match self {
            ProfileRepr::Bubble(p) => p,
            ProfileRepr::Corrected(p) => p,
            ProfileRepr::Custom(p) => p.as_ref(),
        }
    }
}

/// A concrete radial test profile together with the bookkeeping constants
/// of its construction. Implements [`RadialProfile`], so it can be fed
/// straight into [`rayleigh_quotient`].
pub struct TestFamily {
    kind: FamilyKind,
    params: Params,
    lambda: f64,
    eps: f64,
    lagrange_constant: f64,
    repr: ProfileRepr,
}

impl TestFamily {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Width parameter of a built family; `NaN` for custom profiles.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// The conformal coupling constant `n(n-2) alpha^2 / 4`: the factor by
    /// which the square mass enters the ball/cone energy identity, and the
    /// Euler-Lagrange constant of the kappa-normalized bubble.
    pub fn lagrange_constant(&self) -> f64 {
        self.lagrange_constant
    }

    /// `H + lambda psi(rho)` for corrected families, `None` otherwise. As
    /// `eps -> 0` this converges pointwise to the Green corrector
    /// `chi_lambda` of [`crate::green_radial`].
    pub fn corrector(&self, rho: f64) -> Option<f64> {
        match &self.repr {
            ProfileRepr::Corrected(p) => Some(p.corrector(rho)),
            _ => None,
        }
    }

    /// The resolvent correction `psi(rho)` for corrected families built at
    /// `lambda > 0`.
    pub fn psi(&self, rho: f64) -> Option<f64> {
        match &self.repr {
            ProfileRepr::Corrected(p) => p.psi.as_ref().map(|solver| solver.eval(rho).0),
            _ => None,
        }
    }

    /// The constant boundary shift `H = -kappa (1+e^2)^{(2-n)/2}` for
    /// corrected families.
    pub fn harmonic_constant(&self) -> Option<f64> {
        match &self.repr {
            ProfileRepr::Corrected(p) => Some(p.core.h_const),
            _ => None,
        }
    }

    /// Wrap a caller-supplied profile with the family bookkeeping.
    pub fn custom(
        params: &Params,
        lambda: f64,
        profile: Box<dyn RadialProfile + Send + Sync>,
    ) -> Result<TestFamily> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Domain(format!(
                "lambda = {lambda} outside [0, 1]"
            )));
        }
        if !(profile.support_end() > 0.0) {
            return Err(Error::Domain(
                "custom profile has empty support".to_string(),
            ));
        }
        let n = params.n();
        let alpha = params.alpha();
        Ok(TestFamily {
            kind: FamilyKind::Custom,
            params: *params,
            lambda,
            eps: f64::NAN,
            lagrange_constant: n * (n - 2.0) * alpha * alpha / 4.0,
            repr: ProfileRepr::Custom(profile),
        })
    }
}

impl RadialProfile for TestFamily {
    fn value(&self, rho: f64) -> f64 {
        self.repr.as_profile().value(rho)
    }

    fn derivative(&self, rho: f64) -> f64 {
        self.repr.as_profile().derivative(rho)
    }

    fn support_end(&self) -> f64 {
        self.repr.as_profile().support_end()
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.repr.as_profile().breakpoints()
    }

    fn boundary_exponent(&self) -> Option<f64> {
        self.repr.as_profile().boundary_exponent()
    }
}

/// The cutoff bubble family at width `eps in (0, 1]`.
pub fn bubble_cutoff(params: &Params, eps: f64) -> Result<TestFamily> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Domain(format!(
            "bubble width eps = {eps} outside (0, 1]"
        )));
    }
    let n = params.n();
    let alpha = params.alpha();
    Ok(TestFamily {
        kind: FamilyKind::BubbleCutoff,
        params: *params,
        lambda: 0.0,
        eps,
        lagrange_constant: n * (n - 2.0) * alpha * alpha / 4.0,
        repr: ProfileRepr::Bubble(BubbleProfile {
            core: CoreBubble::new(params, eps),
            scale: eps.powf((n - 2.0) / 2.0),
        }),
    })
}

/// The corrected family `f = e^{(n-2)/2} (G_0 + lambda psi)`, `e = eps^alpha`.
///
/// Requires `n < 4` (so the square mass of the bubble converges and the
/// quotient expansion is governed by the mass term), `lambda in [0, 1)` and
/// `eps in (0, 1/4]`. Construction solves the resolvent problem for `psi`
/// and certifies it in weak form, so it costs a few tens of milliseconds.
pub fn corrected_test_function(params: &Params, lambda: f64, eps: f64) -> Result<TestFamily> {
    if params.n() >= 4.0 {
        return Err(Error::Domain(format!(
            "corrected family requires n < 4 (mass-dominated regime); got n = {}",
            params.n()
        )));
    }
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} outside [0, 1): the boundary exponent must exceed 1/2"
        )));
    }
    if !(eps > 0.0 && eps <= 0.25) {
        return Err(Error::Domain(format!(
            "corrected family width eps = {eps} outside (0, 1/4]"
        )));
    }
    let n = params.n();
    let alpha = params.alpha();
    let e = eps.powf(alpha);
    let core = CoreBubble::new(params, e);
    let psi = if lambda > 0.0 {
        Some(PsiSolver::new(*params, lambda, core, 1e-11)?)
    } else {
        None
    };
    Ok(TestFamily {
        kind: FamilyKind::Corrected,
        params: *params,
        lambda,
        eps,
        lagrange_constant: n * (n - 2.0) * alpha * alpha / 4.0,
        repr: ProfileRepr::Corrected(CorrectedProfile {
            core,
            psi,
            lambda,
            prefac: e.powf((n - 2.0) / 2.0),
        }),
    })
}

/// Quadratic form, p-norm and deficit of one profile at one `lambda`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuotientReport {
    /// `Q_lambda(f)`.
    pub q_form: f64,
    /// `||f||_p`.
    pub lp_norm: f64,
    /// `Q_lambda(f) / ||f||_p^2`.
    pub quotient: f64,
    /// `Q_lambda(f) - c_rad ||f||_p^2`.
    pub deficit: f64,
    /// Propagated quadrature error estimate for the deficit.
    pub quad_error: f64,
    /// Total integrand evaluations.
    pub evals: usize,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    value: f64,
    err: f64,
    evals: usize,
}

impl Tally {
    fn add(&mut self, q: &QuadResult) {
        self.value += q.value;
        self.err += q.err;
        self.evals += q.evals;
    }
}

/// Forced breakpoints for one interior run `[0, end]`.
fn segment_points(cuts: &[f64], end: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    for &c in cuts {
        if c > 1e-12 && c < end * (1.0 - 1e-12) {
            pts.push(c);
        }
    }
    pts.push(end);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    pts
}

/// Integral of `g` over the boundary layer `[3/4, 1)` by the substitution
/// `rho = 1 - s^2`: the adaptive pass covers `s in [S_FLOOR, 1/2]` and the
/// sliver below `S_FLOOR` is added in closed form assuming the integrand's
/// leading power, `h(s) ~ C s^{tail_denom - 1}`, i.e.
/// `int_0^s0 h = h(s0) s0 / tail_denom`.
fn boundary_layer(
    g: &dyn Fn(f64) -> f64,
    cuts: &[f64],
    tail_denom: f64,
    rtol: f64,
) -> Result<QuadResult> {
    let h = |s: f64| {
        let r = 1.0 - s * s;
        g(r) * 2.0 * s
    };
    let mut pts = vec![S_FLOOR];
    for &c in cuts {
        if c > BOUNDARY_SPLIT && c < 1.0 {
            let s = (1.0 - c).sqrt();
            if s > S_FLOOR * 1.01 && s < 0.4999 {
                pts.push(s);
            }
        }
    }
    pts.push(0.5);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut q = quad::integrate_segments(&h, &pts, 1e-300, rtol)?;
    q.value += h(S_FLOOR) * S_FLOOR / tail_denom;
    Ok(q)
}

/// Integral of `g` over `[far, infinity)` by `rho = 1/w`; requires `g` to
/// decay faster than `rho^{-1}` (true for every power-law profile handled
/// here).
fn cone_tail(g: &dyn Fn(f64) -> f64, far: f64, rtol: f64) -> Result<QuadResult> {
    quad::integrate(
        |w| {
            let r = 1.0 / w;
            g(r) / (w * w)
        },
        0.0,
        1.0 / far,
        1e-300,
        rtol,
    )
}

/// Evaluate `Q_lambda(f)`, `||f||_p` and the deficit against `c_rad` for a
/// radial profile.
///
/// Support handling:
///
/// * infinite support — only `lambda = 0` (the cone functional); the far
///   field is folded in by `rho -> 1/rho`;
/// * support strictly inside the unit ball — plain adaptive quadrature with
///   the profile's breakpoints forced;
/// * support reaching the sphere exactly — interior part up to `3/4` plus
///   the flattened boundary layer; the profile must declare its
///   [`RadialProfile::boundary_exponent`] `beta`, and the quadratic form
///   requires `beta > 1/2` (finiteness of the weighted Dirichlet integral).
pub fn rayleigh_quotient(
    params: &Params,
    lambda: f64,
    f: &dyn RadialProfile,
) -> Result<QuotientReport> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain(format!(
            "lambda = {lambda} outside [0, 1]"
        )));
    }
    let sup = f.support_end();
    if !(sup > 0.0) {
        return Err(Error::Domain(format!(
            "profile support end {sup} is not positive"
        )));
    }
    if lambda != 0.0 && !(sup <= 1.0) {
        return Err(Error::Domain(format!(
            "support end {sup} exceeds the unit ball: the weight (1-rho^2)^{{-2}} \
             requires support inside it for lambda != 0"
        )));
    }
    let n = params.n();
    let alpha = params.alpha();
    let p = params.p();
    let s_area = params.sphere_area();
    let c_rad = params.constants().c_rad;
    let rtol = 1e-9;

    let grad = |r: f64| {
        let d = f.derivative(r);
        d * d * r.powf(n - 1.0)
    };
    let pot = |r: f64| {
        let v = f.value(r);
        let om = (1.0 - r) * (1.0 + r);
        v * v * r.powf(n - 1.0) / (om * om)
    };
    let pmass = |r: f64| f.value(r).abs().powf(p) * r.powf(n - 1.0);

    let cuts = f.breakpoints();
    let mut ig = Tally::default();
    let mut ipot = Tally::default();
    let mut ip = Tally::default();

    if !sup.is_finite() {
        let far = 2.0_f64.max(3.0 * cuts.iter().fold(0.0f64, |m, &c| m.max(c)));
        let pts = segment_points(&cuts, far);
        ig.add(&quad::integrate_segments(&grad, &pts, 1e-300, rtol)?);
        ip.add(&quad::integrate_segments(&pmass, &pts, 1e-300, rtol)?);
        ig.add(&cone_tail(&grad, far, rtol)?);
        ip.add(&cone_tail(&pmass, far, rtol)?);
    } else if sup < 1.0 {
        let pts = segment_points(&cuts, sup);
        ig.add(&quad::integrate_segments(&grad, &pts, 1e-300, rtol)?);
        ip.add(&quad::integrate_segments(&pmass, &pts, 1e-300, rtol)?);
        if lambda != 0.0 {
            ipot.add(&quad::integrate_segments(&pot, &pts, 1e-300, rtol)?);
        }
    } else if sup == 1.0 {
        let beta = f.boundary_exponent().ok_or_else(|| {
            Error::Domain(
                "profile supported up to the sphere must declare its boundary decay \
                 exponent"
                    .to_string(),
            )
        })?;
        if !(beta > 0.5) {
            return Err(Error::Domain(format!(
                "boundary exponent beta = {beta} <= 1/2: the weighted Dirichlet \
                 integral diverges"
            )));
        }
        let pts = segment_points(&cuts, BOUNDARY_SPLIT);
        ig.add(&quad::integrate_segments(&grad, &pts, 1e-300, rtol)?);
        ip.add(&quad::integrate_segments(&pmass, &pts, 1e-300, rtol)?);
        // Transformed leading powers: gradient and weight integrands are
        // s^{4 beta - 3} after rho = 1 - s^2 (denominator 4 beta - 2); the
        // p-mass integrand is s^{2 p beta + 1} (denominator 2 p beta + 2).
        ig.add(&boundary_layer(&grad, &cuts, 4.0 * beta - 2.0, rtol)?);
        ip.add(&boundary_layer(&pmass, &cuts, 2.0 * p * beta + 2.0, rtol)?);
        if lambda != 0.0 {
            ipot.add(&quad::integrate_segments(&pot, &pts, 1e-300, rtol)?);
            ipot.add(&boundary_layer(&pot, &cuts, 4.0 * beta - 2.0, rtol)?);
        }
    } else {
        // sup in (1, infinity): only the cone functional applies.
        let pts = segment_points(&cuts, sup);
        ig.add(&quad::integrate_segments(&grad, &pts, 1e-300, rtol)?);
        ip.add(&quad::integrate_segments(&pmass, &pts, 1e-300, rtol)?);
    }

    let q_form = alpha * s_area * (ig.value - lambda * ipot.value);
    let pmass_total = s_area / alpha * ip.value;
    if !(pmass_total > 0.0) {
        return Err(Error::Domain(
            "profile has vanishing p-mass: the quotient is undefined".to_string(),
        ));
    }
    let lp_norm = pmass_total.powf(1.0 / p);
    let lp_sq = lp_norm * lp_norm;
    let quotient = q_form / lp_sq;
    let deficit = q_form - c_rad * lp_sq;

    let q_err = alpha * s_area * (ig.err + lambda * ipot.err);
    let lp_sq_err = if ip.value > 0.0 {
        (2.0 / p) * lp_sq / ip.value * ip.err
    } else {
        0.0
    };
    Ok(QuotientReport {
        q_form,
        lp_norm,
        quotient,
        deficit,
        quad_error: q_err + c_rad * lp_sq_err,
        evals: ig.evals + ipot.evals + ip.evals,
    })
}

/// Square mass `int F^2 d mu_H = (S/alpha) int f^2 phi^2 rho^{n-1} d rho`
/// of the hyperbolic transplant `F = phi^{-(n-2)/2} f`, `phi = 2/(1-rho^2)`,
/// of a profile supported in the closed unit ball.
pub fn hyperbolic_square_mass(params: &Params, f: &dyn RadialProfile) -> Result<f64> {
    let sup = f.support_end();
    if !(sup > 0.0 && sup <= 1.0) {
        return Err(Error::Domain(format!(
            "square mass requires support in the unit ball; support end = {sup}"
        )));
    }
    let n = params.n();
    let rtol = 1e-9;
    let g = |r: f64| {
        let v = f.value(r);
        let om = (1.0 - r) * (1.0 + r);
        4.0 * v * v * r.powf(n - 1.0) / (om * om)
    };
    let cuts = f.breakpoints();
    let mut total = 0.0;
    if sup < 1.0 {
        let pts = segment_points(&cuts, sup);
        total += quad::integrate_segments(&g, &pts, 1e-300, rtol)?.value;
    } else {
        let beta = f.boundary_exponent().ok_or_else(|| {
            Error::Domain(
                "profile supported up to the sphere must declare its boundary decay \
                 exponent"
                    .to_string(),
            )
        })?;
        if !(beta > 0.5) {
            return Err(Error::Domain(format!(
                "boundary exponent beta = {beta} <= 1/2: the square mass diverges"
            )));
        }
        let pts = segment_points(&cuts, BOUNDARY_SPLIT);
        total += quad::integrate_segments(&g, &pts, 1e-300, rtol)?.value;
        total += boundary_layer(&g, &cuts, 4.0 * beta - 2.0, rtol)?.value;
    }
    Ok(params.sphere_area() / params.alpha() * total)
}

/// One row of a [`deficit_scaling`] table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DeficitRow {
    pub eps: f64,
    /// `Q_0(f_eps) - c_rad ||f_eps||_p^2`.
    pub deficit: f64,
    /// Hyperbolic square mass of the transplanted profile.
    pub f2_mass: f64,
    /// `deficit / f2_mass`.
    pub ratio: f64,
}

/// Deficit-scaling table for the cutoff bubbles.
#[derive(Debug, Clone, Serialize)]
pub struct DeficitTable {
    pub rows: Vec<DeficitRow>,
    /// Log-log slope of `deficit` against `eps`; the bubble rate is `n - 2`.
    pub slope: f64,
}

/// Tabulate the `lambda = 0` deficit and the hyperbolic square mass of the
/// cutoff bubbles over a ladder of widths. The deficit decays like
/// `eps^{n-2}` for every admissible `(d, n, alpha)`, while the square mass
/// decays like `eps^2` for `n > 4` (with a logarithm at `n = 4`): their
/// ratio therefore tends to zero exactly when `n >= 4`, the regime where
/// no finite-mass correction can beat the bubble.
pub fn deficit_scaling(params: &Params, eps_list: &[f64]) -> Result<DeficitTable> {
    if eps_list.is_empty() {
        return Err(Error::Domain("empty eps ladder".to_string()));
    }
    let rows: Result<Vec<DeficitRow>> = eps_list
        .par_iter()
        .map(|&eps| {
            let fam = bubble_cutoff(params, eps)?;
            let report = rayleigh_quotient(params, 0.0, &fam)?;
            let f2 = hyperbolic_square_mass(params, &fam)?;
            Ok(DeficitRow {
                eps,
                deficit: report.deficit,
                f2_mass: f2,
                ratio: report.deficit / f2,
            })
        })
        .collect();
    let rows = rows?;
    let eps: Vec<f64> = rows.iter().map(|r| r.eps).collect();
    let dev: Vec<f64> = rows
        .iter()
        .map(|r| r.deficit.abs().max(1e-300))
        .collect();
    let slope = fit_log_slope(&eps, &dev);
    Ok(DeficitTable { rows, slope })
}

/// One row of a [`mass_sign_experiment`] table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SignRow {
    pub eps: f64,
    /// `Q_lambda(f_eps) / ||f_eps||_p^2`.
    pub quotient: f64,
    /// `quotient - c_rad`.
    pub gap: f64,
}

/// Sign-experiment table for the corrected family.
#[derive(Debug, Clone, Serialize)]
pub struct SignTable {
    pub rows: Vec<SignRow>,
    /// Log-log slope of `|gap|` against `eps`; the predicted rate is
    /// `alpha (n - 2)`.
    pub exponent: f64,
}

/// Measure the quotient gap `Q_lambda(f_eps)/||f_eps||_p^2 - c_rad` of the
/// corrected family over a ladder of widths. The expansion
/// `quotient = c_rad (1 - c m_lambda eps^{alpha(n-2)} + o(eps^{alpha(n-2)}))`
/// with `c > 0` makes the gap's sign opposite to the mass: negative mass
/// (below the threshold) gives positive gaps, while positive mass drives
/// the quotient *below* `c_rad`, disproving optimality of the radial
/// constant at that `lambda`.
pub fn mass_sign_experiment(
    params: &Params,
    lambda: f64,
    eps_list: &[f64],
) -> Result<SignTable> {
    if eps_list.is_empty() {
        return Err(Error::Domain("empty eps ladder".to_string()));
    }
    let c_rad = params.constants().c_rad;
    let rows: Result<Vec<SignRow>> = eps_list
        .par_iter()
        .map(|&eps| {
            let fam = corrected_test_function(params, lambda, eps)?;
            let report = rayleigh_quotient(params, lambda, &fam)?;
            Ok(SignRow {
                eps,
                quotient: report.quotient,
                gap: report.quotient - c_rad,
            })
        })
        .collect();
    let rows = rows?;
    let eps: Vec<f64> = rows.iter().map(|r| r.eps).collect();
    let gaps: Vec<f64> = rows.iter().map(|r| r.gap.abs().max(1e-300)).collect();
    let exponent = fit_log_slope(&eps, &gaps);
    Ok(SignTable { rows, exponent })
}

/// Upper bound for the bottom of the spectrum of the weighted hyperbolic
/// Laplacian over radial functions supported in `rho <= support_cap`:
///
/// ```text
///   min  alpha^2 int F'^2 phi^{n-2} rho^{n-1} d rho
///        -----------------------------------------  ,   phi = 2/(1-rho^2),
///             int F^2  phi^n     rho^{n-1} d rho
/// ```
///
/// over continuous piecewise-linear `F` on `mesh_size` elements (natural
/// condition at the origin, Dirichlet at the cap). The mesh is uniform up
/// to `0.9` and geometric in `1 - rho` beyond, so huge caps like
/// `1 - 1e-12` are resolved; element integrals use 4-point Gauss-Legendre
/// and the generalized eigenvalue comes from Sturm bisection on the
/// tridiagonal pencil.
///
/// The analytic bottom over the *whole* ball is
/// `lambda_1 = (n-1)^2 alpha^2 / 4`, approached like
/// `alpha^2 pi^2 / ln(2/(1-cap))^2` as the cap closes: at `cap = 1 - 1e-4`
/// the excess is still ~`0.10 alpha^2`, at `1 - 1e-12` it is ~`0.012
/// alpha^2`. The discrete value is a true upper bound, so it never drops
/// below `lambda_1` beyond quadrature roundoff.
pub fn spectral_gap(params: &Params, mesh_size: usize, support_cap: f64) -> Result<f64> {
    if !(16..=100_000).contains(&mesh_size) {
        return Err(Error::Domain(format!(
            "mesh size {mesh_size} outside [16, 100000]"
        )));
    }
    if !(support_cap > 0.0 && support_cap < 1.0) {
        return Err(Error::Domain(format!(
            "support cap {support_cap} outside (0, 1)"
        )));
    }
    let n = params.n();
    let a2 = params.alpha() * params.alpha();

    let mut nodes = Vec::with_capacity(mesh_size + 1);
    if support_cap <= 0.92 {
        for i in 0..=mesh_size {
            nodes.push(support_cap * i as f64 / mesh_size as f64);
        }
    } else {
        let n1 = mesh_size / 2;
        let n2 = mesh_size - n1;
        for i in 0..=n1 {
            nodes.push(0.9 * i as f64 / n1 as f64);
        }
        let dcap = 1.0 - support_cap;
        let log_ratio = (dcap / 0.1).ln();
        for i in 1..=n2 {
            let delta = 0.1 * (log_ratio * i as f64 / n2 as f64).exp();
            nodes.push(1.0 - delta);
        }
        let last = nodes.len() - 1;
        nodes[last] = support_cap;
    }

    let ne = nodes.len() - 1;
    // Unknowns: nodes 0..ne (the last node is Dirichlet).
    let mut a_diag = vec![0.0; ne];
    let mut a_off = vec![0.0; ne - 1];
    let mut m_diag = vec![0.0; ne];
    let mut m_off = vec![0.0; ne - 1];
    for el in 0..ne {
        let (xl, xr) = (nodes[el], nodes[el + 1]);
        let h = xr - xl;
        let mut ka = 0.0;
        let mut m_ll = 0.0;
        let mut m_lr = 0.0;
        let mut m_rr = 0.0;
        for (xi, w) in GL4 {
            let r = 0.5 * (xl + xr) + 0.5 * h * xi;
            let wq = 0.5 * h * w;
            let phi = 2.0 / ((1.0 - r) * (1.0 + r));
            let weight_r = r.powf(n - 1.0);
            let wa = a2 * phi.powf(n - 2.0) * weight_r;
            let wm = phi.powf(n) * weight_r;
            ka += wq * wa / (h * h);
            let nl = (xr - r) / h;
            let nr = (r - xl) / h;
            m_ll += wq * wm * nl * nl;
            m_lr += wq * wm * nl * nr;
            m_rr += wq * wm * nr * nr;
        }
        a_diag[el] += ka;
        m_diag[el] += m_ll;
        if el + 1 < ne {
            a_diag[el + 1] += ka;
            a_off[el] -= ka;
            m_diag[el + 1] += m_rr;
            m_off[el] += m_lr;
        }
    }
    let pencil = TridiagPencil {
        a_diag,
        a_off,
        m_diag,
        m_off,
    };
    pencil.smallest_eigenvalue()
}

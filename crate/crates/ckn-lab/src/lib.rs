//! Numerical laboratory for weighted Sobolev inequalities of
//! Caffarelli–Kohn–Nirenberg type on cones and their hyperbolic
//! counterparts on the unit ball.
//!
//! A triple `(d, n, alpha)` — ambient dimension, effective dimension and
//! cone deformation — fixes a weighted critical Sobolev inequality whose
//! radial sector this crate explores end to end:
//!
//! * [`params`] derives the coupled constants: the critical exponent
//!   `p = 2n/(n-2)`, the weight chart `(a, b)`, the Green normalization
//!   `kappa`, the spectral bottom `lambda_1`, the volume factor `Z` and
//!   the sharp radial constant `c_rad`, plus the admissibility checks.
//! * [`radial_ode`] integrates the radial mode equations: Frobenius
//!   expansions at the origin and boundary, adaptive stepping in between,
//!   and Wronskian bookkeeping for the two-branch solution pairs.
//! * [`green_radial`] glues the branches into the radial Green function
//!   `G_lambda`, splits off the fundamental solution `Phi` to expose the
//!   bounded corrector `chi_lambda = G_lambda - Phi`, and recombines
//!   angular modes into two-point kernels with envelope verification.
//! * [`mass`] integrates the corrector identity down to the origin value
//!   `m_lambda` of `chi_lambda` — the mass — and bisects for the radial
//!   threshold `lambda_*^rad = max { lambda <= 1 : m_lambda <= 0 }`.
//! * [`variational`] builds concentrating test families (cutoff bubbles
//!   and mass-corrected profiles), evaluates Rayleigh quotients with
//!   boundary-layer quadrature, runs the deficit-scaling and mass-sign
//!   experiments, and bounds the spectral bottom with P1 finite elements.
//! * [`cli`] wraps everything in the `ckn` binary: one command per
//!   computation, deterministic CSV/JSON artifacts.
//!
//! The headline phenomenon: for `n < 4` the mass is finite and its sign
//! decides whether concentrating families stay above the sharp constant
//! (`m_lambda < 0`) or dip below it (`m_lambda > 0`), with the threshold
//! `lambda_*^rad` separating the two regimes.  At the closed-form corner
//! `d = 3, n = 3, alpha = 1` the mass is `-sqrt(1 - lambda) / (4 pi)`
//! and the threshold sits exactly at `1`.
//!
//! # Where to start
//!
//! Each capability has a runnable example (`cargo run --example <name>`):
//!
//! | example | capability |
//! |---|---|
//! | `constants_tour` | derived constants, `(a, b)` chart, admissibility |
//! | `mass_and_threshold` | `m_lambda` vs closed forms, `lambda_*^rad` |
//! | `mass_sweep_table` | mass tables across `n`, divergence tagging |
//! | `green_profile` | `G_lambda`, `Phi`, `chi_lambda` profiles |
//! | `two_point_kernel` | zonal mode sums vs Newtonian and hyperbolic kernels |
//! | `kernel_envelopes` | quasi-random two-sided envelope verification |
//! | `sharp_constant_check` | extremal bubble attains `c_rad`; conformal identities |
//! | `deficit_scaling` | deficit slope `n - 2`; the `n = 4` crossover |
//! | `corrector_profile` | resolvent corrector vs `chi_lambda` |
//! | `sign_experiment` | quotient gap driven by the sign of the mass |
//! | `spectral_bottom` | finite-element bound for `lambda_1` |
//!
//! The same functionality ships as the `ckn` binary; see `ckn --help`.
//!
//! ```
//! use ckn_lab::params::make_params;
//! use ckn_lab::mass::{lambda_star_rad, mass};
//!
//! let params = make_params(3, 3.0, 1.0)?;
//! let m = mass(&params, 0.75, 1e-10)?.m;
//! assert!((m + 0.25f64.sqrt() / (4.0 * std::f64::consts::PI)).abs() < 1e-9);
//! let star = lambda_star_rad(&params, 1e-8)?;
//! assert!((star - 1.0).abs() < 1e-6);
//! # Ok::<(), ckn_lab::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod green_radial;
pub mod mass;
pub mod numerics;
pub mod params;
pub mod radial_ode;
pub mod variational;

pub use error::{Error, Result};
pub use params::{ConstantsRecord, Params};

//! Error taxonomy shared by every module of the crate.
//!
//! The variants mirror the failure modes of the numerical pipelines:
//! parameter validation (`Domain`), Frobenius seeding (`Resonance`),
//! adaptive integration (`Step`, `Quadrature`), Green-function assembly
//! (`DegeneratePair`, `Normalization`, `Truncation`), the mass integral
//! (`DivergentMass`), the corrected-family solve (`Bvp`) and the
//! spectral-gap eigensolve (`Eigen`).

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions surfaced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter bundle or function argument violates its preconditions.
    #[error("domain error: {0}")]
    Domain(String),

    /// The Frobenius recurrence divides by zero: the indicial exponents
    /// differ by a nonnegative even integer and the offending right-hand
    /// side does not vanish, so the requested branch carries a log term.
    /// Surfaced rather than silently inserting log terms.
    #[error(
        "indicial resonance at {endpoint}: exponents differ by integer {gap}, \
         series coefficient c_{index} is not determined"
    )]
    Resonance {
        /// Which singular endpoint was being seeded.
        endpoint: &'static str,
        /// Difference of the two indicial exponents.
        gap: f64,
        /// Index of the coefficient whose recurrence broke down.
        index: usize,
    },

    /// The adaptive step controller underflowed near an endpoint.
    #[error("step failure at rho = {rho:.6e}: step size underflowed to {h:.3e}")]
    Step {
        /// Location where the controller gave up.
        rho: f64,
        /// Final (rejected) step size.
        h: f64,
    },

    /// The two branches of a solution pair are numerically proportional;
    /// lambda would be a Dirichlet eigenvalue of the mode operator.
    /// Cannot occur for lambda <= 1; surfaced defensively.
    #[error("degenerate solution pair: |wronskian| = {wronskian:.3e} below {threshold:.3e}")]
    DegeneratePair {
        /// The measured Wronskian constant.
        wronskian: f64,
        /// The scale-relative threshold it fell below.
        threshold: f64,
    },

    /// The matched singular coefficient A of a Green profile is not positive,
    /// so the profile cannot be rescaled to the kappa normalization.
    #[error("normalization error: singular coefficient A = {a:.6e} is not positive")]
    Normalization {
        /// The offending coefficient.
        a: f64,
    },

    /// The zonal mode sum was truncated while the last retained term was
    /// still larger than 1e-6 of the partial sum. The partial value is
    /// carried so callers may keep it with a warning.
    #[error(
        "truncation warning: last mode term is {tail_ratio:.3e} of the partial sum \
         (threshold 1e-6) at k_max = {k_max}"
    )]
    Truncation {
        /// Partial sum at the cap.
        partial: f64,
        /// |last term| / |partial sum|.
        tail_ratio: f64,
        /// Mode cap that was in force.
        k_max: usize,
    },

    /// The mass integral diverges: the integrand behaves like rho^(3-n)
    /// near the origin, so n >= 4 is out of range.
    #[error("divergent mass: requires n < 4, got n = {n}")]
    DivergentMass {
        /// The offending effective dimension.
        n: f64,
    },

    /// The linear two-point boundary problem for the corrected family did
    /// not meet its residual tolerance.
    #[error("bvp failure: {0}")]
    Bvp(String),

    /// The generalized eigenvalue solve for the spectral gap broke down.
    #[error("eigensolver failure: {0}")]
    Eigen(String),

    /// An adaptive quadrature failed to reach the requested tolerance.
    #[error(
        "quadrature failure: error estimate {err:.3e} above tolerance {tol:.3e} \
         after {evals} evaluations"
    )]
    Quadrature {
        /// Achieved error estimate.
        err: f64,
        /// Requested tolerance.
        tol: f64,
        /// Number of integrand evaluations spent.
        evals: usize,
    },

    /// Output could not be written.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code the CLI maps this error to: 2 for domain errors,
    /// 4 for i/o, 3 for every numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}

//! Shared numerical kernels: quadrature, ODE integration, special-function
//! recurrences, root finding, fitting, low-discrepancy sampling, and a
//! tridiagonal eigenvalue solver.
//!
//! Everything here is problem-agnostic; the weighted-cone specifics live in
//! the domain modules that call into these kernels.

pub mod fit;
pub mod legendre;
pub mod lowdisc;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod tridiag;

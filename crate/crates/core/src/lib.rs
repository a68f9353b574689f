//! Numerical kernels for checking fractional Ostrowski-type inequalities.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`specfun`]: Γ, ln Γ and the Euler Beta function for positive arguments.
//! * [`quad`]: adaptive Gauss–Kronrod, Gauss–Jacobi and composite midpoint rules.
//! * [`funcatalog`]: test functions with exact derivatives, s-convexity
//!   certification by grid sampling and derivative bounds.
//! * [`fracint`]: Riemann–Liouville fractional integrals with the endpoint
//!   singularity removed by a power substitution.
//! * [`identity`]: residual checks of the fractional Ostrowski identity.
//! * [`bounds`]: both sides of every fractional and classical inequality.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod error;
pub mod fracint;
pub mod funcatalog;
pub mod identity;
pub(crate) mod math;
pub mod quad;
pub mod specfun;

pub use bounds::{InequalityReport, TheoremId, Tolerances, Verdict};
pub use error::{Error, Result};
pub use fracint::{FracParams, QuadratureConfig, Rule};
pub use funcatalog::{CatalogEntry, ConvexityCertificate, DerivBound, Function1D, Mode, Target};
pub use identity::IdentityResidual;
pub use quad::Estimate;

//! Numerical verification engine for Voronoi-type summation formulas and
//! Cohen / Ramanujan–Guinand identities attached to λ(n), μ(n), d²(n) and
//! σ_a(n)σ_b(n), including the sums over non-trivial zeros of ζ(s).
//!
//! Modules are layered bottom-up: [`quad`] and [`specfun`] provide numerics,
//! [`zeta`] and [`arith`] the two "sides" of every identity, [`identities`]
//! the verifiers, and [`riesz`] the finite-range oscillation diagnostics.

pub mod arith;
pub mod error;
pub mod identities;
pub mod quad;
pub mod riesz;
pub mod selftest;
pub mod specfun;
pub mod sum;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Version string embedded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

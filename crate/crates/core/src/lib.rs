//! Derivative reproducing kernels of de Branges-Rovnyak spaces on the upper half-plane.
//!
//! The crate has three layers:
//! - [`combinatorics`] certifies the binomial and hypergeometric identities behind the
//!   norm formula in exact rational arithmetic;
//! - [`analytic`], [`kernels`] and [`quadrature`] evaluate functions in the unit ball of
//!   `H^inf`, their derivative jets, the kernels `k^b_{w,n}` and `k^rho_{w,n}`, and the
//!   integral representations of `f^(n)`;
//! - [`experiments`] bundles the boundary checks (condition report, coefficient
//!   identities, lambda relations, norm convergence, the odd-s probe).

pub mod analytic;
pub mod combinatorics;
pub mod error;
pub mod experiments;
pub mod kernels;
pub mod quadrature;
pub mod real;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex64;

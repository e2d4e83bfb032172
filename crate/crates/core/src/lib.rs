//! Rank estimation for high-dimensional covariance matrices.
//!
//! The crate has three layers:
//!
//! * [`rmt`] — population-side random-matrix machinery: spectral
//!   distributions `H`, the generalized Marchenko-Pastur model `(c, H)`,
//!   the spike map `psi`, support edges, Stieltjes transform, bulk
//!   density and the penalty limit `kappa`.
//! * [`spectra`], [`criteria`], [`alt`] — sample-side computations: the
//!   eigenvalue inputs and the sixteen rank estimators (nine information
//!   criteria plus seven comparison methods).
//! * [`gap`], [`simgen`] — the gap-condition analyzer and the seeded
//!   simulation engine that reproduces the accuracy studies.
//!
//! Everything is deterministic given its inputs; random draws always come
//! from a caller-supplied generator. The crate is `no_std`-compatible
//! (with `alloc`) when built without the `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod alt;
pub mod criteria;
mod error;
pub(crate) mod fmath;
pub mod gap;
pub mod hspec;
pub(crate) mod linalg;
mod method;
pub(crate) mod quad;
pub mod rmt;
pub mod seed;
pub mod simgen;
pub mod spectra;

pub use error::Error;
pub use method::Method;

pub type Result<T> = core::result::Result<T, Error>;

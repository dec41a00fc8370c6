//! Dynamics of the real rational family `f(x) = (x^2 - a)/(x^2 - b)` seen
//! through the numerical range of its coefficient matrix.
//!
//! The crate is organised around one pipeline:
//!
//! * [`numrange`] — dense complex-matrix kernel: Hermitian splitting,
//!   Rayleigh quotients, the 2x2 elliptical range, support functions and the
//!   Kippenhahn tangent-line form, plus the 4x4 resultant matrix `B` and its
//!   unitary block decomposition into `A2 (+) A2`.
//! * [`ratmap`] — the map `f` on the one-point compactification of the reals:
//!   evaluation, special points, fixed points and orbit iteration.
//! * [`embedding`] — the map `z(x) = g(x) + i h(x)` carrying the graph of `f`
//!   onto the ellipse `Omega` inscribed in `W(A2)`.
//! * [`partition`] — the thirteen partition points `x1 < ... < x13`, the
//!   interval partition, the arc partition of `Omega`, and the involutory
//!   transfer matrix `T14`.
//! * [`symdyn`] — itineraries over the interval and arc alphabets,
//!   periodicity detection, the conjecture-evidence harness and grid scans.
//!
//! Everything is pure and deterministic; the crate is `no_std` (alloc only).

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub(crate) mod poly;

pub mod embedding;
pub mod numrange;
pub mod partition;
pub mod ratmap;
pub mod symdyn;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

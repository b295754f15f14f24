//! Reduced Green's functions for chains of δ-potentials.
//!
//! The crate builds the free-space reduced Green's function of a 1D
//! operator (rectangular, cylindrical, spherical or a confining harmonic
//! oscillator), corrects it for a chain of δ walls at finite or infinite
//! coupling, and locates the roots of the characteristic determinant that
//! give the constrained spectrum.
//!
//! * [`specfun`]: gamma, Bessel, Kummer and parabolic cylinder functions.
//! * [`greens`]: free-space Green's functions behind the [`greens::FreeGreens`] trait.
//! * [`chain`]: boundary matrices, finite/strong-coupling corrections, LU.
//! * [`spectrum`]: sign-change scanning, Brent refinement and the spectra.
//! * [`cli`]: the `greenchain` command-line surface.

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod cli;
pub mod error;
pub mod greens;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};

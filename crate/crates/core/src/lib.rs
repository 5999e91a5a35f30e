//! Benford's-law analysis for linear recurrences
//! `a_{n+k} = c_{k-1} a_{n+k-1} + ... + c_1 a_{n+1} + c_0 a_n`.
//!
//! The crate decides, from the exact rational coefficients of a recurrence,
//! whether the sequence it generates follows Benford's law in a given base,
//! in every base, or in all but a sparse set of exceptional bases, and it
//! verifies those verdicts empirically by simulating the sequence in log
//! space.
//!
//! Layout:
//! - [`recurrence`], [`poly`], [`rational`]: exact data model.
//! - [`structure`]: companion matrix and boolean primitivity analysis.
//! - [`spectral`]: root finding, certified dominant roots and Perron limits.
//! - [`engine`]: mantissas, log-space streams and first-digit statistics.
//! - [`classify`] and [`number_theory`]: the decision procedures.
//! - [`lab`]: the Pisot family and the prime-subsequence demo.
//!
//! Numerical code is generic over [`Real`] (`f32`, `f64` and the double-double
//! [`Extended`]); the `*64` aliases below fix the scalar to `f64`.

#![forbid(unsafe_code)]
// `!(x > 0)` is used deliberately so that NaN takes the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod engine;
pub mod error;
pub mod lab;
pub mod number_theory;
pub mod poly;
pub mod rational;
pub mod recurrence;
pub mod scalar;
pub mod spectral;
pub mod structure;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::Rational;
pub use recurrence::{IndexSet, Recurrence};
pub use scalar::Real;

/// Double-double scalar (about 106 significand bits) used for the
/// extended-precision root pass.
pub type Extended = twofloat::TwoFloat;

pub type RootSet64 = spectral::RootSet<f64>;
pub type RootInterval64 = spectral::RootInterval<f64>;
pub type SpectralProfile64 = spectral::SpectralProfile<f64>;
pub type PerronLimit64 = spectral::PerronLimit<f64>;
pub type LogTerm64 = engine::LogTerm<f64>;
pub type BenfordStats64 = engine::BenfordStats<f64>;
pub type MantissaSample64 = engine::MantissaSample<f64>;

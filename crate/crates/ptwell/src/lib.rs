//! Bound states of the purely imaginary square well.
//!
//! The potential is `-iT²` for `x < -π`, zero on `(-π, π)` and `+iT²` for
//! `x > π` (units `ħ = 2m = 1`). Although the Hamiltonian is not Hermitian,
//! it commutes with the combined parity/complex-conjugation operation and
//! every bound-state energy is real. Each level is fixed by a single root
//! `ω_N ∈ (0, 1)` of a transcendental secular equation,
//!
//! ```text
//! sin(πω/2) = (2N + 2 - ω) / (4T) · sqrt(2 cos(πω/2)),   N = 0, 1, ...
//! ```
//!
//! from which momentum `k = (2N + 2 - ω)/4`, energy `E = k²` and the complex
//! decay constant `σ = p + iq` of the evanescent tails all follow in closed
//! form.
//!
//! Module map:
//!
//! * [`model`] — domain types and the exact `α`-parametrization tying the
//!   root variable to momentum, energy and `σ`.
//! * [`secular`] — root solvers for the secular equation (bracketed Brent
//!   and a damped fixed-point iteration), branch identities, and the weak-
//!   and strong-coupling estimators.
//! * [`wavefunc`] — piecewise complex wave functions with their matching
//!   diagnostics at `x = ±π`.
//! * [`oracle`] — an independent finite-difference eigensolver on a
//!   truncated domain plus the dense sign-change scan, used to certify the
//!   analytic spectrum without sharing code paths with it.
//! * [`analysis`] — energy bounds, Hermitian/free limiting levels, regime
//!   diagnostics and spectrum-table assembly.
//!
//! All numerics are generic over the scalar type through the [`Real`] trait
//! (`f64` in practice, `f32` compiles and works at reduced accuracy); the
//! crate root exports `f64` aliases for the main types.
//!
//! ```
//! use ptwell::model::{LevelIndex, WellSpec};
//! use ptwell::secular::solve_level;
//! use ptwell::wavefunc::WaveFunction;
//!
//! let spec = WellSpec::new(1.0_f64)?;
//! let ground = solve_level(&spec, LevelIndex(0), 1e-13)?;
//! let energy: f64 = ground.energy();
//! assert!((energy - 0.16842505687110540).abs() < 1e-12);
//!
//! let wf = WaveFunction::build(ground)?;
//! assert_eq!(wf.eval(0.0), ptwell::Complex::new(1.0, 0.0));
//! # Ok::<(), ptwell::Error>(())
//! ```

// Negated comparisons like `!(t > 0)` are deliberate throughout: they
// reject NaN arguments where the positive form would let them through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
mod error;
pub mod model;
pub mod oracle;
mod scalar;
pub mod secular;
pub mod wavefunc;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex number over the crate's generic scalar.
pub type Complex<F> = num_complex::Complex<F>;

/// Double-precision aliases for the main domain types.
pub type WellSpec64 = model::WellSpec<f64>;
pub type SigmaParts64 = model::SigmaParts<f64>;
pub type Level64 = model::Level<f64>;
pub type SecularRoot64 = secular::SecularRoot<f64>;
pub type WaveFunction64 = wavefunc::WaveFunction<f64>;
pub type OracleConfig64 = oracle::OracleConfig<f64>;
pub type SpectrumRow64 = analysis::SpectrumRow<f64>;

//! Numerical harmonic analysis on the periodic torus `[0,1)^d`, `d ∈ {1, 2}`.
//!
//! The crate is `no_std` (it needs `alloc`) and carries every numerical
//! piece of the toolkit:
//!
//! * [`grid`] and [`spectral`]: lattice fields, the unit-coefficient discrete
//!   Fourier transform and Bessel potentials `J_s`.
//! * [`littlewood_paley`]: the smooth dyadic partition of unity and the block
//!   operators `Δ_j`.
//! * [`function_spaces`] and [`embedding`]: Fourier–Lebesgue, Besov and
//!   Triebel–Lizorkin norms, and the exact index predicates for embeddings
//!   into `FL^r` and for FIO boundedness.
//! * [`symbols`] and [`phases`]: symbols of class `S^m_{1,0}`, complex phases
//!   of positive type, and their validity checks.
//! * [`fio`]: direct-summation Fourier integral operators.
//! * [`hyperbolic`]: the factorised solver for `P v = 0` with complex simple
//!   characteristics.
//! * [`probe`]: test families, growth fits and threshold/embedding scans.
//!
//! File formats, JSON schemas and the command line live in the `hypfl` crate.

#![no_std]
#![deny(rust_2018_idioms, unused_must_use)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod embedding;
pub mod error;
pub mod exec;
mod fft;
pub mod fio;
pub mod function_spaces;
pub mod grid;
pub mod hyperbolic;
pub mod index;
pub mod littlewood_paley;
pub mod phases;
pub mod probe;
pub mod spectral;
pub mod symbols;
pub mod trigpoly;

pub use error::{Error, Result};
pub use grid::{GridFunction, GridSpec, SpectralFunction};
pub use num_complex::Complex64;

/// Japanese bracket `⟨k⟩ = (1 + |k|²)^{1/2}`.
#[inline]
pub fn bracket(k: &[f64]) -> f64 {
    libm::sqrt(1.0 + k.iter().map(|v| v * v).sum::<f64>())
}

/// Euclidean norm of a frequency vector.
#[inline]
pub fn freq_norm(k: &[f64]) -> f64 {
    libm::sqrt(k.iter().map(|v| v * v).sum::<f64>())
}

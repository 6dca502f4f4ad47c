//! Fourier–Lebesgue, Besov and Triebel–Lizorkin norms of lattice fields.
//!
//! * `‖f‖_{FL^p_s} = (Σ_k ⟨k⟩^{ps} |f̂(k)|^p)^{1/p}` with counting measure on
//!   the integer lattice (the periodic analogue of Lebesgue measure on `ℝ^d`).
//! * `‖f‖_{B^s_{p,q}} = ‖ 2^{js} ‖Δ_j f‖_{L^p} ‖_{ℓ^q_j}`.
//! * `‖f‖_{F^s_{p,q}} = ‖ ‖2^{js} Δ_j f(·)‖_{ℓ^q_j} ‖_{L^p}`, `p < ∞`.
//!
//! Spatial `L^p` norms are Riemann sums with weight `n^{-d}`; this is exact
//! for the `|f|^2` of trigonometric polynomials below half the Nyquist radius.
//! For `p < 1` or `q < 1` the same formulas give the usual quasi-norms.

use alloc::vec::Vec;

use crate::index::Exponent;
use crate::littlewood_paley::{lp_decompose, DyadicFamily};
use crate::spectral::forward_transform;
use crate::{bracket, Error, GridFunction, GridSpec, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Space {
    /// `FL^p_s`.
    Fl,
    /// `B^s_{p,q}`.
    Besov,
    /// `F^s_{p,q}`.
    Triebel,
}

/// Value of a norm together with the indices it was evaluated at.
#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub space: Space,
    pub p: Exponent,
    /// Fine index; `None` for `FL^p_s`.
    pub q: Option<Exponent>,
    pub s: f64,
    pub grid: GridSpec,
}

/// `ℓ^p` (quasi-)norm of non-negative magnitudes.
pub fn lp_of(values: impl Iterator<Item = f64>, p: Exponent) -> f64 {
    if p.is_infinite() {
        return values.fold(0.0, f64::max);
    }
    let pf = p.to_f64();
    let sum: f64 = values.map(|v| v.powf(pf)).sum();
    sum.powf(1.0 / pf)
}

/// Discrete `L^p` norm `(n^{-d} Σ_x |f(x)|^p)^{1/p}`, max for `p = ∞`.
pub fn spatial_lp(f: &GridFunction, p: Exponent) -> f64 {
    if p.is_infinite() {
        return f.max_abs();
    }
    let pf = p.to_f64();
    let mean = f.values().iter().map(|v| v.norm().powf(pf)).sum::<f64>() / f.values().len() as f64;
    mean.powf(1.0 / pf)
}

/// `‖f‖_{FL^p_s}`.
pub fn fl_norm(f: &GridFunction, p: Exponent, s: f64) -> NormResult {
    let grid = *f.grid();
    let spec = forward_transform(f);
    let weighted = spec.coeffs().iter().enumerate().map(|(i, c)| {
        let w = bracket(&grid.frequency_f64(i)[..grid.dim()]);
        w.powf(s) * c.norm()
    });
    NormResult {
        value: lp_of(weighted, p),
        space: Space::Fl,
        p,
        q: None,
        s,
        grid,
    }
}

/// `‖f‖_{B^s_{p,q}}`.
pub fn besov_norm(f: &GridFunction, p: Exponent, q: Exponent, s: f64, fam: &DyadicFamily) -> Result<NormResult> {
    let blocks = lp_decompose(f, fam)?;
    let terms = blocks
        .iter()
        .enumerate()
        .map(|(j, b)| (j as f64 * s).exp2() * spatial_lp(b, p));
    Ok(NormResult {
        value: lp_of(terms, q),
        space: Space::Besov,
        p,
        q: Some(q),
        s,
        grid: *f.grid(),
    })
}

/// `‖f‖_{F^s_{p,q}}`; rejects `p = ∞`.
pub fn triebel_norm(f: &GridFunction, p: Exponent, q: Exponent, s: f64, fam: &DyadicFamily) -> Result<NormResult> {
    if p.is_infinite() {
        return Err(Error::InvalidIndex("Triebel-Lizorkin norm requires p < inf".into()));
    }
    let blocks = lp_decompose(f, fam)?;
    let weights: Vec<f64> = (0..blocks.len()).map(|j| (j as f64 * s).exp2()).collect();
    let len = f.values().len();
    let pointwise = (0..len).map(|x| {
        lp_of(
            blocks.iter().zip(&weights).map(|(b, w)| w * b.values()[x].norm()),
            q,
        )
    });
    let pf = p.to_f64();
    let mean = pointwise.map(|v| v.powf(pf)).sum::<f64>() / len as f64;
    Ok(NormResult {
        value: mean.powf(1.0 / pf),
        space: Space::Triebel,
        p,
        q: Some(q),
        s,
        grid: *f.grid(),
    })
}

//! Discrete Fourier analysis, Fourier multipliers and Bessel potentials.
//!
//! The forward transform is normalised so that a single exponential
//! `e^{2πik·x}` has exactly one unit coefficient:
//!
//! ```text
//! f̂(k) = n^{-d} Σ_x f(x) e^{-2πik·x},      f(x) = Σ_k f̂(k) e^{2πik·x}.
//! ```
//!
//! The Bessel potential uses the weight `⟨k⟩ = (1 + |k|²)^{1/2}` on integer
//! frequencies, which is exactly the Fourier–Lebesgue weight. The literal
//! symbol of `(1-Δ)^{1/2}` on `[0,1)^d` is `(1 + 4π²|k|²)^{1/2}`; the two
//! differ by a factor in `[1, 2π]`, so they define the same scale of spaces
//! with uniformly comparable norms.

use num_complex::Complex64;

use crate::fft::transform_nd;
use crate::{bracket, GridFunction, SpectralFunction};

/// `f ↦ f̂`, unit-coefficient normalisation.
pub fn forward_transform(f: &GridFunction) -> SpectralFunction {
    let grid = *f.grid();
    let mut data = f.values().to_vec();
    transform_nd(&mut data, grid.n(), grid.dim(), false);
    let scale = 1.0 / grid.len() as f64;
    for v in &mut data {
        *v *= scale;
    }
    SpectralFunction::new(grid, data).expect("transform preserves shape")
}

/// `f̂ ↦ f = Σ_k f̂(k) e^{2πik·x}`.
pub fn inverse_transform(spec: &SpectralFunction) -> GridFunction {
    let grid = *spec.grid();
    let mut data = spec.coeffs().to_vec();
    transform_nd(&mut data, grid.n(), grid.dim(), true);
    GridFunction::new(grid, data).expect("transform preserves shape")
}

/// Applies the Fourier multiplier `m(k)`.
pub fn apply_multiplier(f: &GridFunction, m: impl FnMut(&[f64]) -> Complex64) -> GridFunction {
    inverse_transform(&forward_transform(f).map_multiplier(m))
}

/// `J_s f = F^{-1}(⟨k⟩^s f̂)`.
pub fn bessel_potential(f: &GridFunction, s: f64) -> GridFunction {
    if s == 0.0 {
        return f.clone();
    }
    apply_multiplier(f, |k| Complex64::new(bracket(k).powf(s), 0.0))
}

/// `(Σ_k |f̂(k)|²)^{1/2}`.
pub fn spectral_l2(spec: &SpectralFunction) -> f64 {
    spec.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GridSpec;
    use core::f64::consts::PI;

    fn mode(grid: GridSpec, k: [f64; 2]) -> GridFunction {
        GridFunction::from_fn(grid, |x| {
            let a = 2.0 * PI * x.iter().zip(k).map(|(x, k)| x * k).sum::<f64>();
            Complex64::new(a.cos(), a.sin())
        })
        .unwrap()
    }

    #[test]
    fn single_mode_has_unit_coefficient() {
        let g = GridSpec::new(1, 16).unwrap();
        let spec = forward_transform(&mode(g, [3.0, 0.0]));
        for i in 0..g.len() {
            let expect = if g.frequency(i)[0] == 3 { 1.0 } else { 0.0 };
            assert!((spec.coeffs()[i] - Complex64::new(expect, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn constant_maps_to_zero_mode() {
        let g = GridSpec::new(2, 8).unwrap();
        let one = GridFunction::from_fn(g, |_| Complex64::new(1.0, 0.0)).unwrap();
        let spec = forward_transform(&one);
        assert!((spec.coeff(&[0, 0]) - 1.0).norm() < 1e-15);
        let off: f64 = spec.coeffs().iter().skip(1).map(|c| c.norm()).sum();
        assert!(off < 1e-14);
    }

    #[test]
    fn inverse_of_delta() {
        let g = GridSpec::new(1, 16).unwrap();
        let mut spec = SpectralFunction::zeros(g);
        spec.coeffs_mut()[g.spectral_index(&[2]).unwrap()] = Complex64::new(1.0, 0.0);
        let f = inverse_transform(&spec);
        let expect = mode(g, [2.0, 0.0]);
        assert!(f.sub(&expect).unwrap().max_abs() < 1e-14);

        let mut zero = SpectralFunction::zeros(g);
        zero.coeffs_mut()[0] = Complex64::new(1.0, 0.0);
        let f = inverse_transform(&zero);
        assert!(f.values().iter().all(|v| (v - 1.0).norm() < 1e-15));
    }

    #[test]
    fn bessel_single_mode() {
        let g = GridSpec::new(1, 16).unwrap();
        let f = mode(g, [2.0, 0.0]);
        let out = bessel_potential(&f, -1.0);
        let expect = f.scale(Complex64::new(5f64.powf(-0.5), 0.0));
        assert!(out.sub(&expect).unwrap().max_abs() < 1e-14);
        assert_eq!(bessel_potential(&f, 0.0), f);
    }
}

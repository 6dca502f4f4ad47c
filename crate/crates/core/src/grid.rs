//! Periodic lattices and the fields that live on them.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::{Error, Result};

/// Uniform lattice on `[0,1)^d` with `n` points per axis.
///
/// Lattice points are `x_i = i/n` componentwise; values are stored row-major
/// (the last axis varies fastest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    dim: usize,
    n: usize,
}

impl GridSpec {
    pub fn new(dim: usize, n: usize) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGridSize(n));
        }
        Ok(Self { dim, n })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of lattice points, `n^d`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Multi-index of a flat row-major position.
    #[inline]
    pub fn multi_index(&self, flat: usize) -> [usize; 2] {
        match self.dim {
            1 => [flat, 0],
            _ => [flat / self.n, flat % self.n],
        }
    }

    /// Lattice point for a flat index; unused trailing components are zero.
    #[inline]
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let [a, b] = self.multi_index(flat);
        let h = 1.0 / self.n as f64;
        [a as f64 * h, b as f64 * h]
    }

    /// Signed integer frequency stored at a flat spectral index (FFT order:
    /// storage slot `i` holds `i` for `i < n/2` and `i - n` otherwise).
    #[inline]
    pub fn frequency(&self, flat: usize) -> [i64; 2] {
        let [a, b] = self.multi_index(flat);
        let f = |i: usize| -> i64 {
            if i < self.n / 2 {
                i as i64
            } else {
                i as i64 - self.n as i64
            }
        };
        match self.dim {
            1 => [f(a), 0],
            _ => [f(a), f(b)],
        }
    }

    /// Same as [`GridSpec::frequency`] as floats.
    #[inline]
    pub fn frequency_f64(&self, flat: usize) -> [f64; 2] {
        let [a, b] = self.frequency(flat);
        [a as f64, b as f64]
    }

    /// Flat spectral index of an integer frequency in `[-n/2, n/2)^d`.
    pub fn spectral_index(&self, k: &[i64]) -> Option<usize> {
        let half = (self.n / 2) as i64;
        let slot = |v: i64| -> Option<usize> {
            if v < -half || v >= half {
                None
            } else if v >= 0 {
                Some(v as usize)
            } else {
                Some((v + self.n as i64) as usize)
            }
        };
        match self.dim {
            1 => slot(*k.first()?),
            _ => Some(slot(*k.first()?)? * self.n + slot(*k.get(1)?)?),
        }
    }

    /// Largest `|k|` on the frequency lattice.
    pub fn max_frequency_radius(&self) -> f64 {
        let half = (self.n / 2) as f64;
        libm::sqrt(self.dim as f64) * half
    }

    /// Spectral indices sorted by ascending lexicographic signed frequency.
    pub fn lexicographic_frequencies(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| self.frequency(i));
        idx
    }

    /// `GridMismatch` unless both grids coincide.
    pub fn ensure_same(&self, other: &GridSpec) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(alloc::format!(
                "d={} n={} vs d={} n={}",
                self.dim,
                self.n,
                other.dim,
                other.n
            )));
        }
        Ok(())
    }
}

/// Complex field sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        check_values(&grid, &values)?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: alloc::vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Samples `f` at every lattice point.
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(&[f64]) -> Complex64) -> Result<Self> {
        let values = (0..grid.len())
            .map(|i| f(&grid.point(i)[..grid.dim()]))
            .collect();
        Self::new(grid, values)
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Largest pointwise modulus.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Discrete `L²` norm `(n^{-d} Σ_x |f(x)|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        libm::sqrt(s / self.values.len() as f64)
    }
}

/// Fourier coefficients on the integer lattice `[-n/2, n/2)^d`, stored in FFT
/// order (see [`GridSpec::frequency`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

impl SpectralFunction {
    pub fn new(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        check_values(&grid, &coeffs)?;
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            coeffs: alloc::vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient at integer frequency `k`, zero outside the lattice.
    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        self.grid
            .spectral_index(k)
            .map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    /// Multiplies every coefficient by `m(k)`.
    pub fn map_multiplier(&self, mut m: impl FnMut(&[f64]) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * m(&self.grid.frequency_f64(i)[..self.grid.dim()]))
            .collect();
        Self { grid: self.grid, coeffs }
    }
}

fn check_values(grid: &GridSpec, values: &[Complex64]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            actual: values.len(),
        });
    }
    if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(GridSpec::new(3, 16), Err(Error::UnsupportedDimension(3)));
        assert_eq!(GridSpec::new(1, 12), Err(Error::InvalidGridSize(12)));
        assert_eq!(GridSpec::new(1, 4), Err(Error::InvalidGridSize(4)));
        assert!(GridSpec::new(2, 8).is_ok());
    }

    #[test]
    fn frequency_slots_round_trip() {
        let g = GridSpec::new(2, 16).unwrap();
        for i in 0..g.len() {
            let k = g.frequency(i);
            assert_eq!(g.spectral_index(&k), Some(i));
            assert!(k[0] >= -8 && k[0] < 8 && k[1] >= -8 && k[1] < 8);
        }
        assert_eq!(g.spectral_index(&[8, 0]), None);
    }

    #[test]
    fn rejects_non_finite_and_wrong_length() {
        let g = GridSpec::new(1, 8).unwrap();
        let mut v = alloc::vec![Complex64::new(0.0, 0.0); 8];
        v[3].im = f64::NAN;
        assert_eq!(GridFunction::new(g, v), Err(Error::NonFinite(3)));
        assert!(matches!(
            GridFunction::new(g, alloc::vec![]),
            Err(Error::LengthMismatch { expected: 8, actual: 0 })
        ));
    }

    #[test]
    fn lexicographic_order_is_ascending() {
        let g = GridSpec::new(1, 8).unwrap();
        let ks: Vec<i64> = g.lexicographic_frequencies().iter().map(|&i| g.frequency(i)[0]).collect();
        assert_eq!(ks, alloc::vec![-4, -3, -2, -1, 0, 1, 2, 3]);
    }
}

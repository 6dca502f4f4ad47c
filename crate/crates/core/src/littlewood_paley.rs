//! Smooth dyadic partition of unity on the frequency lattice and the block
//! operators `Δ_j = F^{-1} φ_j F`.
//!
//! The cutoff is built from the exp-mollifier transition
//! `h(t) = θ(t) / (θ(t) + θ(1-t))`, `θ(t) = e^{-1/t}` for `t > 0`:
//!
//! * `ψ(ξ) = h(2 - |ξ|)`: equal to 1 on `|ξ| ≤ 1`, to 0 on `|ξ| ≥ 2`;
//! * `φ_j(ξ) = ψ(2^{-j}ξ) - ψ(2^{1-j}ξ)` for `1 ≤ j < j_max`;
//! * the last block absorbs the tail, `φ_{j_max}(ξ) = 1 - ψ(2^{1-j_max}ξ)`;
//!   on the lattice it agrees with `ψ(2^{-j_max}ξ) - ψ(2^{1-j_max}ξ)` except
//!   at the boundary radius `|ξ| = 2^{j_max+1}`, which it keeps;
//! * `φ_0 = 1 - Σ_{j≥1} φ_j`, which telescopes to `ψ`.

use alloc::vec::Vec;

use crate::spectral::{forward_transform, inverse_transform};
use crate::{freq_norm, Error, GridFunction, GridSpec, Result, SpectralFunction};

fn theta(t: f64) -> f64 {
    if t > 0.0 {
        libm::exp(-1.0 / t)
    } else {
        0.0
    }
}

/// Smooth step: 0 for `t ≤ 0`, 1 for `t ≥ 1`.
pub fn transition(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = theta(t);
    a / (a + theta(1.0 - t))
}

/// Radial cutoff `ψ(r)` as a function of `r = |ξ|`.
pub fn psi(r: f64) -> f64 {
    transition(2.0 - r)
}

/// The dyadic cutoffs `φ_0..φ_{j_max}` sampled on a grid's frequency lattice.
#[derive(Debug, Clone)]
pub struct DyadicFamily {
    grid: GridSpec,
    j_max: usize,
    // cutoffs[j][spectral index]
    cutoffs: Vec<Vec<f64>>,
    residual: f64,
}

impl DyadicFamily {
    /// Builds the family and certifies the partition of unity.
    pub fn new(grid: GridSpec) -> Result<Self> {
        let radius = grid.max_frequency_radius();
        let mut j_max = 0usize;
        while ((1u64 << (j_max + 1)) as f64) < radius {
            j_max += 1;
        }
        let len = grid.len();
        let mut cutoffs = alloc::vec![alloc::vec![0.0; len]; j_max + 1];
        for i in 0..len {
            let r = freq_norm(&grid.frequency_f64(i)[..grid.dim()]);
            let mut tail = 0.0;
            for j in 1..=j_max {
                let inner = psi(r / (1u64 << (j - 1)) as f64);
                let v = if j == j_max {
                    1.0 - inner
                } else {
                    psi(r / (1u64 << j) as f64) - inner
                };
                cutoffs[j][i] = v;
                tail += v;
            }
            cutoffs[0][i] = 1.0 - tail;
        }
        let residual = (0..len)
            .map(|i| (cutoffs.iter().map(|c| c[i]).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        if residual > 1e-12 {
            return Err(Error::PartitionResidual(residual));
        }
        Ok(Self {
            grid,
            j_max,
            cutoffs,
            residual,
        })
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn j_max(&self) -> usize {
        self.j_max
    }

    /// Number of blocks, `j_max + 1`.
    #[inline]
    pub fn len(&self) -> usize {
        self.j_max + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Partition-of-unity residual measured at construction.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `φ_j` over spectral indices.
    pub fn cutoff(&self, j: usize) -> Result<&[f64]> {
        self.cutoffs
            .get(j)
            .map(Vec::as_slice)
            .ok_or(Error::BlockOutOfRange { j, j_max: self.j_max })
    }

    /// `φ_j(k)` at an integer frequency (zero off the lattice).
    pub fn cutoff_at(&self, j: usize, k: &[i64]) -> Result<f64> {
        let c = self.cutoff(j)?;
        Ok(self.grid.spectral_index(k).map_or(0.0, |i| c[i]))
    }

    /// Largest / smallest `⟨k⟩` over the support of block `j`.
    pub fn bracket_spread(&self, j: usize) -> Result<f64> {
        let c = self.cutoff(j)?;
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (i, &v) in c.iter().enumerate() {
            if v > 0.0 {
                let b = crate::bracket(&self.grid.frequency_f64(i)[..self.grid.dim()]);
                lo = lo.min(b);
                hi = hi.max(b);
            }
        }
        Ok(if hi == 0.0 { 1.0 } else { hi / lo })
    }

    /// `min_k Σ_j φ_j(k)²`: the lower constant in `c‖f‖²_{L²} ≤ Σ_j ‖Δ_j f‖²_{L²}`.
    pub fn min_square_sum(&self) -> f64 {
        (0..self.grid.len())
            .map(|i| self.cutoffs.iter().map(|c| c[i] * c[i]).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn block_spectrum(&self, spec: &SpectralFunction, j: usize) -> Result<SpectralFunction> {
        let c = self.cutoff(j)?;
        let coeffs = spec.coeffs().iter().zip(c).map(|(v, &w)| v * w).collect();
        SpectralFunction::new(*spec.grid(), coeffs)
    }
}

/// Builds the dyadic family for a grid.
pub fn build_dyadic_family(grid: GridSpec) -> Result<DyadicFamily> {
    DyadicFamily::new(grid)
}

/// `Δ_j f`.
pub fn dyadic_block(f: &GridFunction, j: usize, fam: &DyadicFamily) -> Result<GridFunction> {
    fam.grid.ensure_same(f.grid())?;
    let spec = forward_transform(f);
    Ok(inverse_transform(&fam.block_spectrum(&spec, j)?))
}

/// All blocks `Δ_0 f, …, Δ_{j_max} f`.
pub fn lp_decompose(f: &GridFunction, fam: &DyadicFamily) -> Result<Vec<GridFunction>> {
    fam.grid.ensure_same(f.grid())?;
    let spec = forward_transform(f);
    (0..fam.len())
        .map(|j| Ok(inverse_transform(&fam.block_spectrum(&spec, j)?)))
        .collect()
}

/// Sum of blocks; inverse of [`lp_decompose`] up to rounding.
pub fn lp_reconstruct(blocks: &[GridFunction]) -> Result<GridFunction> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::InvalidArgument("no blocks".into()))?;
    let mut acc = GridFunction::zeros(*first.grid());
    for b in blocks {
        acc = acc.add(b)?;
    }
    Ok(acc)
}

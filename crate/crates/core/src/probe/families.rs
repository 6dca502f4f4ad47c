//! Deterministic test-function families indexed by a frequency scale `N`.
//!
//! Every member at scale `N` has its spectrum in `|k|_∞ ≤ N`:
//!
//! * single-mode: `e^{2πi N x_1}`;
//! * dyadic-bump: the Littlewood–Paley bump `φ_j` with `2^{j+1} = N`;
//! * lacunary: `Σ_{2^l ≤ N} e^{2πi 2^l x_1}`;
//! * knapp (`d = 2`): unit coefficients on `[N/2, N] × [-√N/2, √N/2]`;
//! * rademacher: seeded `±1` coefficients on `N/2 ≤ k_1 ≤ N`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::littlewood_paley::psi;
use crate::spectral::inverse_transform;
use crate::{freq_norm, Error, GridFunction, GridSpec, Result, SpectralFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Generator {
    SingleMode,
    DyadicBump,
    Lacunary,
    Knapp,
    Rademacher,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::SingleMode,
        Generator::DyadicBump,
        Generator::Lacunary,
        Generator::Knapp,
        Generator::Rademacher,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Generator::SingleMode => "single-mode",
            Generator::DyadicBump => "dyadic-bump",
            Generator::Lacunary => "lacunary",
            Generator::Knapp => "knapp",
            Generator::Rademacher => "rademacher",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.id() == s)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown test family `{s}`")))
    }
}

/// A generator, a ladder of scales and a seed on a fixed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFamily {
    generator: Generator,
    ladder: Vec<usize>,
    seed: u64,
    grid: GridSpec,
}

/// `2^3..2^6` for `d = 1`, `2^2..2^4` for `d = 2`.
pub fn default_ladder(dim: usize) -> Vec<usize> {
    if dim == 1 {
        alloc::vec![8, 16, 32, 64]
    } else {
        alloc::vec![4, 8, 16]
    }
}

/// Largest admissible scale: half the Nyquist frequency.
pub fn headroom_limit(grid: &GridSpec) -> usize {
    grid.n() / 4
}

impl TestFamily {
    /// Scales must be powers of two in `[2, n/4]`; `knapp` needs `d = 2`.
    pub fn new(generator: Generator, ladder: Vec<usize>, seed: u64, grid: GridSpec) -> Result<Self> {
        if ladder.is_empty() {
            return Err(Error::InvalidArgument("empty scale ladder".into()));
        }
        let limit = headroom_limit(&grid);
        for &s in &ladder {
            if s < 2 || !s.is_power_of_two() {
                return Err(Error::InvalidArgument(alloc::format!("scale {s} is not a power of two >= 2")));
            }
            if s > limit {
                return Err(Error::NyquistHeadroom { max_freq: s, limit });
            }
        }
        if generator == Generator::Knapp && grid.dim() != 2 {
            return Err(Error::UnsupportedDimension(grid.dim()));
        }
        Ok(Self {
            generator,
            ladder,
            seed,
            grid,
        })
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn ladder(&self) -> &[usize] {
        &self.ladder
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// The member at scale `n_scale`.
    pub fn member_at(&self, n_scale: usize) -> Result<GridFunction> {
        Ok(inverse_transform(&self.member_spectrum(n_scale)?))
    }

    /// Fourier coefficients of the member at scale `n_scale`.
    pub fn member_spectrum(&self, n_scale: usize) -> Result<SpectralFunction> {
        let limit = headroom_limit(&self.grid);
        if n_scale > limit {
            return Err(Error::NyquistHeadroom {
                max_freq: n_scale,
                limit,
            });
        }
        let g = self.grid;
        let dim = g.dim();
        let n = n_scale as i64;
        let mut spec = SpectralFunction::zeros(g);
        let mut set = |k: [i64; 2], c: Complex64| {
            if let Some(i) = g.spectral_index(&k[..dim]) {
                spec.coeffs_mut()[i] = c;
            }
        };
        let one = Complex64::new(1.0, 0.0);
        match self.generator {
            Generator::SingleMode => set([n, 0], one),
            Generator::Lacunary => {
                let mut l = 1;
                while l <= n {
                    set([l, 0], one);
                    l *= 2;
                }
            }
            Generator::DyadicBump => {
                let j = n_scale.trailing_zeros() as i32 - 1;
                let lo = libm::exp2(-(j as f64));
                let hi = libm::exp2(1.0 - j as f64);
                for i in 0..g.len() {
                    let k = g.frequency_f64(i);
                    let r = freq_norm(&k[..dim]);
                    let c = if j == 0 { psi(r) } else { psi(lo * r) - psi(hi * r) };
                    spec.coeffs_mut()[i] = Complex64::new(c, 0.0);
                }
            }
            Generator::Knapp => {
                let w = (libm::sqrt(n_scale as f64) / 2.0) as i64;
                for a in n / 2..=n {
                    for b in -w..=w {
                        set([a, b], one);
                    }
                }
            }
            Generator::Rademacher => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (n_scale as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                for a in n / 2..=n {
                    let s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    set([a, 0], Complex64::new(s, 0.0));
                }
            }
        }
        Ok(spec)
    }

    /// `(scale, member)` for every scale of the ladder, in ladder order.
    pub fn members(&self) -> Result<Vec<(usize, GridFunction)>> {
        self.ladder.iter().map(|&s| Ok((s, self.member_at(s)?))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::forward_transform;

    fn grid(d: usize, n: usize) -> GridSpec {
        GridSpec::new(d, n).unwrap()
    }

    fn max_freq(f: &GridFunction) -> i64 {
        let spec = forward_transform(f);
        let g = *f.grid();
        (0..g.len())
            .filter(|&i| spec.coeffs()[i].norm() > 1e-12)
            .map(|i| {
                let k = g.frequency(i);
                k[0].abs().max(k[1].abs())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn members_respect_their_scale() {
        for gen in [Generator::SingleMode, Generator::DyadicBump, Generator::Lacunary, Generator::Rademacher] {
            let fam = TestFamily::new(gen, default_ladder(1), 3, grid(1, 256)).unwrap();
            for (s, f) in fam.members().unwrap() {
                assert!(max_freq(&f) <= s as i64, "{gen} {s}");
                assert!(max_freq(&f) >= s as i64 / 2, "{gen} {s}");
            }
        }
        let fam = TestFamily::new(Generator::Knapp, default_ladder(2), 0, grid(2, 64)).unwrap();
        for (s, f) in fam.members().unwrap() {
            assert_eq!(max_freq(&f), s as i64);
        }
    }

    #[test]
    fn headroom_and_dimension_checks() {
        assert!(matches!(
            TestFamily::new(Generator::SingleMode, alloc::vec![128], 0, grid(1, 256)),
            Err(Error::NyquistHeadroom { .. })
        ));
        assert!(TestFamily::new(Generator::Knapp, alloc::vec![8], 0, grid(1, 64)).is_err());
        assert!(TestFamily::new(Generator::Lacunary, alloc::vec![12], 0, grid(1, 64)).is_err());
    }

    #[test]
    fn rademacher_is_seeded() {
        let a = TestFamily::new(Generator::Rademacher, alloc::vec![16], 7, grid(1, 64)).unwrap();
        let b = TestFamily::new(Generator::Rademacher, alloc::vec![16], 7, grid(1, 64)).unwrap();
        let c = TestFamily::new(Generator::Rademacher, alloc::vec![16], 8, grid(1, 64)).unwrap();
        assert_eq!(a.member_at(16).unwrap(), b.member_at(16).unwrap());
        assert_ne!(a.member_at(16).unwrap(), c.member_at(16).unwrap());
    }

    #[test]
    fn generator_ids_round_trip() {
        for g in Generator::ALL {
            assert_eq!(g.id().parse::<Generator>().unwrap(), g);
        }
    }
}

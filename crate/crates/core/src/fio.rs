//! Fourier integral operators
//! `Tf(x) = σ(x,0) f̂(0) + Σ_{k≠0} e^{2πiΦ(x,k)} (1 - ψ(2k)) σ(x,k) f̂(k)`
//! by direct summation, and the order thresholds for `FL^p` boundedness.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::embedding::{required_order_fl_exact, required_order_fl_pq_exact};
use crate::exec::Executor;
use crate::index::{rational_to_f64, Exponent};
use crate::littlewood_paley::psi;
use crate::phases::{validate_phase, Phase, PhaseReport, PhaseTolerances};
use crate::spectral::{bessel_potential, forward_transform};
use crate::symbols::Symbol;
use crate::{bracket, freq_norm, Error, GridFunction, Result, SpectralFunction};

/// Sample budget used when a [`FioSpec`] validates its phase.
pub const DEFAULT_PHASE_BUDGET: usize = 128;

/// One operator `T ∈ I^m`: phase, symbol and Bessel-potential bookkeeping.
#[derive(Clone)]
pub struct FioSpec {
    phase: Arc<dyn Phase>,
    symbol: Arc<dyn Symbol>,
    right_bessel: f64,
    left_bessel: f64,
    phase_report: PhaseReport,
}

impl core::fmt::Debug for FioSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FioSpec")
            .field("phase", &self.phase.name())
            .field("order", &self.order())
            .field("rank", &self.rank())
            .field("right_bessel", &self.right_bessel)
            .field("left_bessel", &self.left_bessel)
            .finish()
    }
}

impl FioSpec {
    /// Validates the phase with default tolerances.
    pub fn new(phase: Arc<dyn Phase>, symbol: Arc<dyn Symbol>) -> Result<Self> {
        Self::with_tolerances(phase, symbol, DEFAULT_PHASE_BUDGET, &PhaseTolerances::default())
    }

    pub fn with_tolerances(
        phase: Arc<dyn Phase>,
        symbol: Arc<dyn Symbol>,
        budget: usize,
        tol: &PhaseTolerances,
    ) -> Result<Self> {
        if !symbol.order().is_finite() {
            return Err(Error::InvalidArgument("symbol order must be finite".into()));
        }
        let phase_report = validate_phase(phase.as_ref(), budget, tol)?;
        Ok(Self {
            phase,
            symbol,
            right_bessel: 0.0,
            left_bessel: 0.0,
            phase_report,
        })
    }

    pub fn phase(&self) -> &Arc<dyn Phase> {
        &self.phase
    }

    pub fn symbol(&self) -> &Arc<dyn Symbol> {
        &self.symbol
    }

    pub fn phase_report(&self) -> &PhaseReport {
        &self.phase_report
    }

    /// Total order: symbol order plus both Bessel shifts.
    pub fn order(&self) -> f64 {
        self.symbol.order() + self.right_bessel + self.left_bessel
    }

    pub fn rank(&self) -> usize {
        self.phase.rank()
    }

    pub fn dim(&self) -> usize {
        self.phase.dim()
    }

    pub fn right_bessel(&self) -> f64 {
        self.right_bessel
    }

    pub fn left_bessel(&self) -> f64 {
        self.left_bessel
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `T ∘ J_s` (right) or `J_s ∘ T` (left). The phase is shared, not copied.
pub fn compose_with_bessel(t: &FioSpec, s: f64, side: Side) -> FioSpec {
    let mut out = t.clone();
    match side {
        Side::Right => out.right_bessel += s,
        Side::Left => out.left_bessel += s,
    }
    out
}

/// `Tf` for a validated operator; the output is `J_{left} (Σ_k ...)`.
pub fn apply_fio(t: &FioSpec, f: &GridFunction, exec: &dyn Executor) -> Result<GridFunction> {
    if f.grid().dim() != t.dim() {
        return Err(Error::GridMismatch(alloc::format!(
            "phase dimension {} vs grid dimension {}",
            t.dim(),
            f.grid().dim()
        )));
    }
    let spec = forward_transform(f);
    let right = t.right_bessel;
    let out = if right == 0.0 {
        fio_sum(t.phase.as_ref(), t.symbol.as_ref(), &spec, exec)
    } else {
        let weighted = spec.map_multiplier(|k| Complex64::new(bracket(k).powf(right), 0.0));
        fio_sum(t.phase.as_ref(), t.symbol.as_ref(), &weighted, exec)
    };
    Ok(if t.left_bessel == 0.0 {
        out
    } else {
        bessel_potential(&out, t.left_bessel)
    })
}

/// Direct summation without phase validation. Coefficients that are exactly
/// zero are skipped; the remaining ones are summed in ascending
/// lexicographic order of `k` at every output point.
pub fn fio_sum(phase: &dyn Phase, symbol: &dyn Symbol, spec: &SpectralFunction, exec: &dyn Executor) -> GridFunction {
    let grid = *spec.grid();
    let dim = grid.dim();
    let zero_slot = grid.spectral_index(&[0, 0][..dim]).unwrap_or(0);
    let c0 = spec.coeffs()[zero_slot];
    let active: Vec<([f64; 2], Complex64)> = grid
        .lexicographic_frequencies()
        .into_iter()
        .filter(|&i| i != zero_slot && spec.coeffs()[i] != Complex64::new(0.0, 0.0))
        .map(|i| {
            let k = grid.frequency_f64(i);
            let excision = 1.0 - psi(2.0 * freq_norm(&k[..dim]));
            (k, spec.coeffs()[i] * excision)
        })
        .collect();
    let support = symbol.x_support();
    let mut values = alloc::vec![Complex64::new(0.0, 0.0); grid.len()];
    let kernel = |start: usize, chunk: &mut [Complex64]| {
        for (off, slot) in chunk.iter_mut().enumerate() {
            let xp = grid.point(start + off);
            let x = &xp[..dim];
            if !support.contains(x) {
                *slot = Complex64::new(0.0, 0.0);
                continue;
            }
            let mut acc = symbol.eval(x, &[0.0, 0.0][..dim]) * c0;
            for (k, c) in &active {
                let k = &k[..dim];
                let ph = phase.eval(x, k);
                let e = Complex64::from_polar(libm::exp(-2.0 * PI * ph.im), 2.0 * PI * ph.re);
                acc += e * symbol.eval(x, k) * c;
            }
            *slot = acc;
        }
    };
    exec.run(&mut values, &kernel);
    GridFunction::new(grid, values).expect("grid length is preserved")
}

/// `-κ|1/r - 1/2|`: the largest order for which the `FL^r` bound holds.
pub fn required_order_fl(r: Exponent, kappa: u32) -> Result<f64> {
    required_order_fl_exact(r, kappa).map(|v| rational_to_f64(&v))
}

/// Strict threshold `-κ|1/q - 1/2| - d(1/q - 1/p)` for `FL^p → FL^q`, `q < p`.
pub fn required_order_fl_pq(p: Exponent, q: Exponent, kappa: u32, d: u32) -> Result<f64> {
    required_order_fl_pq_exact(p, q, kappa, d).map(|v| rational_to_f64(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Serial;
    use crate::phases::CataloguePhase;
    use crate::symbols::{BesselSymbol, ConstantSymbol};
    use crate::GridSpec;

    fn spec(phase: CataloguePhase) -> FioSpec {
        FioSpec::new(Arc::new(phase), Arc::new(ConstantSymbol::one())).unwrap()
    }

    fn mode(n: usize, k: f64) -> GridFunction {
        let g = GridSpec::new(1, n).unwrap();
        GridFunction::from_fn(g, |x| Complex64::from_polar(1.0, 2.0 * PI * k * x[0])).unwrap()
    }

    #[test]
    fn identity_reproduces_input() {
        let g = GridSpec::new(2, 8).unwrap();
        let f = GridFunction::from_fn(g, |x| Complex64::new(x[0] * x[1], libm::sin(7.0 * x[0]))).unwrap();
        let out = apply_fio(&spec(CataloguePhase::identity(2).unwrap()), &f, &Serial).unwrap();
        assert!(out.sub(&f).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn half_wave_single_mode() {
        let t = 0.37;
        let f = mode(32, 3.0);
        let out = apply_fio(&spec(CataloguePhase::half_wave(1, t).unwrap()), &f, &Serial).unwrap();
        let expect = f.scale(Complex64::from_polar(1.0, 2.0 * PI * 3.0 * t));
        assert!(out.sub(&expect).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn torus_diffeo_is_composition() {
        let eps = 0.1;
        let g = GridSpec::new(1, 32).unwrap();
        let poly = |x: f64| {
            Complex64::from_polar(1.0, 2.0 * PI * 3.0 * x) + Complex64::new(0.5 * libm::cos(2.0 * PI * 8.0 * x), 0.0)
        };
        let f = GridFunction::from_fn(g, |x| poly(x[0])).unwrap();
        let out = apply_fio(&spec(CataloguePhase::torus_diffeo(eps).unwrap()), &f, &Serial).unwrap();
        let oracle = GridFunction::from_fn(g, |x| poly(x[0] + eps * libm::sin(2.0 * PI * x[0]))).unwrap();
        assert!(out.sub(&oracle).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn bessel_composition() {
        let t = spec(CataloguePhase::identity(1).unwrap());
        assert_eq!(compose_with_bessel(&t, 0.0, Side::Right).order(), 0.0);
        let r = compose_with_bessel(&t, -1.0, Side::Right);
        assert!(Arc::ptr_eq(r.phase(), t.phase()));
        assert_eq!(r.order(), -1.0);
        let out = apply_fio(&r, &mode(16, 2.0), &Serial).unwrap();
        let expect = mode(16, 2.0).scale(Complex64::new(5f64.sqrt().recip(), 0.0));
        assert!(out.sub(&expect).unwrap().max_abs() < 1e-14);
        let back = compose_with_bessel(&compose_with_bessel(&t, 0.75, Side::Left), -0.75, Side::Right);
        assert_eq!(back.order(), 0.0);
        let f = mode(16, 5.0).add(&mode(16, -3.0)).unwrap();
        assert!(apply_fio(&back, &f, &Serial).unwrap().sub(&f).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn order_is_tracked_from_symbol() {
        let t = FioSpec::new(
            Arc::new(CataloguePhase::identity(1).unwrap()),
            Arc::new(BesselSymbol { order: -0.5 }),
        )
        .unwrap();
        assert_eq!(t.order(), -0.5);
        assert_eq!(t.rank(), 0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let t = spec(CataloguePhase::identity(2).unwrap());
        assert!(matches!(apply_fio(&t, &mode(8, 1.0), &Serial), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn thresholds() {
        let e = |s: &str| s.parse::<Exponent>().unwrap();
        assert_eq!(required_order_fl(e("1"), 1).unwrap(), -0.5);
        assert_eq!(required_order_fl(e("inf"), 2).unwrap(), -1.0);
        assert_eq!(required_order_fl_pq(e("2"), e("1"), 1, 1).unwrap(), -1.0);
        assert!(required_order_fl_pq(e("1"), e("1"), 1, 1).is_err());
    }
}

//! Cauchy problems `P v = 0`, `∂_t^l v(0) = f_l` (`0 ≤ l < m`), for
//! `P = D_t^m + Σ_j P_j D_t^{m-j}` with simple characteristics.
//!
//! The solver factors the principal symbol at every mode into roots
//! `τ_1..τ_m`, propagates each factor `D_t - τ_j` separately and combines
//! them through the Vandermonde data map:
//!
//! `v(t) = Σ_j U_j(t) g_j`, `Σ_j (iτ_j)^l ĝ_j = f̂_l`.
//!
//! The smoothing remainder of the factorisation is dropped.
//!
//! Coefficient evaluators receive integer lattice frequencies `k`. The built-in
//! [`HomogeneousCoefficient`] is `a(x)|2πk|^j`, the symbol of `a(x) |D_x|^j`
//! with `D_x = -i∂_x`, so `D_t² v - |2πk|² v = 0` is the wave equation
//! `∂_t² v = ∂_x² v`.

mod propagate;
mod roots;
mod solve;
mod vandermonde;

pub use propagate::{first_order_propagate, FnPropagation, PropagationSymbol};
pub use roots::{min_gap, monic_roots, sort_roots};
pub use solve::{
    alpha_threshold, regularity_report, solve_cauchy, CauchySolution, LossConvention, NormComparison,
    RegularityReport, RegularityVariant, SolveReport,
};
pub use vandermonde::{excised_data_map, solve_vandermonde, vandermonde_data_map};

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::trigpoly::TrigPoly;
use crate::{freq_norm, Error, GridFunction, GridSpec, Result};

/// Coefficient symbol `p_j(t, x, k)` of `P_j`.
pub trait CoefficientSymbol: Send + Sync {
    /// The index `j`; `p_j` is homogeneous of this degree in `k`.
    fn degree(&self) -> usize;

    fn eval(&self, t: f64, x: &[f64], k: &[f64]) -> Complex64;

    fn is_x_independent(&self) -> bool;

    fn is_autonomous(&self) -> bool;
}

#[derive(Debug, Clone, PartialEq)]
pub enum Amplitude {
    Constant(Complex64),
    Trig(TrigPoly),
}

impl Amplitude {
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        match self {
            Amplitude::Constant(c) => *c,
            Amplitude::Trig(p) => p.eval(x),
        }
    }
}

/// `p_j = a(x) |2πk|^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousCoefficient {
    pub degree: usize,
    pub amplitude: Amplitude,
}

impl HomogeneousCoefficient {
    pub fn constant(degree: usize, a: Complex64) -> Self {
        Self {
            degree,
            amplitude: Amplitude::Constant(a),
        }
    }

    pub fn trig(degree: usize, a: TrigPoly) -> Self {
        Self {
            degree,
            amplitude: Amplitude::Trig(a),
        }
    }
}

impl CoefficientSymbol for HomogeneousCoefficient {
    fn degree(&self) -> usize {
        self.degree
    }
    fn eval(&self, _t: f64, x: &[f64], k: &[f64]) -> Complex64 {
        self.amplitude.eval(x) * (2.0 * PI * freq_norm(k)).powi(self.degree as i32)
    }
    fn is_x_independent(&self) -> bool {
        match &self.amplitude {
            Amplitude::Constant(_) => true,
            Amplitude::Trig(p) => p.is_constant(),
        }
    }
    fn is_autonomous(&self) -> bool {
        true
    }
}

/// Closure-backed coefficient.
pub struct FnCoefficient<F> {
    degree: usize,
    f: F,
    x_independent: bool,
    autonomous: bool,
}

impl<F> FnCoefficient<F>
where
    F: Fn(f64, &[f64], &[f64]) -> Complex64 + Send + Sync,
{
    pub fn new(degree: usize, x_independent: bool, autonomous: bool, f: F) -> Self {
        Self {
            degree,
            f,
            x_independent,
            autonomous,
        }
    }
}

impl<F> CoefficientSymbol for FnCoefficient<F>
where
    F: Fn(f64, &[f64], &[f64]) -> Complex64 + Send + Sync,
{
    fn degree(&self) -> usize {
        self.degree
    }
    fn eval(&self, t: f64, x: &[f64], k: &[f64]) -> Complex64 {
        (self.f)(t, x, k)
    }
    fn is_x_independent(&self) -> bool {
        self.x_independent
    }
    fn is_autonomous(&self) -> bool {
        self.autonomous
    }
}

/// Tolerances of the simple-characteristics certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTolerances {
    /// Roots must be at least `gap · max(1, |k|)` apart.
    pub gap: f64,
    /// Roots must satisfy `Im τ ≥ -imag`.
    pub imag: f64,
}

impl Default for RootTolerances {
    fn default() -> Self {
        Self { gap: 1e-3, imag: 1e-9 }
    }
}

/// Sampled minima recorded while certifying a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCertificate {
    /// `min gap / max(1, |k|)`.
    pub min_relative_gap: f64,
    pub min_imag: f64,
    pub samples: usize,
}

/// A certified Cauchy problem.
#[derive(Clone)]
pub struct HyperbolicProblem {
    order: usize,
    coeffs: Vec<Option<Arc<dyn CoefficientSymbol>>>,
    grid: GridSpec,
    horizon: f64,
    data: Vec<GridFunction>,
    steps_per_unit: usize,
    tol: RootTolerances,
    certificate: RootCertificate,
}

impl core::fmt::Debug for HyperbolicProblem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("HyperbolicProblem")
            .field("order", &self.order)
            .field("grid", &self.grid)
            .field("horizon", &self.horizon)
            .field("steps_per_unit", &self.steps_per_unit)
            .field("certificate", &self.certificate)
            .finish()
    }
}

impl HyperbolicProblem {
    /// Builds and certifies the problem with default tolerances.
    pub fn new(
        coeffs: Vec<Arc<dyn CoefficientSymbol>>,
        data: Vec<GridFunction>,
        horizon: f64,
        steps_per_unit: usize,
    ) -> Result<Self> {
        Self::with_tolerances(coeffs, data, horizon, steps_per_unit, RootTolerances::default())
    }

    /// `data[l]` is `∂_t^l v(0)`; the order `m` is `data.len()`. Every
    /// coefficient degree must lie in `1..=m` and appear at most once;
    /// missing degrees are zero.
    pub fn with_tolerances(
        coeffs: Vec<Arc<dyn CoefficientSymbol>>,
        data: Vec<GridFunction>,
        horizon: f64,
        steps_per_unit: usize,
        tol: RootTolerances,
    ) -> Result<Self> {
        let order = data.len();
        if order == 0 {
            return Err(Error::InvalidArgument("at least one initial datum is required".into()));
        }
        let grid = *data[0].grid();
        for f in &data[1..] {
            grid.ensure_same(f.grid())?;
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidArgument(alloc::format!("horizon {horizon} must be positive")));
        }
        if steps_per_unit == 0 {
            return Err(Error::InvalidArgument("steps_per_unit must be positive".into()));
        }
        let mut slots: Vec<Option<Arc<dyn CoefficientSymbol>>> = alloc::vec![None; order];
        for c in coeffs {
            let j = c.degree();
            if j == 0 || j > order {
                return Err(Error::InvalidArgument(alloc::format!(
                    "coefficient degree {j} outside 1..={order}"
                )));
            }
            if slots[j - 1].is_some() {
                return Err(Error::InvalidArgument(alloc::format!("coefficient p_{j} given twice")));
            }
            slots[j - 1] = Some(c);
        }
        let mut p = Self {
            order,
            coeffs: slots,
            grid,
            horizon,
            data,
            steps_per_unit,
            tol,
            certificate: RootCertificate {
                min_relative_gap: f64::INFINITY,
                min_imag: f64::INFINITY,
                samples: 0,
            },
        };
        p.certificate = p.certify()?;
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn data(&self) -> &[GridFunction] {
        &self.data
    }

    pub fn steps_per_unit(&self) -> usize {
        self.steps_per_unit
    }

    pub fn tolerances(&self) -> &RootTolerances {
        &self.tol
    }

    pub fn certificate(&self) -> &RootCertificate {
        &self.certificate
    }

    pub fn is_x_independent(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_x_independent())
    }

    pub fn is_autonomous(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_autonomous())
    }

    /// `p_j(t, x, k)` for `1 ≤ j ≤ m`; zero when absent.
    pub fn coefficient(&self, j: usize, t: f64, x: &[f64], k: &[f64]) -> Complex64 {
        match self.coeffs.get(j.wrapping_sub(1)) {
            Some(Some(c)) => c.eval(t, x, k),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// Sorted roots of `τ^m + Σ_j p_j τ^{m-j}` without any check.
    pub fn raw_roots(&self, t: f64, x: &[f64], k: &[f64]) -> Vec<Complex64> {
        let a: Vec<Complex64> = (1..=self.order).map(|j| self.coefficient(j, t, x, k)).collect();
        monic_roots(&a)
    }

    /// Roots at a nonzero mode, checked for simplicity (first) and for the
    /// sign of the imaginary parts.
    pub fn characteristic_roots(&self, t: f64, x: &[f64], k: &[f64]) -> Result<Vec<Complex64>> {
        let dim = self.grid.dim();
        if k.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: k.len(),
            });
        }
        if freq_norm(k) == 0.0 {
            return Err(Error::InvalidArgument("characteristic roots need k != 0".into()));
        }
        let roots = self.raw_roots(t, x, k);
        let mut kk = [0.0; 2];
        kk[..dim].copy_from_slice(k);
        let threshold = self.tol.gap * freq_norm(k).max(1.0);
        let gap = min_gap(&roots);
        if gap < threshold {
            return Err(Error::RootCollision { k: kk, gap, threshold });
        }
        if let Some(r) = roots.iter().find(|r| r.im < -self.tol.imag) {
            return Err(Error::NegativeImaginary { k: kk, im: r.im });
        }
        Ok(roots)
    }

    fn certify(&self) -> Result<RootCertificate> {
        let dim = self.grid.dim();
        let times: Vec<f64> = if self.is_autonomous() {
            alloc::vec![0.0]
        } else {
            (0..=4).map(|i| self.horizon * i as f64 / 4.0).collect()
        };
        let xs: Vec<[f64; 2]> = if self.is_x_independent() {
            alloc::vec![[0.0; 2]]
        } else {
            let per = 8usize;
            (0..per.pow(dim as u32))
                .map(|p| [(p % per) as f64 / per as f64, (p / per) as f64 / per as f64])
                .collect()
        };
        let mut cert = RootCertificate {
            min_relative_gap: f64::INFINITY,
            min_imag: f64::INFINITY,
            samples: 0,
        };
        for i in 0..self.grid.len() {
            let k = self.grid.frequency_f64(i);
            let k = &k[..dim];
            let r = freq_norm(k);
            if r == 0.0 {
                continue;
            }
            for &t in &times {
                for x in &xs {
                    let roots = self.characteristic_roots(t, &x[..dim], k)?;
                    cert.samples += 1;
                    cert.min_relative_gap = cert.min_relative_gap.min(min_gap(&roots) / r.max(1.0));
                    for z in &roots {
                        cert.min_imag = cert.min_imag.min(z.im);
                    }
                }
            }
        }
        Ok(cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec {
        GridSpec::new(1, 16).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn custom(j: usize, f: fn(&[f64]) -> Complex64) -> Arc<dyn CoefficientSymbol> {
        Arc::new(FnCoefficient::new(j, true, true, move |_t, _x: &[f64], k: &[f64]| f(k)))
    }

    #[test]
    fn wave_roots_in_lattice_units() {
        let p = HyperbolicProblem::new(
            alloc::vec![custom(2, |k| c(-k[0] * k[0], 0.0))],
            alloc::vec![GridFunction::zeros(grid()); 2],
            1.0,
            1,
        )
        .unwrap();
        let roots = p.characteristic_roots(0.0, &[0.0], &[3.0]).unwrap();
        assert!((roots[0] - c(-3.0, 0.0)).norm() < 1e-15);
        assert!((roots[1] - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dissipative_first_order_root() {
        let p = HyperbolicProblem::new(
            alloc::vec![Arc::new(HomogeneousCoefficient::constant(1, c(-1.0, -0.5))) as Arc<dyn CoefficientSymbol>],
            alloc::vec![GridFunction::zeros(grid())],
            1.0,
            1,
        )
        .unwrap();
        let r = p.characteristic_roots(0.0, &[0.0], &[2.0]).unwrap();
        assert!((r[0] - c(1.0, 0.5) * (4.0 * PI)).norm() < 1e-12);
        assert!(p.certificate().min_imag > 0.0);
    }

    #[test]
    fn double_root_collides() {
        let err = HyperbolicProblem::new(
            alloc::vec![custom(1, |k| c(-2.0 * k[0].abs(), 0.0)), custom(2, |k| c(k[0] * k[0], 0.0))],
            alloc::vec![GridFunction::zeros(grid()); 2],
            1.0,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RootCollision { .. }));
    }

    #[test]
    fn negative_imaginary_root_rejected() {
        let err = HyperbolicProblem::new(
            alloc::vec![custom(1, |k| c(0.0, k[0].abs()))],
            alloc::vec![GridFunction::zeros(grid())],
            1.0,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NegativeImaginary { .. }));
    }

    #[test]
    fn degree_validation() {
        assert!(HyperbolicProblem::new(
            alloc::vec![custom(3, |_| c(0.0, 0.0))],
            alloc::vec![GridFunction::zeros(grid()); 2],
            1.0,
            1
        )
        .is_err());
    }
}

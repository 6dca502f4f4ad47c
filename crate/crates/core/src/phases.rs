//! Complex phases `Φ(x, k)` of positive type and their sample-based
//! validation.
//!
//! Operators built on a phase act as `e^{2πiΦ(x,k)}`, so `Φ = x·k` is the
//! identity. Phases are homogeneous of degree one in `k` and are never
//! evaluated at `k = 0`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::trigpoly::TrigPoly;
use crate::{freq_norm, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub trait Phase: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64], k: &[f64]) -> Complex64;

    /// `∇_x Φ`; unused components are zero.
    fn grad_x(&self, x: &[f64], k: &[f64]) -> [Complex64; 2];

    /// `∇_η Φ`.
    fn grad_eta(&self, x: &[f64], k: &[f64]) -> [Complex64; 2];

    /// `H[i][j] = ∂_{x_i} ∂_{η_j} Φ`. The default differentiates
    /// [`Phase::grad_eta`] numerically in `x`.
    fn mixed_hessian(&self, x: &[f64], k: &[f64]) -> [[Complex64; 2]; 2] {
        let h = 1e-6;
        let d = self.dim();
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate().take(d) {
            let mut a = [0.0; 2];
            let mut b = [0.0; 2];
            a[..d].copy_from_slice(x);
            b[..d].copy_from_slice(x);
            a[i] += h;
            b[i] -= h;
            let ga = self.grad_eta(&a[..d], k);
            let gb = self.grad_eta(&b[..d], k);
            for j in 0..d {
                row[j] = (ga[j] - gb[j]) / (2.0 * h);
            }
        }
        out
    }

    /// Declared SSFC rank `κ`.
    fn rank(&self) -> usize;

    /// The `τ` used in the nondegeneracy determinant.
    fn tau(&self) -> f64 {
        0.0
    }

    /// True if `Φ(x, k) - x·k` does not depend on `x`.
    fn is_x_independent(&self) -> bool {
        false
    }

    fn name(&self) -> &str;
}

fn dot(x: &[f64], k: &[f64]) -> f64 {
    x.iter().zip(k).map(|(a, b)| a * b).sum()
}

fn unit(k: &[f64]) -> [f64; 2] {
    let r = freq_norm(k);
    let mut u = [0.0; 2];
    for (ui, ki) in u.iter_mut().zip(k) {
        *ui = ki / r;
    }
    u
}

fn identity_hessian() -> [[Complex64; 2]; 2] {
    [[Complex64::new(1.0, 0.0), ZERO], [ZERO, Complex64::new(1.0, 0.0)]]
}

fn real_pair(v: &[f64]) -> [Complex64; 2] {
    let mut out = [ZERO; 2];
    for (o, &vi) in out.iter_mut().zip(v) {
        *o = Complex64::new(vi, 0.0);
    }
    out
}

/// Built-in phases with closed-form derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum CataloguePhase {
    /// `Φ = x·k`, `κ = 0`.
    Identity { dim: usize },
    /// `Φ = (x + ε sin 2πx) k` on the circle, `|2πε| < 1`, `κ = 1`.
    TorusDiffeo { eps: f64 },
    /// `Φ = x·k + t|k|`, `κ = d`.
    HalfWave { dim: usize, t: f64 },
    /// `Φ = x·k + t(c|k| + iγ(x)|k|)` with `γ ≥ 0`, `κ = d`.
    Dissipative {
        dim: usize,
        t: f64,
        c: f64,
        gamma: TrigPoly,
        tau: f64,
    },
}

impl CataloguePhase {
    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::Identity { dim })
    }

    pub fn torus_diffeo(eps: f64) -> Result<Self> {
        if !eps.is_finite() || (2.0 * PI * eps).abs() >= 1.0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "torus-diffeo needs |2 pi eps| < 1, got eps = {eps}"
            )));
        }
        Ok(Self::TorusDiffeo { eps })
    }

    pub fn half_wave(dim: usize, t: f64) -> Result<Self> {
        check_dim(dim)?;
        if !t.is_finite() {
            return Err(Error::NonFinite(0));
        }
        Ok(Self::HalfWave { dim, t })
    }

    /// `γ` must be a real trigonometric polynomial; positivity is checked by
    /// [`validate_phase`], not here.
    pub fn dissipative(dim: usize, t: f64, c: f64, gamma: TrigPoly, tau: f64) -> Result<Self> {
        check_dim(dim)?;
        if !gamma.is_real() {
            return Err(Error::InvalidArgument("dissipative gamma must be real".into()));
        }
        if !(t.is_finite() && c.is_finite() && tau.is_finite()) {
            return Err(Error::NonFinite(0));
        }
        Ok(Self::Dissipative { dim, t, c, gamma, tau })
    }

    /// Catalogue identifier as used in descriptors.
    pub fn id(&self) -> &'static str {
        match self {
            Self::Identity { .. } => "identity",
            Self::TorusDiffeo { .. } => "torus-diffeo",
            Self::HalfWave { .. } => "half-wave",
            Self::Dissipative { .. } => "dissipative",
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=2).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

impl Phase for CataloguePhase {
    fn dim(&self) -> usize {
        match self {
            Self::Identity { dim } | Self::HalfWave { dim, .. } | Self::Dissipative { dim, .. } => *dim,
            Self::TorusDiffeo { .. } => 1,
        }
    }

    fn eval(&self, x: &[f64], k: &[f64]) -> Complex64 {
        let xk = dot(x, k);
        match self {
            Self::Identity { .. } => Complex64::new(xk, 0.0),
            Self::TorusDiffeo { eps } => Complex64::new((x[0] + eps * libm::sin(2.0 * PI * x[0])) * k[0], 0.0),
            Self::HalfWave { t, .. } => Complex64::new(xk + t * freq_norm(k), 0.0),
            Self::Dissipative { t, c, gamma, .. } => {
                let r = freq_norm(k);
                Complex64::new(xk + t * c * r, t * gamma.eval(x).re * r)
            }
        }
    }

    fn grad_x(&self, x: &[f64], k: &[f64]) -> [Complex64; 2] {
        match self {
            Self::Identity { .. } | Self::HalfWave { .. } => real_pair(k),
            Self::TorusDiffeo { eps } => {
                real_pair(&[(1.0 + 2.0 * PI * eps * libm::cos(2.0 * PI * x[0])) * k[0]])
            }
            Self::Dissipative { t, gamma, .. } => {
                let r = freq_norm(k);
                let g = gamma.gradient(x);
                let mut out = real_pair(k);
                for (o, gi) in out.iter_mut().zip(g) {
                    o.im += t * gi.re * r;
                }
                out
            }
        }
    }

    fn grad_eta(&self, x: &[f64], k: &[f64]) -> [Complex64; 2] {
        match self {
            Self::Identity { .. } => real_pair(x),
            Self::TorusDiffeo { eps } => real_pair(&[x[0] + eps * libm::sin(2.0 * PI * x[0])]),
            Self::HalfWave { t, .. } => {
                let u = unit(k);
                let mut out = real_pair(x);
                for (o, ui) in out.iter_mut().zip(u) {
                    o.re += t * ui;
                }
                out
            }
            Self::Dissipative { t, c, gamma, .. } => {
                let u = unit(k);
                let gm = gamma.eval(x).re;
                let mut out = real_pair(x);
                for (o, ui) in out.iter_mut().zip(u) {
                    *o += Complex64::new(t * c * ui, t * gm * ui);
                }
                out
            }
        }
    }

    fn mixed_hessian(&self, x: &[f64], k: &[f64]) -> [[Complex64; 2]; 2] {
        match self {
            Self::Identity { .. } | Self::HalfWave { .. } => identity_hessian(),
            Self::TorusDiffeo { eps } => {
                let mut h = identity_hessian();
                h[0][0] = Complex64::new(1.0 + 2.0 * PI * eps * libm::cos(2.0 * PI * x[0]), 0.0);
                h
            }
            Self::Dissipative { dim, t, gamma, .. } => {
                let u = unit(k);
                let g = gamma.gradient(x);
                let mut h = identity_hessian();
                for i in 0..*dim {
                    for j in 0..*dim {
                        h[i][j].im += t * g[i].re * u[j];
                    }
                }
                h
            }
        }
    }

    fn rank(&self) -> usize {
        match self {
            Self::Identity { .. } => 0,
            Self::TorusDiffeo { .. } => 1,
            Self::HalfWave { dim, .. } | Self::Dissipative { dim, .. } => *dim,
        }
    }

    fn tau(&self) -> f64 {
        match self {
            Self::Dissipative { tau, .. } => *tau,
            _ => 0.0,
        }
    }

    fn is_x_independent(&self) -> bool {
        match self {
            Self::Identity { .. } | Self::HalfWave { .. } => true,
            Self::TorusDiffeo { eps } => *eps == 0.0,
            Self::Dissipative { gamma, .. } => gamma.is_constant(),
        }
    }

    fn name(&self) -> &str {
        self.id()
    }
}

/// Phase from closures; derivatives by central differences.
pub struct FnPhase<F> {
    dim: usize,
    rank: usize,
    tau: f64,
    x_independent: bool,
    name: &'static str,
    f: F,
}

impl<F> FnPhase<F>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Send + Sync,
{
    pub fn new(dim: usize, rank: usize, name: &'static str, f: F) -> Result<Self> {
        check_dim(dim)?;
        if rank > dim {
            return Err(Error::InvalidArgument(alloc::format!("rank {rank} exceeds dimension {dim}")));
        }
        Ok(Self {
            dim,
            rank,
            tau: 0.0,
            x_independent: false,
            name,
            f,
        })
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    /// Declares that `Φ - x·k` is independent of `x`.
    pub fn x_independent(mut self) -> Self {
        self.x_independent = true;
        self
    }

    fn diff(&self, x: &[f64], k: &[f64], wrt_x: bool) -> [Complex64; 2] {
        let d = self.dim;
        let mut out = [ZERO; 2];
        for (i, o) in out.iter_mut().enumerate().take(d) {
            let base = if wrt_x { x } else { k };
            let h = if wrt_x { 1e-6 } else { 1e-6 * freq_norm(k).max(1.0) };
            let mut a = [0.0; 2];
            let mut b = [0.0; 2];
            a[..d].copy_from_slice(base);
            b[..d].copy_from_slice(base);
            a[i] += h;
            b[i] -= h;
            let (fa, fb) = if wrt_x {
                ((self.f)(&a[..d], k), (self.f)(&b[..d], k))
            } else {
                ((self.f)(x, &a[..d]), (self.f)(x, &b[..d]))
            };
            *o = (fa - fb) / (2.0 * h);
        }
        out
    }
}

impl<F> Phase for FnPhase<F>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: &[f64], k: &[f64]) -> Complex64 {
        (self.f)(x, k)
    }
    fn grad_x(&self, x: &[f64], k: &[f64]) -> [Complex64; 2] {
        self.diff(x, k, true)
    }
    fn grad_eta(&self, x: &[f64], k: &[f64]) -> [Complex64; 2] {
        self.diff(x, k, false)
    }
    fn rank(&self) -> usize {
        self.rank
    }
    fn tau(&self) -> f64 {
        self.tau
    }
    fn is_x_independent(&self) -> bool {
        self.x_independent
    }
    fn name(&self) -> &str {
        self.name
    }
}

/// Tolerances for [`validate_phase`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTolerances {
    pub imag_floor: f64,
    pub homogeneity: f64,
    pub delta: f64,
    pub periodicity: f64,
}

impl Default for PhaseTolerances {
    fn default() -> Self {
        Self {
            imag_floor: -1e-12,
            homogeneity: 1e-9,
            delta: 1e-6,
            periodicity: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseReport {
    pub name: alloc::string::String,
    pub rank: usize,
    pub tau: f64,
    pub samples: usize,
    pub min_imag: f64,
    /// `max |Φ(x,λk) - λΦ(x,k)| / (λ|Φ(x,k)|)` over `λ ∈ {2, 4}`.
    pub max_homogeneity_residual: f64,
    /// `min |(∇_xΦ, ∇_ηΦ)|` over the unit frequency shell.
    pub min_gradient: f64,
    /// `min |det ∂_x∂_η(Re Φ + τ Im Φ)|`.
    pub min_det: f64,
    /// `max dist(Φ(x+e_i,k) - Φ(x,k), ℤ)`.
    pub max_periodicity_defect: f64,
}

fn sample_points(dim: usize, budget: usize) -> Vec<[f64; 2]> {
    // even counts per axis so that x = 1/2 is sampled
    let per_axis = if dim == 1 {
        budget.max(2)
    } else {
        libm::ceil(libm::sqrt(budget as f64)) as usize
    };
    let per_axis = per_axis + per_axis % 2;
    let total = per_axis.pow(dim as u32);
    (0..total)
        .map(|p| {
            [
                (p % per_axis) as f64 / per_axis as f64,
                (p / per_axis) as f64 / per_axis as f64,
            ]
        })
        .collect()
}

fn unit_shell(dim: usize) -> Vec<[f64; 2]> {
    if dim == 1 {
        alloc::vec![[1.0, 0.0], [-1.0, 0.0]]
    } else {
        (0..16)
            .map(|i| {
                let a = PI * i as f64 / 8.0;
                [libm::cos(a), libm::sin(a)]
            })
            .collect()
    }
}

fn lattice_probe(dim: usize) -> Vec<[f64; 2]> {
    let ks: &[i32] = &[-7, -3, -1, 1, 2, 5, 8];
    if dim == 1 {
        ks.iter().map(|&k| [k as f64, 0.0]).collect()
    } else {
        let mut out = Vec::new();
        for &a in &[-5, -1, 0, 1, 3, 6] {
            for &b in &[-4, -1, 0, 2, 7] {
                if a != 0 || b != 0 {
                    out.push([a as f64, b as f64]);
                }
            }
        }
        out
    }
}

fn det(h: &[[f64; 2]; 2], dim: usize) -> f64 {
    if dim == 1 {
        h[0][0]
    } else {
        h[0][0] * h[1][1] - h[0][1] * h[1][0]
    }
}

/// Samples the positive-type conditions without judging them.
pub fn phase_report(phase: &dyn Phase, budget: usize) -> Result<PhaseReport> {
    if budget < 100 {
        return Err(Error::InvalidArgument(alloc::format!("sample budget {budget} < 100")));
    }
    let dim = phase.dim();
    check_dim(dim)?;
    let xs = sample_points(dim, budget);
    let shell = unit_shell(dim);
    let lattice = lattice_probe(dim);
    let tau = phase.tau();

    let mut min_imag = f64::INFINITY;
    let mut max_hom: f64 = 0.0;
    let mut min_grad = f64::INFINITY;
    let mut min_det = f64::INFINITY;
    let mut max_period: f64 = 0.0;
    let mut samples = 0usize;

    for x in &xs {
        let x = &x[..dim];
        for k in &lattice {
            let k = &k[..dim];
            let v = phase.eval(x, k);
            samples += 1;
            min_imag = min_imag.min(v.im);
            for lambda in [2.0, 4.0] {
                let mut lk = [0.0; 2];
                for (l, ki) in lk.iter_mut().zip(k) {
                    *l = lambda * ki;
                }
                let diff = (phase.eval(x, &lk[..dim]) - v * lambda).norm();
                let scale = lambda * v.norm();
                let res = if scale > 0.0 { diff / scale } else { diff };
                max_hom = if res.is_nan() { f64::INFINITY } else { max_hom.max(res) };
            }
            for i in 0..dim {
                let mut shifted = [0.0; 2];
                shifted[..dim].copy_from_slice(x);
                shifted[i] += 1.0;
                let jump = phase.eval(&shifted[..dim], k) - v;
                let defect = (jump.re - libm::round(jump.re)).abs().max(jump.im.abs());
                max_period = max_period.max(defect);
            }
        }
        for k in &shell {
            let k = &k[..dim];
            let gx = phase.grad_x(x, k);
            let ge = phase.grad_eta(x, k);
            let g2: f64 = gx[..dim].iter().chain(&ge[..dim]).map(|c| c.norm_sqr()).sum();
            min_grad = min_grad.min(libm::sqrt(g2));
            let h = phase.mixed_hessian(x, k);
            let mut m = [[0.0; 2]; 2];
            for i in 0..dim {
                for j in 0..dim {
                    m[i][j] = h[i][j].re + tau * h[i][j].im;
                }
            }
            min_det = min_det.min(det(&m, dim).abs());
        }
    }

    Ok(PhaseReport {
        name: phase.name().into(),
        rank: phase.rank(),
        tau,
        samples,
        min_imag,
        max_homogeneity_residual: max_hom,
        min_gradient: min_grad,
        min_det,
        max_periodicity_defect: max_period,
    })
}

/// Samples the phase and checks the positive-type conditions. Fails with the
/// first violated condition named.
pub fn validate_phase(phase: &dyn Phase, budget: usize, tol: &PhaseTolerances) -> Result<PhaseReport> {
    let rep = phase_report(phase, budget)?;
    let fail = |bullet: &'static str, detail: alloc::string::String| Err(Error::PhaseViolation { bullet, detail });
    if !(rep.min_imag >= tol.imag_floor) {
        return fail("imaginary part nonnegative", alloc::format!("min Im = {:e}", rep.min_imag));
    }
    if !(rep.max_homogeneity_residual <= tol.homogeneity) {
        return fail(
            "homogeneous of degree one",
            alloc::format!("residual = {:e}", rep.max_homogeneity_residual),
        );
    }
    if !(rep.min_gradient >= tol.delta) {
        return fail("no critical points", alloc::format!("min |grad| = {:e}", rep.min_gradient));
    }
    if !(rep.min_det >= tol.delta) {
        return fail("nondegenerate mixed Hessian", alloc::format!("min |det| = {:e}", rep.min_det));
    }
    if !(rep.max_periodicity_defect <= tol.periodicity) {
        return fail(
            "periodic in x",
            alloc::format!("defect = {:e}", rep.max_periodicity_defect),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> PhaseTolerances {
        PhaseTolerances::default()
    }

    #[test]
    fn identity_passes_with_unit_determinant() {
        for dim in [1, 2] {
            let rep = validate_phase(&CataloguePhase::identity(dim).unwrap(), 100, &tol()).unwrap();
            assert_eq!(rep.min_det, 1.0);
            assert_eq!(rep.min_imag, 0.0);
            assert!(rep.max_homogeneity_residual <= 1e-12);
        }
    }

    #[test]
    fn negative_imaginary_part_fails() {
        let ph = FnPhase::new(1, 1, "leaky", |x: &[f64], k: &[f64]| {
            Complex64::new(x[0] * k[0], -1e-3 * k[0].abs())
        })
        .unwrap();
        match validate_phase(&ph, 100, &tol()) {
            Err(Error::PhaseViolation { bullet, .. }) => assert_eq!(bullet, "imaginary part nonnegative"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn torus_diffeo_determinant_minimum() {
        let rep = validate_phase(&CataloguePhase::torus_diffeo(0.1).unwrap(), 128, &tol()).unwrap();
        assert!((rep.min_det - (1.0 - 0.2 * PI)).abs() < 1e-12, "{}", rep.min_det);
        assert!(CataloguePhase::torus_diffeo(0.2).is_err());
    }

    #[test]
    fn dissipative_entry_validates() {
        let gamma = TrigPoly::real_constant(0.5).with_term([1, 0], Complex64::new(0.2, 0.0), ZERO);
        let ph = CataloguePhase::dissipative(2, 0.3, 1.0, gamma.clone(), 0.0).unwrap();
        let rep = validate_phase(&ph, 100, &tol()).unwrap();
        assert!(rep.min_imag >= 0.0);
        assert!(rep.max_homogeneity_residual <= 1e-12);
        // the closed-form Hessian agrees with numerical differentiation
        let fd = FnPhase::new(2, 2, "fd", move |x: &[f64], k: &[f64]| ph.eval(x, k)).unwrap();
        let x = [0.3, 0.8];
        let k = [2.0, -1.0];
        let ph = CataloguePhase::dissipative(2, 0.3, 1.0, gamma, 0.0).unwrap();
        let a = ph.mixed_hessian(&x, &k);
        let b = fd.mixed_hessian(&x, &k);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[i][j]).norm() < 1e-4);
            }
        }
    }

    #[test]
    fn negative_gamma_is_rejected() {
        let ph = CataloguePhase::dissipative(1, 1.0, 0.0, TrigPoly::real_constant(-1e-3), 0.0).unwrap();
        assert!(validate_phase(&ph, 100, &tol()).is_err());
    }

    #[test]
    fn half_wave_gradients_match_differences() {
        let ph = CataloguePhase::half_wave(2, 0.7).unwrap();
        let x = [0.1, 0.4];
        let k = [3.0, 4.0];
        let g = ph.grad_eta(&x, &k);
        let h = 1e-6;
        let d0 = (ph.eval(&x, &[3.0 + h, 4.0]) - ph.eval(&x, &[3.0 - h, 4.0])) / (2.0 * h);
        assert!((d0 - g[0]).norm() < 1e-8);
        assert!(validate_phase(&ph, 100, &tol()).is_ok());
    }

    #[test]
    fn budget_precondition() {
        assert!(phase_report(&CataloguePhase::identity(1).unwrap(), 99).is_err());
    }
}

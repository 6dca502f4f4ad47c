//! Symbols `σ(x, k)` of class `S^m_{1,0}` and a finite-difference check of
//! the estimates `|D^α_η D^β_x σ| ≲ ⟨k⟩^{m-|α|}`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::trigpoly::TrigPoly;
use crate::{bracket, Error, Result};

/// Where a symbol is supported in `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XSupport {
    FullTorus,
    /// Axis-aligned box `lo ≤ x < hi` inside `[0,1)^d`.
    Box { lo: [f64; 2], hi: [f64; 2] },
}

impl XSupport {
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            XSupport::FullTorus => true,
            XSupport::Box { lo, hi } => x.iter().enumerate().all(|(i, &v)| v >= lo[i] && v < hi[i]),
        }
    }
}

pub trait Symbol: Send + Sync {
    fn eval(&self, x: &[f64], k: &[f64]) -> Complex64;

    /// Declared order `m`.
    fn order(&self) -> f64;

    fn x_support(&self) -> XSupport {
        XSupport::FullTorus
    }

    fn is_x_independent(&self) -> bool {
        false
    }
}

/// `σ ≡ c`, order 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantSymbol(pub Complex64);

impl ConstantSymbol {
    pub fn one() -> Self {
        Self(Complex64::new(1.0, 0.0))
    }
}

impl Symbol for ConstantSymbol {
    fn eval(&self, _x: &[f64], _k: &[f64]) -> Complex64 {
        self.0
    }
    fn order(&self) -> f64 {
        0.0
    }
    fn is_x_independent(&self) -> bool {
        true
    }
}

/// `σ(x, k) = ⟨k⟩^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselSymbol {
    pub order: f64,
}

impl Symbol for BesselSymbol {
    fn eval(&self, _x: &[f64], k: &[f64]) -> Complex64 {
        Complex64::new(bracket(k).powf(self.order), 0.0)
    }
    fn order(&self) -> f64 {
        self.order
    }
    fn is_x_independent(&self) -> bool {
        true
    }
}

/// `σ(x, k) = a(x) ⟨k⟩^m` with a trigonometric amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulatedSymbol {
    pub amplitude: TrigPoly,
    pub order: f64,
}

impl Symbol for ModulatedSymbol {
    fn eval(&self, x: &[f64], k: &[f64]) -> Complex64 {
        self.amplitude.eval(x) * bracket(k).powf(self.order)
    }
    fn order(&self) -> f64 {
        self.order
    }
    fn is_x_independent(&self) -> bool {
        self.amplitude.is_constant()
    }
}

/// Symbol backed by a closure; for custom evaluators.
pub struct FnSymbol<F> {
    f: F,
    order: f64,
    support: XSupport,
}

impl<F> FnSymbol<F>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Send + Sync,
{
    pub fn new(order: f64, f: F) -> Self {
        Self {
            f,
            order,
            support: XSupport::FullTorus,
        }
    }

    pub fn with_support(mut self, support: XSupport) -> Self {
        self.support = support;
        self
    }
}

impl<F> Symbol for FnSymbol<F>
where
    F: Fn(&[f64], &[f64]) -> Complex64 + Send + Sync,
{
    fn eval(&self, x: &[f64], k: &[f64]) -> Complex64 {
        (self.f)(x, k)
    }
    fn order(&self) -> f64 {
        self.order
    }
    fn x_support(&self) -> XSupport {
        self.support
    }
}

/// `σ(x, k) ⟨k⟩^s`; the symbol of `T ∘ J_s` when `σ` is the symbol of `T`.
pub struct BesselScaled {
    pub inner: Arc<dyn Symbol>,
    pub s: f64,
}

impl Symbol for BesselScaled {
    fn eval(&self, x: &[f64], k: &[f64]) -> Complex64 {
        self.inner.eval(x, k) * bracket(k).powf(self.s)
    }
    fn order(&self) -> f64 {
        self.inner.order() + self.s
    }
    fn x_support(&self) -> XSupport {
        self.inner.x_support()
    }
    fn is_x_independent(&self) -> bool {
        self.inner.is_x_independent()
    }
}

/// Sampling configuration for [`symbol_check`].
#[derive(Debug, Clone, Copy)]
pub struct SymbolCheckConfig {
    pub dim: usize,
    /// Largest sampled `|k|` on the coarse pass; the refined pass doubles it.
    pub radius: f64,
    /// `x` samples per axis on the coarse pass; doubled when refining.
    pub x_samples: usize,
    /// Refinement ratios must fall in `[1/ratio_band, ratio_band]`.
    pub ratio_band: f64,
    /// Constants below this on both passes count as zero.
    pub zero_floor: f64,
}

impl SymbolCheckConfig {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            radius: 32.0,
            x_samples: 8,
            ratio_band: 2.0,
            zero_floor: 1e-6,
        }
    }
}

/// `sup |D^α_η D^β_x σ| ⟨k⟩^{|α|-m}` for one pair of multi-indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolConstant {
    pub alpha: [u8; 2],
    pub beta: [u8; 2],
    pub coarse: f64,
    pub refined: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolReport {
    pub order: f64,
    pub constants: Vec<SymbolConstant>,
    pub pass: bool,
}

impl SymbolReport {
    pub fn constant(&self, alpha: [u8; 2], beta: [u8; 2]) -> Option<&SymbolConstant> {
        self.constants.iter().find(|c| c.alpha == alpha && c.beta == beta)
    }
}

fn multi_indices(dim: usize, max_order: usize) -> Vec<[u8; 2]> {
    let mut out = Vec::new();
    for a in 0..=max_order {
        if dim == 1 {
            out.push([a as u8, 0]);
        } else {
            for b in 0..=(max_order - a) {
                out.push([a as u8, b as u8]);
            }
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Central difference stencil for the `order`-th derivative: `(offset, weight)`
/// pairs with offsets in units of the step.
fn stencil(order: usize) -> Vec<(f64, f64)> {
    (0..=order)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            (order as f64 / 2.0 - i as f64, sign * binomial(order, i))
        })
        .collect()
}

fn mixed_derivative(sym: &dyn Symbol, dim: usize, x: &[f64], k: &[f64], alpha: [u8; 2], beta: [u8; 2]) -> Complex64 {
    let hx = 1e-3;
    let hk = 1e-2 * bracket(k);
    let axes: Vec<(usize, bool, usize)> = (0..dim)
        .flat_map(|i| [(i, true, alpha[i] as usize), (i, false, beta[i] as usize)])
        .filter(|a| a.2 > 0)
        .collect();
    let stencils: Vec<Vec<(f64, f64)>> = axes.iter().map(|a| stencil(a.2)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut counters = alloc::vec![0usize; axes.len()];
    loop {
        let mut xs = [0.0; 2];
        let mut ks = [0.0; 2];
        xs[..dim].copy_from_slice(x);
        ks[..dim].copy_from_slice(k);
        let mut w = 1.0;
        for (a, (&c, st)) in axes.iter().zip(counters.iter().zip(&stencils)) {
            let (off, wt) = st[c];
            w *= wt;
            if a.1 {
                ks[a.0] += off * hk;
            } else {
                xs[a.0] += off * hx;
            }
        }
        acc += sym.eval(&xs[..dim], &ks[..dim]) * w;
        // odometer over the stencil product
        let mut i = 0;
        loop {
            if i == counters.len() {
                let scale: f64 = axes
                    .iter()
                    .map(|a| if a.1 { hk.powi(a.2 as i32) } else { hx.powi(a.2 as i32) })
                    .product();
                return acc / scale;
            }
            counters[i] += 1;
            if counters[i] < stencils[i].len() {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}

fn sample_frequencies(dim: usize, radius: f64) -> Vec<[f64; 2]> {
    let mut radii = alloc::vec![0.0];
    let mut r = 1.0;
    while r <= radius {
        radii.push(r);
        if 1.5 * r <= radius {
            radii.push(1.5 * r);
        }
        r *= 2.0;
    }
    let dirs: Vec<[f64; 2]> = if dim == 1 {
        alloc::vec![[1.0, 0.0], [-1.0, 0.0]]
    } else {
        (0..8)
            .map(|i| {
                let a = core::f64::consts::PI * i as f64 / 4.0;
                [libm::cos(a), libm::sin(a)]
            })
            .collect()
    };
    let mut out = Vec::new();
    for &r in &radii {
        for d in &dirs {
            out.push([r * d[0], r * d[1]]);
            if r == 0.0 {
                break;
            }
        }
    }
    out
}

fn sup_constant(sym: &dyn Symbol, cfg: &SymbolCheckConfig, radius: f64, xs_per_axis: usize, alpha: [u8; 2], beta: [u8; 2]) -> f64 {
    let dim = cfg.dim;
    let m = sym.order();
    let support = sym.x_support();
    let ks = sample_frequencies(dim, radius);
    let npts = xs_per_axis.pow(dim as u32);
    let abs_alpha = (alpha[0] + alpha[1]) as f64;
    let mut sup: f64 = 0.0;
    for p in 0..npts {
        let x = [
            (p % xs_per_axis) as f64 / xs_per_axis as f64,
            (p / xs_per_axis) as f64 / xs_per_axis as f64,
        ];
        if !support.contains(&x[..dim]) {
            continue;
        }
        for k in &ks {
            let d = mixed_derivative(sym, dim, &x[..dim], &k[..dim], alpha, beta).norm();
            let v = d * bracket(&k[..dim]).powf(abs_alpha - m);
            sup = if v.is_nan() { f64::INFINITY } else { sup.max(v) };
        }
    }
    sup
}

/// Estimates the `S^m_{1,0}` constants for all `|α|, |β| ≤ max_order` and
/// compares them against a pass with doubled frequency radius and `x`
/// resolution. The report passes iff every constant is finite and stable.
pub fn symbol_check(sym: &dyn Symbol, max_order: usize, cfg: &SymbolCheckConfig) -> Result<SymbolReport> {
    if max_order > 3 {
        return Err(Error::InvalidArgument(alloc::format!("max_order {max_order} > 3")));
    }
    if !(1..=2).contains(&cfg.dim) {
        return Err(Error::UnsupportedDimension(cfg.dim));
    }
    let idx = multi_indices(cfg.dim, max_order);
    let mut constants = Vec::new();
    for &alpha in &idx {
        for &beta in &idx {
            let coarse = sup_constant(sym, cfg, cfg.radius, cfg.x_samples, alpha, beta);
            let refined = sup_constant(sym, cfg, 2.0 * cfg.radius, 2 * cfg.x_samples, alpha, beta);
            let stable = if !(coarse.is_finite() && refined.is_finite()) {
                false
            } else if coarse < cfg.zero_floor && refined < cfg.zero_floor {
                true
            } else {
                let ratio = refined / coarse;
                ratio >= 1.0 / cfg.ratio_band && ratio <= cfg.ratio_band
            };
            constants.push(SymbolConstant {
                alpha,
                beta,
                coarse,
                refined,
                stable,
            });
        }
    }
    let pass = constants.iter().all(|c| c.stable);
    Ok(SymbolReport {
        order: sym.order(),
        constants,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_symbol_has_trivial_constants() {
        let rep = symbol_check(&ConstantSymbol::one(), 2, &SymbolCheckConfig::new(1)).unwrap();
        assert!(rep.pass);
        for c in &rep.constants {
            if c.alpha == [0, 0] && c.beta == [0, 0] {
                assert_eq!(c.coarse, 1.0);
            } else {
                assert_eq!(c.coarse, 0.0);
                assert_eq!(c.refined, 0.0);
            }
        }
    }

    #[test]
    fn bessel_weight_is_order_minus_one() {
        let rep = symbol_check(&BesselSymbol { order: -1.0 }, 3, &SymbolCheckConfig::new(1)).unwrap();
        assert!(rep.pass, "{rep:?}");
        let c0 = rep.constant([0, 0], [0, 0]).unwrap();
        assert!((c0.coarse - 1.0).abs() < 1e-12);
        // d/dη ⟨η⟩^{-1} = -η⟨η⟩^{-3}; times ⟨η⟩^{2} peaks at |η|/⟨η⟩ < 1.
        let c1 = rep.constant([1, 0], [0, 0]).unwrap();
        assert!(c1.coarse > 0.5 && c1.coarse < 1.0);
    }

    #[test]
    fn exponential_growth_is_flagged() {
        let sym = FnSymbol::new(0.0, |_x: &[f64], k: &[f64]| Complex64::new(libm::exp(crate::freq_norm(k)), 0.0));
        let rep = symbol_check(&sym, 1, &SymbolCheckConfig::new(1)).unwrap();
        assert!(!rep.pass);
        assert!(!rep.constant([0, 0], [0, 0]).unwrap().stable);
    }

    #[test]
    fn modulated_symbol_two_dimensions() {
        let sym = ModulatedSymbol {
            amplitude: TrigPoly::real_constant(1.0).with_term([1, 1], Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.0)),
            order: 0.5,
        };
        let rep = symbol_check(&sym, 1, &SymbolCheckConfig::new(2)).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(symbol_check(&sym, 4, &SymbolCheckConfig::new(2)).is_err());
    }

    #[test]
    fn stencil_weights() {
        assert_eq!(stencil(1), alloc::vec![(0.5, 1.0), (-0.5, -1.0)]);
        assert_eq!(stencil(2), alloc::vec![(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)]);
    }
}

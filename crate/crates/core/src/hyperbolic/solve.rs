use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Signed;

use super::propagate::{first_order_propagate, PropagationSymbol};
use super::vandermonde::vandermonde_data_map;
use super::HyperbolicProblem;
use crate::exec::Executor;
use crate::function_spaces::fl_norm;
use crate::index::{rational_to_f64, Exponent, Rational};
use crate::spectral::{forward_transform, inverse_transform};
use crate::{freq_norm, Error, GridFunction, Result, SpectralFunction};

/// Which constant multiplies `|1/p - 1/2|` in the loss of regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LossConvention {
    /// `α_p = d|1/p - 1/2|`.
    #[default]
    Dimension,
    /// `α_p = κ|1/p - 1/2|`.
    Rank(u32),
}

/// `α_p` for the given convention in dimension `d`.
pub fn alpha_threshold(p: Exponent, d: u32, loss: LossConvention) -> f64 {
    let c = match loss {
        LossConvention::Dimension => d,
        LossConvention::Rank(k) => k,
    };
    let v = Rational::from_integer(c as i128) * (p.recip() - Rational::new(1, 2)).abs();
    rational_to_f64(&v)
}

/// `τ_j` of the problem as a first-order symbol; zero at `k = 0`.
struct RootSymbol<'a> {
    problem: &'a HyperbolicProblem,
    j: usize,
}

impl PropagationSymbol for RootSymbol<'_> {
    fn eval(&self, t: f64, x: &[f64], k: &[f64]) -> Complex64 {
        if freq_norm(k) == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.problem.raw_roots(t, x, k)[self.j]
    }
    fn is_x_independent(&self) -> bool {
        self.problem.is_x_independent()
    }
    fn is_autonomous(&self) -> bool {
        self.problem.is_autonomous()
    }
}

/// Factor data `g_j` of a problem, ready to be propagated to any time.
pub struct CauchySolution<'a> {
    problem: &'a HyperbolicProblem,
    factors: Vec<GridFunction>,
    /// `f̂_l(0)`; the zero mode solves `∂_t^m v̂ = 0` exactly.
    zero_mode: Vec<Complex64>,
    excised_modes: usize,
}

/// `Σ_{l ≥ max(1, d)} c_l t^{l-d} / (l-d)!`.
fn zero_mode_taylor(c: &[Complex64], t: f64, d: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (l, &cl) in c.iter().enumerate().skip(d.max(1)) {
        let e = l - d;
        let mut w = 1.0;
        for i in 1..=e {
            w *= t / i as f64;
        }
        acc += cl * w;
    }
    acc
}

impl<'a> CauchySolution<'a> {
    /// Applies the Vandermonde data map: mode by mode when the coefficients
    /// do not depend on `x`, otherwise as the pseudo-differential operator
    /// `Σ_k e^{2πix·k} M(0,x,k)^{-1} f̂(k)`. At the zero mode all roots
    /// vanish: `f̂_0(0)` goes to the first factor and the higher data enter
    /// through the Taylor polynomial `Σ_{l≥1} f̂_l(0) t^l / l!`.
    pub fn new(problem: &'a HyperbolicProblem, exec: &dyn Executor) -> Result<Self> {
        let m = problem.order();
        let grid = *problem.grid();
        let dim = grid.dim();
        let spectra: Vec<SpectralFunction> = problem.data().iter().map(forward_transform).collect();
        let zero_slot = grid.spectral_index(&[0, 0][..dim]).unwrap_or(0);
        let gap_tol = problem.tolerances().gap;
        let zero_mode: Vec<Complex64> = spectra.iter().map(|s| s.coeffs()[zero_slot]).collect();

        if m == 1 {
            return Ok(Self {
                problem,
                factors: problem.data().to_vec(),
                zero_mode,
                excised_modes: 1,
            });
        }

        let factors = if problem.is_x_independent() {
            let mut g_hat: Vec<SpectralFunction> = (0..m).map(|_| SpectralFunction::zeros(grid)).collect();
            for i in 0..grid.len() {
                let rhs: Vec<Complex64> = spectra.iter().map(|s| s.coeffs()[i]).collect();
                let g = if i == zero_slot {
                    super::excised_data_map(&rhs)
                } else {
                    let k = grid.frequency_f64(i);
                    let roots = problem.raw_roots(0.0, &[0.0, 0.0][..dim], &k[..dim]);
                    vandermonde_data_map(&roots, &rhs, k, gap_tol * freq_norm(&k[..dim]).max(1.0))?
                };
                for (gh, gj) in g_hat.iter_mut().zip(g) {
                    gh.coeffs_mut()[i] = gj;
                }
            }
            g_hat.iter().map(inverse_transform).collect()
        } else {
            psido_data_map(problem, &spectra, exec)?
        };
        Ok(Self {
            problem,
            factors,
            zero_mode,
            excised_modes: 1,
        })
    }

    /// `g_1..g_m`.
    pub fn factor_data(&self) -> &[GridFunction] {
        &self.factors
    }

    pub fn excised_modes(&self) -> usize {
        self.excised_modes
    }

    /// Number of propagation steps used to reach `t`.
    pub fn steps_for(&self, t: f64) -> usize {
        ((self.problem.steps_per_unit() as f64 * t).ceil() as usize).max(1)
    }

    /// `v(t) = Σ_j U_j(t) g_j` and the `FL^2` growth factor of each `U_j`.
    pub fn evaluate(&self, t: f64, exec: &dyn Executor) -> Result<(GridFunction, Vec<f64>)> {
        if !(0.0..=self.problem.horizon()).contains(&t) {
            return Err(Error::InvalidArgument(alloc::format!(
                "t = {t} outside [0, {}]",
                self.problem.horizon()
            )));
        }
        let steps = self.steps_for(t);
        let two = Exponent::from_int(2)?;
        let mut v = GridFunction::zeros(*self.problem.grid());
        let mut growth = Vec::with_capacity(self.factors.len());
        for (j, g) in self.factors.iter().enumerate() {
            let sym = RootSymbol { problem: self.problem, j };
            let u = first_order_propagate(&sym, g, 0.0, t, steps, exec)?;
            let before = fl_norm(g, two, 0.0).value;
            growth.push(if before > 0.0 { fl_norm(&u, two, 0.0).value / before } else { 1.0 });
            v = v.add(&u)?;
        }
        let c = zero_mode_taylor(&self.zero_mode, t, 0);
        if c != Complex64::new(0.0, 0.0) {
            let shift = GridFunction::new(*v.grid(), alloc::vec![c; v.grid().len()])?;
            v = v.add(&shift)?;
        }
        Ok((v, growth))
    }

    /// `∂_t^l v(t)` from the modal representation; needs `x`-independent,
    /// autonomous coefficients.
    pub fn time_derivative(&self, t: f64, l: u32) -> Result<GridFunction> {
        if !(self.problem.is_x_independent() && self.problem.is_autonomous()) {
            return Err(Error::InvalidArgument(
                "modal time derivatives need x-independent autonomous coefficients".into(),
            ));
        }
        let grid = *self.problem.grid();
        let dim = grid.dim();
        let g_hat: Vec<SpectralFunction> = self.factors.iter().map(forward_transform).collect();
        let mut out = SpectralFunction::zeros(grid);
        let i_unit = Complex64::new(0.0, 1.0);
        for i in 0..grid.len() {
            let k = grid.frequency_f64(i);
            let k = &k[..dim];
            let roots = if freq_norm(k) == 0.0 {
                alloc::vec![Complex64::new(0.0, 0.0); self.factors.len()]
            } else {
                self.problem.raw_roots(0.0, &[0.0, 0.0][..dim], k)
            };
            out.coeffs_mut()[i] = roots
                .iter()
                .zip(&g_hat)
                .map(|(tau, g)| (i_unit * tau).powu(l) * (i_unit * tau * t).exp() * g.coeffs()[i])
                .sum();
            if freq_norm(k) == 0.0 {
                out.coeffs_mut()[i] += zero_mode_taylor(&self.zero_mode, t, l as usize);
            }
        }
        Ok(inverse_transform(&out))
    }
}

fn psido_data_map(
    problem: &HyperbolicProblem,
    spectra: &[SpectralFunction],
    exec: &dyn Executor,
) -> Result<Vec<GridFunction>> {
    use core::sync::atomic::{AtomicUsize, Ordering};

    let m = problem.order();
    let grid = *problem.grid();
    let dim = grid.dim();
    let zero_slot = grid.spectral_index(&[0, 0][..dim]).unwrap_or(0);
    let gap_tol = problem.tolerances().gap;
    let modes: Vec<usize> = grid
        .lexicographic_frequencies()
        .into_iter()
        .filter(|&i| i != zero_slot && spectra.iter().any(|s| s.coeffs()[i] != Complex64::new(0.0, 0.0)))
        .collect();
    let solve_at = |x: &[f64], i: usize| {
        let k = grid.frequency_f64(i);
        let roots = problem.raw_roots(0.0, x, &k[..dim]);
        let rhs: Vec<Complex64> = spectra.iter().map(|s| s.coeffs()[i]).collect();
        vandermonde_data_map(&roots, &rhs, k, gap_tol * freq_norm(&k[..dim]).max(1.0))
    };
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        // smallest failing output point; the error is rebuilt from it afterwards
        let failed_at = AtomicUsize::new(usize::MAX);
        let mut values = alloc::vec![Complex64::new(0.0, 0.0); grid.len()];
        let kernel = |start: usize, chunk: &mut [Complex64]| {
            for (off, slot) in chunk.iter_mut().enumerate() {
                let xp = grid.point(start + off);
                let x = &xp[..dim];
                let mut acc = if j == 0 {
                    spectra[0].coeffs()[zero_slot]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                for &i in &modes {
                    match solve_at(x, i) {
                        Ok(g) => {
                            let k = grid.frequency_f64(i);
                            let angle = 2.0 * core::f64::consts::PI * x.iter().zip(&k).map(|(a, b)| a * b).sum::<f64>();
                            acc += Complex64::from_polar(1.0, angle) * g[j];
                        }
                        Err(_) => {
                            failed_at.fetch_min(start + off, Ordering::Relaxed);
                        }
                    }
                }
                *slot = acc;
            }
        };
        exec.run(&mut values, &kernel);
        let bad = failed_at.load(Ordering::Relaxed);
        if bad != usize::MAX {
            let xp = grid.point(bad);
            for &i in &modes {
                solve_at(&xp[..dim], i)?;
            }
        }
        out.push(GridFunction::new(grid, values)?);
    }
    Ok(out)
}

/// Norm of `v(t)` in `FL^p_α` next to `Σ_l ‖f_l‖_{FL^p_{α+α_p-l}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormComparison {
    pub p: Exponent,
    pub alpha: f64,
    pub alpha_p: f64,
    pub solution_norm: f64,
    pub data_norm_sum: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub t: f64,
    pub steps: usize,
    pub order: usize,
    pub loss: LossConvention,
    pub norms: Vec<NormComparison>,
    /// `‖U_j(t) g_j‖_{FL^2} / ‖g_j‖_{FL^2}` per factor.
    pub factor_growth: Vec<f64>,
    pub min_relative_root_gap: f64,
    pub min_root_imag: f64,
    /// Modes routed through the zero-mode fallback of the data map.
    pub excised_modes: usize,
    pub x_independent: bool,
    pub autonomous: bool,
}

fn data_norm_sum(data: &[GridFunction], p: Exponent, shift: f64) -> f64 {
    data.iter()
        .enumerate()
        .map(|(l, f)| fl_norm(f, p, shift - l as f64).value)
        .sum()
}

/// Solves the problem at time `t` and reports `FL^p_α` norms for each
/// requested `(p, α)`, `p ≥ 1`.
pub fn solve_cauchy(
    problem: &HyperbolicProblem,
    t: f64,
    norms: &[(Exponent, f64)],
    loss: LossConvention,
    exec: &dyn Executor,
) -> Result<(GridFunction, SolveReport)> {
    if let Some((p, _)) = norms.iter().find(|(p, _)| !p.is_banach()) {
        return Err(Error::InvalidIndex(alloc::format!("norm comparison needs p >= 1, got {p}")));
    }
    let sol = CauchySolution::new(problem, exec)?;
    let (v, factor_growth) = sol.evaluate(t, exec)?;
    let d = problem.grid().dim() as u32;
    let norms = norms
        .iter()
        .map(|&(p, alpha)| {
            let alpha_p = alpha_threshold(p, d, loss);
            let solution_norm = fl_norm(&v, p, alpha).value;
            let data_norm_sum = data_norm_sum(problem.data(), p, alpha + alpha_p);
            NormComparison {
                p,
                alpha,
                alpha_p,
                solution_norm,
                data_norm_sum,
                ratio: solution_norm / data_norm_sum,
            }
        })
        .collect();
    let cert = problem.certificate();
    let report = SolveReport {
        t,
        steps: sol.steps_for(t),
        order: problem.order(),
        loss,
        norms,
        factor_growth,
        min_relative_root_gap: cert.min_relative_gap,
        min_root_imag: cert.min_imag,
        excised_modes: sol.excised_modes(),
        x_independent: problem.is_x_independent(),
        autonomous: problem.is_autonomous(),
    };
    Ok((v, report))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegularityVariant {
    /// `FL^p → FL^p` with loss `α_p`.
    Pp,
    /// `FL^p → FL^q`, `q < p`, with loss `α_{pq} + ε`.
    Pq { q: Exponent },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub alpha: f64,
    /// `α_p`, or `α_{pq}` including the margin.
    pub loss: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub budget: f64,
    pub exceeds_budget: bool,
}

/// `‖v‖_{FL^{p or q}_α} / Σ_l ‖f_l‖_{FL^p_{α+loss-l}}`.
#[allow(clippy::too_many_arguments)]
pub fn regularity_report(
    v: &GridFunction,
    data: &[GridFunction],
    p: Exponent,
    alpha: f64,
    variant: RegularityVariant,
    loss: LossConvention,
    eps_margin: f64,
    budget: f64,
) -> Result<RegularityReport> {
    if !p.is_banach() {
        return Err(Error::InvalidIndex(alloc::format!("p = {p} must satisfy 1 <= p <= inf")));
    }
    for f in data {
        v.grid().ensure_same(f.grid())?;
    }
    let d = v.grid().dim() as u32;
    let (target, loss_value) = match variant {
        RegularityVariant::Pp => (p, alpha_threshold(p, d, loss)),
        RegularityVariant::Pq { q } => {
            if !q.is_banach() {
                return Err(Error::InvalidIndex(alloc::format!("q = {q} must satisfy q >= 1")));
            }
            if q >= p {
                return Err(Error::InvalidIndex(alloc::format!("need q < p, got q = {q}, p = {p}")));
            }
            if !(eps_margin > 0.0) {
                return Err(Error::InvalidArgument("eps_margin must be positive".into()));
            }
            let gap = Rational::from_integer(d as i128) * (q.recip() - p.recip());
            (q, alpha_threshold(q, d, loss) + rational_to_f64(&gap) + eps_margin)
        }
    };
    let numerator = fl_norm(v, target, alpha).value;
    let denominator = data_norm_sum(data, p, alpha + loss_value);
    let ratio = numerator / denominator;
    Ok(RegularityReport {
        alpha,
        loss: loss_value,
        numerator,
        denominator,
        ratio,
        budget,
        exceeds_budget: !(ratio <= budget),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Serial;
    use crate::hyperbolic::{CoefficientSymbol, HomogeneousCoefficient};
    use crate::GridSpec;
    use alloc::sync::Arc;
    use core::f64::consts::PI;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn wave(n: usize, f0: GridFunction, f1: GridFunction) -> HyperbolicProblem {
        let _ = n;
        let c: Arc<dyn CoefficientSymbol> = Arc::new(HomogeneousCoefficient::constant(2, Complex64::new(-1.0, 0.0)));
        HyperbolicProblem::new(alloc::vec![c], alloc::vec![f0, f1], 2.0, 4).unwrap()
    }

    #[test]
    fn wave_closed_form() {
        let g = GridSpec::new(1, 32).unwrap();
        let f0 = GridFunction::from_fn(g, |x| Complex64::new(libm::cos(2.0 * PI * x[0]), 0.0)).unwrap();
        let p = wave(32, f0, GridFunction::zeros(g));
        let t = 0.3;
        let (v, rep) = solve_cauchy(&p, t, &[(e("2"), 0.0)], LossConvention::Dimension, &Serial).unwrap();
        let exact = GridFunction::from_fn(g, |x| {
            Complex64::new(libm::cos(2.0 * PI * x[0]) * libm::cos(2.0 * PI * t), 0.0)
        })
        .unwrap();
        assert!(v.sub(&exact).unwrap().max_abs() < 1e-12);
        assert_eq!(rep.norms[0].alpha_p, 0.0);
        assert!(rep.factor_growth.iter().all(|g| (g - 1.0).abs() < 1e-12));
    }

    #[test]
    fn derivatives_reproduce_data_at_zero() {
        let g = GridSpec::new(1, 16).unwrap();
        let f0 = GridFunction::from_fn(g, |x| Complex64::new(libm::sin(2.0 * PI * 3.0 * x[0]), 0.2)).unwrap();
        let f1 = GridFunction::from_fn(g, |x| Complex64::new(0.0, libm::cos(2.0 * PI * 2.0 * x[0]))).unwrap();
        let p = wave(16, f0.clone(), f1.clone());
        let sol = CauchySolution::new(&p, &Serial).unwrap();
        assert!(sol.time_derivative(0.0, 0).unwrap().sub(&f0).unwrap().max_abs() < 1e-12);
        assert!(sol.time_derivative(0.0, 1).unwrap().sub(&f1).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn zero_mode_velocity_drifts_linearly() {
        let g = GridSpec::new(1, 16).unwrap();
        let c = Complex64::new(0.5, -0.25);
        let f1 = GridFunction::from_fn(g, |_| c).unwrap();
        let p = wave(16, GridFunction::zeros(g), f1);
        let sol = CauchySolution::new(&p, &Serial).unwrap();
        let (v, _) = sol.evaluate(0.8, &Serial).unwrap();
        assert!(v.values().iter().all(|z| (z - c * 0.8).norm() < 1e-14));
        let dv = sol.time_derivative(0.8, 1).unwrap();
        assert!(dv.values().iter().all(|z| (z - c).norm() < 1e-14));
        assert!(sol.time_derivative(0.8, 2).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn time_range_and_norm_range() {
        let g = GridSpec::new(1, 16).unwrap();
        let p = wave(16, GridFunction::zeros(g), GridFunction::zeros(g));
        assert!(solve_cauchy(&p, 2.5, &[], LossConvention::Dimension, &Serial).is_err());
        assert!(solve_cauchy(&p, 1.0, &[(e("0.5"), 0.0)], LossConvention::Dimension, &Serial).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(alpha_threshold(e("1"), 1, LossConvention::Dimension), 0.5);
        assert_eq!(alpha_threshold(e("2"), 2, LossConvention::Dimension), 0.0);
        assert_eq!(alpha_threshold(e("inf"), 2, LossConvention::Rank(1)), 0.5);
        let g = GridSpec::new(2, 8).unwrap();
        let f = GridFunction::from_fn(g, |x| Complex64::new(libm::cos(2.0 * PI * x[1]), 0.0)).unwrap();
        let r = regularity_report(
            &f,
            core::slice::from_ref(&f),
            e("2"),
            0.0,
            RegularityVariant::Pq { q: e("1") },
            LossConvention::Dimension,
            1e-2,
            10.0,
        )
        .unwrap();
        assert!((r.loss - 2.01).abs() < 1e-12);
        assert!(regularity_report(&f, &[], e("1"), 0.0, RegularityVariant::Pq { q: e("2") }, LossConvention::Dimension, 1e-2, 1.0).is_err());
    }
}

//! First-order propagators for `D_t v = τ(t, x, D) v`, `D_t = -i∂_t`.

use core::f64::consts::PI;
use num_complex::Complex64;

use crate::exec::Executor;
use crate::fio::fio_sum;
use crate::phases::FnPhase;
use crate::spectral::{forward_transform, inverse_transform};
use crate::symbols::ConstantSymbol;
use crate::{Error, GridFunction, Result};

/// Symbol `τ(t, x, k)` of a first-order factor `D_t - τ`.
pub trait PropagationSymbol: Send + Sync {
    fn eval(&self, t: f64, x: &[f64], k: &[f64]) -> Complex64;

    fn is_x_independent(&self) -> bool {
        false
    }

    fn is_autonomous(&self) -> bool {
        false
    }
}

/// Closure-backed [`PropagationSymbol`].
pub struct FnPropagation<F> {
    f: F,
    x_independent: bool,
    autonomous: bool,
}

impl<F> FnPropagation<F>
where
    F: Fn(f64, &[f64], &[f64]) -> Complex64 + Send + Sync,
{
    pub fn new(f: F) -> Self {
        Self {
            f,
            x_independent: false,
            autonomous: false,
        }
    }

    pub fn x_independent(mut self) -> Self {
        self.x_independent = true;
        self
    }

    pub fn autonomous(mut self) -> Self {
        self.autonomous = true;
        self
    }
}

impl<F> PropagationSymbol for FnPropagation<F>
where
    F: Fn(f64, &[f64], &[f64]) -> Complex64 + Send + Sync,
{
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

/// Propagates `f` from `t0` to `t1 ≥ t0` in `steps` frozen-symbol steps.
///
/// `x`-independent symbols act mode by mode through `e^{i(b-a)τ(mid, k)}`
/// (one exact step when autonomous). Otherwise each step is the FIO with
/// phase `x·k + (b-a)τ(mid, x, k)/(2π)` and unit symbol.
pub fn first_order_propagate(
    tau: &dyn PropagationSymbol,
    f: &GridFunction,
    t0: f64,
    t1: f64,
    steps: usize,
    exec: &dyn Executor,
) -> Result<GridFunction> {
    if !(t1 >= t0) {
        return Err(Error::BackwardTime { t0, t1 });
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if t1 == t0 {
        return Ok(f.clone());
    }
    let grid = *f.grid();
    let dim = grid.dim();
    let zero_x = [0.0; 2];
    if tau.is_x_independent() {
        let spec = forward_transform(f);
        let out = if tau.is_autonomous() {
            spec.map_multiplier(|k| (Complex64::new(0.0, t1 - t0) * tau.eval(t0, &zero_x[..dim], k)).exp())
        } else {
            let dt = (t1 - t0) / steps as f64;
            spec.map_multiplier(|k| {
                (0..steps).fold(Complex64::new(1.0, 0.0), |acc, s| {
                    let mid = t0 + (s as f64 + 0.5) * dt;
                    acc * (Complex64::new(0.0, dt) * tau.eval(mid, &zero_x[..dim], k)).exp()
                })
            })
        };
        return Ok(inverse_transform(&out));
    }
    let dt = (t1 - t0) / steps as f64;
    let one = ConstantSymbol::one();
    let mut v = f.clone();
    for s in 0..steps {
        let mid = t0 + (s as f64 + 0.5) * dt;
        let phase = FnPhase::new(dim, dim, "frozen-step", move |x: &[f64], k: &[f64]| {
            let xk: f64 = x.iter().zip(k).map(|(a, b)| a * b).sum();
            Complex64::new(xk, 0.0) + tau.eval(mid, x, k) * (dt / (2.0 * PI))
        })?;
        v = fio_sum(&phase, &one, &forward_transform(&v), exec);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Serial;
    use crate::function_spaces::fl_norm;
    use crate::index::Exponent;
    use crate::{freq_norm, GridSpec};

    fn mode(n: usize, k: f64) -> GridFunction {
        let g = GridSpec::new(1, n).unwrap();
        GridFunction::from_fn(g, |x| Complex64::from_polar(1.0, 2.0 * PI * k * x[0])).unwrap()
    }

    #[test]
    fn half_wave_single_mode() {
        let tau = FnPropagation::new(|_t, _x: &[f64], k: &[f64]| Complex64::new(freq_norm(k), 0.0))
            .x_independent()
            .autonomous();
        let t = 0.8;
        let out = first_order_propagate(&tau, &mode(16, 3.0), 0.0, t, 1, &Serial).unwrap();
        let expect = mode(16, 3.0).scale(Complex64::from_polar(1.0, 3.0 * t));
        assert!(out.sub(&expect).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn imaginary_symbol_decays() {
        let tau = FnPropagation::new(|_t, _x: &[f64], k: &[f64]| Complex64::new(0.0, freq_norm(k)))
            .x_independent()
            .autonomous();
        let f = mode(16, 2.0).add(&mode(16, 0.0)).unwrap();
        let out = first_order_propagate(&tau, &f, 0.0, 0.5, 3, &Serial).unwrap();
        let two = Exponent::from_int(2).unwrap();
        assert!(fl_norm(&out, two, 0.0).value < fl_norm(&f, two, 0.0).value);
        let c = forward_transform(&out).coeff(&[2]);
        assert!((c.re - libm::exp(-1.0)).abs() < 1e-14);
    }

    #[test]
    fn zero_symbol_is_identity() {
        let tau = FnPropagation::new(|_t, _x: &[f64], _k: &[f64]| Complex64::new(0.0, 0.0));
        let f = mode(16, 5.0);
        let out = first_order_propagate(&tau, &f, 0.0, 2.0, 4, &Serial).unwrap();
        assert!(out.sub(&f).unwrap().max_abs() < 1e-12);
        assert!(matches!(
            first_order_propagate(&tau, &f, 1.0, 0.0, 1, &Serial),
            Err(Error::BackwardTime { .. })
        ));
    }

    #[test]
    fn non_autonomous_midpoint_is_exact_for_linear_time() {
        // τ = t|k| integrates to t²/2 |k|; midpoint steps are exact for linear τ
        let tau = FnPropagation::new(|t, _x: &[f64], k: &[f64]| Complex64::new(t * freq_norm(k), 0.0)).x_independent();
        let out = first_order_propagate(&tau, &mode(16, 2.0), 0.0, 1.0, 7, &Serial).unwrap();
        let expect = mode(16, 2.0).scale(Complex64::from_polar(1.0, 1.0));
        assert!(out.sub(&expect).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn x_dependent_constant_symbol_matches_diagonal_path() {
        let a = FnPropagation::new(|_t, _x: &[f64], k: &[f64]| Complex64::new(2.0 * PI * freq_norm(k), 0.3));
        let b = FnPropagation::new(|_t, _x: &[f64], k: &[f64]| Complex64::new(2.0 * PI * freq_norm(k), 0.3))
            .x_independent()
            .autonomous();
        let f = mode(16, 3.0).add(&mode(16, -1.0)).unwrap();
        let va = first_order_propagate(&a, &f, 0.0, 0.3, 3, &Serial).unwrap();
        let vb = first_order_propagate(&b, &f, 0.0, 0.3, 1, &Serial).unwrap();
        assert!(va.sub(&vb).unwrap().max_abs() < 1e-12);
    }
}

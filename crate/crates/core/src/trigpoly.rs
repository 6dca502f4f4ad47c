//! Periodic coefficient functions given as finite trigonometric sums.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

/// One term `a cos(2πk·x) + b sin(2πk·x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrigTerm {
    pub k: [i32; 2],
    pub cos: Complex64,
    pub sin: Complex64,
}

/// `c + Σ_terms (a cos(2πk·x) + b sin(2πk·x))`, complex coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrigPoly {
    pub constant: Complex64,
    pub terms: Vec<TrigTerm>,
}

impl TrigPoly {
    pub fn constant(c: Complex64) -> Self {
        Self {
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn real_constant(c: f64) -> Self {
        Self::constant(Complex64::new(c, 0.0))
    }

    pub fn with_term(mut self, k: [i32; 2], cos: Complex64, sin: Complex64) -> Self {
        self.terms.push(TrigTerm { k, cos, sin });
        self
    }

    fn angle(k: &[i32; 2], x: &[f64]) -> f64 {
        2.0 * PI * x.iter().zip(k).map(|(x, &k)| x * k as f64).sum::<f64>()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms.iter().fold(self.constant, |acc, t| {
            let a = Self::angle(&t.k, x);
            acc + t.cos * libm::cos(a) + t.sin * libm::sin(a)
        })
    }

    /// `∇_x` of the polynomial; trailing component zero in one dimension.
    pub fn gradient(&self, x: &[f64]) -> [Complex64; 2] {
        let mut g = [Complex64::new(0.0, 0.0); 2];
        for t in &self.terms {
            let a = Self::angle(&t.k, x);
            let d = t.sin * libm::cos(a) - t.cos * libm::sin(a);
            for (i, gi) in g.iter_mut().enumerate().take(x.len()) {
                *gi += d * (2.0 * PI * t.k[i] as f64);
            }
        }
        g
    }

    /// True if no term depends on `x`.
    pub fn is_constant(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.k == [0, 0] || (t.cos == Complex64::new(0.0, 0.0) && t.sin == Complex64::new(0.0, 0.0)))
    }

    /// True if all coefficients are real.
    pub fn is_real(&self) -> bool {
        self.constant.im == 0.0 && self.terms.iter().all(|t| t.cos.im == 0.0 && t.sin.im == 0.0)
    }

    /// `|c| + Σ (|a| + |b|)`, an upper bound for `sup |p|`.
    pub fn sup_bound(&self) -> f64 {
        self.constant.norm() + self.terms.iter().map(|t| t.cos.norm() + t.sin.norm()).sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_matches_difference_quotient() {
        let p = TrigPoly::real_constant(0.3)
            .with_term([1, 0], Complex64::new(0.2, 0.1), Complex64::new(-0.4, 0.0))
            .with_term([2, -1], Complex64::new(0.0, 0.5), Complex64::new(0.3, 0.0));
        let x = [0.123, 0.77];
        let g = p.gradient(&x);
        let h = 1e-6;
        for i in 0..2 {
            let mut a = x;
            let mut b = x;
            a[i] += h;
            b[i] -= h;
            let fd = (p.eval(&a) - p.eval(&b)) / (2.0 * h);
            assert!((fd - g[i]).norm() < 1e-7);
        }
    }
}

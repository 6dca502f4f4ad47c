//! Roots of the characteristic polynomial `τ^m + Σ_j p_j τ^{m-j}`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

/// Roots of the monic polynomial `τ^m + a[0] τ^{m-1} + … + a[m-1]`.
///
/// Degrees one and two use closed forms; higher degrees take the eigenvalues
/// of the balanced companion matrix and polish them with Newton steps.
pub fn monic_roots(a: &[Complex64]) -> Vec<Complex64> {
    let m = a.len();
    let mut roots = match m {
        0 => Vec::new(),
        1 => alloc::vec![-a[0]],
        2 => quadratic(a[0], a[1]),
        _ => companion_roots(a),
    };
    if m >= 3 {
        for r in roots.iter_mut() {
            *r = polish(a, *r);
        }
    }
    sort_roots(&mut roots);
    roots
}

/// `τ² + bτ + c = 0` without cancellation.
fn quadratic(b: Complex64, c: Complex64) -> Vec<Complex64> {
    let disc = (b * b - c * 4.0).sqrt();
    // choose the sign that avoids subtracting nearly equal numbers
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q == Complex64::new(0.0, 0.0) {
        return alloc::vec![Complex64::new(0.0, 0.0); 2];
    }
    alloc::vec![q, c / q]
}

fn companion_roots(a: &[Complex64]) -> Vec<Complex64> {
    let m = a.len();
    // rescale τ = s μ so that the coefficients are of unit size
    let s = a
        .iter()
        .enumerate()
        .map(|(j, c)| libm::pow(c.norm(), 1.0 / (j + 1) as f64))
        .fold(0.0, f64::max);
    if s == 0.0 {
        return alloc::vec![Complex64::new(0.0, 0.0); m];
    }
    let mut c = DMatrix::<Complex64>::zeros(m, m);
    for j in 0..m {
        c[(0, j)] = -a[j] / libm::pow(s, (j + 1) as f64);
    }
    for i in 1..m {
        c[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    let schur = Schur::try_new(c.clone(), f64::EPSILON, 10_000).unwrap_or_else(|| Schur::new(c));
    let (_, t) = schur.unpack();
    (0..m).map(|i| t[(i, i)] * s).collect()
}

fn polish(a: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in a {
            dp = dp * z + p;
            p = p * z + c;
        }
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        // Newton must not move a root farther than its own size
        if step.norm() > 1e-6 * (1.0 + z.norm()) {
            break;
        }
        z = next;
    }
    z
}

/// Lexicographic order on `(Re, Im)`.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap_or(Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal))
    });
}

/// Smallest pairwise distance; infinite for fewer than two roots.
pub fn min_gap(roots: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            gap = gap.min((roots[i] - roots[j]).norm());
        }
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn expand(roots: &[Complex64]) -> Vec<Complex64> {
        // coefficients of Π (τ - r), highest first, leading 1 dropped
        let mut p = alloc::vec![c(1.0, 0.0)];
        for &r in roots {
            let mut q = alloc::vec![c(0.0, 0.0); p.len() + 1];
            for (i, &v) in p.iter().enumerate() {
                q[i] += v;
                q[i + 1] -= v * r;
            }
            p = q;
        }
        p.remove(0);
        p
    }

    #[test]
    fn quadratic_and_cubic_recover_roots() {
        for roots in [
            alloc::vec![c(-3.0, 0.0), c(3.0, 0.0)],
            alloc::vec![c(1e6, 0.0), c(1e-6, 0.0)],
            alloc::vec![c(-2.0, 0.5), c(0.0, 1.0), c(4.0, 0.1)],
            alloc::vec![c(-50.0, 3.0), c(-1.0, 0.0), c(2.0, 7.0), c(60.0, 0.0)],
        ] {
            let got = monic_roots(&expand(&roots));
            let mut roots = roots;
            sort_roots(&mut roots);
            for (g, r) in got.iter().zip(&roots) {
                assert!((g - r).norm() <= 1e-10 * (1.0 + r.norm()), "{got:?} vs {roots:?}");
            }
        }
    }

    #[test]
    fn linear_root() {
        assert_eq!(monic_roots(&[c(-2.0, -1.0)]), alloc::vec![c(2.0, 1.0)]);
    }

    #[test]
    fn zero_polynomial() {
        assert_eq!(monic_roots(&[c(0.0, 0.0); 3]), alloc::vec![c(0.0, 0.0); 3]);
        assert_eq!(min_gap(&[c(0.0, 0.0)]), f64::INFINITY);
    }
}

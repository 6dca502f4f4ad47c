//! The data map `ĝ = M^{-1} f̂` with `M_{l,j} = (iτ_j)^l`.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::roots::min_gap;
use crate::{Error, Result};

/// Solves `Σ_j x_j^l z_j = b_l`, `0 ≤ l < m`, in place by the Björck–Pereyra
/// recurrences. Nodes must be distinct.
pub fn solve_vandermonde(nodes: &[Complex64], rhs: &mut [Complex64]) {
    let n = nodes.len();
    debug_assert_eq!(n, rhs.len());
    if n < 2 {
        return;
    }
    for k in 0..n - 1 {
        for i in (k + 1..n).rev() {
            rhs[i] = rhs[i] - nodes[k] * rhs[i - 1];
        }
    }
    for k in (0..n - 1).rev() {
        for i in k + 1..n {
            rhs[i] = rhs[i] / (nodes[i] - nodes[i - k - 1]);
        }
        for i in k..n - 1 {
            rhs[i] = rhs[i] - rhs[i + 1];
        }
    }
}

/// `ĝ_1..ĝ_m` from `f̂_0..f̂_{m-1}` at one mode with roots `τ_j`.
///
/// `gap_threshold` is the absolute minimum root separation. Returns
/// `RootCollision` (tagged with `k`) when it is not met.
pub fn vandermonde_data_map(
    roots: &[Complex64],
    data: &[Complex64],
    k: [f64; 2],
    gap_threshold: f64,
) -> Result<Vec<Complex64>> {
    if roots.len() != data.len() {
        return Err(Error::LengthMismatch {
            expected: roots.len(),
            actual: data.len(),
        });
    }
    let gap = min_gap(roots);
    if gap < gap_threshold {
        return Err(Error::RootCollision {
            k,
            gap,
            threshold: gap_threshold,
        });
    }
    let nodes: Vec<Complex64> = roots.iter().map(|t| Complex64::new(0.0, 1.0) * t).collect();
    let mut g = data.to_vec();
    solve_vandermonde(&nodes, &mut g);
    Ok(g)
}

/// Data map at an excised mode: `ĝ_1 = f̂_0`, the rest zero.
pub fn excised_data_map(data: &[Complex64]) -> Vec<Complex64> {
    let mut g = alloc::vec![Complex64::new(0.0, 0.0); data.len()];
    if let Some(first) = data.first() {
        g[0] = *first;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_by_two_closed_form() {
        let k = 3.0;
        let roots = [c(-k, 0.0), c(k, 0.0)];
        let f = [c(0.7, -0.2), c(1.1, 0.4)];
        let g = vandermonde_data_map(&roots, &f, [k, 0.0], 1e-3).unwrap();
        let i = c(0.0, 1.0);
        let plus = (f[0] + f[1] / (i * k)) * 0.5;
        let minus = (f[0] - f[1] / (i * k)) * 0.5;
        assert!((g[1] - plus).norm() < 1e-15);
        assert!((g[0] - minus).norm() < 1e-15);
    }

    #[test]
    fn forward_then_inverse() {
        let nodes = [c(0.3, -1.0), c(-2.0, 0.5), c(1.5, 2.0)];
        let z = [c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0)];
        let mut b: Vec<Complex64> = (0..3)
            .map(|l| nodes.iter().zip(&z).map(|(x, zj)| x.powu(l) * zj).sum())
            .collect();
        solve_vandermonde(&nodes, &mut b);
        for (bi, zi) in b.iter().zip(&z) {
            assert!((bi - zi).norm() < 1e-13);
        }
    }

    #[test]
    fn collision_and_length_errors() {
        let roots = [c(2.0, 0.0), c(2.0 + 1e-9, 0.0)];
        assert!(matches!(
            vandermonde_data_map(&roots, &[c(1.0, 0.0); 2], [1.0, 0.0], 1e-3),
            Err(Error::RootCollision { .. })
        ));
        assert!(vandermonde_data_map(&roots, &[c(1.0, 0.0)], [1.0, 0.0], 1e-3).is_err());
        assert_eq!(excised_data_map(&[c(5.0, 0.0), c(1.0, 0.0)]), alloc::vec![c(5.0, 0.0), c(0.0, 0.0)]);
    }
}

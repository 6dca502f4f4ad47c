//! Iterative radix-2 FFT. Grids are powers of two, so this is all we need.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

/// Twiddle table `e^{-2πi j / n}` for `j < n/2`, each entry evaluated directly.
pub(crate) struct Twiddles {
    n: usize,
    table: Vec<Complex64>,
}

impl Twiddles {
    pub(crate) fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let table = (0..n / 2)
            .map(|j| {
                let a = -2.0 * PI * j as f64 / n as f64;
                Complex64::new(libm::cos(a), libm::sin(a))
            })
            .collect();
        Self { n, table }
    }

    /// Unnormalised transform: computes `Σ x_j e^{-2πijk/n}`, or the
    /// conjugate kernel when `inverse` is set.
    pub(crate) fn transform(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.n;
        debug_assert_eq!(data.len(), n);
        bit_reverse(data);
        let mut len = 2;
        while len <= n {
            let stride = n / len;
            let half = len / 2;
            for start in (0..n).step_by(len) {
                for j in 0..half {
                    let mut w = self.table[j * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let u = data[start + j];
                    let v = data[start + j + half] * w;
                    data[start + j] = u + v;
                    data[start + j + half] = u - v;
                }
            }
            len <<= 1;
        }
    }
}

fn bit_reverse(data: &mut [Complex64]) {
    let n = data.len();
    let bits = n.trailing_zeros();
    if bits == 0 {
        return;
    }
    for i in 0..n {
        let r = i.reverse_bits() >> (usize::BITS - bits);
        if r > i {
            data.swap(i, r);
        }
    }
}

/// Unnormalised row-major transform over a `d`-dimensional `n^d` array.
pub(crate) fn transform_nd(data: &mut [Complex64], n: usize, dim: usize, inverse: bool) {
    let tw = Twiddles::new(n);
    match dim {
        1 => tw.transform(data, inverse),
        2 => {
            for row in data.chunks_exact_mut(n) {
                tw.transform(row, inverse);
            }
            let mut col = alloc::vec![Complex64::new(0.0, 0.0); n];
            for c in 0..n {
                for r in 0..n {
                    col[r] = data[r * n + c];
                }
                tw.transform(&mut col, inverse);
                for r in 0..n {
                    data[r * n + c] = col[r];
                }
            }
        }
        _ => unreachable!("dimension validated by GridSpec"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (j, v)| {
                    let a = -2.0 * PI * (j * k) as f64 / n as f64;
                    acc + v * Complex64::new(libm::cos(a), libm::sin(a))
                })
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let x: Vec<Complex64> = (0..32)
            .map(|i| Complex64::new(libm::sin(i as f64 * 0.7), libm::cos(i as f64 * 1.3)))
            .collect();
        let mut y = x.clone();
        Twiddles::new(32).transform(&mut y, false);
        for (a, b) in y.iter().zip(naive_dft(&x)) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

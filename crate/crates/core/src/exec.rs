//! Pluggable data parallelism for the per-point kernels.
//!
//! The direct-summation kernels (FIO application, variable-coefficient
//! propagation steps, pseudo-differential data maps) write disjoint output
//! points from read-only inputs. An [`Executor`] decides how the output slice
//! is split; each point's value is computed in a fixed order, so results are
//! bit-identical across executors.

use num_complex::Complex64;

pub trait Executor: Sync {
    /// Calls `kernel(first_index, chunk)` over disjoint chunks covering `out`.
    fn run(&self, out: &mut [Complex64], kernel: &(dyn Fn(usize, &mut [Complex64]) + Sync));
}

/// Runs the kernel over the whole slice on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl Executor for Serial {
    fn run(&self, out: &mut [Complex64], kernel: &(dyn Fn(usize, &mut [Complex64]) + Sync)) {
        kernel(0, out);
    }
}

//! Rayon-backed [`Executor`].

use hypfl_core::exec::Executor;
use hypfl_core::Complex64;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "HYPFL_THREADS";

const CHUNK: usize = 64;

pub struct RayonExecutor {
    pool: ThreadPool,
}

impl RayonExecutor {
    /// `threads = 0` lets rayon pick.
    pub fn new(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(Self { pool })
    }

    /// Reads `HYPFL_THREADS`; unset means no cap.
    pub fn from_env() -> Result<Self, String> {
        let threads = match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| format!("{THREADS_ENV}={v:?} is not a positive integer"))?,
            Err(_) => 0,
        };
        Self::new(threads).map_err(|e| e.to_string())
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for RayonExecutor {
    fn run(&self, out: &mut [Complex64], kernel: &(dyn Fn(usize, &mut [Complex64]) + Sync)) {
        self.pool.install(|| {
            out.par_chunks_mut(CHUNK)
                .enumerate()
                .for_each(|(i, chunk)| kernel(i * CHUNK, chunk));
        });
    }
}

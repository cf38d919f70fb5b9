//! Execution strategy for the data-parallel loops (kernel sweeps, node
//! sums, Lebesgue grid scans).
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on
//! the rayon global pool. Without it every strategy runs sequentially, so
//! callers never need to `cfg` on the feature themselves.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this strategy actually fans out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn sum_complex<T, F>(self, items: &[T], f: F) -> Complex
    where
        T: Sync,
        F: Fn(&T) -> Complex + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items
                .par_iter()
                .map(f)
                .reduce(|| Complex::new(0.0, 0.0), |a, b| a + b);
        }
        items.iter().map(f).fold(Complex::new(0.0, 0.0), |a, b| a + b)
    }

    /// Maximum of `f` over `items`; `f64::NEG_INFINITY` on empty input.
    pub fn max<T, F>(self, items: &[T], f: F) -> f64
    where
        T: Sync,
        F: Fn(&T) -> f64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).reduce(|| f64::NEG_INFINITY, f64::max);
        }
        items.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
    }
}

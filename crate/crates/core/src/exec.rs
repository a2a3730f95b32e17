//! Parallel or sequential evaluation of independent work items.
//!
//! Results are always collected in index order, so any floating-point
//! aggregation done by the caller afterwards is independent of scheduling.

use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Uses the current rayon pool. Falls back to sequential evaluation when
    /// the crate is built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Evaluates `f(0..n)` and returns the results in index order.
    pub fn map_indexed<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Maps every item of a slice, preserving order.
    pub fn map_slice<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

/// Splits `total` work items into fixed-size batches: `(batch_index, start, len)`.
/// The split depends only on `total` and `batch_size`, never on the thread count.
pub fn batches(total: u64, batch_size: u64) -> Vec<(u64, u64, u64)> {
    assert!(batch_size > 0);
    let mut out = Vec::new();
    let mut start = 0;
    let mut index = 0;
    while start < total {
        let len = batch_size.min(total - start);
        out.push((index, start, len));
        start += len;
        index += 1;
    }
    out
}

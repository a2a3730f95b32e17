use serde::Serialize;

use crate::error::{Error, Result};

use super::{BitState, Strategy, SystemPoint};

/// Number of strategy terms used by default when truncating `d_s`.
pub const DEFAULT_DEPTH: usize = 16;

/// A truncated distance together with an upper bound on the neglected tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Distance {
    pub value: f64,
    pub error_bound: f64,
}

impl Distance {
    /// Whether the exact (untruncated) distance is certainly `>= threshold`.
    pub fn certainly_at_least(&self, threshold: f64) -> bool {
        self.value >= threshold
    }

    /// Whether the exact distance is certainly `< threshold`.
    pub fn certainly_below(&self, threshold: f64) -> bool {
        self.value + self.error_bound < threshold
    }
}

/// Hamming distance `d_e`.
pub fn state_distance(a: &BitState, b: &BitState) -> Result<usize> {
    a.hamming(b)
}

/// `(9/N) Σ_{j=1}^{len} |a_j - b_j| / 10^j` over two equally long term slices.
pub fn weighted_term_distance(a: &[u32], b: &[u32], n_cells: usize) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut sum = 0.0;
    let mut scale = 1.0;
    for (&x, &y) in a.iter().zip(b) {
        scale /= 10.0;
        sum += x.abs_diff(y) as f64 * scale;
    }
    9.0 / n_cells as f64 * sum
}

/// Largest possible contribution of the terms after `depth`.
fn tail_bound(n_cells: usize, depth: usize) -> f64 {
    (n_cells - 1) as f64 / (n_cells as f64 * 10f64.powi(depth as i32))
}

/// `d_s` truncated after `depth` terms.
pub fn strategy_distance(a: &Strategy, b: &Strategy, depth: usize) -> Result<Distance> {
    if a.n_cells() != b.n_cells() {
        return Err(Error::LengthMismatch {
            expected: a.n_cells(),
            actual: b.n_cells(),
        });
    }
    let n = a.n_cells();
    let pa = a.prefix(depth)?;
    let pb = b.prefix(depth)?;
    Ok(Distance {
        value: weighted_term_distance(&pa, &pb, n),
        error_bound: tail_bound(n, depth),
    })
}

/// `d = d_e + d_s`, with `d_s` truncated after `depth` terms.
pub fn point_distance(a: &SystemPoint, b: &SystemPoint, depth: usize) -> Result<Distance> {
    let de = state_distance(a.state(), b.state())?;
    let ds = strategy_distance(a.strategy(), b.strategy(), depth)?;
    Ok(Distance {
        value: de as f64 + ds.value,
        error_bound: ds.error_bound,
    })
}

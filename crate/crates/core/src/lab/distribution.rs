use serde::Serialize;

use crate::dynamics::Strategy;
use crate::error::{Error, Result};

use super::MAX_TABLE_CELLS;

/// Probability of every state of an `n_cells` system, indexed by
/// [`BitState::to_index`](crate::dynamics::BitState::to_index).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionTable {
    n_cells: usize,
    probs: Vec<f64>,
}

const MASS_TOLERANCE: f64 = 1e-9;

fn check_cells(n_cells: usize) -> Result<()> {
    if n_cells == 0 || n_cells > MAX_TABLE_CELLS {
        return Err(Error::InvalidArgument(format!(
            "distribution tables support 1..={MAX_TABLE_CELLS} cells, got {n_cells}"
        )));
    }
    Ok(())
}

impl DistributionTable {
    pub fn new(n_cells: usize, probs: Vec<f64>) -> Result<Self> {
        check_cells(n_cells)?;
        if probs.len() != 1 << n_cells {
            return Err(Error::LengthMismatch {
                expected: 1 << n_cells,
                actual: probs.len(),
            });
        }
        if probs.iter().any(|&p| p.is_nan() || p < 0.0) {
            return Err(Error::Domain("negative or NaN probability".into()));
        }
        let mass: f64 = probs.iter().sum();
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Domain(format!("probabilities sum to {mass}")));
        }
        Ok(Self { n_cells, probs })
    }

    pub fn uniform(n_cells: usize) -> Result<Self> {
        check_cells(n_cells)?;
        let size = 1usize << n_cells;
        Ok(Self {
            n_cells,
            probs: vec![1.0 / size as f64; size],
        })
    }

    pub fn point_mass(n_cells: usize, index: usize) -> Result<Self> {
        check_cells(n_cells)?;
        let mut probs = vec![0.0; 1 << n_cells];
        *probs.get_mut(index).ok_or_else(|| {
            Error::Domain(format!("state index {index} out of range for {n_cells} cells"))
        })? = 1.0;
        Ok(Self { n_cells, probs })
    }

    /// Normalized histogram.
    pub fn from_counts(n_cells: usize, counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidArgument("empty histogram".into()));
        }
        Self::new(n_cells, counts.iter().map(|&c| c as f64 / total as f64).collect())
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn max_deviation_from_uniform(&self) -> f64 {
        let u = 1.0 / self.probs.len() as f64;
        self.probs.iter().map(|p| (p - u).abs()).fold(0.0, f64::max)
    }
}

/// One step of the state distribution under the vectorial negation with a
/// strategy symbol drawn independently of the state:
/// `P'(e) = Σ_k P(e ⊕ B_k) · q_k`.
pub fn exact_distribution_step(
    dist: &DistributionTable,
    strategy_dist: &[f64],
) -> Result<DistributionTable> {
    let n = dist.n_cells;
    if strategy_dist.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: strategy_dist.len(),
        });
    }
    if strategy_dist.iter().any(|&q| q.is_nan() || q < 0.0) {
        return Err(Error::Domain("negative or NaN strategy probability".into()));
    }
    let mass: f64 = strategy_dist.iter().sum();
    if (mass - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::Domain(format!("strategy probabilities sum to {mass}")));
    }
    let probs = (0..dist.probs.len())
        .map(|e| {
            strategy_dist
                .iter()
                .enumerate()
                .map(|(k, q)| dist.probs[e ^ (1 << k)] * q)
                .sum()
        })
        .collect();
    Ok(DistributionTable { n_cells: n, probs })
}

/// Pushes `dist` through `n_iter` iterations of a fixed strategy (a point
/// mass on the current term at every step).
pub fn exact_pushforward(
    dist: &DistributionTable,
    strategy: &Strategy,
    n_iter: usize,
) -> Result<DistributionTable> {
    if strategy.n_cells() != dist.n_cells {
        return Err(Error::LengthMismatch {
            expected: dist.n_cells,
            actual: strategy.n_cells(),
        });
    }
    let mut cur = dist.clone();
    let mut q = vec![0.0; dist.n_cells];
    for k in strategy.prefix(n_iter)? {
        q.iter_mut().for_each(|x| *x = 0.0);
        q[k as usize - 1] = 1.0;
        cur = exact_distribution_step(&cur, &q)?;
    }
    Ok(cur)
}

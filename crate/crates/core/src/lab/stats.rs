use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Pearson goodness-of-fit of `counts` against the uniform distribution.
pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquare> {
    if counts.len() < 2 {
        return Err(Error::InvalidArgument("need at least two bins".into()));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::InvalidArgument("no observations".into()));
    }
    let expected = total as f64 / counts.len() as f64;
    let statistic = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum::<f64>();
    let dof = counts.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::Domain(e.to_string()))?;
    Ok(ChiSquare {
        statistic,
        degrees_of_freedom: dof,
        p_value: dist.sf(statistic),
    })
}

/// `(1/2) Σ |p_i - q_i|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            actual: q.len(),
        });
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Plug-in mutual information (bits) of a joint count table, row-major
/// `rows x cols`.
pub fn mutual_information_bits(joint: &[u64], rows: usize, cols: usize) -> Result<f64> {
    if joint.len() != rows * cols {
        return Err(Error::LengthMismatch {
            expected: rows * cols,
            actual: joint.len(),
        });
    }
    let total: u64 = joint.iter().sum();
    if total == 0 {
        return Ok(0.0);
    }
    let n = total as f64;
    let row_sums: Vec<u64> = (0..rows).map(|r| joint[r * cols..(r + 1) * cols].iter().sum()).collect();
    let col_sums: Vec<u64> = (0..cols).map(|c| (0..rows).map(|r| joint[r * cols + c]).sum()).collect();
    let mut mi = 0.0;
    for r in 0..rows {
        for c in 0..cols {
            let j = joint[r * cols + c];
            if j > 0 {
                let pj = j as f64 / n;
                mi += pj * (j as f64 * n / (row_sums[r] as f64 * col_sums[c] as f64)).log2();
            }
        }
    }
    Ok(mi.max(0.0))
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    #[test]
    fn perfectly_uniform_counts() {
        let c = chi_square_uniform(&[100; 8]).unwrap();
        assert_eq!(c.statistic, 0.0);
        assert_eq!(c.degrees_of_freedom, 7);
        assert_abs_diff_eq!(c.p_value, 1.0, epsilon = 1e-12);
    }

    // Reference: scipy.stats.chisquare([10, 20, 30, 40]) -> (20.0, 1.6974e-4).
    #[test]
    fn known_statistic() {
        let c = chi_square_uniform(&[10, 20, 30, 40]).unwrap();
        assert_abs_diff_eq!(c.statistic, 20.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.p_value, 1.6974243555282632e-4, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(chi_square_uniform(&[5]).is_err());
        assert!(chi_square_uniform(&[0, 0]).is_err());
    }

    #[test]
    fn tv_and_mi() {
        assert_abs_diff_eq!(total_variation(&[0.5, 0.5], &[1.0, 0.0]).unwrap(), 0.5);
        assert!(total_variation(&[1.0], &[0.5, 0.5]).is_err());
        // Independent table.
        assert_abs_diff_eq!(mutual_information_bits(&[10, 10, 10, 10], 2, 2).unwrap(), 0.0);
        // Perfectly dependent binary variables: 1 bit.
        assert_abs_diff_eq!(mutual_information_bits(&[50, 0, 0, 50], 2, 2).unwrap(), 1.0, epsilon = 1e-12);
    }
}

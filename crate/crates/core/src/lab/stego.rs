use rand::Rng;
use serde::Serialize;

use crate::dynamics::{iterate, BitState, VectorNegation};
use crate::error::{Error, Result};
use crate::exec::{batches, Execution};
use crate::hiding::{extract_lscs, CoverMedia, Embedder, EmbeddingConfig};
use crate::strategy_gen::{ciis_strategy, KeyMaterial};

use super::distribution::{exact_distribution_step, exact_pushforward, DistributionTable};
use super::stats::{chi_square_uniform, mutual_information_bits, total_variation, ChiSquare};
use super::{substream, MAX_CIIS_STEGO_CELLS, MAX_TABLE_CELLS};

/// Monte Carlo covers are drawn in fixed batches of this size, one RNG
/// stream per batch.
const BATCH_SIZE: u64 = 1 << 14;

pub const EXACT_TOLERANCE: f64 = 1e-9;
pub const P_VALUE_THRESHOLD: f64 = 0.01;
pub const MIN_EXPECTED_PER_BIN: u64 = 10;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CiisStegoConfig {
    pub key_material: KeyMaterial,
    pub n_iter: usize,
    pub sample_count: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CiisStegoVerdict {
    pub method: &'static str,
    pub n_cells: usize,
    pub n_iter: usize,
    pub key_material: KeyMaterial,
    /// Distribution of strategy symbols over the generated strategy.
    pub index_distribution: Vec<f64>,
    /// Uniform input pushed through `n_iter` steps with `index_distribution`.
    pub exact_max_deviation: f64,
    /// Uniform input pushed through the key's own strategy.
    pub exact_keyed_max_deviation: f64,
    pub exact_tolerance: f64,
    pub exact_passed: bool,
    pub sample_count: u64,
    pub seed: u64,
    pub chi_square: ChiSquare,
    pub p_value_threshold: f64,
    pub monte_carlo_passed: bool,
    /// Plug-in estimate of I(S^t; X^t) in bits at a random step t; reported only.
    pub strategy_state_mutual_information_bits: f64,
    pub passed: bool,
}

struct McTally {
    histogram: Vec<u64>,
    joint: Vec<u64>,
}

fn random_cover(rng: &mut impl Rng, n_cells: usize) -> CoverMedia {
    CoverMedia::raw((0..n_cells).map(|_| rng.random::<u8>()).collect())
}

fn monte_carlo(
    embedder: &Embedder,
    n_cells: usize,
    sample_count: u64,
    seed: u64,
    with_joint: bool,
    exec: Execution,
) -> Result<McTally> {
    let bins = 1usize << n_cells;
    let n_iter = embedder.config().n_iter;
    let strategy = embedder.strategy_for(&BitState::zeros(n_cells)?)?;
    let work = batches(sample_count, BATCH_SIZE);
    let partial = exec.map_slice(&work, |&(index, _, len)| -> Result<McTally> {
        let mut rng = substream(seed, index);
        let mut histogram = vec![0u64; bins];
        let mut joint = vec![0u64; if with_joint { n_cells * bins } else { 0 }];
        for _ in 0..len {
            let cover = random_cover(&mut rng, n_cells);
            let marked = embedder.embed(&cover)?;
            histogram[extract_lscs(&marked)?.to_index()? as usize] += 1;
            if with_joint {
                let t = rng.random_range(0..n_iter);
                let x = extract_lscs(&cover)?;
                let xt = iterate(&VectorNegation, &x, &strategy, t)?;
                let s = strategy.term(t)?.zero_based();
                joint[s * bins + xt.to_index()? as usize] += 1;
            }
        }
        Ok(McTally { histogram, joint })
    });
    let mut total = McTally {
        histogram: vec![0; bins],
        joint: vec![0; if with_joint { n_cells * bins } else { 0 }],
    };
    for p in partial {
        let p = p?;
        total.histogram.iter_mut().zip(&p.histogram).for_each(|(a, b)| *a += b);
        total.joint.iter_mut().zip(&p.joint).for_each(|(a, b)| *a += b);
    }
    Ok(total)
}

/// Histogram of watermarked LSC planes over `sample_count` uniform random
/// covers, all embedded with the same key.
pub fn ciis_output_histogram(
    key_material: &KeyMaterial,
    n_iter: usize,
    sample_count: u64,
    seed: u64,
    exec: Execution,
) -> Result<Vec<u64>> {
    let n = key_material.n_cells;
    if n > MAX_TABLE_CELLS {
        return Err(Error::InvalidArgument(format!(
            "histograms support at most {MAX_TABLE_CELLS} cells, got {n}"
        )));
    }
    let embedder = Embedder::new(EmbeddingConfig::ciis(*key_material, n_iter)?, n)?;
    Ok(monte_carlo(&embedder, n, sample_count, seed, false, exec)?.histogram)
}

/// Checks that watermarked contents are uniform when covers are, for a fixed
/// key: exactly by distribution push-forward and statistically by a
/// chi-square test over `sample_count` embeddings.
pub fn verify_ciis_stego(config: &CiisStegoConfig, exec: Execution) -> Result<CiisStegoVerdict> {
    let km = config.key_material;
    let n = km.n_cells;
    if n == 0 || n > MAX_CIIS_STEGO_CELLS {
        return Err(Error::InvalidArgument(format!(
            "CIIS stego check supports 1..={MAX_CIIS_STEGO_CELLS} cells, got {n}"
        )));
    }
    let bins = 1usize << n;
    let required = MIN_EXPECTED_PER_BIN * bins as u64;
    if config.sample_count < required {
        return Err(Error::Underpowered {
            samples: config.sample_count,
            bins,
            required,
        });
    }

    let strategy = ciis_strategy(&km, config.n_iter)?;
    let mut counts = vec![0u64; n];
    for k in strategy.prefix(config.n_iter)? {
        counts[k as usize - 1] += 1;
    }
    let index_distribution: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / config.n_iter as f64)
        .collect();
    let mut dist = DistributionTable::uniform(n)?;
    for _ in 0..config.n_iter {
        dist = exact_distribution_step(&dist, &index_distribution)?;
    }
    let exact_max_deviation = dist.max_deviation_from_uniform();
    let keyed = exact_pushforward(&DistributionTable::uniform(n)?, &strategy, config.n_iter)?;
    let exact_keyed_max_deviation = keyed.max_deviation_from_uniform();
    let exact_passed =
        exact_max_deviation < EXACT_TOLERANCE && exact_keyed_max_deviation < EXACT_TOLERANCE;

    let embedder = Embedder::new(EmbeddingConfig::ciis(km, config.n_iter)?, n)?;
    let tally = monte_carlo(&embedder, n, config.sample_count, config.seed, true, exec)?;
    let chi_square = chi_square_uniform(&tally.histogram)?;
    let monte_carlo_passed = chi_square.p_value > P_VALUE_THRESHOLD;
    let mi = mutual_information_bits(&tally.joint, n, bins)?;

    Ok(CiisStegoVerdict {
        method: "exact push-forward from the uniform distribution, plus Pearson chi-square \
                 of embedded uniform random raw covers against uniform",
        n_cells: n,
        n_iter: config.n_iter,
        key_material: km,
        index_distribution,
        exact_max_deviation,
        exact_keyed_max_deviation,
        exact_tolerance: EXACT_TOLERANCE,
        exact_passed,
        sample_count: config.sample_count,
        seed: config.seed,
        chi_square,
        p_value_threshold: P_VALUE_THRESHOLD,
        monte_carlo_passed,
        strategy_state_mutual_information_bits: mi,
        passed: exact_passed && monte_carlo_passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CidsVerdict {
    pub method: &'static str,
    pub n_cells: usize,
    pub n_iter: usize,
    pub covers: u64,
    /// Watermarked LSC planes that occur, as bit strings, ascending.
    pub reachable: Vec<String>,
    pub reachable_probabilities: Vec<f64>,
    pub expected_reachable: Vec<String>,
    pub two_output_claim_holds: bool,
    pub all_ones_probability: f64,
    /// Whether the output distribution equals the (uniform) cover distribution.
    pub output_uniform: bool,
    /// Not stego-secure and the all-ones content never occurs.
    pub not_stego_secure_confirmed: bool,
    pub passed: bool,
}

/// Embeds every possible cover under the cover-dependent strategy and
/// records which watermarked contents can occur.
pub fn verify_cids_not_stego(n_cells: usize, n_iter: usize, exec: Execution) -> Result<CidsVerdict> {
    if n_cells == 0 || n_cells > MAX_TABLE_CELLS {
        return Err(Error::InvalidArgument(format!(
            "CIDS check supports 1..={MAX_TABLE_CELLS} cells, got {n_cells}"
        )));
    }
    if n_iter < n_cells {
        return Err(Error::InvalidArgument(format!(
            "CIDS check needs n_iter >= n_cells ({n_iter} < {n_cells})"
        )));
    }
    let embedder = Embedder::new(EmbeddingConfig::cids(n_iter)?, n_cells)?;
    let size = 1usize << n_cells;
    let outputs = exec.map_indexed(size, |i| -> Result<u64> {
        let x = BitState::from_index(i as u64, n_cells)?;
        // Cover bytes carry the state in their LSBs and arbitrary upper bits.
        let bytes = x.iter().enumerate().map(|(k, b)| (k as u8).wrapping_mul(34) | b as u8).collect();
        let marked = embedder.embed(&CoverMedia::raw(bytes))?;
        extract_lscs(&marked)?.to_index()
    });
    let mut counts = vec![0u64; size];
    for o in outputs {
        counts[o? as usize] += 1;
    }
    let state_str = |i: usize| BitState::from_index(i as u64, n_cells).map(|s| s.to_string());
    let mut reachable = Vec::new();
    let mut reachable_probabilities = Vec::new();
    let mut order: Vec<usize> = (0..size).filter(|&i| counts[i] > 0).collect();
    order.sort_by_key(|&i| state_str(i).unwrap_or_default());
    for i in order {
        reachable.push(state_str(i)?);
        reachable_probabilities.push(counts[i] as f64 / size as f64);
    }
    let zero = BitState::zeros(n_cells)?;
    let mut first = zero.clone();
    first.set(1, true)?;
    let mut expected_reachable = vec![zero.to_string(), first.to_string()];
    expected_reachable.sort();
    expected_reachable.dedup();
    let two_output_claim_holds = reachable == expected_reachable;
    let all_ones_probability = counts[size - 1] as f64 / size as f64;
    let output_uniform = counts.iter().all(|&c| c == 1);
    let not_stego_secure_confirmed = !output_uniform && counts[size - 1] == 0;
    Ok(CidsVerdict {
        method: "exhaustive embedding of all covers",
        n_cells,
        n_iter,
        covers: size as u64,
        reachable,
        reachable_probabilities,
        expected_reachable,
        two_output_claim_holds,
        all_ones_probability,
        output_uniform,
        not_stego_secure_confirmed,
        passed: two_output_claim_holds && not_stego_secure_confirmed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub method: &'static str,
    pub n_cells: usize,
    pub n_iter: usize,
    pub sample_count: u64,
    pub seed: u64,
    pub total_variation: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Total-variation distance between the Monte Carlo histogram of watermarked
/// contents and the exact push-forward of the uniform cover distribution.
pub fn agreement_probe(
    key_material: &KeyMaterial,
    n_iter: usize,
    sample_count: u64,
    seed: u64,
    threshold: f64,
    exec: Execution,
) -> Result<AgreementReport> {
    let n = key_material.n_cells;
    let histogram = ciis_output_histogram(key_material, n_iter, sample_count, seed, exec)?;
    let empirical = DistributionTable::from_counts(n, &histogram)?;
    let strategy = ciis_strategy(key_material, n_iter)?;
    let exact = exact_pushforward(&DistributionTable::uniform(n)?, &strategy, n_iter)?;
    let tv = total_variation(empirical.probs(), exact.probs())?;
    Ok(AgreementReport {
        method: "total variation between Monte Carlo output histogram and exact push-forward",
        n_cells: n,
        n_iter,
        sample_count,
        seed,
        total_variation: tv,
        threshold,
        passed: tv < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn km(n: usize) -> KeyMaterial {
        KeyMaterial::from_reals(0.5, 0.25, 0.3, 2, n).unwrap()
    }

    #[test]
    fn underpowered_guard() {
        let cfg = CiisStegoConfig {
            key_material: km(8),
            n_iter: 16,
            sample_count: 100,
            seed: 1,
        };
        assert_eq!(
            verify_ciis_stego(&cfg, Execution::Sequential).unwrap_err(),
            Error::Underpowered {
                samples: 100,
                bins: 256,
                required: 2560
            }
        );
    }

    #[test]
    fn small_ciis_passes() {
        let cfg = CiisStegoConfig {
            key_material: km(4),
            n_iter: 20,
            sample_count: 20_000,
            seed: 3,
        };
        let v = verify_ciis_stego(&cfg, Execution::Parallel).unwrap();
        assert!(v.exact_passed);
        assert!(v.passed, "{v:?}");
        assert!((v.index_distribution.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn execution_modes_agree() {
        let a = ciis_output_histogram(&km(5), 12, 40_000, 9, Execution::Sequential).unwrap();
        let b = ciis_output_histogram(&km(5), 12, 40_000, 9, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<u64>(), 40_000);
    }

    #[test]
    fn cids_two_outputs() {
        for n in 2..=6 {
            let v = verify_cids_not_stego(n, n, Execution::Sequential).unwrap();
            assert!(v.passed, "{v:?}");
            assert_eq!(v.reachable_probabilities, vec![0.5, 0.5]);
        }
    }

    // A single cell: CIDS always flips it, so the output is the negated
    // cover and both outputs occur with probability 1/2.
    #[test]
    fn cids_single_cell() {
        let v = verify_cids_not_stego(1, 1, Execution::Sequential).unwrap();
        assert_eq!(v.reachable, vec!["0", "1"]);
        assert!(v.two_output_claim_holds);
        assert!(v.output_uniform);
        assert_eq!(v.all_ones_probability, 0.5);
        assert!(!v.passed);
    }

    #[test]
    fn cids_bounds() {
        assert!(verify_cids_not_stego(13, 13, Execution::Sequential).is_err());
        assert!(verify_cids_not_stego(4, 3, Execution::Sequential).is_err());
    }
}

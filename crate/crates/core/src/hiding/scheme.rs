use serde::Serialize;

use crate::dynamics::{iterate_in_place, BitState, Strategy, VectorNegation};
use crate::error::{Error, Result};
use crate::strategy_gen::{cids_strategy, ciis_strategy, KeyMaterial};

use super::{extract_lscs, inject_lscs, CoverMedia};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum StrategyMode {
    /// Strategy from the keyed chaotic map, independent of the cover.
    Ciis(KeyMaterial),
    /// Strategy read from the cover's own LSCs.
    Cids,
}

/// The embedding key: how the strategy is built and how many iterations run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EmbeddingConfig {
    pub strategy: StrategyMode,
    pub n_iter: usize,
}

impl EmbeddingConfig {
    pub fn ciis(key_material: KeyMaterial, n_iter: usize) -> Result<Self> {
        Self::new(StrategyMode::Ciis(key_material), n_iter)
    }

    pub fn cids(n_iter: usize) -> Result<Self> {
        Self::new(StrategyMode::Cids, n_iter)
    }

    fn new(strategy: StrategyMode, n_iter: usize) -> Result<Self> {
        if n_iter == 0 {
            return Err(Error::InvalidArgument("n_iter must be at least 1".into()));
        }
        Ok(Self { strategy, n_iter })
    }
}

/// An embedding configuration bound to a cell count. The cover-independent
/// strategy is generated once and reused for every cover.
#[derive(Clone, Debug)]
pub struct Embedder {
    config: EmbeddingConfig,
    n_cells: usize,
    fixed_strategy: Option<Strategy>,
}

impl Embedder {
    pub fn new(config: EmbeddingConfig, n_cells: usize) -> Result<Self> {
        let fixed_strategy = match &config.strategy {
            StrategyMode::Ciis(km) => {
                if km.n_cells != n_cells {
                    return Err(Error::LengthMismatch {
                        expected: n_cells,
                        actual: km.n_cells,
                    });
                }
                Some(ciis_strategy(km, config.n_iter)?)
            }
            StrategyMode::Cids => None,
        };
        Ok(Self {
            config,
            n_cells,
            fixed_strategy,
        })
    }

    pub fn config(&self) -> &EmbeddingConfig {
        &self.config
    }

    /// The strategy applied to a cover with LSC plane `lscs`.
    pub fn strategy_for(&self, lscs: &BitState) -> Result<Strategy> {
        match &self.fixed_strategy {
            Some(s) => Ok(s.clone()),
            None => cids_strategy(lscs, self.config.n_iter),
        }
    }

    /// `Y = X^{n_iter}` for the LSC plane `lscs`.
    pub fn embed_state(&self, lscs: &BitState) -> Result<BitState> {
        if lscs.n_cells() != self.n_cells {
            return Err(Error::LengthMismatch {
                expected: self.n_cells,
                actual: lscs.n_cells(),
            });
        }
        let mut y = lscs.clone();
        match &self.fixed_strategy {
            Some(s) => iterate_in_place(&VectorNegation, &mut y, s, self.config.n_iter)?,
            None => {
                let s = cids_strategy(lscs, self.config.n_iter)?;
                iterate_in_place(&VectorNegation, &mut y, &s, self.config.n_iter)?
            }
        }
        Ok(y)
    }

    pub fn embed(&self, cover: &CoverMedia) -> Result<CoverMedia> {
        let x = extract_lscs(cover)?;
        inject_lscs(cover, &self.embed_state(&x)?)
    }
}

/// Replaces the LSCs of `cover` with the result of the chaotic iterations.
pub fn embed(cover: &CoverMedia, config: &EmbeddingConfig) -> Result<CoverMedia> {
    Embedder::new(*config, cover.n_lscs())?.embed(cover)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Detection {
    pub matched: bool,
    /// Hamming distance between the expected and the suspect LSC planes.
    pub distance: usize,
    pub n_cells: usize,
}

/// Re-embeds `original` and compares LSC planes with `suspect`.
pub fn detect_nonblind(
    original: &CoverMedia,
    suspect: &CoverMedia,
    config: &EmbeddingConfig,
) -> Result<Detection> {
    if !original.same_shape(suspect) {
        return Err(Error::InvalidArgument(
            "original and suspect covers differ in shape".into(),
        ));
    }
    let expected = extract_lscs(&embed(original, config)?)?;
    let observed = extract_lscs(suspect)?;
    let distance = expected.hamming(&observed)?;
    Ok(Detection {
        matched: distance == 0,
        distance,
        n_cells: expected.n_cells(),
    })
}

/// PSNR in dB over the payload bytes for 8-bit samples; infinite when equal.
pub fn psnr(original: &CoverMedia, marked: &CoverMedia) -> Result<f64> {
    let (a, b) = (original.payload(), marked.payload());
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    let sse: u64 = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x.abs_diff(y) as u64;
            d * d
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.len() as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

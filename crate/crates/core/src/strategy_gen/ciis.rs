use std::sync::Arc;

use serde::Serialize;

use crate::dynamics::{Strategy, TermSource};
use crate::error::{Error, Result};

use super::{Fixed64, PlcmParams};

/// Everything the cover-independent strategy depends on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KeyMaterial {
    pub key: Fixed64,
    pub message: Fixed64,
    pub burn_in: usize,
    pub params: PlcmParams,
    pub n_cells: usize,
}

impl KeyMaterial {
    pub fn new(
        key: Fixed64,
        message: Fixed64,
        burn_in: usize,
        params: PlcmParams,
        n_cells: usize,
    ) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::Domain("key material needs n_cells >= 1".into()));
        }
        Ok(Self {
            key,
            message,
            burn_in,
            params,
            n_cells,
        })
    }

    /// Builds key material from reals in `[0, 1]`.
    pub fn from_reals(key: f64, message: f64, p: f64, burn_in: usize, n_cells: usize) -> Result<Self> {
        Self::new(
            Fixed64::from_real(key)?,
            Fixed64::from_real(message)?,
            burn_in,
            PlcmParams::new(p)?,
            n_cells,
        )
    }

    pub fn with_n_cells(self, n_cells: usize) -> Result<Self> {
        Self::new(self.key, self.message, self.burn_in, self.params, n_cells)
    }

    /// `K^0 = M ⊗ K`.
    pub fn seed(&self) -> Fixed64 {
        self.message ^ self.key
    }

    /// The orbit `K^0, K^1, ...`.
    pub fn orbit(&self) -> PlcmOrbit {
        PlcmOrbit {
            x: self.seed(),
            params: self.params,
        }
    }
}

/// Bitwise XOR of the 64-bit fixed-point expansions of two reals in `[0, 1]`.
pub fn xor_mix(message: f64, key: f64) -> Result<Fixed64> {
    Ok(Fixed64::from_real(message)? ^ Fixed64::from_real(key)?)
}

/// Iterates the fixed-point map, yielding the current value before each step.
#[derive(Clone, Debug)]
pub struct PlcmOrbit {
    x: Fixed64,
    params: PlcmParams,
}

impl PlcmOrbit {
    pub fn new(start: Fixed64, params: PlcmParams) -> Self {
        Self { x: start, params }
    }
}

impl Iterator for PlcmOrbit {
    type Item = Fixed64;

    fn next(&mut self) -> Option<Fixed64> {
        let cur = self.x;
        self.x = self.params.eval_fixed(cur);
        Some(cur)
    }
}

/// `⌊n_cells · k⌋ + 1`, computed exactly.
pub fn cell_from_fixed(k: Fixed64, n_cells: usize) -> u32 {
    (((n_cells as u128 * k.raw() as u128) >> 64) + 1) as u32
}

/// `⌊n_cells · k⌋ + 1` for a real `k`, clamped to `n_cells` at `k = 1`.
pub fn cell_from_real(k: f64, n_cells: usize) -> Result<u32> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::Domain(format!("{k} is outside [0, 1]")));
    }
    Ok(((n_cells as f64 * k).floor() as usize + 1).min(n_cells) as u32)
}

/// The first `n_iter` terms `S^n = ⌊N · K^{n+D}⌋ + 1`, materialized.
pub fn ciis_strategy(km: &KeyMaterial, n_iter: usize) -> Result<Strategy> {
    if n_iter == 0 {
        return Err(Error::InvalidArgument("n_iter must be at least 1".into()));
    }
    let terms: Vec<u32> = km
        .orbit()
        .skip(km.burn_in)
        .take(n_iter)
        .map(|k| cell_from_fixed(k, km.n_cells))
        .collect();
    Strategy::finite(km.n_cells, terms)
}

struct CiisSource(KeyMaterial);

impl TermSource for CiisSource {
    fn term(&self, position: usize) -> Option<u32> {
        self.terms_from(position).next()
    }

    fn terms_from(&self, start: usize) -> Box<dyn Iterator<Item = u32> + '_> {
        let n = self.0.n_cells;
        Box::new(
            self.0
                .orbit()
                .skip(self.0.burn_in + start)
                .map(move |k| cell_from_fixed(k, n)),
        )
    }
}

/// The unbounded CIIS strategy as a lazily generated sequence.
pub fn ciis_stream(km: &KeyMaterial) -> Result<Strategy> {
    Strategy::generated(km.n_cells, Arc::new(CiisSource(*km)))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn xor_examples() {
        assert_eq!(xor_mix(0.3, 0.0).unwrap(), Fixed64::from_real(0.3).unwrap());
        assert_eq!(xor_mix(0.5, 0.25).unwrap().to_f64(), 0.75);
        assert!(xor_mix(1.5, 0.0).is_err());
    }

    #[test]
    fn cell_examples() {
        assert_eq!(cell_from_fixed(Fixed64::ZERO, 8), 1);
        assert_eq!(cell_from_real(0.0, 8).unwrap(), 1);
        assert_eq!(cell_from_real(0.35, 8).unwrap(), 3);
        assert_eq!(cell_from_real(1.0, 8).unwrap(), 8);
        assert_eq!(cell_from_fixed(Fixed64::MAX, 8), 8);
        assert_eq!(cell_from_fixed(Fixed64::from_real(0.35).unwrap(), 8), 3);
    }

    #[test]
    fn stream_and_materialized_agree() {
        let km = KeyMaterial::from_reals(0.123, 0.456, 0.27, 50, 13).unwrap();
        let finite = ciis_strategy(&km, 200).unwrap();
        let lazy = ciis_stream(&km).unwrap();
        assert_eq!(finite.prefix(200).unwrap(), lazy.prefix(200).unwrap());
        assert_eq!(lazy.term(150).unwrap(), finite.term(150).unwrap());
        assert_eq!(
            lazy.shifted_by(10).unwrap().prefix(5).unwrap(),
            finite.shifted_by(10).unwrap().prefix(5).unwrap()
        );
    }

    #[test]
    fn zero_iterations_rejected() {
        let km = KeyMaterial::from_reals(0.1, 0.2, 0.3, 2, 4).unwrap();
        assert!(ciis_strategy(&km, 0).is_err());
    }

    #[test]
    fn single_cell_strategy_is_constant() {
        let km = KeyMaterial::from_reals(0.1, 0.2, 0.3, 2, 1).unwrap();
        assert!(ciis_strategy(&km, 50).unwrap().prefix(50).unwrap().iter().all(|&t| t == 1));
    }

    proptest! {
        #[test]
        fn xor_is_commutative_and_self_inverse(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            prop_assert_eq!(xor_mix(a, b).unwrap(), xor_mix(b, a).unwrap());
            prop_assert_eq!(xor_mix(a, a).unwrap(), Fixed64::ZERO);
        }

        #[test]
        fn terms_in_range(key in any::<u64>(), msg in any::<u64>(), n in 1usize..300) {
            let km = KeyMaterial::new(
                Fixed64::from_raw(key),
                Fixed64::from_raw(msg),
                5,
                PlcmParams::new(0.31).unwrap(),
                n,
            ).unwrap();
            let s = ciis_strategy(&km, 64).unwrap();
            for t in s.prefix(64).unwrap() {
                prop_assert!(t >= 1 && t as usize <= n);
            }
        }
    }
}

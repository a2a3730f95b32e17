use crate::dynamics::BitState;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Raw,
    Pgm { width: usize, height: usize, maxval: u16 },
}

/// A cover medium and the byte positions whose least significant bits form
/// its LSC plane.
///
/// For PGM covers the payload holds the raster only; the header is
/// regenerated on save.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverMedia {
    payload: Vec<u8>,
    kind: CoverKind,
    lsc_map: Vec<usize>,
}

impl CoverMedia {
    /// Every byte carries one LSC.
    pub fn raw(bytes: Vec<u8>) -> Self {
        let lsc_map = (0..bytes.len()).collect();
        Self {
            payload: bytes,
            kind: CoverKind::Raw,
            lsc_map,
        }
    }

    pub fn pgm(width: usize, height: usize, maxval: u16, pixels: Vec<u8>) -> Result<Self> {
        if maxval == 0 || maxval > 255 {
            return Err(Error::Parse(format!("unsupported maxval {maxval}")));
        }
        if pixels.len() != width * height {
            return Err(Error::LengthMismatch {
                expected: width * height,
                actual: pixels.len(),
            });
        }
        let lsc_map = (0..pixels.len()).collect();
        Ok(Self {
            payload: pixels,
            kind: CoverKind::Pgm {
                width,
                height,
                maxval,
            },
            lsc_map,
        })
    }

    /// Restricts the LSC plane to `len` consecutive entries starting at `start`.
    pub fn with_region(mut self, start: usize, len: usize) -> Result<Self> {
        let end = start
            .checked_add(len)
            .filter(|&e| e <= self.lsc_map.len() && len > 0)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "region {start}+{len} does not fit in {} LSCs",
                    self.lsc_map.len()
                ))
            })?;
        self.lsc_map = self.lsc_map[start..end].to_vec();
        Ok(self)
    }

    pub fn payload(&self) -> &[u8] {
        &self.payload
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn lsc_map(&self) -> &[usize] {
        &self.lsc_map
    }

    pub fn n_lscs(&self) -> usize {
        self.lsc_map.len()
    }

    /// Same kind, payload length and LSC positions.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.payload.len() == other.payload.len()
            && self.lsc_map == other.lsc_map
    }

    fn validate(&self) -> Result<()> {
        if self.lsc_map.is_empty() {
            return Err(Error::Parse("cover has no LSCs".into()));
        }
        let in_bounds = self.lsc_map.last().is_some_and(|&l| l < self.payload.len());
        let increasing = self.lsc_map.windows(2).all(|w| w[0] < w[1]);
        if !in_bounds || !increasing {
            return Err(Error::Parse("malformed LSC map".into()));
        }
        Ok(())
    }
}

/// Bit `i` is the least significant bit of the byte at LSC position `i`.
pub fn extract_lscs(cover: &CoverMedia) -> Result<BitState> {
    cover.validate()?;
    let mut state = BitState::zeros(cover.lsc_map.len())?;
    for (i, &pos) in cover.lsc_map.iter().enumerate() {
        state.set_bit(i, cover.payload[pos] & 1 == 1);
    }
    Ok(state)
}

/// Writes `state` into the LSC plane, leaving every other bit untouched.
pub fn inject_lscs(cover: &CoverMedia, state: &BitState) -> Result<CoverMedia> {
    cover.validate()?;
    if state.n_cells() != cover.lsc_map.len() {
        return Err(Error::LengthMismatch {
            expected: cover.lsc_map.len(),
            actual: state.n_cells(),
        });
    }
    let mut out = cover.clone();
    for (i, &pos) in cover.lsc_map.iter().enumerate() {
        out.payload[pos] = (out.payload[pos] & !1) | state.bit(i) as u8;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn extract_examples() {
        let c = CoverMedia::raw(vec![0x00, 0x01, 0xfe]);
        assert_eq!(extract_lscs(&c).unwrap().to_string(), "010");
        let even = CoverMedia::raw(vec![2, 4, 100, 254]);
        assert_eq!(extract_lscs(&even).unwrap().count_ones(), 0);
        assert!(extract_lscs(&CoverMedia::raw(vec![])).is_err());
    }

    #[test]
    fn inject_examples() {
        let c = CoverMedia::raw(vec![0x01, 0x03]);
        let out = inject_lscs(&c, &BitState::zeros(2).unwrap()).unwrap();
        assert_eq!(out.payload(), &[0x00, 0x02]);
        assert!(matches!(
            inject_lscs(&c, &BitState::zeros(3).unwrap()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn region_selects_contiguous_lscs() {
        let c = CoverMedia::raw(vec![1, 0, 1, 1, 0]).with_region(1, 3).unwrap();
        assert_eq!(extract_lscs(&c).unwrap().to_string(), "011");
        let out = inject_lscs(&c, &"100".parse().unwrap()).unwrap();
        assert_eq!(out.payload(), &[1, 1, 0, 0, 0]);
        assert!(CoverMedia::raw(vec![1, 2]).with_region(1, 2).is_err());
        assert!(CoverMedia::raw(vec![1, 2]).with_region(0, 0).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_and_lsb_only(bytes in proptest::collection::vec(any::<u8>(), 1..200), seed in any::<u64>()) {
            let c = CoverMedia::raw(bytes.clone());
            prop_assert_eq!(&inject_lscs(&c, &extract_lscs(&c).unwrap()).unwrap(), &c);

            let bits: Vec<bool> = (0..bytes.len()).map(|i| (seed.rotate_left(i as u32) & 1) == 1).collect();
            let state = BitState::from_bools(&bits).unwrap();
            let out = inject_lscs(&c, &state).unwrap();
            prop_assert_eq!(extract_lscs(&out).unwrap(), state);
            for (a, b) in bytes.iter().zip(out.payload()) {
                prop_assert!(a.abs_diff(*b) <= 1);
                prop_assert_eq!(a & !1, b & !1);
            }
        }
    }
}

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Boolean states of `n_cells` cells, packed into 64-bit words.
///
/// Components are addressed 1-based through [`BitState::get`] and friends,
/// matching the cell indices used by strategies. Bit `k` of the state maps to
/// bit `k - 1` of the packed representation, which is also what
/// [`BitState::to_index`] exposes for small systems.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitState {
    n_cells: usize,
    words: Vec<u64>,
}

impl BitState {
    pub fn zeros(n_cells: usize) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::Domain("a state needs at least one cell".into()));
        }
        Ok(Self {
            n_cells,
            words: vec![0; n_cells.div_ceil(64)],
        })
    }

    pub fn ones(n_cells: usize) -> Result<Self> {
        let mut s = Self::zeros(n_cells)?;
        s.words.iter_mut().for_each(|w| *w = u64::MAX);
        s.clear_padding();
        Ok(s)
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let mut s = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.words[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(s)
    }

    /// Builds a state from its enumeration index (bit `k - 1` of `index` is
    /// cell `k`). Only defined for `n_cells <= 64`.
    pub fn from_index(index: u64, n_cells: usize) -> Result<Self> {
        if n_cells > 64 {
            return Err(Error::Domain(format!(
                "index encoding needs n_cells <= 64, got {n_cells}"
            )));
        }
        if n_cells < 64 && index >> n_cells != 0 {
            return Err(Error::Domain(format!(
                "index {index} does not fit in {n_cells} cells"
            )));
        }
        let mut s = Self::zeros(n_cells)?;
        s.words[0] = index;
        Ok(s)
    }

    pub fn to_index(&self) -> Result<u64> {
        if self.n_cells > 64 {
            return Err(Error::Domain(format!(
                "index encoding needs n_cells <= 64, got {}",
                self.n_cells
            )));
        }
        Ok(self.words[0])
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    fn check(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n_cells {
            return Err(Error::IndexOutOfRange {
                index: k,
                n_cells: self.n_cells,
            });
        }
        Ok(k - 1)
    }

    /// State of cell `k` (1-based).
    pub fn get(&self, k: usize) -> Result<bool> {
        let i = self.check(k)?;
        Ok(self.bit(i))
    }

    pub fn set(&mut self, k: usize, value: bool) -> Result<()> {
        let i = self.check(k)?;
        self.set_bit(i, value);
        Ok(())
    }

    pub fn flip(&mut self, k: usize) -> Result<()> {
        let i = self.check(k)?;
        self.words[i / 64] ^= 1 << (i % 64);
        Ok(())
    }

    #[inline]
    pub(crate) fn bit(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_bit(&mut self, i: usize, value: bool) {
        let mask = 1 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.n_cells).map(|i| self.bit(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bitwise complement of every cell.
    pub fn negated(&self) -> Self {
        let mut s = self.clone();
        s.words.iter_mut().for_each(|w| *w = !*w);
        s.clear_padding();
        s
    }

    /// Number of differing cells.
    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.n_cells != other.n_cells {
            return Err(Error::LengthMismatch {
                expected: self.n_cells,
                actual: other.n_cells,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// 1-based indices of the cells where `self` and `other` differ, ascending.
    pub fn differing_cells(&self, other: &Self) -> Result<Vec<usize>> {
        if self.n_cells != other.n_cells {
            return Err(Error::LengthMismatch {
                expected: self.n_cells,
                actual: other.n_cells,
            });
        }
        Ok((0..self.n_cells)
            .filter(|&i| self.bit(i) != other.bit(i))
            .map(|i| i + 1)
            .collect())
    }

    fn clear_padding(&mut self) {
        let rem = self.n_cells % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Bit string `b_1 b_2 ... b_N` without separators, cell 1 first.
impl fmt::Display for BitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitState({self})")
    }
}

impl FromStr for BitState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bools(&bits)
    }
}

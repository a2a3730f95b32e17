use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::BitState;

/// A 1-based cell index in `1..=n_cells`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex(u32);

impl CellIndex {
    pub fn new(index: usize, n_cells: usize) -> Result<Self> {
        if index == 0 || index > n_cells {
            return Err(Error::IndexOutOfRange { index, n_cells });
        }
        Ok(Self(index as u32))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn zero_based(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A deterministic strategy generator queried by position.
///
/// `term(i)` is the `i`-th term (0-based position, 1-based cell index), or
/// `None` past the end of a finite source. `terms_from` may be overridden
/// when sequential generation is cheaper than random access.
#[allow(clippy::len_without_is_empty)]
pub trait TermSource: Send + Sync {
    fn term(&self, position: usize) -> Option<u32>;

    fn len(&self) -> Option<usize> {
        None
    }

    fn terms_from(&self, start: usize) -> Box<dyn Iterator<Item = u32> + '_> {
        Box::new((start..).map_while(move |i| self.term(i)))
    }
}

#[derive(Clone)]
enum Source {
    Finite(Arc<[u32]>),
    Periodic(Arc<[u32]>),
    Generated(Arc<dyn TermSource>),
}

/// A sequence of cell indices driving the iterations.
///
/// Finite and periodic strategies are materialized; generated strategies
/// defer to a [`TermSource`]. All three expose the same sequence contract
/// through [`Strategy::term`] and [`Strategy::terms`]. Shifting is O(1).
#[derive(Clone)]
pub struct Strategy {
    n_cells: usize,
    offset: usize,
    source: Source,
}

fn validate(terms: &[u32], n_cells: usize) -> Result<()> {
    for &t in terms {
        CellIndex::new(t as usize, n_cells)?;
    }
    Ok(())
}

impl Strategy {
    pub fn finite(n_cells: usize, terms: impl Into<Vec<u32>>) -> Result<Self> {
        let terms = terms.into();
        if n_cells == 0 {
            return Err(Error::Domain("a strategy needs at least one cell".into()));
        }
        validate(&terms, n_cells)?;
        Ok(Self {
            n_cells,
            offset: 0,
            source: Source::Finite(terms.into()),
        })
    }

    /// The infinite sequence `cycle, cycle, ...`.
    pub fn periodic(n_cells: usize, cycle: impl Into<Vec<u32>>) -> Result<Self> {
        let cycle = cycle.into();
        if n_cells == 0 {
            return Err(Error::Domain("a strategy needs at least one cell".into()));
        }
        if cycle.is_empty() {
            return Err(Error::Domain("periodic strategy needs a non-empty cycle".into()));
        }
        validate(&cycle, n_cells)?;
        Ok(Self {
            n_cells,
            offset: 0,
            source: Source::Periodic(cycle.into()),
        })
    }

    /// The constant strategy `(c, c, c, ...)`.
    pub fn constant(n_cells: usize, cell: usize) -> Result<Self> {
        Self::periodic(n_cells, vec![cell as u32])
    }

    pub fn generated(n_cells: usize, source: Arc<dyn TermSource>) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::Domain("a strategy needs at least one cell".into()));
        }
        Ok(Self {
            n_cells,
            offset: 0,
            source: Source::Generated(source),
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// Number of remaining terms, `None` if unbounded.
    pub fn remaining(&self) -> Option<usize> {
        match &self.source {
            Source::Finite(t) => Some(t.len().saturating_sub(self.offset)),
            Source::Periodic(_) => None,
            Source::Generated(g) => g.len().map(|l| l.saturating_sub(self.offset)),
        }
    }

    fn raw_term(&self, position: usize) -> Option<u32> {
        let i = self.offset + position;
        match &self.source {
            Source::Finite(t) => t.get(i).copied(),
            Source::Periodic(c) => Some(c[i % c.len()]),
            Source::Generated(g) => g.term(i),
        }
    }

    /// Term at `position` (0 is the head, `i(S)`).
    pub fn term(&self, position: usize) -> Result<CellIndex> {
        match self.raw_term(position) {
            Some(t) => CellIndex::new(t as usize, self.n_cells),
            None => Err(Error::StrategyExhausted {
                needed: position + 1,
                available: self.remaining().unwrap_or(0),
            }),
        }
    }

    pub fn head(&self) -> Result<CellIndex> {
        self.term(0)
    }

    /// Remaining terms in order. Stops at the end of a finite strategy; ends
    /// early with an error item if a generator yields an out-of-range cell.
    pub fn terms(&self) -> impl Iterator<Item = Result<CellIndex>> + '_ {
        let n = self.n_cells;
        let raw: Box<dyn Iterator<Item = u32> + '_> = match &self.source {
            Source::Finite(t) => Box::new(t[self.offset.min(t.len())..].iter().copied()),
            Source::Periodic(c) => {
                let len = c.len();
                Box::new((self.offset..).map(move |i| c[i % len]))
            }
            Source::Generated(g) => g.terms_from(self.offset),
        };
        raw.map(move |t| CellIndex::new(t as usize, n))
    }

    /// The first `len` terms as raw 1-based values.
    pub fn prefix(&self, len: usize) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(len);
        for t in self.terms().take(len) {
            out.push(t?.get() as u32);
        }
        if out.len() < len {
            return Err(Error::StrategyExhausted {
                needed: len,
                available: out.len(),
            });
        }
        Ok(out)
    }

    /// The shift `σ`: drops the head.
    pub fn shifted(&self) -> Result<Self> {
        self.shifted_by(1)
    }

    pub fn shifted_by(&self, n: usize) -> Result<Self> {
        if let Some(rem) = self.remaining() {
            if rem < n {
                return Err(Error::StrategyExhausted {
                    needed: n,
                    available: rem,
                });
            }
        }
        let mut s = self.clone();
        s.offset += n;
        if let Source::Periodic(c) = &s.source {
            s.offset %= c.len();
        }
        Ok(s)
    }

    /// Whether both strategies agree on their first `len` terms.
    pub fn agrees_with(&self, other: &Self, len: usize) -> Result<bool> {
        Ok(self.prefix(len)? == other.prefix(len)?)
    }
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<u32> = (0..8).map_while(|i| self.raw_term(i)).collect();
        let kind = match self.source {
            Source::Finite(_) => "finite",
            Source::Periodic(_) => "periodic",
            Source::Generated(_) => "generated",
        };
        write!(f, "Strategy[{kind}, n_cells={}]{shown:?}..", self.n_cells)
    }
}

/// A point `(S, E)` of the phase space.
#[derive(Clone, Debug)]
pub struct SystemPoint {
    strategy: Strategy,
    state: BitState,
}

impl SystemPoint {
    pub fn new(strategy: Strategy, state: BitState) -> Result<Self> {
        if strategy.n_cells() != state.n_cells() {
            return Err(Error::LengthMismatch {
                expected: state.n_cells(),
                actual: strategy.n_cells(),
            });
        }
        Ok(Self { strategy, state })
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn state(&self) -> &BitState {
        &self.state
    }

    pub fn n_cells(&self) -> usize {
        self.state.n_cells()
    }

    pub fn into_parts(self) -> (Strategy, BitState) {
        (self.strategy, self.state)
    }
}

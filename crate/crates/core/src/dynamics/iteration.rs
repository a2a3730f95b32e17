use crate::error::{Error, Result};

use super::{BitState, CellIndex, Strategy, SystemPoint};

/// A map `f: B^N -> B^N` on a fixed number of cells. Must be pure.
pub trait IterationFunction: Send + Sync {
    fn apply(&self, state: &BitState) -> BitState;

    /// `f(state)_k` for a 1-based `k`. Override when the component can be
    /// computed without the full image.
    fn component(&self, state: &BitState, k: CellIndex) -> bool {
        self.apply(state).bit(k.zero_based())
    }
}

/// The vectorial negation `f_0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct VectorNegation;

impl IterationFunction for VectorNegation {
    fn apply(&self, state: &BitState) -> BitState {
        state.negated()
    }

    fn component(&self, state: &BitState, k: CellIndex) -> bool {
        !state.bit(k.zero_based())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl IterationFunction for Identity {
    fn apply(&self, state: &BitState) -> BitState {
        state.clone()
    }

    fn component(&self, state: &BitState, k: CellIndex) -> bool {
        state.bit(k.zero_based())
    }
}

/// Wraps a closure as an [`IterationFunction`].
pub struct FnIteration<F>(pub F);

impl<F> IterationFunction for FnIteration<F>
where
    F: Fn(&BitState) -> BitState + Send + Sync,
{
    fn apply(&self, state: &BitState) -> BitState {
        let out = (self.0)(state);
        assert_eq!(out.n_cells(), state.n_cells(), "iteration function changed the cell count");
        out
    }
}

pub fn vector_negation(state: &BitState) -> BitState {
    state.negated()
}

/// `F_f(k, E)`: cell `k` takes `f(E)_k`, every other cell keeps its state.
pub fn apply_component<F: IterationFunction + ?Sized>(
    f: &F,
    k: usize,
    state: &BitState,
) -> Result<BitState> {
    let k = CellIndex::new(k, state.n_cells())?;
    let mut out = state.clone();
    out.set_bit(k.zero_based(), f.component(state, k));
    Ok(out)
}

/// `G_f(S, E) = (σ(S), F_f(i(S), E))`.
pub fn step<F: IterationFunction + ?Sized>(f: &F, point: &SystemPoint) -> Result<SystemPoint> {
    let head = point.strategy().head()?;
    let state = apply_component(f, head.get(), point.state())?;
    SystemPoint::new(point.strategy().shifted()?, state)
}

/// Applies `n_iter` chaotic iterations to `state` in place.
pub fn iterate_in_place<F: IterationFunction + ?Sized>(
    f: &F,
    state: &mut BitState,
    strategy: &Strategy,
    n_iter: usize,
) -> Result<()> {
    if strategy.n_cells() != state.n_cells() {
        return Err(Error::LengthMismatch {
            expected: state.n_cells(),
            actual: strategy.n_cells(),
        });
    }
    let mut done = 0;
    for term in strategy.terms().take(n_iter) {
        let k = term?;
        let v = f.component(state, k);
        state.set_bit(k.zero_based(), v);
        done += 1;
    }
    if done < n_iter {
        return Err(Error::StrategyExhausted {
            needed: n_iter,
            available: done,
        });
    }
    Ok(())
}

/// `x^{n_iter}` of the chaotic iterations started at `initial`.
pub fn iterate<F: IterationFunction + ?Sized>(
    f: &F,
    initial: &BitState,
    strategy: &Strategy,
    n_iter: usize,
) -> Result<BitState> {
    let mut state = initial.clone();
    iterate_in_place(f, &mut state, strategy, n_iter)?;
    Ok(state)
}

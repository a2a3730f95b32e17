//! The chaotic-iteration dynamical system: Boolean cell states, strategies,
//! the one-cell update operators and the phase-space metric.

mod iteration;
mod metric;
mod state;
mod strategy;

pub use iteration::{
    apply_component, iterate, iterate_in_place, step, vector_negation, FnIteration, Identity,
    IterationFunction, VectorNegation,
};
pub use metric::{
    point_distance, state_distance, strategy_distance, weighted_term_distance, Distance,
    DEFAULT_DEPTH,
};
pub use state::BitState;
pub use strategy::{CellIndex, Strategy, SystemPoint, TermSource};

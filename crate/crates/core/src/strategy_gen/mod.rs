//! Strategy generation.
//!
//! Cover-independent strategies come from iterating a piecewise linear
//! chaotic map seeded with `message XOR key`; cover-dependent strategies are
//! read off the cover's own least significant bits.

mod cids;
mod ciis;
mod fixed;
mod plcm;

pub use cids::cids_strategy;
pub use ciis::{cell_from_fixed, cell_from_real, ciis_strategy, ciis_stream, xor_mix, KeyMaterial, PlcmOrbit};
pub use fixed::Fixed64;
pub use plcm::PlcmParams;

/// Burn-in applied before the first strategy term when none is configured.
pub const DEFAULT_BURN_IN: usize = 997;

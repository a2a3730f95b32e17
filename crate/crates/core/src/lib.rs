//! Chaotic-iterations information hiding.
//!
//! The crate is split along the lines of the scheme itself:
//!
//! - [`dynamics`]: Boolean states, strategies, the chaotic-iteration
//!   operators and the phase-space metric.
//! - [`strategy_gen`]: strategy generation, either independent of the cover
//!   (driven by a piecewise linear chaotic map keyed with a message and a
//!   secret) or dependent on the cover's own least significant bits.
//! - [`hiding`]: LSB extraction/injection on raw and PGM covers, embedding
//!   and non-blind detection.
//! - [`lab`]: executable checks of the stego-security and chaos-security
//!   properties of the scheme, with JSON reports.
//!
//! Monte Carlo and exhaustive workloads run through [`exec::Execution`],
//! which is backed by rayon when the `parallel` feature is enabled.

pub mod dynamics;
pub mod error;
pub mod exec;
pub mod hiding;
pub mod lab;
pub mod strategy_gen;

pub use error::{Error, Result};

//! The hiding scheme: the least significant bits of a cover form the initial
//! state, chaotic iterations with the vectorial negation run on them, and
//! the result is written back.

mod cover;
mod pgm;
mod scheme;

pub use cover::{extract_lscs, inject_lscs, CoverKind, CoverMedia};
pub use pgm::{load_pgm, save_pgm};
pub use scheme::{detect_nonblind, embed, psnr, Detection, Embedder, EmbeddingConfig, StrategyMode};

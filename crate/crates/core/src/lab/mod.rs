//! Executable checks of the scheme's security properties.
//!
//! Stego-security is checked two ways: exactly, by pushing state
//! distributions through the iterations, and statistically, by embedding
//! many random covers under one key. Chaos-security is probed on small
//! systems by exhaustive or sampled quantification over finite strategy
//! spaces (periodic strategies, finite prefixes), so every verdict is
//! computational evidence for the stated sizes only.

mod chaos;
mod distribution;
mod report;
mod rng;
mod stats;
mod stego;

pub use chaos::{
    expansivity_probe, mixing_probe, regularity_probe, sensitivity_probe, ChaosWitness,
    ExpansivityConfig, ExpansivityReport, MixingReport, PointDescriptor, RegularityReport,
    SensitivityConfig, SensitivityReport, StrategyDescriptor,
};
pub use distribution::{exact_distribution_step, exact_pushforward, DistributionTable};
pub use report::{emit_report, format_real, SecurityReport, Verdict, REPORT_SCHEMA, SCHEMA_VERSION};
pub use rng::substream;
pub use stats::{chi_square_uniform, mutual_information_bits, total_variation, ChiSquare};
pub use stego::{
    agreement_probe, ciis_output_histogram, verify_cids_not_stego, verify_ciis_stego,
    AgreementReport, CidsVerdict, CiisStegoConfig, CiisStegoVerdict,
};

/// Largest system for which distribution tables are built.
pub const MAX_TABLE_CELLS: usize = 12;
pub const MAX_CIIS_STEGO_CELLS: usize = 10;
pub const MAX_EXPANSIVITY_CELLS: usize = 5;
pub const MAX_MIXING_CELLS: usize = 5;
pub const MAX_REGULARITY_CELLS: usize = 4;

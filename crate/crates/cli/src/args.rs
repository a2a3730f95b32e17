use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Chaotic-iteration information hiding and its security lab.
///
/// Exit status: 0 on success or match, 1 on mismatch or a failed verdict,
/// 2 on usage or operational errors.
#[derive(Debug, Parser)]
#[command(name = "chaoshide", version)]
pub struct Cli {
    /// Worker threads for the lab (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Job file of `name = value` lines; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Watermark a cover's LSC plane.
    Embed(EmbedArgs),
    /// Non-blind check of a suspect against the original cover.
    Detect(DetectArgs),
    /// Run the security lab and write a JSON report.
    Analyze(AnalyzeArgs),
    /// Print a cover's LSC plane as a bit string.
    Lscs(LscsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ciis,
    Cids,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Raw,
    Pgm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Full,
    Stego,
    Chaos,
}

#[derive(Debug, Default, Args)]
pub struct KeyArgs {
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Secret key: hex fixed-point (up to 16 digits) or a decimal in [0, 1].
    #[arg(long)]
    pub key: Option<String>,
    /// Hidden message, same syntax as --key.
    #[arg(long, conflicts_with = "message_file")]
    pub message: Option<String>,
    /// Hidden message as the first 8 bytes of a file.
    #[arg(long, value_name = "FILE")]
    pub message_file: Option<PathBuf>,
    /// PLCM control parameter in (0, 1/2).
    #[arg(long = "p")]
    pub p: Option<f64>,
    /// PLCM iterations discarded before the first strategy term.
    #[arg(long)]
    pub burn_in: Option<usize>,
    /// Number of chaotic iterations.
    #[arg(long)]
    pub n_iter: Option<usize>,
}

#[derive(Debug, Default, Args)]
pub struct CoverArgs {
    /// Cover format; inferred from a `.pgm` extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Restrict the LSC plane to `start:len` samples.
    #[arg(long, value_name = "START:LEN")]
    pub region: Option<String>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub key: KeyArgs,
    #[command(flatten)]
    pub cover: CoverArgs,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub original: Option<PathBuf>,
    #[arg(long)]
    pub suspect: Option<PathBuf>,
    #[command(flatten)]
    pub key: KeyArgs,
    #[command(flatten)]
    pub cover: CoverArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long)]
    pub n_cells: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report destination; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// Monte Carlo covers for the stego checks.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Iterate horizon of the expansivity probe.
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Longest strategy period enumerated by the expansivity probe.
    #[arg(long)]
    pub max_period: Option<usize>,
    #[arg(long)]
    pub aperiodic_samples: Option<usize>,
    /// Strategy prefix length fixing a ball in the mixing probe.
    #[arg(long)]
    pub prefix_len: Option<usize>,
    /// Ball radius for the regularity probe.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Sensitivity probe trials.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub sensitivity_horizon: Option<usize>,
    #[command(flatten)]
    pub key: KeyArgs,
}

#[derive(Debug, Args)]
pub struct LscsArgs {
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub cover: CoverArgs,
}

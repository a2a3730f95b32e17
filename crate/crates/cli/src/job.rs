//! Job resolution: flags, then the job file, then defaults.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use chaoshide::hiding::{load_pgm, save_pgm, CoverMedia, EmbeddingConfig};
use chaoshide::strategy_gen::{Fixed64, KeyMaterial, PlcmParams, DEFAULT_BURN_IN};
use clap::ValueEnum;

use crate::args::{CoverArgs, Format, KeyArgs, Mode};

pub const DEFAULT_P: f64 = 0.3;

const KNOWN_KEYS: &[&str] = &[
    "aperiodic-samples",
    "burn-in",
    "epsilon",
    "format",
    "horizon",
    "input",
    "key",
    "max-period",
    "message",
    "message-file",
    "mode",
    "n-cells",
    "n-iter",
    "original",
    "output",
    "p",
    "prefix-len",
    "region",
    "report",
    "samples",
    "seed",
    "sensitivity-horizon",
    "suite",
    "suspect",
    "trials",
];

/// `name = value` pairs; `#` starts a comment, `_` and `-` are interchangeable.
#[derive(Debug, Default)]
pub struct JobFile {
    values: BTreeMap<String, String>,
}

impl JobFile {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read job file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in job file {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected name = value", lineno + 1))?;
            let name = name.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&name.as_str()) {
                bail!("line {}: unknown setting `{name}`", lineno + 1);
            }
            values.insert(name, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn pick<T>(&self, flag: Option<T>, name: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.values
            .get(name)
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("invalid {name} `{v}`: {e}")))
            .transpose()
    }

    pub fn pick_enum<T: ValueEnum>(&self, flag: Option<T>, name: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.values
            .get(name)
            .map(|v| T::from_str(v, true).map_err(|e| anyhow!("invalid {name}: {e}")))
            .transpose()
    }

    pub fn path(&self, flag: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
        flag.clone().or_else(|| self.values.get(name).map(PathBuf::from))
    }
}

pub fn require<T>(value: Option<T>, flag: &str, context: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("--{flag} is required {context}"))
}

#[derive(Clone, Debug)]
pub struct KeySpec {
    pub mode: Mode,
    pub key: Option<Fixed64>,
    pub message: Option<Fixed64>,
    pub p: f64,
    pub burn_in: usize,
    pub n_iter: Option<usize>,
}

fn parse_fixed(text: &str, what: &str) -> Result<Fixed64> {
    text.parse::<Fixed64>()
        .map_err(|e| anyhow!("invalid {what} `{text}`: {e}"))
}

/// Resolves key flags; `--message-file` is read here, after validation.
pub fn resolve_key(args: &KeyArgs, file: &JobFile) -> Result<KeySpec> {
    let mode = file.pick_enum(args.mode, "mode")?.unwrap_or(Mode::Ciis);
    let key: Option<String> = file.pick(args.key.clone(), "key")?;
    let message: Option<String> = file.pick(args.message.clone(), "message")?;
    let message_file = if args.message.is_some() {
        None
    } else {
        file.path(&args.message_file, "message-file")
    };
    let p = file.pick(args.p, "p")?.unwrap_or(DEFAULT_P);
    let burn_in = file.pick(args.burn_in, "burn-in")?.unwrap_or(DEFAULT_BURN_IN);
    let n_iter = file.pick(args.n_iter, "n-iter")?;
    if n_iter == Some(0) {
        bail!("--n-iter must be at least 1");
    }
    PlcmParams::new(p).map_err(|e| anyhow!("invalid --p: {e}"))?;
    let key = key.as_deref().map(|k| parse_fixed(k, "key")).transpose()?;
    let message = match (message, message_file) {
        (Some(m), _) => Some(parse_fixed(&m, "message")?),
        (None, Some(path)) => {
            let bytes = std::fs::read(&path)
                .with_context(|| format!("cannot read message file {}", path.display()))?;
            Some(Fixed64::from_bytes(&bytes))
        }
        (None, None) => None,
    };
    Ok(KeySpec {
        mode,
        key,
        message,
        p,
        burn_in,
        n_iter,
    })
}

impl KeySpec {
    /// Checks what embedding needs before any cover is read.
    pub fn validate_for_embedding(&self) -> Result<()> {
        require(self.n_iter, "n-iter", "")?;
        if self.mode == Mode::Ciis {
            require(self.key, "key", "in ciis mode")?;
            require(self.message, "message", "(or --message-file) in ciis mode")?;
        }
        Ok(())
    }

    pub fn key_material(&self, key: Fixed64, message: Fixed64, n_cells: usize) -> Result<KeyMaterial> {
        Ok(KeyMaterial::new(
            key,
            message,
            self.burn_in,
            PlcmParams::new(self.p)?,
            n_cells,
        )?)
    }

    pub fn embedding_config(&self, n_cells: usize) -> Result<EmbeddingConfig> {
        self.validate_for_embedding()?;
        let n_iter = self.n_iter.unwrap_or_default();
        Ok(match self.mode {
            Mode::Ciis => {
                let km = self.key_material(
                    self.key.unwrap_or(Fixed64::ZERO),
                    self.message.unwrap_or(Fixed64::ZERO),
                    n_cells,
                )?;
                EmbeddingConfig::ciis(km, n_iter)?
            }
            Mode::Cids => EmbeddingConfig::cids(n_iter)?,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CoverSpec {
    pub format: Option<Format>,
    pub region: Option<(usize, usize)>,
}

fn parse_region(text: &str) -> Result<(usize, usize)> {
    let (start, len) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("--region expects START:LEN, got `{text}`"))?;
    let start = start.trim().parse().map_err(|e| anyhow!("invalid region start: {e}"))?;
    let len = len.trim().parse().map_err(|e| anyhow!("invalid region length: {e}"))?;
    Ok((start, len))
}

pub fn resolve_cover(args: &CoverArgs, file: &JobFile) -> Result<CoverSpec> {
    let format = file.pick_enum(args.format, "format")?;
    let region: Option<String> = file.pick(args.region.clone(), "region")?;
    Ok(CoverSpec {
        format,
        region: region.as_deref().map(parse_region).transpose()?,
    })
}

impl CoverSpec {
    pub fn format_for(&self, path: &Path) -> Format {
        self.format.unwrap_or_else(|| {
            let is_pgm = path
                .extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
            if is_pgm {
                Format::Pgm
            } else {
                Format::Raw
            }
        })
    }

    pub fn load(&self, path: &Path) -> Result<(CoverMedia, Format)> {
        let format = self.format_for(path);
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let cover = match format {
            Format::Raw => CoverMedia::raw(bytes),
            Format::Pgm => load_pgm(&bytes).with_context(|| format!("in {}", path.display()))?,
        };
        let cover = match self.region {
            Some((start, len)) => cover.with_region(start, len)?,
            None => cover,
        };
        if cover.n_lscs() == 0 {
            bail!("{} has no samples", path.display());
        }
        Ok((cover, format))
    }
}

pub fn write_cover(path: &Path, cover: &CoverMedia, format: Format) -> Result<()> {
    let bytes = match format {
        Format::Raw => cover.payload().to_vec(),
        Format::Pgm => save_pgm(cover)?,
    };
    std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

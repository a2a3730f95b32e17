use std::io::Write;

use anyhow::{bail, Result};
use chaoshide::exec::Execution;
use chaoshide::hiding::{detect_nonblind, embed, extract_lscs, psnr};
use chaoshide::lab::{
    agreement_probe, emit_report, expansivity_probe, mixing_probe, regularity_probe,
    sensitivity_probe, substream, verify_ciis_stego, verify_cids_not_stego, CiisStegoConfig,
    ExpansivityConfig, SecurityReport, SensitivityConfig, Verdict, MAX_CIIS_STEGO_CELLS,
    MAX_REGULARITY_CELLS,
};
use chaoshide::strategy_gen::Fixed64;
use rand::Rng;
use serde_json::json;

use crate::args::{AnalyzeArgs, DetectArgs, EmbedArgs, LscsArgs, Mode, Suite};
use crate::job::{require, resolve_cover, resolve_key, write_cover, JobFile};

/// Semantic result of a command; errors are reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
}

fn emit(lines: &[(&str, String)]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    for (k, v) in lines {
        writeln!(out, "{k}={v}")?;
    }
    Ok(())
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Ciis => "ciis",
        Mode::Cids => "cids",
    }
}

fn format_db(db: f64) -> String {
    if db.is_finite() {
        format!("{db:.4}")
    } else {
        "inf".into()
    }
}

pub fn embed_cmd(args: &EmbedArgs, file: &JobFile) -> Result<Outcome> {
    let input = require(file.path(&args.input, "input"), "input", "")?;
    let output = require(file.path(&args.output, "output"), "output", "")?;
    let key = resolve_key(&args.key, file)?;
    key.validate_for_embedding()?;
    let cover_spec = resolve_cover(&args.cover, file)?;

    let (cover, format) = cover_spec.load(&input)?;
    let config = key.embedding_config(cover.n_lscs())?;
    let marked = embed(&cover, &config)?;
    write_cover(&output, &marked, format)?;

    let changes = extract_lscs(&cover)?.hamming(&extract_lscs(&marked)?)?;
    emit(&[
        ("mode", mode_name(key.mode).into()),
        ("n_cells", cover.n_lscs().to_string()),
        ("n_iter", config.n_iter.to_string()),
        ("lsc_changes", changes.to_string()),
        ("psnr_db", format_db(psnr(&cover, &marked)?)),
        ("output", output.display().to_string()),
    ])?;
    Ok(Outcome::Positive)
}

pub fn detect_cmd(args: &DetectArgs, file: &JobFile) -> Result<Outcome> {
    let original = require(file.path(&args.original, "original"), "original", "")?;
    let suspect = require(file.path(&args.suspect, "suspect"), "suspect", "")?;
    let key = resolve_key(&args.key, file)?;
    key.validate_for_embedding()?;
    let cover_spec = resolve_cover(&args.cover, file)?;

    let (orig, _) = cover_spec.load(&original)?;
    let (susp, _) = cover_spec.load(&suspect)?;
    if !orig.same_shape(&susp) {
        bail!("original and suspect differ in shape");
    }
    let config = key.embedding_config(orig.n_lscs())?;
    let det = detect_nonblind(&orig, &susp, &config)?;
    emit(&[
        ("verdict", if det.matched { "match" } else { "mismatch" }.into()),
        ("distance", det.distance.to_string()),
        ("n_cells", det.n_cells.to_string()),
    ])?;
    Ok(if det.matched {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

pub fn lscs_cmd(args: &LscsArgs, file: &JobFile) -> Result<Outcome> {
    let input = require(file.path(&args.input, "input"), "input", "")?;
    let (cover, _) = resolve_cover(&args.cover, file)?.load(&input)?;
    let lscs = extract_lscs(&cover)?;
    emit(&[
        ("n_cells", lscs.n_cells().to_string()),
        ("lscs", lscs.to_string()),
    ])?;
    Ok(Outcome::Positive)
}

const COMMENTARY: &[&str] = &[
    "Chaos probes quantify over finite strategy families (all short periodic cycles, sampled \
     prefixes, enumerated balls); verdicts are computational evidence at the stated sizes only.",
    "Each iterate of the vectorial negation flips exactly one cell, so at any single iterate only \
     states of one parity are reachable (see max_single_iterate_coverage); mixing is reported as \
     reachability within prefix_len + n_cells iterations.",
    "With a fixed key the watermarked plane is the cover plane XOR a key-dependent mask, so the \
     Monte Carlo chi-square mainly checks the cover sampler; the exact push-forward is the primary \
     stego evidence.",
    "The strategy/state mutual information is a plug-in estimate reported without a threshold.",
];

pub fn analyze_cmd(args: &AnalyzeArgs, file: &JobFile, exec: Execution) -> Result<Outcome> {
    let suite = file.pick_enum(args.suite, "suite")?.unwrap_or(Suite::Full);
    let n = file.pick(args.n_cells, "n-cells")?.unwrap_or(4);
    let seed = file.pick(args.seed, "seed")?.unwrap_or(0);
    let report_path = file.path(&args.report, "report");
    let samples = file.pick(args.samples, "samples")?.unwrap_or(1_000_000);
    let horizon = file.pick(args.horizon, "horizon")?.unwrap_or(8);
    let max_period = file.pick(args.max_period, "max-period")?.unwrap_or(horizon.min(4));
    let aperiodic = file.pick(args.aperiodic_samples, "aperiodic-samples")?.unwrap_or(64);
    let prefix_len = file.pick(args.prefix_len, "prefix-len")?.unwrap_or(3);
    let epsilon = file.pick(args.epsilon, "epsilon")?.unwrap_or(1e-2);
    let trials = file.pick(args.trials, "trials")?.unwrap_or(1000);
    let sens_horizon = file.pick(args.sensitivity_horizon, "sensitivity-horizon")?.unwrap_or(32);
    let key = resolve_key(&args.key, file)?;
    let n_iter = key.n_iter.unwrap_or(4 * n.max(1));

    let stego = matches!(suite, Suite::Full | Suite::Stego);
    let chaos = matches!(suite, Suite::Full | Suite::Chaos);
    if n == 0 {
        bail!("--n-cells must be at least 1");
    }
    if stego {
        if n > MAX_CIIS_STEGO_CELLS {
            bail!("the stego suite supports at most {MAX_CIIS_STEGO_CELLS} cells, got {n}");
        }
        let needed = 10u64 << n;
        if samples < needed {
            bail!("--samples must be at least 10 * 2^n_cells = {needed} for {n} cells");
        }
    }
    if chaos {
        if !(2..=MAX_REGULARITY_CELLS).contains(&n) {
            bail!("the chaos suite supports 2..={MAX_REGULARITY_CELLS} cells, got {n}");
        }
        if horizon == 0 || max_period == 0 || trials == 0 || sens_horizon == 0 {
            bail!("horizon, max-period, trials and sensitivity-horizon must be at least 1");
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            bail!("--epsilon must be positive");
        }
    }

    // Without explicit key material the lab derives it from the seed.
    let mut key_rng = substream(seed, u64::MAX);
    let derived_key = Fixed64::from_raw(key_rng.random());
    let derived_message = Fixed64::from_raw(key_rng.random());
    let km = key.key_material(
        key.key.unwrap_or(derived_key),
        key.message.unwrap_or(derived_message),
        n,
    )?;

    let configuration = json!({
        "suite": format!("{suite:?}").to_lowercase(),
        "n_cells": n,
        "seed": seed,
        "n_iter": n_iter,
        "key": km.key.to_hex(),
        "message": km.message.to_hex(),
        "p": key.p,
        "burn_in": key.burn_in,
        "samples": samples,
        "horizon": horizon,
        "max_period": max_period,
        "aperiodic_samples": aperiodic,
        "prefix_len": prefix_len,
        "epsilon": epsilon,
        "trials": trials,
        "sensitivity_horizon": sens_horizon,
    });

    let mut verdicts = Vec::new();
    if stego {
        let cfg = CiisStegoConfig {
            key_material: km,
            n_iter,
            sample_count: samples,
            seed,
        };
        verdicts.push(Verdict::CiisStego(verify_ciis_stego(&cfg, exec)?));
        verdicts.push(Verdict::CidsNotStego(verify_cids_not_stego(n, n_iter.max(n), exec)?));
        verdicts.push(Verdict::HistogramAgreement(agreement_probe(
            &km, n_iter, samples, seed, 0.01, exec,
        )?));
    }
    if chaos {
        let cfg = ExpansivityConfig {
            max_period,
            aperiodic_samples: aperiodic,
            seed,
            ..ExpansivityConfig::new(n, horizon)
        };
        verdicts.push(Verdict::Expansivity(expansivity_probe(&cfg, exec)?));
        verdicts.push(Verdict::Mixing(mixing_probe(n, prefix_len, exec)?));
        let cfg = SensitivityConfig::new(n, trials, sens_horizon, seed);
        verdicts.push(Verdict::Sensitivity(sensitivity_probe(&cfg, exec)?));
        verdicts.push(Verdict::Regularity(regularity_probe(n, epsilon, exec)?));
    }

    let mut commentary: Vec<String> = COMMENTARY.iter().map(|s| s.to_string()).collect();
    if stego && n == 1 {
        commentary.push(
            "With a single cell the deterministic strategy negates the cover bit, so its output \
             is uniform and the two-output claim does not hold."
                .into(),
        );
    }
    let report = SecurityReport::new(
        "chaotic iterations on the LSB plane with PLCM-driven (ciis) and cover-driven (cids) strategies",
        seed,
        configuration,
        verdicts,
        commentary,
    );
    let text = emit_report(&report)?;

    let mut summary: Vec<(&str, String)> =
        vec![("suite", format!("{suite:?}").to_lowercase()), ("n_cells", n.to_string())];
    for v in &report.verdicts {
        summary.push((v.name(), if v.passed() { "pass" } else { "fail" }.into()));
    }
    summary.push(("all_passed", report.all_passed.to_string()));
    match &report_path {
        Some(path) => {
            std::fs::write(path, &text)?;
            summary.push(("report", path.display().to_string()));
            emit(&summary)?;
        }
        None => {
            // The report owns standard output; the summary moves to stderr.
            std::io::stdout().lock().write_all(text.as_bytes())?;
            for (k, v) in &summary {
                eprintln!("{k}={v}");
            }
        }
    }
    Ok(if report.all_passed {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

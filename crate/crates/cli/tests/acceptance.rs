//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are never captured; exits nonzero on any failure.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use chaoshide::exec::Execution;
use chaoshide::hiding::{extract_lscs, load_pgm, psnr, save_pgm, CoverMedia};
use chaoshide::lab::{
    agreement_probe, exact_distribution_step, expansivity_probe, mixing_probe, regularity_probe,
    verify_ciis_stego, verify_cids_not_stego, CiisStegoConfig, DistributionTable,
    ExpansivityConfig, REPORT_SCHEMA,
};
use chaoshide::strategy_gen::KeyMaterial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, format!("took {spent:?}, budget {budget:?}"))
}

fn key(n: usize) -> KeyMaterial {
    KeyMaterial::from_reals(0.7172, 0.2451, 0.3, 997, n).unwrap()
}

fn cids_two_outputs() -> Check {
    let t = Instant::now();
    let v = verify_cids_not_stego(8, 8, Execution::Parallel).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(1))?;
    ensure(
        v.reachable == ["00000000", "10000000"],
        format!("reachable set {:?}", v.reachable),
    )?;
    ensure(v.all_ones_probability == 0.0, "all-ones content reached")?;
    Ok(format!("reachable={:?} p(1^8)=0", v.reachable))
}

fn uniform_fixed_point() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let uniform = DistributionTable::uniform(10).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let raw: Vec<f64> = (0..10).map(|_| rng.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let sd: Vec<f64> = raw.iter().map(|r| r / total).collect();
        let out = exact_distribution_step(&uniform, &sd).map_err(|e| e.to_string())?;
        worst = worst.max(out.max_deviation_from_uniform());
    }
    within(t, Duration::from_secs(10))?;
    ensure(worst < 1e-9, format!("max deviation {worst:e}"))?;
    Ok(format!("100 strategy distributions, max deviation {worst:e}"))
}

fn ciis_monte_carlo() -> Check {
    let t = Instant::now();
    let config = CiisStegoConfig {
        key_material: key(8),
        n_iter: 64,
        sample_count: 1_000_000,
        seed: 1,
    };
    let v = verify_ciis_stego(&config, Execution::Parallel).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(30))?;
    ensure(v.chi_square.degrees_of_freedom == 255, "wrong bin count")?;
    ensure(v.chi_square.p_value > 0.01, format!("p-value {}", v.chi_square.p_value))?;
    Ok(format!(
        "chi2={:.3} df=255 p={:.4}",
        v.chi_square.statistic, v.chi_square.p_value
    ))
}

fn expansivity() -> Check {
    let t = Instant::now();
    let mut cfg = ExpansivityConfig::new(4, 8);
    cfg.max_period = 4;
    cfg.aperiodic_samples = 0;
    let r = expansivity_probe(&cfg, Execution::Parallel).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(10))?;
    ensure(r.failures == 0, format!("{} pairs below 1", r.failures))?;
    ensure(
        r.equal_state_failures == 0,
        format!("{} equal-state pairs below 2", r.equal_state_failures),
    )?;
    let replay = r.infimum_witness.replay(cfg.depth).map_err(|e| e.to_string())?;
    ensure(replay == r.infimum_witness.distance, "witness does not replay")?;
    Ok(format!(
        "{} pairs, infimum {} (equal states {:.6})",
        r.distinct_pairs,
        r.infimum_max_separation,
        r.equal_state_infimum_max_separation.unwrap_or(f64::NAN)
    ))
}

fn mixing() -> Check {
    let t = Instant::now();
    let r = mixing_probe(4, 3, Execution::Parallel).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(5))?;
    ensure(r.passed, format!("{r:?}"))?;
    ensure(r.max_horizon <= 3 + 4, format!("horizon {}", r.max_horizon))?;
    Ok(format!("{} balls x 16 states, max horizon {}", r.balls, r.max_horizon))
}

fn regularity() -> Check {
    let t = Instant::now();
    let r = regularity_probe(3, 1e-2, Execution::Parallel).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(5))?;
    ensure(r.passed, format!("{r:?}"))?;
    Ok(format!(
        "{} balls, all periodic and inside, max distance bound {:e}",
        r.balls, r.max_distance_bound
    ))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chaoshide"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn pipeline(dir: &Path) -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(512);
    let pixels: Vec<u8> = (0..512 * 512).map(|_| rng.random()).collect();
    let cover = CoverMedia::pgm(512, 512, 255, pixels).unwrap();
    let input = dir.join("cover.pgm");
    let output = dir.join("marked.pgm");
    std::fs::write(&input, save_pgm(&cover).unwrap()).unwrap();
    let key_args = ["--key", "0.7172", "--message", "0.2451", "--n-iter", "262144"];

    let (code, stdout) = run(&[
        &["embed", "-i", input.to_str().unwrap(), "-o", output.to_str().unwrap()][..],
        &key_args,
    ]
    .concat());
    ensure(code == 0, format!("embed exit {code}"))?;
    let (code, detect) = run(&[
        &["detect", "--original", input.to_str().unwrap(), "--suspect", output.to_str().unwrap()][..],
        &key_args,
    ]
    .concat());
    within(t, Duration::from_secs(1))?;
    ensure(code == 0, format!("detect exit {code}: {detect}"))?;
    ensure(detect.contains("verdict=match") && detect.contains("distance=0"), detect.clone())?;

    let marked = load_pgm(&std::fs::read(&output).unwrap()).unwrap();
    let max_step = cover
        .payload()
        .iter()
        .zip(marked.payload())
        .map(|(a, b)| a.abs_diff(*b))
        .max()
        .unwrap_or(0);
    ensure(max_step <= 1, format!("byte changed by {max_step}"))?;
    let db = psnr(&cover, &marked).unwrap();
    ensure(db > 48.1, format!("psnr {db}"))?;
    let changes = extract_lscs(&cover).unwrap().hamming(&extract_lscs(&marked).unwrap()).unwrap();
    ensure(stdout.contains(&format!("lsc_changes={changes}")), stdout.clone())?;
    Ok(format!("distance 0, max byte change {max_step}, psnr {db:.2} dB"))
}

fn determinism(dir: &Path) -> Check {
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let flags = ["analyze", "--suite", "full", "--n-cells", "4", "--seed", "1", "--report"];
    for path in [&a, &b] {
        let (code, out) = run(&[&flags[..], &[path.to_str().unwrap()]].concat());
        ensure(code == 0, format!("analyze exit {code}: {out}"))?;
    }
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    ensure(ra == rb, "reports differ")?;
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let report: serde_json::Value = serde_json::from_slice(&ra).unwrap();
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    ensure(validator.is_valid(&report), "report does not validate against the schema")?;
    Ok(format!("two runs, {} identical bytes, schema-valid", ra.len()))
}

fn agreement() -> Check {
    let r = agreement_probe(&key(4), 32, 1_000_000, 3, 0.01, Execution::Parallel)
        .map_err(|e| e.to_string())?;
    ensure(r.total_variation < 0.01, format!("tv {}", r.total_variation))?;
    Ok(format!("tv {:.6} over 10^6 samples", r.total_variation))
}

fn main() -> std::process::ExitCode {
    let dir = tempfile::tempdir().unwrap();
    let criteria: Vec<Criterion> = vec![
        ("cids two-output claim", Box::new(cids_two_outputs)),
        ("ciis exact uniform fixed point", Box::new(uniform_fixed_point)),
        ("ciis monte carlo chi-square", Box::new(ciis_monte_carlo)),
        ("expansivity constant 1", Box::new(expansivity)),
        ("topological mixing", Box::new(mixing)),
        ("regularity", Box::new(regularity)),
        ("pipeline integrity", Box::new(|| pipeline(dir.path()))),
        ("report determinism", Box::new(|| determinism(dir.path()))),
        ("monte carlo / exact agreement", Box::new(agreement)),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {}. {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: 9/9 criteria passed");
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}

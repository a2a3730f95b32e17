use rand::Rng;
use serde::Serialize;

use crate::dynamics::{
    apply_component, iterate, point_distance, step, weighted_term_distance, BitState, Strategy,
    SystemPoint, VectorNegation, DEFAULT_DEPTH,
};
use crate::error::{Error, Result};
use crate::exec::Execution;

use super::{substream, MAX_EXPANSIVITY_CELLS, MAX_MIXING_CELLS, MAX_REGULARITY_CELLS};

/// Serializable description of a strategy used by a probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StrategyDescriptor {
    Periodic { cycle: Vec<u32> },
    Finite { terms: Vec<u32> },
}

impl StrategyDescriptor {
    pub fn to_strategy(&self, n_cells: usize) -> Result<Strategy> {
        match self {
            Self::Periodic { cycle } => Strategy::periodic(n_cells, cycle.clone()),
            Self::Finite { terms } => Strategy::finite(n_cells, terms.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointDescriptor {
    pub state: String,
    pub strategy: StrategyDescriptor,
}

impl PointDescriptor {
    pub fn to_point(&self) -> Result<SystemPoint> {
        let state: BitState = self.state.parse()?;
        let strategy = self.strategy.to_strategy(state.n_cells())?;
        SystemPoint::new(strategy, state)
    }
}

/// Two points and the distance between their `n`-th iterates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChaosWitness {
    pub x: PointDescriptor,
    pub y: PointDescriptor,
    pub n: usize,
    pub distance: f64,
}

impl ChaosWitness {
    /// Recomputes `d(G^n x, G^n y)` by direct iteration.
    pub fn replay(&self, depth: usize) -> Result<f64> {
        let mut x = self.x.to_point()?;
        let mut y = self.y.to_point()?;
        for _ in 0..self.n {
            x = step(&VectorNegation, &x)?;
            y = step(&VectorNegation, &y)?;
        }
        Ok(point_distance(&x, &y, depth)?.value)
    }
}

fn check_cells(n_cells: usize, cap: usize, probe: &str) -> Result<()> {
    if n_cells == 0 || n_cells > cap {
        return Err(Error::InvalidArgument(format!(
            "{probe} supports 1..={cap} cells, got {n_cells}"
        )));
    }
    Ok(())
}

/// All sequences of `len` terms over `1..=n_cells`, in lexicographic order.
fn all_sequences(n_cells: usize, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=n_cells as u32).map(move |t| {
                    let mut p = prefix.clone();
                    p.push(t);
                    p
                })
            })
            .collect();
    }
    out
}

fn is_primitive(cycle: &[u32]) -> bool {
    let p = cycle.len();
    (1..p)
        .filter(|&d| p.is_multiple_of(d))
        .all(|d| (0..p).any(|i| cycle[i] != cycle[i % d]))
}

/// Every periodic strategy with minimal period `<= max_period`, each once.
fn periodic_strategies(n_cells: usize, max_period: usize) -> Vec<Vec<u32>> {
    (1..=max_period)
        .flat_map(|p| all_sequences(n_cells, p))
        .filter(|c| is_primitive(c))
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExpansivityConfig {
    pub n_cells: usize,
    pub horizon: usize,
    pub max_period: usize,
    pub aperiodic_samples: usize,
    pub seed: u64,
    pub depth: usize,
}

impl ExpansivityConfig {
    pub fn new(n_cells: usize, horizon: usize) -> Self {
        Self {
            n_cells,
            horizon,
            max_period: horizon.min(4),
            aperiodic_samples: 32,
            seed: 0,
            depth: DEFAULT_DEPTH,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansivityReport {
    pub method: &'static str,
    pub config: ExpansivityConfig,
    pub periodic_strategies: usize,
    pub sampled_strategies: usize,
    pub points: usize,
    pub distinct_pairs: u64,
    pub equal_state_pairs: u64,
    pub constant: f64,
    /// Smallest, over distinct pairs, of the largest separation reached.
    pub infimum_max_separation: f64,
    pub infimum_witness: ChaosWitness,
    pub equal_state_infimum_max_separation: Option<f64>,
    pub equal_state_witness: Option<ChaosWitness>,
    /// Pairs never separated to `constant` within the horizon.
    pub failures: u64,
    /// Equal-state pairs never separated to 2 within the horizon.
    pub equal_state_failures: u64,
    /// Pairs with differing states whose initial distance is below 1.
    pub differing_state_failures_at_start: u64,
    pub passed: bool,
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    i: usize,
    j: usize,
    n: usize,
}

impl Best {
    fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (Some(a), Some(b)) => Some(if (b.value, b.i, b.j) < (a.value, a.i, a.j) { b } else { a }),
            (a, None) => a,
            (None, b) => b,
        }
    }
}

#[derive(Clone, Copy, Default)]
struct PairTally {
    pairs: u64,
    equal_state_pairs: u64,
    failures: u64,
    equal_state_failures: u64,
    start_failures: u64,
    best: Option<Best>,
    best_equal: Option<Best>,
}

/// Checks that every pair of distinct points separates to distance `>= 1`
/// within `horizon` iterations, over all states crossed with every periodic
/// strategy of period `<= max_period` and a sample of aperiodic prefixes.
pub fn expansivity_probe(config: &ExpansivityConfig, exec: Execution) -> Result<ExpansivityReport> {
    let n = config.n_cells;
    check_cells(n, MAX_EXPANSIVITY_CELLS, "expansivity probe")?;
    if config.horizon == 0 || config.max_period == 0 {
        return Err(Error::InvalidArgument("horizon and max_period must be >= 1".into()));
    }
    let horizon = config.horizon;
    let depth = config.depth;

    let mut descriptors: Vec<StrategyDescriptor> = periodic_strategies(n, config.max_period)
        .into_iter()
        .map(|cycle| StrategyDescriptor::Periodic { cycle })
        .collect();
    let periodic_count = descriptors.len();
    let mut strategies: Vec<Strategy> = descriptors
        .iter()
        .map(|d| d.to_strategy(n))
        .collect::<Result<_>>()?;
    let mut seen: std::collections::HashSet<Vec<u32>> = strategies
        .iter()
        .map(|s| s.prefix(horizon))
        .collect::<Result<_>>()?;
    let mut rng = substream(config.seed, 0);
    let mut sampled = 0;
    for _ in 0..config.aperiodic_samples {
        let terms: Vec<u32> = (0..horizon + depth)
            .map(|_| rng.random_range(1..=n as u32))
            .collect();
        if seen.insert(terms[..horizon].to_vec()) {
            strategies.push(Strategy::finite(n, terms.clone())?);
            descriptors.push(StrategyDescriptor::Finite { terms });
            sampled += 1;
        }
    }

    // shifted[s][k]: the first `depth` terms of σ^k(S_s).
    let shifted: Vec<Vec<Vec<u32>>> = strategies
        .iter()
        .map(|s| {
            (0..=horizon)
                .map(|k| s.shifted_by(k)?.prefix(depth))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let n_strat = strategies.len();
    let ds: Vec<f64> = exec
        .map_indexed(n_strat * n_strat, |idx| {
            let (a, b) = (idx / n_strat, idx % n_strat);
            (0..=horizon)
                .map(|k| weighted_term_distance(&shifted[a][k], &shifted[b][k], n))
                .collect::<Vec<f64>>()
        })
        .concat();

    // Orbits by direct iteration: point i = strategy i / 2^n, state i % 2^n.
    let states = 1usize << n;
    let points = n_strat * states;
    let orbits: Vec<Vec<BitState>> = exec
        .map_indexed(points, |i| -> Result<Vec<BitState>> {
            let mut p = SystemPoint::new(
                strategies[i / states].clone(),
                BitState::from_index((i % states) as u64, n)?,
            )?;
            let mut orbit = vec![p.state().clone()];
            for _ in 0..horizon {
                p = step(&VectorNegation, &p)?;
                orbit.push(p.state().clone());
            }
            Ok(orbit)
        })
        .into_iter()
        .collect::<Result<_>>()?;

    let tallies = exec.map_indexed(points, |i| -> Result<PairTally> {
        let mut t = PairTally::default();
        let si = i / states;
        for j in i + 1..points {
            let sj = j / states;
            let base = (si * n_strat + sj) * (horizon + 1);
            let mut max = f64::NEG_INFINITY;
            let mut arg = 0;
            for k in 0..=horizon {
                let de = orbits[i][k].hamming(&orbits[j][k])?;
                let d = de as f64 + ds[base + k];
                if d > max {
                    max = d;
                    arg = k;
                }
            }
            let equal_state = i % states == j % states;
            t.pairs += 1;
            if max < 1.0 {
                t.failures += 1;
            }
            if equal_state {
                t.equal_state_pairs += 1;
                if max < 2.0 {
                    t.equal_state_failures += 1;
                }
            } else if orbits[i][0].hamming(&orbits[j][0])? < 1 {
                t.start_failures += 1;
            }
            let cand = Some(Best { value: max, i, j, n: arg });
            t.best = Best::better(t.best, cand);
            if equal_state {
                t.best_equal = Best::better(t.best_equal, cand);
            }
        }
        Ok(t)
    });
    let mut total = PairTally::default();
    for t in tallies {
        let t = t?;
        total.pairs += t.pairs;
        total.equal_state_pairs += t.equal_state_pairs;
        total.failures += t.failures;
        total.equal_state_failures += t.equal_state_failures;
        total.start_failures += t.start_failures;
        total.best = Best::better(total.best, t.best);
        total.best_equal = Best::better(total.best_equal, t.best_equal);
    }

    let describe = |i: usize| -> Result<PointDescriptor> {
        Ok(PointDescriptor {
            state: BitState::from_index((i % states) as u64, n)?.to_string(),
            strategy: descriptors[i / states].clone(),
        })
    };
    let witness = |b: Best| -> Result<ChaosWitness> {
        Ok(ChaosWitness {
            x: describe(b.i)?,
            y: describe(b.j)?,
            n: b.n,
            distance: b.value,
        })
    };
    let best = total
        .best
        .ok_or_else(|| Error::InvalidArgument("expansivity probe needs at least two points".into()))?;
    let passed = total.failures == 0 && total.start_failures == 0;
    Ok(ExpansivityReport {
        method: "exhaustive pairs over all states x periodic strategies (plus sampled aperiodic \
                 prefixes), max separation over iterates 0..=horizon",
        config: *config,
        periodic_strategies: periodic_count,
        sampled_strategies: sampled,
        points,
        distinct_pairs: total.pairs,
        equal_state_pairs: total.equal_state_pairs,
        constant: 1.0,
        infimum_max_separation: best.value,
        infimum_witness: witness(best)?,
        equal_state_infimum_max_separation: total.best_equal.map(|b| b.value),
        equal_state_witness: total.best_equal.map(witness).transpose()?,
        failures: total.failures,
        equal_state_failures: total.equal_state_failures,
        differing_state_failures_at_start: total.start_failures,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MixingReport {
    pub method: &'static str,
    pub n_cells: usize,
    pub prefix_len: usize,
    pub balls: u64,
    pub targets_per_ball: u64,
    pub all_reached: bool,
    /// Breadth-first reach level equals the Hamming distance to the target.
    pub reach_level_is_hamming: bool,
    /// Difference-list paths replayed by iteration that hit their target.
    pub constructive_paths_verified: u64,
    pub max_steps_after_prefix: usize,
    pub max_horizon: usize,
    /// Largest fraction of states reachable at one exact iterate count.
    /// Each iterate flips exactly one bit, so parity caps this at 1/2.
    pub max_single_iterate_coverage: f64,
    pub passed: bool,
}

struct BallOutcome {
    all_reached: bool,
    level_is_hamming: bool,
    constructive: u64,
    max_level: usize,
    max_exact_coverage: f64,
}

/// Reachability from every ball `(E, first k strategy terms)`: every state
/// must be reached within `k + n_cells` iterations.
pub fn mixing_probe(n_cells: usize, prefix_len: usize, exec: Execution) -> Result<MixingReport> {
    check_cells(n_cells, MAX_MIXING_CELLS, "mixing probe")?;
    let n = n_cells;
    let states = 1usize << n;
    let prefixes = all_sequences(n, prefix_len);
    let balls = states * prefixes.len();
    let f0 = VectorNegation;

    let outcomes = exec.map_indexed(balls, |b| -> Result<BallOutcome> {
        let start = BitState::from_index((b % states) as u64, n)?;
        let prefix = &prefixes[b / states];
        let after_prefix = iterate(&f0, &start, &Strategy::finite(n, prefix.clone())?, prefix_len)?;

        let mut level: Vec<Option<usize>> = vec![None; states];
        level[after_prefix.to_index()? as usize] = Some(0);
        let mut frontier = vec![after_prefix.clone()];
        let mut exact = vec![false; states];
        exact[after_prefix.to_index()? as usize] = true;
        let mut max_exact_coverage = 1.0 / states as f64;
        for s in 1..=n + 1 {
            let mut next = Vec::new();
            let mut next_exact = vec![false; states];
            for (idx, _) in exact.iter().enumerate().filter(|(_, &r)| r) {
                let st = BitState::from_index(idx as u64, n)?;
                for c in 1..=n {
                    let to = apply_component(&f0, c, &st)?.to_index()? as usize;
                    next_exact[to] = true;
                }
            }
            for st in &frontier {
                for c in 1..=n {
                    let to = apply_component(&f0, c, st)?;
                    let ti = to.to_index()? as usize;
                    if level[ti].is_none() {
                        level[ti] = Some(s);
                        next.push(to);
                    }
                }
            }
            frontier = next;
            exact = next_exact;
            let covered = exact.iter().filter(|&&r| r).count();
            max_exact_coverage = f64::max(max_exact_coverage, covered as f64 / states as f64);
        }

        let mut out = BallOutcome {
            all_reached: true,
            level_is_hamming: true,
            constructive: 0,
            max_level: 0,
            max_exact_coverage,
        };
        for (ti, lvl) in level.iter().enumerate() {
            let target = BitState::from_index(ti as u64, n)?;
            let Some(lvl) = *lvl else {
                out.all_reached = false;
                continue;
            };
            if lvl > n {
                out.all_reached = false;
            }
            out.max_level = out.max_level.max(lvl);
            let diff = after_prefix.differing_cells(&target)?;
            if diff.len() != lvl {
                out.level_is_hamming = false;
            }
            let mut path = prefix.clone();
            path.extend(diff.iter().map(|&c| c as u32));
            let len = path.len();
            if iterate(&f0, &start, &Strategy::finite(n, path)?, len)? == target {
                out.constructive += 1;
            }
        }
        Ok(out)
    });

    let mut report = MixingReport {
        method: "breadth-first reachability over states from every ball (state, strategy prefix), \
                 all continuations allowed; difference-list paths replayed by iteration",
        n_cells,
        prefix_len,
        balls: balls as u64,
        targets_per_ball: states as u64,
        all_reached: true,
        reach_level_is_hamming: true,
        constructive_paths_verified: 0,
        max_steps_after_prefix: 0,
        max_horizon: 0,
        max_single_iterate_coverage: 0.0,
        passed: false,
    };
    for o in outcomes {
        let o = o?;
        report.all_reached &= o.all_reached;
        report.reach_level_is_hamming &= o.level_is_hamming;
        report.constructive_paths_verified += o.constructive;
        report.max_steps_after_prefix = report.max_steps_after_prefix.max(o.max_level);
        report.max_single_iterate_coverage = report.max_single_iterate_coverage.max(o.max_exact_coverage);
    }
    report.max_horizon = prefix_len + report.max_steps_after_prefix;
    report.passed = report.all_reached
        && report.reach_level_is_hamming
        && report.constructive_paths_verified == (balls * states) as u64
        && report.max_steps_after_prefix <= n_cells;
    Ok(report)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SensitivityConfig {
    pub n_cells: usize,
    pub trials: usize,
    pub horizon: usize,
    pub seed: u64,
    pub depth: usize,
}

impl SensitivityConfig {
    pub fn new(n_cells: usize, trials: usize, horizon: usize, seed: u64) -> Self {
        Self {
            n_cells,
            trials,
            horizon,
            seed,
            depth: DEFAULT_DEPTH,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SensitivityReport {
    pub method: &'static str,
    pub config: SensitivityConfig,
    pub delta: f64,
    pub min_initial_distance: f64,
    pub max_initial_distance: f64,
    pub min_separation: f64,
    pub mean_separation: f64,
    pub max_separation: f64,
    /// Trials by integer part of the achieved separation.
    pub separation_histogram: Vec<u64>,
    /// Trials whose distance is `>= 2` one iterate after the first
    /// differing strategy term.
    pub separated_after_first_difference: u64,
    pub failures: u64,
    pub passed: bool,
}

struct Trial {
    initial: f64,
    separation: f64,
    after_difference: bool,
}

/// Nearby pairs (same state, strategies sharing a long prefix) pushed
/// through `horizon` iterations; every pair must separate to `>= 1`.
pub fn sensitivity_probe(config: &SensitivityConfig, exec: Execution) -> Result<SensitivityReport> {
    let SensitivityConfig {
        n_cells: n,
        trials,
        horizon,
        seed,
        depth,
    } = *config;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "sensitivity probe needs n_cells >= 2 (a single cell has a single strategy)".into(),
        ));
    }
    if trials == 0 || horizon == 0 {
        return Err(Error::InvalidArgument("trials and horizon must be >= 1".into()));
    }
    let results = exec.map_indexed(trials, |t| -> Result<Trial> {
        let mut rng = substream(seed, t as u64);
        let bits: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let state = BitState::from_bools(&bits)?;
        let len = horizon + depth;
        let xs: Vec<u32> = (0..len).map(|_| rng.random_range(1..=n as u32)).collect();
        let m = rng.random_range(horizon / 2..horizon);
        let mut ys = xs.clone();
        let other = rng.random_range(1..n as u32);
        ys[m] = if other >= xs[m] { other + 1 } else { other };
        for y in ys.iter_mut().skip(m + 1) {
            *y = rng.random_range(1..=n as u32);
        }
        let mut x = SystemPoint::new(Strategy::finite(n, xs)?, state.clone())?;
        let mut y = SystemPoint::new(Strategy::finite(n, ys)?, state)?;
        let initial = point_distance(&x, &y, depth)?.value;
        let mut separation = initial;
        let mut after_difference = false;
        for k in 1..=horizon {
            x = step(&VectorNegation, &x)?;
            y = step(&VectorNegation, &y)?;
            let d = point_distance(&x, &y, depth)?.value;
            separation = separation.max(d);
            if k == m + 1 {
                after_difference = d >= 2.0;
            }
        }
        Ok(Trial {
            initial,
            separation,
            after_difference,
        })
    });
    let results: Vec<Trial> = results.into_iter().collect::<Result<_>>()?;
    let mut histogram = vec![0u64; n + 1];
    let mut sum = 0.0;
    for r in &results {
        histogram[(r.separation.floor() as usize).min(n)] += 1;
        sum += r.separation;
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, g: fn(&Trial) -> f64| results.iter().map(g).fold(init, f);
    let failures = results.iter().filter(|r| r.separation < 1.0).count() as u64;
    Ok(SensitivityReport {
        method: "seeded Monte Carlo: random state and strategy, partner strategy agreeing on a \
                 prefix of length in [horizon/2, horizon), max distance over iterates 0..=horizon",
        config: *config,
        delta: 1.0,
        min_initial_distance: fold(f64::min, f64::INFINITY, |r| r.initial),
        max_initial_distance: fold(f64::max, 0.0, |r| r.initial),
        min_separation: fold(f64::min, f64::INFINITY, |r| r.separation),
        mean_separation: sum / results.len() as f64,
        max_separation: fold(f64::max, 0.0, |r| r.separation),
        separation_histogram: histogram,
        separated_after_first_difference: results.iter().filter(|r| r.after_difference).count() as u64,
        failures,
        passed: failures == 0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub method: &'static str,
    pub n_cells: usize,
    pub epsilon: f64,
    pub prefix_len: usize,
    pub balls: u64,
    pub periodic_verified: u64,
    pub within_ball: u64,
    pub max_period: usize,
    /// Largest truncated distance plus tail bound from a ball center.
    pub max_distance_bound: f64,
    pub example: Option<PointDescriptor>,
    pub passed: bool,
}

/// Smallest `k >= 0` with `10^-k <= epsilon`.
fn prefix_len_for(epsilon: f64) -> usize {
    let mut k = 0;
    while epsilon * 10f64.powi(k as i32) < 1.0 {
        k += 1;
    }
    k
}

/// Builds the periodic point used for the ball `(state, prefix)`: keep the
/// prefix, then list the cells that differ from `state`, and repeat.
fn periodic_point_for(state: &BitState, prefix: &[u32]) -> Result<(Vec<u32>, SystemPoint)> {
    let n = state.n_cells();
    let after = iterate(
        &VectorNegation,
        state,
        &Strategy::finite(n, prefix.to_vec())?,
        prefix.len(),
    )?;
    let mut cycle = prefix.to_vec();
    cycle.extend(after.differing_cells(state)?.into_iter().map(|c| c as u32));
    if cycle.is_empty() {
        cycle = vec![1, 1];
    }
    let point = SystemPoint::new(Strategy::periodic(n, cycle.clone())?, state.clone())?;
    Ok((cycle, point))
}

/// For every ball of radius `epsilon` around a point with a given state and
/// strategy prefix, constructs a periodic point inside it.
pub fn regularity_probe(n_cells: usize, epsilon: f64, exec: Execution) -> Result<RegularityReport> {
    check_cells(n_cells, MAX_REGULARITY_CELLS, "regularity probe")?;
    if epsilon.is_nan() || epsilon <= 0.0 || epsilon.is_infinite() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let n = n_cells;
    let depth = DEFAULT_DEPTH;
    let k = prefix_len_for(epsilon);
    let states = 1usize << n;
    let prefixes = all_sequences(n, k);
    let balls = states * prefixes.len();

    let outcomes = exec.map_indexed(balls, |b| -> Result<(bool, bool, usize, f64, PointDescriptor)> {
        let state = BitState::from_index((b % states) as u64, n)?;
        let prefix = &prefixes[b / states];
        let (cycle, point) = periodic_point_for(&state, prefix)?;
        let period = cycle.len();

        let mut p = point.clone();
        for _ in 0..period {
            p = step(&VectorNegation, &p)?;
        }
        let periodic = p.state() == point.state()
            && p.strategy().agrees_with(point.strategy(), 2 * period + depth)?;

        let mut worst = 0.0f64;
        for tail in [1u32, n as u32] {
            let mut terms = prefix.clone();
            terms.extend(std::iter::repeat_n(tail, depth));
            let center = SystemPoint::new(Strategy::finite(n, terms)?, state.clone())?;
            let d = point_distance(&center, &point, depth)?;
            worst = worst.max(d.value + d.error_bound);
        }
        let descriptor = PointDescriptor {
            state: state.to_string(),
            strategy: StrategyDescriptor::Periodic { cycle },
        };
        Ok((periodic, worst < epsilon, period, worst, descriptor))
    });

    let mut report = RegularityReport {
        method: "for every ball (state, strategy prefix of length k with 10^-k <= epsilon), \
                 periodic point = prefix + differing cells, repeated; verified by iteration",
        n_cells,
        epsilon,
        prefix_len: k,
        balls: balls as u64,
        periodic_verified: 0,
        within_ball: 0,
        max_period: 0,
        max_distance_bound: 0.0,
        example: None,
        passed: false,
    };
    for o in outcomes {
        let (periodic, inside, period, worst, descriptor) = o?;
        report.periodic_verified += periodic as u64;
        report.within_ball += inside as u64;
        report.max_period = report.max_period.max(period);
        report.max_distance_bound = report.max_distance_bound.max(worst);
        if report.example.is_none() {
            report.example = Some(descriptor);
        }
    }
    report.passed = report.periodic_verified == balls as u64 && report.within_ball == balls as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_cycles() {
        assert!(is_primitive(&[1]));
        assert!(is_primitive(&[1, 2]));
        assert!(!is_primitive(&[1, 1]));
        assert!(!is_primitive(&[1, 2, 1, 2]));
        assert!(is_primitive(&[1, 1, 2, 1]));
        // Necklace counts: 4 + 12 + 60 + 240 primitive words over 4 letters.
        assert_eq!(periodic_strategies(4, 4).len(), 316);
    }

    #[test]
    fn prefix_lengths() {
        assert_eq!(prefix_len_for(1e-2), 2);
        assert_eq!(prefix_len_for(0.05), 2);
        assert_eq!(prefix_len_for(0.1), 1);
        assert_eq!(prefix_len_for(1.0), 0);
        assert_eq!(prefix_len_for(2.0), 0);
    }

    #[test]
    fn regularity_example_point() {
        let (cycle, point) = periodic_point_for(&"00".parse().unwrap(), &[1]).unwrap();
        assert_eq!(cycle, vec![1, 1]);
        let twice = step(&VectorNegation, &step(&VectorNegation, &point).unwrap()).unwrap();
        assert_eq!(twice.state(), point.state());
        assert!(twice.strategy().agrees_with(point.strategy(), 20).unwrap());
    }

    #[test]
    fn regularity_whole_space_ball() {
        let r = regularity_probe(2, 2.0, Execution::Sequential).unwrap();
        assert_eq!(r.prefix_len, 0);
        assert!(r.passed);
        assert_eq!(r.max_period, 2);
    }

    #[test]
    fn small_expansivity() {
        let mut cfg = ExpansivityConfig::new(2, 6);
        cfg.max_period = 3;
        cfg.aperiodic_samples = 8;
        let r = expansivity_probe(&cfg, Execution::Sequential).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.equal_state_failures, 0);
        assert_eq!(r.infimum_max_separation, 1.0);
        let w = &r.infimum_witness;
        assert_eq!(w.replay(cfg.depth).unwrap(), w.distance);
    }

    #[test]
    fn too_short_horizon_is_reported() {
        // Period-1 and period-2 strategies (1) and (1,2) agree on their first
        // term; with horizon 1 equal-state pairs cannot reach distance 2.
        let mut cfg = ExpansivityConfig::new(2, 1);
        cfg.max_period = 2;
        cfg.aperiodic_samples = 0;
        let r = expansivity_probe(&cfg, Execution::Sequential).unwrap();
        assert!(r.equal_state_failures > 0);
    }

    #[test]
    fn mixing_small() {
        let r = mixing_probe(3, 2, Execution::Sequential).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.max_steps_after_prefix, 3);
        assert_eq!(r.max_single_iterate_coverage, 0.5);
    }

    #[test]
    fn sensitivity_small() {
        let cfg = SensitivityConfig::new(3, 200, 10, 5);
        let r = sensitivity_probe(&cfg, Execution::Sequential).unwrap();
        assert!(r.passed);
        assert_eq!(r.separated_after_first_difference, 200);
        assert!(r.max_initial_distance < 1.0);
        assert!(sensitivity_probe(&SensitivityConfig::new(1, 10, 10, 5), Execution::Sequential).is_err());
    }

    #[test]
    fn probe_bounds() {
        assert!(expansivity_probe(&ExpansivityConfig::new(6, 4), Execution::Sequential).is_err());
        assert!(mixing_probe(6, 1, Execution::Sequential).is_err());
        assert!(regularity_probe(5, 0.1, Execution::Sequential).is_err());
        assert!(regularity_probe(3, 0.0, Execution::Sequential).is_err());
    }
}

//! Experiment runners: the four rainbow pipelines, the concentration suite,
//! and the auxiliary-graph statistics.
//!
//! Trial `t` of an experiment draws every random object from
//! `RandomSeed::new(root).with_experiment(id(kind)).with_trial(t)`, so records
//! do not depend on `jobs`. A trial that fails (including by panicking) is
//! recorded and the batch continues.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use itertools::Itertools;
use rand::distr::{Bernoulli, Distribution};

use crate::adversary::{
    apply_adversary, bipartite_floor, full_floor, kpartite_floor, AdversaryError, AdversaryStrategy, FloorPolicy,
    Thinnable,
};
use crate::analysis::{
    aux_window, chernoff_lower, chernoff_upper, binomial_tail_bound, check_aux_min_degree,
    check_degree_concentration, check_partition_degrees, density_ratio, median_lemma_report,
    median_lemma_report_digraph, permutation_histogram, talagrand_tail, to_f64, AuxTarget, DegreeConcentration,
    EnumerationMode, WindowReport,
};
use crate::config::{AuxCheck, ConcCheck, ConfigError, ExperimentConfig, ExperimentKind};
use crate::family::{BipartiteFamily, ColorFamily, GraphFamily, HyperFamily};
use crate::graph::{all_crossing_dsets, BalancedPartition, Graph, Permutation};
use crate::parallel::{map_indexed, Execution};
use crate::record::{CheckBatch, CheckRecord, ExperimentOutput, Outcome, TrialBatch, TrialRecord, TrialStatus};
use crate::reduction::{
    build_aux_bipartite, build_aux_digraph, build_aux_kpartite, induce_bipartite, lift_cycle, lift_hyper_matching,
    lift_matching, verify_rainbow, ColorSystem, RainbowStructure,
};
use crate::sampling::{
    experiment_id, repair_codegree, sample_balanced_partition, sample_bipartite_family_with, sample_family_with,
    sample_gnp, sample_kpartite, sample_permutation, stream, RandomSeed,
};
use crate::solvers::{
    find_bipartite_pm, find_directed_hamilton, find_directed_hamilton_with, find_kpartite_pm, HamiltonMode,
    MatchingOutcome, SearchOutcome,
};

/// Seed of trial `t`.
pub fn trial_seed(cfg: &ExperimentConfig, t: usize) -> RandomSeed {
    RandomSeed::new(cfg.seed)
        .with_experiment(experiment_id(cfg.kind.name()))
        .with_trial(t as u64)
}

/// Runs the experiment named by `cfg.kind`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, ConfigError> {
    cfg.validate()?;
    Ok(match cfg.kind {
        ExperimentKind::Pm => ExperimentOutput::Trials(run_pm_pipeline(cfg)?),
        ExperimentKind::PmBipartite => ExperimentOutput::Trials(run_pm_bipartite_pipeline(cfg)?),
        ExperimentKind::Hc => ExperimentOutput::Trials(run_hc_pipeline(cfg)?),
        ExperimentKind::Kpm => ExperimentOutput::Trials(run_kpm_pipeline(cfg)?),
        ExperimentKind::Concentration => ExperimentOutput::Checks(run_concentration_suite(cfg)?),
        ExperimentKind::AuxStats => ExperimentOutput::Checks(run_aux_stats(cfg)?),
    })
}

enum TrialFailure {
    Unsatisfiable(String),
    Other(String),
}

impl From<AdversaryError> for TrialFailure {
    fn from(e: AdversaryError) -> Self {
        match e {
            AdversaryError::UnsatisfiableFloor { .. } => TrialFailure::Unsatisfiable(e.to_string()),
            other => TrialFailure::Other(other.to_string()),
        }
    }
}

macro_rules! other_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for TrialFailure {
            fn from(e: $t) -> Self {
                TrialFailure::Other(e.to_string())
            }
        }
    )*};
}

other_failure!(
    crate::sampling::SamplingError,
    crate::reduction::ReductionError,
    crate::solvers::SolverError,
    crate::graph::GraphError
);

fn require_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<(), ConfigError> {
    cfg.validate()?;
    if cfg.kind != kind {
        return Err(ConfigError::Invalid(format!("config is for {}, not {kind}", cfg.kind)));
    }
    Ok(())
}

fn blank_record(cfg: &ExperimentConfig, t: usize, seed: RandomSeed, colors: usize, floor: usize) -> TrialRecord {
    TrialRecord {
        trial: t as u64,
        seed: seed.to_string(),
        status: TrialStatus::Ok,
        error: String::new(),
        n: cfg.n,
        colors,
        p: cfg.p,
        eps: cfg.eps,
        floor,
        strategy: cfg.adversary.to_string(),
        host_min_degree: None,
        host_max_degree: None,
        floor_shortfall: None,
        sub_min_degree: None,
        sub_max_degree: None,
        sub_edges: None,
        pi_digest: None,
        aux_min_degree: None,
        aux_max_degree: None,
        aux_edges: None,
        outcome: None,
        certificate: None,
        verified: None,
        verify_detail: String::new(),
    }
}

/// Fills the common pipeline scaffolding around `body`.
fn run_trials<F>(cfg: &ExperimentConfig, colors: usize, floor: usize, body: F) -> TrialBatch
where
    F: Fn(RandomSeed, &mut TrialRecord, &mut Option<Vec<usize>>) -> Result<(), TrialFailure> + Sync + Send,
{
    let rows = map_indexed(cfg.trials, Execution::from_jobs(cfg.jobs), |t| {
        let start = Instant::now();
        let seed = trial_seed(cfg, t);
        let mut rec = blank_record(cfg, t, seed, colors, floor);
        let mut pi = None;
        let result = catch_unwind(AssertUnwindSafe(|| body(seed, &mut rec, &mut pi)));
        match result {
            Ok(Ok(())) => {}
            Ok(Err(TrialFailure::Unsatisfiable(msg))) => {
                rec.status = TrialStatus::UnsatisfiableFloor;
                rec.error = msg;
            }
            Ok(Err(TrialFailure::Other(msg))) => {
                rec.status = TrialStatus::Error;
                rec.error = msg;
            }
            Err(panic) => {
                rec.status = TrialStatus::Error;
                rec.error = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
            }
        }
        if !cfg.verbose {
            pi = None;
        }
        (rec, start.elapsed().as_secs_f64() * 1e3, pi)
    });
    let mut batch = TrialBatch {
        records: Vec::with_capacity(rows.len()),
        wall_ms: Vec::with_capacity(rows.len()),
        permutations: Vec::with_capacity(rows.len()),
        required: cfg.success_threshold,
    };
    for (rec, ms, pi) in rows {
        batch.records.push(rec);
        batch.wall_ms.push(ms);
        batch.permutations.push(pi);
    }
    batch
}

struct DegreeSummary {
    min: usize,
    max: usize,
    edges: usize,
    below: usize,
}

fn degree_summary<C: Thinnable>(colors: &[C], floor: usize) -> DegreeSummary {
    let mut s = DegreeSummary {
        min: usize::MAX,
        max: 0,
        edges: 0,
        below: 0,
    };
    for c in colors {
        let degrees = c.degrees();
        s.min = s.min.min(degrees.iter().copied().min().unwrap_or(0));
        s.max = s.max.max(degrees.iter().copied().max().unwrap_or(0));
        s.edges += degrees.iter().sum::<usize>() / 2;
        s.below += degrees.iter().filter(|&&d| d < floor).count();
    }
    if colors.is_empty() {
        s.min = 0;
    }
    s
}

fn thin<F>(
    cfg: &ExperimentConfig,
    host: &F,
    floor: usize,
    seed: RandomSeed,
    rec: &mut TrialRecord,
) -> Result<F, TrialFailure>
where
    F: ColorFamily,
    F::Color: Thinnable,
{
    let h = degree_summary(host.colors(), floor);
    rec.host_min_degree = Some(h.min);
    rec.host_max_degree = Some(h.max);
    rec.floor_shortfall = Some(h.below);
    let sub = apply_adversary(host, cfg.adversary, floor, cfg.floor_policy, seed)?;
    let s = degree_summary(sub.colors(), floor);
    rec.sub_min_degree = Some(s.min);
    rec.sub_max_degree = Some(s.max);
    rec.sub_edges = Some(s.edges);
    Ok(sub)
}

fn record_permutation(pi: &Permutation, rec: &mut TrialRecord, keep: &mut Option<Vec<usize>>) {
    rec.pi_digest = Some(format!("{:016x}", pi.digest()));
    *keep = Some(pi.images().to_vec());
}

fn record_verification<S: ColorSystem>(rs: &RainbowStructure, family: &S, rec: &mut TrialRecord) {
    let report = verify_rainbow(rs, family);
    rec.verified = Some(report.passed());
    rec.verify_detail = report.violations.iter().take(3).map(|v| v.to_string()).join("; ");
}

/// Marks a found structure whose lift failed; keeps `verified` present.
fn lift_failed(rec: &mut TrialRecord, err: impl std::fmt::Display) {
    rec.verified = Some(false);
    rec.verify_detail = format!("lift failed: {err}");
}

fn outcome_of<T>(o: &SearchOutcome<T>) -> Outcome {
    match o {
        SearchOutcome::Found(_) => Outcome::Found,
        SearchOutcome::None => Outcome::None,
        SearchOutcome::Exhausted => Outcome::Exhausted,
    }
}

fn solve_bipartite(
    bip: &BipartiteFamily,
    verify_against: &dyn Fn(&RainbowStructure, &mut TrialRecord),
    seed: RandomSeed,
    rec: &mut TrialRecord,
    keep: &mut Option<Vec<usize>>,
) -> Result<(), TrialFailure> {
    let pi = sample_permutation(bip.m(), seed.with_object(stream::PERMUTATION));
    record_permutation(&pi, rec, keep);
    let aux = build_aux_bipartite(bip, &pi)?;
    rec.aux_min_degree = Some(aux.min_degree());
    rec.aux_max_degree = Some(
        (0..aux.left())
            .map(|i| aux.left_degree(i))
            .chain(aux.right_degrees())
            .max()
            .unwrap_or(0),
    );
    rec.aux_edges = Some(aux.edge_count());
    match find_bipartite_pm(&aux)? {
        MatchingOutcome::Perfect(pm) => {
            rec.outcome = Some(Outcome::Found);
            match lift_matching(&pm, &pi, bip) {
                Ok(rs) => verify_against(&rs, rec),
                Err(e) => lift_failed(rec, e),
            }
        }
        MatchingOutcome::HallViolator(s) => {
            rec.outcome = Some(Outcome::None);
            rec.certificate = Some(s.len());
        }
    }
    Ok(())
}

/// Sample `n/2` colors → thin to `ceil((1/2+ε)np)` → random balanced
/// partition → induce → random π → `B_π` → matching → lift → verify.
pub fn run_pm_pipeline(cfg: &ExperimentConfig) -> Result<TrialBatch, ConfigError> {
    require_kind(cfg, ExperimentKind::Pm)?;
    let (n, m) = (cfg.n, cfg.n / 2);
    let floor = full_floor(n, cfg.p, cfg.eps);
    Ok(run_trials(cfg, m, floor, |seed, rec, keep| {
        let host = sample_family_with(n, m, cfg.p, seed, Execution::Sequential)?;
        let sub = thin(cfg, &host, floor, seed, rec)?;
        let part = sample_balanced_partition(n, seed.with_object(stream::PARTITION))?;
        let bip = induce_bipartite(&sub, &part);
        solve_bipartite(&bip, &|rs, rec| record_verification(rs, &sub, rec), seed, rec, keep)
    }))
}

/// Sample `n/2` bipartite colors on the canonical bipartition → thin to
/// `ceil((1/2+ε)np/2)` → random π → `B_π` → matching → lift → verify.
pub fn run_pm_bipartite_pipeline(cfg: &ExperimentConfig) -> Result<TrialBatch, ConfigError> {
    require_kind(cfg, ExperimentKind::PmBipartite)?;
    let (n, m) = (cfg.n, cfg.n / 2);
    let floor = bipartite_floor(n, cfg.p, cfg.eps);
    let part = BalancedPartition::canonical(n).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(run_trials(cfg, m, floor, |seed, rec, keep| {
        let host = sample_bipartite_family_with(&part, m, cfg.p, seed, Execution::Sequential)?;
        let sub = thin(cfg, &host, floor, seed, rec)?;
        solve_bipartite(&sub, &|rs, rec| record_verification(rs, &sub, rec), seed, rec, keep)
    }))
}

/// Sample `n` colors → thin to `ceil((1/2+ε)np)` → random π → `D_π` →
/// Hamilton cycle → lift → verify.
pub fn run_hc_pipeline(cfg: &ExperimentConfig) -> Result<TrialBatch, ConfigError> {
    require_kind(cfg, ExperimentKind::Hc)?;
    let n = cfg.n;
    let floor = full_floor(n, cfg.p, cfg.eps);
    Ok(run_trials(cfg, n, floor, |seed, rec, keep| {
        let host = sample_family_with(n, n, cfg.p, seed, Execution::Sequential)?;
        let sub = thin(cfg, &host, floor, seed, rec)?;
        let pi = sample_permutation(n, seed.with_object(stream::PERMUTATION));
        record_permutation(&pi, rec, keep);
        let d = build_aux_digraph(&sub, &pi)?;
        rec.aux_min_degree = Some(d.min_semidegree());
        rec.aux_max_degree = Some((0..n).flat_map(|v| [d.in_degree(v), d.out_degree(v)]).max().unwrap_or(0));
        rec.aux_edges = Some(d.arc_count());
        let out = find_directed_hamilton(&d, &cfg.budget, seed)?;
        rec.outcome = Some(outcome_of(&out));
        if let SearchOutcome::Found(cycle) = out {
            match lift_cycle(&cycle, &pi, &sub) {
                Ok(rs) => record_verification(&rs, &sub, rec),
                Err(e) => lift_failed(rec, e),
            }
        }
        Ok(())
    }))
}

/// `n` k-partite colors: random crossing tuples with probability
/// `kpm.density`, repaired up to `δ*_d >= ceil((1/2+ε) n^{k−d})` → random π
/// of `V1` → `H_π` → matching → lift → verify.
pub fn run_kpm_pipeline(cfg: &ExperimentConfig) -> Result<TrialBatch, ConfigError> {
    require_kind(cfg, ExperimentKind::Kpm)?;
    let (n, k, d) = (cfg.n, cfg.k, cfg.d);
    let floor = kpartite_floor(n, k, d, cfg.eps);
    Ok(run_trials(cfg, n, floor, |seed, rec, keep| {
        let mut colors = Vec::with_capacity(n);
        let (mut host_min, mut host_max, mut below, mut sub_min, mut sub_max) = (usize::MAX, 0, 0, usize::MAX, 0);
        for c in 0..n {
            let mut h = sample_kpartite(k, n, cfg.kpm_density, seed.with_object(stream::COLOR + c as u64))?;
            let before = h.crossing_dset_degrees(d);
            for set in all_crossing_dsets(h.part_sizes(), d) {
                let deg = before.get(&set).copied().unwrap_or(0);
                host_min = host_min.min(deg);
                host_max = host_max.max(deg);
                below += usize::from(deg < floor);
            }
            repair_codegree(&mut h, d, floor, seed.with_object(stream::REPAIR + c as u64))?;
            let after = h.crossing_codegree(d)?;
            sub_min = sub_min.min(after);
            sub_max = sub_max.max(h.crossing_dset_degrees(d).values().copied().max().unwrap_or(0));
            colors.push(h);
        }
        rec.host_min_degree = Some(host_min);
        rec.host_max_degree = Some(host_max);
        rec.floor_shortfall = Some(below);
        rec.sub_min_degree = Some(sub_min);
        rec.sub_max_degree = Some(sub_max);
        rec.sub_edges = Some(colors.iter().map(|h| h.edge_count()).sum());
        let family = HyperFamily::new(k, n, colors);

        let pi = sample_permutation(n, seed.with_object(stream::PERMUTATION));
        record_permutation(&pi, rec, keep);
        let aux = build_aux_kpartite(&family, &pi)?;
        let first_degrees: Vec<usize> = (0..n).map(|a| aux.edges_from(a).count()).collect();
        rec.aux_min_degree = first_degrees.iter().copied().min();
        rec.aux_max_degree = first_degrees.iter().copied().max();
        rec.aux_edges = Some(aux.edge_count());
        let out = find_kpartite_pm(&aux, &cfg.budget)?;
        rec.outcome = Some(outcome_of(&out));
        if let SearchOutcome::Found(pm) = out {
            match lift_hyper_matching(&pm, &pi, &family) {
                Ok(rs) => record_verification(&rs, &family, rec),
                Err(e) => lift_failed(rec, e),
            }
        }
        Ok(())
    }))
}

fn fmt_window(w: &WindowReport) -> String {
    format!("{}/{}", w.in_window, w.checked)
}

fn degree_check(cfg: &ExperimentConfig, t: usize, exec: Execution) -> Result<CheckRecord, TrialFailure> {
    let seed = trial_seed(cfg, t);
    let colors = cfg.colors.unwrap_or(cfg.n);
    let parts = map_indexed(colors, exec, |c| {
        sample_gnp(cfg.n, cfg.p, seed.with_object(stream::COLOR + c as u64))
            .map(|g| check_degree_concentration(&[g], cfg.p, cfg.eps, cfg.window_threshold))
    });
    let mut total: Option<DegreeConcentration> = None;
    for part in parts {
        let part = part?;
        total = Some(match total {
            None => part,
            Some(acc) => DegreeConcentration {
                colors: acc.colors.merge(&part.colors),
                vertices: acc.vertices.merge(&part.vertices),
                ..acc
            },
        });
    }
    let r = total.expect("at least one color");
    Ok(CheckRecord::new(
        ConcCheck::Degree.name(),
        t as u64,
        cfg.n,
        r.colors.checked,
        r.colors.in_window,
        cfg.window_threshold,
    )
    .with_detail(format!(
        "window=[{},{}] vertex_in_window={} vertex_fraction={} np_over_ln_n={}",
        r.low,
        r.high,
        fmt_window(&r.vertices),
        r.vertices.fraction(),
        density_ratio(cfg.n, cfg.p)
    )))
}

fn partition_check(cfg: &ExperimentConfig, t: usize, exec: Execution) -> Result<CheckRecord, TrialFailure> {
    let seed = trial_seed(cfg, t);
    let colors = cfg.colors.unwrap_or(cfg.n / 2);
    let family = sample_family_with(cfg.n, colors, cfg.p, seed, exec)?;
    let reports = map_indexed(cfg.partitions, exec, |q| {
        sample_balanced_partition(cfg.n, seed.with_object(stream::PARTITION_SWEEP + q as u64))
            .map(|part| check_partition_degrees(&family, &part, cfg.eps, cfg.window_threshold))
    });
    let mut total = WindowReport {
        threshold: cfg.window_threshold,
        ..Default::default()
    };
    let (mut worst, mut best) = (f64::INFINITY, 0.0f64);
    for r in reports {
        let r = r?;
        worst = worst.min(r.fraction());
        best = best.max(r.fraction());
        total = total.merge(&r);
    }
    Ok(CheckRecord::new(
        ConcCheck::Partition.name(),
        t as u64,
        cfg.n,
        total.checked,
        total.in_window,
        cfg.window_threshold,
    )
    .with_detail(format!(
        "colors={colors} partitions={} worst_partition={worst} best_partition={best}",
        cfg.partitions
    )))
}

fn aux_check(
    cfg: &ExperimentConfig,
    t: usize,
    exec: Execution,
    bipartite: bool,
) -> Result<CheckRecord, TrialFailure> {
    let seed = trial_seed(cfg, t);
    let mode = EnumerationMode::Sampled {
        trials: cfg.permutations,
        seed,
    };
    let (name, floor, window, sub_min, report) = if bipartite {
        let m = cfg.n / 2;
        let part = BalancedPartition::canonical(cfg.n)?;
        let host = sample_bipartite_family_with(&part, m, cfg.p, seed, exec)?;
        let floor = bipartite_floor(cfg.n, cfg.p, cfg.eps);
        let sub = apply_adversary(&host, cfg.adversary, floor, cfg.floor_policy, seed)?;
        let window = aux_window(m, cfg.p, cfg.eps);
        let r = check_aux_min_degree(AuxTarget::Bipartite(&sub), window, mode, cfg.window_threshold, exec);
        (ConcCheck::AuxBipartite, floor, window, sub.min_degree(), r)
    } else {
        let host = sample_family_with(cfg.n, cfg.n, cfg.p, seed, exec)?;
        let floor = full_floor(cfg.n, cfg.p, cfg.eps);
        let sub = apply_adversary(&host, cfg.adversary, floor, cfg.floor_policy, seed)?;
        let window = aux_window(cfg.n, cfg.p, cfg.eps);
        let r = check_aux_min_degree(AuxTarget::Digraph(&sub), window, mode, cfg.window_threshold, exec);
        (ConcCheck::AuxDigraph, floor, window, sub.min_degree(), r)
    };
    let report = report.map_err(|e| TrialFailure::Other(e.to_string()))?;
    let dist = &report.distribution;
    Ok(CheckRecord::new(
        name.name(),
        t as u64,
        cfg.n,
        report.permutations.checked,
        report.permutations.in_window,
        cfg.window_threshold,
    )
    .with_detail(format!(
        "window={window} floor={floor} thinned_min_degree={sub_min} aux_min_lowest={} aux_min_median={} aux_min_mean={}",
        dist.histogram.keys().next().copied().unwrap_or(0),
        dist.median,
        dist.mean_f64()
    )))
}

/// The Monte Carlo examples the bound evaluators must dominate.
pub mod bound_examples {
    /// `Bin(100, 0.3)` against the Chernoff tails at `a = 0.3`.
    pub const CHERNOFF: (usize, f64, f64) = (100, 0.3, 0.3);
    /// `Bin(20, 0.2)` against the binomial tail at `k = 10`.
    pub const BINOMIAL: (usize, f64, u64) = (20, 0.2, 10);
    /// `d_{B_π}(0)` for 200 colors of `B(400, 0.3)`; `c = 2`, `r = 1`, and
    /// `t = εM/4`.
    pub const TALAGRAND: (usize, f64, f64, f64) = (200, 0.3, 2.0, 1.0);
}

fn binomial_draws(m: usize, q: f64, samples: usize, seed: RandomSeed, exec: Execution) -> Vec<usize> {
    const CHUNK: usize = 10_000;
    let chunks = samples.div_ceil(CHUNK);
    let coin = Bernoulli::new(q).expect("probability in range");
    map_indexed(chunks, exec, |b| {
        let mut rng = seed.with_object(stream::MONTE_CARLO + b as u64).rng();
        let len = CHUNK.min(samples - b * CHUNK);
        (0..len).map(|_| (0..m).filter(|_| coin.sample(&mut rng)).count()).collect::<Vec<_>>()
    })
    .concat()
}

/// A record whose pass flag is `empirical tail frequency <= bound`.
fn dominated(check: &str, t: usize, size: usize, checked: u64, hits: u64, bound: f64, detail: String) -> CheckRecord {
    let mut r = CheckRecord::new(check, t as u64, size, checked, hits, bound);
    r.pass = checked > 0 && r.fraction <= bound;
    r.with_detail(detail)
}

fn bound_checks(cfg: &ExperimentConfig, t: usize, exec: Execution) -> Result<Vec<CheckRecord>, TrialFailure> {
    let seed = trial_seed(cfg, t);
    let samples = cfg.samples;
    let mut out = Vec::new();

    let (m, q, a) = bound_examples::CHERNOFF;
    let mu = m as f64 * q;
    let xs = binomial_draws(m, q, samples, seed.with_object(1), exec);
    let low = xs.iter().filter(|&&x| (x as f64) < (1.0 - a) * mu).count() as u64;
    let high = xs.iter().filter(|&&x| (x as f64) > (1.0 + a) * mu).count() as u64;
    let lb = chernoff_lower(mu, a).map_err(|e| TrialFailure::Other(e.to_string()))?;
    let ub = chernoff_upper(mu, a).map_err(|e| TrialFailure::Other(e.to_string()))?;
    out.push(dominated("chernoff-lower", t, m, samples as u64, low, lb, format!("mu={mu} a={a}")));
    out.push(dominated("chernoff-upper", t, m, samples as u64, high, ub, format!("mu={mu} a={a}")));

    let (m, q, k) = bound_examples::BINOMIAL;
    let xs = binomial_draws(m, q, samples, seed.with_object(2), exec);
    let hits = xs.iter().filter(|&&x| x as u64 >= k).count() as u64;
    let bound = binomial_tail_bound(m as u64, q, k).map_err(|e| TrialFailure::Other(e.to_string()))?;
    out.push(dominated("binomial-tail", t, m, samples as u64, hits, bound, format!("q={q} k={k}")));

    let (m, q, c, r) = bound_examples::TALAGRAND;
    let part = BalancedPartition::canonical(2 * m)?;
    let family = sample_bipartite_family_with(&part, m, q, seed.with_object(3), exec)?;
    let mode = EnumerationMode::Sampled {
        trials: samples,
        seed: seed.with_object(4),
    };
    let dist = permutation_histogram(m, mode, exec, |pi| {
        build_aux_bipartite(&family, pi).expect("square family").right_degree(0)
    })
    .map_err(|e| TrialFailure::Other(e.to_string()))?;
    let median = dist.median as f64;
    let dev = cfg.eps * median / 4.0;
    let hits = dist
        .histogram
        .iter()
        .filter(|(&v, _)| v as f64 <= median - dev)
        .map(|(_, &n)| n)
        .sum();
    let bound = talagrand_tail(median, dev, c, r).map_err(|e| TrialFailure::Other(e.to_string()))?;
    out.push(dominated(
        "talagrand",
        t,
        m,
        dist.samples,
        hits,
        bound,
        format!("median={median} t={dev} c={c} r={r}"),
    ));
    Ok(out)
}

fn failed_check(check: &str, t: usize, size: usize, threshold: f64, err: TrialFailure) -> CheckRecord {
    let msg = match err {
        TrialFailure::Unsatisfiable(m) | TrialFailure::Other(m) => m,
    };
    CheckRecord::new(check, t as u64, size, 0, 0, threshold).with_detail(format!("error: {msg}"))
}

/// Runs each configured concentration check once per trial.
pub fn run_concentration_suite(cfg: &ExperimentConfig) -> Result<CheckBatch, ConfigError> {
    require_kind(cfg, ExperimentKind::Concentration)?;
    let exec = Execution::from_jobs(cfg.jobs);
    let mut batch = CheckBatch {
        records: Vec::new(),
        wall_ms: Vec::new(),
    };
    for t in 0..cfg.trials {
        for &check in &cfg.checks {
            let start = Instant::now();
            let result = catch_unwind(AssertUnwindSafe(|| match check {
                ConcCheck::Degree => degree_check(cfg, t, exec).map(|r| vec![r]),
                ConcCheck::Partition => partition_check(cfg, t, exec).map(|r| vec![r]),
                ConcCheck::AuxBipartite => aux_check(cfg, t, exec, true).map(|r| vec![r]),
                ConcCheck::AuxDigraph => aux_check(cfg, t, exec, false).map(|r| vec![r]),
                ConcCheck::Bounds => bound_checks(cfg, t, exec),
            }))
            .unwrap_or_else(|_| Err(TrialFailure::Other("panic".into())));
            let rows = result
                .unwrap_or_else(|e| vec![failed_check(check.name(), t, cfg.n, cfg.window_threshold, e)]);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            for r in rows {
                batch.wall_ms.push(ms);
                batch.records.push(r);
            }
        }
    }
    Ok(batch)
}

/// `aux-stats`: exhaustive moment checks (`aux.check=moments`, one random
/// family per trial) or lift soundness over star-cut thinned complete
/// families (`aux.check=lifts`).
pub fn run_aux_stats(cfg: &ExperimentConfig) -> Result<CheckBatch, ConfigError> {
    require_kind(cfg, ExperimentKind::AuxStats)?;
    let exec = Execution::from_jobs(cfg.jobs);
    let start = Instant::now();
    let records = match cfg.aux_check {
        AuxCheck::Moments => map_indexed(cfg.trials, exec, |t| moment_checks(cfg, t)).concat(),
        AuxCheck::Lifts => lift_checks(cfg, exec),
    };
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(CheckBatch {
        wall_ms: vec![ms; records.len()],
        records,
    })
}

fn moment_checks(cfg: &ExperimentConfig, t: usize) -> Vec<CheckRecord> {
    let seed = trial_seed(cfg, t);
    let m = cfg.aux_sizes[t % cfg.aux_sizes.len()];
    let seq = Execution::Sequential;
    let part = BalancedPartition::canonical(2 * m).expect("even");
    let summarize = |name: &str, reports: Vec<crate::analysis::ConcentrationReport>| {
        let hits = reports
            .iter()
            .filter(|r| r.mean_exact == Some(true) && r.variance_dominated == Some(true))
            .count();
        let worst = reports
            .iter()
            .map(|r| {
                let b = to_f64(&r.variance_bound);
                if b == 0.0 { 0.0 } else { to_f64(&r.distribution.variance) / b }
            })
            .fold(0.0, f64::max);
        let mus = reports.iter().map(|r| r.mu.to_string()).join(" ");
        let mut rec = CheckRecord::new(name, t as u64, m, reports.len() as u64, hits as u64, 1.0)
            .with_detail(format!("mu=[{mus}] max_variance_over_bound={worst}"));
        rec.skipped = reports.iter().all(|r| r.median_in_window.is_none());
        rec
    };
    let bip = sample_bipartite_family_with(&part, m, cfg.p, seed, seq).expect("valid p");
    let reports = (0..m)
        .map(|j| median_lemma_report(&bip, j, cfg.alpha, EnumerationMode::Exhaustive, seq).expect("square family"))
        .collect();
    let graph = sample_family_with(m, m, cfg.p, seed.with_object(1), seq).expect("valid p");
    let in_reports = (0..m)
        .map(|i| {
            median_lemma_report_digraph(&graph, i, cfg.alpha, EnumerationMode::Exhaustive, seq).expect("square family")
        })
        .collect();
    vec![summarize("moments-bipartite", reports), summarize("moments-digraph", in_reports)]
}

fn lift_checks(cfg: &ExperimentConfig, exec: Execution) -> Vec<CheckRecord> {
    let mut cases = Vec::new();
    for &n in &cfg.aux_sizes {
        for floor in 0..n {
            for focus in 0..n {
                if n % 2 == 0 {
                    cases.push((n, floor, focus, true));
                }
                if n >= 3 {
                    cases.push((n, floor, focus, false));
                }
            }
        }
    }
    map_indexed(cases.len(), exec, |idx| {
        let (n, floor, focus, matching) = cases[idx];
        let seed = trial_seed(cfg, idx);
        let strategy = AdversaryStrategy::StarCut { focus };
        let colors = if matching { n / 2 } else { n };
        let host = GraphFamily::new(n, vec![Graph::complete(n); colors]);
        let sub = apply_adversary(&host, strategy, floor, FloorPolicy::Strict, seed).expect("complete hosts meet any floor below n");
        let (mut found, mut verified, mut cases_seen) = (0u64, 0u64, 0u64);
        let mut tally = |rs: Result<RainbowStructure, crate::reduction::ReductionError>| {
            found += 1;
            if rs.is_ok_and(|rs| verify_rainbow(&rs, &sub).passed()) {
                verified += 1;
            }
        };
        if matching {
            for first in (0..n).combinations(n / 2) {
                let part = BalancedPartition::new(n, first).expect("balanced");
                let bip = induce_bipartite(&sub, &part);
                for pi in Permutation::all(colors) {
                    cases_seen += 1;
                    let aux = build_aux_bipartite(&bip, &pi).expect("square family");
                    if let Ok(MatchingOutcome::Perfect(pm)) = find_bipartite_pm(&aux) {
                        tally(lift_matching(&pm, &pi, &bip));
                    }
                }
            }
        } else {
            for pi in Permutation::all(n) {
                cases_seen += 1;
                let d = build_aux_digraph(&sub, &pi).expect("square family");
                let out = find_directed_hamilton_with(&d, &cfg.budget, seed, HamiltonMode::Exact);
                if let Ok(SearchOutcome::Found(cycle)) = out {
                    tally(lift_cycle(&cycle, &pi, &sub));
                }
            }
        }
        let name = if matching { "lift-matching" } else { "lift-cycle" };
        let mut rec = CheckRecord::new(name, idx as u64, n, found, verified, 1.0).with_detail(format!(
            "floor={floor} focus={focus} instances={cases_seen}"
        ));
        rec.pass = verified == found;
        rec
    })
}

//! Seeded Monte Carlo campaigns.
//!
//! Every trial is keyed by its index: the planted matrix, the sensing
//! matrices and the noise come from independent streams of
//! [`TrialStreams`]. Trials run on a rayon pool and are collected in index
//! order, so results do not depend on the number of workers.
//!
//! Sensing matrices for a trial are drawn once for the largest `k` of the
//! grid and truncated, so the constraint sets are nested across `k`.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

use crate::codelab::{low_rank_matrices, min_rank_distance, rank_spectrum, strong_recovery_check, CodeSpec};
use crate::counting::{encr_bounds, error_lower_bound, error_upper_bound, expected_ncr, gv_distance};
use crate::decoder::{minrank_noisy, minrank_reduced, DecodeStatus, Instance, NoisyOptions, DEFAULT_MAX_NOISE_WEIGHT};
use crate::ensemble::{measure, sample_low_rank, sample_noise, sample_sensing, EnsembleSpec, NoiseSpec, Purpose, RankMode, TrialStreams};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matfq::{dot, MatFq};

/// Two-sided level of every reported confidence interval.
pub const CI_LEVEL: f64 = 0.95;

/// Exact (Clopper-Pearson) binomial confidence interval for `successes`
/// out of `trials` at confidence `level`.
pub fn clopper_pearson(successes: u64, trials: u64, level: f64) -> Result<(f64, f64)> {
    if trials == 0 || successes > trials || !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid(format!("bad interval request: {successes}/{trials} at level {level}")));
    }
    let alpha = 1.0 - level;
    let (x, n) = (successes as f64, trials as f64);
    let lo = if successes == 0 {
        0.0
    } else {
        Beta::new(x, n - x + 1.0).map_err(|e| Error::invalid(e.to_string()))?.inverse_cdf(alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        Beta::new(x + 1.0, n - x).map_err(|e| Error::invalid(e.to_string()))?.inverse_cdf(1.0 - alpha / 2.0)
    };
    Ok((lo, hi))
}

/// Runs `f` for every trial index on a pool of `jobs` workers and returns the
/// results in index order.
fn par_trials<T, F>(jobs: usize, trials: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    pool.install(|| (0..trials).into_par_iter().map(&f).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: usize,
    pub q: u32,
    /// Rank of the planted matrix.
    pub r: usize,
    pub ensemble: EnsembleSpec,
    pub noise: Option<NoiseSpec>,
    pub k_grid: Vec<usize>,
    pub trials: u64,
    pub master_seed: u64,
    /// Regularization weight of the noisy decoder, `1/n` when unset.
    pub lambda: Option<f64>,
    pub max_noise_weight: usize,
    pub jobs: usize,
}

impl SweepConfig {
    /// Noiseless uniform sweep with default decoder options.
    pub fn new(n: usize, q: u32, r: usize, k_grid: Vec<usize>, trials: u64, master_seed: u64) -> Self {
        SweepConfig {
            n,
            q,
            r,
            ensemble: EnsembleSpec::uniform(q),
            noise: None,
            k_grid,
            trials,
            master_seed,
            lambda: None,
            max_noise_weight: DEFAULT_MAX_NOISE_WEIGHT,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        FieldSpec::with_order(self.q)?;
        if self.n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if self.r > self.n {
            return Err(Error::invalid(format!("rank r = {} exceeds n = {}", self.r, self.n)));
        }
        if self.ensemble.q() != self.q {
            return Err(Error::invalid(format!("ensemble is over GF({}), sweep over GF({})", self.ensemble.q(), self.q)));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.jobs == 0 {
            return Err(Error::invalid("jobs must be at least 1"));
        }
        if self.k_grid.is_empty() {
            return Err(Error::invalid("k grid is empty"));
        }
        let nn = self.n * self.n;
        if let Some(&k) = self.k_grid.iter().find(|&&k| k > nn) {
            return Err(Error::invalid(format!("k = {k} exceeds n² = {nn}")));
        }
        if let Some(lambda) = self.lambda {
            if !(lambda > 0.0) {
                return Err(Error::invalid("lambda must be positive"));
            }
        }
        if let Some(NoiseSpec::DetWeight { sigma }) = self.noise {
            let weight = (sigma * nn as f64).floor() as usize;
            let kmin = *self.k_grid.iter().min().unwrap();
            if weight > kmin {
                return Err(Error::invalid(format!("noise weight {weight} exceeds k = {kmin}")));
            }
        }
        Ok(())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda.unwrap_or(1.0 / self.n as f64)
    }
}

/// How one decoding attempt ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    Success,
    Ambiguous,
    WrongUnique,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub k: usize,
    pub outcome: TrialOutcome,
    pub achieved_rank: usize,
    pub wall_time: Duration,
}

/// Aggregate over all trials at one `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub k: usize,
    pub trials: u64,
    pub successes: u64,
    pub ambiguous: u64,
    pub wrong_unique: u64,
    pub infeasible: u64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl SweepPoint {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Wrong unique answers and uncertified searches; both are errors.
    pub fn wrong(&self) -> u64 {
        self.wrong_unique + self.infeasible
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub points: Vec<SweepPoint>,
    /// Ordered by trial, then by position in the k grid.
    pub records: Vec<TrialRecord>,
}

impl SweepResult {
    pub fn point(&self, k: usize) -> Option<&SweepPoint> {
        self.points.iter().find(|p| p.k == k)
    }
}

fn run_trial(cfg: &SweepConfig, field: &FieldSpec, t: u64) -> Result<Vec<TrialRecord>> {
    let streams = TrialStreams::new(cfg.master_seed);
    let x = sample_low_rank(cfg.n, cfg.r, field, RankMode::Exact, &mut streams.rng(t, Purpose::Signal))?;
    let kmax = *cfg.k_grid.iter().max().expect("validated");
    let hs = sample_sensing(cfg.n, kmax, &cfg.ensemble, field, &mut streams.rng(t, Purpose::Sensing))?;
    let opts = NoisyOptions { lambda: cfg.lambda(), max_noise_weight: cfg.max_noise_weight };
    let mut out = Vec::with_capacity(cfg.k_grid.len());
    for &k in &cfg.k_grid {
        let start = Instant::now();
        let w = match &cfg.noise {
            Some(spec) => Some(sample_noise(k, cfg.n, spec, field, &mut streams.rng(t, Purpose::Noise))?),
            None => None,
        };
        let hk = hs[..k].to_vec();
        let y = measure(&x, &hk, w.as_ref())?;
        let inst = Instance::new(cfg.n, hk, y)?;
        let decoded = match w {
            Some(_) => minrank_noisy(&inst, opts)?,
            None => minrank_reduced(&inst),
        };
        let outcome = match decoded.status {
            DecodeStatus::Ambiguous => TrialOutcome::Ambiguous,
            DecodeStatus::Infeasible => TrialOutcome::Infeasible,
            DecodeStatus::Unique => {
                let x_ok = decoded.x_star.as_ref() == Some(&x);
                let w_ok = match &w {
                    Some(w) => decoded.w_star.as_ref() == Some(w),
                    None => true,
                };
                if x_ok && w_ok {
                    TrialOutcome::Success
                } else {
                    TrialOutcome::WrongUnique
                }
            }
        };
        out.push(TrialRecord { trial_index: t, k, outcome, achieved_rank: decoded.achieved_rank, wall_time: start.elapsed() });
    }
    Ok(out)
}

fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let field = FieldSpec::with_order(cfg.q)?;
    let per_trial = par_trials(cfg.jobs, cfg.trials, |t| run_trial(cfg, &field, t))?;
    let records: Vec<TrialRecord> = per_trial.into_iter().flatten().collect();
    let mut points = Vec::with_capacity(cfg.k_grid.len());
    for (i, &k) in cfg.k_grid.iter().enumerate() {
        let mut p = SweepPoint { k, trials: cfg.trials, successes: 0, ambiguous: 0, wrong_unique: 0, infeasible: 0, ci_lo: 0.0, ci_hi: 1.0 };
        for rec in records.iter().skip(i).step_by(cfg.k_grid.len()) {
            match rec.outcome {
                TrialOutcome::Success => p.successes += 1,
                TrialOutcome::Ambiguous => p.ambiguous += 1,
                TrialOutcome::WrongUnique => p.wrong_unique += 1,
                TrialOutcome::Infeasible => p.infeasible += 1,
            }
        }
        (p.ci_lo, p.ci_hi) = clopper_pearson(p.successes, p.trials, CI_LEVEL)?;
        points.push(p);
    }
    Ok(SweepResult { config: cfg.clone(), points, records })
}

/// Noiseless min-rank decoding success per `k`.
pub fn run_weak_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.noise.is_some() {
        return Err(Error::invalid("weak sweep is noiseless; use run_noisy_sweep"));
    }
    run_sweep(cfg)
}

/// The same trials under the sparse ensemble of `cfg` and under the uniform
/// ensemble. Planted matrices and stream seeds are shared.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedSweep {
    pub sparse: SweepResult,
    pub dense: SweepResult,
}

pub fn run_sparse_compare(cfg: &SweepConfig) -> Result<PairedSweep> {
    if cfg.noise.is_some() {
        return Err(Error::invalid("sparse comparison is noiseless"));
    }
    let sparse = run_sweep(cfg)?;
    let dense_cfg = SweepConfig { ensemble: EnsembleSpec::uniform(cfg.q), ..cfg.clone() };
    let dense = run_sweep(&dense_cfg)?;
    Ok(PairedSweep { sparse, dense })
}

/// Regularized decoding with success meaning both `X` and `w` are recovered.
pub fn run_noisy_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.noise.is_none() {
        return Err(Error::invalid("noisy sweep needs a noise model"));
    }
    run_sweep(cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
struct SweepRow<'a> {
    n: usize,
    q: u32,
    r: usize,
    k: usize,
    ensemble: &'a str,
    delta: f64,
    noise: &'a str,
    p_or_sigma: f64,
    lambda: f64,
    trials: u64,
    successes: u64,
    ambiguous: u64,
    wrong: u64,
    ci_lo: f64,
    ci_hi: f64,
    seed: u64,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes one row per `(result, k)` under the sweep header.
pub fn write_sweep_csv<W: Write>(out: W, results: &[&SweepResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for res in results {
        let c = &res.config;
        let (noise, level, lambda) = match &c.noise {
            Some(spec) => (spec.name(), spec.level(), c.lambda()),
            None => ("none", 0.0, 0.0),
        };
        for p in &res.points {
            w.serialize(SweepRow {
                n: c.n,
                q: c.q,
                r: c.r,
                k: p.k,
                ensemble: c.ensemble.name(),
                delta: c.ensemble.delta(),
                noise,
                p_or_sigma: level,
                lambda,
                trials: p.trials,
                successes: p.successes,
                ambiguous: p.ambiguous,
                wrong: p.wrong(),
                ci_lo: p.ci_lo,
                ci_hi: p.ci_hi,
                seed: c.master_seed,
            })
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Spectrum statistics for one rank.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceRow {
    pub r: usize,
    pub mean_ncr: f64,
    /// Unbiased sample variance.
    pub var_ncr: f64,
    /// Standard error of the sample mean.
    pub mean_se: f64,
    /// Large-sample standard error of the sample variance,
    /// `√((m₄ − s⁴)/trials)` with `m₄` the fourth central moment.
    pub var_se: f64,
    /// Exact `E N_C(r) = Φ_q(n,r) q^{−k}`.
    pub expected: f64,
    pub bound_lo: f64,
    pub bound_hi: f64,
    /// Codes with `|N_C(r) − E N_C(r)| > n √(E N_C(r))`.
    pub chebyshev_violations: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceProfile {
    pub n: usize,
    pub q: u32,
    pub k: usize,
    pub ensemble: EnsembleSpec,
    pub trials: u64,
    pub seed: u64,
    pub rows: Vec<DistanceRow>,
    /// `d_histogram[d]` codes with minimum rank distance `d`; index 0 counts
    /// trivial codes.
    pub d_histogram: Vec<u64>,
    pub rate: f64,
    pub gv_distance: f64,
}

impl DistanceProfile {
    pub fn row(&self, r: usize) -> Option<&DistanceRow> {
        self.rows.iter().find(|row| row.r == r)
    }

    /// Fraction of codes with `d_R/n < γ_GV − margin`. Trivial codes have no
    /// finite distance and never count.
    pub fn fraction_below_gv(&self, margin: f64) -> f64 {
        let below: u64 = self
            .d_histogram
            .iter()
            .enumerate()
            .skip(1)
            .filter(|&(d, _)| (d as f64 / self.n as f64) < self.gv_distance - margin)
            .map(|(_, &c)| c)
            .sum();
        below as f64 / self.trials as f64
    }
}

/// Rank spectra of `trials` random codes, one per trial's sensing stream.
pub fn run_distance_profile(
    n: usize,
    k: usize,
    ensemble: &EnsembleSpec,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<DistanceProfile> {
    let q = ensemble.q();
    let field = FieldSpec::with_order(q)?;
    let rate = crate::codelab::code_rate(n, k)?;
    if trials < 2 {
        return Err(Error::invalid("need at least 2 trials for a variance"));
    }
    let streams = TrialStreams::new(seed);
    let per_code = par_trials(jobs, trials, |t| {
        let hs = sample_sensing(n, k, ensemble, &field, &mut streams.rng(t, Purpose::Sensing))?;
        let code = CodeSpec::new(n, &field, hs)?;
        let spectrum = rank_spectrum(&code)?;
        let d = if code.dimension() == 0 { 0 } else { min_rank_distance(&code)? };
        Ok((spectrum, d))
    })?;
    let mut d_histogram = vec![0u64; n + 1];
    for (_, d) in &per_code {
        d_histogram[*d] += 1;
    }
    let mut rows = Vec::with_capacity(n);
    for r in 1..=n {
        let counts: Vec<f64> = per_code.iter().map(|(s, _)| s[r] as f64).collect();
        let mean = counts.iter().sum::<f64>() / trials as f64;
        let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        let m4 = counts.iter().map(|c| (c - mean).powi(4)).sum::<f64>() / trials as f64;
        let mean_se = (var / trials as f64).sqrt();
        let var_se = ((m4 - var * var).max(0.0) / trials as f64).sqrt();
        let expected = expected_ncr(n as u32, r as u32, q, k as u32)?;
        let b = encr_bounds(n as u32, r as u32, q, k as u32)?;
        let radius = n as f64 * expected.sqrt();
        let chebyshev_violations = counts.iter().filter(|&&c| (c - expected).abs() > radius).count() as u64;
        rows.push(DistanceRow { r, mean_ncr: mean, var_ncr: var, mean_se, var_se, expected, bound_lo: b.lo(), bound_hi: b.hi(), chebyshev_violations });
    }
    Ok(DistanceProfile {
        n,
        q,
        k,
        ensemble: *ensemble,
        trials,
        seed,
        rows,
        d_histogram,
        rate,
        gv_distance: gv_distance(rate),
    })
}

#[derive(Serialize)]
struct DistanceCsvRow {
    n: usize,
    q: u32,
    k: usize,
    r: usize,
    mean_ncr: f64,
    var_ncr: f64,
    bound_lo: f64,
    bound_hi: f64,
    trials: u64,
    seed: u64,
}

pub fn write_distance_csv<W: Write>(out: W, profile: &DistanceProfile) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in &profile.rows {
        w.serialize(DistanceCsvRow {
            n: profile.n,
            q: profile.q,
            k: profile.k,
            r: row.r,
            mean_ncr: row.mean_ncr,
            var_ncr: row.var_ncr,
            bound_lo: row.bound_lo,
            bound_hi: row.bound_hi,
            trials: profile.trials,
            seed: profile.seed,
        })
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Spectrum of a single code: `r,count,expected_lo,expected_hi,d_r,rate`.
pub fn write_code_spectrum_csv<W: Write>(out: W, code: &CodeSpec) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        r: usize,
        count: u64,
        expected_lo: f64,
        expected_hi: f64,
        d_r: Option<usize>,
        rate: f64,
    }
    let spectrum = rank_spectrum(code)?;
    let d_r = if code.dimension() == 0 { None } else { Some(min_rank_distance(code)?) };
    let rate = crate::codelab::code_rate(code.n(), code.k())?;
    let mut w = csv::Writer::from_writer(out);
    for (r, &count) in spectrum.iter().enumerate() {
        let (expected_lo, expected_hi) = if r == 0 {
            (1.0, 1.0)
        } else {
            let b = encr_bounds(code.n() as u32, r as u32, code.q(), code.k() as u32)?;
            (b.lo(), b.hi())
        };
        w.serialize(Row { r, count, expected_lo, expected_hi, d_r, rate }).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// How often random codes contain no nonzero codeword of rank `≤ 2r`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongRecoveryResult {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub trials: u64,
    pub passes: u64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl StrongRecoveryResult {
    pub fn pass_rate(&self) -> f64 {
        self.passes as f64 / self.trials as f64
    }
}

pub fn run_strong_recovery(
    n: usize,
    r: usize,
    k: usize,
    ensemble: &EnsembleSpec,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<StrongRecoveryResult> {
    if trials == 0 || k > n * n {
        return Err(Error::invalid(format!("need trials >= 1 and k <= n² (n={n}, k={k})")));
    }
    let field = FieldSpec::with_order(ensemble.q())?;
    let streams = TrialStreams::new(seed);
    let passed = par_trials(jobs, trials, |t| {
        let hs = sample_sensing(n, k, ensemble, &field, &mut streams.rng(t, Purpose::Sensing))?;
        strong_recovery_check(&CodeSpec::new(n, &field, hs)?, r)
    })?;
    let passes = passed.iter().filter(|&&p| p).count() as u64;
    let (ci_lo, ci_hi) = clopper_pearson(passes, trials, CI_LEVEL)?;
    Ok(StrongRecoveryResult { n, r, k, trials, passes, ci_lo, ci_hi })
}

/// Empirical error probability with its analytic sandwich.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReliabilityResult {
    pub n: usize,
    pub q: u32,
    pub r: usize,
    pub k: usize,
    pub trials: u64,
    pub errors: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// de Caen lower expression.
    pub decaen_lo: f64,
    /// Union bound `4 q^{2nr − r² − k}`.
    pub union_hi: f64,
}

impl ReliabilityResult {
    /// Empirical exponent `−log_q(P̂)/n²`, if any error was seen.
    pub fn empirical_exponent(&self) -> Option<f64> {
        (self.errors > 0).then(|| -self.p_hat.ln() / (self.q as f64).ln() / (self.n * self.n) as f64)
    }
}

/// Estimates `P(E_n)` for a planted rank-`r` matrix: a trial errs iff some
/// `Z ≠ X` with `rank(Z) ≤ r` has `𝒜(Z) = 𝒜(X)`. The candidates are
/// enumerated directly instead of decoding.
pub fn run_reliability_probe(n: usize, r: usize, q: u32, k: usize, trials: u64, seed: u64, jobs: usize) -> Result<ReliabilityResult> {
    let field = FieldSpec::with_order(q)?;
    if r > n || k > n * n || trials == 0 {
        return Err(Error::invalid(format!("need r <= n, k <= n² and trials >= 1 (n={n}, r={r}, k={k})")));
    }
    let candidates = low_rank_matrices(n, r, &field)?;
    let streams = TrialStreams::new(seed);
    let spec = EnsembleSpec::uniform(q);
    let packed = field.is_binary() && n * n <= 128;
    let pack = |m: &MatFq| m.as_slice().iter().enumerate().fold(0u128, |acc, (i, &v)| acc | (v as u128) << i);
    let candidate_masks: Vec<u128> = if packed { candidates.iter().map(pack).collect() } else { Vec::new() };
    let errs = par_trials(jobs, trials, |t| {
        let x = sample_low_rank(n, r, &field, RankMode::Exact, &mut streams.rng(t, Purpose::Signal))?;
        let hs = sample_sensing(n, k, &spec, &field, &mut streams.rng(t, Purpose::Sensing))?;
        if packed {
            let xm = pack(&x);
            let hm: Vec<u128> = hs.iter().map(pack).collect();
            Ok(candidate_masks.iter().any(|&z| z != xm && hm.iter().all(|&h| (h & (z ^ xm)).count_ones() % 2 == 0)))
        } else {
            let y: Vec<_> = hs.iter().map(|h| dot(&field, h.as_slice(), x.as_slice())).collect();
            Ok(candidates
                .iter()
                .any(|z| z != &x && hs.iter().zip(&y).all(|(h, &ya)| dot(&field, h.as_slice(), z.as_slice()) == ya)))
        }
    })?;
    let errors = errs.iter().filter(|&&e| e).count() as u64;
    let (ci_lo, ci_hi) = clopper_pearson(errors, trials, CI_LEVEL)?;
    Ok(ReliabilityResult {
        n,
        q,
        r,
        k,
        trials,
        errors,
        p_hat: errors as f64 / trials as f64,
        ci_lo,
        ci_hi,
        decaen_lo: error_lower_bound(n as u32, r as u32, q, k as u32),
        union_hi: error_upper_bound(n as u32, r as u32, q, k as u32),
    })
}

pub fn write_reliability_csv<W: Write>(out: W, results: &[ReliabilityResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

//! Random sensing matrices, low-rank signals and noise.
//!
//! Every sample is drawn from an explicit RNG stream. Experiments derive one
//! stream per `(master_seed, trial_index, purpose)` through [`TrialStreams`],
//! so results do not depend on the order in which trials run.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counting::{count_rank_atmost, count_rank_exact, log_q_big};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::matfq::{mat_inner, MatFq, VecFq};

/// Attempts allowed when rejection-sampling a full-rank factor.
pub const MAX_FULL_RANK_ATTEMPTS: usize = 10_000;

/// Distribution of the entries of a sensing matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum EnsembleSpec {
    /// Entries i.i.d. uniform on GF(q).
    Uniform { q: u32 },
    /// Entries zero with probability `1 − δ`, otherwise uniform on the
    /// `q − 1` nonzero symbols.
    Sparse { q: u32, delta: f64 },
}

impl EnsembleSpec {
    pub fn uniform(q: u32) -> Self {
        EnsembleSpec::Uniform { q }
    }

    /// δ-sparse ensemble. `δ = (q−1)/q` is the uniform law and is returned as
    /// [`EnsembleSpec::Uniform`] so both spellings sample identically.
    pub fn sparse(q: u32, delta: f64) -> Result<Self> {
        let max = (q as f64 - 1.0) / q as f64;
        if !(delta > 0.0 && delta <= max) {
            return Err(Error::invalid(format!("sparsity {delta} outside (0, {max}]")));
        }
        if delta == max {
            return Ok(EnsembleSpec::Uniform { q });
        }
        Ok(EnsembleSpec::Sparse { q, delta })
    }

    pub fn q(&self) -> u32 {
        match *self {
            EnsembleSpec::Uniform { q } | EnsembleSpec::Sparse { q, .. } => q,
        }
    }

    /// Probability that an entry is nonzero.
    pub fn delta(&self) -> f64 {
        match *self {
            EnsembleSpec::Uniform { q } => (q as f64 - 1.0) / q as f64,
            EnsembleSpec::Sparse { delta, .. } => delta,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EnsembleSpec::Uniform { .. } => "uniform",
            EnsembleSpec::Sparse { .. } => "sparse",
        }
    }

    #[inline]
    fn sample_entry<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match *self {
            EnsembleSpec::Uniform { q } => rng.gen_range(0..q) as Elem,
            EnsembleSpec::Sparse { q, delta } => {
                if rng.gen::<f64>() < delta {
                    rng.gen_range(1..q) as Elem
                } else {
                    0
                }
            }
        }
    }
}

/// Noise model for the measurement vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum NoiseSpec {
    /// Exactly `⌊σn²⌋` nonzero entries at uniformly random positions.
    DetWeight { sigma: f64 },
    /// Each entry independently nonzero with probability `p`.
    IidCrossover { p: f64 },
}

impl NoiseSpec {
    pub fn det_weight(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::invalid(format!("noise level {sigma} must be positive")));
        }
        Ok(NoiseSpec::DetWeight { sigma })
    }

    pub fn iid(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::invalid(format!("crossover probability {p} outside (0, 1/2)")));
        }
        Ok(NoiseSpec::IidCrossover { p })
    }

    pub fn name(&self) -> &'static str {
        match self {
            NoiseSpec::DetWeight { .. } => "det",
            NoiseSpec::IidCrossover { .. } => "iid",
        }
    }

    /// σ or p.
    pub fn level(&self) -> f64 {
        match *self {
            NoiseSpec::DetWeight { sigma } => sigma,
            NoiseSpec::IidCrossover { p } => p,
        }
    }
}

/// Which independent stream of a trial to draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purpose {
    Signal = 0,
    Sensing = 1,
    Noise = 2,
    Aux = 3,
}

/// Per-trial RNG streams derived from one master seed.
///
/// A stream is ChaCha8 keyed by `seed_from_u64(master_seed ⊕ φ·purpose)`
/// (φ the 64-bit golden-ratio constant) with the ChaCha stream id set to the
/// trial index. Streams for distinct `(trial, purpose)` pairs never overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialStreams {
    pub master_seed: u64,
}

impl TrialStreams {
    pub fn new(master_seed: u64) -> Self {
        TrialStreams { master_seed }
    }

    pub fn rng(&self, trial_index: u64, purpose: Purpose) -> ChaCha8Rng {
        let key = self.master_seed ^ (purpose as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        rng.set_stream(trial_index);
        rng
    }
}

fn check_field(spec_q: u32, field: &FieldSpec) -> Result<()> {
    if spec_q != field.q() {
        return Err(Error::invalid(format!("ensemble q = {spec_q} but field has q = {}", field.q())));
    }
    Ok(())
}

/// Draws `k` independent `n x n` sensing matrices with i.i.d. entries.
pub fn sample_sensing<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    spec: &EnsembleSpec,
    field: &FieldSpec,
    rng: &mut R,
) -> Result<Vec<MatFq>> {
    check_field(spec.q(), field)?;
    Ok((0..k)
        .map(|_| {
            let data = (0..n * n).map(|_| spec.sample_entry(rng)).collect();
            MatFq::from_vec(n, n, data, field).expect("sampled entries are field elements")
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// Uniform over matrices of rank exactly `r`.
    Exact,
    /// Uniform over matrices of rank at most `r`.
    AtMost,
}

fn sample_full_rank<R: Rng + ?Sized>(rows: usize, cols: usize, field: &FieldSpec, rng: &mut R) -> Result<MatFq> {
    let q = field.q();
    for _ in 0..MAX_FULL_RANK_ATTEMPTS {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q) as Elem).collect();
        let m = MatFq::from_vec(rows, cols, data, field)?;
        if m.rank() == rows.min(cols) {
            return Ok(m);
        }
    }
    Err(Error::CapExceeded(format!(
        "no full-rank {rows}x{cols} matrix after {MAX_FULL_RANK_ATTEMPTS} attempts"
    )))
}

/// Uniformly random `n x n` matrix of rank `r` (or at most `r`).
///
/// Exact mode multiplies two independent uniformly random full-rank `n x r`
/// factors, `X = U Vᵀ`. Every rank-`r` matrix has exactly `|GL_r(q)|` such
/// factorizations, so the result is uniform. At-most mode first picks the
/// rank `l` with probability `Φ_q(n,l)/Ψ_q(n,r)`.
pub fn sample_low_rank<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    field: &FieldSpec,
    mode: RankMode,
    rng: &mut R,
) -> Result<MatFq> {
    if r > n {
        return Err(Error::invalid(format!("rank {r} exceeds n = {n}")));
    }
    let r = match mode {
        RankMode::Exact => r,
        RankMode::AtMost => pick_rank(n, r, field.q(), rng)?,
    };
    if r == 0 {
        return Ok(MatFq::zeros(n, n, field));
    }
    let u = sample_full_rank(n, r, field, rng)?;
    let v = sample_full_rank(n, r, field, rng)?;
    u.matmul(&v.transpose())
}

fn pick_rank<R: Rng + ?Sized>(n: usize, r: usize, q: u32, rng: &mut R) -> Result<usize> {
    let log_psi = log_q_big(&count_rank_atmost(n as u32, r as u32, q)?, q);
    let ln_q = (q as f64).ln();
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for l in 0..=r {
        let log_phi = log_q_big(&count_rank_exact(n as u32, l as u32, q)?, q);
        acc += ((log_phi - log_psi) * ln_q).exp();
        if u < acc {
            return Ok(l);
        }
    }
    Ok(r)
}

/// Noise vector of length `k` for an `n x n` problem.
pub fn sample_noise<R: Rng + ?Sized>(
    k: usize,
    n: usize,
    spec: &NoiseSpec,
    field: &FieldSpec,
    rng: &mut R,
) -> Result<VecFq> {
    let q = field.q();
    let mut w = vec![0 as Elem; k];
    match *spec {
        NoiseSpec::DetWeight { sigma } => {
            let weight = (sigma * (n * n) as f64).floor() as usize;
            if weight > k {
                return Err(Error::invalid(format!("noise weight {weight} exceeds k = {k}")));
            }
            let mut support = index::sample(rng, k, weight).into_vec();
            support.sort_unstable();
            for i in support {
                w[i] = rng.gen_range(1..q) as Elem;
            }
        }
        NoiseSpec::IidCrossover { p } => {
            for v in w.iter_mut() {
                if rng.gen::<f64>() < p {
                    *v = rng.gen_range(1..q) as Elem;
                }
            }
        }
    }
    VecFq::from_vec(w, field)
}

/// `y_a = ⟨H_a, X⟩ (+ w_a)`.
pub fn measure(x: &MatFq, hs: &[MatFq], noise: Option<&VecFq>) -> Result<VecFq> {
    let f = x.field();
    let mut y = Vec::with_capacity(hs.len());
    for h in hs {
        y.push(mat_inner(h, x)?);
    }
    let y = VecFq::from_vec(y, f)?;
    match noise {
        None => Ok(y),
        Some(w) => y.add(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    use std::collections::HashMap;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn chi2_pvalue(counts: &[u64], expected: f64) -> f64 {
        let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        let dist = ChiSquared::new((counts.len() - 1) as f64).unwrap();
        1.0 - dist.cdf(stat)
    }

    #[test]
    fn sparse_at_uniform_density_is_uniform() {
        let spec = EnsembleSpec::sparse(5, 0.8).unwrap();
        assert_eq!(spec, EnsembleSpec::uniform(5));
        let f = gf(5);
        let mut rng = TrialStreams::new(1).rng(0, Purpose::Sensing);
        let hs = sample_sensing(10, 1000, &spec, &f, &mut rng).unwrap();
        let mut counts = vec![0u64; 5];
        for h in &hs {
            for &v in h.as_slice() {
                counts[v as usize] += 1;
            }
        }
        assert!(chi2_pvalue(&counts, 1e5 / 5.0) > 1e-4, "{counts:?}");
    }

    #[test]
    fn sparse_zero_fraction_and_mean_weight() {
        let f = gf(2);
        let spec = EnsembleSpec::sparse(2, 0.1).unwrap();
        let mut rng = TrialStreams::new(2).rng(0, Purpose::Sensing);
        let n = 10;
        let hs = sample_sensing(n, 1000, &spec, &f, &mut rng).unwrap();
        let total = (1000 * n * n) as f64;
        let zeros = hs.iter().map(|h| (n * n - h.hamming_weight()) as f64).sum::<f64>();
        let sd = (total * 0.9 * 0.1).sqrt();
        assert!((zeros - 0.9 * total).abs() < 3.0 * sd);
        let mean_weight = (total - zeros) / 1000.0 / (n * n) as f64;
        assert!((mean_weight - 0.1).abs() < 3.0 * sd / total);
        assert!(EnsembleSpec::sparse(2, 0.0).is_err());
        assert!(EnsembleSpec::sparse(3, 0.7).is_err());
    }

    #[test]
    fn low_rank_exact_and_zero() {
        let f = gf(3);
        let mut rng = TrialStreams::new(3).rng(0, Purpose::Signal);
        assert!(sample_low_rank(4, 0, &f, RankMode::Exact, &mut rng).unwrap().is_zero());
        for r in 0..=4 {
            for _ in 0..20 {
                assert_eq!(sample_low_rank(4, r, &f, RankMode::Exact, &mut rng).unwrap().rank(), r);
            }
        }
        for _ in 0..50 {
            assert!(sample_low_rank(4, 2, &f, RankMode::AtMost, &mut rng).unwrap().rank() <= 2);
        }
        assert!(sample_low_rank(3, 4, &f, RankMode::Exact, &mut rng).is_err());
    }

    #[test]
    fn rank_one_binary_2x2_is_uniform() {
        let f = gf(2);
        let mut rng = TrialStreams::new(4).rng(0, Purpose::Signal);
        let mut counts: HashMap<Vec<u16>, u64> = HashMap::new();
        let draws = 100_000;
        for _ in 0..draws {
            let x = sample_low_rank(2, 1, &f, RankMode::Exact, &mut rng).unwrap();
            *counts.entry(x.as_slice().to_vec()).or_default() += 1;
        }
        assert_eq!(counts.len(), 9);
        let mut c: Vec<u64> = counts.into_values().collect();
        c.sort_unstable();
        assert!(chi2_pvalue(&c, draws as f64 / 9.0) > 1e-4, "{c:?}");
    }

    #[test]
    fn at_most_rank_law_follows_counts() {
        // Ψ_2(2,1) = 10: zero matrix w.p. 1/10
        let f = gf(2);
        let mut rng = TrialStreams::new(5).rng(0, Purpose::Signal);
        let draws = 50_000;
        let zeros = (0..draws)
            .filter(|_| sample_low_rank(2, 1, &f, RankMode::AtMost, &mut rng).unwrap().is_zero())
            .count() as f64;
        let sd = (draws as f64 * 0.1 * 0.9).sqrt();
        assert!((zeros - 0.1 * draws as f64).abs() < 4.0 * sd);
    }

    #[test]
    fn noise_weights() {
        let f = gf(4);
        let mut rng = TrialStreams::new(6).rng(0, Purpose::Noise);
        let zero = sample_noise(20, 4, &NoiseSpec::det_weight(0.01).unwrap(), &f, &mut rng).unwrap();
        assert!(zero.is_zero());
        for _ in 0..100 {
            let w = sample_noise(20, 4, &NoiseSpec::det_weight(0.2).unwrap(), &f, &mut rng).unwrap();
            assert_eq!(w.hamming_weight(), 3);
        }
        assert!(sample_noise(2, 4, &NoiseSpec::det_weight(0.5).unwrap(), &f, &mut rng).is_err());
        let w = sample_noise(100_000, 4, &NoiseSpec::iid(0.02).unwrap(), &f, &mut rng).unwrap();
        let sd = (1e5f64 * 0.02 * 0.98).sqrt();
        assert!((w.hamming_weight() as f64 - 2000.0).abs() < 3.0 * sd);
        assert!(NoiseSpec::iid(0.5).is_err());
        assert!(NoiseSpec::det_weight(0.0).is_err());
    }

    #[test]
    fn measurement_basics() {
        let f = gf(3);
        let mut rng = TrialStreams::new(7).rng(0, Purpose::Sensing);
        let hs = sample_sensing(3, 6, &EnsembleSpec::uniform(3), &f, &mut rng).unwrap();
        assert!(measure(&MatFq::zeros(3, 3, &f), &hs, None).unwrap().is_zero());
        let x1 = sample_low_rank(3, 1, &f, RankMode::Exact, &mut rng).unwrap();
        let x2 = sample_low_rank(3, 2, &f, RankMode::Exact, &mut rng).unwrap();
        let lhs = measure(&x1.add(&x2).unwrap(), &hs, None).unwrap();
        let rhs = measure(&x1, &hs, None).unwrap().add(&measure(&x2, &hs, None).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // matrix completion: indicator sensing reads entries of X
        let units: Vec<MatFq> = (0..9).map(|t| MatFq::unit(3, 3, t / 3, t % 3, &f)).collect();
        assert_eq!(measure(&x2, &units, None).unwrap().as_slice(), x2.as_slice());
        let w = VecFq::from_vec(vec![1, 0, 0, 0, 0, 2], &f).unwrap();
        let noisy = measure(&x1, &hs, Some(&w)).unwrap();
        assert_eq!(noisy.sub(&measure(&x1, &hs, None).unwrap()).unwrap(), w);
    }

    #[test]
    fn streams_are_reproducible_and_order_free() {
        let s = TrialStreams::new(99);
        let f = gf(2);
        let spec = EnsembleSpec::sparse(2, 0.3).unwrap();
        let a: Vec<_> = (0..5).map(|t| sample_sensing(4, 3, &spec, &f, &mut s.rng(t, Purpose::Sensing)).unwrap()).collect();
        let b: Vec<_> = (0..5).rev().map(|t| sample_sensing(4, 3, &spec, &f, &mut s.rng(t, Purpose::Sensing)).unwrap()).collect();
        let b: Vec<_> = b.into_iter().rev().collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        let other = sample_sensing(4, 3, &spec, &f, &mut s.rng(0, Purpose::Signal)).unwrap();
        assert_ne!(a[0], other);
    }

    #[test]
    fn sensing_prefix_is_nested() {
        let s = TrialStreams::new(5);
        let f = gf(3);
        let spec = EnsembleSpec::uniform(3);
        let long = sample_sensing(3, 10, &spec, &f, &mut s.rng(1, Purpose::Sensing)).unwrap();
        let short = sample_sensing(3, 4, &spec, &f, &mut s.rng(1, Purpose::Sensing)).unwrap();
        assert_eq!(&long[..4], &short[..]);
    }

    /// Every nonzero 2x2 binary matrix, as a flat vector.
    fn all_binary_2x2(f: &FieldSpec) -> Vec<MatFq> {
        (0..16u16)
            .map(|c| MatFq::from_vec(2, 2, (0..4).map(|i| (c >> i) & 1).collect(), f).unwrap())
            .collect()
    }

    #[test]
    fn pairwise_independence_exhaustive() {
        let f = gf(2);
        let all = all_binary_2x2(&f);
        let nonzero: Vec<&MatFq> = all.iter().filter(|m| !m.is_zero()).collect();
        for m in &nonzero {
            let hits = all.iter().filter(|h| mat_inner(m, h).unwrap() == 0).count();
            assert_eq!(hits, 8);
            for m2 in &nonzero {
                if m == m2 {
                    continue;
                }
                let both = all
                    .iter()
                    .filter(|h| mat_inner(m, h).unwrap() == 0 && mat_inner(m2, h).unwrap() == 0)
                    .count();
                assert_eq!(both, 4);
            }
        }
    }

    #[test]
    fn sparse_collision_law_matches_theta() {
        use crate::counting::theta;
        let f = gf(2);
        let (n, k, delta) = (3usize, 2usize, 0.2);
        let spec = EnsembleSpec::sparse(2, delta).unwrap();
        let s = TrialStreams::new(8);
        for d in [1usize, 2, 4] {
            let mut m = MatFq::zeros(n, n, &f);
            for t in 0..d {
                m.set(t / n, t % n, 1);
            }
            let trials = 100_000;
            let mut rng = s.rng(d as u64, Purpose::Sensing);
            let hits = (0..trials)
                .filter(|_| {
                    let hs = sample_sensing(n, k, &spec, &f, &mut rng).unwrap();
                    measure(&m, &hs, None).unwrap().is_zero()
                })
                .count() as f64;
            let p = theta(d as u32, delta, 2, k as u32).unwrap();
            let sd = (trials as f64 * p * (1.0 - p)).sqrt();
            assert!((hits - p * trials as f64).abs() < 4.0 * sd, "d={d}: {hits} vs {}", p * trials as f64);
        }
    }
}

//! Closed-form quantities: counts of low-rank matrices and their bounds, the
//! sparse collision probability θ, entropies, measurement thresholds,
//! reliability functions and moment bounds.
//!
//! Exact counts use arbitrary-precision integers. Bounds that would overflow
//! are returned in the log domain (base `q`).

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn big_pow(q: u32, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// Number of `rows x cols` matrices over GF(q) with rank exactly `r`:
/// `∏_{i<r} (q^rows − q^i)(q^cols − q^i) / (q^r − q^i)`.
pub fn count_rank_rect(rows: u32, cols: u32, r: u32, q: u32) -> Result<BigUint> {
    if r > rows.min(cols) {
        return Err(Error::invalid(format!("rank {r} exceeds min({rows}, {cols})")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        let qi = big_pow(q, i);
        num *= (big_pow(q, rows) - &qi) * (big_pow(q, cols) - &qi);
        den *= big_pow(q, r) - &qi;
    }
    Ok(num / den)
}

/// Φ_q(n, r): number of `n x n` matrices of rank exactly `r`.
pub fn count_rank_exact(n: u32, r: u32, q: u32) -> Result<BigUint> {
    count_rank_rect(n, n, r, q)
}

/// Ψ_q(n, r) = Σ_{l ≤ r} Φ_q(n, l).
pub fn count_rank_atmost(n: u32, r: u32, q: u32) -> Result<BigUint> {
    if r > n {
        return Err(Error::invalid(format!("rank {r} exceeds n = {n}")));
    }
    (0..=r).map(|l| count_rank_exact(n, l, q)).sum()
}

/// Gaussian binomial `[N choose r]_q`, the number of `r`-dimensional
/// subspaces of GF(q)^N.
pub fn gaussian_binomial(big_n: u32, r: u32, q: u32) -> BigUint {
    if r > big_n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= big_pow(q, big_n - i) - 1u32;
        den *= big_pow(q, i + 1) - 1u32;
    }
    num / den
}

/// `log_q(x)` for a positive big integer, accurate to f64 precision.
pub fn log_q_big(x: &BigUint, q: u32) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    let (mantissa, shift) = if bits > 1000 {
        let shift = bits - 64;
        ((x >> shift).to_f64().unwrap(), shift as f64)
    } else {
        (x.to_f64().unwrap(), 0.0)
    };
    (mantissa.log2() + shift) / (q as f64).log2()
}

/// Counting bounds on Φ and Ψ, stored as base-`q` exponents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Bounds {
    pub q: u32,
    pub log_phi_lo: f64,
    pub log_phi_hi: f64,
    pub log_psi_lo: f64,
    pub log_psi_hi: f64,
}

impl Lemma1Bounds {
    pub fn phi_lo(&self) -> f64 {
        (self.q as f64).powf(self.log_phi_lo)
    }
    pub fn phi_hi(&self) -> f64 {
        (self.q as f64).powf(self.log_phi_hi)
    }
    pub fn psi_lo(&self) -> f64 {
        (self.q as f64).powf(self.log_psi_lo)
    }
    pub fn psi_hi(&self) -> f64 {
        (self.q as f64).powf(self.log_psi_hi)
    }
}

/// `q^{(2n−2)r−r²} ≤ Φ ≤ 4q^{2nr−r²}` and `q^{2nr−r²} ≤ Ψ ≤ 4q^{2nr−r²}`.
/// Stated for `r ≥ 1` only.
pub fn lemma1_bounds(n: u32, r: u32, q: u32) -> Result<Lemma1Bounds> {
    if r == 0 || r > n {
        return Err(Error::invalid(format!("bounds need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    let (n, r) = (n as f64, r as f64);
    let log4 = 4f64.log2() / (q as f64).log2();
    let e = 2.0 * n * r - r * r;
    Ok(Lemma1Bounds {
        q,
        log_phi_lo: (2.0 * n - 2.0) * r - r * r,
        log_phi_hi: e + log4,
        log_psi_lo: e,
        log_psi_hi: e + log4,
    })
}

fn check_delta(delta: f64, q: u32) -> Result<()> {
    let max = (q as f64 - 1.0) / q as f64;
    if !(0.0..=max + 1e-15).contains(&delta) {
        return Err(Error::invalid(format!("sparsity {delta} outside [0, {max}]")));
    }
    Ok(())
}

/// θ(d; δ, q, k) = [q⁻¹ + (1−q⁻¹)(1 − δ/(1−q⁻¹))^d]^k, the probability that
/// `k` independent δ-sparse sensing matrices are all orthogonal to a fixed
/// matrix of Hamming weight `d`.
pub fn theta(d: u32, delta: f64, q: u32, k: u32) -> Result<f64> {
    check_delta(delta, q)?;
    let qinv = 1.0 / q as f64;
    let inner = qinv + (1.0 - qinv) * (1.0 - delta / (1.0 - qinv)).powi(d as i32);
    Ok(inner.powi(k as i32))
}

/// Same quantity as [`theta`] computed by repeated circular convolution of
/// the δ-sparse pmf on `q` points.
///
/// The pmf is uniform over nonzero symbols, so the zero mass of its d-fold
/// convolution is the same in any abelian group of order `q`; convolving
/// over Z_q is therefore valid for prime powers as well. Multiplying a
/// symbol by a fixed nonzero weight leaves this pmf unchanged.
pub fn theta_oracle(d: u32, delta: f64, q: u32, k: u32) -> Result<f64> {
    check_delta(delta, q)?;
    if d > 10_000 {
        return Err(Error::invalid("theta_oracle supports d <= 10^4"));
    }
    let q = q as usize;
    let mut pmf = vec![delta / (q as f64 - 1.0); q];
    pmf[0] = 1.0 - delta;
    let mut acc = vec![0.0; q];
    acc[0] = 1.0;
    for _ in 0..d {
        let mut next = vec![0.0; q];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in pmf.iter().enumerate() {
                next[(i + j) % q] += a * b;
            }
        }
        acc = next;
    }
    Ok(acc[0].powi(k as i32))
}

fn check_prob(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Binary entropy in bits; zero at both endpoints.
pub fn entropy2(p: f64) -> Result<f64> {
    check_prob(p)?;
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

/// Binary entropy in base `q`: `−p log_q p − (1−p) log_q(1−p)`.
pub fn entropyq(p: f64, q: u32) -> Result<f64> {
    Ok(entropy2(p)? / (q as f64).log2())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdKind {
    Converse,
    Achievable,
    Strong,
    NoisyDet,
    NoisyConverseAlpha,
    NoisyAchievableAlpha,
}

impl ThresholdKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdKind::Converse => "converse",
            ThresholdKind::Achievable => "achievable",
            ThresholdKind::Strong => "strong",
            ThresholdKind::NoisyDet => "noisy_det",
            ThresholdKind::NoisyConverseAlpha => "noisy_converse_alpha",
            ThresholdKind::NoisyAchievableAlpha => "noisy_achievable_alpha",
        }
    }
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters a threshold was evaluated at. Absent entries did not apply.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ThresholdParams {
    pub n: Option<u32>,
    pub q: Option<u32>,
    pub gamma: f64,
    pub sigma: Option<f64>,
    pub p: Option<f64>,
    pub eps: f64,
}

impl fmt::Display for ThresholdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(q) = self.q {
            parts.push(format!("q={q}"));
        }
        parts.push(format!("gamma={}", self.gamma));
        if let Some(s) = self.sigma {
            parts.push(format!("sigma={s}"));
        }
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        parts.push(format!("eps={}", self.eps));
        f.write_str(&parts.join(";"))
    }
}

/// A threshold value: a measurement count `k` for the noiseless kinds and
/// `k/n²` (the scaling parameter α) for the noisy ones.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub kind: ThresholdKind,
    pub value: f64,
    pub params: ThresholdParams,
}

/// Noiseless measurement thresholds, as a number of measurements `k`:
/// converse `(2−ε)γ(1−γ/2)n²`, achievable `(2+ε)γ(1−γ/2)n²`,
/// strong recovery `(4+ε)γ(1−γ)n²`.
pub fn threshold_noiseless(n: u32, gamma: f64, eps: f64, kind: ThresholdKind) -> Result<ThresholdReport> {
    check_prob(gamma)?;
    if eps < 0.0 {
        return Err(Error::invalid("eps must be non-negative"));
    }
    let n2 = (n as f64).powi(2);
    let value = match kind {
        ThresholdKind::Converse => ((2.0 - eps) * gamma * (1.0 - gamma / 2.0) * n2).max(0.0),
        ThresholdKind::Achievable => (2.0 + eps) * gamma * (1.0 - gamma / 2.0) * n2,
        ThresholdKind::Strong => (4.0 + eps) * gamma * (1.0 - gamma) * n2,
        other => return Err(Error::invalid(format!("{other} is not a noiseless threshold"))),
    };
    Ok(ThresholdReport {
        kind,
        value,
        params: ThresholdParams { n: Some(n), gamma, eps, ..Default::default() },
    })
}

/// Sufficient `k/n²` for the regularized decoder under deterministic noise of
/// weight `⌊σn²⌋`.
pub fn threshold_noisy_det(gamma: f64, sigma: f64, q: u32, eps: f64) -> Result<f64> {
    let s = gamma + sigma;
    if !(0.0..3.0).contains(&s) {
        return Err(Error::invalid(format!("gamma + sigma = {s} must lie in [0, 3)")));
    }
    let denom = 1.0 - entropy2(1.0 / (3.0 - s))? * (2f64.ln() / (q as f64).ln());
    if denom <= 0.0 {
        return Err(Error::invalid(format!(
            "noisy threshold infeasible: denominator {denom} <= 0 for q = {q}"
        )));
    }
    Ok((3.0 + eps) * s * (1.0 - s / 3.0) / denom)
}

/// Converse scaling `2γ(1−γ/2)/(1−H_q(p))` for i.i.d. crossover noise.
pub fn alpha_converse_noisy(gamma: f64, p: f64, q: u32) -> Result<f64> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::invalid(format!("crossover probability {p} outside [0, 1/2)")));
    }
    let h = entropyq(p, q)?;
    if h >= 1.0 {
        return Err(Error::invalid("H_q(p) >= 1"));
    }
    Ok(2.0 * gamma * (1.0 - gamma / 2.0) / (1.0 - h))
}

/// `g(α; p, γ) = α[1 − (log_q 2) H₂(p + γ/α) − 2p(1−γ)] + α²p²`.
pub fn g_fun(alpha: f64, p: f64, gamma: f64, q: u32) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::invalid("alpha must be positive"));
    }
    let arg = p + gamma / alpha;
    if arg > 1.0 {
        return Err(Error::invalid(format!("entropy argument {arg} exceeds 1")));
    }
    let log_q_2 = 2f64.ln() / (q as f64).ln();
    Ok(alpha * (1.0 - log_q_2 * entropy2(arg)? - 2.0 * p * (1.0 - gamma)) + alpha * alpha * p * p)
}

/// Smallest α ≤ 1 with `g(α; p, γ) ≥ (2+ε)γ(1−γ/2)`: first grid point at
/// step 1e-4, then bisection against the preceding grid point down to 1e-6.
pub fn critical_alpha(p: f64, gamma: f64, q: u32, eps: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&p) || !(0.0..=1.0).contains(&gamma) {
        return Err(Error::invalid("need p in [0, 1/2) and gamma in [0, 1]"));
    }
    let target = (2.0 + eps) * gamma * (1.0 - gamma / 2.0);
    let lower = gamma / (1.0 - p);
    let ok = |a: f64| g_fun(a, p, gamma, q).is_ok_and(|g| g >= target);
    const STEP: f64 = 1e-4;
    let first = (lower / STEP).floor() as i64;
    let last = (1.0 / STEP).round() as i64;
    let mut prev = lower;
    for i in first..=last {
        let a = i as f64 * STEP;
        if a <= lower {
            continue;
        }
        if ok(a) {
            let (mut lo, mut hi) = (prev, a);
            while hi - lo > 1e-6 {
                let mid = 0.5 * (lo + hi);
                if ok(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(hi);
        }
        prev = a;
    }
    Err(Error::invalid(format!(
        "no alpha <= 1 satisfies g >= {target} at p = {p}, gamma = {gamma}, q = {q}"
    )))
}

/// E(R) = |(1−R) − 2γ̃(1−γ̃/2)|⁺.
pub fn reliability_e(rate: f64, gamma_tilde: f64) -> f64 {
    ((1.0 - rate) - 2.0 * gamma_tilde * (1.0 - gamma_tilde / 2.0)).max(0.0)
}

/// Error exponents normalized by `n` (`e1_*`) and `n²` (`e2_*`) for
/// Gabidulin codes, error trapping, their combination, and random sensing
/// with min-rank decoding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentTable {
    pub e1_gab: f64,
    pub e2_gab: f64,
    pub e1_et: f64,
    pub e2_et: f64,
    pub e1_gabet: f64,
    pub e2_gabet: f64,
    pub e1_rsmr: f64,
    pub e2_rsmr: f64,
}

pub fn exponents_reference(rate: f64, gamma: f64) -> ExponentTable {
    let gab = if rate <= 1.0 - 2.0 * gamma { f64::INFINITY } else { 0.0 };
    let gabet = if gamma < 1.0 { (1.0 - gamma - rate / (1.0 - gamma)).max(0.0) } else { 0.0 };
    let e2_rsmr = reliability_e(rate, gamma);
    let e1_rsmr = if rate <= (1.0 - gamma).powi(2) { f64::INFINITY } else { 0.0 };
    ExponentTable {
        e1_gab: gab,
        e2_gab: gab,
        e1_et: (1.0 - gamma - rate.sqrt()).max(0.0),
        e2_et: 0.0,
        e1_gabet: gabet,
        e2_gabet: 0.0,
        e1_rsmr,
        e2_rsmr,
    }
}

/// Relative minimum rank distance of a typical random code at rate `R`.
pub fn gv_distance(rate: f64) -> f64 {
    1.0 - rate.sqrt()
}

/// Sandwich on the expected number of rank-`r` codewords, as base-`q`
/// exponents: `−k + 2rn − r² − 2r ≤ log_q E N_C(r) ≤ log_q 4 − k + 2rn − r²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EncrBounds {
    pub q: u32,
    pub log_lo: f64,
    pub log_hi: f64,
}

impl EncrBounds {
    pub fn lo(&self) -> f64 {
        (self.q as f64).powf(self.log_lo)
    }
    pub fn hi(&self) -> f64 {
        (self.q as f64).powf(self.log_hi)
    }
}

pub fn encr_bounds(n: u32, r: u32, q: u32, k: u32) -> Result<EncrBounds> {
    if r == 0 || r > n {
        return Err(Error::invalid(format!("moment bounds need 1 <= r <= n (N_C(0) = 1), got r = {r}")));
    }
    let (n, r, k) = (n as f64, r as f64, k as f64);
    let base = -k + 2.0 * r * n - r * r;
    Ok(EncrBounds {
        q,
        log_lo: base - 2.0 * r,
        log_hi: base + 4f64.log2() / (q as f64).log2(),
    })
}

/// Exact `E N_C(r) = Φ_q(n, r) q^{−k}` for the uniform ensemble, `r ≥ 1`.
pub fn expected_ncr(n: u32, r: u32, q: u32, k: u32) -> Result<f64> {
    let phi = count_rank_exact(n, r, q)?;
    Ok((q as f64).powf(log_q_big(&phi, q) - k as f64))
}

/// Upper bound `4 q^{2nr−r²−k}` on the min-rank decoder's error probability.
pub fn error_upper_bound(n: u32, r: u32, q: u32, k: u32) -> f64 {
    let e = 2.0 * n as f64 * r as f64 - (r * r) as f64 - k as f64;
    4.0 * (q as f64).powf(e)
}

/// Lower bound on the error probability from pairwise independence:
/// `(q^{2nr̃−r̃²} − 1) q^{−k} / (1 + 4 q^{2nr̃−r̃²−k})` with `r̃ = rank(X)`.
pub fn error_lower_bound(n: u32, r_tilde: u32, q: u32, k: u32) -> f64 {
    let e = 2.0 * n as f64 * r_tilde as f64 - (r_tilde * r_tilde) as f64;
    let qf = q as f64;
    (qf.powf(e) - 1.0) * qf.powf(-(k as f64)) / (1.0 + 4.0 * qf.powf(e - k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matfq::MatFq;

    /// Rank histogram of every `n x n` matrix over GF(q).
    fn enumerate_rank_histogram(n: usize, q: u32) -> Vec<u64> {
        let f = FieldSpec::with_order(q).unwrap();
        let total = (q as u64).pow((n * n) as u32);
        let mut hist = vec![0u64; n + 1];
        for code in 0..total {
            let mut c = code;
            let data = (0..n * n)
                .map(|_| {
                    let v = (c % q as u64) as u16;
                    c /= q as u64;
                    v
                })
                .collect();
            hist[MatFq::from_vec(n, n, data, &f).unwrap().rank()] += 1;
        }
        hist
    }

    #[test]
    fn exact_counts_match_enumeration() {
        for (n, q) in [(1usize, 2u32), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (2, 4)] {
            let hist = enumerate_rank_histogram(n, q);
            for (r, &count) in hist.iter().enumerate() {
                assert_eq!(count_rank_exact(n as u32, r as u32, q).unwrap(), BigUint::from(count), "n={n} q={q} r={r}");
            }
        }
    }

    #[test]
    fn frozen_count_values() {
        assert_eq!(count_rank_exact(5, 0, 7).unwrap(), BigUint::one());
        assert_eq!(count_rank_exact(2, 1, 2).unwrap(), BigUint::from(9u32));
        assert_eq!(count_rank_exact(4, 2, 2).unwrap(), BigUint::from(7350u32));
        assert_eq!(count_rank_atmost(2, 1, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(count_rank_atmost(4, 1, 2).unwrap(), BigUint::from(226u32));
        assert_eq!(count_rank_atmost(3, 3, 5).unwrap(), big_pow(5, 9));
        assert!(count_rank_exact(3, 4, 2).is_err());
        assert!(count_rank_atmost(3, 4, 2).is_err());
    }

    #[test]
    fn counts_partition_all_matrices() {
        for n in 0..=6 {
            for q in [2, 3, 4] {
                let total: BigUint = (0..=n).map(|r| count_rank_exact(n, r, q).unwrap()).sum();
                assert_eq!(total, big_pow(q, n * n));
            }
        }
    }

    #[test]
    fn lemma1_examples_and_sandwich() {
        let b = lemma1_bounds(2, 1, 2).unwrap();
        assert_eq!((b.phi_lo(), b.phi_hi()), (2.0, 32.0));
        let b = lemma1_bounds(4, 1, 2).unwrap();
        assert!((b.psi_lo() - 128.0).abs() < 1e-9 && (b.psi_hi() - 512.0).abs() < 1e-9);
        assert!(lemma1_bounds(3, 0, 2).is_err());
        for n in 1..=6 {
            for q in [2, 3, 4] {
                for r in 1..=n {
                    let b = lemma1_bounds(n, r, q).unwrap();
                    let phi = log_q_big(&count_rank_exact(n, r, q).unwrap(), q);
                    let psi = log_q_big(&count_rank_atmost(n, r, q).unwrap(), q);
                    assert!(b.log_phi_lo <= phi + 1e-12 && phi <= b.log_phi_hi + 1e-12);
                    assert!(b.log_psi_lo <= psi + 1e-12 && psi <= b.log_psi_hi + 1e-12);
                }
            }
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(8, 2, 2), BigUint::from(10795u32));
        assert_eq!(gaussian_binomial(4, 0, 3), BigUint::one());
        assert_eq!(gaussian_binomial(2, 3, 3), BigUint::zero());
        // equals the number of full-rank N x r matrices divided by |GL_r|
        for (nn, r, q) in [(5u32, 2u32, 3u32), (6, 3, 2), (4, 4, 2)] {
            let full = count_rank_rect(nn, r, r, q).unwrap();
            let gl = count_rank_exact(r, r, q).unwrap();
            assert_eq!(gaussian_binomial(nn, r, q), full / gl);
        }
    }

    #[test]
    fn log_density_converges() {
        let gamma = 0.25;
        let target = 2.0 * gamma * (1.0 - gamma / 2.0);
        let devs: Vec<f64> = (1..=8u32)
            .map(|t| {
                let n = 4 * t;
                let r = (gamma * n as f64).floor() as u32;
                (log_q_big(&count_rank_atmost(n, r, 2).unwrap(), 2) / (n * n) as f64 - target).abs()
            })
            .collect();
        for w in devs.windows(2) {
            assert!(w[1] < w[0], "{devs:?}");
        }
        assert!(devs.last().unwrap() < &0.01);
    }

    #[test]
    fn theta_limits() {
        assert_eq!(theta(0, 0.3, 5, 7).unwrap(), 1.0);
        assert!((theta(1, 0.3, 2, 1).unwrap() - 0.7).abs() < 1e-15);
        for q in [2u32, 3, 4, 7] {
            let uni = (q as f64 - 1.0) / q as f64;
            for d in 1..10 {
                for k in [1u32, 3, 9] {
                    let t = theta(d, uni, q, k).unwrap();
                    assert!((t - (q as f64).powi(-(k as i32))).abs() < 1e-15);
                }
            }
        }
        assert!(theta(1, 0.6, 2, 1).is_err());
        assert!(theta(1, -0.1, 3, 1).is_err());
    }

    #[test]
    fn theta_matches_convolution() {
        for q in [2u32, 3, 4, 5] {
            for &delta in &[0.1, 0.3, 0.5f64.min((q as f64 - 1.0) / q as f64)] {
                for d in 0..=20 {
                    for k in [1, 5, 20] {
                        let a = theta(d, delta, q, k).unwrap();
                        let b = theta_oracle(d, delta, q, k).unwrap();
                        assert!((a - b).abs() <= 1e-12, "q={q} d={d} delta={delta}: {a} vs {b}");
                    }
                }
            }
        }
        assert_eq!(theta_oracle(0, 0.4, 3, 2).unwrap(), 1.0);
        assert_eq!(theta_oracle(7, 0.0, 3, 2).unwrap(), 1.0);
    }

    #[test]
    fn theta_monotone_and_dominated() {
        for q in [2u32, 3, 5] {
            for &delta in &[0.05, 0.2, 0.4] {
                for k in [1u32, 4] {
                    let mut prev = 1.0;
                    for d in 1..40 {
                        let t = theta(d, delta, q, k).unwrap();
                        assert!(t <= prev + 1e-15);
                        assert!(t <= (1.0 - delta).powi(k as i32) + 1e-15);
                        prev = t;
                    }
                }
            }
        }
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy2(0.5).unwrap(), 1.0);
        assert_eq!(entropy2(0.0).unwrap(), 0.0);
        assert_eq!(entropy2(1.0).unwrap(), 0.0);
        let h = entropyq(0.02, 256).unwrap();
        assert!((h - entropy2(0.02).unwrap() / 8.0).abs() < 1e-15);
        assert!((h - 0.01767).abs() < 2e-5);
        assert!(entropy2(1.2).is_err());
    }

    #[test]
    fn noiseless_thresholds() {
        let c = threshold_noiseless(10, 0.0, 0.1, ThresholdKind::Converse).unwrap();
        assert_eq!(c.value, 0.0);
        let a = threshold_noiseless(1, 0.05, 0.0, ThresholdKind::Achievable).unwrap();
        assert!((a.value - 0.0975).abs() < 1e-12);
        let s = threshold_noiseless(6, 1.0 / 6.0, 0.0, ThresholdKind::Strong).unwrap();
        assert!((s.value - 20.0).abs() < 1e-9);
        for &g in &[0.1, 0.3, 0.7] {
            let lo = threshold_noiseless(20, g, 0.05, ThresholdKind::Converse).unwrap().value;
            let hi = threshold_noiseless(20, g, 0.05, ThresholdKind::Achievable).unwrap().value;
            assert!(lo < hi);
            let lo0 = threshold_noiseless(20, g, 0.0, ThresholdKind::Converse).unwrap().value;
            let hi0 = threshold_noiseless(20, g, 0.0, ThresholdKind::Achievable).unwrap().value;
            assert_eq!(lo0, hi0);
        }
        assert!(threshold_noiseless(4, 0.1, 0.0, ThresholdKind::NoisyDet).is_err());
    }

    #[test]
    fn noisy_det_threshold() {
        let g = 0.05;
        let s0 = threshold_noisy_det(g, 0.0, 2, 0.0).unwrap();
        let manual = 3.0 * g * (1.0 - g / 3.0) / (1.0 - entropy2(1.0 / (3.0 - g)).unwrap());
        assert!((s0 - manual).abs() < 1e-12);
        let mut prev = s0;
        for i in 1..50 {
            let v = threshold_noisy_det(g, i as f64 * 0.005, 256, 0.0).unwrap();
            if i > 1 {
                assert!(v > prev);
            }
            prev = v;
        }
        // q -> infinity drops the entropy correction
        let big = threshold_noisy_det(0.1, 0.1, 65536, 0.0).unwrap();
        let limit = 3.0 * 0.2 * (1.0 - 0.2 / 3.0);
        assert!(big > limit && big - limit < 0.06);
        assert!(threshold_noisy_det(2.0, 1.5, 2, 0.0).is_err());
    }

    #[test]
    fn noisy_converse_values() {
        assert!((alpha_converse_noisy(0.05, 0.02, 2).unwrap() - 0.1136).abs() < 1e-3);
        assert!((alpha_converse_noisy(0.05, 0.02, 256).unwrap() - 0.0993).abs() < 1e-3);
        assert!((alpha_converse_noisy(0.05, 0.0, 2).unwrap() - 0.0975).abs() < 1e-12);
        assert!(alpha_converse_noisy(0.05, 0.6, 2).is_err());
    }

    #[test]
    fn g_function_properties() {
        assert!((g_fun(0.4, 0.0, 0.0, 2).unwrap() - 0.4).abs() < 1e-15);
        assert!(g_fun(0.01, 0.02, 0.05, 2).is_err());
        // continuity in p on a fine grid
        for &alpha in &[0.3, 0.5, 0.9] {
            let mut prev = g_fun(alpha, 0.0, 0.05, 2).unwrap();
            for i in 1..=400 {
                let cur = g_fun(alpha, i as f64 * 1e-4, 0.05, 2).unwrap();
                assert!((cur - prev).abs() < 5e-3);
                prev = cur;
            }
        }
    }

    #[test]
    fn critical_alpha_values() {
        let a2 = critical_alpha(0.02, 0.05, 2, 0.0).unwrap();
        assert!((a2 - 0.32).abs() <= 0.02, "{a2}");
        assert!(g_fun(a2, 0.02, 0.05, 2).unwrap() >= 0.0975);
        let a256 = critical_alpha(0.02, 0.05, 256, 0.0).unwrap();
        assert!((a256 - 0.114).abs() <= 0.01, "{a256}");
        for &p in &[0.0, 0.01, 0.05, 0.1] {
            for &g in &[0.02, 0.05, 0.1] {
                for q in [2u32, 16, 256] {
                    if let Ok(a) = critical_alpha(p, g, q, 0.0) {
                        assert!(a >= alpha_converse_noisy(g, p, q).unwrap() - 1e-9, "p={p} g={g} q={q}");
                    }
                }
            }
        }
        assert!(critical_alpha(0.4, 0.4, 2, 0.0).is_err());
    }

    #[test]
    fn reliability_and_exponents() {
        let g = 0.1;
        let knee = 1.0 - 2.0 * g * (1.0 - g / 2.0);
        assert_eq!(reliability_e(knee + 0.01, g), 0.0);
        assert!((reliability_e(0.3, 0.0) - 0.7).abs() < 1e-15);
        let mut prev = f64::INFINITY;
        for i in 0..=100 {
            let e = reliability_e(i as f64 / 100.0, g);
            assert!(e <= prev);
            prev = e;
        }

        let t = exponents_reference((1.0 - g) * (1.0 - g), g);
        assert_eq!(t.e1_et, 0.0);
        let t = exponents_reference(1.0 - 2.0 * g - 0.01, g);
        assert!(t.e1_gab.is_infinite() && t.e2_gab.is_infinite());
        // rates strictly inside [1 − 2γ, (1 − γ)²)
        let (lo, hi) = (1.0 - 2.0 * g, (1.0 - g) * (1.0 - g));
        for i in 1..100 {
            let r = lo + (hi - lo) * i as f64 / 100.0;
            let t = exponents_reference(r, g);
            assert!(t.e2_rsmr > 0.0);
            assert!(t.e1_rsmr.is_infinite());
            assert_eq!((t.e2_gab, t.e2_et, t.e2_gabet), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn gv_values() {
        assert_eq!(gv_distance(1.0), 0.0);
        assert_eq!(gv_distance(0.0), 1.0);
        assert_eq!(gv_distance(0.25), 0.5);
    }

    #[test]
    fn encr_bounds_sandwich_exact_expectation() {
        let b = encr_bounds(4, 1, 2, 12).unwrap();
        assert!((b.lo() - 0.0078125).abs() < 1e-15 && (b.hi() - 0.125).abs() < 1e-15);
        let e = expected_ncr(4, 1, 2, 12).unwrap();
        assert!((e - 225.0 / 4096.0).abs() < 1e-15);
        assert!(b.lo() <= e && e <= b.hi());
        assert!(encr_bounds(4, 0, 2, 3).is_err());
        for n in 1..=5 {
            for q in [2, 3] {
                for r in 1..=n {
                    for k in 0..=n * n {
                        let b = encr_bounds(n, r, q, k).unwrap();
                        let e = log_q_big(&count_rank_exact(n, r, q).unwrap(), q) - k as f64;
                        assert!(b.log_lo <= e + 1e-12 && e <= b.log_hi + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn error_bound_values() {
        assert!((error_upper_bound(4, 1, 2, 16) - 4.0 * 2f64.powi(-9)).abs() < 1e-18);
        let lo = error_lower_bound(4, 1, 2, 16);
        let manual = 127.0 / 65536.0 / (1.0 + 4.0 / 512.0);
        assert!((lo - manual).abs() < 1e-15);
        assert!(lo < 225.0 / 65536.0 && 225.0 / 65536.0 < error_upper_bound(4, 1, 2, 16));
    }
}

//! Rank-metric codes defined by parity checks.
//!
//! The null space of a sensing operator, `C = {C : ⟨C, H_a⟩ = 0 ∀a}`, is a
//! linear code in the rank metric. This module enumerates small codes and
//! measures their rank spectrum `N_C(r)`, minimum rank distance and
//! strong-recovery property. It also holds the exhaustive micro-world checks
//! behind the error-probability bounds: pairwise independence of the events
//! `A_Z = {𝒜(Z) = 𝒜(X)}` and de Caen's lower bound on a union.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use num_traits::ToPrimitive;

use crate::counting::count_rank_atmost;
use crate::decoder::basis_class_reps;
use crate::ensemble::{sample_sensing, EnsembleSpec, Purpose, TrialStreams};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::matfq::{bits, dot, rref_in_place, solve_affine_raw, AffineSolution, MatFq};

/// Largest code (or candidate set) enumerated.
pub const CODEWORD_CAP: u64 = 1 << 20;

/// The code cut out by `k` parity checks on `n x n` matrices.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    n: usize,
    field: FieldSpec,
    parity_checks: Vec<MatFq>,
    basis: Vec<Vec<Elem>>,
    cached_codewords: OnceLock<Vec<MatFq>>,
}

impl CodeSpec {
    pub fn new(n: usize, field: &FieldSpec, parity_checks: Vec<MatFq>) -> Result<Self> {
        for h in &parity_checks {
            if h.field() != field {
                return Err(Error::FieldMismatch);
            }
            if h.rows() != n || h.cols() != n {
                return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", h.rows(), h.cols())));
            }
        }
        let k = parity_checks.len();
        let width = n * n;
        let data: Vec<Elem> = parity_checks.iter().flat_map(|h| h.as_slice().iter().copied()).collect();
        let AffineSolution::Solution { nullspace, .. } = solve_affine_raw(field, &data, &vec![0; k], k, width) else {
            unreachable!("homogeneous systems are solvable")
        };
        let basis = nullspace.into_iter().map(|v| v.as_slice().to_vec()).collect();
        Ok(CodeSpec { n, field: field.clone(), parity_checks, basis, cached_codewords: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn k(&self) -> usize {
        self.parity_checks.len()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn parity_checks(&self) -> &[MatFq] {
        &self.parity_checks
    }

    /// `n² − stacked_dim(H)`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `|C| = q^dimension`, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.dimension() as u32)
    }

    pub fn contains(&self, c: &MatFq) -> bool {
        c.field() == &self.field
            && c.rows() == self.n
            && c.cols() == self.n
            && self.parity_checks.iter().all(|h| dot(&self.field, h.as_slice(), c.as_slice()) == 0)
    }

    /// All codewords, computed once.
    pub fn codewords(&self) -> Result<&[MatFq]> {
        if let Some(c) = self.cached_codewords.get() {
            return Ok(c);
        }
        let mut out = Vec::new();
        for_each_codeword(self, |c| {
            out.push(MatFq::from_vec(self.n, self.n, c.to_vec(), &self.field).expect("n x n data"));
            ControlFlow::Continue(())
        })?;
        Ok(self.cached_codewords.get_or_init(|| out))
    }
}

/// Visits every codeword as row-major data, starting with zero. Successive
/// codewords differ by one basis vector, as in a base-`q` odometer.
pub fn for_each_codeword(code: &CodeSpec, mut visit: impl FnMut(&[Elem]) -> ControlFlow<()>) -> Result<()> {
    let size = code.size().filter(|&s| s <= CODEWORD_CAP).ok_or_else(|| {
        Error::CapExceeded(format!("code has q^{} codewords, cap is {CODEWORD_CAP}", code.dimension()))
    })?;
    let f = &code.field;
    let q = f.q() as Elem;
    let mut cur = vec![0 as Elem; code.n * code.n];
    let mut digits = vec![0 as Elem; code.dimension()];
    for _ in 0..size {
        if visit(&cur).is_break() {
            return Ok(());
        }
        // adding B_t moves digit t up by one, and from q−1 back to 0
        for (t, b) in code.basis.iter().enumerate() {
            for (c, &v) in cur.iter_mut().zip(b) {
                *c = f.add(*c, v);
            }
            digits[t] += 1;
            if digits[t] < q {
                break;
            }
            digits[t] = 0;
        }
    }
    Ok(())
}

pub fn enumerate_codewords(code: &CodeSpec) -> Result<Vec<MatFq>> {
    code.codewords().map(<[MatFq]>::to_vec)
}

/// Rank of a square matrix given as row-major data.
pub(crate) fn square_rank(f: &FieldSpec, n: usize, data: &[Elem]) -> usize {
    if f.is_binary() && n <= 128 {
        let mut rows: Vec<u128> = data
            .chunks(n)
            .map(|row| row.iter().enumerate().fold(0u128, |acc, (j, &v)| acc | (v as u128) << j))
            .collect();
        bits::rank(&mut rows)
    } else {
        let mut scratch = data.to_vec();
        rref_in_place(f, &mut scratch, n, n).len()
    }
}

/// `N_C(r)` for every `r = 0..=n`.
pub fn rank_spectrum(code: &CodeSpec) -> Result<Vec<u64>> {
    let mut spectrum = vec![0u64; code.n + 1];
    for_each_codeword(code, |c| {
        spectrum[square_rank(&code.field, code.n, c)] += 1;
        ControlFlow::Continue(())
    })?;
    Ok(spectrum)
}

/// Number of codewords of rank exactly `r`.
pub fn ncr_count(code: &CodeSpec, r: usize) -> Result<u64> {
    let spectrum = rank_spectrum(code)?;
    Ok(spectrum.get(r).copied().unwrap_or(0))
}

/// Minimum rank over nonzero codewords. The trivial code has no distance.
pub fn min_rank_distance(code: &CodeSpec) -> Result<usize> {
    if code.dimension() == 0 {
        return Err(Error::invalid("the trivial code {0} has no minimum distance"));
    }
    let mut best = usize::MAX;
    for_each_codeword(code, |c| {
        if c.iter().any(|&v| v != 0) {
            best = best.min(square_rank(&code.field, code.n, c));
            if best == 1 {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

/// `R_n = (n² − k)/n²`.
pub fn code_rate(n: usize, k: usize) -> Result<f64> {
    let nn = n * n;
    if n == 0 || k > nn {
        return Err(Error::invalid(format!("need n >= 1 and k <= n², got n = {n}, k = {k}")));
    }
    Ok(1.0 - k as f64 / nn as f64)
}

/// True iff no nonzero codeword has rank at most `2r`, so that every matrix
/// of rank at most `r` is the unique min-rank solution of its measurements.
pub fn strong_recovery_check(code: &CodeSpec, r: usize) -> Result<bool> {
    let mut ok = true;
    for_each_codeword(code, |c| {
        if c.iter().any(|&v| v != 0) && square_rank(&code.field, code.n, c) <= 2 * r {
            ok = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    Ok(ok)
}

/// Every `n x n` matrix of rank at most `r`, zero first and then by rank.
/// Rank-`ρ` matrices are built as `U Vᵀ` with `U` running over basis-class
/// representatives and `V` over full-rank `n x ρ` matrices, which hits each
/// matrix exactly once.
pub fn low_rank_matrices(n: usize, r: usize, field: &FieldSpec) -> Result<Vec<MatFq>> {
    let r = r.min(n);
    let total = count_rank_atmost(n as u32, r as u32, field.q())?;
    if total.to_u64().filter(|&t| t <= CODEWORD_CAP).is_none() {
        return Err(Error::CapExceeded(format!("{total} matrices of rank <= {r}")));
    }
    let q = field.q() as u64;
    let mut out = vec![MatFq::zeros(n, n, field)];
    for rho in 1..=r {
        let vs: Vec<MatFq> = (0..q.pow((n * rho) as u32))
            .filter_map(|code| {
                let mut data = vec![0 as Elem; n * rho];
                let mut c = code;
                for v in data.iter_mut() {
                    *v = (c % q) as Elem;
                    c /= q;
                }
                let v = MatFq::from_vec(n, rho, data, field).expect("n x rho data");
                (v.rank() == rho).then(|| v.transpose())
            })
            .collect();
        for u in basis_class_reps(n, rho, field)? {
            for vt in &vs {
                out.push(u.matmul(vt)?);
            }
        }
    }
    Ok(out)
}

/// de Caen's bound `P(∪ B_m) ≥ Σ_m P(B_m)² / Σ_m′ P(B_m ∩ B_m′)`.
pub fn de_caen_bound(event_probs: &[f64], pair_probs: &[Vec<f64>]) -> Result<f64> {
    let m = event_probs.len();
    if pair_probs.len() != m || pair_probs.iter().any(|row| row.len() != m) {
        return Err(Error::dims(format!("{m}x{m} pair probabilities"), "a different shape"));
    }
    let in_unit = |p: f64| (0.0..=1.0).contains(&p);
    for i in 0..m {
        if !in_unit(event_probs[i]) || pair_probs[i].iter().any(|&p| !in_unit(p)) {
            return Err(Error::invalid("probabilities must lie in [0, 1]"));
        }
        if (pair_probs[i][i] - event_probs[i]).abs() > 1e-12 {
            return Err(Error::invalid(format!("pair_probs[{i}][{i}] differs from event_probs[{i}]")));
        }
        for j in 0..i {
            if (pair_probs[i][j] - pair_probs[j][i]).abs() > 1e-12 {
                return Err(Error::invalid("pair probabilities must be symmetric"));
            }
        }
    }
    let mut bound = 0.0;
    for (i, &p) in event_probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let denom: f64 = pair_probs[i].iter().sum();
        if denom <= 0.0 {
            return Err(Error::invalid(format!("event {i} has positive probability but zero denominator")));
        }
        bound += p * p / denom;
    }
    Ok(bound.min(1.0))
}

/// Every `k`-tuple of `n x n` sensing matrices, as indices into the list of
/// all `q^{n²}` matrices.
struct Worlds {
    matrices: Vec<Vec<Elem>>,
    k: usize,
    count: u64,
}

impl Worlds {
    fn new(n: usize, q: u32, k: usize) -> Result<Self> {
        let per = (q as u64).checked_pow((n * n) as u32);
        let count = per.and_then(|p| p.checked_pow(k as u32)).filter(|&c| c <= CODEWORD_CAP);
        let (Some(per), Some(count)) = (per, count) else {
            return Err(Error::CapExceeded(format!("q^(k n²) sensing worlds exceed {CODEWORD_CAP}")));
        };
        let matrices = (0..per)
            .map(|code| {
                let mut c = code;
                (0..n * n)
                    .map(|_| {
                        let v = (c % q as u64) as Elem;
                        c /= q as u64;
                        v
                    })
                    .collect()
            })
            .collect();
        Ok(Worlds { matrices, k, count })
    }

    /// Number of worlds in which every sensing matrix satisfies `pred`,
    /// given as a per-matrix table.
    fn count_all(&self, ok: &[bool]) -> u64 {
        let per = self.matrices.len() as u64;
        let mut hits = 0;
        for world in 0..self.count {
            let mut w = world;
            let mut all = true;
            for _ in 0..self.k {
                if !ok[(w % per) as usize] {
                    all = false;
                    break;
                }
                w /= per;
            }
            hits += all as u64;
        }
        hits
    }

    fn annihilates(&self, f: &FieldSpec, z: &[Elem]) -> Vec<bool> {
        self.matrices.iter().map(|h| dot(f, h, z) == 0).collect()
    }
}

/// Exact counts for one pair of difference matrices over all sensing worlds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCounts {
    pub worlds: u64,
    pub hits_z: u64,
    pub hits_z2: u64,
    pub hits_joint: u64,
}

/// Counts worlds with `𝒜(Z) = 0`, `𝒜(Z′) = 0` and both. Since
/// `A_Z` depends on `Z − X` only, these are the event counts for any `X`
/// with `Z − X` and `Z′ − X` in place of `Z` and `Z′`.
pub fn pairwise_event_counts(k: usize, z: &MatFq, z2: &MatFq) -> Result<PairCounts> {
    if z.field() != z2.field() {
        return Err(Error::FieldMismatch);
    }
    if z.rows() != z.cols() || z.rows() != z2.rows() || z2.rows() != z2.cols() {
        return Err(Error::invalid("Z and Z′ must be square of the same size"));
    }
    let f = z.field();
    let worlds = Worlds::new(z.rows(), f.q(), k)?;
    let a = worlds.annihilates(f, z.as_slice());
    let b = worlds.annihilates(f, z2.as_slice());
    let both: Vec<bool> = a.iter().zip(&b).map(|(&x, &y)| x && y).collect();
    Ok(PairCounts {
        worlds: worlds.count,
        hits_z: worlds.count_all(&a),
        hits_z2: worlds.count_all(&b),
        hits_joint: worlds.count_all(&both),
    })
}

/// Outcome of the exhaustive pairwise-independence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseReport {
    pub n: usize,
    pub q: u32,
    pub k: usize,
    pub worlds: u64,
    /// Linearly independent pairs `{Z, Z′}` checked.
    pub pairs_checked: u64,
    /// Pairs skipped because `Z′` is a multiple of `Z` (none when q = 2).
    pub dependent_pairs: u64,
    /// Every `Z ≠ 0` has `P(A_Z) = q^{−k}` exactly.
    pub single_exact: bool,
    /// Every checked pair has `P(A_Z ∩ A_Z′) = q^{−2k}` exactly.
    pub joint_exact: bool,
}

impl PairwiseReport {
    pub fn passed(&self) -> bool {
        self.single_exact && self.joint_exact
    }
}

/// Exhaustive check over all `q^{kn²}` sensing worlds with `X = 0`.
pub fn pairwise_independence_check(n: usize, q: u32, k: usize) -> Result<PairwiseReport> {
    let f = FieldSpec::with_order(q)?;
    let worlds = Worlds::new(n, q, k)?;
    let qk = (q as u64).pow(k as u32);
    let nonzero: Vec<&Vec<Elem>> = worlds.matrices.iter().skip(1).collect();
    let tables: Vec<Vec<bool>> = nonzero.iter().map(|z| worlds.annihilates(&f, z)).collect();
    let single_exact = tables.iter().all(|t| worlds.count_all(t) * qk == worlds.count);
    let mut report = PairwiseReport {
        n,
        q,
        k,
        worlds: worlds.count,
        pairs_checked: 0,
        dependent_pairs: 0,
        single_exact,
        joint_exact: true,
    };
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            let mut stacked: Vec<Elem> = nonzero[i].to_vec();
            stacked.extend_from_slice(nonzero[j]);
            if rref_in_place(&f, &mut stacked, 2, n * n).len() < 2 {
                report.dependent_pairs += 1;
                continue;
            }
            report.pairs_checked += 1;
            let both: Vec<bool> = tables[i].iter().zip(&tables[j]).map(|(&a, &b)| a && b).collect();
            if worlds.count_all(&both) * qk * qk != worlds.count {
                report.joint_exact = false;
            }
        }
    }
    Ok(report)
}

/// Monte Carlo estimate for one random pair of linearly independent `Z, Z′`
/// under the uniform ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseMcReport {
    pub trials: u64,
    pub counts: PairCounts,
    pub expected_single: f64,
    pub expected_joint: f64,
    /// Largest deviation from the expected rate, in binomial standard deviations.
    pub max_sd: f64,
}

pub fn pairwise_independence_mc(n: usize, q: u32, k: usize, trials: u64, seed: u64) -> Result<PairwiseMcReport> {
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    let f = FieldSpec::with_order(q)?;
    let streams = TrialStreams::new(seed);
    let spec = EnsembleSpec::uniform(q);
    // draw Z, Z′ from the auxiliary stream until they are independent
    let mut aux = streams.rng(0, Purpose::Aux);
    let (z, z2) = loop {
        let pair = sample_sensing(n, 2, &spec, &f, &mut aux)?;
        let mut stacked: Vec<Elem> = pair.iter().flat_map(|m| m.as_slice().iter().copied()).collect();
        if rref_in_place(&f, &mut stacked, 2, n * n).len() == 2 {
            break (pair[0].clone(), pair[1].clone());
        }
    };
    let mut counts = PairCounts { worlds: trials, hits_z: 0, hits_z2: 0, hits_joint: 0 };
    for t in 0..trials {
        let hs = sample_sensing(n, k, &spec, &f, &mut streams.rng(t, Purpose::Sensing))?;
        let a = hs.iter().all(|h| dot(&f, h.as_slice(), z.as_slice()) == 0);
        let b = hs.iter().all(|h| dot(&f, h.as_slice(), z2.as_slice()) == 0);
        counts.hits_z += a as u64;
        counts.hits_z2 += b as u64;
        counts.hits_joint += (a && b) as u64;
    }
    let expected_single = (q as f64).powi(-(k as i32));
    let expected_joint = expected_single * expected_single;
    let sd = |hits: u64, p: f64| {
        let var = trials as f64 * p * (1.0 - p);
        if var == 0.0 {
            0.0
        } else {
            (hits as f64 - trials as f64 * p).abs() / var.sqrt()
        }
    };
    let max_sd = sd(counts.hits_z, expected_single)
        .max(sd(counts.hits_z2, expected_single))
        .max(sd(counts.hits_joint, expected_joint));
    Ok(PairwiseMcReport { trials, counts, expected_single, expected_joint, max_sd })
}

/// de Caen's bound next to the exact error probability in a micro world.
#[derive(Clone, Debug, PartialEq)]
pub struct DeCaenComparison {
    /// Misleading candidates: `Z ≠ X` with `rank(Z) ≤ rank(X)`.
    pub events: usize,
    pub bound: f64,
    pub exact_union: f64,
}

/// Enumerates every `k`-tuple of sensing matrices to get `P(A_Z)`,
/// `P(A_Z ∩ A_Z′)` and the exact `P(∪ A_Z)` over misleading `Z`.
pub fn de_caen_exhaustive(x: &MatFq, k: usize) -> Result<DeCaenComparison> {
    let f = x.field();
    let n = x.rows();
    if x.cols() != n {
        return Err(Error::invalid("X must be square"));
    }
    let worlds = Worlds::new(n, f.q(), k)?;
    let diffs: Vec<Vec<Elem>> = low_rank_matrices(n, x.rank(), f)?
        .into_iter()
        .filter(|z| z != x)
        .map(|z| z.as_slice().iter().zip(x.as_slice()).map(|(&a, &b)| f.sub(a, b)).collect())
        .collect();
    let tables: Vec<Vec<bool>> = diffs.iter().map(|d| worlds.annihilates(f, d)).collect();
    let total = worlds.count as f64;
    let probs: Vec<f64> = tables.iter().map(|t| worlds.count_all(t) as f64 / total).collect();
    let pairs: Vec<Vec<f64>> = tables
        .iter()
        .map(|a| {
            tables
                .iter()
                .map(|b| {
                    let both: Vec<bool> = a.iter().zip(b).map(|(&x, &y)| x && y).collect();
                    worlds.count_all(&both) as f64 / total
                })
                .collect()
        })
        .collect();
    // the union holds in a world iff some sensing tuple annihilates a difference
    let per = worlds.matrices.len() as u64;
    let mut union_hits = 0u64;
    for world in 0..worlds.count {
        let idx: Vec<usize> = (0..k).map(|a| ((world / per.pow(a as u32)) % per) as usize).collect();
        union_hits += tables.iter().any(|t| idx.iter().all(|&i| t[i])) as u64;
    }
    Ok(DeCaenComparison { events: diffs.len(), bound: de_caen_bound(&probs, &pairs)?, exact_union: union_hits as f64 / total })
}

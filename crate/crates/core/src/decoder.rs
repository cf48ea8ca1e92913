//! Min-rank decoding.
//!
//! Three decoders share one [`Instance`]:
//!
//! - [`minrank_oracle`] enumerates every `n x n` matrix. Only usable for tiny
//!   `n`, and serves as ground truth.
//! - [`minrank_reduced`] grows the rank `r = 0, 1, 2, ...`. For each rank it
//!   walks one basis `U` per column space (reduced column echelon forms), and
//!   the constraints `⟨H_a, U Vᵀ⟩ = y_a` become linear in the coefficient
//!   matrix `V`. The first rank with a solution is the minimum, and
//!   minimizers are counted across all classes to tell a unique answer from
//!   an ambiguous one.
//! - [`minrank_noisy`] minimizes `rank(X) + λ‖w‖₀` by enumerating noise
//!   supports and patterns in increasing weight and decoding the corrected
//!   syndrome.
//!
//! Over GF(2) the reduced search packs each linear system into `u128` rows.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::matfq::{bits, solve_affine_raw, AffineSolution, MatFq, VecFq};

/// Default cap on the noise weight explored by [`minrank_noisy`].
pub const DEFAULT_MAX_NOISE_WEIGHT: usize = 3;

/// Largest search space [`minrank_oracle`] accepts.
pub const ORACLE_MAX_MATRICES: u64 = 1 << 24;

const OBJ_TOL: f64 = 1e-9;

/// A sensing operator `H_1..H_k` on `n x n` matrices together with its
/// measurement vector.
#[derive(Clone, Debug)]
pub struct Instance {
    n: usize,
    field: FieldSpec,
    hs: Vec<MatFq>,
    y: VecFq,
}

impl Instance {
    pub fn new(n: usize, hs: Vec<MatFq>, y: VecFq) -> Result<Self> {
        let field = y.field().clone();
        if hs.len() != y.len() {
            return Err(Error::dims(format!("{} measurements", hs.len()), format!("{} measurements", y.len())));
        }
        for h in &hs {
            if h.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if h.rows() != n || h.cols() != n {
                return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", h.rows(), h.cols())));
            }
        }
        Ok(Instance { n, field, hs, y })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.hs.len()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn sensing(&self) -> &[MatFq] {
        &self.hs
    }

    pub fn y(&self) -> &VecFq {
        &self.y
    }

    /// Whether `x` (with optional noise `w`) satisfies every constraint.
    pub fn is_consistent(&self, x: &MatFq, w: Option<&VecFq>) -> bool {
        let f = &self.field;
        self.hs.iter().enumerate().all(|(a, h)| {
            let v = crate::matfq::dot(f, h.as_slice(), x.as_slice());
            let v = w.map_or(v, |w| f.add(v, w.get(a)));
            v == self.y.get(a)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    /// Exactly one minimizer.
    Unique,
    /// Two or more minimizers.
    Ambiguous,
    /// No feasible point, or a search cap prevented certification.
    Infeasible,
}

impl DecodeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DecodeStatus::Unique => "unique",
            DecodeStatus::Ambiguous => "ambiguous",
            DecodeStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    /// The minimizer, set only when the status is `Unique`.
    pub x_star: Option<MatFq>,
    /// Estimated noise for the regularized decoder, set only when `Unique`.
    pub w_star: Option<VecFq>,
    pub achieved_rank: usize,
    pub achieved_noise_weight: usize,
    /// Candidate matrices (oracle) or linear systems (reduced search) visited.
    pub solutions_examined: u64,
}

impl DecodeOutcome {
    fn infeasible(examined: u64) -> Self {
        DecodeOutcome {
            status: DecodeStatus::Infeasible,
            x_star: None,
            w_star: None,
            achieved_rank: 0,
            achieved_noise_weight: 0,
            solutions_examined: examined,
        }
    }
}

fn decode_index(mut code: u64, q: u64, out: &mut [Elem]) {
    for v in out.iter_mut() {
        *v = (code % q) as Elem;
        code /= q;
    }
}

/// Exhaustive min-rank decoder over all `q^{n²}` matrices, optionally only
/// those of rank at most `r_cap`.
pub fn minrank_oracle(inst: &Instance, r_cap: Option<usize>) -> Result<DecodeOutcome> {
    let n = inst.n;
    let f = &inst.field;
    let q = f.q() as u64;
    let total = q
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= ORACLE_MAX_MATRICES)
        .ok_or_else(|| Error::CapExceeded(format!("oracle search over GF({q})^({n}x{n}) is too large")))?;
    let cap = r_cap.unwrap_or(n);
    let mut buf = vec![0 as Elem; n * n];
    let mut best_rank = usize::MAX;
    let mut count = 0u64;
    let mut first: Option<MatFq> = None;
    for code in 0..total {
        decode_index(code, q, &mut buf);
        let feasible = inst
            .hs
            .iter()
            .enumerate()
            .all(|(a, h)| crate::matfq::dot(f, h.as_slice(), &buf) == inst.y.get(a));
        if !feasible {
            continue;
        }
        let x = MatFq::from_vec(n, n, buf.clone(), f)?;
        let rank = x.rank();
        if rank > cap {
            continue;
        }
        if rank < best_rank {
            best_rank = rank;
            count = 1;
            first = Some(x);
        } else if rank == best_rank {
            count += 1;
        }
    }
    if count == 0 {
        return Ok(DecodeOutcome::infeasible(total));
    }
    Ok(DecodeOutcome {
        status: if count == 1 { DecodeStatus::Unique } else { DecodeStatus::Ambiguous },
        x_star: (count == 1).then(|| first.unwrap()),
        w_star: None,
        achieved_rank: best_rank,
        achieved_noise_weight: 0,
        solutions_examined: total,
    })
}

/// Appends each measurement to its vectorized sensing matrix,
/// `[vect(H_a); y_a]`, turning `⟨H_a, X⟩ = y_a` into the homogeneous system
/// `⟨[vect(H_a); y_a], [vect(X₁); x₂]⟩ = 0` over `n² + 1` unknowns.
///
/// Note the sign: a solution with `x₂ = c ≠ 0` satisfies `⟨H_a, X₁⟩ = −c y_a`,
/// so [`coset_recover`] returns `−c⁻¹ X₁`. In characteristic 2 this is the
/// familiar `c⁻¹ X₁`.
pub fn coset_augment(y: &VecFq, hs: &[MatFq]) -> Result<Vec<VecFq>> {
    if y.len() != hs.len() {
        return Err(Error::dims(hs.len(), y.len()));
    }
    hs.iter()
        .enumerate()
        .map(|(a, h)| {
            if h.field() != y.field() {
                return Err(Error::FieldMismatch);
            }
            let mut v = h.as_slice().to_vec();
            v.push(y.get(a));
            VecFq::from_vec(v, y.field())
        })
        .collect()
}

/// Recovery rule for a solution `[vect(X₁); x₂]` of the augmented system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetSolution {
    /// `x₂ = 0`: `X₁` lies in the null space of the sensing operator.
    Homogeneous(MatFq),
    /// `x₂ ≠ 0`: the rescaled `X₁` satisfies the original constraints.
    Affine(MatFq),
}

pub fn coset_recover(solution: &VecFq, rows: usize, cols: usize) -> Result<CosetSolution> {
    if solution.len() != rows * cols + 1 {
        return Err(Error::dims(rows * cols + 1, solution.len()));
    }
    let f = solution.field();
    let x1 = MatFq::from_vec(rows, cols, solution.as_slice()[..rows * cols].to_vec(), f)?;
    let x2 = solution.get(rows * cols);
    if x2 == 0 {
        Ok(CosetSolution::Homogeneous(x1))
    } else {
        Ok(CosetSolution::Affine(x1.scale(f.neg(f.inv(x2)?))))
    }
}

/// One representative per `r`-dimensional column space of GF(q)^N: the
/// reduced column echelon forms. Column `l` has a one at its pivot row `p_l`,
/// zeros above it and at the other pivot rows, and free entries elsewhere
/// below. The count is the Gaussian binomial `[N choose r]_q`.
pub struct BasisClassReps {
    big_n: usize,
    r: usize,
    field: FieldSpec,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<Elem>,
    done: bool,
}

/// Iterator over basis-class representatives, see [`BasisClassReps`].
pub fn basis_class_reps(big_n: usize, r: usize, field: &FieldSpec) -> Result<BasisClassReps> {
    if r == 0 || r > big_n {
        return Err(Error::invalid(format!("need 1 <= r <= N, got r = {r}, N = {big_n}")));
    }
    let mut it = BasisClassReps {
        big_n,
        r,
        field: field.clone(),
        pivots: (0..r).collect(),
        free: Vec::new(),
        digits: Vec::new(),
        done: false,
    };
    it.reset_free();
    Ok(it)
}

impl BasisClassReps {
    fn reset_free(&mut self) {
        let is_pivot = |i: usize| self.pivots.contains(&i);
        self.free = (0..self.r)
            .flat_map(|l| ((self.pivots[l] + 1)..self.big_n).filter(|&i| !is_pivot(i)).map(move |i| (i, l)))
            .collect();
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, r) = (self.big_n, self.r);
        let mut i = r;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - r + i {
                self.pivots[i] += 1;
                for j in i + 1..r {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    /// Current representative as a list of columns.
    fn columns(&self) -> Vec<Vec<Elem>> {
        let mut cols = vec![vec![0 as Elem; self.big_n]; self.r];
        for (l, &p) in self.pivots.iter().enumerate() {
            cols[l][p] = 1;
        }
        for (&(i, l), &d) in self.free.iter().zip(&self.digits) {
            cols[l][i] = d;
        }
        cols
    }

    fn advance(&mut self) {
        let q = self.field.q() as Elem;
        for d in self.digits.iter_mut() {
            if *d + 1 < q {
                *d += 1;
                return;
            }
            *d = 0;
        }
        if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }

    fn next_columns(&mut self) -> Option<Vec<Vec<Elem>>> {
        if self.done {
            return None;
        }
        let cols = self.columns();
        self.advance();
        Some(cols)
    }
}

impl Iterator for BasisClassReps {
    type Item = MatFq;

    fn next(&mut self) -> Option<MatFq> {
        let cols = self.next_columns()?;
        let mut m = MatFq::zeros(self.big_n, self.r, &self.field);
        for (l, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, l, v);
            }
        }
        Some(m)
    }
}

/// Minimizers found at one rank.
struct RankSearch {
    rank: usize,
    /// Number of minimizers, saturated at the requested limit.
    count: u64,
    solutions: Vec<MatFq>,
    examined: u64,
}

/// Precomputed form of the sensing operator used by the reduced search.
enum Kernel {
    Generic,
    /// `table[a << n | u]` is the bit mask of `H_aᵀ u` for `u ∈ GF(2)^n`.
    Binary { table: Vec<u16> },
}

const BINARY_MAX_N: usize = 11;

impl Kernel {
    fn build(inst: &Instance) -> Kernel {
        let n = inst.n;
        if !inst.field.is_binary() || n > BINARY_MAX_N || n == 0 {
            return Kernel::Generic;
        }
        let size = 1usize << n;
        let mut table = vec![0u16; inst.k() * size];
        for (a, h) in inst.hs.iter().enumerate() {
            let rows: Vec<u16> = (0..n)
                .map(|i| h.row(i).iter().enumerate().fold(0u16, |acc, (j, &v)| acc | (v << j)))
                .collect();
            let base = a * size;
            for u in 1..size {
                let low = u.trailing_zeros() as usize;
                table[base + u] = table[base + (u & (u - 1))] ^ rows[low];
            }
        }
        Kernel::Binary { table }
    }
}

/// Searches rank `r` for matrices `X = U Vᵀ` with `⟨H_a, X⟩ = y_a`, stopping
/// once `limit` solutions are known.
fn search_rank(inst: &Instance, kernel: &Kernel, y: &[Elem], r: usize, limit: u64) -> RankSearch {
    let n = inst.n;
    let f = &inst.field;
    let k = inst.k();
    let nvars = n * r;
    let mut out = RankSearch { rank: r, count: 0, solutions: Vec::new(), examined: 0 };
    let mut reps = basis_class_reps(n, r, f).expect("1 <= r <= n");

    let on_solution = |out: &mut RankSearch, u: &[Vec<Elem>], particular: &[Elem], alt: Option<Vec<Elem>>, nullity: usize| {
        let qpow = (f.q() as u64).checked_pow(nullity as u32).unwrap_or(u64::MAX);
        out.count = out.count.saturating_add(qpow);
        for v in std::iter::once(particular.to_vec()).chain(alt) {
            if (out.solutions.len() as u64) < limit {
                out.solutions.push(compose(f, n, u, &v));
            }
        }
        if out.count >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };

    match kernel {
        Kernel::Binary { table } if nvars < 128 => {
            let size = 1usize << n;
            let mut rows = vec![0u128; k];
            while let Some(u) = reps.next_columns() {
                out.examined += 1;
                let masks: Vec<usize> =
                    u.iter().map(|col| col.iter().enumerate().fold(0usize, |acc, (i, &v)| acc | ((v as usize) << i))).collect();
                for (a, row) in rows.iter_mut().enumerate() {
                    let mut acc = (y[a] as u128) << nvars;
                    for (l, &m) in masks.iter().enumerate() {
                        acc |= (table[a * size + m] as u128) << (l * n);
                    }
                    *row = acc;
                }
                let want_basis = out.count + 1 < limit;
                let Some(sol) = bits::solve_with(&mut rows, nvars, want_basis) else {
                    continue;
                };
                let unpack = |bitsv: u128| (0..nvars).map(|t| (bitsv >> t & 1) as Elem).collect::<Vec<_>>();
                let particular = unpack(sol.particular);
                let alt = (want_basis && !sol.nullspace.is_empty()).then(|| unpack(sol.particular ^ sol.nullspace[0]));
                if on_solution(&mut out, &u, &particular, alt, sol.nullspace.len()).is_break() {
                    break;
                }
            }
        }
        _ => {
            let mut coeffs = vec![0 as Elem; k * nvars];
            while let Some(u) = reps.next_columns() {
                out.examined += 1;
                // coefficient of v_{l,j} in equation a is Σ_i H_a[i,j] u_{l,i}
                for (a, h) in inst.hs.iter().enumerate() {
                    let row = &mut coeffs[a * nvars..(a + 1) * nvars];
                    row.iter_mut().for_each(|c| *c = 0);
                    for (l, col) in u.iter().enumerate() {
                        for (i, &ui) in col.iter().enumerate() {
                            if ui == 0 {
                                continue;
                            }
                            for j in 0..n {
                                let idx = l * n + j;
                                row[idx] = f.mul_add(row[idx], h.get(i, j), ui);
                            }
                        }
                    }
                }
                let AffineSolution::Solution { particular, nullspace } = solve_affine_raw(f, &coeffs, y, k, nvars) else {
                    continue;
                };
                let alt = nullspace.first().map(|v| {
                    particular.as_slice().iter().zip(v.as_slice()).map(|(&a, &b)| f.add(a, b)).collect::<Vec<_>>()
                });
                if on_solution(&mut out, &u, particular.as_slice(), alt, nullspace.len()).is_break() {
                    break;
                }
            }
        }
    }
    out
}

/// `X = Σ_l u_l v_lᵀ`, with `v` laid out as `v[l * n + j]`.
fn compose(f: &FieldSpec, n: usize, u: &[Vec<Elem>], v: &[Elem]) -> MatFq {
    let mut x = MatFq::zeros(n, n, f);
    for (l, col) in u.iter().enumerate() {
        for (i, &ui) in col.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for j in 0..n {
                let vj = v[l * n + j];
                if vj != 0 {
                    x.set(i, j, f.mul_add(x.get(i, j), ui, vj));
                }
            }
        }
    }
    x
}

/// Smallest rank `≤ max_rank` admitting a solution for syndrome `y`.
fn search_min_rank(inst: &Instance, kernel: &Kernel, y: &[Elem], max_rank: usize, limit: u64) -> (Option<RankSearch>, u64) {
    let mut examined = 0;
    if y.iter().all(|&v| v == 0) {
        let zero = MatFq::zeros(inst.n, inst.n, &inst.field);
        return (Some(RankSearch { rank: 0, count: 1, solutions: vec![zero], examined: 0 }), 0);
    }
    for r in 1..=max_rank.min(inst.n) {
        let found = search_rank(inst, kernel, y, r, limit);
        examined += found.examined;
        if found.count > 0 {
            return (Some(found), examined);
        }
    }
    (None, examined)
}

/// Min-rank decoding by rank-by-rank search over basis classes.
pub fn minrank_reduced(inst: &Instance) -> DecodeOutcome {
    let kernel = Kernel::build(inst);
    let (found, examined) = search_min_rank(inst, &kernel, inst.y.as_slice(), inst.n, 2);
    match found {
        None => DecodeOutcome::infeasible(examined),
        Some(s) => {
            let unique = s.count == 1;
            // minimizers at the minimum rank are pairwise distinct; the check
            // below guards that invariant
            debug_assert!(s.solutions.len() < 2 || s.solutions[0] != s.solutions[1]);
            DecodeOutcome {
                status: if unique { DecodeStatus::Unique } else { DecodeStatus::Ambiguous },
                x_star: unique.then(|| s.solutions.into_iter().next().unwrap()),
                w_star: None,
                achieved_rank: s.rank,
                achieved_noise_weight: 0,
                solutions_examined: examined,
            }
        }
    }
}

/// Options for [`minrank_noisy`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoisyOptions {
    /// Regularization weight on `‖w‖₀`.
    pub lambda: f64,
    /// Largest noise weight enumerated.
    pub max_noise_weight: usize,
}

impl NoisyOptions {
    /// `λ = 1/n` with the default weight cap.
    pub fn for_size(n: usize) -> Self {
        NoisyOptions { lambda: 1.0 / n as f64, max_noise_weight: DEFAULT_MAX_NOISE_WEIGHT }
    }
}

/// Calls `visit` with every noise vector of weight `s` on `k` positions, in
/// lexicographic order of (support, value pattern).
fn for_each_noise(k: usize, s: usize, q: u32, mut visit: impl FnMut(&[usize], &[Elem])) {
    if s > k {
        return;
    }
    let mut support: Vec<usize> = (0..s).collect();
    loop {
        let mut values = vec![1 as Elem; s];
        loop {
            visit(&support, &values);
            let mut t = s;
            let mut carried = true;
            while t > 0 {
                t -= 1;
                if (values[t] as u32) + 1 < q {
                    values[t] += 1;
                    carried = false;
                    break;
                }
                values[t] = 1;
            }
            if carried {
                break;
            }
        }
        let mut i = s;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if support[i] < k - s + i {
                support[i] += 1;
                for j in i + 1..s {
                    support[j] = support[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return;
        }
    }
}

/// Regularized min-rank decoder: minimizes `rank(X̃) + λ‖w̃‖₀` subject to
/// `⟨H_a, X̃⟩ + w̃_a = y_a`.
///
/// Noise weights `s = 0, 1, ...` are explored in order while `λs` does not
/// exceed the best objective. Within a weight, supports and nonzero patterns
/// go in lexicographic order, and each corrected syndrome is decoded with the
/// rank capped so that only competitive candidates are searched.
///
/// Weights above `max_noise_weight` are not enumerated. Apart from
/// `X̃ = 0`, which is checked directly, such candidates cost at least
/// `1 + λ(cap + 1)`. When the best objective reaches that bound the result
/// cannot be certified and the status is `Infeasible`.
pub fn minrank_noisy(inst: &Instance, opts: NoisyOptions) -> Result<DecodeOutcome> {
    if !(opts.lambda > 0.0) {
        return Err(Error::invalid("lambda must be positive"));
    }
    let f = &inst.field;
    let k = inst.k();
    let kernel = Kernel::build(inst);
    let cap = opts.max_noise_weight.min(k);

    let mut best = f64::INFINITY;
    let mut count = 0u64;
    let mut winner: Option<(MatFq, VecFq, usize)> = None;
    let mut examined = 0u64;
    let mut consider = |obj: f64, c: u64, x: Option<MatFq>, w: &[Elem], rank: usize, best: &mut f64, count: &mut u64| {
        if obj < *best - OBJ_TOL {
            *best = obj;
            *count = c;
            winner = x.map(|x| (x, VecFq::from_vec(w.to_vec(), f).unwrap(), rank));
        } else if (obj - *best).abs() <= OBJ_TOL {
            *count = count.saturating_add(c);
        }
    };

    let y = inst.y.as_slice();
    let mut corrected = vec![0 as Elem; k];
    let mut noise = vec![0 as Elem; k];
    for s in 0..=cap {
        let penalty = opts.lambda * s as f64;
        if penalty > best + OBJ_TOL {
            break;
        }
        for_each_noise(k, s, f.q(), |support, values| {
            let budget = best - penalty;
            if budget < -OBJ_TOL {
                return;
            }
            let max_rank = if budget.is_finite() { (budget + OBJ_TOL).floor() as usize } else { inst.n };
            noise.iter_mut().for_each(|v| *v = 0);
            for (&i, &v) in support.iter().zip(values) {
                noise[i] = v;
            }
            for a in 0..k {
                corrected[a] = f.sub(y[a], noise[a]);
            }
            let (found, ex) = search_min_rank(inst, &kernel, &corrected, max_rank, 2);
            examined += ex.max(1);
            if let Some(sr) = found {
                let obj = sr.rank as f64 + penalty;
                let x = sr.solutions.into_iter().next();
                consider(obj, sr.count, x, &noise, sr.rank, &mut best, &mut count);
            }
        });
    }

    // X̃ = 0 with w̃ = y, when its weight lies beyond the enumerated range
    let wy = inst.y.hamming_weight();
    if wy > cap {
        let zero = MatFq::zeros(inst.n, inst.n, f);
        consider(opts.lambda * wy as f64, 1, Some(zero), y, 0, &mut best, &mut count);
    }

    if cap < k && best >= 1.0 + opts.lambda * (cap + 1) as f64 - OBJ_TOL {
        return Ok(DecodeOutcome::infeasible(examined));
    }
    if count == 0 {
        return Ok(DecodeOutcome::infeasible(examined));
    }
    let (x, w, rank) = winner.expect("a minimizer was recorded");
    let unique = count == 1;
    Ok(DecodeOutcome {
        status: if unique { DecodeStatus::Unique } else { DecodeStatus::Ambiguous },
        achieved_noise_weight: w.hamming_weight(),
        achieved_rank: rank,
        x_star: unique.then_some(x),
        w_star: unique.then_some(w),
        solutions_examined: examined,
    })
}

/// Exhaustive joint minimizer of `rank(X̃) + λ‖y − 𝒜(X̃)‖₀` over every
/// `n x n` matrix.
pub fn minrank_noisy_oracle(inst: &Instance, lambda: f64) -> Result<DecodeOutcome> {
    let n = inst.n;
    let f = &inst.field;
    let q = f.q() as u64;
    let total = q
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= ORACLE_MAX_MATRICES)
        .ok_or_else(|| Error::CapExceeded(format!("oracle search over GF({q})^({n}x{n}) is too large")))?;
    let k = inst.k();
    let mut buf = vec![0 as Elem; n * n];
    let mut w = vec![0 as Elem; k];
    let mut best = f64::INFINITY;
    let mut count = 0u64;
    let mut winner: Option<(MatFq, Vec<Elem>, usize)> = None;
    for code in 0..total {
        decode_index(code, q, &mut buf);
        for (a, h) in inst.hs.iter().enumerate() {
            w[a] = f.sub(inst.y.get(a), crate::matfq::dot(f, h.as_slice(), &buf));
        }
        let weight = w.iter().filter(|&&v| v != 0).count();
        if lambda * weight as f64 > best + OBJ_TOL {
            continue;
        }
        let x = MatFq::from_vec(n, n, buf.clone(), f)?;
        let rank = x.rank();
        let obj = rank as f64 + lambda * weight as f64;
        if obj < best - OBJ_TOL {
            best = obj;
            count = 1;
            winner = Some((x, w.clone(), rank));
        } else if (obj - best).abs() <= OBJ_TOL {
            count += 1;
        }
    }
    let (x, w, rank) = winner.expect("X = 0 is always feasible");
    let unique = count == 1;
    let w = VecFq::from_vec(w, f)?;
    Ok(DecodeOutcome {
        status: if unique { DecodeStatus::Unique } else { DecodeStatus::Ambiguous },
        achieved_noise_weight: w.hamming_weight(),
        achieved_rank: rank,
        x_star: unique.then_some(x),
        w_star: unique.then_some(w),
        solutions_examined: total,
    })
}

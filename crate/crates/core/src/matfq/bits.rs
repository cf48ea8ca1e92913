//! Bit-packed GF(2) elimination on `u128` rows.
//!
//! Column `j` of a row lives in bit `j`. Systems with a right-hand side keep
//! it in bit `nvars`, so at most 127 unknowns fit.

/// Rank of a set of GF(2) rows. The slice is used as scratch.
pub fn rank(rows: &mut [u128]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let row = rows[i];
        if row == 0 {
            continue;
        }
        let pivot = row & row.wrapping_neg();
        for other in rows[i + 1..].iter_mut() {
            if *other & pivot != 0 {
                *other ^= row;
            }
        }
        rank += 1;
    }
    rank
}

/// Solution of a packed GF(2) system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Solution {
    /// Particular solution with every free variable zero.
    pub particular: u128,
    /// Null-space basis, one vector per free variable.
    pub nullspace: Vec<u128>,
}

/// Solves the system whose rows carry coefficients in bits `0..nvars` and the
/// right-hand side in bit `nvars`. The slice is reduced in place.
pub fn solve(rows: &mut [u128], nvars: usize) -> Option<Gf2Solution> {
    solve_with(rows, nvars, true)
}

/// Like [`solve`]. With `want_basis` false the null-space vectors are left
/// as zeros; only their count (the nullity) is meaningful.
pub fn solve_with(rows: &mut [u128], nvars: usize, want_basis: bool) -> Option<Gf2Solution> {
    assert!(nvars < 128, "packed systems hold at most 127 unknowns");
    let rhs = 1u128 << nvars;
    let coeff_mask = rhs - 1;
    let mut pivot_cols: Vec<usize> = Vec::with_capacity(nvars);
    let mut r = 0;
    for col in 0..nvars {
        let bit = 1u128 << col;
        let Some(p) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        let prow = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row & bit != 0 {
                *row ^= prow;
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|&row| row & rhs != 0) {
        return None;
    }
    // rows[i] is the fully reduced row for pivot i
    let pivots: Vec<(usize, u128)> = pivot_cols.iter().enumerate().map(|(i, &c)| (c, rows[i])).collect();
    let mut particular = 0u128;
    let mut pivot_mask = 0u128;
    for &(col, prow) in &pivots {
        pivot_mask |= 1 << col;
        if prow & rhs != 0 {
            particular |= 1 << col;
        }
    }
    let free_mask = coeff_mask & !pivot_mask;
    let mut nullspace = Vec::with_capacity(free_mask.count_ones() as usize);
    if want_basis {
        let mut free = free_mask;
        while free != 0 {
            let fbit = free & free.wrapping_neg();
            free ^= fbit;
            let mut v = fbit;
            for &(col, prow) in &pivots {
                if prow & fbit != 0 {
                    v |= 1 << col;
                }
            }
            nullspace.push(v);
        }
    } else {
        nullspace.resize(free_mask.count_ones() as usize, 0);
    }
    Some(Gf2Solution { particular, nullspace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matfq::{solve_affine, AffineSolution, MatFq, VecFq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packed_rank_matches_generic() {
        let f = FieldSpec::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let rows = rng.gen_range(1..20);
            let cols = rng.gen_range(1..20);
            let density = rng.gen_range(0.05..0.9);
            let data: Vec<u16> = (0..rows * cols).map(|_| rng.gen_bool(density) as u16).collect();
            let m = MatFq::from_vec(rows, cols, data.clone(), &f).unwrap();
            let mut packed: Vec<u128> = (0..rows)
                .map(|i| (0..cols).fold(0u128, |acc, j| acc | (data[i * cols + j] as u128) << j))
                .collect();
            assert_eq!(rank(&mut packed), m.rank());
        }
    }

    #[test]
    fn packed_solve_matches_generic() {
        let f = FieldSpec::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let rows = rng.gen_range(1..24);
            let cols = rng.gen_range(1..24);
            let data: Vec<u16> = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
            let b: Vec<u16> = (0..rows).map(|_| rng.gen_range(0..2)).collect();
            let a = MatFq::from_vec(rows, cols, data.clone(), &f).unwrap();
            let generic = solve_affine(&a, &VecFq::from_vec(b.clone(), &f).unwrap()).unwrap();
            let mut packed: Vec<u128> = (0..rows)
                .map(|i| {
                    (0..cols).fold((b[i] as u128) << cols, |acc, j| acc | (data[i * cols + j] as u128) << j)
                })
                .collect();
            let fast = solve(&mut packed, cols);
            match (generic, fast) {
                (AffineSolution::NoSolution, None) => {}
                (AffineSolution::Solution { particular, nullspace }, Some(sol)) => {
                    let unpacked: Vec<u16> = (0..cols).map(|j| (sol.particular >> j & 1) as u16).collect();
                    assert_eq!(particular.as_slice(), unpacked.as_slice());
                    assert_eq!(nullspace.len(), sol.nullspace.len());
                    for v in sol.nullspace {
                        for i in 0..rows {
                            let s = (0..cols).filter(|&j| data[i * cols + j] == 1 && v >> j & 1 == 1).count();
                            assert_eq!(s % 2, 0);
                        }
                    }
                }
                (g, fast) => panic!("disagreement: {g:?} vs {fast:?}"),
            }
        }
    }
}

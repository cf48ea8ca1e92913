//! Dense matrices and vectors over GF(q).
//!
//! Everything here is value-semantic: operations return new matrices and
//! never mutate their inputs. Row reduction is plain Gauss-Jordan with the
//! first nonzero entry as pivot.

pub mod bits;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    field: FieldSpec,
}

#[derive(Clone, PartialEq, Eq)]
pub struct VecFq {
    data: Vec<Elem>,
    field: FieldSpec,
}

/// Result of [`solve_affine`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    NoSolution,
    Solution {
        /// One particular solution, with every free variable set to zero.
        particular: VecFq,
        /// Basis of the solution space of the homogeneous system.
        nullspace: Vec<VecFq>,
    },
}

impl AffineSolution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, AffineSolution::Solution { .. })
    }

    pub fn nullity(&self) -> Option<usize> {
        match self {
            AffineSolution::NoSolution => None,
            AffineSolution::Solution { nullspace, .. } => Some(nullspace.len()),
        }
    }
}

impl MatFq {
    pub fn zeros(rows: usize, cols: usize, field: &FieldSpec) -> Self {
        MatFq { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(n: usize, field: &FieldSpec) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major entries, validating every element.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>, field: &FieldSpec) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!("{} entries", rows * cols), format!("{} entries", data.len())));
        }
        if let Some(&bad) = data.iter().find(|&&v| v as u32 >= field.q()) {
            return Err(Error::invalid(format!("{bad} is not an element of GF({})", field.q())));
        }
        Ok(MatFq { rows, cols, data, field: field.clone() })
    }

    pub fn from_rows(rows: &[Vec<Elem>], field: &FieldSpec) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows"));
        }
        Self::from_vec(r, c, rows.concat(), field)
    }

    /// Indicator matrix with a single one at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize, field: &FieldSpec) -> Self {
        let mut m = Self::zeros(rows, cols, field);
        m.data[i * cols + j] = 1;
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Row-major entries.
    #[inline]
    pub fn as_slice(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    /// Sets one entry. Panics if `v` is not a field element.
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        assert!((v as u32) < self.field.q(), "{v} is not a field element");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_same_shape(&self, other: &MatFq) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dims(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatFq) -> Result<MatFq> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatFq { data, ..self.clone() })
    }

    pub fn sub(&self, other: &MatFq) -> Result<MatFq> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(MatFq { data, ..self.clone() })
    }

    pub fn scale(&self, c: Elem) -> MatFq {
        let f = &self.field;
        MatFq { data: self.data.iter().map(|&a| f.mul(c, a)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> MatFq {
        let mut t = MatFq::zeros(self.cols, self.rows, &self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn matmul(&self, other: &MatFq) -> Result<MatFq> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::dims(format!("{} rows", self.cols), format!("{} rows", other.rows)));
        }
        let f = &self.field;
        let mut out = MatFq::zeros(self.rows, other.cols, f);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.mul_add(out.data[idx], a, other.get(l, j));
                }
            }
        }
        Ok(out)
    }

    /// Row-major vectorization.
    pub fn vectorize(&self) -> VecFq {
        VecFq { data: self.data.clone(), field: self.field.clone() }
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        rref_in_place(&self.field, &mut work, self.rows, self.cols).len()
    }

    pub fn hamming_weight(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    /// Writes the text format: a `rows cols q` header, then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.field.q());
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(u16::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    /// Parses exactly one matrix in the text format.
    pub fn from_text(text: &str) -> Result<MatFq> {
        let mut all = parse_matrices(text)?;
        match all.len() {
            1 => Ok(all.pop().unwrap()),
            n => Err(Error::Parse(format!("expected one matrix, found {n}"))),
        }
    }
}

impl std::fmt::Debug for MatFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatFq {}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "{}{:?}", if i == 0 { "" } else { ", " }, self.row(i))?;
        }
        write!(f, "]")
    }
}

impl VecFq {
    pub fn zeros(len: usize, field: &FieldSpec) -> Self {
        VecFq { data: vec![0; len], field: field.clone() }
    }

    pub fn from_vec(data: Vec<Elem>, field: &FieldSpec) -> Result<Self> {
        if let Some(&bad) = data.iter().find(|&&v| v as u32 >= field.q()) {
            return Err(Error::invalid(format!("{bad} is not an element of GF({})", field.q())));
        }
        Ok(VecFq { data, field: field.clone() })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn as_slice(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize) -> Elem {
        self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn hamming_weight(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    pub fn add(&self, other: &VecFq) -> Result<VecFq> {
        self.check_same(other)?;
        let f = &self.field;
        Ok(VecFq { data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(), field: f.clone() })
    }

    pub fn sub(&self, other: &VecFq) -> Result<VecFq> {
        self.check_same(other)?;
        let f = &self.field;
        Ok(VecFq { data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(), field: f.clone() })
    }

    pub fn scale(&self, c: Elem) -> VecFq {
        let f = &self.field;
        VecFq { data: self.data.iter().map(|&a| f.mul(c, a)).collect(), field: f.clone() }
    }

    pub fn dot(&self, other: &VecFq) -> Result<Elem> {
        self.check_same(other)?;
        Ok(dot(&self.field, &self.data, &other.data))
    }

    /// Reshapes into a `rows x cols` matrix, row-major.
    pub fn reshape(&self, rows: usize, cols: usize) -> Result<MatFq> {
        MatFq::from_vec(rows, cols, self.data.clone(), &self.field)
    }

    fn check_same(&self, other: &VecFq) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::dims(self.len(), other.len()));
        }
        Ok(())
    }
}

impl std::fmt::Debug for VecFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VecFq over {:?} {:?}", self.field, self.data)
    }
}

#[inline]
pub(crate) fn dot(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.mul_add(acc, x, y))
}

/// `Σ A_ij B_ij`, which equals `Tr(A Bᵀ)`.
pub fn mat_inner(a: &MatFq, b: &MatFq) -> Result<Elem> {
    a.check_same_shape(b)?;
    Ok(dot(&a.field, &a.data, &b.data))
}

pub fn mat_rank(m: &MatFq) -> usize {
    m.rank()
}

/// Reduces a row-major `rows x cols` buffer to reduced row echelon form and
/// returns the pivot columns.
pub(crate) fn rref_in_place(f: &FieldSpec, a: &mut [Elem], rows: usize, cols: usize) -> Vec<usize> {
    rref_limited(f, a, rows, cols, cols)
}

/// Like [`rref_in_place`] but only pivots on the first `pivot_cols` columns.
fn rref_limited(f: &FieldSpec, a: &mut [Elem], rows: usize, cols: usize, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
        if inv != 1 {
            for j in c..cols {
                a[r * cols + j] = f.mul(inv, a[r * cols + j]);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for j in c..cols {
                let v = a[r * cols + j];
                if v != 0 {
                    a[i * cols + j] = f.mul_add(a[i * cols + j], neg, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` over GF(q), returning a particular solution and a basis of
/// the null space, or `NoSolution` when the system is inconsistent.
pub fn solve_affine(a: &MatFq, b: &VecFq) -> Result<AffineSolution> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    if a.rows != b.len() {
        return Err(Error::dims(format!("{} right-hand sides", a.rows), b.len()));
    }
    Ok(solve_affine_raw(&a.field, &a.data, &b.data, a.rows, a.cols))
}

pub(crate) fn solve_affine_raw(f: &FieldSpec, a: &[Elem], b: &[Elem], rows: usize, cols: usize) -> AffineSolution {
    let width = cols + 1;
    let mut aug = vec![0; rows * width];
    for i in 0..rows {
        aug[i * width..i * width + cols].copy_from_slice(&a[i * cols..(i + 1) * cols]);
        aug[i * width + cols] = b[i];
    }
    let pivots = rref_limited(f, &mut aug, rows, width, cols);
    let rank = pivots.len();
    if (rank..rows).any(|i| aug[i * width + cols] != 0) {
        return AffineSolution::NoSolution;
    }
    let mut particular = vec![0; cols];
    for (i, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[i * width + cols];
    }
    let mut is_pivot = vec![false; cols];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    let nullspace = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(aug[i * width + free]);
            }
            VecFq { data: v, field: f.clone() }
        })
        .collect();
    AffineSolution::Solution { particular: VecFq { data: particular, field: f.clone() }, nullspace }
}

pub fn hamming_weight(v: &VecFq) -> usize {
    v.hamming_weight()
}

/// Dimension of the span of the vectorized matrices, i.e. the rank of the
/// `k x (rows*cols)` matrix whose rows are `vect(H_a)`.
pub fn stacked_dim(hs: &[MatFq]) -> Result<usize> {
    Ok(stack_rows(hs)?.map_or(0, |m| m.rank()))
}

/// Stacks `vect(H_a)` as the rows of one matrix. `None` for an empty list.
pub fn stack_rows(hs: &[MatFq]) -> Result<Option<MatFq>> {
    let Some(first) = hs.first() else {
        return Ok(None);
    };
    let width = first.rows * first.cols;
    let mut data = Vec::with_capacity(hs.len() * width);
    for h in hs {
        first.check_same_shape(h)?;
        data.extend_from_slice(&h.data);
    }
    Ok(Some(MatFq { rows: hs.len(), cols: width, data, field: first.field.clone() }))
}

/// Parses zero or more concatenated matrices in the text format.
pub fn parse_matrices(text: &str) -> Result<Vec<MatFq>> {
    let mut tokens = text.split_whitespace().map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))));
    let mut out = Vec::new();
    let mut field: Option<FieldSpec> = None;
    while let Some(rows) = tokens.next() {
        let rows = rows? as usize;
        let cols = tokens.next().ok_or_else(|| Error::Parse("truncated header".into()))?? as usize;
        let q = tokens.next().ok_or_else(|| Error::Parse("truncated header".into()))??;
        let f = match &field {
            Some(f) if f.q() == q => f.clone(),
            _ => {
                let f = FieldSpec::with_order(q)?;
                field = Some(f.clone());
                f
            }
        };
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let v = tokens.next().ok_or_else(|| Error::Parse("truncated matrix body".into()))??;
            data.push(f.element(v)?);
        }
        out.push(MatFq::from_vec(rows, cols, data, &f)?);
    }
    Ok(out)
}

pub fn write_matrices(ms: &[MatFq]) -> String {
    ms.iter().map(MatFq::to_text).collect()
}

//! Sparse exact matrices with rank and nullspace computations.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A sparse matrix in triplet form. Only nonzero entries are stored, keyed in
/// row-major order, so two matrices are equal iff their entries are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_dense(field: Field, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_dense(field, &dense).expect("rectangular input")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `v` to the entry at `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let sum = match self.entries.get(&(r, c)) {
            Some(old) => old + v,
            None => v.clone(),
        };
        self.set(r, c, sum);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries: self.iter().map(|(r, c, v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for (r, c, v) in self.iter() {
            out.set(r, c, v * s);
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_at(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&-&self.field.one()))
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} over {} vs {}x{} over {}",
                self.rows, self.cols, self.field, other.rows, other.cols, other.field
            )));
        }
        Ok(())
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut other_rows: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            other_rows[r].push((c, v));
        }
        let mut acc: HashMap<(usize, usize), Scalar> = HashMap::new();
        for (i, k, a) in self.iter() {
            for &(j, b) in &other_rows[k] {
                let p = a * b;
                acc.entry((i, j))
                    .and_modify(|s| *s = &*s + &p)
                    .or_insert(p);
            }
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols, entries })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (r, c, a) in self.iter() {
            out[r] = &out[r] + &(a * &v[c]);
        }
        Ok(out)
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (r, c, v) in self.iter() {
            if let (Some(&i), Some(&j)) = (row_pos.get(&r), col_pos.get(&c)) {
                out.entries.insert((i, j), v.clone());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, a) in self.iter() {
            for (r2, c2, b) in other.iter() {
                out.entries.insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        out
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, v) in self.iter() {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    /// Exact rank.
    ///
    /// Over `Q` every row is scaled to a primitive integer row and reduced
    /// fraction-free (cross-multiplication followed by division by the row
    /// content); over `F_p` plain Gaussian elimination is used. Rows are
    /// inserted in order and reduced against the pivot rows found so far,
    /// keyed by leading column, which makes the echelon form deterministic.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rationals => self.rank_integer(),
            Field::Prime(p) => self.rank_modular(p as u64),
        }
    }

    fn rank_integer(&self) -> usize {
        let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
        for row in self.sparse_rows() {
            if row.is_empty() {
                continue;
            }
            let mut row = primitive_integer_row(&row);
            while let Some(&(lead, _)) = row.first() {
                match pivots.get(&lead) {
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                    Some(pivot) => {
                        let a = &pivot[0].1;
                        let b = &row[0].1;
                        let g = a.gcd(b);
                        let (ma, mb) = (a / &g, b / &g);
                        row = combine(&row, &ma, pivot, &mb);
                        make_primitive(&mut row);
                    }
                }
            }
        }
        pivots.len()
    }

    fn rank_modular(&self, p: u64) -> usize {
        let to_u64 = |s: &Scalar| match s {
            Scalar::Modular { value, .. } => *value as u64,
            Scalar::Rational(_) => unreachable!("rational entry in modular matrix"),
        };
        let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
        for row in self.sparse_rows() {
            let mut row: Vec<(usize, u64)> = row.iter().map(|(c, v)| (*c, to_u64(v))).collect();
            while let Some(&(lead, lv)) = row.first() {
                match pivots.get(&lead) {
                    None => {
                        let inv = pow_mod(lv, p - 2, p);
                        for e in row.iter_mut() {
                            e.1 = e.1 * inv % p;
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                    Some(pivot) => {
                        // row - lv * pivot, pivot has leading coefficient 1
                        let factor = (p - lv) % p;
                        row = merge_modular(&row, pivot, factor, p);
                    }
                }
            }
        }
        pivots.len()
    }

    /// Rank by dense Bareiss elimination with pivots chosen by scanning
    /// columns left to right and taking the first nonzero entry at or below
    /// the current row. Rationals are cleared to integers row by row first.
    pub fn rank_bareiss(&self) -> usize {
        match self.field {
            Field::Prime(_) => self.nullity_complement_dense(),
            Field::Rationals => {
                let mut a: Vec<Vec<BigInt>> = self
                    .sparse_rows()
                    .iter()
                    .map(|row| {
                        let prim = primitive_integer_row(row);
                        let mut dense = vec![BigInt::zero(); self.cols];
                        for (c, v) in prim {
                            dense[c] = v;
                        }
                        dense
                    })
                    .collect();
                let (m, n) = (self.rows, self.cols);
                let mut prev = BigInt::one();
                let mut r = 0;
                for c in 0..n {
                    if r == m {
                        break;
                    }
                    let Some(piv) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                        continue;
                    };
                    a.swap(r, piv);
                    for i in r + 1..m {
                        for j in c + 1..n {
                            let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                            a[i][j] = v;
                        }
                        a[i][c] = BigInt::zero();
                    }
                    prev = a[r][c].clone();
                    r += 1;
                }
                r
            }
        }
    }

    fn nullity_complement_dense(&self) -> usize {
        self.cols - self.nullspace().len()
    }

    /// Basis of `{x : self * x = 0}` by Gauss-Jordan elimination; one basis
    /// vector per free column, in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.to_dense();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, piv);
            let inv = a[r][c].inverse().expect("pivot is nonzero");
            for j in c..n {
                a[r][j] = &a[r][j] * &inv;
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..n {
                        let t = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &t;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![self.field.zero(); n];
            v[free] = self.field.one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            basis.push(v);
        }
        basis
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn primitive_integer_row(row: &[(usize, Scalar)]) -> Vec<(usize, BigInt)> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| {
        acc.lcm(v.as_rational().expect("rational entry").denom())
    });
    let mut out: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(c, v)| {
            let q = v.as_rational().expect("rational entry");
            (*c, q.numer() * (&lcm / q.denom()))
        })
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for e in row.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for e in row.iter_mut() {
            e.1 = -&e.1;
        }
    }
}

/// `ma * row - mb * pivot` over sorted sparse integer rows.
fn combine(
    row: &[(usize, BigInt)],
    ma: &BigInt,
    pivot: &[(usize, BigInt)],
    mb: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (c, v) = if take_row {
            i += 1;
            (row[i - 1].0, ma * &row[i - 1].1)
        } else if take_piv {
            j += 1;
            (pivot[j - 1].0, -(mb * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (row[i - 1].0, ma * &row[i - 1].1 - mb * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// `row + factor * pivot` modulo `p`.
fn merge_modular(row: &[(usize, u64)], pivot: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let (c, v) = if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            i += 1;
            row[i - 1]
        } else if i >= row.len() || pivot[j].0 < row[i].0 {
            j += 1;
            (pivot[j - 1].0, factor * pivot[j - 1].1 % p)
        } else {
            i += 1;
            j += 1;
            (row[i - 1].0, (row[i - 1].1 + factor * pivot[j - 1].1) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

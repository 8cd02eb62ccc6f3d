//! Finite-dimensional unital associative algebras given by structure constants.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// A finite-dimensional unital associative algebra over an exact field.
///
/// `table[i][j]` holds the coordinates of `e_i * e_j`. Every value of this
/// type has passed the exhaustive associativity and unit checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    field: Field,
    basis_names: Vec<String>,
    unit: Vec<Scalar>,
    table: Vec<Vec<Vec<Scalar>>>,
}

/// Which builder produced a group algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Cyclic(usize),
    Symmetric3,
}

impl AlgebraSpec {
    /// Validates and wraps a multiplication table.
    pub fn custom(
        field: Field,
        basis_names: Vec<String>,
        unit: Vec<Scalar>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<AlgebraSpec> {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!("unit has {} coordinates, expected {dim}", unit.len())));
        }
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidAlgebra(format!("table must be {dim}x{dim}x{dim}")));
        }
        if unit.iter().chain(table.iter().flatten().flatten()).any(|s| s.field() != field) {
            return Err(Error::InvalidAlgebra(format!("coefficients must lie in {field}")));
        }
        let alg = AlgebraSpec { field, basis_names, unit, table };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let ei = self.basis_vector(i);
            if self.multiply(&self.unit, &ei)? != ei || self.multiply(&ei, &self.unit)? != ei {
                return Err(Error::InvalidAlgebra(format!(
                    "unit axiom fails for {}",
                    self.basis_names[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for l in 0..n {
                    let left = self.multiply(ij, &self.basis_vector(l))?;
                    let right = self.multiply(&self.basis_vector(i), &self.table[j][l])?;
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails for ({}, {}, {})",
                            self.basis_names[i], self.basis_names[j], self.basis_names[l]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// Index of the basis vector equal to the unit, if there is one.
    pub fn unit_basis_index(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| self.unit == self.basis_vector(i))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in an algebra of dimension {n}",
                x.len(),
                y.len()
            )));
        }
        let mut out = vec![self.field.zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (l, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[l] = &out[l] + &(&c * t);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Matrix of left multiplication `x -> e_i x` (columns are images of basis vectors).
    pub fn left_mult(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for j in 0..n {
            for (l, v) in self.table[i][j].iter().enumerate() {
                m.set(l, j, v.clone());
            }
        }
        m
    }

    /// Matrix of right multiplication `x -> x e_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for j in 0..n {
            for (l, v) in self.table[j][i].iter().enumerate() {
                m.set(l, j, v.clone());
            }
        }
        m
    }

    /// Basis of the center, as the nullspace of `z -> (z e_i - e_i z)_i`.
    pub fn center(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let mut system = Matrix::zeros(self.field, n * n, n);
        for i in 0..n {
            let comm = self.right_mult(i).sub(&self.left_mult(i)).expect("same shape");
            for (r, c, v) in comm.iter() {
                system.set(i * n + r, c, v.clone());
            }
        }
        system.nullspace()
    }

    // ---- builders ----

    /// `k[x]/(x^n)` with basis `1, x, ..., x^(n-1)`.
    pub fn trunc_poly(field: Field, n: usize) -> Result<AlgebraSpec> {
        check_positive(n)?;
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| unit_coords(field, n, (i + j < n).then_some(i + j)))
                    .collect()
            })
            .collect();
        AlgebraSpec::custom(field, names, unit_coords(field, n, Some(0)), table)
    }

    /// Upper triangular `n x n` matrices with basis `e_ij`, `i <= j`.
    pub fn upper_tri(field: Field, n: usize) -> Result<AlgebraSpec> {
        check_positive(n)?;
        let units: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        matrix_units_algebra(field, n, &units)
    }

    /// The full matrix algebra `M_n(k)`.
    pub fn matrix_algebra(field: Field, n: usize) -> Result<AlgebraSpec> {
        check_positive(n)?;
        let units: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        matrix_units_algebra(field, n, &units)
    }

    /// The group algebra `k[G]`, basis indexed by group elements with the
    /// identity first.
    pub fn group_algebra(field: Field, group: Group) -> Result<AlgebraSpec> {
        let (names, mul): (Vec<String>, Box<dyn Fn(usize, usize) -> usize>) = match group {
            Group::Cyclic(n) => {
                check_positive(n)?;
                let names = (0..n).map(|i| if i == 0 { "1".into() } else { format!("g^{i}") }).collect();
                (names, Box::new(move |a, b| (a + b) % n))
            }
            Group::Symmetric3 => {
                let perms = permutations3();
                let names = perms
                    .iter()
                    .map(|p| format!("({}{}{})", p[0] + 1, p[1] + 1, p[2] + 1))
                    .collect();
                let ps = perms.clone();
                (
                    names,
                    Box::new(move |a, b| {
                        // (a*b)(x) = a(b(x))
                        let c = [ps[a][ps[b][0]], ps[a][ps[b][1]], ps[a][ps[b][2]]];
                        ps.iter().position(|p| *p == c).expect("closed under composition")
                    }),
                )
            }
        };
        let n = names.len();
        let table = (0..n)
            .map(|i| (0..n).map(|j| unit_coords(field, n, Some(mul(i, j)))).collect())
            .collect();
        AlgebraSpec::custom(field, names, unit_coords(field, n, Some(0)), table)
    }
}

fn check_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("size parameter must be at least 1".into()));
    }
    Ok(())
}

fn unit_coords(field: Field, n: usize, at: Option<usize>) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    if let Some(i) = at {
        v[i] = field.one();
    }
    v
}

fn permutations3() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// Span of the given matrix units, closed under multiplication by assumption.
/// The identity matrix becomes the unit; the first basis element is `e_00`.
fn matrix_units_algebra(field: Field, n: usize, units: &[(usize, usize)]) -> Result<AlgebraSpec> {
    let d = units.len();
    let names = units.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let table = units
        .iter()
        .map(|&(i, j)| {
            units
                .iter()
                .map(|&(k, l)| {
                    let target = (j == k).then(|| units.iter().position(|&u| u == (i, l))).flatten();
                    unit_coords(field, d, target)
                })
                .collect()
        })
        .collect();
    let mut unit = vec![field.zero(); d];
    for i in 0..n {
        let pos = units.iter().position(|&u| u == (i, i)).expect("diagonal present");
        unit[pos] = field.one();
    }
    AlgebraSpec::custom(field, names, unit, table)
}

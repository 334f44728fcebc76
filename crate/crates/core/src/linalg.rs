//! Exact dense linear algebra: row reduction, linear solving, subspaces in
//! reduced-echelon normal form, and enumeration of all subspaces of GF(p)^n.

use std::fmt;

use crate::combinatorics::increasing_tuples;
use crate::error::{Error, Result};
use crate::guard::{Guards, MAX_SUBSPACE_DIM, MAX_SUBSPACE_P};
use crate::scalar::{zero_vec, Field, Scalar};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one(field);
        }
        m
    }

    /// Builds from rows, validating shape and field homogeneity.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimMismatch {
                    left: row.len(),
                    right: cols,
                });
            }
            for x in row {
                field.expect_eq(&x.field())?;
            }
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.expect_eq(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(r, c) = out.at(r, c) + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.field.expect_eq(&other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// In-place Gauss-Jordan reduction to reduced row-echelon form.
    /// Returns the pivot columns (one per nonzero row, in order).
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..self.cols {
                    self.data
                        .swap(src * self.cols + c, pivot_row * self.cols + c);
                }
            }
            let inv = self.at(pivot_row, col).inv().expect("pivot is nonzero");
            for c in 0..self.cols {
                *self.at_mut(pivot_row, c) = self.at(pivot_row, c) * &inv;
            }
            for r in 0..self.rows {
                if r == pivot_row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in 0..self.cols {
                    let delta = &factor * self.at(pivot_row, c);
                    *self.at_mut(r, c) = self.at(r, c) - &delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Solves `self * x = rhs` expecting a unique solution; any other outcome
    /// is reported as an internal error (callers establish solvability).
    pub fn solve_unique(&self, rhs: &[Scalar]) -> Result<Vec<Scalar>> {
        if rhs.len() != self.rows {
            return Err(Error::DimMismatch {
                left: rhs.len(),
                right: self.rows,
            });
        }
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for (r, tail) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = tail.clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return Err(Error::Internal("inconsistent linear system".into()));
        }
        if pivots.len() < self.cols {
            return Err(Error::Internal(
                "linear system does not determine a unique solution".into(),
            ));
        }
        let mut x = zero_vec(self.field, self.cols);
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.at(row, self.cols).clone();
        }
        Ok(x)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let parts: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A linear subspace of `field^ambient`, stored as a reduced row-echelon
/// basis with zero rows pruned; equality of subspaces is equality of the
/// stored normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimMismatch {
                    left: v.len(),
                    right: ambient,
                });
            }
        }
        let m = Matrix::from_rows(field, vectors.to_vec())?;
        let (reduced, rank) = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..rank).map(|r| reduced.row(r).to_vec()).collect();
        // An empty row list must still remember the ambient width so that
        // zero subspaces compare equal regardless of how they were built.
        let basis = if rank == 0 {
            Matrix::zero(field, 0, ambient)
        } else {
            Matrix::from_rows(field, rows)?
        };
        Ok(Subspace { ambient, basis })
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zero(field, 0, ambient),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimMismatch {
                left: v.len(),
                right: self.ambient,
            });
        }
        // Reduce v against the echelon basis; membership iff the residue is 0.
        let mut res = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&c| !self.basis.at(r, c).is_zero())
                .expect("basis has no zero rows");
            let coeff = res[pivot_col].clone();
            if coeff.is_zero() {
                continue;
            }
            for (c, slot) in res.iter_mut().enumerate() {
                let delta = &coeff * self.basis.at(r, c);
                *slot = &*slot - &delta;
            }
        }
        Ok(res.iter().all(Scalar::is_zero))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.field().expect_eq(&other.field())?;
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subspace::from_vectors(self.field(), self.ambient, &rows)
    }

    pub fn describe(&self) -> String {
        if self.dim() == 0 {
            return "0".into();
        }
        let rows: Vec<String> = self
            .basis
            .row_vecs()
            .iter()
            .map(|r| crate::scalar::fmt_vec(r))
            .collect();
        format!("span{{{}}}", rows.join(", "))
    }
}

/// Number of d-dimensional subspaces of GF(p)^n (Gaussian binomial).
pub fn subspace_count(n: usize, d: usize, p: u64) -> u128 {
    if d > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let p = p as u128;
    for i in 0..d {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((d - i) as u32) - 1;
    }
    num / den
}

/// Enumerates every d-dimensional subspace of GF(p)^dim exactly once, as
/// reduced-echelon bases: pivot-column sets in lexicographic order, then free
/// entries in row-major base-p order.
pub fn enumerate_subspaces(
    field: Field,
    dim: usize,
    d: usize,
    guards: &Guards,
) -> Result<Vec<Subspace>> {
    let Field::Prime(p) = field else {
        return Err(Error::BadArgument(
            "subspace enumeration requires a finite field".into(),
        ));
    };
    if d > dim {
        return Err(Error::BadArgument(format!(
            "subspace dimension {} exceeds ambient dimension {}",
            d, dim
        )));
    }
    if guards.enforce && (dim > MAX_SUBSPACE_DIM || p > MAX_SUBSPACE_P) {
        return Err(Error::ResourceGuard(format!(
            "subspace enumeration limited to dim <= {}, p <= {}; got dim {}, p {}",
            MAX_SUBSPACE_DIM, MAX_SUBSPACE_P, dim, p
        )));
    }
    let mut out = Vec::new();
    for pivot_cols in increasing_tuples(dim, d) {
        // 0-based pivot columns.
        let pivots: Vec<usize> = pivot_cols.iter().map(|c| c - 1).collect();
        // Free entries: (row i, col j) with j > pivot(i) and j not a pivot.
        let mut free = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for j in pc + 1..dim {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let total = (p as u128).pow(free.len() as u32);
        for idx in 0..total {
            let mut m = Matrix::zero(field, d, dim);
            for (i, &pc) in pivots.iter().enumerate() {
                *m.at_mut(i, pc) = Scalar::one(field);
            }
            let mut rem = idx;
            for &(i, j) in &free {
                let digit = (rem % p as u128) as i64;
                rem /= p as u128;
                *m.at_mut(i, j) = Scalar::from_integer(field, digit);
            }
            out.push(Subspace {
                ambient: dim,
                basis: m,
            });
        }
    }
    Ok(out)
}

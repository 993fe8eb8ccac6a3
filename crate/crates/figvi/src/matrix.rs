//! Dense matrices over an exact field, with row-echelon based solvers.
//!
//! Everything here is exact; there is no pivoting heuristic beyond taking
//! the first nonzero entry, which keeps results reproducible bit for bit.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldSpec,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            field,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds an integer matrix in the given field.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Matrix::from_fn(r, c, field, |i, j| field.from_i64(rows[i][j]))
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| {
            self.at(c, r).clone()
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.at(r, c).add(other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.at(r, c).sub(other.at(r, c))
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.at(r, c).mul(s)
        })
    }

    /// Matrix product, skipping zero entries of `self` (most of the matrices
    /// in this crate are sparse permutation-like blocks).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        assert_eq!(self.field, other.field, "field mismatch in mul");
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
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
                    let cur = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, self.field, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows + other.rows, self.cols + other.cols, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.at(r, c).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = self.at(row, col).inv().expect("pivot nonzero");
            if !inv.is_one() {
                for c in col..self.cols {
                    let v = self.at(row, c).mul(&inv);
                    self.set(row, c, v);
                }
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c).sub(&factor.mul(self.at(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries
                .swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space {x : A x = 0}, returned as the columns of a
    /// matrix. The basis is canonical: one vector per free column in
    /// ascending order, with a 1 in its free coordinate.
    pub fn null_space(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|c| pivot_set[*c].is_none()).collect();
        let mut basis = Matrix::zero(self.cols, free.len(), self.field);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(p, k, r.at(i, fc).neg());
            }
        }
        basis
    }

    /// Solves `A x = b` for one particular solution (free variables set to
    /// zero). Returns `None` when inconsistent.
    pub fn solve_vec(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, self.field, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // pivot in augmented column
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `A X = B` columnwise; `None` when any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let mut out = Matrix::zero(self.cols, b.cols, self.field);
        // One echelon pass for all right-hand sides.
        let mut aug = Matrix::from_fn(self.rows, self.cols + b.cols, self.field, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b.at(r, c - self.cols).clone()
            }
        });
        let pivots = aug.rref_in_place();
        let rank = pivots.iter().filter(|&&p| p < self.cols).count();
        if pivots.len() > rank {
            return None;
        }
        // Rows of rank..self.rows in rref are zero on the left; their right
        // parts must vanish for consistency.
        for r in rank..aug.rows {
            for c in self.cols..self.cols + b.cols {
                if !aug.at(r, c).is_zero() {
                    return None;
                }
            }
        }
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                out.set(p, c, aug.at(i, self.cols + c).clone());
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve_matrix(&Matrix::identity(self.rows, self.field))?;
        if self.rank() < self.rows {
            return None;
        }
        Some(sol)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.rows)
            .map(|r| {
                serde_json::Value::Array((0..self.cols).map(|c| self.at(r, c).to_json()).collect())
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Flattens a matrix row-major into a vector of scalars.
pub fn flatten(m: &Matrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows * m.cols);
    for r in 0..m.rows {
        for c in 0..m.cols {
            v.push(m.at(r, c).clone());
        }
    }
    v
}

/// The rank of a set of vectors (rows of equal length).
pub fn row_span_rank(field: FieldSpec, rows: &[Vec<Scalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, rows.to_vec()).rank()
}

/// Checks that `sub` is contained in the row span of `ambient`, both given
/// as row vectors.
pub fn rows_contained_in_span(field: FieldSpec, ambient: &[Vec<Scalar>], sub: &[Vec<Scalar>]) -> bool {
    let base = row_span_rank(field, ambient);
    let mut all: Vec<Vec<Scalar>> = ambient.to_vec();
    all.extend(sub.to_vec());
    row_span_rank(field, &all) == base
}

/// A surjection `k^d -> k^(d-s)` with kernel the column span of `basis`.
/// Rows are the coordinates of a canonical complement (non-pivot coordinates
/// of the span, after pivot elimination).
pub fn quotient_map(basis: &Matrix) -> Result<Matrix> {
    let d = basis.rows;
    let field = basis.field;
    let (r, pivots) = basis.transpose().rref();
    if pivots.len() != basis.cols {
        return Err(Error::ConsistencyFailure(
            "quotient_map expects a basis (independent columns)".into(),
        ));
    }
    let pivot_cols: Vec<usize> = pivots.clone();
    let complement: Vec<usize> = (0..d).filter(|c| !pivot_cols.contains(c)).collect();
    // x mod span: subtract x_{p_i} times rref row i for each pivot p_i, which
    // clears the pivot coordinates; read off the complement coordinates.
    // On basis vectors this gives row(cc) = e_cc - sum_i r[i][cc] e_{p_i}.
    let mut q = Matrix::zero(complement.len(), d, field);
    for (row_idx, &cc) in complement.iter().enumerate() {
        q.set(row_idx, cc, field.one());
        for (i, &p) in pivot_cols.iter().enumerate() {
            q.set(row_idx, p, r.at(i, cc).neg());
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qq() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn rref_and_rank() {
        let m = Matrix::from_i64(qq(), &[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let id = Matrix::identity(4, qq());
        assert_eq!(id.rank(), 4);
        assert!(id.inverse().unwrap().is_identity());
    }

    #[test]
    fn null_space_dimensions() {
        let m = Matrix::from_i64(qq(), &[&[1, 2, 3], &[4, 5, 6]]);
        let ns = m.null_space();
        assert_eq!(ns.cols, 1);
        assert!(m.mul(&ns).is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_i64(qq(), &[&[1, 1], &[0, 1], &[1, 2]]);
        let b = vec![qq().from_i64(3), qq().from_i64(1), qq().from_i64(4)];
        let x = a.solve_vec(&b).unwrap();
        assert_eq!(x, vec![qq().from_i64(2), qq().from_i64(1)]);
        let bad = vec![qq().from_i64(3), qq().from_i64(1), qq().from_i64(5)];
        assert!(a.solve_vec(&bad).is_none());
    }

    #[test]
    fn inverse_over_f5() {
        let f = FieldSpec::Fp(5);
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn quotient_map_kills_subspace() {
        // span{(1,1,0),(0,0,1)} in k^3
        let basis = Matrix::from_i64(qq(), &[&[1, 0], &[1, 0], &[0, 1]]);
        let q = quotient_map(&basis).unwrap();
        assert_eq!(q.rows, 1);
        assert!(q.mul(&basis).is_zero());
        assert_eq!(q.rank(), 1);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..5, cols in 0usize..5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::from_fn(rows, cols, qq(), |_, _| qq().from_i64(rng.random_range(-3..=3)));
            let ns = m.null_space();
            prop_assert_eq!(m.rank() + ns.cols, cols);
            prop_assert!(m.mul(&ns).is_zero());
        }

        #[test]
        fn fp_rank_matches_rational_structure(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = FieldSpec::Fp(3);
            let m = Matrix::from_fn(3, 3, f, |_, _| f.from_i64(rng.random_range(0..3)));
            let r = m.rank();
            prop_assert!(r <= 3);
            if r == 3 {
                let inv = m.inverse().unwrap();
                prop_assert!(m.mul(&inv).is_identity());
            }
        }
    }
}

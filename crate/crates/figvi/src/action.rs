//! Action matrices: dense, or monomial (at most one nonzero per column).
//!
//! Free modules and their shifts act by permutation-like matrices; at the
//! sizes the Phi isomorphism reaches (thousands of basis morphisms) storing
//! them densely is hopeless, while everything a structural check needs
//! (products, equality, bijectivity) is linear-time on monomial form.

use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};

/// A rows x cols matrix with at most one nonzero entry per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    /// For each column, the (row, coefficient) of its nonzero entry.
    pub entries: Vec<Option<(usize, Scalar)>>,
}

impl MonomialMatrix {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> MonomialMatrix {
        MonomialMatrix {
            rows,
            cols,
            field,
            entries: vec![None; cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> MonomialMatrix {
        MonomialMatrix {
            rows: n,
            cols: n,
            field,
            entries: (0..n).map(|i| Some((i, field.one()))).collect(),
        }
    }

    /// Permutation-with-coefficients from a column -> row map.
    pub fn from_map(rows: usize, field: FieldSpec, map: Vec<Option<(usize, Scalar)>>) -> MonomialMatrix {
        let cols = map.len();
        MonomialMatrix {
            rows,
            cols,
            field,
            entries: map,
        }
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.cols, other.rows);
        let entries = other
            .entries
            .iter()
            .map(|e| {
                e.as_ref().and_then(|(mid, c1)| {
                    self.entries[*mid]
                        .as_ref()
                        .map(|(row, c2)| (*row, c2.mul(c1)))
                        .filter(|(_, c)| !c.is_zero())
                })
            })
            .collect();
        MonomialMatrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            entries,
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zero(self.rows, self.cols, self.field);
        for (c, e) in self.entries.iter().enumerate() {
            if let Some((r, v)) = e {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    /// Rank = number of distinct rows hit by a nonzero coefficient
    /// (columns sharing a row are proportional).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<usize> = self
            .entries
            .iter()
            .flatten()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, _)| *r)
            .collect();
        rows.sort_unstable();
        rows.dedup();
        rows.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_none())
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = self.field.zero();
        for (c, e) in self.entries.iter().enumerate() {
            if let Some((r, v)) = e {
                if *r == c {
                    t = t.add(v);
                }
            }
        }
        t
    }

    /// Inverse of a bijective monomial matrix.
    pub fn inverse(&self) -> MonomialMatrix {
        assert!(self.is_bijective(), "monomial inverse needs bijectivity");
        let mut entries = vec![None; self.rows];
        for (c, e) in self.entries.iter().enumerate() {
            if let Some((r, v)) = e {
                entries[*r] = Some((c, v.inv().expect("unit coefficient")));
            }
        }
        MonomialMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn block_diag(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let mut entries = self.entries.clone();
        entries.extend(
            other
                .entries
                .iter()
                .map(|e| e.as_ref().map(|(r, c)| (r + self.rows, c.clone()))),
        );
        MonomialMatrix {
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            field: self.field,
            entries,
        }
    }
}

/// Either representation of a linear map, chosen by construction site.
#[derive(Debug, Clone)]
pub enum Action {
    Monomial(MonomialMatrix),
    Dense(Matrix),
}

impl Action {
    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Action {
        Action::Monomial(MonomialMatrix::zero(rows, cols, field))
    }

    pub fn identity(n: usize, field: FieldSpec) -> Action {
        Action::Monomial(MonomialMatrix::identity(n, field))
    }

    pub fn rows(&self) -> usize {
        match self {
            Action::Monomial(m) => m.rows,
            Action::Dense(m) => m.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Action::Monomial(m) => m.cols,
            Action::Dense(m) => m.cols,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Action::Monomial(m) => m.field,
            Action::Dense(m) => m.field,
        }
    }

    /// self . other, staying monomial when both sides are.
    pub fn mul(&self, other: &Action) -> Action {
        match (self, other) {
            (Action::Monomial(a), Action::Monomial(b)) => Action::Monomial(a.mul(b)),
            (Action::Monomial(a), Action::Dense(b)) => {
                // row r of the result collects rows of b via a's entries
                let mut out = Matrix::zero(a.rows, b.cols, b.field);
                for (c, e) in a.entries.iter().enumerate() {
                    if let Some((r, v)) = e {
                        for j in 0..b.cols {
                            let cur = out.at(*r, j).add(&v.mul(b.at(c, j)));
                            out.set(*r, j, cur);
                        }
                    }
                }
                Action::Dense(out)
            }
            (Action::Dense(a), Action::Monomial(b)) => {
                let mut out = Matrix::zero(a.rows, b.cols, a.field);
                for (c, e) in b.entries.iter().enumerate() {
                    if let Some((k, v)) = e {
                        for r in 0..a.rows {
                            let cur = out.at(r, c).add(&a.at(r, *k).mul(v));
                            out.set(r, c, cur);
                        }
                    }
                }
                Action::Dense(out)
            }
            (Action::Dense(a), Action::Dense(b)) => Action::Dense(a.mul(b)),
        }
    }

    pub fn to_dense(&self) -> Matrix {
        match self {
            Action::Monomial(m) => m.to_dense(),
            Action::Dense(m) => m.clone(),
        }
    }

    pub fn equals(&self, other: &Action) -> bool {
        match (self, other) {
            (Action::Monomial(a), Action::Monomial(b)) => a == b,
            _ => self.to_dense() == other.to_dense(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Action::Monomial(m) => m.is_zero(),
            Action::Dense(m) => m.is_zero(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Action::Monomial(m) => m.rank(),
            Action::Dense(m) => m.rank(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        match self {
            Action::Monomial(m) => m.is_bijective(),
            Action::Dense(m) => m.is_invertible(),
        }
    }

    pub fn trace(&self) -> Scalar {
        match self {
            Action::Monomial(m) => m.trace(),
            Action::Dense(m) => m.trace(),
        }
    }

    pub fn block_diag(&self, other: &Action) -> Action {
        match (self, other) {
            (Action::Monomial(a), Action::Monomial(b)) => Action::Monomial(a.block_diag(b)),
            _ => Action::Dense(self.to_dense().block_diag(&other.to_dense())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn monomial_mul_matches_dense() {
        let a = MonomialMatrix::from_map(
            3,
            qq(),
            vec![Some((2, qq().from_i64(2))), None, Some((0, qq().from_i64(-1)))],
        );
        let b = MonomialMatrix::from_map(
            3,
            qq(),
            vec![Some((1, qq().one())), Some((2, qq().from_i64(3)))],
        );
        let prod = a.mul(&b);
        assert_eq!(prod.to_dense(), a.to_dense().mul(&b.to_dense()));
    }

    #[test]
    fn monomial_rank_and_bijective() {
        let perm = MonomialMatrix::from_map(
            2,
            qq(),
            vec![Some((1, qq().one())), Some((0, qq().from_i64(5)))],
        );
        assert!(perm.is_bijective());
        let collapse = MonomialMatrix::from_map(
            2,
            qq(),
            vec![Some((0, qq().one())), Some((0, qq().one()))],
        );
        assert_eq!(collapse.rank(), 1);
        assert!(!collapse.is_bijective());
    }

    #[test]
    fn mixed_products() {
        let m = MonomialMatrix::from_map(2, qq(), vec![Some((1, qq().one())), Some((0, qq().one()))]);
        let d = Matrix::from_i64(qq(), &[&[1, 2], &[3, 4]]);
        let lhs = Action::Monomial(m.clone()).mul(&Action::Dense(d.clone()));
        assert_eq!(lhs.to_dense(), m.to_dense().mul(&d));
        let rhs = Action::Dense(d.clone()).mul(&Action::Monomial(m.clone()));
        assert_eq!(rhs.to_dense(), d.mul(&m.to_dense()));
    }
}

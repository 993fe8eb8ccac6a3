//! Morphisms of VI: injective linear maps between F_p^m and F_p^n, together
//! with the projective-line bookkeeping used by the structural maps.

use crate::error::{Error, Result};
use crate::scalar::pow_mod;

/// A morphism m -> n of VI: an n x m matrix over F_p of rank m.
/// Entries are stored row-major, reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ViMorphism {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub entries: Vec<u64>,
}

impl ViMorphism {
    pub fn from_entries(p: u64, n: usize, m: usize, entries: Vec<u64>) -> ViMorphism {
        assert_eq!(entries.len(), n * m);
        ViMorphism {
            m,
            n,
            p,
            entries: entries.into_iter().map(|e| e % p).collect(),
        }
    }

    pub fn identity(p: u64, n: usize) -> ViMorphism {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        ViMorphism {
            m: n,
            n,
            p,
            entries,
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.m + c]
    }

    pub fn is_valid(&self) -> bool {
        self.entries.len() == self.n * self.m
            && self.entries.iter().all(|&e| e < self.p)
            && fp_rank(self.p, self.n, self.m, &self.entries) == self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == self.n
            && (0..self.n).all(|r| (0..self.m).all(|c| self.at(r, c) == u64::from(r == c)))
    }

    pub fn compose(outer: &ViMorphism, inner: &ViMorphism) -> Result<ViMorphism> {
        if inner.n != outer.m {
            return Err(Error::Composition {
                inner_target: inner.n,
                outer_source: outer.m,
            });
        }
        assert_eq!(inner.p, outer.p);
        let p = outer.p;
        let mut entries = vec![0u64; outer.n * inner.m];
        for r in 0..outer.n {
            for k in 0..outer.m {
                let a = outer.at(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..inner.m {
                    entries[r * inner.m + c] =
                        (entries[r * inner.m + c] + a * inner.at(k, c)) % p;
                }
            }
        }
        Ok(ViMorphism {
            m: inner.m,
            n: outer.n,
            p,
            entries,
        })
    }

    /// Block-diagonal monoidal product.
    pub fn monoidal(a: &ViMorphism, b: &ViMorphism) -> ViMorphism {
        assert_eq!(a.p, b.p);
        let (m, n) = (a.m + b.m, a.n + b.n);
        let mut entries = vec![0u64; n * m];
        for r in 0..a.n {
            for c in 0..a.m {
                entries[r * m + c] = a.at(r, c);
            }
        }
        for r in 0..b.n {
            for c in 0..b.m {
                entries[(a.n + r) * m + (a.m + c)] = b.at(r, c);
            }
        }
        ViMorphism {
            m,
            n,
            p: a.p,
            entries,
        }
    }

    pub fn inverse(&self) -> ViMorphism {
        assert_eq!(self.m, self.n, "only endomorphisms are invertible");
        let inv = fp_inverse(self.p, self.n, &self.entries).expect("invertible endomorphism");
        ViMorphism {
            m: self.n,
            n: self.n,
            p: self.p,
            entries: inv,
        }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.m);
        (0..self.n)
            .map(|r| {
                (0..self.m)
                    .map(|c| self.at(r, c) * v[c] % self.p)
                    .sum::<u64>()
                    % self.p
            })
            .collect()
    }

    /// The image line of a line under this morphism.
    pub fn line_image(&self, line: &Line) -> Line {
        Line::from_vector(self.p, &self.apply(&line.rep))
    }

    /// Whether the given line lies in the column span.
    pub fn contains_line(&self, line: &Line) -> bool {
        fp_solve(self.p, self.n, self.m, &self.entries, &line.rep).is_some()
    }
}

/// All morphisms m -> n in column-major lexicographic order on the entries.
pub fn enumerate(p: u64, m: usize, n: usize) -> Vec<ViMorphism> {
    if m > n {
        return Vec::new();
    }
    if m == 0 {
        return vec![ViMorphism {
            m: 0,
            n,
            p,
            entries: vec![],
        }];
    }
    let total = n * m;
    let mut out = Vec::new();
    // digits[0] is the most significant position: column 0, row 0.
    let mut digits = vec![0u64; total];
    loop {
        let mut entries = vec![0u64; total];
        for (pos, &d) in digits.iter().enumerate() {
            let (col, row) = (pos / n, pos % n);
            entries[row * m + col] = d;
        }
        if fp_rank(p, n, m, &entries) == m {
            out.push(ViMorphism { m, n, p, entries });
        }
        let mut i = total;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// A point of P(F_p^n): the representative is normalized so that its first
/// nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub p: u64,
    pub rep: Vec<u64>,
}

impl Line {
    pub fn from_vector(p: u64, v: &[u64]) -> Line {
        let pivot = v
            .iter()
            .position(|&x| x % p != 0)
            .expect("zero vector spans no line");
        let scale = pow_mod(v[pivot] % p, p - 2, p);
        Line {
            p,
            rep: v.iter().map(|&x| x % p * scale % p).collect(),
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.rep.len()
    }

    /// u^t(l) != 0: the functional u does not vanish on the line.
    pub fn pairs_nonzero(&self, u: &[u64]) -> bool {
        dot(self.p, u, &self.rep) != 0
    }
}

/// All lines of P(F_p^n), ordered lexicographically by normalized
/// representative.
pub fn lines(p: u64, n: usize) -> Vec<Line> {
    let mut set = std::collections::BTreeSet::new();
    let mut v = vec![0u64; n];
    loop {
        let mut i = n;
        loop {
            if i == 0 {
                return set.into_iter().collect();
            }
            i -= 1;
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
        }
        set.insert(Line::from_vector(p, &v));
    }
}

pub fn dot(p: u64, a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| x * y % p).sum::<u64>() % p
}

/// The fixed (n-1) x n matrix varpi_l with kernel l: the canonical reduced
/// basis of the annihilator, rows ordered by free coordinate. Returned
/// row-major.
pub fn varpi(line: &Line) -> Vec<u64> {
    let n = line.dim_ambient();
    let p = line.p;
    let pivot = line
        .rep
        .iter()
        .position(|&x| x != 0)
        .expect("line representative nonzero");
    debug_assert_eq!(line.rep[pivot], 1);
    let mut rows = Vec::with_capacity((n - 1) * n);
    for j in 0..n {
        if j == pivot {
            continue;
        }
        let mut row = vec![0u64; n];
        row[j] = 1;
        row[pivot] = (p - line.rep[j]) % p;
        rows.extend(row);
    }
    rows
}

/// varpi as a (degree-lowering) matrix acting on column vectors; not itself a
/// VI morphism (it is surjective, not injective), so it is returned raw.
pub fn varpi_times(line: &Line, alpha: &ViMorphism) -> Vec<u64> {
    let n = line.dim_ambient();
    assert_eq!(alpha.n, n);
    let p = line.p;
    let w = varpi(line);
    let mut out = vec![0u64; (n - 1) * alpha.m];
    for r in 0..n - 1 {
        for k in 0..n {
            let a = w[r * n + k];
            if a == 0 {
                continue;
            }
            for c in 0..alpha.m {
                out[r * alpha.m + c] = (out[r * alpha.m + c] + a * alpha.at(k, c)) % p;
            }
        }
    }
    out
}

/// The stacked map (u^t over I) in VI(n, n+1), or (u^t over varpi_l) in
/// VI(n, n) when a line is supplied (requires u^t(l) != 0).
pub fn special(p: u64, n: usize, u: &[u64], line: Option<&Line>) -> Result<ViMorphism> {
    assert_eq!(u.len(), n);
    match line {
        None => {
            let mut entries = Vec::with_capacity((n + 1) * n);
            entries.extend(u.iter().map(|&x| x % p));
            for r in 0..n {
                for c in 0..n {
                    entries.push(u64::from(r == c));
                }
            }
            Ok(ViMorphism {
                m: n,
                n: n + 1,
                p,
                entries,
            })
        }
        Some(l) => {
            if !l.pairs_nonzero(u) {
                return Err(Error::DegenerateStack);
            }
            let mut entries = Vec::with_capacity(n * n);
            entries.extend(u.iter().map(|&x| x % p));
            entries.extend(varpi(l));
            Ok(ViMorphism {
                m: n,
                n,
                p,
                entries,
            })
        }
    }
}

/// alpha_wp: the unique (l-1) x (n-1) map with
/// alpha_wp . varpi_wp = varpi_{alpha(wp)} . alpha.
pub fn alpha_wp(alpha: &ViMorphism, wp: &Line) -> ViMorphism {
    let p = alpha.p;
    let (n, l) = (alpha.m, alpha.n);
    assert_eq!(wp.dim_ambient(), n);
    let target_line = alpha.line_image(wp);
    let rhs = varpi_times(&target_line, alpha); // (l-1) x n
    let w = varpi(wp); // (n-1) x n
    // Solve X . w = rhs, i.e. w^t . X^t = rhs^t, column by column.
    let wt = fp_transpose(n - 1, n, &w);
    let mut xt = vec![0u64; (n - 1) * (l - 1)];
    for col in 0..l - 1 {
        let b: Vec<u64> = (0..n).map(|r| rhs[col * n + r]).collect();
        let x = fp_solve(p, n, n - 1, &wt, &b).expect("commuting square is solvable");
        for r in 0..n - 1 {
            xt[r * (l - 1) + col] = x[r];
        }
    }
    let entries = fp_transpose(n - 1, l - 1, &xt);
    let result = ViMorphism {
        m: n - 1,
        n: l - 1,
        p,
        entries,
    };
    // Exact check of the defining square.
    let lhs = ViMorphism::compose(
        &result,
        &ViMorphism {
            m: n,
            n: n - 1,
            p,
            entries: w,
        },
    )
    .expect("shape");
    let rhs_m = ViMorphism {
        m: n,
        n: l - 1,
        p,
        entries: rhs,
    };
    assert_eq!(lhs.entries, rhs_m.entries, "varpi square must commute");
    result
}

// --- small F_p linear algebra on raw row-major buffers ---

pub fn fp_transpose(rows: usize, cols: usize, a: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = a[r * cols + c];
        }
    }
    out
}

pub fn fp_rank(p: u64, rows: usize, cols: usize, a: &[u64]) -> usize {
    let mut m = a.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            m.swap(rank * cols + c, pr * cols + c);
        }
        let inv = pow_mod(m[rank * cols + col], p - 2, p);
        for c in 0..cols {
            m[rank * cols + c] = m[rank * cols + c] * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r * cols + col] != 0 {
                let f = m[r * cols + col];
                for c in 0..cols {
                    m[r * cols + c] = (m[r * cols + c] + (p - f) * m[rank * cols + c]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// One solution of A x = b over F_p, or None if inconsistent.
pub fn fp_solve(p: u64, rows: usize, cols: usize, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let w = cols + 1;
    let mut m = vec![0u64; rows * w];
    for r in 0..rows {
        for c in 0..cols {
            m[r * w + c] = a[r * cols + c];
        }
        m[r * w + cols] = b[r] % p;
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..w {
        if row >= rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| m[r * w + col] != 0) else {
            continue;
        };
        for c in 0..w {
            m.swap(row * w + c, pr * w + c);
        }
        let inv = pow_mod(m[row * w + col], p - 2, p);
        for c in 0..w {
            m[row * w + c] = m[row * w + c] * inv % p;
        }
        for r in 0..rows {
            if r != row && m[r * w + col] != 0 {
                let f = m[r * w + col];
                for c in 0..w {
                    m[r * w + c] = (m[r * w + c] + (p - f) * m[row * w + c]) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = m[i * w + cols];
    }
    Some(x)
}

pub fn fp_inverse(p: u64, n: usize, a: &[u64]) -> Option<Vec<u64>> {
    if fp_rank(p, n, n, a) < n {
        return None;
    }
    let mut inv = vec![0u64; n * n];
    for col in 0..n {
        let mut e = vec![0u64; n];
        e[col] = 1;
        let x = fp_solve(p, n, n, a, &e)?;
        for r in 0..n {
            inv[r * n + col] = x[r];
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate(2, 1, 2).len(), 3);
        assert_eq!(enumerate(2, 2, 3).len(), 42);
        assert_eq!(enumerate(3, 1, 1).len(), 2);
        assert_eq!(enumerate(3, 2, 2).len(), 48);
        assert!(enumerate(2, 3, 2).is_empty());
        for a in enumerate(3, 1, 2) {
            assert!(a.is_valid());
        }
    }

    #[test]
    fn compose_identity() {
        let id = ViMorphism::identity(2, 1);
        let a = ViMorphism::from_entries(2, 2, 1, vec![1, 0]);
        assert_eq!(ViMorphism::compose(&a, &id).unwrap(), a);
    }

    #[test]
    fn lines_and_varpi() {
        let ls = lines(2, 2);
        assert_eq!(ls.len(), 3);
        let ls3 = lines(3, 2);
        assert_eq!(ls3.len(), 4);
        for l in lines(3, 3) {
            let w = varpi(&l);
            // w . rep = 0, and w has rank n-1
            let n = 3;
            for r in 0..n - 1 {
                let row: Vec<u64> = (0..n).map(|c| w[r * n + c]).collect();
                assert_eq!(dot(3, &row, &l.rep), 0);
            }
            assert_eq!(fp_rank(3, n - 1, n, &w), n - 1);
        }
        assert_eq!(lines(3, 3).len(), 13);
    }

    #[test]
    fn special_stack() {
        // p=2, n=1, u=(1): rows u^t then I
        let s = special(2, 1, &[1], None).unwrap();
        assert_eq!(s.entries, vec![1, 1]);
        let s0 = special(2, 1, &[0], None).unwrap();
        assert_eq!(s0.entries, vec![0, 1]);
        assert!(s0.is_valid());
        // p=2, n=2, u=(1,0), l = span(1,0): invertible 2x2
        let l = Line::from_vector(2, &[1, 0]);
        let st = special(2, 2, &[1, 0], Some(&l)).unwrap();
        assert!(st.is_valid());
        assert_eq!(fp_rank(2, 2, 2, &st.entries), 2);
        // degenerate: u^t(l) = 0
        assert!(matches!(
            special(2, 2, &[0, 1], Some(&l)),
            Err(Error::DegenerateStack)
        ));
    }

    #[test]
    fn alpha_wp_identity_and_swap() {
        let p = 2;
        let id = ViMorphism::identity(p, 2);
        for l in lines(p, 2) {
            let a = alpha_wp(&id, &l);
            assert!(a.is_identity());
        }
        let swap = ViMorphism::from_entries(p, 2, 2, vec![0, 1, 1, 0]);
        let l = Line::from_vector(p, &[1, 0]);
        let a = alpha_wp(&swap, &l);
        assert_eq!((a.n, a.m), (1, 1));
        // defining equation checked inside alpha_wp; also full column rank
        assert!(a.is_valid());
    }

    #[test]
    fn alpha_wp_rank_sweep() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3] {
            for _ in 0..20 {
                let n = rng.random_range(2..=3usize);
                let l = rng.random_range(n..=3usize);
                let all = enumerate(p, n, l);
                let alpha = all[rng.random_range(0..all.len())].clone();
                let ls = lines(p, n);
                let wp = ls[rng.random_range(0..ls.len())].clone();
                let a = alpha_wp(&alpha, &wp);
                assert_eq!(fp_rank(p, a.n, a.m, &a.entries), n - 1);
            }
        }
    }
}

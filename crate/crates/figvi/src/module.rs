//! Graded modules over the truncated category algebra kC_N.
//!
//! A module stores exact action matrices for a small canonical generating
//! set only: the endomorphism-group generators of each degree and the
//! standard one-step inclusion. The surjective-composition axiom guarantees
//! these generate every morphism of the truncation; `action` evaluates an
//! arbitrary morphism on demand by factoring it through that set.

use std::sync::Arc;

use crate::action::{Action, MonomialMatrix};
use crate::cat::{Category, Morphism};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::FieldSpec;

#[derive(Debug, Clone)]
pub struct TruncatedModule {
    pub cat: Category,
    pub field: FieldSpec,
    /// Truncation degree N; data covers degrees 0..=N.
    pub trunc: usize,
    pub dims: Vec<usize>,
    /// Per degree, one matrix per canonical endomorphism-group generator.
    pub end_gens: Vec<Vec<Action>>,
    /// steps[i] is the action of the standard inclusion i -> i+1.
    pub steps: Vec<Action>,
}

impl TruncatedModule {
    pub fn zero(cat: Category, field: FieldSpec, trunc: usize) -> Arc<TruncatedModule> {
        let dims = vec![0; trunc + 1];
        let end_gens = (0..=trunc)
            .map(|i| {
                (0..cat.end_generators(i).len())
                    .map(|_| Action::zero(0, 0, field))
                    .collect()
            })
            .collect();
        let steps = (0..trunc).map(|_| Action::zero(0, 0, field)).collect();
        Arc::new(TruncatedModule {
            cat,
            field,
            trunc,
            dims,
            end_gens,
            steps,
        })
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_module(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Action of an endomorphism at degree `i` via the generator word.
    pub fn endo_action(&self, w: &Morphism) -> Action {
        let i = w.source();
        assert!(i <= self.trunc, "degree beyond truncation");
        let word = self.cat.factor_endo(w);
        let mut acc = Action::identity(self.dim(i), self.field);
        for &g in word.iter().rev() {
            acc = self.end_gens[i][g].mul(&acc);
        }
        acc
    }

    /// Action of an arbitrary morphism of the truncation.
    pub fn action(&self, alpha: &Morphism) -> Action {
        let (i, j) = (alpha.source(), alpha.target());
        assert!(j <= self.trunc, "degree beyond truncation");
        if i == j {
            return self.endo_action(alpha);
        }
        if j == i + 1 {
            let w = self.cat.complete_one_step(alpha);
            return self.endo_action(&w).mul(&self.steps[i]);
        }
        let beta = self.cat.peel_one_step(alpha);
        self.action(&beta).mul(&self.steps[i])
    }

    /// Pullback along the inclusion C_n -> C_N: drop everything above n.
    pub fn restrict(&self, n: usize) -> Arc<TruncatedModule> {
        assert!(n <= self.trunc);
        Arc::new(TruncatedModule {
            cat: self.cat.clone(),
            field: self.field,
            trunc: n,
            dims: self.dims[..=n].to_vec(),
            end_gens: self.end_gens[..=n].to_vec(),
            steps: self.steps[..n.min(self.steps.len())].to_vec(),
        })
    }

    /// Pushforward along C_n -> C_N: extend by zero spaces.
    pub fn extend_by_zero(&self, trunc: usize) -> Arc<TruncatedModule> {
        assert!(trunc >= self.trunc);
        let mut dims = self.dims.clone();
        dims.resize(trunc + 1, 0);
        let mut end_gens = self.end_gens.clone();
        for i in self.trunc + 1..=trunc {
            end_gens.push(
                (0..self.cat.end_generators(i).len())
                    .map(|_| Action::zero(0, 0, self.field))
                    .collect(),
            );
        }
        let mut steps = self.steps.clone();
        steps.push(Action::zero(0, self.dim(self.trunc), self.field));
        for _ in self.trunc + 1..trunc {
            steps.push(Action::zero(0, 0, self.field));
        }
        Arc::new(TruncatedModule {
            cat: self.cat.clone(),
            field: self.field,
            trunc,
            dims,
            end_gens,
            steps,
        })
    }

    /// Checks that products of one-step generators are independent of the
    /// factorization, for all two-step composites up to `max_degree`.
    pub fn functoriality_audit(&self, max_degree: usize) -> Result<()> {
        let top = max_degree.min(self.trunc);
        for i in 0..top.saturating_sub(1) {
            let mid = self.cat.enumerate(i, i + 1);
            let outer = self.cat.enumerate(i + 1, i + 2);
            for beta in &mid {
                let vb = self.action(beta);
                for gamma in &outer {
                    let vg = self.action(gamma);
                    let composite = self.cat.compose(gamma, beta)?;
                    let direct = self.action(&composite);
                    if !vg.mul(&vb).equals(&direct) {
                        return Err(Error::ConsistencyFailure(format!(
                            "factorization of a {i} -> {} morphism disagrees",
                            i + 2
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// dims plus dense generator matrices, for CLI output.
    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<serde_json::Value> = (0..=self.trunc)
            .map(|i| {
                serde_json::json!({
                    "degree": i,
                    "endo_generators": self.end_gens[i]
                        .iter()
                        .map(|a| a.to_dense().to_json())
                        .collect::<Vec<_>>(),
                    "step": if i < self.trunc {
                        self.steps[i].to_dense().to_json()
                    } else {
                        serde_json::Value::Null
                    },
                })
            })
            .collect();
        serde_json::json!({
            "field": self.field.to_string(),
            "trunc": self.trunc,
            "dims": self.dims,
            "action": gens,
        })
    }
}

/// The projective kCe_m truncated at N; basis in degree j is C(m, j) in
/// canonical order, morphisms acting by left composition.
pub fn free_module(
    cat: &Category,
    m: usize,
    trunc: usize,
    field: FieldSpec,
) -> Result<Arc<TruncatedModule>> {
    if m > trunc {
        return Err(Error::Truncation(format!(
            "free generator degree {m} exceeds truncation {trunc}"
        )));
    }
    let bases: Vec<Vec<Morphism>> = (0..=trunc).map(|j| cat.enumerate(m, j)).collect();
    let index: Vec<std::collections::HashMap<Morphism, usize>> = bases
        .iter()
        .map(|b| b.iter().cloned().zip(0..).collect())
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let left_mul = |g: &Morphism, j: usize| -> Action {
        let tgt = g.target();
        let map = bases[j]
            .iter()
            .map(|beta| {
                let comp = cat.compose(g, beta).expect("composable");
                Some((index[tgt][&comp], field.one()))
            })
            .collect();
        Action::Monomial(MonomialMatrix::from_map(dims[tgt], field, map))
    };
    let end_gens = (0..=trunc)
        .map(|i| cat.end_generators(i).iter().map(|g| left_mul(g, i)).collect())
        .collect();
    let steps = (0..trunc)
        .map(|i| left_mul(&cat.std_inclusion(i), i))
        .collect();
    Ok(Arc::new(TruncatedModule {
        cat: cat.clone(),
        field,
        trunc,
        dims,
        end_gens,
        steps,
    }))
}

/// The atom kG_m: the regular representation of G_m in degree m, zero
/// elsewhere, with all positive-degree generators acting as zero.
pub fn atom(
    cat: &Category,
    m: usize,
    trunc: usize,
    field: FieldSpec,
) -> Result<Arc<TruncatedModule>> {
    if m > trunc {
        return Err(Error::Truncation(format!(
            "atom degree {m} exceeds truncation {trunc}"
        )));
    }
    let basis = cat.enumerate(m, m);
    let index: std::collections::HashMap<Morphism, usize> =
        basis.iter().cloned().zip(0..).collect();
    let dim = basis.len();
    let mut dims = vec![0usize; trunc + 1];
    dims[m] = dim;
    let end_gens = (0..=trunc)
        .map(|i| {
            cat.end_generators(i)
                .iter()
                .map(|g| {
                    if i == m {
                        let map = basis
                            .iter()
                            .map(|x| {
                                let comp = cat.compose(g, x).expect("composable");
                                Some((index[&comp], field.one()))
                            })
                            .collect();
                        Action::Monomial(MonomialMatrix::from_map(dim, field, map))
                    } else {
                        Action::zero(0, 0, field)
                    }
                })
                .collect()
        })
        .collect();
    let steps = (0..trunc)
        .map(|i| Action::zero(dims[i + 1], dims[i], field))
        .collect();
    Ok(Arc::new(TruncatedModule {
        cat: cat.clone(),
        field,
        trunc,
        dims,
        end_gens,
        steps,
    }))
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &TruncatedModule, b: &TruncatedModule) -> Result<Arc<TruncatedModule>> {
    if a.cat != b.cat {
        return Err(Error::CategoryMismatch("direct sum across categories".into()));
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch("direct sum across fields".into()));
    }
    if a.trunc != b.trunc {
        return Err(Error::Truncation("direct sum across truncations".into()));
    }
    let dims = (0..=a.trunc).map(|i| a.dim(i) + b.dim(i)).collect();
    let end_gens = (0..=a.trunc)
        .map(|i| {
            a.end_gens[i]
                .iter()
                .zip(&b.end_gens[i])
                .map(|(x, y)| pad_block_diag(x, y, a.dim(i), b.dim(i), a.field))
                .collect()
        })
        .collect();
    let steps = (0..a.trunc)
        .map(|i| {
            let x = normalize_zero(&a.steps[i], a.dim(i + 1), a.dim(i), a.field);
            let y = normalize_zero(&b.steps[i], b.dim(i + 1), b.dim(i), b.field);
            x.block_diag(&y)
        })
        .collect();
    Ok(Arc::new(TruncatedModule {
        cat: a.cat.clone(),
        field: a.field,
        trunc: a.trunc,
        dims,
        end_gens,
        steps,
    }))
}

// Zero actions are stored with collapsed shapes; give them the true shape
// before block-diagonal assembly.
fn normalize_zero(a: &Action, rows: usize, cols: usize, field: FieldSpec) -> Action {
    if a.rows() == rows && a.cols() == cols {
        a.clone()
    } else {
        debug_assert!(a.is_zero());
        Action::zero(rows, cols, field)
    }
}

fn pad_block_diag(x: &Action, y: &Action, dx: usize, dy: usize, field: FieldSpec) -> Action {
    normalize_zero(x, dx, dx, field).block_diag(&normalize_zero(y, dy, dy, field))
}

/// A degreewise family of matrices intertwining two modules.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    pub source: Arc<TruncatedModule>,
    pub target: Arc<TruncatedModule>,
    pub blocks: Vec<Action>,
}

impl ModuleHom {
    pub fn identity(module: &Arc<TruncatedModule>) -> ModuleHom {
        ModuleHom {
            source: module.clone(),
            target: module.clone(),
            blocks: (0..=module.trunc)
                .map(|i| Action::identity(module.dim(i), module.field))
                .collect(),
        }
    }

    pub fn zero(source: &Arc<TruncatedModule>, target: &Arc<TruncatedModule>) -> ModuleHom {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            blocks: (0..=source.trunc)
                .map(|i| Action::zero(target.dim(i), source.dim(i), source.field))
                .collect(),
        }
    }

    /// Exact intertwining check against every stored generator.
    pub fn check_intertwining(&self) -> Result<()> {
        let v = &self.source;
        let w = &self.target;
        for i in 0..=v.trunc {
            for (g, (vg, wg)) in v.end_gens[i].iter().zip(&w.end_gens[i]).enumerate() {
                let lhs = self.block(i).mul(&normalize_zero(vg, v.dim(i), v.dim(i), v.field));
                let rhs = normalize_zero(wg, w.dim(i), w.dim(i), w.field).mul(&self.block(i));
                if !lhs.equals(&rhs) {
                    return Err(Error::ConsistencyFailure(format!(
                        "intertwining fails at degree {i}, generator {g}"
                    )));
                }
            }
            if i < v.trunc {
                let vs = normalize_zero(&v.steps[i], v.dim(i + 1), v.dim(i), v.field);
                let ws = normalize_zero(&w.steps[i], w.dim(i + 1), w.dim(i), w.field);
                let lhs = self.block(i + 1).mul(&vs);
                let rhs = ws.mul(&self.block(i));
                if !lhs.equals(&rhs) {
                    return Err(Error::ConsistencyFailure(format!(
                        "intertwining fails on the step {i} -> {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn block(&self, i: usize) -> Action {
        normalize_zero(
            &self.blocks[i],
            self.target.dim(i),
            self.source.dim(i),
            self.source.field,
        )
    }

    pub fn compose(outer: &ModuleHom, inner: &ModuleHom) -> ModuleHom {
        assert_eq!(outer.source.dims, inner.target.dims);
        ModuleHom {
            source: inner.source.clone(),
            target: outer.target.clone(),
            blocks: (0..=inner.source.trunc)
                .map(|i| outer.block(i).mul(&inner.block(i)))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_bijective_degreewise(&self) -> bool {
        (0..=self.source.trunc).all(|i| {
            self.source.dim(i) == self.target.dim(i) && self.block(i).is_bijective()
        })
    }

    pub fn rank_per_degree(&self) -> Vec<usize> {
        (0..=self.source.trunc).map(|i| self.block(i).rank()).collect()
    }

    /// Dense linear combination of homs between the same modules.
    pub fn linear_combination(homs: &[ModuleHom], coeffs: &[crate::scalar::Scalar]) -> ModuleHom {
        assert!(!homs.is_empty());
        assert_eq!(homs.len(), coeffs.len());
        let source = homs[0].source.clone();
        let target = homs[0].target.clone();
        let field = source.field;
        let blocks = (0..=source.trunc)
            .map(|i| {
                let mut acc = Matrix::zero(target.dim(i), source.dim(i), field);
                for (h, c) in homs.iter().zip(coeffs) {
                    if c.is_zero() {
                        continue;
                    }
                    acc = acc.add(&h.block(i).to_dense().scale(c));
                }
                Action::Dense(acc)
            })
            .collect();
        ModuleHom {
            source,
            target,
            blocks,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "blocks": self.blocks.iter().map(|b| b.to_dense().to_json()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn qq() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn free_dims_examples() {
        // |FI(1,j)| = j for j >= 1 (closed form j!/(j-1)!), checked against
        // brute enumeration by hom_size_matches_enumeration in cat.rs.
        let fi = Category::fi();
        let f = free_module(&fi, 1, 3, qq()).unwrap();
        assert_eq!(f.dims, vec![0, 1, 2, 3]);
        let z2 = Category::Fig(GroupSpec::parse("z2").unwrap());
        let f0 = free_module(&z2, 0, 2, qq()).unwrap();
        assert_eq!(f0.dims, vec![1, 1, 1]);
        let vi = Category::Vi(2);
        let fv = free_module(&vi, 1, 3, qq()).unwrap();
        assert_eq!(fv.dims, vec![0, 1, 3, 7]);
        assert!(free_module(&fi, 4, 3, qq()).is_err());
    }

    #[test]
    fn atom_examples() {
        let fi = Category::fi();
        assert_eq!(atom(&fi, 0, 3, qq()).unwrap().dims, vec![1, 0, 0, 0]);
        assert_eq!(atom(&fi, 2, 3, qq()).unwrap().dims[2], 2);
        let z2 = Category::Fig(GroupSpec::parse("z2").unwrap());
        assert_eq!(atom(&z2, 1, 2, qq()).unwrap().dims[1], 2);
    }

    #[test]
    fn action_of_identity_and_functoriality() {
        let fi = Category::fi();
        let f = free_module(&fi, 1, 3, qq()).unwrap();
        for i in 1..=3 {
            let id = fi.identity(i);
            let a = f.action(&id);
            assert!(a.to_dense().is_identity());
        }
        f.functoriality_audit(3).unwrap();
        let z2 = Category::Fig(GroupSpec::parse("z2").unwrap());
        let g = free_module(&z2, 1, 3, qq()).unwrap();
        g.functoriality_audit(3).unwrap();
        let vi = Category::Vi(2);
        let h = free_module(&vi, 1, 3, qq()).unwrap();
        h.functoriality_audit(3).unwrap();
        let a = atom(&fi, 1, 3, qq()).unwrap();
        a.functoriality_audit(3).unwrap();
    }

    #[test]
    fn two_step_action_matches_composite() {
        let fi = Category::fi();
        let f = free_module(&fi, 0, 3, qq()).unwrap();
        for alpha in fi.enumerate(1, 3) {
            let direct = f.action(&alpha);
            // compare against stepwise composition through degree 2
            let beta = fi.peel_one_step(&alpha);
            let composed = f.action(&beta).mul(&f.action(&fi.std_inclusion(1)));
            assert!(direct.equals(&composed));
        }
    }

    #[test]
    fn restrict_and_extend() {
        let fi = Category::fi();
        let f = free_module(&fi, 0, 3, qq()).unwrap();
        let r = f.restrict(0);
        assert_eq!(r.dims, vec![1]);
        let e = r.extend_by_zero(3);
        assert_eq!(e.dims, vec![1, 0, 0, 0]);
        let rr = e.restrict(0);
        assert_eq!(rr.dims, r.dims);
        let a2 = atom(&fi, 2, 3, qq()).unwrap();
        assert!(a2.restrict(1).is_zero_module());
    }

    #[test]
    fn direct_sum_dims() {
        let fi = Category::fi();
        let a = free_module(&fi, 0, 3, qq()).unwrap();
        let b = free_module(&fi, 1, 3, qq()).unwrap();
        let s = direct_sum(&a, &b).unwrap();
        assert_eq!(s.dims, vec![1, 2, 3, 4]);
        let s2 = direct_sum(&b, &a).unwrap();
        assert_eq!(s.dims, s2.dims);
        let z = TruncatedModule::zero(fi.clone(), qq(), 3);
        let sz = direct_sum(&a, &z).unwrap();
        assert_eq!(sz.dims, a.dims);
        // V (+) 0 is isomorphic to V, with a witness
        match crate::homspace::is_isomorphic(&sz, &a, 3).unwrap() {
            crate::homspace::IsoResult::Isomorphic(h) => h.check_intertwining().unwrap(),
            other => panic!("expected isomorphism, got {other:?}"),
        }
        s.functoriality_audit(3).unwrap();
    }
}

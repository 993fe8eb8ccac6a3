//! Hom spaces, kernels, images, cokernels, and the bounded isomorphism
//! search — all by exact linear algebra on the intertwining equations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::matrix::{quotient_map, Matrix};
use crate::module::{ModuleHom, TruncatedModule};
use crate::scalar::Scalar;

/// A basis of Hom_C(V, W) over the truncation, found by solving the
/// intertwining equations against the stored generators. The basis is the
/// canonical null-space basis in a fixed variable order, so repeated runs
/// agree bit for bit.
pub fn hom_space(v: &Arc<TruncatedModule>, w: &Arc<TruncatedModule>) -> Result<Vec<ModuleHom>> {
    if v.field != w.field {
        return Err(Error::FieldMismatch("hom_space".into()));
    }
    if v.trunc != w.trunc {
        return Err(Error::Truncation(
            "hom_space requires equal truncations".into(),
        ));
    }
    if v.cat != w.cat {
        return Err(Error::CategoryMismatch("hom_space".into()));
    }
    let field = v.field;
    let trunc = v.trunc;
    // variable layout: blocks of size dW_i * dV_i, row-major inside a block
    let mut base = vec![0usize; trunc + 2];
    for i in 0..=trunc {
        base[i + 1] = base[i] + w.dim(i) * v.dim(i);
    }
    let nvars = base[trunc + 1];
    let var = |i: usize, r: usize, c: usize| base[i] + r * v.dim(i) + c;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut push_endo_rows = |i: usize, vg: &Matrix, wg: &Matrix| {
        // B_i Vg - Wg B_i = 0
        for r in 0..w.dim(i) {
            for c in 0..v.dim(i) {
                let mut row = vec![field.zero(); nvars];
                for k in 0..v.dim(i) {
                    let coeff = vg.at(k, c);
                    if !coeff.is_zero() {
                        let idx = var(i, r, k);
                        row[idx] = row[idx].add(coeff);
                    }
                }
                for k in 0..w.dim(i) {
                    let coeff = wg.at(r, k);
                    if !coeff.is_zero() {
                        let idx = var(i, k, c);
                        row[idx] = row[idx].sub(coeff);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    };
    for i in 0..=trunc {
        for (vg, wg) in v.end_gens[i].iter().zip(&w.end_gens[i]) {
            push_endo_rows(i, &vg.to_dense(), &wg.to_dense());
        }
    }
    for i in 0..trunc {
        // B_{i+1} Vstd - Wstd B_i = 0
        let vs = v.steps[i].to_dense();
        let ws = w.steps[i].to_dense();
        for r in 0..w.dim(i + 1) {
            for c in 0..v.dim(i) {
                let mut row = vec![field.zero(); nvars];
                for k in 0..v.dim(i + 1) {
                    let coeff = if vs.rows == v.dim(i + 1) && vs.cols == v.dim(i) {
                        vs.at(k, c).clone()
                    } else {
                        field.zero()
                    };
                    if !coeff.is_zero() {
                        let idx = var(i + 1, r, k);
                        row[idx] = row[idx].add(&coeff);
                    }
                }
                for k in 0..w.dim(i) {
                    let coeff = if ws.rows == w.dim(i + 1) && ws.cols == w.dim(i) {
                        ws.at(r, k).clone()
                    } else {
                        field.zero()
                    };
                    if !coeff.is_zero() {
                        let idx = var(i, k, c);
                        row[idx] = row[idx].sub(&coeff);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }

    let constraint = if rows.is_empty() {
        Matrix::zero(0, nvars, field)
    } else {
        Matrix::from_rows(field, rows)
    };
    let null = constraint.null_space();
    let mut out = Vec::with_capacity(null.cols);
    for k in 0..null.cols {
        let blocks = (0..=trunc)
            .map(|i| {
                let m = Matrix::from_fn(w.dim(i), v.dim(i), field, |r, c| {
                    null.at(var(i, r, c), k).clone()
                });
                Action::Dense(m)
            })
            .collect();
        out.push(ModuleHom {
            source: v.clone(),
            target: w.clone(),
            blocks,
        });
    }
    Ok(out)
}

/// Degreewise kernel with its induced module structure and the inclusion.
pub fn kernel(h: &ModuleHom) -> (Arc<TruncatedModule>, ModuleHom) {
    let v = &h.source;
    let field = v.field;
    let bases: Vec<Matrix> = (0..=v.trunc)
        .map(|i| h.block(i).to_dense().null_space())
        .collect();
    let module = induced_submodule(v, &bases);
    let inclusion = ModuleHom {
        source: module.clone(),
        target: v.clone(),
        blocks: bases.into_iter().map(Action::Dense).collect(),
    };
    debug_assert!(inclusion.check_intertwining().is_ok());
    let _ = field;
    (module, inclusion)
}

/// Degreewise image with its induced structure and the inclusion into the
/// target.
pub fn image(h: &ModuleHom) -> (Arc<TruncatedModule>, ModuleHom) {
    let w = &h.target;
    let bases: Vec<Matrix> = (0..=w.trunc)
        .map(|i| column_space_basis(&h.block(i).to_dense()))
        .collect();
    let module = induced_submodule(w, &bases);
    let inclusion = ModuleHom {
        source: module.clone(),
        target: w.clone(),
        blocks: bases.into_iter().map(Action::Dense).collect(),
    };
    (module, inclusion)
}

/// Degreewise cokernel with the projection from the target.
pub fn cokernel(h: &ModuleHom) -> (Arc<TruncatedModule>, ModuleHom) {
    let w = &h.target;
    let field = w.field;
    let projections: Vec<Matrix> = (0..=w.trunc)
        .map(|i| {
            let b = column_space_basis(&h.block(i).to_dense());
            quotient_map(&b).expect("independent columns")
        })
        .collect();
    let dims: Vec<usize> = projections.iter().map(|q| q.rows).collect();
    // induced action M with M . Q_i = Q_j . Wg, solved through Q_i^T.
    let induced = |i: usize, j: usize, wg: &Matrix| -> Action {
        let r = projections[j].mul(wg);
        let qt = projections[i].transpose();
        let mt = qt
            .solve_matrix(&r.transpose())
            .expect("cokernel action well-defined");
        Action::Dense(mt.transpose())
    };
    let end_gens = (0..=w.trunc)
        .map(|i| {
            w.end_gens[i]
                .iter()
                .map(|g| {
                    let gd = pad(&g.to_dense(), w.dim(i), w.dim(i), field);
                    induced(i, i, &gd)
                })
                .collect()
        })
        .collect();
    let steps = (0..w.trunc)
        .map(|i| {
            let sd = pad(&w.steps[i].to_dense(), w.dim(i + 1), w.dim(i), field);
            induced(i, i + 1, &sd)
        })
        .collect();
    let module = Arc::new(TruncatedModule {
        cat: w.cat.clone(),
        field,
        trunc: w.trunc,
        dims,
        end_gens,
        steps,
    });
    let projection = ModuleHom {
        source: w.clone(),
        target: module.clone(),
        blocks: projections.into_iter().map(Action::Dense).collect(),
    };
    (module, projection)
}

fn pad(m: &Matrix, rows: usize, cols: usize, field: crate::scalar::FieldSpec) -> Matrix {
    if m.rows == rows && m.cols == cols {
        m.clone()
    } else {
        debug_assert!(m.is_zero());
        Matrix::zero(rows, cols, field)
    }
}

/// Canonical basis of the column space: transpose, rref, keep nonzero rows.
fn column_space_basis(m: &Matrix) -> Matrix {
    let (r, pivots) = m.transpose().rref();
    Matrix::from_fn(m.rows, pivots.len(), m.field, |row, k| r.at(k, row).clone())
}

/// The submodule of `ambient` spanned degreewise by the columns of `bases`
/// (which must be generator-stable), with the induced exact action.
pub fn induced_submodule(
    ambient: &Arc<TruncatedModule>,
    bases: &[Matrix],
) -> Arc<TruncatedModule> {
    let field = ambient.field;
    let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
    let solve_through = |i: usize, j: usize, g: &Matrix| -> Action {
        let rhs = g.mul(&bases[i]);
        let x = bases[j]
            .solve_matrix(&rhs)
            .expect("subspace is stable under the action");
        Action::Dense(x)
    };
    let end_gens = (0..=ambient.trunc)
        .map(|i| {
            ambient.end_gens[i]
                .iter()
                .map(|g| {
                    let gd = pad(&g.to_dense(), ambient.dim(i), ambient.dim(i), field);
                    solve_through(i, i, &gd)
                })
                .collect()
        })
        .collect();
    let steps = (0..ambient.trunc)
        .map(|i| {
            let sd = pad(
                &ambient.steps[i].to_dense(),
                ambient.dim(i + 1),
                ambient.dim(i),
                field,
            );
            solve_through(i, i + 1, &sd)
        })
        .collect();
    Arc::new(TruncatedModule {
        cat: ambient.cat.clone(),
        field,
        trunc: ambient.trunc,
        dims,
        end_gens,
        steps,
    })
}

/// Outcome of the bounded isomorphism search. `Undecided` is honest: the
/// search failed without proving anything (dims agreeing but no invertible
/// combination found), as opposed to the dims-mismatch proof of
/// non-isomorphism.
#[derive(Debug, Clone)]
pub enum IsoResult {
    Isomorphic(Box<ModuleHom>),
    DimsMismatch,
    Undecided { tries: usize },
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

/// Searches Hom(V, W) for a degreewise-invertible element: each basis hom,
/// then the all-ones combination, then 64 seeded pseudorandom small-integer
/// combinations.
pub fn is_isomorphic(
    v: &Arc<TruncatedModule>,
    w: &Arc<TruncatedModule>,
    seed: u64,
) -> Result<IsoResult> {
    if v.dims != w.dims {
        return Ok(IsoResult::DimsMismatch);
    }
    if v.is_zero_module() {
        return Ok(IsoResult::Isomorphic(Box::new(ModuleHom::zero(v, w))));
    }
    let basis = hom_space(v, w)?;
    let mut tries = 0;
    for h in &basis {
        tries += 1;
        if h.is_bijective_degreewise() {
            return Ok(IsoResult::Isomorphic(Box::new(h.clone())));
        }
    }
    if basis.is_empty() {
        return Ok(IsoResult::Undecided { tries });
    }
    let field = v.field;
    let ones = vec![field.one(); basis.len()];
    tries += 1;
    let all_ones = ModuleHom::linear_combination(&basis, &ones);
    if all_ones.is_bijective_degreewise() {
        return Ok(IsoResult::Isomorphic(Box::new(all_ones)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let coeffs: Vec<Scalar> = (0..basis.len())
            .map(|_| field.from_i64(rng.random_range(-2..=2)))
            .collect();
        tries += 1;
        let h = ModuleHom::linear_combination(&basis, &coeffs);
        if h.is_bijective_degreewise() {
            return Ok(IsoResult::Isomorphic(Box::new(h)));
        }
    }
    Ok(IsoResult::Undecided { tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::Category;
    use crate::module::{atom, direct_sum, free_module};
    use crate::scalar::FieldSpec;

    fn qq() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn yoneda_dimension() {
        // dim Hom(kCe_m, V) = dim V(m)
        let fi = Category::fi();
        for m in 0..=2usize {
            let f = free_module(&fi, m, 3, qq()).unwrap();
            for target_m in 0..=3usize {
                let v = free_module(&fi, target_m, 3, qq()).unwrap();
                let h = hom_space(&f, &v).unwrap();
                assert_eq!(h.len(), v.dim(m), "Hom(free({m}), free({target_m}))");
                for hom in &h {
                    hom.check_intertwining().unwrap();
                }
            }
            let a = atom(&fi, 1, 3, qq()).unwrap();
            assert_eq!(hom_space(&f, &a).unwrap().len(), a.dim(m));
        }
    }

    #[test]
    fn hom_free_one_to_free_zero() {
        let fi = Category::fi();
        let f1 = free_module(&fi, 1, 4, qq()).unwrap();
        let f0 = free_module(&fi, 0, 4, qq()).unwrap();
        assert_eq!(hom_space(&f1, &f0).unwrap().len(), 1);
    }

    #[test]
    fn hom_atom_to_free_vanishes() {
        let fi = Category::fi();
        let a0 = atom(&fi, 0, 4, qq()).unwrap();
        for n in 0..=3usize {
            let f = free_module(&fi, n, 4, qq()).unwrap();
            assert!(hom_space(&a0, &f).unwrap().is_empty());
        }
    }

    #[test]
    fn hom_additive_over_direct_sum() {
        let fi = Category::fi();
        let v = free_module(&fi, 1, 3, qq()).unwrap();
        let v2 = free_module(&fi, 2, 3, qq()).unwrap();
        let w = free_module(&fi, 0, 3, qq()).unwrap();
        let lhs = hom_space(&direct_sum(&v, &v2).unwrap(), &w).unwrap().len();
        let rhs = hom_space(&v, &w).unwrap().len() + hom_space(&v2, &w).unwrap().len();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let fi = Category::fi();
        let f = free_module(&fi, 0, 3, qq()).unwrap();
        let (k, _) = kernel(&ModuleHom::identity(&f));
        assert!(k.is_zero_module());
        let a = atom(&fi, 1, 3, qq()).unwrap();
        let z = ModuleHom::zero(&f, &a);
        let (kz, incl) = kernel(&z);
        assert_eq!(kz.dims, f.dims);
        incl.check_intertwining().unwrap();
        // image of zero map is zero, cokernel of identity is zero
        let (im, _) = image(&z);
        assert!(im.is_zero_module());
        let (cok, _) = cokernel(&ModuleHom::identity(&f));
        assert!(cok.is_zero_module());
    }

    #[test]
    fn rank_nullity_on_random_homs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xBEEF);
        let fi = Category::fi();
        // random homs between free modules via Yoneda: pick a random image of
        // the source generator
        for _ in 0..50 {
            let m = rng.random_range(0..=2usize);
            let m2 = rng.random_range(0..=2usize);
            let v = free_module(&fi, m, 3, qq()).unwrap();
            let w = free_module(&fi, m2, 3, qq()).unwrap();
            let basis = hom_space(&v, &w).unwrap();
            if basis.is_empty() {
                continue;
            }
            let coeffs: Vec<Scalar> = (0..basis.len())
                .map(|_| qq().from_i64(rng.random_range(-2..=2)))
                .collect();
            let h = ModuleHom::linear_combination(&basis, &coeffs);
            let (k, _) = kernel(&h);
            let (im, _) = image(&h);
            let (cok, _) = cokernel(&h);
            for i in 0..=3usize {
                assert_eq!(k.dim(i) + im.dim(i), v.dim(i), "rank-nullity at {i}");
                assert_eq!(cok.dim(i) + im.dim(i), w.dim(i));
            }
        }
    }

    #[test]
    fn iso_search_examples() {
        let fi = Category::fi();
        let f = free_module(&fi, 0, 2, qq()).unwrap();
        match is_isomorphic(&f, &f, 1).unwrap() {
            IsoResult::Isomorphic(h) => {
                h.check_intertwining().unwrap();
                assert!(h.is_bijective_degreewise());
            }
            other => panic!("expected isomorphism, got {other:?}"),
        }
        let a = atom(&fi, 0, 2, qq()).unwrap();
        assert!(matches!(
            is_isomorphic(&f, &a, 1).unwrap(),
            IsoResult::DimsMismatch
        ));
    }
}

//! Explicit rational irreducibles: Specht modules for symmetric groups via
//! polytabloids, and simple modules of G wr S_n for G in {trivial, Z/2}
//! built as induced modules along the monoidal inclusion G_a x G_b -> G_n.

use std::collections::HashMap;
use std::sync::Arc;

use crate::action::Action;
use crate::cat::{Category, Morphism};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::TruncatedModule;
use crate::partition::{Partition, PartitionFunction};
use crate::scalar::FieldSpec;

/// The Specht representation of S_n for a partition of n: a basis of
/// polytabloids inside the tabloid permutation module, with the matrix of
/// any permutation computable exactly.
pub struct SpechtRep {
    pub shape: Partition,
    pub dim: usize,
    field: FieldSpec,
    tabloids: Vec<Vec<Vec<usize>>>,
    tabloid_index: HashMap<Vec<Vec<usize>>, usize>,
    /// tabloid-space coordinates of the standard polytabloids (columns).
    basis: Matrix,
}

fn tabloid_of(shape: &Partition, filling: &[usize]) -> Vec<Vec<usize>> {
    let mut rows = Vec::with_capacity(shape.len());
    let mut pos = 0;
    for &r in &shape.parts {
        let mut row: Vec<usize> = filling[pos..pos + r].to_vec();
        row.sort_unstable();
        rows.push(row);
        pos += r;
    }
    rows
}

fn enumerate_fillings(n: usize) -> Vec<Vec<usize>> {
    // all permutations of 1..=n in lexicographic order
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

fn is_standard(shape: &Partition, filling: &[usize]) -> bool {
    let mut grid: Vec<Vec<usize>> = Vec::new();
    let mut pos = 0;
    for &r in &shape.parts {
        grid.push(filling[pos..pos + r].to_vec());
        pos += r;
    }
    for row in &grid {
        if row.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
    }
    for i in 1..grid.len() {
        for j in 0..grid[i].len() {
            if grid[i - 1][j] > grid[i][j] {
                return false;
            }
        }
    }
    true
}

/// Sign and images of the column-stabilizer elements of a filling.
fn column_group(shape: &Partition, filling: &[usize]) -> Vec<(Vec<usize>, i64)> {
    // columns as lists of entries
    let ncols = shape.part(0);
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut pos = 0;
    for &r in &shape.parts {
        for j in 0..r {
            columns[j].push(filling[pos + j]);
        }
        pos += r;
    }
    // all products of per-column permutations, with signs
    let mut elements: Vec<(HashMap<usize, usize>, i64)> = vec![(HashMap::new(), 1)];
    for col in &columns {
        let perms = permutations_with_sign(col);
        let mut next = Vec::with_capacity(elements.len() * perms.len());
        for (map, sign) in &elements {
            for (pmap, psign) in &perms {
                let mut m = map.clone();
                m.extend(pmap.iter().map(|(k, v)| (*k, *v)));
                next.push((m, sign * psign));
            }
        }
        elements = next;
    }
    elements
        .into_iter()
        .map(|(map, sign)| {
            let image: Vec<usize> = filling
                .iter()
                .map(|x| map.get(x).copied().unwrap_or(*x))
                .collect();
            (image, sign)
        })
        .collect()
}

fn permutations_with_sign(items: &[usize]) -> Vec<(HashMap<usize, usize>, i64)> {
    fn rec(
        items: &[usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<(HashMap<usize, usize>, i64)>,
    ) {
        if chosen.len() == items.len() {
            let map: HashMap<usize, usize> =
                items.iter().copied().zip(chosen.iter().copied()).collect();
            // sign by inversion count relative to items order
            let mut inv = 0;
            for i in 0..chosen.len() {
                for j in i + 1..chosen.len() {
                    let pi = items.iter().position(|&x| x == chosen[i]).unwrap();
                    let pj = items.iter().position(|&x| x == chosen[j]).unwrap();
                    if pi > pj {
                        inv += 1;
                    }
                }
            }
            out.push((map, if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for &v in items {
            if !chosen.contains(&v) {
                chosen.push(v);
                rec(items, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(items, &mut Vec::new(), &mut out);
    out
}

impl SpechtRep {
    pub fn new(shape: &Partition, field: FieldSpec) -> SpechtRep {
        let n = shape.size();
        let fillings = enumerate_fillings(n);
        let mut tabloids = Vec::new();
        let mut tabloid_index = HashMap::new();
        for f in &fillings {
            let t = tabloid_of(shape, f);
            if !tabloid_index.contains_key(&t) {
                tabloid_index.insert(t.clone(), tabloids.len());
                tabloids.push(t);
            }
        }
        let standard: Vec<&Vec<usize>> = fillings
            .iter()
            .filter(|f| is_standard(shape, f))
            .collect();
        let mut basis = Matrix::zero(tabloids.len(), standard.len(), field);
        for (col, filling) in standard.iter().enumerate() {
            for (image, sign) in column_group(shape, filling) {
                let t = tabloid_of(shape, &image);
                let row = tabloid_index[&t];
                let cur = basis.at(row, col).add(&field.from_i64(sign));
                basis.set(row, col, cur);
            }
        }
        debug_assert_eq!(basis.rank(), standard.len());
        SpechtRep {
            shape: shape.clone(),
            dim: standard.len(),
            field,
            tabloids,
            tabloid_index,
            basis,
        }
    }

    /// Matrix of a permutation (one-line notation, 1-based) on the Specht
    /// basis.
    pub fn matrix(&self, perm: &[usize]) -> Matrix {
        let mut p = Matrix::zero(self.tabloids.len(), self.tabloids.len(), self.field);
        for (i, t) in self.tabloids.iter().enumerate() {
            let image: Vec<Vec<usize>> = t
                .iter()
                .map(|row| {
                    let mut r: Vec<usize> = row.iter().map(|&x| perm[x - 1]).collect();
                    r.sort_unstable();
                    r
                })
                .collect();
            p.set(self.tabloid_index[&image], i, self.field.one());
        }
        let moved = p.mul(&self.basis);
        self.basis
            .solve_matrix(&moved)
            .expect("Specht subspace is stable")
    }
}

/// Kronecker product, row-major blocks: (A (x) B)[(i dB + j), (k dB' + l)].
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, a.field, |r, c| {
        let (ar, br) = (r / b.rows, r % b.rows);
        let (ac, bc) = (c / b.cols, c % b.cols);
        a.at(ar, ac).mul(b.at(br, bc))
    })
}

/// An exact matrix representation of the wreath group G_i = C(i, i),
/// given by a function on group elements.
pub struct GroupRep {
    pub degree: usize,
    pub dim: usize,
    matrices: HashMap<Morphism, Matrix>,
}

impl GroupRep {
    pub fn matrix(&self, w: &Morphism) -> &Matrix {
        &self.matrices[w]
    }
}

/// chi-twisted Specht representation of G wr S_m for a linear character
/// index (0 = trivial, 1 = sign of the color sum for Z/2): the space is the
/// Specht module of the underlying permutation, scaled by the character of
/// the color product.
fn twisted_specht_rep(
    cat: &Category,
    chi_index: usize,
    shape: &Partition,
    field: FieldSpec,
) -> GroupRep {
    let m = shape.size();
    let specht = SpechtRep::new(shape, field);
    let mut matrices = HashMap::new();
    for w in cat.enumerate(m, m) {
        let fig = w.as_fig();
        let mut mat = specht.matrix(&fig.f);
        if chi_index == 1 {
            let color_sum: u64 = fig.colors.iter().map(|c| c[0]).sum();
            if color_sum % 2 == 1 {
                mat = mat.scale(&field.from_i64(-1));
            }
        }
        matrices.insert(w, mat);
    }
    GroupRep {
        degree: m,
        dim: specht.dim,
        matrices,
    }
}

/// Induction of an outer tensor product along G_a x G_b -> G_{a+b}: the
/// induced module on coset representatives, with exact block matrices.
fn induce_product(cat: &Category, x: &GroupRep, y: &GroupRep, field: FieldSpec) -> GroupRep {
    let (a, b) = (x.degree, y.degree);
    let n = a + b;
    let group_n = cat.enumerate(n, n);
    // the subgroup H = image of G_a x G_b under the monoidal embedding
    let mut h_pairs: HashMap<Morphism, (Morphism, Morphism)> = HashMap::new();
    for ha in cat.enumerate(a, a) {
        for hb in cat.enumerate(b, b) {
            h_pairs.insert(cat.monoidal(&ha, &hb), (ha.clone(), hb.clone()));
        }
    }
    // left coset representatives in enumeration order
    let mut reps: Vec<Morphism> = Vec::new();
    let mut covered: std::collections::HashSet<Morphism> = std::collections::HashSet::new();
    for k in &group_n {
        if covered.contains(k) {
            continue;
        }
        for h in h_pairs.keys() {
            covered.insert(cat.compose(k, h).expect("composable"));
        }
        reps.push(k.clone());
    }
    let inner_dim = x.dim * y.dim;
    let dim = reps.len() * inner_dim;
    let decompose = |k: &Morphism| -> (usize, Morphism) {
        // k = x_{r'} h for a unique coset rep and h in H
        for (ri, r) in reps.iter().enumerate() {
            let rinv = cat.inverse_endo(r);
            let h = cat.compose(&rinv, k).expect("composable");
            if h_pairs.contains_key(&h) {
                return (ri, h);
            }
        }
        unreachable!("cosets cover the group")
    };
    let mut matrices = HashMap::new();
    for k in &group_n {
        let mut mat = Matrix::zero(dim, dim, field);
        for (ri, r) in reps.iter().enumerate() {
            let kr = cat.compose(k, r).expect("composable");
            let (rj, h) = decompose(&kr);
            let (ha, hb) = &h_pairs[&h];
            let block = kron(x.matrix(ha), y.matrix(hb));
            for br in 0..inner_dim {
                for bc in 0..inner_dim {
                    let v = block.at(br, bc);
                    if !v.is_zero() {
                        mat.set(rj * inner_dim + br, ri * inner_dim + bc, v.clone());
                    }
                }
            }
        }
        matrices.insert(k.clone(), mat);
    }
    GroupRep {
        degree: n,
        dim,
        matrices,
    }
}

/// The simple module of kG_i for the given label, as a truncated module
/// concentrated in degree i = |label|. Supported for G trivial (Specht
/// modules) and G = Z/2 (induced bipartition modules), over the rationals
/// or any field of characteristic 0 semantics (exact scalars).
pub fn simple_module(
    cat: &Category,
    label: &PartitionFunction,
    trunc: usize,
    field: FieldSpec,
) -> Result<Arc<TruncatedModule>> {
    let Category::Fig(group) = cat else {
        return Err(Error::UnsupportedGroup(
            "simple modules are built for FI_G only".into(),
        ));
    };
    let expected_slots = match group.order() {
        1 => 1,
        2 => 2,
        _ => {
            return Err(Error::UnsupportedGroup(format!(
                "simple module construction supports trivial and z2 groups, not {group}"
            )))
        }
    };
    if label.parts.len() != expected_slots {
        return Err(Error::MalformedLabel(format!(
            "label has {} slots, group needs {expected_slots}",
            label.parts.len()
        )));
    }
    let degree = label.size();
    if degree > trunc {
        return Err(Error::Truncation(format!(
            "simple degree {degree} exceeds truncation {trunc}"
        )));
    }
    let rep = if expected_slots == 1 {
        twisted_specht_rep(cat, 0, &label.parts[0], field)
    } else {
        let x = twisted_specht_rep(cat, 0, &label.parts[0], field);
        let y = twisted_specht_rep(cat, 1, &label.parts[1], field);
        induce_product(cat, &x, &y, field)
    };
    let mut dims = vec![0usize; trunc + 1];
    dims[degree] = rep.dim;
    let end_gens = (0..=trunc)
        .map(|i| {
            cat.end_generators(i)
                .iter()
                .map(|g| {
                    if i == degree {
                        Action::Dense(rep.matrix(g).clone())
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

/// All simple labels of kG_i for the supported groups, in canonical order.
pub fn simple_labels(cat: &Category, degree: usize) -> Result<Vec<PartitionFunction>> {
    let Category::Fig(group) = cat else {
        return Err(Error::UnsupportedGroup("FI_G only".into()));
    };
    let slots = match group.order() {
        1 => 1,
        2 => 2,
        _ => {
            return Err(Error::UnsupportedGroup(format!(
                "simple labels supported for trivial and z2 groups, not {group}"
            )))
        }
    };
    Ok(crate::partition::partition_functions(slots, degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::homspace::hom_space;

    fn qq() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn specht_dimensions_match_hooks() {
        for spec in ["3", "2,1", "1,1,1", "2,2", "3,1"] {
            let shape = Partition::parse(spec).unwrap();
            let rep = SpechtRep::new(&shape, qq());
            assert_eq!(rep.dim as u64, shape.standard_tableaux(), "shape {spec}");
        }
    }

    #[test]
    fn specht_is_a_representation() {
        let shape = Partition::parse("2,1").unwrap();
        let rep = SpechtRep::new(&shape, qq());
        // s1 s2 relations: s^2 = 1, braid
        let s1 = rep.matrix(&[2, 1, 3]);
        let s2 = rep.matrix(&[1, 3, 2]);
        assert!(s1.mul(&s1).is_identity());
        assert!(s2.mul(&s2).is_identity());
        let lhs = s1.mul(&s2).mul(&s1);
        let rhs = s2.mul(&s1).mul(&s2);
        assert_eq!(lhs, rhs);
        // sign representation: swap acts by -1
        let sign = SpechtRep::new(&Partition::parse("1,1").unwrap(), qq());
        let m = sign.matrix(&[2, 1]);
        assert_eq!(*m.at(0, 0), qq().from_i64(-1));
    }

    #[test]
    fn fi_simples_and_end_dim() {
        let fi = Category::fi();
        for (spec, dim) in [("3", 1), ("2,1", 2), ("1,1,1", 1)] {
            let label = PartitionFunction::new(vec![Partition::parse(spec).unwrap()]);
            let s = simple_module(&fi, &label, 3, qq()).unwrap();
            assert_eq!(s.dim(3), dim);
            // irreducibility certificate: End has dimension 1
            let endo = hom_space(&s, &s).unwrap();
            assert_eq!(endo.len(), 1, "End dim for {spec}");
        }
        // trivial 1-dim module at degree n
        let label = PartitionFunction::new(vec![Partition::parse("2").unwrap()]);
        let s = simple_module(&fi, &label, 2, qq()).unwrap();
        assert_eq!(s.dims, vec![0, 0, 1]);
    }

    #[test]
    fn z2_simples_dimensions_and_irreducibility() {
        let z2 = Category::Fig(GroupSpec::parse("z2").unwrap());
        // dim = binom(i, a) f^{lp} f^{lm}; sum of squares = |G_i| = 2^i i!
        for i in 0..=3usize {
            let mut sum_sq = 0u64;
            for label in simple_labels(&z2, i).unwrap() {
                let s = simple_module(&z2, &label, i, qq()).unwrap();
                let d = s.dim(i) as u64;
                let a = label.parts[0].size();
                let expected = binom(i, a)
                    * label.parts[0].standard_tableaux()
                    * label.parts[1].standard_tableaux();
                assert_eq!(d, expected, "label {label}");
                let endo = hom_space(&s, &s).unwrap();
                assert_eq!(endo.len(), 1, "End dim for {label}");
                sum_sq += d * d;
            }
            let group_order = 2u64.pow(i as u32) * (1..=i as u64).product::<u64>().max(1);
            assert_eq!(sum_sq, group_order, "degree {i}");
        }
    }

    fn binom(n: usize, k: usize) -> u64 {
        let mut acc = 1u64;
        for j in 0..k {
            acc = acc * (n - j) as u64 / (j + 1) as u64;
        }
        acc
    }

    #[test]
    fn unsupported_groups_rejected() {
        let z3 = Category::Fig(GroupSpec::parse("z3").unwrap());
        let label = PartitionFunction::new(vec![Partition::empty()]);
        assert!(simple_module(&z3, &label, 1, qq()).is_err());
        let fi = Category::fi();
        let bad = PartitionFunction::new(vec![Partition::empty(), Partition::empty()]);
        assert!(simple_module(&fi, &bad, 1, qq()).is_err());
    }
}

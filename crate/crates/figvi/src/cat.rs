//! The categories FI_G and VI: enumeration, composition, the monoidal
//! structure, the functor iota, and canonical generator machinery.
//!
//! Both categories are EI categories on the non-negative integers with
//! finite upward hom-sets. Endomorphism groups are G wr S_n for FI_G and
//! GL_n(F_p) for VI; every one-step morphism factors as an endomorphism
//! composed with the standard inclusion, which is what lets modules store
//! actions for a small generating set only.

pub mod fig;
pub mod vi;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use fig::FigMorphism;
use vi::ViMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Category {
    /// FI_G for a finite abelian group; FI is the trivial-group case.
    Fig(GroupSpec),
    /// VI over the prime field F_p.
    Vi(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Morphism {
    Fig(FigMorphism),
    Vi(ViMorphism),
}

impl Morphism {
    pub fn source(&self) -> usize {
        match self {
            Morphism::Fig(a) => a.m,
            Morphism::Vi(a) => a.m,
        }
    }

    pub fn target(&self) -> usize {
        match self {
            Morphism::Fig(a) => a.n,
            Morphism::Vi(a) => a.n,
        }
    }

    pub fn as_fig(&self) -> &FigMorphism {
        match self {
            Morphism::Fig(a) => a,
            Morphism::Vi(_) => panic!("expected an FI_G morphism"),
        }
    }

    pub fn as_vi(&self) -> &ViMorphism {
        match self {
            Morphism::Vi(a) => a,
            Morphism::Fig(_) => panic!("expected a VI morphism"),
        }
    }
}

impl Category {
    pub fn fi() -> Category {
        Category::Fig(GroupSpec::trivial())
    }

    pub fn group_order(&self) -> u64 {
        match self {
            Category::Fig(g) => g.order(),
            Category::Vi(_) => panic!("group order is an FI_G notion"),
        }
    }

    /// |C(m, n)| in closed form.
    pub fn hom_size(&self, m: usize, n: usize) -> u64 {
        if m > n {
            return 0;
        }
        match self {
            Category::Fig(g) => {
                let falling: u64 = ((n - m + 1)..=n).map(|x| x as u64).product();
                g.order().pow(m as u32) * falling
            }
            Category::Vi(p) => {
                let qn = p.pow(n as u32);
                (0..m).map(|i| qn - p.pow(i as u32)).product()
            }
        }
    }

    /// Every morphism m -> n exactly once, in the canonical order
    /// (lexicographic on (f, c) for FI_G; column-major lexicographic on
    /// entries for VI).
    pub fn enumerate(&self, m: usize, n: usize) -> Vec<Morphism> {
        match self {
            Category::Fig(g) => fig::enumerate(g, m, n).into_iter().map(Morphism::Fig).collect(),
            Category::Vi(p) => vi::enumerate(*p, m, n).into_iter().map(Morphism::Vi).collect(),
        }
    }

    pub fn identity(&self, n: usize) -> Morphism {
        match self {
            Category::Fig(g) => Morphism::Fig(FigMorphism::identity(g, n)),
            Category::Vi(p) => Morphism::Vi(ViMorphism::identity(*p, n)),
        }
    }

    pub fn is_identity(&self, a: &Morphism) -> bool {
        match (self, a) {
            (Category::Fig(g), Morphism::Fig(a)) => a.is_identity(g),
            (Category::Vi(_), Morphism::Vi(a)) => a.is_identity(),
            _ => false,
        }
    }

    pub fn compose(&self, outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
        match (self, outer, inner) {
            (Category::Fig(g), Morphism::Fig(o), Morphism::Fig(i)) => {
                Ok(Morphism::Fig(FigMorphism::compose(g, o, i)?))
            }
            (Category::Vi(_), Morphism::Vi(o), Morphism::Vi(i)) => {
                Ok(Morphism::Vi(ViMorphism::compose(o, i)?))
            }
            _ => Err(Error::CategoryMismatch(
                "morphisms belong to different categories".into(),
            )),
        }
    }

    pub fn monoidal(&self, a: &Morphism, b: &Morphism) -> Morphism {
        match (a, b) {
            (Morphism::Fig(a), Morphism::Fig(b)) => Morphism::Fig(FigMorphism::monoidal(a, b)),
            (Morphism::Vi(a), Morphism::Vi(b)) => Morphism::Vi(ViMorphism::monoidal(a, b)),
            _ => panic!("category mismatch in monoidal product"),
        }
    }

    /// iota(alpha) = e_1 (x) alpha.
    pub fn iota(&self, a: &Morphism) -> Morphism {
        self.monoidal(&self.identity(1), a)
    }

    pub fn inverse_endo(&self, a: &Morphism) -> Morphism {
        match (self, a) {
            (Category::Fig(g), Morphism::Fig(a)) => Morphism::Fig(a.inverse(g)),
            (Category::Vi(_), Morphism::Vi(a)) => Morphism::Vi(a.inverse()),
            _ => panic!("category mismatch"),
        }
    }

    /// The canonical one-step inclusion i -> i+1 (standard inclusion with
    /// trivial colors for FI_G; identity stacked on a zero row for VI).
    pub fn std_inclusion(&self, i: usize) -> Morphism {
        match self {
            Category::Fig(g) => Morphism::Fig(FigMorphism {
                m: i,
                n: i + 1,
                f: (1..=i).collect(),
                colors: vec![g.identity(); i],
            }),
            Category::Vi(p) => {
                let mut entries = vec![0u64; (i + 1) * i];
                for t in 0..i {
                    entries[t * i + t] = 1;
                }
                Morphism::Vi(ViMorphism {
                    m: i,
                    n: i + 1,
                    p: *p,
                    entries,
                })
            }
        }
    }

    /// A small canonical generating set of the endomorphism group G_i.
    ///
    /// FI_G: adjacent transpositions s_1..s_{i-1}, then one color generator
    /// per nontrivial cyclic factor, placed at position 1.
    /// VI: transvections I + e_{jk} for j != k (row-major), then, for p > 2,
    /// the diagonal matrices with a primitive root at one position.
    pub fn end_generators(&self, i: usize) -> Vec<Morphism> {
        match self {
            Category::Fig(g) => {
                let mut gens = Vec::new();
                for t in 1..i {
                    let mut f: Vec<usize> = (1..=i).collect();
                    f.swap(t - 1, t);
                    gens.push(Morphism::Fig(FigMorphism {
                        m: i,
                        n: i,
                        f,
                        colors: vec![g.identity(); i],
                    }));
                }
                if i >= 1 {
                    for (j, &d) in g.factors.iter().enumerate() {
                        if d > 1 {
                            let mut color = g.identity();
                            color[j] = 1;
                            let mut colors = vec![g.identity(); i];
                            colors[0] = color;
                            gens.push(Morphism::Fig(FigMorphism {
                                m: i,
                                n: i,
                                f: (1..=i).collect(),
                                colors,
                            }));
                        }
                    }
                }
                gens
            }
            Category::Vi(p) => {
                let mut gens = Vec::new();
                for j in 0..i {
                    for k in 0..i {
                        if j == k {
                            continue;
                        }
                        let mut id = ViMorphism::identity(*p, i);
                        id.entries[j * i + k] = 1;
                        gens.push(Morphism::Vi(id));
                    }
                }
                if *p > 2 {
                    let zeta = primitive_root(*p);
                    for j in 0..i {
                        let mut id = ViMorphism::identity(*p, i);
                        id.entries[j * i + j] = zeta;
                        gens.push(Morphism::Vi(id));
                    }
                }
                gens
            }
        }
    }

    /// Factors an endomorphism as a word in `end_generators`. The word is
    /// read left to right as a composite: w = g[w[0]] . g[w[1]] . ...
    pub fn factor_endo(&self, w: &Morphism) -> Vec<usize> {
        assert_eq!(w.source(), w.target());
        match (self, w) {
            (Category::Fig(g), Morphism::Fig(a)) => factor_fig_endo(g, a),
            (Category::Vi(p), Morphism::Vi(a)) => factor_vi_endo(*p, a),
            _ => panic!("category mismatch"),
        }
    }

    /// Completes a one-step morphism alpha: i -> i+1 to an endomorphism w of
    /// i+1 with w . std = alpha.
    pub fn complete_one_step(&self, alpha: &Morphism) -> Morphism {
        assert_eq!(alpha.target(), alpha.source() + 1);
        match (self, alpha) {
            (Category::Fig(g), Morphism::Fig(a)) => {
                let mut f = a.f.clone();
                let missing = (1..=a.n).find(|v| !a.f.contains(v)).expect("one missing");
                f.push(missing);
                let mut colors = a.colors.clone();
                colors.push(g.identity());
                Morphism::Fig(FigMorphism {
                    m: a.n,
                    n: a.n,
                    f,
                    colors,
                })
            }
            (Category::Vi(p), Morphism::Vi(a)) => {
                // append the first standard basis vector keeping full rank
                for k in 0..a.n {
                    let mut entries = vec![0u64; a.n * (a.m + 1)];
                    for r in 0..a.n {
                        for c in 0..a.m {
                            entries[r * (a.m + 1) + c] = a.at(r, c);
                        }
                    }
                    entries[k * (a.m + 1) + a.m] = 1;
                    if vi::fp_rank(*p, a.n, a.m + 1, &entries) == a.m + 1 {
                        return Morphism::Vi(ViMorphism {
                            m: a.m + 1,
                            n: a.n,
                            p: *p,
                            entries,
                        });
                    }
                }
                unreachable!("a full-column-rank matrix always extends")
            }
            _ => panic!("category mismatch"),
        }
    }

    /// Rewrites alpha: i -> j (j > i) as beta . std_i with beta: i+1 -> j.
    pub fn peel_one_step(&self, alpha: &Morphism) -> Morphism {
        assert!(alpha.target() > alpha.source());
        match (self, alpha) {
            (Category::Fig(g), Morphism::Fig(a)) => {
                let mut f = a.f.clone();
                let missing = (1..=a.n).find(|v| !a.f.contains(v)).expect("target larger");
                f.push(missing);
                let mut colors = a.colors.clone();
                colors.push(g.identity());
                Morphism::Fig(FigMorphism {
                    m: a.m + 1,
                    n: a.n,
                    f,
                    colors,
                })
            }
            (Category::Vi(p), Morphism::Vi(a)) => {
                for k in 0..a.n {
                    let mut e = vec![0u64; a.n];
                    e[k] = 1;
                    let mut entries = vec![0u64; a.n * (a.m + 1)];
                    for r in 0..a.n {
                        for c in 0..a.m {
                            entries[r * (a.m + 1) + c] = a.at(r, c);
                        }
                        entries[r * (a.m + 1) + a.m] = e[r];
                    }
                    if vi::fp_rank(*p, a.n, a.m + 1, &entries) == a.m + 1 {
                        return Morphism::Vi(ViMorphism {
                            m: a.m + 1,
                            n: a.n,
                            p: *p,
                            entries,
                        });
                    }
                }
                unreachable!("a full-column-rank matrix always extends")
            }
            _ => panic!("category mismatch"),
        }
    }

    /// A compact display form used in reports.
    pub fn describe(&self, a: &Morphism) -> String {
        match a {
            Morphism::Fig(m) => {
                let colors: Vec<String> = match self {
                    Category::Fig(g) => m.colors.iter().map(|c| g.elt_to_string(c)).collect(),
                    _ => vec![],
                };
                format!("f={:?} c=[{}]", m.f, colors.join(";"))
            }
            Morphism::Vi(m) => format!("{}x{} {:?}", m.n, m.m, m.entries),
        }
    }
}

fn factor_fig_endo(group: &GroupSpec, w: &FigMorphism) -> Vec<usize> {
    let i = w.m;
    // generator indices: transpositions occupy 0..i-1 (s_t at index t-1),
    // color generators follow in factor order (nontrivial factors only).
    let nontrivial: Vec<usize> = group
        .factors
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 1)
        .map(|(j, _)| j)
        .collect();
    let color_gen_index = |j: usize| -> usize {
        (i - 1) + nontrivial.iter().position(|&x| x == j).expect("nontrivial factor")
    };
    let mut word = Vec::new();
    // w = colorpart . (sigma, e) with colorpart = (id, c . sigma^{-1})
    for (u0, &v) in w.f.iter().enumerate() {
        // color c(u0+1) sits at position v of the color part
        let c = &w.colors[u0];
        if *c == group.identity() {
            continue;
        }
        // (id, g at v) = tau_{1v} . (id, g at 1) . tau_{1v}
        let tau: Vec<usize> = if v == 1 {
            vec![]
        } else {
            let mut perm: Vec<usize> = (1..=i).collect();
            perm.swap(0, v - 1);
            fig::perm_word(&perm).into_iter().map(|t| t - 1).collect()
        };
        word.extend(tau.iter().copied());
        for (j, &a) in c.iter().enumerate() {
            for _ in 0..a {
                word.push(color_gen_index(j));
            }
        }
        word.extend(tau.iter().copied());
    }
    word.extend(fig::perm_word(&w.f).into_iter().map(|t| t - 1));
    word
}

fn factor_vi_endo(p: u64, w: &ViMorphism) -> Vec<usize> {
    let i = w.m;
    // generator indices: transvections T_{jk} at position row-major among
    // j != k pairs; diagonals D_j(zeta) follow when p > 2.
    let trans_index = |j: usize, k: usize| -> usize { j * (i - 1) + if k < j { k } else { k - 1 } };
    let diag_index = |j: usize| -> usize { i * (i - 1) + j };
    let zeta = primitive_root(p);
    let dlog = |u: u64| -> u64 {
        let mut acc = 1u64;
        for b in 0..p - 1 {
            if acc == u {
                return b;
            }
            acc = acc * zeta % p;
        }
        panic!("{u} has no discrete log mod {p}");
    };
    // Reduce m to the identity by recorded row operations (no swaps: a zero
    // pivot is repaired by adding a lower row). E_s ... E_1 w = id, so
    // w = inv(E_1) ... inv(E_s) read left to right.
    let mut m = w.entries.clone();
    let at = |m: &Vec<u64>, r: usize, c: usize| m[r * i + c];
    let mut ops: Vec<(bool, usize, usize, u64)> = Vec::new(); // (is_diag, j, k, coeff)
    for col in 0..i {
        if at(&m, col, col) == 0 {
            let k = (col + 1..i)
                .find(|&r| at(&m, r, col) != 0)
                .expect("invertible matrix");
            for c in 0..i {
                m[col * i + c] = (m[col * i + c] + m[k * i + c]) % p;
            }
            ops.push((false, col, k, 1));
        }
        let inv = crate::scalar::pow_mod(at(&m, col, col), p - 2, p);
        if inv != 1 {
            for c in 0..i {
                m[col * i + c] = m[col * i + c] * inv % p;
            }
            ops.push((true, col, col, inv));
        }
        for r in 0..i {
            if r != col && at(&m, r, col) != 0 {
                let f = at(&m, r, col);
                for c in 0..i {
                    m[r * i + c] = (m[r * i + c] + (p - f) * m[col * i + c]) % p;
                }
                ops.push((false, r, col, p - f));
            }
        }
    }
    debug_assert!((0..i).all(|r| (0..i).all(|c| at(&m, r, c) == u64::from(r == c))));
    let mut word = Vec::new();
    for (is_diag, j, k, coeff) in ops {
        if is_diag {
            // inverse of D_j(coeff) is D_j(coeff^{-1}) = D_j(zeta)^dlog
            let u = crate::scalar::pow_mod(coeff, p - 2, p);
            for _ in 0..dlog(u) {
                word.push(diag_index(j));
            }
        } else {
            // inverse of T_{jk}(coeff) is T_{jk}(p - coeff) = T_{jk}(1)^(p-coeff)
            for _ in 0..(p - coeff) % p {
                word.push(trans_index(j, k));
            }
        }
    }
    word
}

pub fn primitive_root(p: u64) -> u64 {
    'outer: for g in 2..p {
        let mut acc = 1u64;
        for _ in 0..p - 2 {
            acc = acc * g % p;
            if acc == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    1 // p = 2
}

//! Morphisms of FI_G: injections of finite sets decorated with group colors.

use crate::error::{Error, Result};
use crate::group::{GroupElt, GroupSpec};

/// A morphism m -> n of FI_G: an injection f: [m] -> [n] together with a
/// coloring c: [m] -> G. `f[t]` is the (1-based) image of t+1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FigMorphism {
    pub m: usize,
    pub n: usize,
    pub f: Vec<usize>,
    pub colors: Vec<GroupElt>,
}

impl FigMorphism {
    pub fn identity(group: &GroupSpec, n: usize) -> FigMorphism {
        FigMorphism {
            m: n,
            n,
            f: (1..=n).collect(),
            colors: vec![group.identity(); n],
        }
    }

    pub fn is_valid(&self) -> bool {
        if self.f.len() != self.m || self.colors.len() != self.m {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &v in &self.f {
            if v < 1 || v > self.n || seen[v - 1] {
                return false;
            }
            seen[v - 1] = true;
        }
        true
    }

    pub fn is_identity(&self, group: &GroupSpec) -> bool {
        self.m == self.n
            && self.f.iter().enumerate().all(|(i, &v)| v == i + 1)
            && self.colors.iter().all(|c| *c == group.identity())
    }

    /// `outer . inner` with the composition rule
    /// f3(t) = f2(f1(t)), c3(t) = c2(f1(t)) c1(t).
    pub fn compose(group: &GroupSpec, outer: &FigMorphism, inner: &FigMorphism) -> Result<FigMorphism> {
        if inner.n != outer.m {
            return Err(Error::Composition {
                inner_target: inner.n,
                outer_source: outer.m,
            });
        }
        let f = inner.f.iter().map(|&t| outer.f[t - 1]).collect();
        let colors = inner
            .f
            .iter()
            .zip(&inner.colors)
            .map(|(&t, c1)| group.mul(&outer.colors[t - 1], c1))
            .collect();
        Ok(FigMorphism {
            m: inner.m,
            n: outer.n,
            f,
            colors,
        })
    }

    /// Monoidal product: block-shifted injection with concatenated coloring.
    pub fn monoidal(a: &FigMorphism, b: &FigMorphism) -> FigMorphism {
        let mut f = a.f.clone();
        f.extend(b.f.iter().map(|&v| v + a.n));
        let mut colors = a.colors.clone();
        colors.extend(b.colors.iter().cloned());
        FigMorphism {
            m: a.m + b.m,
            n: a.n + b.n,
            f,
            colors,
        }
    }

    /// Inverse of an endomorphism.
    pub fn inverse(&self, group: &GroupSpec) -> FigMorphism {
        assert_eq!(self.m, self.n, "only endomorphisms are invertible");
        let mut f = vec![0usize; self.n];
        let mut colors = vec![group.identity(); self.n];
        for t in 1..=self.m {
            let v = self.f[t - 1];
            f[v - 1] = t;
            colors[v - 1] = group.inv(&self.colors[t - 1]);
        }
        FigMorphism {
            m: self.n,
            n: self.m,
            f,
            colors,
        }
    }
}

/// All morphisms m -> n in lexicographic order on (f, c).
pub fn enumerate(group: &GroupSpec, m: usize, n: usize) -> Vec<FigMorphism> {
    if m > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let elements = group.elements();
    let mut f = Vec::with_capacity(m);
    enumerate_injections(m, n, &mut f, &mut |f| {
        // colors as a mixed-radix odometer, most significant first
        let mut idx = vec![0usize; m];
        loop {
            let colors: Vec<GroupElt> = idx.iter().map(|&i| elements[i].clone()).collect();
            out.push(FigMorphism {
                m,
                n,
                f: f.to_vec(),
                colors,
            });
            let mut i = m;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < elements.len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    });
    out
}

fn enumerate_injections(m: usize, n: usize, f: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if f.len() == m {
        emit(f);
        return;
    }
    for v in 1..=n {
        if !f.contains(&v) {
            f.push(v);
            enumerate_injections(m, n, f, emit);
            f.pop();
        }
    }
}

/// The morphism (f_n, c_n) in C(n, n+1): f_n(t) = t+1 with trivial colors.
pub fn special_base(group: &GroupSpec, n: usize) -> FigMorphism {
    FigMorphism {
        m: n,
        n: n + 1,
        f: (1..=n).map(|t| t + 1).collect(),
        colors: vec![group.identity(); n],
    }
}

/// The morphism (f_{n,r,g}, c_{n,r,g}) in C(n, n): sends r to 1 with color g,
/// shifts everything below r up by one.
pub fn special_swap(group: &GroupSpec, n: usize, r: usize, g: &GroupElt) -> Result<FigMorphism> {
    if r < 1 || r > n {
        return Err(Error::OutOfRange(format!("swap index {r} not in [{n}]")));
    }
    let f = (1..=n)
        .map(|t| {
            if t < r {
                t + 1
            } else if t == r {
                1
            } else {
                t
            }
        })
        .collect();
    let colors = (1..=n)
        .map(|t| if t == r { g.clone() } else { group.identity() })
        .collect();
    Ok(FigMorphism {
        m: n,
        n,
        f,
        colors,
    })
}

/// delta_r(x): the unique nondecreasing bijection [l] \ {r} -> [l-1].
fn delta(r: usize, x: usize) -> usize {
    debug_assert_ne!(x, r);
    if x < r {
        x
    } else {
        x - 1
    }
}

/// delta_r applied to the target of alpha; requires r outside the image.
pub fn del_r(alpha: &FigMorphism, r: usize) -> Result<FigMorphism> {
    if r < 1 || r > alpha.n {
        return Err(Error::OutOfRange(format!("r = {r} not in [{}]", alpha.n)));
    }
    if alpha.f.contains(&r) {
        return Err(Error::InvalidDeletion { r });
    }
    Ok(FigMorphism {
        m: alpha.m,
        n: alpha.n - 1,
        f: alpha.f.iter().map(|&x| delta(r, x)).collect(),
        colors: alpha.colors.clone(),
    })
}

/// alpha_s = (delta_{f(s)} . f . delta_s^{-1}, c . delta_s^{-1}).
pub fn alpha_s(alpha: &FigMorphism, s: usize) -> Result<FigMorphism> {
    if s < 1 || s > alpha.m {
        return Err(Error::OutOfRange(format!("s = {s} not in [{}]", alpha.m)));
    }
    let fs = alpha.f[s - 1];
    let mut f = Vec::with_capacity(alpha.m - 1);
    let mut colors = Vec::with_capacity(alpha.m - 1);
    for t in 1..alpha.m {
        // delta_s^{-1}(t)
        let src = if t < s { t } else { t + 1 };
        f.push(delta(fs, alpha.f[src - 1]));
        colors.push(alpha.colors[src - 1].clone());
    }
    Ok(FigMorphism {
        m: alpha.m - 1,
        n: alpha.n - 1,
        f,
        colors,
    })
}

/// Word of adjacent transposition indices (1-based positions t meaning the
/// swap of t, t+1) whose left-to-right composite equals the permutation.
pub fn perm_word(perm: &[usize]) -> Vec<usize> {
    let mut one_line = perm.to_vec();
    let mut swaps = Vec::new();
    // bubble sort by right-composition with adjacent swaps
    loop {
        let mut done = true;
        for t in 0..one_line.len().saturating_sub(1) {
            if one_line[t] > one_line[t + 1] {
                one_line.swap(t, t + 1);
                swaps.push(t + 1);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    // perm . s_{t1} ... s_{tr} = id  =>  perm = s_{tr} . ... . s_{t1}
    swaps.reverse();
    swaps
}

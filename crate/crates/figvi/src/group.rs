//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are integer tuples taken componentwise mod the factor orders.
//! The trivial group is the empty product.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};

/// G = Z/d1 x ... x Z/dk. `factors` lists the cyclic orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub factors: Vec<u64>,
}

/// A group element: one residue per cyclic factor.
pub type GroupElt = Vec<u64>;

impl GroupSpec {
    pub fn trivial() -> GroupSpec {
        GroupSpec { factors: vec![] }
    }

    /// Parses "trivial", "z2", "z3xz2", ... (lowercase, 'x'-separated).
    pub fn parse(s: &str) -> Result<GroupSpec> {
        if s == "trivial" {
            return Ok(GroupSpec::trivial());
        }
        let mut factors = Vec::new();
        for part in s.split('x') {
            let d: u64 = part
                .strip_prefix('z')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad group spec '{s}'")))?;
            if d == 0 {
                return Err(Error::InvalidArgument("cyclic order must be >= 1".into()));
            }
            if d >= 1 << 16 {
                return Err(Error::InvalidArgument(format!("cyclic order {d} too large")));
            }
            factors.push(d);
        }
        Ok(GroupSpec { factors })
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// lcm of the factor orders; 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn identity(&self) -> GroupElt {
        vec![0; self.factors.len()]
    }

    /// All elements in lexicographic order; identity first.
    pub fn elements(&self) -> Vec<GroupElt> {
        let mut out = vec![self.identity()];
        loop {
            let mut next = out.last().unwrap().clone();
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                next[i] += 1;
                if next[i] < self.factors[i] {
                    break;
                }
                next[i] = 0;
            }
            out.push(next);
        }
    }

    pub fn mul(&self, a: &GroupElt, b: &GroupElt) -> GroupElt {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn inv(&self, a: &GroupElt) -> GroupElt {
        a.iter()
            .zip(&self.factors)
            .map(|(x, d)| (d - x) % d)
            .collect()
    }

    pub fn elt_to_string(&self, a: &GroupElt) -> String {
        if a.is_empty() {
            "e".to_string()
        } else {
            a.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "trivial")
        } else {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("z{d}")).collect();
            write!(f, "{}", parts.join("x"))
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

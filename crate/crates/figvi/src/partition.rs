//! Partitions, partition-valued functions on irr(G), padding, and the
//! Pieri combinatorics.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::MalformedLabel(format!(
                "not weakly decreasing positive parts: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: vec![] }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn standard_tableaux(&self) -> u64 {
        let n = self.size();
        if n == 0 {
            return 1;
        }
        let mut numerator = 1u64;
        for k in 1..=n as u64 {
            numerator *= k;
        }
        let mut hooks = 1u64;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = self.parts[i + 1..].iter().filter(|&&r| r > j).count();
                hooks *= (arm + leg + 1) as u64;
            }
        }
        numerator / hooks
    }

    /// Parses "2,1" or "(2,1)" or "" (empty partition).
    pub fn parse(s: &str) -> Result<Partition> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::MalformedLabel(format!("bad partition '{s}'")))
            })
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All partitions of n, first part descending (reverse-lexicographic).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for a in (1..=max.min(n)).rev() {
            prefix.push(a);
            rec(n - a, a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// All partitions obtained from `base` by adding `add` boxes, no two in the
/// same column (horizontal strips), in canonical order.
pub fn pieri_set(base: &Partition, add: usize) -> Vec<Partition> {
    // mu is a horizontal-strip extension iff mu_i >= base_i >= mu_{i+1} and
    // |mu| = |base| + add; rows beyond base.len()+1 are impossible.
    fn rec(
        base: &Partition,
        row: usize,
        remaining: usize,
        upper: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if row > base.len() {
            if remaining == 0 {
                let parts: Vec<usize> = prefix.iter().copied().filter(|&p| p > 0).collect();
                out.push(Partition { parts });
            }
            return;
        }
        let lo = base.part(row);
        // mu_row ranges over [max(lo, next base part), min(upper, lo + remaining)]
        let hi = (lo + remaining).min(upper);
        for mu_row in (lo..=hi).rev() {
            // boxes added in this row: mu_row - lo; also need mu_row >= base_{row}
            // and the strip condition mu_{row+1} <= base_row is enforced by the
            // recursive upper bound.
            prefix.push(mu_row);
            rec(base, row + 1, remaining - (mu_row - lo), lo, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(base, 0, add, usize::MAX, &mut Vec::new(), &mut out);
    out
}

/// hbar: add one box to the first row.
pub fn hbar(p: &Partition) -> Partition {
    let mut parts = p.parts.clone();
    if parts.is_empty() {
        parts.push(1);
    } else {
        parts[0] += 1;
    }
    Partition { parts }
}

/// A partition-valued function on irr(G); index 0 is the trivial character.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionFunction {
    pub parts: Vec<Partition>,
}

impl PartitionFunction {
    pub fn new(parts: Vec<Partition>) -> PartitionFunction {
        PartitionFunction { parts }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.size()).sum()
    }

    pub fn trivial_slot(&self) -> &Partition {
        &self.parts[0]
    }

    /// Serialized as "chi1:(2,1);chi2:(1)", omitting empty slots.
    pub fn key(&self) -> String {
        let pieces: Vec<String> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(i, p)| format!("chi{}:{}", i + 1, p))
            .collect();
        pieces.join(";")
    }
}

impl fmt::Display for PartitionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// lambda[n]: pad the trivial-character partition with a long first row.
/// Requires n >= |lambda| + a where a is the largest part of
/// lambda(chi_1); the boundary case (first row equal to a) is accepted.
pub fn pad(lambda: &PartitionFunction, n: usize) -> Result<PartitionFunction> {
    let total = lambda.size();
    let a = lambda.trivial_slot().part(0);
    if n < total + a {
        return Err(Error::InvalidArgument(format!(
            "padding needs n >= |lambda| + a = {}, got {n}",
            total + a
        )));
    }
    let mut parts = lambda.parts.clone();
    let first = n - total;
    let mut chi1 = Vec::with_capacity(parts[0].len() + 1);
    if first > 0 {
        chi1.push(first);
    }
    chi1.extend(&parts[0].parts);
    parts[0] = Partition::new(chi1)?;
    Ok(PartitionFunction { parts })
}

/// Inverse of pad: strip the first row of the trivial-character partition.
pub fn unpad(padded: &PartitionFunction) -> PartitionFunction {
    let mut parts = padded.parts.clone();
    if !parts[0].is_empty() {
        parts[0] = Partition {
            parts: parts[0].parts[1..].to_vec(),
        };
    }
    PartitionFunction { parts }
}

/// All partition-valued functions of total size n over `slots` characters,
/// in a fixed canonical order.
pub fn partition_functions(slots: usize, n: usize) -> Vec<PartitionFunction> {
    fn rec(
        slots: usize,
        remaining: usize,
        acc: &mut Vec<Partition>,
        out: &mut Vec<PartitionFunction>,
    ) {
        if acc.len() == slots {
            if remaining == 0 {
                out.push(PartitionFunction { parts: acc.clone() });
            }
            return;
        }
        let last = acc.len() == slots - 1;
        for s in (0..=remaining).rev() {
            if last && s != remaining {
                break;
            }
            for p in partitions(s) {
                acc.push(p);
                rec(slots, remaining - s, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(slots, n, &mut Vec::new(), &mut out);
    out
}

/// Report of the hbar bijectivity check for P(n) -> P(n+1).
#[derive(Debug, Clone, Serialize)]
pub struct HbarReport {
    pub base: Partition,
    pub m: usize,
    pub n: usize,
    pub size_n: usize,
    pub size_n1: usize,
    pub injective: bool,
    pub surjective: bool,
    pub meets_threshold: bool,
}

/// Checks hbar: P(n) -> P(n+1) where P(n) is the Pieri set of the padded
/// trivial-slot partition with n - m added boxes. Bijectivity is asserted by
/// the theory only for n >= 2m.
pub fn hbar_check(padded_chi1: &Partition, m: usize, n: usize) -> HbarReport {
    let pn = pieri_set(padded_chi1, n - m);
    let pn1 = pieri_set(padded_chi1, n + 1 - m);
    let images: Vec<Partition> = pn.iter().map(hbar).collect();
    let mut dedup = images.clone();
    dedup.sort();
    dedup.dedup();
    let injective = dedup.len() == images.len();
    let surjective = pn1.iter().all(|q| images.contains(q));
    HbarReport {
        base: padded_chi1.clone(),
        m,
        n,
        size_n: pn.len(),
        size_n1: pn1.len(),
        injective,
        surjective,
        meets_threshold: n >= 2 * m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(3).len(), 3);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(
            partitions(3),
            vec![
                Partition::new(vec![3]).unwrap(),
                Partition::new(vec![2, 1]).unwrap(),
                Partition::new(vec![1, 1, 1]).unwrap(),
            ]
        );
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn hook_length_dimensions() {
        assert_eq!(Partition::parse("3").unwrap().standard_tableaux(), 1);
        assert_eq!(Partition::parse("1,1").unwrap().standard_tableaux(), 1);
        assert_eq!(Partition::parse("2,1").unwrap().standard_tableaux(), 2);
        assert_eq!(Partition::parse("3,2").unwrap().standard_tableaux(), 5);
        assert_eq!(Partition::parse("2,2,1,1").unwrap().standard_tableaux(), 9);
    }

    #[test]
    fn pieri_examples() {
        let one = Partition::parse("1").unwrap();
        let out = pieri_set(&one, 2);
        assert_eq!(
            out,
            vec![
                Partition::parse("3").unwrap(),
                Partition::parse("2,1").unwrap()
            ]
        );
        assert_eq!(pieri_set(&one, 0), vec![one.clone()]);
        assert_eq!(
            pieri_set(&Partition::empty(), 4),
            vec![Partition::parse("4").unwrap()]
        );
        // brute-force cross-check: horizontal strip condition
        let base = Partition::parse("3,1").unwrap();
        for mu in pieri_set(&base, 3) {
            assert_eq!(mu.size(), base.size() + 3);
            for i in 0..mu.len() {
                assert!(mu.part(i) >= base.part(i));
                assert!(base.part(i) >= mu.part(i + 1));
            }
        }
    }

    #[test]
    fn pad_and_unpad() {
        let empty = PartitionFunction::new(vec![Partition::empty()]);
        let p4 = pad(&empty, 4).unwrap();
        assert_eq!(p4.parts[0], Partition::parse("4").unwrap());
        let l1 = PartitionFunction::new(vec![Partition::parse("1").unwrap()]);
        assert_eq!(pad(&l1, 3).unwrap().parts[0], Partition::parse("2,1").unwrap());
        // boundary case n = |lambda| + a is accepted: (1,2) would be invalid,
        // but n - |lambda| = a makes the first row equal to a
        let l2 = PartitionFunction::new(vec![Partition::parse("2").unwrap()]);
        assert!(pad(&l2, 3).is_err());
        assert_eq!(
            pad(&l2, 4).unwrap().parts[0],
            Partition::parse("2,2").unwrap()
        );
        for n in 4..=6 {
            let padded = pad(&l2, n).unwrap();
            assert_eq!(padded.size(), n);
            assert_eq!(unpad(&padded), l2);
        }
    }

    #[test]
    fn hbar_examples() {
        // m=1, lambda(chi1) empty: lambda[1](chi1) = (1)
        let base = Partition::parse("1").unwrap();
        let rep = hbar_check(&base, 1, 2);
        assert!(rep.injective && rep.surjective && rep.meets_threshold);
        assert_eq!(rep.size_n, rep.size_n1);
        // m=2 with lambda[2](chi1) = (1,1)
        let base2 = Partition::parse("1,1").unwrap();
        let rep2 = hbar_check(&base2, 2, 4);
        assert!(rep2.injective && rep2.surjective);
    }

    #[test]
    fn partition_function_enumeration_and_keys() {
        let fns = partition_functions(2, 2);
        // sizes (2,0),(1,1),(0,2) with p(2)=2, p(1)=1: 2*1 + 1*1 + 1*2 = 5
        assert_eq!(fns.len(), 5);
        let l = PartitionFunction::new(vec![
            Partition::parse("2,1").unwrap(),
            Partition::parse("1").unwrap(),
        ]);
        assert_eq!(l.key(), "chi1:(2,1);chi2:(1)");
    }
}

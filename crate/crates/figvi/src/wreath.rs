//! Exact character theory of G wr S_n for finite abelian G: conjugacy
//! classes, irreducible characters on the partition-valued-function labels,
//! the induction product, decomposition of module traces, and the
//! representation-stability multiplicity checker.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cat::{fig::FigMorphism, Category, Morphism};
use crate::cyclotomic::{CycField, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{GroupElt, GroupSpec};
use crate::module::TruncatedModule;
use crate::partition::{
    hbar_check, partition_functions, pieri_set, unpad, Partition,
    PartitionFunction,
};
use crate::report::Report;
use crate::scalar::{FieldSpec, Scalar};

/// Character-theory context for one group G.
pub struct WreathContext {
    pub group: GroupSpec,
    pub cyc: CycField,
    pub elements: Vec<GroupElt>,
    /// chars[b][a]: value of the b-th irreducible character on element a.
    pub chars: Vec<Vec<Cyclotomic>>,
}

impl WreathContext {
    pub fn new(group: &GroupSpec) -> WreathContext {
        let cyc = CycField::new(group.exponent());
        let elements = group.elements();
        let e = group.exponent();
        // character indexed by a tuple b (same shape as elements):
        // chi_b(a) = zeta^(sum_i b_i a_i e / d_i)
        let chars = elements
            .iter()
            .map(|b| {
                elements
                    .iter()
                    .map(|a| {
                        let mut expo = 0u64;
                        for (i, &d) in group.factors.iter().enumerate() {
                            expo = (expo + b[i] * a[i] * (e / d)) % e;
                        }
                        cyc.root_power(expo)
                    })
                    .collect()
            })
            .collect();
        WreathContext {
            group: group.clone(),
            cyc,
            elements,
            chars,
        }
    }

    pub fn irr_count(&self) -> usize {
        self.elements.len()
    }
}

/// A conjugacy class of G wr S_n: a partition for each element of G
/// (the cycle type of the cycles whose color product lies in that class),
/// with total size n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathClass {
    pub cycle_types: Vec<Partition>,
}

impl WreathClass {
    pub fn size(&self) -> usize {
        self.cycle_types.iter().map(|p| p.size()).sum()
    }

    /// Canonical colored-cycle list: (length, element index), longest first
    /// per color, colors in canonical order.
    pub fn cycles(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (g, p) in self.cycle_types.iter().enumerate() {
            for &part in &p.parts {
                out.push((part, g));
            }
        }
        out
    }
}

/// All classes of G wr S_n in canonical order.
pub fn classes(ctx: &WreathContext, n: usize) -> Vec<WreathClass> {
    partition_functions(ctx.elements.len(), n)
        .into_iter()
        .map(|pf| WreathClass {
            cycle_types: pf.parts,
        })
        .collect()
}

fn z_factor(p: &Partition) -> u64 {
    // prod_i i^{m_i} m_i!
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for &part in &p.parts {
        *counts.entry(part).or_insert(0) += 1;
    }
    counts
        .iter()
        .map(|(&i, &m)| (i as u64).pow(m as u32) * (1..=m).product::<u64>())
        .product()
}

/// Order of the centralizer of the class in G wr S_n.
pub fn centralizer_order(ctx: &WreathContext, class: &WreathClass) -> u64 {
    class
        .cycle_types
        .iter()
        .map(|p| z_factor(p) * ctx.group.order().pow(p.len() as u32))
        .product()
}

pub fn wreath_group_order(ctx: &WreathContext, n: usize) -> u64 {
    ctx.group.order().pow(n as u32) * (1..=n as u64).product::<u64>().max(1)
}

/// A canonical representative of the class as an FI_G endomorphism: cycles
/// laid out consecutively, the color of each cycle placed at its first
/// point.
pub fn class_representative(ctx: &WreathContext, class: &WreathClass) -> Morphism {
    let n = class.size();
    let mut f: Vec<usize> = (1..=n).collect();
    let mut colors = vec![ctx.group.identity(); n];
    let mut start = 1usize;
    for (len, g) in class.cycles() {
        // cycle start -> start+1 -> ... -> start+len-1 -> start
        for i in 0..len {
            f[start - 1 + i] = if i + 1 < len { start + i + 1 } else { start };
        }
        colors[start - 1] = ctx.elements[g].clone();
        start += len;
    }
    Morphism::Fig(FigMorphism {
        m: n,
        n,
        f,
        colors,
    })
}

/// Symmetric group character chi^lambda(mu) by Murnaghan-Nakayama on beta
/// numbers.
pub fn sym_char(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "sym_char: |{lambda}| != |{mu}|"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_recursive(&lambda.parts, &mu.parts, &mut memo))
}

fn mn_recursive(
    lambda: &[usize],
    mu: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    // beta numbers: lambda_i + (len - 1 - i)
    let len = lambda.len();
    let betas: Vec<usize> = (0..len).map(|i| lambda[i] + (len - 1 - i)).collect();
    let mut total = 0i64;
    for (pos, &b) in betas.iter().enumerate() {
        if b < r || betas.contains(&(b - r)) {
            continue;
        }
        // height = number of betas strictly between b - r and b
        let height = betas
            .iter()
            .filter(|&&x| x > b - r && x < b)
            .count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut new_betas = betas.clone();
        new_betas[pos] = b - r;
        new_betas.sort_unstable_by(|a, bb| bb.cmp(a));
        // rebuild partition: sorted descending betas minus offsets
        let mut new_lambda: Vec<usize> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .collect();
        while new_lambda.last() == Some(&0) {
            new_lambda.pop();
        }
        total += sign * mn_recursive(&new_lambda, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// The irreducible character of G wr S_n labeled by a partition-valued
/// function, evaluated on a class: sum over assignments of colored cycles to
/// irreducible G-characters, weighted by character values and symmetric
/// group characters on the induced cycle types.
pub fn wreath_char(
    ctx: &WreathContext,
    lambda: &PartitionFunction,
    rho: &WreathClass,
) -> Result<Cyclotomic> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch(format!(
            "wreath_char: |lambda| = {} but |rho| = {}",
            lambda.size(),
            rho.size()
        )));
    }
    let r = ctx.irr_count();
    // group identical cycles
    let mut groups: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for c in rho.cycles() {
        *groups.entry(c).or_insert(0) += 1;
    }
    let groups: Vec<((usize, usize), u64)> = groups.into_iter().collect();
    let capacities: Vec<usize> = lambda.parts.iter().map(|p| p.size()).collect();
    let mut total = ctx.cyc.zero();
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); r];
    distribute(
        ctx,
        lambda,
        &groups,
        0,
        &capacities.clone(),
        &mut assigned,
        BigRational::one(),
        &ctx.cyc.one(),
        &mut total,
    )?;
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    ctx: &WreathContext,
    lambda: &PartitionFunction,
    groups: &[((usize, usize), u64)],
    idx: usize,
    remaining: &[usize],
    assigned: &mut Vec<Vec<usize>>,
    multiplier: BigRational,
    weight: &Cyclotomic,
    total: &mut Cyclotomic,
) -> Result<()> {
    if idx == groups.len() {
        if remaining.iter().any(|&x| x != 0) {
            return Ok(());
        }
        let mut term = ctx.cyc.scale(weight, &multiplier);
        for (chi, cycles) in assigned.iter().enumerate() {
            let mut mu = cycles.clone();
            mu.sort_unstable_by(|a, b| b.cmp(a));
            let mu_p = Partition { parts: mu };
            let chi_val = sym_char(&lambda.parts[chi], &mu_p)?;
            term = ctx.cyc.scale(&term, &BigRational::from(BigInt::from(chi_val)));
        }
        *total = ctx.cyc.add(total, &term);
        return Ok(());
    }
    let ((len, color), count) = groups[idx];
    // distribute `count` identical cycles among the characters
    let r = ctx.irr_count();
    let mut split = vec![0u64; r];
    loop {
        // feasibility: capacity per character
        let feasible = (0..r).all(|chi| (split[chi] as usize) * len <= remaining[chi]);
        let is_total: u64 = split.iter().sum();
        if feasible && is_total == count {
            let mut new_remaining = remaining.to_vec();
            let mut new_weight = weight.clone();
            let mult = multiplier.clone() * multinomial(count, &split);
            for chi in 0..r {
                new_remaining[chi] -= split[chi] as usize * len;
                for _ in 0..split[chi] {
                    assigned[chi].push(len);
                    new_weight = ctx.cyc.mul(&new_weight, &ctx.chars[chi][color]);
                }
            }
            distribute(
                ctx,
                lambda,
                groups,
                idx + 1,
                &new_remaining,
                assigned,
                mult,
                &new_weight,
                total,
            )?;
            for chi in 0..r {
                for _ in 0..split[chi] {
                    assigned[chi].pop();
                }
            }
        }
        // odometer over splits with sum <= count
        let mut i = 0;
        loop {
            if i == r {
                return Ok(());
            }
            split[i] += 1;
            if split.iter().sum::<u64>() <= count {
                break;
            }
            split[i] = 0;
            i += 1;
        }
    }
}

fn multinomial(n: u64, parts: &[u64]) -> BigRational {
    let mut num = BigInt::one();
    for k in 1..=n {
        num *= k;
    }
    let mut den = BigInt::one();
    for &p in parts {
        for k in 1..=p {
            den *= k;
        }
    }
    BigRational::new(num, den)
}

/// An exact class function on G wr S_n.
#[derive(Debug, Clone)]
pub struct CharacterVector {
    pub n: usize,
    pub values: Vec<Cyclotomic>,
}

/// The full character vector of the simple labeled by lambda.
pub fn char_vector(ctx: &WreathContext, lambda: &PartitionFunction) -> Result<CharacterVector> {
    let n = lambda.size();
    let values = classes(ctx, n)
        .iter()
        .map(|rho| wreath_char(ctx, lambda, rho))
        .collect::<Result<_>>()?;
    Ok(CharacterVector { n, values })
}

/// The trivial character of G wr S_n.
pub fn trivial_character(ctx: &WreathContext, n: usize) -> CharacterVector {
    CharacterVector {
        n,
        values: classes(ctx, n).iter().map(|_| ctx.cyc.one()).collect(),
    }
}

/// <x, y> = sum over classes of x(rho) conj(y(rho)) / |centralizer(rho)|.
pub fn inner_product(
    ctx: &WreathContext,
    x: &CharacterVector,
    y: &CharacterVector,
) -> Result<Cyclotomic> {
    if x.n != y.n {
        return Err(Error::SizeMismatch("inner_product degree".into()));
    }
    let cls = classes(ctx, x.n);
    let mut acc = ctx.cyc.zero();
    for (i, rho) in cls.iter().enumerate() {
        let term = ctx.cyc.mul(&x.values[i], &ctx.cyc.conj(&y.values[i]));
        let z = BigRational::new(BigInt::one(), BigInt::from(centralizer_order(ctx, rho)));
        acc = ctx.cyc.add(&acc, &ctx.cyc.scale(&term, &z));
    }
    Ok(acc)
}

/// The induction product along G_m x G_l -> G_{m+l}: the induced character
/// of the outer tensor, computed by class fusion.
pub fn circledast(
    ctx: &WreathContext,
    x: &CharacterVector,
    y: &CharacterVector,
) -> Result<CharacterVector> {
    let n = x.n + y.n;
    let cls_n = classes(ctx, n);
    let index_m: BTreeMap<WreathClass, usize> = classes(ctx, x.n)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let index_l: BTreeMap<WreathClass, usize> = classes(ctx, y.n)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let mut values = Vec::with_capacity(cls_n.len());
    for rho in &cls_n {
        let mut acc = ctx.cyc.zero();
        for (rho1, rho2) in split_class(rho, x.n) {
            let xi = index_m[&rho1];
            let yi = index_l[&rho2];
            let term = ctx.cyc.mul(&x.values[xi], &y.values[yi]);
            let denom = BigRational::new(
                BigInt::one(),
                BigInt::from(centralizer_order(ctx, &rho1) * centralizer_order(ctx, &rho2)),
            );
            acc = ctx.cyc.add(&acc, &ctx.cyc.scale(&term, &denom));
        }
        let z_rho = BigRational::from(BigInt::from(centralizer_order(ctx, rho)));
        values.push(ctx.cyc.scale(&acc, &z_rho));
    }
    Ok(CharacterVector { n, values })
}

/// All splittings of a class into a size-m part and the complement, as
/// multisets of colored cycles.
fn split_class(rho: &WreathClass, m: usize) -> Vec<(WreathClass, WreathClass)> {
    let colors = rho.cycle_types.len();
    // per color: all sub-multisets of the parts
    fn submultisets(parts: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = vec![(Vec::new(), Vec::new())];
        for &p in parts {
            let mut next = Vec::with_capacity(out.len() * 2);
            for (a, b) in &out {
                let mut a1 = a.clone();
                a1.push(p);
                next.push((a1, b.clone()));
                let mut b1 = b.clone();
                b1.push(p);
                next.push((a.clone(), b1));
            }
            out = next;
        }
        out
    }
    let per_color: Vec<Vec<(Vec<usize>, Vec<usize>)>> = rho
        .cycle_types
        .iter()
        .map(|p| submultisets(&p.parts))
        .collect();
    let mut result = Vec::new();
    let mut choice = vec![0usize; colors];
    'outer: loop {
        let mut left = Vec::with_capacity(colors);
        let mut right = Vec::with_capacity(colors);
        for (c, &idx) in choice.iter().enumerate() {
            let (a, b) = &per_color[c][idx];
            let mut a = a.clone();
            let mut b = b.clone();
            a.sort_unstable_by(|x, y| y.cmp(x));
            b.sort_unstable_by(|x, y| y.cmp(x));
            left.push(Partition { parts: a });
            right.push(Partition { parts: b });
        }
        let lsize: usize = left.iter().map(|p| p.size()).sum();
        if lsize == m {
            let pair = (
                WreathClass { cycle_types: left },
                WreathClass { cycle_types: right },
            );
            if !result.contains(&pair) {
                result.push(pair);
            }
        }
        let mut i = 0;
        loop {
            if i == colors {
                break 'outer;
            }
            choice[i] += 1;
            if choice[i] < per_color[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
    result
}

/// Multiplicities of every simple in a genuine character; rejects
/// non-integral or negative inner products.
pub fn decompose(
    ctx: &WreathContext,
    v: &CharacterVector,
) -> Result<Vec<(PartitionFunction, u64)>> {
    let mut out = Vec::new();
    for lambda in partition_functions(ctx.irr_count(), v.n) {
        let chi = char_vector(ctx, &lambda)?;
        let ip = inner_product(ctx, v, &chi)?;
        let Some(rat) = ctx.cyc.as_rational(&ip) else {
            return Err(Error::NotACharacter(format!(
                "non-rational multiplicity at {lambda}"
            )));
        };
        if !rat.is_integer() || rat.is_negative() {
            return Err(Error::NotACharacter(format!(
                "multiplicity {rat} at {lambda}"
            )));
        }
        let m = rat.to_integer();
        if !m.is_zero() {
            out.push((lambda, u64::try_from(m).expect("small multiplicity")));
        }
    }
    Ok(out)
}

/// Traces of the canonical class representatives acting on V(n).
pub fn module_character(
    ctx: &WreathContext,
    v: &Arc<TruncatedModule>,
    n: usize,
) -> Result<CharacterVector> {
    if v.field != FieldSpec::Rational {
        return Err(Error::FieldMismatch(
            "module characters need rational scalars".into(),
        ));
    }
    let Category::Fig(g) = &v.cat else {
        return Err(Error::CategoryMismatch("module_character is for FI_G".into()));
    };
    if *g != ctx.group {
        return Err(Error::CategoryMismatch("context group differs".into()));
    }
    if n > v.trunc {
        return Err(Error::Truncation(format!("degree {n} beyond truncation")));
    }
    let values = classes(ctx, n)
        .iter()
        .map(|rho| {
            let rep = class_representative(ctx, rho);
            let tr = v.endo_action(&rep).trace();
            let Scalar::Rational(r) = tr else {
                unreachable!("rational field checked above")
            };
            Ok(ctx.cyc.from_rational(r))
        })
        .collect::<Result<_>>()?;
    Ok(CharacterVector { n, values })
}

/// Predicted decomposition of kC(m, n) as a G_n-module: for each simple
/// kappa of G_m, its degree spreads over the Pieri set of the
/// trivial-character slot.
pub fn free_pieri_prediction(
    ctx: &WreathContext,
    m: usize,
    n: usize,
) -> Result<BTreeMap<PartitionFunction, u64>> {
    let mut out: BTreeMap<PartitionFunction, u64> = BTreeMap::new();
    for kappa in partition_functions(ctx.irr_count(), m) {
        let degree = simple_degree(&kappa, m);
        for nu in pieri_set(&kappa.parts[0], n - m) {
            let mut parts = kappa.parts.clone();
            parts[0] = nu;
            let lambda = PartitionFunction::new(parts);
            *out.entry(lambda).or_insert(0) += degree;
        }
    }
    Ok(out)
}

/// Degree of the simple labeled by kappa: multinomial times hook-length
/// dimensions (abelian G, all linear characters).
pub fn simple_degree(kappa: &PartitionFunction, m: usize) -> u64 {
    let mut num = BigInt::one();
    for k in 1..=m as u64 {
        num *= k;
    }
    let mut den = BigInt::one();
    for p in &kappa.parts {
        for k in 1..=p.size() as u64 {
            den *= k;
        }
    }
    let multinom = num / den;
    let hooks: u64 = kappa.parts.iter().map(|p| p.standard_tableaux()).product();
    u64::try_from(multinom).expect("small degree") * hooks
}

/// The RS3 window report: per unpadded label, the multiplicity sequence over
/// the window and the least n from which it is constant.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Rs3Report {
    pub n_range: Vec<usize>,
    /// label key -> multiplicities over the window
    pub table: BTreeMap<String, Vec<u64>>,
    pub stable_from: Option<usize>,
    pub stable_within_window: bool,
}

/// Stability of decomposition multiplicities of V(n) over the window,
/// re-indexed by unpadded labels.
pub fn rs3_check(
    ctx: &WreathContext,
    v: &Arc<TruncatedModule>,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<Rs3Report> {
    let ns: Vec<usize> = n_range.collect();
    let mut per_n: Vec<BTreeMap<String, u64>> = Vec::new();
    for &n in &ns {
        let chi = module_character(ctx, v, n)?;
        let mut m = BTreeMap::new();
        for (lambda, mult) in decompose(ctx, &chi)? {
            m.insert(unpad(&lambda).key(), mult);
        }
        per_n.push(m);
    }
    let mut keys: Vec<String> = per_n
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect();
    keys.sort();
    keys.dedup();
    let mut table = BTreeMap::new();
    for key in &keys {
        let seq: Vec<u64> = per_n
            .iter()
            .map(|m| m.get(key).copied().unwrap_or(0))
            .collect();
        table.insert(key.clone(), seq);
    }
    // least window index from which every sequence is constant
    let mut stable_from = None;
    'outer: for start in 0..ns.len() {
        for seq in table.values() {
            if seq[start..].iter().any(|&x| x != seq[start]) {
                continue 'outer;
            }
        }
        stable_from = Some(ns[start]);
        break;
    }
    Ok(Rs3Report {
        n_range: ns,
        table,
        stable_from,
        stable_within_window: stable_from.is_some(),
    })
}

/// Pads lambda and compares decompose(module_character(free(m), n)) against
/// the Pieri prediction; also checks hbar bijectivity at the padded
/// trivial slot.
pub fn stability_report(
    ctx: &WreathContext,
    free: &Arc<TruncatedModule>,
    m: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<Report> {
    let mut report = Report::new("stability");
    for n in n_range.clone() {
        let chi = module_character(ctx, free, n)?;
        let got: BTreeMap<PartitionFunction, u64> = decompose(ctx, &chi)?.into_iter().collect();
        let predicted = free_pieri_prediction(ctx, m, n)?;
        report.push(
            format!("pieri_prediction_n{n}"),
            got == predicted,
            format!("{} simples", got.len()),
        );
    }
    let rs3 = rs3_check(ctx, free, n_range.clone())?;
    let threshold = 2 * m;
    let window_start = *rs3.n_range.first().unwrap_or(&0);
    let expected_stable = threshold.max(window_start);
    let pass = rs3
        .stable_from
        .map(|s| s <= expected_stable)
        .unwrap_or(false);
    report.push(
        "rs3_stable_from_2m",
        pass,
        format!("stable from {:?}, threshold {threshold}", rs3.stable_from),
    );
    // hbar bijectivity across the window, for each simple of G_m; the
    // trivial-character slot of a G_m label is already the padded partition
    let mut hbar_ok = true;
    for kappa in partition_functions(ctx.irr_count(), m) {
        let base = kappa.parts[0].clone();
        for n in n_range.clone() {
            if n < 2 * m {
                continue;
            }
            let rep = hbar_check(&base, m, n);
            if !(rep.injective && rep.surjective) {
                hbar_ok = false;
            }
        }
    }
    report.push("hbar_bijective", hbar_ok, format!("n >= {}", 2 * m));
    Ok(report)
}

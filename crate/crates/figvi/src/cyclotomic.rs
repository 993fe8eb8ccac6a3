//! Exact cyclotomic numbers: integer- or rational-coefficient polynomials
//! in a primitive e-th root of unity, reduced modulo the e-th cyclotomic
//! polynomial.

use num::{BigInt, BigRational, One, Zero};

/// The field Q(zeta_e), carrying the reduction data.
#[derive(Debug, Clone)]
pub struct CycField {
    pub e: u64,
    /// Monic cyclotomic polynomial Phi_e, low-degree first.
    phi: Vec<BigRational>,
    /// zeta^j reduced, for j in 0..e.
    powers: Vec<Vec<BigRational>>,
}

/// An element of Q(zeta_e): coefficients in the basis 1, zeta, ...,
/// zeta^(deg-1) with deg = phi(e).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    pub coeffs: Vec<BigRational>,
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_rem(mut a: Vec<BigRational>, b: &[BigRational]) -> Vec<BigRational> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    while a.len() > db {
        let da = a.len() - 1;
        let coeff = a[da].clone() / lead.clone();
        if !coeff.is_zero() {
            for j in 0..=db {
                let v = a[da - db + j].clone() - coeff.clone() * b[j].clone();
                a[da - db + j] = v;
            }
        }
        a.pop();
        while a.len() > db && a.last().map(|x| x.is_zero()).unwrap_or(false) {
            a.pop();
        }
    }
    a
}

fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    // long division, asserting zero remainder
    let mut rem: Vec<BigRational> = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let da = rem.len() - 1;
        let coeff = rem[da].clone() / lead.clone();
        q[da - db] = coeff.clone();
        for j in 0..=db {
            let v = rem[da - db + j].clone() - coeff.clone() * b[j].clone();
            rem[da - db + j] = v;
        }
        rem.pop();
    }
    assert!(rem.iter().all(|x| x.is_zero()), "division not exact");
    q
}

/// Phi_e by the recursion x^e - 1 = prod over d | e of Phi_d.
fn cyclotomic_polynomial(e: u64) -> Vec<BigRational> {
    let mut xe1 = vec![BigRational::zero(); e as usize + 1];
    xe1[0] = -BigRational::one();
    xe1[e as usize] = BigRational::one();
    let mut result = xe1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            result = poly_div_exact(&result, &phi_d);
        }
    }
    result
}

impl CycField {
    pub fn new(e: u64) -> CycField {
        assert!(e >= 1);
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(e as usize);
        let mut cur = vec![BigRational::zero(); deg.max(1)];
        if deg == 0 {
            // cannot happen: phi(e) >= 1
            unreachable!();
        }
        cur[0] = BigRational::one();
        for _ in 0..e {
            powers.push(cur.clone());
            // multiply by x and reduce
            let mut shifted = vec![BigRational::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                shifted[i + 1] = c.clone();
            }
            let mut reduced = poly_rem(shifted, &phi);
            reduced.resize(deg, BigRational::zero());
            cur = reduced;
        }
        CycField { e, phi, powers }
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic {
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> Cyclotomic {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> Cyclotomic {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = r;
        Cyclotomic { coeffs }
    }

    pub fn from_i64(&self, v: i64) -> Cyclotomic {
        self.from_rational(BigRational::from(BigInt::from(v)))
    }

    /// zeta^j for any j (reduced mod e).
    pub fn root_power(&self, j: u64) -> Cyclotomic {
        Cyclotomic {
            coeffs: self.powers[(j % self.e) as usize].clone(),
        }
    }

    pub fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        let mut reduced = poly_rem(prod, &self.phi);
        reduced.resize(self.degree(), BigRational::zero());
        Cyclotomic { coeffs: reduced }
    }

    pub fn scale(&self, a: &Cyclotomic, r: &BigRational) -> Cyclotomic {
        Cyclotomic {
            coeffs: a.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    /// Complex conjugation: zeta -> zeta^{e-1}.
    pub fn conj(&self, a: &Cyclotomic) -> Cyclotomic {
        let mut out = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.scale(&self.root_power(((self.e - 1) * i as u64) % self.e), c);
            out = self.add(&out, &term);
        }
        out
    }

    pub fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rational elements have all higher basis coefficients zero.
    pub fn as_rational(&self, a: &Cyclotomic) -> Option<BigRational> {
        if a.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(a.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_string_pretty(&self, a: &Cyclotomic) -> String {
        if let Some(r) = self.as_rational(a) {
            return r.to_string();
        }
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if i == 0 {
                    c.to_string()
                } else {
                    format!("{c}*z^{i}")
                }
            })
            .collect();
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        // Phi_1 = x - 1, Phi_2 = x + 1, Phi_3 = x^2 + x + 1, Phi_6 = x^2 - x + 1
        let as_i64 = |e: u64| -> Vec<i64> {
            cyclotomic_polynomial(e)
                .iter()
                .map(|c| {
                    assert!(c.is_integer());
                    i64::try_from(c.to_integer()).unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
    }

    #[test]
    fn root_arithmetic() {
        let f = CycField::new(3);
        let z = f.root_power(1);
        // 1 + z + z^2 = 0
        let sum = f.add(&f.add(&f.one(), &z), &f.root_power(2));
        assert!(f.is_zero(&sum));
        // z * z^2 = 1
        assert_eq!(f.mul(&z, &f.root_power(2)), f.one());
        // conj(z) = z^2
        assert_eq!(f.conj(&z), f.root_power(2));
        // z * conj(z) = 1
        assert_eq!(f.mul(&z, &f.conj(&z)), f.one());
    }

    #[test]
    fn degenerate_fields() {
        let f1 = CycField::new(1);
        assert_eq!(f1.degree(), 1);
        assert_eq!(f1.root_power(5), f1.one());
        let f2 = CycField::new(2);
        assert_eq!(f2.root_power(1), f2.from_i64(-1));
        assert_eq!(f2.mul(&f2.root_power(1), &f2.root_power(1)), f2.one());
    }
}

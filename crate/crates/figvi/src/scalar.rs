//! Exact scalars: arbitrary-precision rationals or prime-field elements.
//!
//! Every arithmetic operation is exact. Mixing scalars from different
//! fields is a bug and panics; public entry points validate fields before
//! arithmetic starts.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient field: exact rationals or F_p with p prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldSpec {
    Rational,
    Fp(u64),
}

impl FieldSpec {
    /// Parses "q" (rationals) or "f2", "f3", ... (prime fields).
    pub fn parse(s: &str) -> Result<FieldSpec> {
        if s == "q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(rest) = s.strip_prefix('f') {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad field spec '{s}'")))?;
            // keep p small enough that products of residues never overflow
            if p >= 1 << 20 {
                return Err(Error::InvalidArgument(format!("prime {p} too large")));
            }
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            return Ok(FieldSpec::Fp(p));
        }
        Err(Error::InvalidArgument(format!("bad field spec '{s}'")))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Fp { value: 1, p: *p },
        }
    }

    /// Embeds a signed integer.
    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from(BigInt::from(v))),
            FieldSpec::Fp(p) => {
                let m = v.rem_euclid(*p as i64) as u64;
                Scalar::Fp { value: m, p: *p }
            }
        }
    }

    /// The inverse of a positive integer, when it exists in the field.
    pub fn inv_of_u64(&self, v: u64) -> Result<Scalar> {
        self.from_i64(v as i64).inv().ok_or(match self {
            FieldSpec::Rational => Error::InvalidArgument("division by zero".into()),
            FieldSpec::Fp(p) => Error::NonInvertibleQ { q: v, p: *p },
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Fp(p) => write!(f, "f{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. `Fp` values are stored reduced, `0 <= value < p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Fp { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: p2 }) => {
                assert_eq!(p, p2, "prime field mismatch");
                Scalar::Fp {
                    value: (a + b) % p,
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: p2 }) => {
                assert_eq!(p, p2, "prime field mismatch");
                Scalar::Fp {
                    value: (a * b) % p,
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Fp { value, p } => {
                if *value == 0 {
                    None
                } else {
                    // Fermat: a^(p-2) mod p.
                    Some(Scalar::Fp {
                        value: pow_mod(*value, *p - 2, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero"))
    }

    /// Serializes rationals as "num/den" strings (integers as plain numbers)
    /// and prime-field values as residues.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    match i64::try_from(r.to_integer()) {
                        Ok(v) => serde_json::Value::from(v),
                        Err(_) => serde_json::Value::from(r.to_integer().to_string()),
                    }
                } else {
                    serde_json::Value::from(format!("{}/{}", r.numer(), r.denom()))
                }
            }
            Scalar::Fp { value, .. } => serde_json::Value::from(*value),
        }
    }

    /// Returns the value as an integer when the scalar is an integral rational.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_parsing() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rational);
        assert_eq!(FieldSpec::parse("f2").unwrap(), FieldSpec::Fp(2));
        assert_eq!(FieldSpec::parse("f97").unwrap(), FieldSpec::Fp(97));
        assert!(FieldSpec::parse("f4").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::Fp(5);
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(a.add(&b), f.from_i64(2));
        assert_eq!(a.mul(&b), f.from_i64(2));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Rational;
        let a = f.from_i64(3);
        let b = f.from_i64(-7);
        assert_eq!(a.add(&b), f.from_i64(-4));
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(b.to_json(), serde_json::json!(-7));
        let half = f.from_i64(1).div(&f.from_i64(2));
        assert_eq!(half.to_json(), serde_json::json!("1/2"));
    }
}

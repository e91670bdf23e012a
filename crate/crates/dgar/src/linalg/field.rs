use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::DgError;

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Field {
    Rationals,
    PrimeField { characteristic: u64 },
}

/// An exact field element. Prime-field elements carry their modulus so that
/// arithmetic never needs an external context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, DgError> {
        if is_prime(p) {
            Ok(Field::PrimeField { characteristic: p })
        } else {
            Err(DgError::InvalidInput(format!("characteristic {p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::PrimeField { characteristic } => *characteristic,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::PrimeField { characteristic: p } => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v: m, p: *p }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        self.from_i64(num) / self.from_i64(den)
    }

    pub fn sign(&self, odd: bool) -> Scalar {
        self.from_i64(if odd { -1 } else { 1 })
    }

    /// Parses "3", "-2", "3/4".
    pub fn parse(&self, s: &str) -> Result<Scalar, DgError> {
        let s = s.trim();
        let bad = || DgError::InvalidInput(format!("bad scalar {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(Scalar::Q(BigRational::new(n, d))),
            Field::PrimeField { characteristic: p } => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_u64().unwrap()
                };
                let (nv, dv) = (reduce(&n), reduce(&d));
                if dv == 0 {
                    return Err(bad());
                }
                Ok(Scalar::Fp { v: nv, p: *p } / Scalar::Fp { v: dv, p: *p })
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::PrimeField { characteristic: *p },
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Fp { v: pow_mod(*v, p - 2, *p), p: *p }
            }
        }
    }

    /// The rational value, when the element lives in the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $qop:expr, $fop:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q($qop(a, b)),
                    (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                        assert_eq!(p, q, "mixed prime fields");
                        Scalar::Fp { v: $fop(*a, *b, *p), p: *p }
                    }
                    _ => panic!("mixed scalar fields"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| {
    ((a as u128 + b as u128) % p as u128) as u64
});
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
});
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);
binop!(Div, div, |a: &BigRational, b: &BigRational| a / b, |a: u64, b: u64, p: u64| {
    assert!(b != 0, "division by zero");
    mul_mod(a, pow_mod(b, p - 2, p), p)
});

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_division() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(3) / f.from_i64(2), f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(101).is_ok());
    }

    #[test]
    fn parses_fractions() {
        let q = Field::Rationals;
        assert_eq!(q.parse("6/4").unwrap(), q.from_ratio(3, 2));
        assert_eq!(Field::prime(7).unwrap().parse("1/2").unwrap(), Field::prime(7).unwrap().from_i64(4));
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }
}

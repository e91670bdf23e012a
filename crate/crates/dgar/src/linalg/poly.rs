//! Univariate polynomials over the exact field, used for minimal
//! polynomials and idempotent splitting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Scalar};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: Field,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The linear polynomial t - c.
    pub fn linear(field: Field, c: &Scalar) -> Poly {
        Poly::new(field, vec![-c, field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("zero polynomial has no leading term")
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(self.field, vec![]);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::constant(self.field, self.field.one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        let inv = d.lead().inv();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let f = r.lead() * &inv;
            let shift = rd - dd;
            q[shift] = f.clone();
            let mut c = r.coeffs.clone();
            for (i, x) in d.coeffs.iter().enumerate() {
                c[i + shift] = &c[i + shift] - &(&f * x);
            }
            c.pop();
            r = Poly::new(self.field, c);
        }
        (Poly::new(self.field, q), r)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv())
    }

    /// Returns (g, u, v) with u·a + v·b = g monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let f = a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (Poly::constant(f, f.one()), Poly::new(f, vec![]));
        let (mut v0, mut v1) = (Poly::new(f, vec![]), Poly::constant(f, f.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u2 = u0.sub(&q.mul(&u1));
            let v2 = v0.sub(&q.mul(&v1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        let s = r0.lead().inv();
        (r0.scale(&s), u0.scale(&s), v0.scale(&s))
    }

    /// Multiplicity of c as a root.
    pub fn root_multiplicity(&self, c: &Scalar) -> usize {
        let lin = Poly::linear(self.field, c);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Distinct roots in the ground field, when they can be found exactly.
    /// Over the rationals candidates come from the rational root theorem and
    /// are only enumerated while the extreme coefficients stay below 10^12.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        match self.field {
            Field::PrimeField { characteristic: p } => {
                if p > 200_000 {
                    return Vec::new();
                }
                (0..p as i64)
                    .map(|v| self.field.from_i64(v))
                    .filter(|x| self.eval(x).is_zero())
                    .collect()
            }
            Field::Rationals => self.rational_roots(),
        }
    }

    fn rational_roots(&self) -> Vec<Scalar> {
        let f = self.field;
        let mut out = Vec::new();
        let mut coeffs: Vec<BigRational> =
            self.coeffs.iter().map(|c| c.as_rational().unwrap().clone()).collect();
        if coeffs[0].is_zero() {
            out.push(f.zero());
            while coeffs.first().is_some_and(Zero::is_zero) {
                coeffs.remove(0);
            }
        }
        if coeffs.len() <= 1 {
            return out;
        }
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
            return out;
        };
        if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
            return out;
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in divisors(a0) {
            for q in divisors(an) {
                for s in [1i64, -1] {
                    let cand = BigRational::new(BigInt::from(s) * BigInt::from(p), BigInt::from(q));
                    if seen.insert(cand.clone()) {
                        let x = Scalar::Q(cand);
                        if self.eval(&x).is_zero() {
                            out.push(x);
                        }
                    }
                }
            }
        }
        out
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        let f = Field::Rationals;
        Poly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn finds_rational_roots() {
        // (2t - 1)(t + 3) t^2 = 2t^4 + 5t^3 - 3t^2
        let mut r = p(&[0, 0, -3, 5, 2]).roots();
        r.sort_by_key(|x| x.to_string());
        let f = Field::Rationals;
        assert!(r.contains(&f.zero()));
        assert!(r.contains(&f.from_ratio(1, 2)));
        assert!(r.contains(&f.from_i64(-3)));
        assert_eq!(r.len(), 3);
        assert!(p(&[1, 0, 1]).roots().is_empty());
    }

    #[test]
    fn ext_gcd_identity() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (g, u, v) = Poly::ext_gcd(&a, &b);
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn multiplicity() {
        let f = Field::Rationals;
        assert_eq!(p(&[1, 2, 1]).root_multiplicity(&f.from_i64(-1)), 2);
        assert_eq!(p(&[1, 2, 1]).root_multiplicity(&f.one()), 0);
    }
}

//! Exact scalars over the rationals or a prime field.
//!
//! Every computation fixes one [`FieldSpec`] up front; all matrices and
//! structure constants carry scalars of that field. Rational arithmetic is
//! arbitrary precision, prime-field arithmetic reduces mod `p` with `u128`
//! intermediates, and no floating point appears anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The rational numbers, with arbitrary-precision arithmetic.
    Rationals,
    /// The prime field GF(p).
    PrimeField(u64),
}

impl FieldSpec {
    /// Checks the primality requirement for `PrimeField`.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::NotPrime(*p))
                }
            }
        }
    }

    /// Characteristic of the field: 0 for the rationals, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Fp(1),
        }
    }

    /// The image of the integer `n` in this field.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let p = *p as i128;
                let r = ((n as i128 % p) + p) % p;
                Scalar::Fp(r as u64)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers guard with `is_zero`.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Q(x.recip())
            }
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Fp(mod_pow(*x, p - 2, *p))
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parses the canonical text form: `n` or `n/d` over Q, a plain residue over GF(p).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::ScalarParse(s.to_string());
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            FieldSpec::PrimeField(p) => {
                let n = i128::from_str(s.trim()).map_err(|_| bad())?;
                let p = *p as i128;
                Ok(Scalar::Fp((((n % p) + p) % p) as u64))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. The variant must agree with the ambient [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_one(),
            Scalar::Fp(x) => *x == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else if x.denom().is_negative() {
                    // num-rational keeps denominators positive; belt and braces.
                    write!(f, "{}/{}", -x.numer(), -x.denom())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // Deterministic Miller-Rabin for u64.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_pow(x, 2, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let q = FieldSpec::Rationals;
        let x = q.parse("-3/6").unwrap();
        assert_eq!(x.to_string(), "-1/2");
        let y = q.parse("4").unwrap();
        assert_eq!(q.mul(&x, &y).to_string(), "-2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::PrimeField(7);
        f.validate().unwrap();
        let x = f.from_i64(-3);
        assert_eq!(x, Scalar::Fp(4));
        assert_eq!(f.mul(&x, &f.inv(&x)), f.one());
        assert!(FieldSpec::PrimeField(6).validate().is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(101));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}

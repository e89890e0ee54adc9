use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Coefficient field of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// A field element. Residues are stored reduced into `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Residue(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidRing(format!(
                "modulus {p} exceeds the supported bound {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rational(BigRational::zero()),
            Field::Prime(_) => Coeff::Residue(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rational(BigRational::one()),
            Field::Prime(_) => Coeff::Residue(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => Coeff::Residue(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            Field::Rationals => Coeff::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coeff::Residue(r.to_u64().expect("residue fits"))
            }
        }
    }

    /// `num / den`, or `None` when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(self.div(&self.from_bigint(num), &d))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x + y),
            (Field::Prime(p), Coeff::Residue(x), Coeff::Residue(y)) => Coeff::Residue((x + y) % p),
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x - y),
            (Field::Prime(p), Coeff::Residue(x), Coeff::Residue(y)) => Coeff::Residue((x + p - y) % p),
            _ => mixed(),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x * y),
            (Field::Prime(p), Coeff::Residue(x), Coeff::Residue(y)) => Coeff::Residue(x * y % p),
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rationals, Coeff::Rational(x)) => Coeff::Rational(-x),
            (Field::Prime(p), Coeff::Residue(x)) => Coeff::Residue((p - x) % p),
            _ => mixed(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!a.is_zero(), "inverse of zero");
        match (self, a) {
            (Field::Rationals, Coeff::Rational(x)) => Coeff::Rational(x.recip()),
            (Field::Prime(p), Coeff::Residue(x)) => Coeff::Residue(pow_mod(*x, p - 2, *p)),
            _ => mixed(),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x / y),
            _ => self.mul(a, &self.inv(b)),
        }
    }

    pub fn contains(&self, c: &Coeff) -> bool {
        match (self, c) {
            (Field::Rationals, Coeff::Rational(_)) => true,
            (Field::Prime(p), Coeff::Residue(x)) => x < p,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "Fp({p})"),
        }
    }
}

#[cold]
fn mixed() -> Coeff {
    panic!("coefficient does not belong to the ring's field")
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(x) => x.is_zero(),
            Coeff::Residue(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(x) => x.is_one(),
            Coeff::Residue(x) => *x == 1,
        }
    }

    /// Signed integer view used for printing: residues are shown as the
    /// representative of smallest absolute value.
    pub(crate) fn signed_parts(&self, field: Field) -> (bool, BigInt, BigInt) {
        match self {
            Coeff::Rational(x) => (x.is_negative(), x.numer().abs(), x.denom().clone()),
            Coeff::Residue(x) => {
                let p = field.characteristic();
                if *x > p / 2 {
                    (true, BigInt::from(p - x), BigInt::one())
                } else {
                    (false, BigInt::from(*x), BigInt::one())
                }
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Trial division; moduli are bounded by [`MAX_PRIME`].
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_arithmetic() {
        let f = Field::prime(101).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, Coeff::Residue(98));
        let inv = f.inv(&a);
        assert!(f.mul(&a, &inv).is_one());
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(101)), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(100).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(MAX_PRIME).is_ok());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rationals;
        let half = q.from_ratio(&BigInt::from(2), &BigInt::from(4)).unwrap();
        match half {
            Coeff::Rational(r) => {
                assert_eq!(*r.numer(), BigInt::from(1));
                assert_eq!(*r.denom(), BigInt::from(2));
            }
            _ => unreachable!(),
        }
    }
}

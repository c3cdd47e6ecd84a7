//! Arithmetic in the prime field F_p, p < 2^16.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest admissible characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 16;

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

/// Validates a characteristic and narrows it to `u32`.
pub fn check_characteristic(p: u64) -> Result<u32> {
    if p < MAX_CHARACTERISTIC && is_prime(p) {
        Ok(p as u32)
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        return None;
    }
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i64) as u32)
}

pub(crate) fn reduce_signed(value: i64, p: u32) -> u32 {
    value.rem_euclid(p as i64) as u32
}

/// An element of F_p. The residue is always reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    residue: u32,
    p: u32,
}

impl FieldElement {
    /// Reduces `value` modulo `p`. `p` must already be a validated characteristic.
    pub fn new(value: i64, p: u32) -> Self {
        debug_assert!(is_prime(p as u64));
        Self {
            residue: reduce_signed(value, p),
            p,
        }
    }

    pub fn zero(p: u32) -> Self {
        Self { residue: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Self { residue: 1 % p, p }
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn pow(self, exp: u64) -> Self {
        Self {
            residue: pow_mod(self.residue, exp, self.p),
            p: self.p,
        }
    }

    pub fn inv(self) -> Result<Self> {
        field_inv(self)
    }
}

/// Multiplicative inverse; fails on zero.
pub fn field_inv(a: FieldElement) -> Result<FieldElement> {
    inv_mod(a.residue, a.p)
        .map(|residue| FieldElement { residue, p: a.p })
        .ok_or(Error::DivisionByZero(a.p))
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "field characteristic mismatch");
        Self {
            residue: add_mod(self.residue, rhs.residue, self.p),
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "field characteristic mismatch");
        Self {
            residue: sub_mod(self.residue, rhs.residue, self.p),
            p: self.p,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "field characteristic mismatch");
        Self {
            residue: mul_mod(self.residue, rhs.residue, self.p),
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            residue: sub_mod(0, self.residue, self.p),
            p: self.p,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(field_inv(FieldElement::new(1, 2)).unwrap().residue(), 1);
        assert_eq!(field_inv(FieldElement::new(2, 5)).unwrap().residue(), 3);
        assert_eq!(
            field_inv(FieldElement::new(0, 3)),
            Err(Error::DivisionByZero(3))
        );
    }

    #[test]
    fn characteristic_validation() {
        assert!(check_characteristic(2).is_ok());
        assert!(check_characteristic(65521).is_ok());
        assert_eq!(check_characteristic(4), Err(Error::NotPrime(4)));
        assert_eq!(check_characteristic(1), Err(Error::NotPrime(1)));
        assert_eq!(check_characteristic(65537), Err(Error::NotPrime(65537)));
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2u32, 3, 5, 7] {
            let elems: Vec<_> = (0..p as i64).map(|v| FieldElement::new(v, p)).collect();
            let zero = FieldElement::zero(p);
            let one = FieldElement::one(p);
            for &a in &elems {
                assert_eq!(a + zero, a);
                assert_eq!(a * one, a);
                assert_eq!(a + (-a), zero);
                assert_eq!(a.pow(p as u64), a, "Fermat in F_{p}");
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), one);
                }
                for &b in &elems {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!((a - b) + b, a);
                    for &c in &elems {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(FieldElement::new(-1, 7).residue(), 6);
        assert_eq!(FieldElement::new(15, 7).residue(), 1);
    }
}

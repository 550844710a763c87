//! Arithmetic in the prime field F_q, q >= 5.
//!
//! Elements carry their modulus so that mixing fields is caught. The
//! operator impls only check this in debug builds; the `checked_*` methods
//! always do.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = 1 << 20;

/// The prime field F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

/// An element of some [`PrimeField`], stored as its canonical residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

/// Deterministic trial division; moduli are at most 2^20.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= m`. Requires `m >= 5`.
pub fn next_prime_at_least(m: u64) -> Result<u64> {
    if m < 5 {
        return Err(Error::InvalidArgument(format!(
            "next_prime_at_least requires m >= 5, got {m}"
        )));
    }
    let mut p = m;
    while !is_prime(p) {
        p += 1;
    }
    Ok(p)
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q < 5 {
            return Err(Error::InvalidModulus {
                q,
                reason: "modulus must be at least 5",
            });
        }
        if q > MAX_MODULUS {
            return Err(Error::InvalidModulus {
                q,
                reason: "modulus exceeds 2^20",
            });
        }
        if !is_prime(q) {
            return Err(Error::InvalidModulus {
                q,
                reason: "modulus is not prime",
            });
        }
        Ok(PrimeField { q: q as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// Reduces `x` into the field.
    #[inline]
    pub fn elem(&self, x: u64) -> FieldElement {
        FieldElement {
            value: (x % self.q as u64) as u32,
            modulus: self.q,
        }
    }

    /// Reduces a signed integer, so `elem_i64(-2)` is `q - 2`.
    #[inline]
    pub fn elem_i64(&self, x: i64) -> FieldElement {
        let v = x.rem_euclid(self.q as i64);
        FieldElement {
            value: v as u32,
            modulus: self.q,
        }
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// All elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u64).map(move |x| self.elem(x))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.modulus == self.q
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        a.checked_add(b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        a.checked_mul(b)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        a.inv()
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.modulus != self.q {
            return Err(Error::ModulusMismatch {
                left: self.q,
                right: a.modulus,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.sub_unchecked(rhs))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    /// Multiplicative inverse via Fermat, a^(q-2).
    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.modulus as u64 - 2))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let q = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        FieldElement {
            value: acc as u32,
            modulus: self.modulus,
        }
    }

    fn same_field(self, rhs: Self) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: rhs.modulus,
            });
        }
        Ok(())
    }

    #[inline]
    fn add_unchecked(self, rhs: Self) -> Self {
        let s = self.value as u64 + rhs.value as u64;
        let q = self.modulus as u64;
        FieldElement {
            value: if s >= q { (s - q) as u32 } else { s as u32 },
            modulus: self.modulus,
        }
    }

    #[inline]
    fn sub_unchecked(self, rhs: Self) -> Self {
        let q = self.modulus as u64;
        let d = self.value as u64 + q - rhs.value as u64;
        FieldElement {
            value: (if d >= q { d - q } else { d }) as u32,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn mul_unchecked(self, rhs: Self) -> Self {
        let p = self.value as u64 * rhs.value as u64 % self.modulus as u64;
        FieldElement {
            value: p as u32,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.add_unchecked(rhs)
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.sub_unchecked(rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.mul_unchecked(rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> Self {
        let v = if self.value == 0 {
            0
        } else {
            self.modulus - self.value
        };
        FieldElement {
            value: v,
            modulus: self.modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn add_examples() {
        let f5 = f(5);
        assert_eq!(f5.add(f5.elem(3), f5.elem(4)).unwrap(), f5.elem(2));
        for x in f5.elements() {
            assert_eq!(f5.add(f5.zero(), x).unwrap(), x);
        }
        let f7 = f(7);
        assert_eq!(f7.add(f7.elem(6), f7.elem(1)).unwrap(), f7.zero());
    }

    #[test]
    fn mul_examples() {
        let f5 = f(5);
        assert_eq!(f5.mul(f5.elem(2), f5.elem(3)).unwrap(), f5.one());
        for x in f5.elements() {
            assert_eq!(f5.mul(f5.one(), x).unwrap(), x);
        }
        let f7 = f(7);
        assert_eq!(f7.mul(f7.elem(3), f7.elem(5)).unwrap(), f7.one());
    }

    #[test]
    fn inv_examples() {
        let f5 = f(5);
        assert_eq!(f5.inv(f5.elem(2)).unwrap(), f5.elem(3));
        assert_eq!(f5.inv(f5.one()).unwrap(), f5.one());
        let f7 = f(7);
        assert_eq!(f7.inv(f7.elem(3)).unwrap(), f7.elem(5));
        assert!(matches!(f7.inv(f7.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    fn mismatched_moduli_rejected() {
        let a = f(5).elem(1);
        let b = f(7).elem(1);
        assert!(matches!(
            a.checked_add(b),
            Err(Error::ModulusMismatch { .. })
        ));
        assert!(matches!(
            a.checked_mul(b),
            Err(Error::ModulusMismatch { .. })
        ));
        assert!(f(5).add(b, b).is_err());
    }

    #[test]
    fn rejects_bad_moduli() {
        for q in [0, 1, 2, 3, 4, 6, 9, 25, 121] {
            assert!(PrimeField::new(q).is_err(), "q={q}");
        }
        assert!(PrimeField::new(MAX_MODULUS + 7).is_err());
        for q in [5, 7, 11, 13, 127] {
            assert!(PrimeField::new(q).is_ok());
        }
    }

    fn sieve_next_prime(m: u64, hi: u64) -> Option<u64> {
        let mut composite = vec![false; hi as usize + 1];
        composite[0] = true;
        composite[1] = true;
        for i in 2..=hi as usize {
            if !composite[i] {
                let mut j = i * i;
                while j <= hi as usize {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        (m..=hi).find(|&x| !composite[x as usize])
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime_at_least(5).unwrap(), 5);
        assert_eq!(next_prime_at_least(6).unwrap(), 7);
        assert_eq!(sieve_next_prime(120, 130), Some(127));
        assert_eq!(next_prime_at_least(120).unwrap(), 127);
        assert!(next_prime_at_least(4).is_err());
        for m in 5..2000 {
            assert_eq!(
                Some(next_prime_at_least(m).unwrap()),
                sieve_next_prime(m, 2100)
            );
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [5u64, 7, 11, 13] {
            let fq = f(q);
            let els: Vec<_> = fq.elements().collect();
            for &a in &els {
                assert_eq!(a + (-a), fq.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), fq.one());
                }
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!((a - b) + b, a);
                    for &c in &els {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
            assert!(fq.elem(2).inv().is_ok());
            assert!(fq.elem(3).inv().is_ok());
        }
    }

    proptest! {
        #[test]
        fn field_axioms_sampled(
            qi in 0usize..6,
            a in any::<u64>(), b in any::<u64>(), c in any::<u64>(),
        ) {
            let q = [17u64, 101, 1009, 7919, 65521, 1_048_573][qi];
            let fq = f(q);
            let (a, b, c) = (fq.elem(a), fq.elem(b), fq.elem(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * b, b * a);
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), fq.one());
            }
            prop_assert_eq!(fq.elem_i64(-(b.value() as i64)), -b);
        }
    }
}

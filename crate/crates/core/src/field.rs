//! Arithmetic in the prime field `F_p` for small primes.
//!
//! The modulus travels with every value so a single binary can work over any
//! small prime chosen at runtime. Operators panic on mixed moduli; the
//! `checked_*` methods report the mismatch as an [`Error`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    /// Checks primality by trial division. Moduli above `u16::MAX` are
    /// rejected so that matrix products can accumulate in `u64` unreduced.
    pub fn new(p: u32) -> Result<Self> {
        if p > u16::MAX as u32 {
            Err(Error::InvalidParameter(format!("prime {p} exceeds 65535")))
        } else if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    /// `p^e`, panicking on overflow.
    pub fn pow(self, e: u32) -> u64 {
        (self.0 as u64)
            .checked_pow(e)
            .expect("prime power overflows u64")
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    value: u32,
    modulus: Prime,
}

impl FpElement {
    /// Builds `value mod p`.
    pub fn new(value: i64, modulus: Prime) -> Self {
        FpElement {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        FpElement { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        FpElement { value: 1, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<Prime> {
        if self.modulus == other.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            })
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let p = self.same_field(other)?;
        Ok(FpElement {
            value: ((self.value as u64 + other.value as u64) % p.get() as u64) as u32,
            modulus: p,
        })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.checked_add(-other)
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let p = self.same_field(other)?;
        Ok(FpElement {
            value: ((self.value as u64 * other.value as u64) % p.get() as u64) as u32,
            modulus: p,
        })
    }

    /// Square-and-multiply; `x^0 = 1`.
    pub fn pow(self, mut e: u64) -> Self {
        let p = self.modulus.get() as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FpElement {
            value: acc as u32,
            modulus: self.modulus,
        }
    }

    /// Inverse via `x^(p-2)`.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(self.pow(self.modulus.get() as u64 - 2))
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl Add for FpElement {
    type Output = FpElement;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("mixed-modulus addition")
    }
}

impl Sub for FpElement {
    type Output = FpElement;

    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("mixed-modulus subtraction")
    }
}

impl Mul for FpElement {
    type Output = FpElement;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("mixed-modulus multiplication")
    }
}

impl Neg for FpElement {
    type Output = FpElement;

    fn neg(self) -> Self {
        let p = self.modulus.get();
        FpElement {
            value: (p - self.value) % p,
            modulus: self.modulus,
        }
    }
}

/// Free-function spelling of [`FpElement::inv`].
pub fn fp_inv(x: FpElement) -> Result<FpElement> {
    x.inv()
}

/// Free-function spelling of [`FpElement::pow`].
pub fn fp_pow(x: FpElement, e: u64) -> FpElement {
    x.pow(e)
}

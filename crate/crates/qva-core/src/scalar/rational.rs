//! Exact rational numbers on arbitrary-precision integers.
//!
//! Thin wrapper around `num_rational::BigRational`, which already keeps
//! values reduced with a positive denominator. The wrapper pins down the
//! text form used throughout the engine and adds the handful of
//! combinatorial helpers (generalized binomials, factorials) the series
//! layer needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{EngineError, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d` reduced. Panics if `d == 0`; use [`Rat::checked_new`] for fallible input.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn checked_new(n: BigInt, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(n, d)))
    }

    pub fn from_big(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Rat::one());
        }
        if self.is_zero() {
            if k < 0 {
                return Err(EngineError::DivisionByZero);
            }
            return Ok(Rat::zero());
        }
        let base = if k < 0 { self.0.recip() } else { self.0.clone() };
        let mut acc = BigRational::one();
        for _ in 0..k.unsigned_abs() {
            acc *= &base;
        }
        Ok(Rat(acc))
    }

    /// Generalized binomial coefficient `C(n, k)` with integer `n` of either sign.
    pub fn binomial(n: i64, k: u64) -> Self {
        let mut num = BigInt::one();
        for i in 0..k {
            num *= BigInt::from(n) - BigInt::from(i);
        }
        let mut den = BigInt::one();
        for i in 1..=k {
            den *= BigInt::from(i);
        }
        Rat(BigRational::new(num, den))
    }

    pub fn factorial(k: u64) -> Self {
        let mut acc = BigInt::one();
        for i in 1..=k {
            acc *= BigInt::from(i);
        }
        Rat::from_big(acc)
    }

    /// Falling factorial `n (n-1) ... (n-k+1)`.
    pub fn falling(n: i64, k: u64) -> Self {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc *= BigInt::from(n) - BigInt::from(i);
        }
        Rat::from_big(acc)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || EngineError::Parse(format!("bad rational `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rat::checked_new(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rat::from_big(n))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0.clone())
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = Rat::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn binomial_negative_top() {
        // C(-1, i) = (-1)^i
        assert_eq!(Rat::binomial(-1, 3), Rat::from_i64(-1));
        assert_eq!(Rat::binomial(-2, 2), Rat::from_i64(3));
        assert_eq!(Rat::binomial(3, 5), Rat::zero());
    }

    #[test]
    fn pow_negative_exponent() {
        let r = Rat::new(2, 3);
        assert_eq!(r.pow(-2).unwrap(), Rat::new(9, 4));
        assert!(Rat::zero().pow(-1).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/2", "-11/4"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }
}

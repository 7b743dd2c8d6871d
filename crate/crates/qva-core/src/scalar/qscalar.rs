//! The coefficient field Q(q): quotients of polynomials in `q`, kept in a
//! canonical gcd-reduced form with monic denominator so that equality and
//! hashing are structural.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use super::poly::QPoly;
use super::rational::Rat;
use crate::error::{EngineError, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QScalar {
    num: QPoly,
    den: QPoly,
}

impl QScalar {
    /// Canonical representative of `num/den`. Errors on a zero denominator.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QScalar {
                num: QPoly::zero(),
                den: QPoly::one(),
            });
        }
        let g = QPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                g.divides_exactly(&num).expect("gcd divides numerator"),
                g.divides_exactly(&den).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Ok(QScalar { num, den })
        } else {
            let inv = lc.recip().expect("nonzero leading coefficient");
            Ok(QScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    pub fn zero() -> Self {
        QScalar {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        QScalar {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn q() -> Self {
        QScalar {
            num: QPoly::q(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QScalar {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        QScalar::from_poly(QPoly::constant(r))
    }

    pub fn from_i64(n: i64) -> Self {
        QScalar::from_rat(Rat::from_i64(n))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &QScalar) -> QScalar {
        // fast path: polynomial + polynomial
        if self.den.is_one() && other.den.is_one() {
            return QScalar {
                num: self.num.add(&other.num),
                den: QPoly::one(),
            };
        }
        // Common-denominator sum; canonicalization re-reduces.
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        QScalar::new(num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &QScalar) -> QScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &QScalar) -> QScalar {
        if self.is_zero() || other.is_zero() {
            return QScalar::zero();
        }
        // fast path: polynomial * polynomial
        if self.den.is_one() && other.den.is_one() {
            return QScalar {
                num: self.num.mul(&other.num),
                den: QPoly::one(),
            };
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = QPoly::gcd(&self.num, &other.den);
        let g2 = QPoly::gcd(&other.num, &self.den);
        let n1 = g1.divides_exactly(&self.num).unwrap();
        let d2 = g1.divides_exactly(&other.den).unwrap();
        let n2 = g2.divides_exactly(&other.num).unwrap();
        let d1 = g2.divides_exactly(&self.den).unwrap();
        QScalar::new(n1.mul(&n2), d1.mul(&d2)).expect("nonzero denominator")
    }

    pub fn try_div(&self, other: &QScalar) -> Result<QScalar> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn recip(&self) -> Result<QScalar> {
        if self.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        QScalar::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<QScalar> {
        if k == 0 {
            return Ok(QScalar::one());
        }
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = QScalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale_rat(&self, r: &Rat) -> QScalar {
        if r.is_zero() {
            return QScalar::zero();
        }
        QScalar::new(self.num.scale(r), self.den.clone()).expect("nonzero denominator")
    }

    /// Specialize `q` to a nonzero rational. The engine treats `q = 0` as
    /// out of domain everywhere, so it is rejected here as well.
    pub fn eval(&self, q0: &Rat) -> Result<Rat> {
        if q0.is_zero() {
            return Err(EngineError::InvalidParameter(
                "q must be nonzero".to_string(),
            ));
        }
        let den = self.den.eval(q0);
        if den.is_zero() {
            return Err(EngineError::PoleAtEvaluationPoint);
        }
        Ok(&self.num.eval(q0) / &den)
    }

    /// Constant term as a rational, if the value is free of `q`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            self.num.fmt_terms(f)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for QScalar {
    type Err = EngineError;
    fn from_str(s: &str) -> Result<Self> {
        super::text::parse_qscalar(s)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        QScalar::add(self, rhs)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        QScalar::sub(self, rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        QScalar::mul(self, rhs)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self.try_div(rhs).expect("division by zero")
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::neg(self)
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = QScalar::add(self, rhs);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = QScalar::sub(self, rhs);
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = QScalar::mul(self, rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(s: &str) -> QScalar {
        s.parse().unwrap()
    }

    #[test]
    fn like_terms_add() {
        let inv_q = qs("1").try_div(&qs("q")).unwrap();
        let two_over_q = inv_q.add(&inv_q);
        assert_eq!(two_over_q.to_string(), "(2)/(q)");
    }

    #[test]
    fn gcd_cancellation_on_div() {
        let a = qs("q^2 - 1");
        let b = qs("q - 1");
        assert_eq!(a.try_div(&b).unwrap(), qs("q + 1"));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let a = qs("q");
        assert!(a.mul(&a.recip().unwrap()).is_one());
    }

    #[test]
    fn canonicalize_examples() {
        // (2q^2, 2q) -> q
        let r = QScalar::new(
            QPoly::monomial(2, Rat::from_i64(2)),
            QPoly::monomial(1, Rat::from_i64(2)),
        )
        .unwrap();
        assert_eq!(r, qs("q"));
        // (q^2 - 1, 2q - 2) -> (q + 1)/2
        let r = qs("q^2 - 1").try_div(&qs("2*q - 2")).unwrap();
        assert_eq!(r.to_string(), "1/2*q + 1/2");
        // zero numerator collapses to the canonical zero
        let z = QScalar::new(QPoly::zero(), qs("q^3").num().clone()).unwrap();
        assert_eq!(z, QScalar::zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn canonicalize_idempotent() {
        let r = qs("(q^2 + q)/(q^3)");
        let again = QScalar::new(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            QScalar::new(QPoly::one(), QPoly::zero()).unwrap_err(),
            EngineError::DivisionByZero
        );
    }

    #[test]
    fn eval_examples() {
        let two = Rat::from_i64(2);
        assert_eq!(qs("(q + 1)/(q)").eval(&two).unwrap(), Rat::new(3, 2));
        assert_eq!(
            qs("(1)/(q - 1)").eval(&Rat::one()).unwrap_err(),
            EngineError::PoleAtEvaluationPoint
        );
        assert_eq!(
            qs("q^2 - q").eval(&Rat::new(3, 2)).unwrap(),
            Rat::new(3, 4)
        );
        assert_eq!(
            qs("q").eval(&Rat::zero()).unwrap_err(),
            EngineError::InvalidParameter("q must be nonzero".to_string())
        );
    }
}

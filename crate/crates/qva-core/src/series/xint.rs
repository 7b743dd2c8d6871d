//! Integers extended with the two infinities, used for support bounds and
//! exactness windows.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl XInt {
    pub fn fin(v: i64) -> Self {
        XInt::Fin(v)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XInt::Fin(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            XInt::Fin(v) => Some(*v),
            _ => None,
        }
    }

    /// Addition; `NegInf + PosInf` is a logic error and panics.
    pub fn add(self, other: XInt) -> XInt {
        use XInt::*;
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a.checked_add(b).expect("exponent overflow")),
            (NegInf, PosInf) | (PosInf, NegInf) => panic!("NegInf + PosInf"),
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
        }
    }

    pub fn neg(self) -> XInt {
        match self {
            XInt::NegInf => XInt::PosInf,
            XInt::PosInf => XInt::NegInf,
            XInt::Fin(v) => XInt::Fin(-v),
        }
    }
}

impl fmt::Debug for XInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XInt::NegInf => write!(f, "-inf"),
            XInt::PosInf => write!(f, "+inf"),
            XInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// Closed exponent interval with possibly infinite endpoints.
/// Empty iff `lo > hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub lo: XInt,
    pub hi: XInt,
}

impl Span {
    pub fn full() -> Self {
        Span {
            lo: XInt::NegInf,
            hi: XInt::PosInf,
        }
    }

    pub fn empty() -> Self {
        Span {
            lo: XInt::Fin(1),
            hi: XInt::Fin(0),
        }
    }

    pub fn fin(lo: i64, hi: i64) -> Self {
        Span {
            lo: XInt::Fin(lo),
            hi: XInt::Fin(hi),
        }
    }

    pub fn point(v: i64) -> Self {
        Span::fin(v, v)
    }

    pub fn at_most(hi: i64) -> Self {
        Span {
            lo: XInt::NegInf,
            hi: XInt::Fin(hi),
        }
    }

    pub fn at_least(lo: i64) -> Self {
        Span {
            lo: XInt::Fin(lo),
            hi: XInt::PosInf,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= XInt::Fin(v) && XInt::Fin(v) <= self.hi
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    pub fn intersect(&self, other: &Span) -> Span {
        Span {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn hull(&self, other: &Span) -> Span {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        Span {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Minkowski sum.
    pub fn add(&self, other: &Span) -> Span {
        if self.is_empty() || other.is_empty() {
            return Span::empty();
        }
        Span {
            lo: self.lo.add(other.lo),
            hi: self.hi.add(other.hi),
        }
    }

    pub fn shift(&self, by: i64) -> Span {
        self.add(&Span::point(by))
    }

    /// Iterate the finite integers of the span. Panics on infinite spans.
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        if self.is_empty() {
            return 1..=0;
        }
        let lo = self.lo.finite().expect("finite span");
        let hi = self.hi.finite().expect("finite span");
        lo..=hi
    }
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{:?}]", self.lo, self.hi)
    }
}

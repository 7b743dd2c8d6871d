//! Sparse polynomials in the deformation parameter `q` with rational
//! coefficients. Degrees stay small here (tens at most), so a map keyed by
//! degree plus a primitive-PRS gcd is all the machinery required.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::rational::Rat;

/// Polynomial in `q` over the rationals. Invariant: no stored zero
/// coefficients, so the zero polynomial is the empty map and `degree`
/// returns `None` for it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QPoly {
    coeffs: BTreeMap<u32, Rat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn q() -> Self {
        QPoly::monomial(1, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        QPoly { coeffs }
    }

    pub fn monomial(deg: u32, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        QPoly { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (u32, Rat)>) -> Self {
        let mut p = QPoly::zero();
        for (d, c) in pairs {
            p.add_term(d, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeffs[&0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || self.degree() == Some(0)
    }

    /// Degree, with `None` as the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: u32) -> Rat {
        self.coeffs.get(&deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        match self.degree() {
            Some(d) => self.coeffs[&d].clone(),
            None => Rat::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Rat)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, deg: u32, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(deg).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(*d, c);
        }
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(*d, &-c);
        }
        out
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                out.add_term(da + db, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> QPoly {
        if s.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        // Horner over the sparse support.
        let mut acc = Rat::zero();
        let mut last: Option<u32> = None;
        for (d, c) in self.coeffs.iter().rev() {
            if let Some(prev) = last {
                acc *= &x.pow((prev - d) as i64).expect("positive power");
            }
            acc += c;
            last = Some(*d);
        }
        if let Some(d0) = last {
            acc *= &x.pow(d0 as i64).expect("positive power");
        }
        acc
    }

    pub fn make_monic(&self) -> QPoly {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip().expect("nonzero leading coefficient"))
    }

    /// Euclidean division by a nonzero divisor: `self = q*d + r` with
    /// `deg r < deg d`.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let dlc = d.leading_coeff();
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = &rem.leading_coeff() / &dlc;
            let shift = rd - dd;
            quot.add_term(shift, &factor);
            for (di, ci) in &d.coeffs {
                rem.add_term(di + shift, &-&(ci * &factor));
            }
        }
        (quot, rem)
    }

    pub fn divides_exactly(&self, other: &QPoly) -> Option<QPoly> {
        if self.is_zero() {
            return None;
        }
        let (q, r) = other.divrem(self);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd via a primitive polynomial remainder sequence over the
    /// integers, which keeps coefficient growth in check.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_zero() {
            return b.make_monic();
        }
        if b.is_zero() {
            return a.make_monic();
        }
        // nonzero constants are units
        if a.is_constant() || b.is_constant() {
            return QPoly::one();
        }
        let mut u = IntPoly::from_qpoly(a).primitive();
        let mut v = IntPoly::from_qpoly(b).primitive();
        if u.degree() < v.degree() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_zero() {
            let r = u.pseudo_rem(&v).primitive();
            u = v;
            v = r;
        }
        u.to_qpoly().make_monic()
    }

    pub(crate) fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if neg { -c } else { c.clone() };
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *d == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

/// Dense integer polynomial used only inside the gcd routine.
struct IntPoly {
    // ascending degree, no trailing zeros
    c: Vec<BigInt>,
}

impl IntPoly {
    fn from_qpoly(p: &QPoly) -> IntPoly {
        // Clear denominators; the common scalar is irrelevant for gcd.
        let mut lcm = BigInt::one();
        for (_, r) in p.iter() {
            lcm = lcm.lcm(r.denom());
        }
        let deg = p.degree().unwrap_or(0) as usize;
        let mut c = vec![BigInt::zero(); deg + 1];
        for (d, r) in p.iter() {
            c[*d as usize] = r.numer() * (&lcm / r.denom());
        }
        let mut out = IntPoly { c };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
        }
        g
    }

    fn primitive(mut self) -> IntPoly {
        if self.is_zero() {
            return self;
        }
        let mut g = self.content();
        if self.c.last().unwrap().is_negative() {
            g = -g;
        }
        for x in &mut self.c {
            *x = &*x / &g;
        }
        self
    }

    /// Pseudo-remainder of `self` by `other`.
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let d = other.degree();
        let lc = other.c.last().unwrap().clone();
        let mut r = self.c.clone();
        while r.len() as isize - 1 >= d && !r.is_empty() {
            let rd = r.len() - 1;
            let coef = r[rd].clone();
            for x in r.iter_mut() {
                *x = &*x * &lc;
            }
            let shift = rd - d as usize;
            for (i, oc) in other.c.iter().enumerate() {
                r[i + shift] -= oc * &coef;
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        let mut out = IntPoly { c: r };
        out.trim();
        out
    }

    fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .map(|(d, x)| (d as u32, Rat::from_big(x.clone()))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(u32, i64)]) -> QPoly {
        QPoly::from_coeffs(pairs.iter().map(|(d, c)| (*d, Rat::from_i64(*c))))
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(QPoly::zero().degree(), None);
        assert_eq!(p(&[(3, 2), (0, -1)]).degree(), Some(3));
    }

    #[test]
    fn divrem_exact() {
        // (q^2 - 1) / (q - 1) = q + 1
        let n = p(&[(2, 1), (0, -1)]);
        let d = p(&[(1, 1), (0, -1)]);
        let (q, r) = n.divrem(&d);
        assert!(r.is_zero());
        assert_eq!(q, p(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn gcd_euclid() {
        // gcd(q^2 - 1, 2q - 2) = q - 1 (monic)
        let a = p(&[(2, 1), (0, -1)]);
        let b = p(&[(1, 2), (0, -2)]);
        assert_eq!(QPoly::gcd(&a, &b), p(&[(1, 1), (0, -1)]));
        // coprime case
        let c = p(&[(1, 1), (0, 5)]);
        assert!(QPoly::gcd(&a, &c).is_one());
        // gcd with zero
        assert_eq!(QPoly::gcd(&QPoly::zero(), &b), p(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn eval_horner() {
        let a = p(&[(2, 1), (1, -1)]); // q^2 - q
        assert_eq!(a.eval(&Rat::new(3, 2)), Rat::new(3, 4));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[(2, 3), (0, -1)]).to_string(), "3*q^2 - 1");
        assert_eq!(p(&[(1, 2)]).to_string(), "2*q");
        assert_eq!(p(&[(1, 1)]).to_string(), "q");
        assert_eq!(p(&[(1, -1), (0, 1)]).to_string(), "-q + 1");
        assert_eq!(QPoly::zero().to_string(), "0");
    }
}

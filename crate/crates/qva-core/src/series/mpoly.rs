//! Polynomials in named formal variables with Q(q) coefficients, plus
//! univariate polynomials and rational functions over Q(q). These are the
//! inputs to the directional expansions; the parameter `q` never appears
//! as a formal variable here, it lives inside the coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{EngineError, Result};
use crate::scalar::{QScalar, Rat};

/// Multivariate polynomial over Q(q). Exponents are non-negative.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, QScalar>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: QScalar) -> Self {
        let mut p = MPoly::zero(vars);
        p.add_term(vec![0; p.vars.len()], &c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = MPoly::zero(vars);
        let i = p.index_of(name);
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.add_term(e, &QScalar::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> usize {
        self.vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &QScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: &QScalar) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(exp.len(), self.vars.len());
        debug_assert!(exp.iter().all(|&e| e >= 0));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = MPoly::zero_like(self);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, s: &QScalar) -> MPoly {
        if s.is_zero() {
            return MPoly::zero_like(self);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * s))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            QScalar::one(),
        );
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn zero_like(p: &MPoly) -> MPoly {
        MPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn degree_in(&self, name: &str) -> Option<i64> {
        let i = self.index_of(name);
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Coefficients with respect to one variable: exponent -> polynomial in
    /// the remaining variables (the named variable removed from the list).
    pub fn decompose(&self, name: &str) -> BTreeMap<i64, MPoly> {
        let i = self.index_of(name);
        let rest: Vec<&str> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.as_str())
            .collect();
        let mut out: BTreeMap<i64, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest_exp = e.clone();
            let d = rest_exp.remove(i);
            out.entry(d)
                .or_insert_with(|| MPoly::zero(&rest))
                .add_term(rest_exp, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Substitute `name := a + b` where both replacement variables are in
    /// the target list. Exponents here are non-negative so the binomial
    /// expansion is finite.
    pub fn subst_sum(&self, name: &str, a: &str, b: &str, target_vars: &[&str]) -> MPoly {
        let i = self.index_of(name);
        let mut out = MPoly::zero(target_vars);
        let pa = MPoly::var(target_vars, a);
        let pb = MPoly::var(target_vars, b);
        for (e, c) in &self.terms {
            let d = e[i] as u32;
            // map remaining exponents into target positions
            let mut base = MPoly::constant(target_vars, c.clone());
            for (j, ej) in e.iter().enumerate() {
                if j == i || *ej == 0 {
                    continue;
                }
                base = base.mul(&MPoly::var(target_vars, self.vars[j].as_str()).pow(*ej as u32));
            }
            let sum = pa.add(&pb).pow(d);
            out = out.add(&base.mul(&sum));
        }
        out
    }

    /// Substitute `name := scale * target + shift` (affine, scalar coefficients).
    pub fn subst_affine(
        &self,
        name: &str,
        scale: &QScalar,
        shift: &QScalar,
        target: &str,
        target_vars: &[&str],
    ) -> MPoly {
        let i = self.index_of(name);
        let mut out = MPoly::zero(target_vars);
        let image = MPoly::var(target_vars, target)
            .scale(scale)
            .add(&MPoly::constant(target_vars, shift.clone()));
        for (e, c) in &self.terms {
            let d = e[i] as u32;
            let mut base = MPoly::constant(target_vars, c.clone());
            for (j, ej) in e.iter().enumerate() {
                if j == i || *ej == 0 {
                    continue;
                }
                base = base.mul(&MPoly::var(target_vars, self.vars[j].as_str()).pow(*ej as u32));
            }
            out = out.add(&base.mul(&image.pow(d)));
        }
        out
    }

    /// The value on the diagonal `name := other` (rename-and-merge).
    pub fn subst_rename(&self, name: &str, other: &str, target_vars: &[&str]) -> MPoly {
        let i = self.index_of(name);
        let mut out = MPoly::zero(target_vars);
        for (e, c) in &self.terms {
            let mut base = MPoly::constant(target_vars, c.clone());
            for (j, ej) in e.iter().enumerate() {
                if *ej == 0 {
                    continue;
                }
                let v = if j == i {
                    other
                } else {
                    self.vars[j].as_str()
                };
                base = base.mul(&MPoly::var(target_vars, v).pow(*ej as u32));
            }
            out = out.add(&base);
        }
        out
    }

    /// Multiplicity of the linear factor `va - vb` (order of vanishing on
    /// the diagonal after dividing out).
    pub fn diagonal_vanishing_order(&self, va: &str, vb: &str) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let diag = cur.subst_rename(va, vb, &vars);
            if !diag.is_zero() {
                return k;
            }
            cur = cur
                .divide_by_difference(va, vb)
                .expect("vanishing on diagonal implies divisibility");
            k += 1;
        }
    }

    /// Exact division by `va - vb`, if possible.
    pub fn divide_by_difference(&self, va: &str, vb: &str) -> Result<MPoly> {
        // Treat as polynomial in va over the rest and do long division.
        let ia = self.index_of(va);
        let ib = self.index_of(vb);
        let mut rem = self.clone();
        let mut quot = MPoly::zero_like(self);
        while !rem.is_zero() {
            let (e, c) = rem
                .terms
                .iter()
                .max_by_key(|(e, _)| e[ia])
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            if e[ia] == 0 {
                return Err(EngineError::Parse(
                    "not divisible by variable difference".to_string(),
                ));
            }
            let mut qe = e.clone();
            qe[ia] -= 1;
            quot.add_term(qe.clone(), &c);
            // subtract (va - vb) * c * x^qe
            let mut t1 = qe.clone();
            t1[ia] += 1;
            rem.add_term(t1, &c.neg());
            let mut t2 = qe;
            t2[ib] += 1;
            rem.add_term(t2, &c);
        }
        Ok(quot)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, d) in self.vars.iter().zip(e) {
                if *d != 0 {
                    write!(f, "*{v}^{d}")?;
                }
            }
        }
        Ok(())
    }
}

/// Rational function in named variables over Q(q). Stored unreduced apart
/// from a trivial zero-numerator normalization; the expansion machinery
/// only needs a nonzero denominator.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(num: MPoly) -> Self {
        let vars: Vec<&str> = num.vars().iter().map(|s| s.as_str()).collect();
        let den = MPoly::constant(&vars, QScalar::one());
        RatFn { num, den }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn recip(&self) -> Result<RatFn> {
        if self.num.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        Ok(RatFn {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }
}

/// Univariate polynomial over Q(q) in an anonymous formal variable.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: BTreeMap<u32, QScalar>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn constant(c: QScalar) -> Self {
        UPoly::monomial(0, c)
    }

    pub fn monomial(deg: u32, c: QScalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        UPoly { coeffs }
    }

    pub fn x() -> Self {
        UPoly::monomial(1, QScalar::one())
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (u32, QScalar)>) -> Self {
        let mut p = UPoly::zero();
        for (d, c) in pairs {
            p.add_term(d, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, d: u32) -> QScalar {
        self.coeffs.get(&d).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &QScalar)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, deg: u32, c: &QScalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(deg) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (d, c) in &o.coeffs {
            out.add_term(*d, c);
        }
        out
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        let mut out = UPoly::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &o.coeffs {
                out.add_term(da + db, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, s: &QScalar) -> UPoly {
        if s.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c * s)).collect(),
        }
    }

    /// Substitute a linear combination of two formal variables plus a
    /// constant for the univariate argument, yielding a bivariate MPoly:
    /// `u := c1*v1 + c2*v2 + c0`.
    pub fn subst_linear2(
        &self,
        c1: &QScalar,
        v1: &str,
        c2: &QScalar,
        v2: &str,
        c0: &QScalar,
        target_vars: &[&str],
    ) -> MPoly {
        let image = MPoly::var(target_vars, v1)
            .scale(c1)
            .add(&MPoly::var(target_vars, v2).scale(c2))
            .add(&MPoly::constant(target_vars, c0.clone()));
        let mut out = MPoly::zero(target_vars);
        for (d, c) in &self.coeffs {
            out = out.add(&image.pow(*d).scale(c));
        }
        out
    }

    fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero());
        let dd = d.degree().unwrap();
        let dlc = d.coeff(dd);
        let mut rem = self.clone();
        let mut quot = UPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.coeff(rd).try_div(&dlc).expect("unit leading coeff");
            let shift = rd - dd;
            quot.add_term(shift, &factor);
            for (di, ci) in &d.coeffs {
                rem.add_term(di + shift, &(ci * &factor).neg());
            }
        }
        (quot, rem)
    }

    /// Monic gcd by Euclid over the field Q(q).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut u = a.clone();
        let mut v = b.clone();
        while !v.is_zero() {
            let (_, r) = u.divrem(&v);
            u = v;
            v = r;
        }
        if u.is_zero() {
            return u;
        }
        let lc = u.coeff(u.degree().unwrap());
        u.scale(&lc.recip().expect("nonzero leading coeff"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})u^{d}")?;
        }
        Ok(())
    }
}

/// Univariate rational function over Q(q), gcd-reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn1 {
    pub num: UPoly,
    pub den: UPoly,
}

impl RatFn1 {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn1 {
                num,
                den: UPoly::constant(QScalar::one()),
            });
        }
        let g = UPoly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        // normalize the denominator leading coefficient to 1
        let lc = den.coeff(den.degree().unwrap());
        let inv = lc.recip().expect("nonzero");
        Ok(RatFn1 {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(num: UPoly) -> Self {
        RatFn1 {
            num,
            den: UPoly::constant(QScalar::one()),
        }
    }

    pub fn one() -> Self {
        RatFn1::from_poly(UPoly::constant(QScalar::one()))
    }

    /// `(a*u + b) / (c*u + d)` as a convenience constructor.
    pub fn moebius(a: QScalar, b: QScalar, c: QScalar, d: QScalar) -> Result<Self> {
        RatFn1::new(
            UPoly::from_coeffs([(1, a), (0, b)]),
            UPoly::from_coeffs([(1, c), (0, d)]),
        )
    }

    /// Substitute `u := c1*v1 + c2*v2 + c0` into numerator and denominator.
    pub fn subst_linear2(
        &self,
        c1: &QScalar,
        v1: &str,
        c2: &QScalar,
        v2: &str,
        c0: &QScalar,
        target_vars: &[&str],
    ) -> RatFn {
        RatFn {
            num: self.num.subst_linear2(c1, v1, c2, v2, c0, target_vars),
            den: self.den.subst_linear2(c1, v1, c2, v2, c0, target_vars),
        }
    }
}

/// Binomial coefficient as a Q(q) scalar.
pub fn qbinom(n: i64, k: u64) -> QScalar {
    QScalar::from_rat(Rat::binomial(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1x2() -> [&'static str; 2] {
        ["x1", "x2"]
    }

    #[test]
    fn poly_subst_sum() {
        // (x1 - x2)^2 with x1 := a + b over vars (a, b, x2)
        let v = x1x2();
        let p = MPoly::var(&v, "x1").sub(&MPoly::var(&v, "x2"));
        let p2 = p.mul(&p);
        let q = p2.subst_sum("x1", "a", "b", &["a", "b", "x2"]);
        // (a + b - x2)^2 expanded has 6 terms
        assert_eq!(q.iter().count(), 6);
    }

    #[test]
    fn divide_by_difference_exact() {
        let v = x1x2();
        let d = MPoly::var(&v, "x1").sub(&MPoly::var(&v, "x2"));
        let p = d.mul(&d);
        assert_eq!(p.diagonal_vanishing_order("x1", "x2"), 2);
        let q = p.divide_by_difference("x1", "x2").unwrap();
        assert_eq!(q, d);
    }

    #[test]
    fn upoly_gcd_reduces() {
        // (u^2 - q^2)/(u - q) = u + q
        let q = QScalar::q();
        let num = UPoly::from_coeffs([(2, QScalar::one()), (0, q.mul(&q).neg())]);
        let den = UPoly::from_coeffs([(1, QScalar::one()), (0, q.neg())]);
        let r = RatFn1::new(num, den).unwrap();
        assert_eq!(r.den, UPoly::constant(QScalar::one()));
        assert_eq!(r.num, UPoly::from_coeffs([(1, QScalar::one()), (0, q)]));
    }
}

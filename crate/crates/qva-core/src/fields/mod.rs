//! Calculus on spaces of fields `Hom(W, W((x^-1)))` (modes vanish far
//! below) and `Hom(W, W((x)))` (modes vanish far above): windowed pair
//! products, locality certificates, certificate-based n-th products, weak
//! associativity, the opposite Jacobi identity, and bracket-decomposition
//! shortcuts.
//!
//! Module vectors are opaque: anything with an ordered basis plugs in.

mod assoc;
mod bracket;
mod jacobi;
mod product;

pub use assoc::verify_weak_associativity;
pub use bracket::{bracket_nth_products, BracketDecomposition, DecompositionTerm};
pub use jacobi::verify_opposite_jacobi;
pub use product::{nth_product_residue_at_zero, y_eo_product};

use std::fmt;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::scalar::QScalar;
use crate::series::{
    polynomial_series, CellWitness, MPoly, QSeries, RatFn1, Region, Series, Span, VarSpec, XInt,
};
use crate::vect::{BasisKey, Vect};

/// Which half of the mode ladder eventually annihilates each vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuleKind {
    /// `Hom(W, W((x)))`: act(n, w) = 0 once n > bound(w).
    AtZero,
    /// `Hom(W, W((x^-1)))`: act(n, w) = 0 once n < bound(w).
    AtInfinity,
}

impl ModuleKind {
    pub fn region(&self) -> Region {
        match self {
            ModuleKind::AtZero => Region::AtZero,
            ModuleKind::AtInfinity => Region::AtInfinity,
        }
    }
}

type ActFn<B> = dyn Fn(i64, &Vect<B>) -> Vect<B> + Send + Sync;
type BoundFn<B> = dyn Fn(&Vect<B>) -> i64 + Send + Sync;

/// A field given by its mode action plus an annihilation bound that makes
/// every window computation provably finite.
#[derive(Clone)]
pub struct Field<B: BasisKey> {
    pub label: String,
    pub kind: ModuleKind,
    act: Arc<ActFn<B>>,
    bound: Arc<BoundFn<B>>,
}

impl<B: BasisKey> fmt::Debug for Field<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({}, {:?})", self.label, self.kind)
    }
}

impl<B: BasisKey + 'static> Field<B> {
    pub fn new(
        label: impl Into<String>,
        kind: ModuleKind,
        act: impl Fn(i64, &Vect<B>) -> Vect<B> + Send + Sync + 'static,
        bound: impl Fn(&Vect<B>) -> i64 + Send + Sync + 'static,
    ) -> Self {
        Field {
            label: label.into(),
            kind,
            act: Arc::new(act),
            bound: Arc::new(bound),
        }
    }

    /// The identity operator as a field: only the (-1)-mode acts.
    pub fn identity(kind: ModuleKind) -> Self {
        Field::new(
            "1",
            kind,
            |n, w| if n == -1 { w.clone() } else { Vect::zero() },
            |_| -1,
        )
    }

    pub fn act(&self, n: i64, w: &Vect<B>) -> Vect<B> {
        let out = (self.act)(n, w);
        debug_assert!(
            out.is_zero() || !self.vanishes_at(n, w),
            "{}({n}) violated its annihilation bound",
            self.label
        );
        out
    }

    pub fn bound(&self, w: &Vect<B>) -> i64 {
        (self.bound)(w)
    }

    fn vanishes_at(&self, n: i64, w: &Vect<B>) -> bool {
        match self.kind {
            ModuleKind::AtZero => n > self.bound(w),
            ModuleKind::AtInfinity => n < self.bound(w),
        }
    }

    /// True support span of the exponents of `field(x) w`.
    pub fn exponent_support(&self, w: &Vect<B>) -> Span {
        let b = self.bound(w);
        match self.kind {
            // nonzero modes n <= b, exponents -n-1 >= -b-1
            ModuleKind::AtZero => Span::at_least(-b - 1),
            // nonzero modes n >= b, exponents -n-1 <= -b-1
            ModuleKind::AtInfinity => Span::at_most(-b - 1),
        }
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        let act = self.act.clone();
        let s = s.clone();
        Field {
            label: format!("({s})*{}", self.label),
            kind: self.kind,
            act: Arc::new(move |n, w| act(n, w).scale(&s)),
            bound: self.bound.clone(),
        }
    }

    pub fn add(&self, other: &Field<B>) -> Self {
        assert_eq!(self.kind, other.kind);
        let (a1, a2) = (self.act.clone(), other.act.clone());
        let (b1, b2) = (self.bound.clone(), other.bound.clone());
        let kind = self.kind;
        Field {
            label: format!("{}+{}", self.label, other.label),
            kind,
            act: Arc::new(move |n, w| a1(n, w).add(&a2(n, w))),
            bound: Arc::new(move |w| match kind {
                ModuleKind::AtZero => b1(w).max(b2(w)),
                ModuleKind::AtInfinity => b1(w).min(b2(w)),
            }),
        }
    }

    pub fn zero_field(kind: ModuleKind) -> Self {
        Field::new("0", kind, |_, _| Vect::zero(), move |_| match kind {
            ModuleKind::AtZero => i64::MIN / 4,
            ModuleKind::AtInfinity => i64::MAX / 4,
        })
    }

    /// Reparametrized field `x -> x + c` for an integer shift: mode
    /// relabeling a(x+c) = sum_n a(n) (x+c)^{-n-1}, which mixes modes by
    /// binomials. Equivalent to acting by the group of affine shifts.
    pub fn shift_argument(&self, c: i64) -> Self {
        assert_eq!(self.kind, ModuleKind::AtInfinity, "shift needs x at infinity");
        let act = self.act.clone();
        let bound = self.bound.clone();
        let label = format!("{}(x{:+})", self.label, c);
        // coefficient of x^{-m-1} in sum_n a(n)(x+c)^{-n-1}:
        //   sum_{i>=0} C(-n-1, i) c^i a(n) at exponent -n-1-i = -m-1,
        // so a(x+c)(m) = sum_{i>=0} C(-(m-i)-1+..) .. collect: n = m - i.
        let cq = QScalar::from_i64(c);
        let b2 = self.bound.clone();
        Field {
            label,
            kind: self.kind,
            act: Arc::new(move |m, w| {
                let mut acc = Vect::zero();
                let lo = bound(w);
                // n = m - i >= lo  =>  i <= m - lo
                let mut i = 0i64;
                while m - i >= lo {
                    let n = m - i;
                    let coef = crate::series::qbinom(-n - 1, i as u64)
                        .mul(&cq.pow(i).expect("nonneg"));
                    if !coef.is_zero() {
                        acc.add_scaled(&act(n, w), &coef);
                    }
                    i += 1;
                }
                acc
            }),
            bound: Arc::new(move |w| b2(w)),
        }
    }
}

/// Witness data for the tests against locality and product identities.
#[derive(Clone, Debug)]
pub struct FieldCheck {
    pub id: String,
    pub ok: bool,
    pub counterexample: Option<CellWitness>,
}

impl FieldCheck {
    pub fn passed(id: impl Into<String>) -> Self {
        FieldCheck {
            id: id.into(),
            ok: true,
            counterexample: None,
        }
    }

    pub fn failed(id: impl Into<String>, w: CellWitness) -> Self {
        FieldCheck {
            id: id.into(),
            ok: false,
            counterexample: Some(w),
        }
    }

    pub fn from_witness(id: impl Into<String>, w: Option<CellWitness>) -> Self {
        match w {
            None => FieldCheck::passed(id),
            Some(w) => FieldCheck::failed(id, w),
        }
    }
}

/// Certificate that a pair of fields multiplies into a jointly truncated
/// object after clearing by `p(x1, x2)`.
///
/// `pairs` empty: the quasi-local form `p ab = p ba`.
/// `pairs` nonempty: the braided form
///   `(x1-x2)^k a(x1) b(x2) = (x1-x2)^k sum_i f_i(-x1+x2) u_i(x2) v_i(x1)`.
#[derive(Clone)]
pub struct Certificate<B: BasisKey> {
    pub p: MPoly,
    pub k: usize,
    pub pairs: Vec<(RatFn1, Field<B>, Field<B>)>,
}

impl<B: BasisKey + 'static> Certificate<B> {
    /// Pure difference-power certificate `(x1 - x2)^k`, commutative form.
    pub fn power(k: usize) -> Self {
        let p = diff_poly().pow(k as u32);
        Certificate {
            p,
            k,
            pairs: vec![],
        }
    }

    /// Quasi-local certificate with an explicit polynomial.
    pub fn with_poly(p: MPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(EngineError::InvalidCertificate(
                "zero polynomial".to_string(),
            ));
        }
        let k = p.diagonal_vanishing_order("x1", "x2") as usize;
        Ok(Certificate { p, k, pairs: vec![] })
    }

    /// Braided certificate `(x1-x2)^k` with rational exchange data.
    pub fn braided(k: usize, pairs: Vec<(RatFn1, Field<B>, Field<B>)>) -> Self {
        let p = diff_poly().pow(k as u32);
        Certificate { p, k, pairs }
    }

    /// Ceiling (at-infinity) or floor (at-zero) of the x1-exponents of
    /// `p(x1,x2) a(x1) b(x2) w`, uniform in x2. Read off the flipped side
    /// of the certificate identity, where the x1-field acts first.
    fn x1_extremum(&self, a: &Field<B>, w: &Vect<B>) -> i64 {
        let (d1, _) = pdegs(&self.p);
        match a.kind {
            ModuleKind::AtInfinity => {
                if self.pairs.is_empty() {
                    (-a.bound(w) - 1) + d1
                } else {
                    self.pairs
                        .iter()
                        .map(|(f, _, v)| {
                            let fc = ratfn1_top(f);
                            (-v.bound(w) - 1) + fc + d1
                        })
                        .max()
                        .expect("nonempty pairs")
                }
            }
            ModuleKind::AtZero => {
                if self.pairs.is_empty() {
                    (-a.bound(w) - 1) + 0
                } else {
                    self.pairs
                        .iter()
                        .map(|(f, _, v)| (-v.bound(w) - 1) + ratfn1_val(f))
                        .min()
                        .expect("nonempty pairs")
                }
            }
        }
    }
}

pub(crate) fn diff_poly() -> MPoly {
    let ids = ["x1", "x2"];
    MPoly::var(&ids, "x1").sub(&MPoly::var(&ids, "x2"))
}

pub(crate) fn pdegs(p: &MPoly) -> (i64, i64) {
    (
        p.degree_in("x1").unwrap_or(0),
        p.degree_in("x2").unwrap_or(0),
    )
}

/// Top exponent of the at-infinity expansion of a univariate rational
/// function: deg num - deg den.
pub(crate) fn ratfn1_top(f: &RatFn1) -> i64 {
    f.num.degree().unwrap_or(0) as i64 - f.den.degree().unwrap_or(0) as i64
}

/// Valuation of the at-zero expansion: ord num - ord den.
pub(crate) fn ratfn1_val(f: &RatFn1) -> i64 {
    let ord = |p: &crate::series::UPoly| p.iter().next().map(|(d, _)| *d as i64).unwrap_or(0);
    ord(&f.num) - ord(&f.den)
}

/// The operator series `left(xl) right(xr) w` on a window; `right` acts
/// first. Support: honest one-sided bound in `xr` from `right.bound(w)`,
/// nothing claimed in `xl` (its joint bound is certificate business).
pub fn pair_product<B: BasisKey + 'static>(
    left: &Field<B>,
    xl: &str,
    wl: Span,
    right: &Field<B>,
    xr: &str,
    wr: Span,
    w: &Vect<B>,
) -> Series<Vect<B>> {
    let vars = vec![
        VarSpec::new(xl, left.kind.region()),
        VarSpec::new(xr, right.kind.region()),
    ];
    let support = vec![Span::full(), right.exponent_support(w)];
    let mut out = Series::from_parts(vars, support.clone(), vec![wl, wr], []);
    for j in wr.intersect(&right.exponent_support(w)).iter() {
        let rv = right.act(-j - 1, w);
        if rv.is_zero() {
            continue;
        }
        for i in wl.iter() {
            let v = left.act(-i - 1, &rv);
            if !v.is_zero() {
                out.insert_term(vec![i, j], v);
            }
        }
    }
    out
}

/// Power series of `(ch*vh + cr*vr)^e` with the first variable dominant:
/// exponents of `vh` at most `e`, of `vr` at least 0.
///
/// The support recorded for `vr` is capped by what the `vh` window can
/// reach (the two exponents sum to `e`); the cap claim is only used
/// through cells whose contributions the `vh`-side window constraints
/// keep inside the stated `vh` range, where it is exact.
pub(crate) fn binomial_pair_power(
    ch: &QScalar,
    vh: &str,
    cr: &QScalar,
    vr: &str,
    e: i64,
    vh_win: Span,
) -> QSeries {
    let vars = vec![VarSpec::bilateral(vh), VarSpec::bilateral(vr)];
    if e >= 0 {
        let ids = [vh, vr];
        let p = MPoly::var(&ids, vh)
            .scale(ch)
            .add(&MPoly::var(&ids, vr).scale(cr))
            .pow(e as u32);
        return polynomial_series(&p, &vars);
    }
    let vh_lo = vh_win
        .lo
        .finite()
        .expect("dominant-variable window must be bounded below");
    let cap = (e - vh_lo).max(-1);
    let support = vec![Span::at_most(e), Span::fin(0, cap)];
    let window = vec![
        Span {
            lo: XInt::Fin(vh_lo),
            hi: XInt::PosInf,
        },
        Span::full(),
    ];
    let mut out = Series::from_parts(vars, support.clone(), window, []);
    for i in 0..=cap.max(-1) {
        let coef = crate::series::qbinom(e, i as u64)
            .mul(&ch.pow(e - i).expect("nonzero dominant coefficient"))
            .mul(&cr.pow(i).expect("nonzero coefficient"));
        if !coef.is_zero() {
            out.insert_term(vec![e - i, i], coef);
        }
    }
    out.widen_support(vh, support[0]);
    out.widen_support(vr, support[1]);
    out
}

/// Materialized `iota`-image of a univariate rational function evaluated at
/// `c1*v1 + c2*v2` with `v1` dominant (expanded at infinity in `v1`).
pub(crate) fn ratfn1_at_difference(
    f: &RatFn1,
    c1: &QScalar,
    v1: &str,
    c2: &QScalar,
    v2: &str,
    v1_win: Span,
) -> Result<QSeries> {
    let mut acc: Option<QSeries> = None;
    // Expand f as a Laurent series in u at infinity, then substitute the
    // dominant-variable binomial power series per u-exponent.
    let top = ratfn1_top(f);
    let lo = v1_win
        .lo
        .finite()
        .ok_or_else(|| EngineError::InvalidParameter("v1 window unbounded".to_string()))?;
    // u-exponents below lo only touch v1-cells below the window.
    let u_lo = lo;
    let coeffs = univariate_expansion_at_infinity(f, u_lo, top)?;
    for (e, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        let pw = binomial_pair_power(c1, v1, c2, v2, e, v1_win).scale_q(&c);
        acc = Some(match acc {
            None => pw,
            Some(prev) => prev.add(&pw)?,
        });
    }
    let out = acc.unwrap_or_else(|| {
        Series::zero(vec![VarSpec::bilateral(v1), VarSpec::bilateral(v2)])
    });
    // Below u_lo nothing was materialized, so exactness in v1 starts at the
    // requested window floor.
    let mut out = out.restrict(&[(
        v1.to_string(),
        Span {
            lo: XInt::Fin(lo),
            hi: XInt::PosInf,
        },
    )]);
    out.widen_support(v1, Span::at_most(top));
    Ok(out)
}

/// Laurent coefficients of a univariate rational function expanded at
/// infinity, for exponents in `[lo, hi]` (hi = true top).
pub(crate) fn univariate_expansion_at_infinity(
    f: &RatFn1,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, QScalar)>> {
    let to_mpoly = |p: &crate::series::UPoly| {
        let mut m = MPoly::zero(&["u"]);
        for (d, c) in p.iter() {
            m.add_term(vec![*d as i64], c);
        }
        m
    };
    let rf = crate::series::RatFn::new(to_mpoly(&f.num), to_mpoly(&f.den))?;
    let s = crate::series::iota_expand(
        &rf,
        &[VarSpec::at_infinity("u")],
        &[Span::fin(lo, hi.max(lo))],
    )?;
    Ok(s.terms().map(|(e, c)| (e[0], c.clone())).collect())
}

/// Verify a certificate on a window against explicit test vectors.
///
/// Quasi-local form: `p (ab - ba) = 0`; braided form:
/// `(x1-x2)^k [ab - sum_i f_i(-x1+x2) u_i(x2) v_i(x1)] = 0`.
pub fn check_certificate<B: BasisKey + fmt::Display + 'static>(
    cert: &Certificate<B>,
    a: &Field<B>,
    b: &Field<B>,
    vectors: &[Vect<B>],
    radius: i64,
) -> Result<FieldCheck> {
    let id = format!("locality[{},{}]", a.label, b.label);
    let win = Span::fin(-radius, radius);
    let (d1, d2) = pdegs(&cert.p);
    let wide1 = Span::fin(-radius - d1 - 1, radius + d1 + 1);
    let wide2 = Span::fin(-radius - d2 - 1, radius + d2 + 1);
    let pseries = polynomial_series(
        &cert.p,
        &[VarSpec::bilateral("x1"), VarSpec::bilateral("x2")],
    );
    for w in vectors {
        let ab = pair_product(a, "x1", wide1, b, "x2", wide2, w);
        let lhs = pseries.mul_module(&ab)?;
        let rhs = if cert.pairs.is_empty() {
            let ba = pair_product(b, "x2", wide2, a, "x1", wide1, w);
            pseries.mul_module(&ba)?
        } else {
            let mut acc: Option<Series<Vect<B>>> = None;
            for (f, u, v) in &cert.pairs {
                // u(x2) v(x1) with v acting first; f at (x2 - x1), x1
                // dominant per the at-infinity exchange convention
                let uv = pair_product(u, "x2", wide2, v, "x1", wide1, w);
                let fexp = ratfn1_at_difference(
                    f,
                    &QScalar::from_i64(-1),
                    "x1",
                    &QScalar::one(),
                    "x2",
                    wide1,
                )?;
                let term = fexp.mul_module(&uv)?;
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(&term)?,
                });
            }
            let sum = acc.expect("nonempty pairs");
            pseries.mul_module(&sum)?
        };
        let diff = lhs.sub(&rhs)?;
        let witness = diff.vanishes_on(&[
            ("x1".to_string(), win),
            ("x2".to_string(), win),
        ])?;
        if let Some(cw) = witness {
            return Ok(FieldCheck::failed(id, cw));
        }
    }
    Ok(FieldCheck::passed(id))
}

/// Bounded search for the smallest pure-power certificate clearing the
/// pair on the given window (exploration mode; certificates that come from
/// structure should be passed directly). The radius must dominate the
/// bracket's top delta-derivative order: an order-j delta has no nonzero
/// cells with x1-exponent above -j-1, so a too-small window admits
/// spuriously weak certificates, and downstream truncation claims built on
/// them will fail loudly in the final window checks.
pub fn search_power_certificate<B: BasisKey + fmt::Display + 'static>(
    a: &Field<B>,
    b: &Field<B>,
    vectors: &[Vect<B>],
    radius: i64,
    k_max: usize,
) -> Result<Certificate<B>> {
    for k in 0..=k_max {
        let cert = Certificate::power(k);
        if check_certificate(&cert, a, b, vectors, radius)?.ok {
            return Ok(cert);
        }
    }
    Err(EngineError::InvalidCertificate(format!(
        "no difference-power certificate up to {k_max} for ({}, {})",
        a.label, b.label
    )))
}

/// Compare two fields mode-by-mode on test vectors.
pub fn fields_agree<B: BasisKey + fmt::Display + 'static>(
    id: &str,
    f: &Field<B>,
    g: &Field<B>,
    vectors: &[Vect<B>],
    mode_lo: i64,
    mode_hi: i64,
) -> FieldCheck {
    for w in vectors {
        for m in mode_lo..=mode_hi {
            let d = f.act(m, w).sub(&g.act(m, w));
            if !d.is_zero() {
                return FieldCheck::failed(
                    id,
                    CellWitness {
                        cell: vec![("mode".to_string(), m)],
                        value: format!("{d}"),
                    },
                );
            }
        }
    }
    FieldCheck::passed(id)
}

//! Certificate-based n-th products of fields.
//!
//! The at-infinity product follows the substitution definition: clear the
//! pair product by `p(x1, x)`, substitute `x1 := x + x0`, multiply by the
//! directional expansion of `1/p(x+x0, x)` and read off the coefficient of
//! `x0^{-n-1}`. The certificate supplies the one piece of knowledge the
//! window bookkeeping cannot see on its own: the cleared product is
//! jointly truncated, with extrema computable from the flipped side.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{pair_product, pdegs, Certificate, Field, ModuleKind};
use crate::error::{EngineError, Result};
use crate::scalar::QScalar;
use crate::series::{
    iota_expand, polynomial_series, MPoly, RatFn, Series, Span, VarSpec, XInt,
};
use crate::vect::{BasisKey, Vect};

/// The n-th product field `a(x)_n b(x)` for a certified pair. The result
/// vanishes for `n >= k`, where `k` is the diagonal vanishing order of the
/// certificate polynomial.
pub fn y_eo_product<B: BasisKey + fmt::Display + 'static>(
    a: &Field<B>,
    b: &Field<B>,
    cert: &Certificate<B>,
    n: i64,
) -> Result<Field<B>> {
    if a.kind != b.kind {
        return Err(EngineError::InvalidCertificate(
            "mixed module kinds".to_string(),
        ));
    }
    if cert.p.is_zero() {
        return Err(EngineError::InvalidCertificate("zero polynomial".to_string()));
    }
    let kind = a.kind;
    let kval = cert.p.diagonal_vanishing_order("x1", "x2") as i64;
    let label = format!("({}_{} {})", a.label, n, b.label);
    if n >= kval {
        let mut z = Field::zero_field(kind);
        z.label = label;
        return Ok(z);
    }
    let (d1, d2) = pdegs(&cert.p);
    let dtot = d1 + d2;
    let shift_hi = (kval - n - 1).max(0);

    // the one-variable slice at x0^{-n-1} is cached per input vector and
    // widened on demand; every mode of the product field then reads off a
    // single coefficient
    type Slice<B> = Series<Vect<B>>;
    let cache: Arc<Mutex<BTreeMap<Vect<B>, (i64, Arc<Slice<B>>)>>> =
        Arc::new(Mutex::new(BTreeMap::new()));

    let act_a = a.clone();
    let act_b = b.clone();
    let act_cert = cert.clone();
    let bnd_a = a.clone();
    let bnd_b = b.clone();
    let bnd_cert = cert.clone();
    let bound = move |w: &Vect<B>| -> i64 {
        let c1 = bnd_cert.x1_extremum(&bnd_a, w);
        match kind {
            ModuleKind::AtInfinity => {
                let c2 = (-bnd_b.bound(w) - 1) + d2;
                -(c1 + c2 + dtot) - 1
            }
            ModuleKind::AtZero => {
                let f2 = -bnd_b.bound(w) - 1;
                -(c1 + f2 - dtot) - 1
            }
        }
    };
    let bound_for_act = bound.clone();
    let act = move |m: i64, w: &Vect<B>| -> Vect<B> {
        // outside the certified support the mode vanishes
        let b0 = bound_for_act(w);
        match kind {
            ModuleKind::AtInfinity if m < b0 => return Vect::zero(),
            ModuleKind::AtZero if m > b0 => return Vect::zero(),
            _ => {}
        }
        let g0 = -m - 1;
        let mut guard = cache.lock().unwrap();
        let need_reach = g0.abs() + 2;
        let entry = guard.get(w);
        let slice = match entry {
            Some((reach, s)) if *reach >= need_reach => s.clone(),
            _ => {
                let reach = need_reach.max(18);
                let s = Arc::new(
                    nth_product_slice(
                        &act_a, &act_b, &act_cert, kval, n, shift_hi, reach, w,
                    )
                    .expect("n-th product window computation"),
                );
                guard.insert(w.clone(), (reach, s.clone()));
                s
            }
        };
        drop(guard);
        slice
            .coeff_of("x", g0)
            .expect("slice window covers the mode")
            .get(&[])
    };
    Ok(Field {
        label,
        kind,
        act: Arc::new(act),
        bound: Arc::new(bound),
    })
}

/// The coefficient of `x0^{-n-1}` in the substituted product, as a series
/// in `x` exact on `|exponent| <= reach`.
fn nth_product_slice<B: BasisKey + fmt::Display + 'static>(
    a: &Field<B>,
    b: &Field<B>,
    cert: &Certificate<B>,
    kval: i64,
    n: i64,
    shift_hi: i64,
    reach: i64,
    w: &Vect<B>,
) -> Result<Series<Vect<B>>> {
    let kind = a.kind;
    let (d1, d2) = pdegs(&cert.p);
    let dtot = d1 + d2;
    let (g_lo, g_hi) = (-reach, reach);

    // extrema of the cleared product M = p(x1,x) a(x1) b(x) w
    let c1 = cert.x1_extremum(a, w);
    let c2 = match kind {
        ModuleKind::AtInfinity => (-b.bound(w) - 1) + d2,
        ModuleKind::AtZero => -b.bound(w) - 1,
    };

    let (m_x1, m_x, iw_x, iw_x0) = match kind {
        ModuleKind::AtInfinity => (
            Span::fin(g_lo - dtot - c2 - shift_hi - 2, c1),
            Span::fin(g_lo - dtot - c1 - shift_hi - 2, c2),
            Span::fin(g_lo - c1 - c2 - 2, dtot),
            Span::fin(-kval, -n - 1),
        ),
        ModuleKind::AtZero => (
            Span::fin(c1, g_hi + dtot - c2 + shift_hi + 2),
            Span::fin(c2, g_hi + dtot - c1 + shift_hi + 2),
            Span::fin(-dtot - 2, g_hi - c1 - c2 + 2),
            Span::fin(-kval, -n - 1),
        ),
    };
    if iw_x0.is_empty() {
        return Ok(Series::zero(vec![VarSpec::new("x", kind.region())]));
    }

    // pair windows widened so the cleared product is exact on (m_x1, m_x)
    let pw1 = Span::fin(
        m_x1.lo.finite().unwrap() - d1,
        m_x1.hi.finite().unwrap() + d1,
    );
    let pw2 = Span::fin(
        m_x.lo.finite().unwrap() - d2,
        m_x.hi.finite().unwrap() + d2,
    );
    let pair = pair_product(a, "x1", pw1, b, "x", pw2, w);
    let p_x = cert.p.subst_rename("x2", "x", &["x1", "x"]);
    let pseries = polynomial_series(
        &p_x,
        &[VarSpec::bilateral("x1"), VarSpec::bilateral("x")],
    );
    let mut cleared = pseries.mul_module(&pair)?;
    // certificate knowledge: the cleared product is jointly truncated
    match kind {
        ModuleKind::AtInfinity => {
            cleared.certify_support("x1", Span::at_most(c1));
            cleared.certify_support("x", Span::at_most(c2));
        }
        ModuleKind::AtZero => {
            cleared.certify_support("x1", Span::at_least(c1));
            cleared.certify_support("x", Span::at_least(c2));
        }
    }

    let substituted = cleared.subst_shift("x1", "x", "x0", shift_hi)?;

    // 1/p(x + x0, x), expanded at the module's own region with x0 at zero
    let p2 = p_x.subst_sum("x1", "x", "x0", &["x", "x0"]);
    let inv = RatFn::new(MPoly::constant(&["x", "x0"], QScalar::one()), p2)?;
    let region = kind.region();
    let iexp = iota_expand(
        &inv,
        &[VarSpec::new("x", region), VarSpec::at_zero("x0")],
        &[iw_x, iw_x0],
    )?;

    let total = iexp.mul_module(&substituted)?;
    total.coeff_of("x0", -n - 1)
}

/// Residue-formula n-th product on the at-zero side, for `n >= 0`:
///
///   a(x)_n b(x) w = sum_i C(n,i) (-1)^i a(n-i) b(m+i) w
///                 - sum_{i,e,i'} C(n,i) C(e,i') (-1)^{n-i+i'} phi_e
///                     b'(m+n-i+e-i') a'(i+i') w
///
/// where `phi_e` are the at-zero expansion coefficients of the exchange
/// functions. This is the independent cross-check route against the
/// substitution pipeline.
pub fn nth_product_residue_at_zero<B: BasisKey + 'static>(
    a: &Field<B>,
    b: &Field<B>,
    pairs: &[(crate::series::RatFn1, Field<B>, Field<B>)],
    n: i64,
    m: i64,
    w: &Vect<B>,
) -> Result<Vect<B>> {
    assert_eq!(a.kind, ModuleKind::AtZero);
    if n < 0 {
        return Err(EngineError::InvalidParameter(
            "residue route implemented for n >= 0".to_string(),
        ));
    }
    let mut acc = Vect::zero();
    for i in 0..=n {
        let inner = b.act(m + i, w);
        if inner.is_zero() {
            continue;
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let coef = crate::series::qbinom(n, i as u64).mul(&QScalar::from_i64(sign));
        acc.add_scaled(&a.act(n - i, &inner), &coef);
    }
    for (f, bp, ap) in pairs {
        // a'(i + i') w dies once i + i' exceeds the at-zero bound, and for
        // each surviving vector the b'-mode index m+n-i+e-i' dies once e is
        // large; both caps are computed before expanding f.
        let a_cap = ap.bound(w);
        let mut e_cap = i64::MIN;
        for i in 0..=n {
            for iprime in 0..=(a_cap - i).max(-1) {
                let first = ap.act(i + iprime, w);
                if first.is_zero() {
                    continue;
                }
                e_cap = e_cap.max(bp.bound(&first) - (m + n - i - iprime));
            }
        }
        if e_cap == i64::MIN {
            continue;
        }
        let coeffs = univariate_expansion_at_zero(f, e_cap)?;
        for i in 0..=n {
            for iprime in 0..=(a_cap - i).max(-1) {
                let first = ap.act(i + iprime, w);
                if first.is_zero() {
                    continue;
                }
                for (e, phi) in &coeffs {
                    let bidx = m + n - i + e - iprime;
                    let outer = bp.act(bidx, &first);
                    if outer.is_zero() {
                        continue;
                    }
                    let sign = if (n - i + iprime) % 2 == 0 { 1 } else { -1 };
                    let coef = crate::series::qbinom(n, i as u64)
                        .mul(&crate::series::qbinom(*e, iprime as u64))
                        .mul(phi)
                        .mul(&QScalar::from_i64(-sign));
                    acc.add_scaled(&outer, &coef);
                }
            }
        }
    }
    Ok(acc)
}

/// At-zero Laurent coefficients of a univariate rational function, from
/// its valuation up to a stop predicate.
fn univariate_expansion_at_zero(
    f: &crate::series::RatFn1,
    hi: i64,
) -> Result<Vec<(i64, QScalar)>> {
    let to_mpoly = |p: &crate::series::UPoly| {
        let mut m = MPoly::zero(&["u"]);
        for (d, c) in p.iter() {
            m.add_term(vec![*d as i64], c);
        }
        m
    };
    let rf = RatFn::new(to_mpoly(&f.num), to_mpoly(&f.den))?;
    let s = iota_expand(
        &rf,
        &[VarSpec::at_zero("u")],
        &[Span {
            lo: XInt::NegInf,
            hi: XInt::Fin(hi),
        }],
    )?;
    Ok(s.terms().map(|(e, c)| (e[0], c.clone())).collect())
}

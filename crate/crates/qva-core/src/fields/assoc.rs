//! Weak associativity on windows:
//!
//!   (x0+x2)^k Y(psi, x0+x2) Y(phi, x2) theta w
//!     = (x0+x2)^k Y(Y(psi, x0) phi, x2) theta w
//!
//! verified coefficient-wise in (x0, x2, x) on a box. Negative powers of
//! (x0+x2) on the left expand with x0 dominant.

use std::fmt;

use super::{binomial_pair_power, y_eo_product, Certificate, Field, FieldCheck, ModuleKind};
use crate::error::Result;
use crate::scalar::QScalar;
use crate::series::{Series, Span, VarSpec};
use crate::vect::{BasisKey, Vect};

/// Single-variable window series of `field(x) w`.
pub fn field_window_series<B: BasisKey + 'static>(
    field: &Field<B>,
    var: &str,
    win: Span,
    w: &Vect<B>,
) -> Series<Vect<B>> {
    let vars = vec![VarSpec::new(var, field.kind.region())];
    let support = vec![field.exponent_support(w)];
    let mut out = Series::from_parts(vars, support.clone(), vec![win], []);
    for e in win.intersect(&support[0]).iter() {
        let v = field.act(-e - 1, w);
        if !v.is_zero() {
            out.insert_term(vec![e], v);
        }
    }
    out.widen_support(var, support[0]);
    out
}

/// Verify weak associativity for at-infinity fields with clearing power
/// `k`, on the box `[-radius, radius]^3`, against the given vectors.
/// `certs` supplies a locality certificate for any pair of fields the
/// computation encounters.
#[allow(clippy::too_many_arguments)]
pub fn verify_weak_associativity<B: BasisKey + fmt::Display + 'static>(
    psi: &Field<B>,
    phi: &Field<B>,
    theta: &Field<B>,
    certs: &dyn Fn(&Field<B>, &Field<B>) -> Certificate<B>,
    k: i64,
    vectors: &[Vect<B>],
    radius: i64,
) -> Result<FieldCheck> {
    assert_eq!(psi.kind, ModuleKind::AtInfinity);
    let id = format!(
        "weak-assoc[{},{},{};k={k}]",
        psi.label, phi.label, theta.label
    );
    let r = radius;
    let xwin = Span::fin(-r, r);
    let x0win = Span::fin(-r, r);
    let x2win = Span::fin(-r, r);

    // truncation thresholds
    let kval_inner = certs(phi, theta)
        .p
        .diagonal_vanishing_order("x1", "x2") as i64;
    let kval_outer_pair = certs(psi, phi)
        .p
        .diagonal_vanishing_order("x1", "x2") as i64;

    // products phi_{n'} theta for the needed n': the x2 shift -n'-1 plus a
    // non-negative binomial exponent must reach a window cell, so n' >= -r-1
    let np_lo = -r - 1;
    let np_hi = kval_inner - 1;
    let inner: Vec<(i64, Field<B>)> = (np_lo..=np_hi)
        .map(|np| {
            y_eo_product(phi, theta, &certs(phi, theta), np).map(|f| (np, f))
        })
        .collect::<Result<_>>()?;

    for w in vectors {
        let mut lhs: Option<Series<Vect<B>>> = None;
        let mut rhs: Option<Series<Vect<B>>> = None;
        for (np, inner_field) in &inner {
            // outer products psi_m(inner) share one certificate
            let cert_out = certs(psi, inner_field);
            let kval_out = cert_out.p.diagonal_vanishing_order("x1", "x2") as i64;
            // the factor (x0+x2)^{k-m-1} can only reach the box while its
            // total degree stays within the x0/x2 budgets
            let m_lo = k - 1 - 2 * r - kval_inner.max(0);
            for m in m_lo..kval_out {
                let comp = y_eo_product(psi, inner_field, &cert_out, m)?;
                let base = field_window_series(&comp, "x", xwin, w);
                if base.is_zero() {
                    continue;
                }
                // LHS factor: (x0+x2)^{k-m-1} with x0 dominant, shifted by
                // x2^{-np-1}
                let factor = binomial_pair_power(
                    &QScalar::one(),
                    "x0",
                    &QScalar::one(),
                    "x2",
                    k - m - 1,
                    x0win,
                )
                .shifted("x2", -np - 1);
                let term = factor.mul_module(&base)?;
                lhs = Some(match lhs {
                    None => term,
                    Some(prev) => prev.add(&term)?,
                });
            }
        }
        // RHS: sum over m of (psi_m phi) then its n'-products with theta
        let cert_pp = certs(psi, phi);
        for m in (-r - 1)..kval_outer_pair {
            let pm = y_eo_product(psi, phi, &cert_pp, m)?;
            let cert_pt = certs(&pm, theta);
            let kval_pt = cert_pt.p.diagonal_vanishing_order("x1", "x2") as i64;
            for np in (-r - 1)..kval_pt {
                let comp = y_eo_product(&pm, theta, &cert_pt, np)?;
                let base = field_window_series(&comp, "x", xwin, w);
                if base.is_zero() {
                    continue;
                }
                let factor = binomial_pair_power(
                    &QScalar::one(),
                    "x0",
                    &QScalar::one(),
                    "x2",
                    k,
                    x0win,
                )
                .shifted("x0", -m - 1)
                .shifted("x2", -np - 1);
                let term = factor.mul_module(&base)?;
                rhs = Some(match rhs {
                    None => term,
                    Some(prev) => prev.add(&term)?,
                });
            }
        }
        let (lhs, rhs) = match (lhs, rhs) {
            (Some(l), Some(rr)) => (l, rr),
            (None, None) => continue,
            (Some(l), None) => (l.clone(), l.scale_q(&QScalar::zero())),
            (None, Some(rr)) => (rr.scale_q(&QScalar::zero()), rr.clone()),
        };
        let diff = lhs.sub(&rhs)?;
        let witness = diff.vanishes_on(&[
            ("x0".to_string(), x0win),
            ("x2".to_string(), x2win),
            ("x".to_string(), xwin),
        ])?;
        if let Some(cw) = witness {
            return Ok(FieldCheck::failed(id, cw));
        }
    }
    Ok(FieldCheck::passed(id))
}

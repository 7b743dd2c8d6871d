//! The opposite Jacobi identity on windows, for a braided pair of fields
//! on a module with modes vanishing far below:
//!
//!   - x0^-1 d((x2-x1)/(-x0)) a(x1) b(x2)
//!   + x0^-1 d((x1-x2)/x0) sum_i f_i(-x0) u_i(x2) v_i(x1)
//!   = x2^-1 d((x1-x0)/x2) sum_rho (a_rho b)(x2) x0^{-rho-1}
//!
//! checked coefficient-wise in (x0, x1, x2) on a box. Expansion directions
//! follow the at-infinity pairing: difference powers against an operator
//! product expand with the later-acting variable dominant.

use std::fmt;

use super::assoc::field_window_series;
use super::{
    binomial_pair_power, pair_product, ratfn1_top, univariate_expansion_at_infinity,
    y_eo_product, Certificate, Field, FieldCheck, ModuleKind,
};
use crate::error::{EngineError, Result};
use crate::scalar::QScalar;
use crate::series::{Region, Series, Span, VarSpec};
use crate::vect::{BasisKey, Vect};

fn with_exp<C: crate::series::Coeff>(
    s: &Series<C>,
    var: &str,
    exp: i64,
) -> Series<C> {
    let mut vars = s.vars().to_vec();
    vars.push(VarSpec::new(var, Region::Bilateral));
    s.with_vars(&vars)
        .expect("fresh variable extension")
        .shifted(var, exp)
}

pub fn verify_opposite_jacobi<B: BasisKey + fmt::Display + 'static>(
    a: &Field<B>,
    b: &Field<B>,
    cert: &Certificate<B>,
    vectors: &[Vect<B>],
    radius: i64,
) -> Result<FieldCheck> {
    assert_eq!(a.kind, ModuleKind::AtInfinity);
    if cert.pairs.is_empty() {
        return Err(EngineError::InvalidCertificate(
            "opposite Jacobi needs braided exchange data".to_string(),
        ));
    }
    let id = format!("opp-jacobi[{},{}]", a.label, b.label);
    let r = radius;
    let win = Span::fin(-r, r);
    let kval = cert.p.diagonal_vanishing_order("x1", "x2") as i64;

    // n-th product fields for the right-hand side
    let products: Vec<(i64, Field<B>)> = ((-r - 1)..kval)
        .map(|rho| y_eo_product(a, b, cert, rho).map(|f| (rho, f)))
        .collect::<Result<_>>()?;

    for w in vectors {
        let c2_b = -b.bound(w) - 1;
        let mut total: Option<Series<Vect<B>>> = None;
        let push = |acc: &mut Option<Series<Vect<B>>>,
                        term: Series<Vect<B>>|
         -> Result<()> {
            *acc = Some(match acc.take() {
                None => term,
                Some(prev) => prev.add(&term)?,
            });
            Ok(())
        };

        // T1 = -d((x2-x1)/(-x0)) a(x1) b(x2) w
        {
            let wide1 = Span::fin(-3 * r - c2_b.abs() - 8, 3 * r + c2_b.abs() + 8);
            let wide2 = Span::fin(-r - kval.abs() - 4, r + c2_b.abs() + 4);
            let ab = pair_product(a, "x1", wide1, b, "x2", wide2, w);
            for k in (-r - 1)..=(r - 1) {
                // -x0^-1 (x2-x1)^k (-x0)^{-k} = (-1)^{k+1} (x2-x1)^k x0^{-k-1}
                let sgn = if k % 2 == 0 { -1 } else { 1 };
                let bpp = binomial_pair_power(
                    &QScalar::one(),
                    "x2",
                    &QScalar::from_i64(-1),
                    "x1",
                    k,
                    wide2,
                )
                .scale_q(&QScalar::from_i64(sgn));
                let factor = with_exp(&bpp, "x0", -k - 1);
                push(&mut total, factor.mul_module(&ab)?)?;
            }
        }

        // T2 = + d((x1-x2)/x0) sum_i f_i(-x0) u_i(x2) v_i(x1) w
        for (f, u, v) in &cert.pairs {
            let c1_v = -v.bound(w) - 1;
            let d_top = ratfn1_top(f);
            let k_lo = -r - c1_v.abs() - 2;
            let k_hi = d_top + r;
            let e_lo = -r + k_lo;
            let fc = univariate_expansion_at_infinity(f, e_lo, d_top)?;
            let wide1 = Span::fin(k_lo - 2, k_hi + c1_v.abs() + 2);
            let wide2 = Span::fin(-3 * r - c1_v.abs() - k_hi.abs() - 8, 3 * r + 8);
            let uv = pair_product(u, "x2", wide2, v, "x1", wide1, w);
            for k in k_lo..=k_hi {
                let bpp = binomial_pair_power(
                    &QScalar::one(),
                    "x1",
                    &QScalar::from_i64(-1),
                    "x2",
                    k,
                    wide1,
                );
                for (e, phi) in &fc {
                    let x0_exp = e - k - 1;
                    if x0_exp < -r || x0_exp > r {
                        continue;
                    }
                    // f(-x0): coefficient phi at u^e picks up (-1)^e
                    let sgn = if e % 2 == 0 { 1 } else { -1 };
                    let factor = with_exp(
                        &bpp.scale_q(&phi.mul(&QScalar::from_i64(sgn))),
                        "x0",
                        x0_exp,
                    );
                    push(&mut total, factor.mul_module(&uv)?)?;
                }
            }
        }

        // T3 = - d((x1-x0)/x2) sum_rho (a_rho b)(x2) x0^{-rho-1} w
        for (rho, prod) in &products {
            let cf = -prod.bound(w) - 1;
            let k_lo = -r;
            let k_hi = cf + r;
            let wide1 = Span::fin(k_lo - 2, k_hi + 2);
            let fseries = field_window_series(
                prod,
                "x2",
                Span::fin(-r - (k_hi - k_lo) - 2, r + k_hi.abs() + 2),
                w,
            );
            if fseries.is_zero() {
                continue;
            }
            for k in k_lo..=k_hi {
                let bpp = binomial_pair_power(
                    &QScalar::one(),
                    "x1",
                    &QScalar::from_i64(-1),
                    "x0",
                    k,
                    wide1,
                );
                // multiply, then shift x2 by -k-1 and x0 by -rho-1
                let term = bpp.mul_module(&fseries)?;
                let term = term.shifted("x2", -k - 1);
                let term = term.shifted("x0", -*rho - 1);
                push(&mut total, term.neg())?;
            }
        }

        let total = total.expect("at least one term");
        let witness = total.vanishes_on(&[
            ("x0".to_string(), win),
            ("x1".to_string(), win),
            ("x2".to_string(), win),
        ])?;
        if let Some(cw) = witness {
            return Ok(FieldCheck::failed(id, cw));
        }
    }
    Ok(FieldCheck::passed(id))
}

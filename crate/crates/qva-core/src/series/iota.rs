//! Directional Laurent expansion of rational functions into iterated
//! series fields.
//!
//! `iota_expand(f, order, window)` computes the image of `f` under the
//! unique field embedding determined by the region tag of each variable,
//! truncated exactly to the requested window. The variable order follows
//! the subscript convention `iota_{v1,..;vk,..}`: the *last* variable is
//! the outermost series direction. Expansion is recursive: the outermost
//! variable is expanded with rational-function coefficients, which are in
//! turn expanded in the remaining variables.

use super::core::{QSeries, Region, Series, VarSpec};
use super::mpoly::{MPoly, RatFn};
use super::xint::{Span, XInt};
use crate::error::{EngineError, Result};
use crate::scalar::QScalar;

pub fn iota_expand(f: &RatFn, order: &[VarSpec], window: &[Span]) -> Result<QSeries> {
    assert_eq!(order.len(), window.len(), "one window span per variable");
    let ids: Vec<&str> = order.iter().map(|v| v.id.as_str()).collect();
    let num_vars: Vec<&str> = f.num.vars().iter().map(|s| s.as_str()).collect();
    assert_eq!(ids, num_vars, "rational function vars must match order");
    expand_rec(&f.num, &f.den, order, window)
}

/// Expand a polynomial exactly; the result is exact everywhere.
pub fn polynomial_series(p: &MPoly, order: &[VarSpec]) -> QSeries {
    let n = order.len();
    let mut out: QSeries = Series::from_parts(
        order.to_vec(),
        vec![Span::empty(); n],
        vec![Span::full(); n],
        [],
    );
    for (e, c) in p.iter() {
        out.insert_term(e.clone(), c.clone());
    }
    out
}

fn expand_rec(num: &MPoly, den: &MPoly, vars: &[VarSpec], wins: &[Span]) -> Result<QSeries> {
    if den.is_zero() {
        return Err(EngineError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(Series::zero(vars.to_vec()));
    }
    if vars.is_empty() {
        let c_num = num.iter().next().unwrap().1.clone();
        let c_den = den.iter().next().unwrap().1.clone();
        return Ok(Series::constant(c_num.try_div(&c_den)?));
    }
    let v = vars.last().unwrap();
    let rest = &vars[..vars.len() - 1];
    let rest_wins = &wins[..wins.len() - 1];
    let win_v = *wins.last().unwrap();
    let rest_ids: Vec<&str> = rest.iter().map(|r| r.id.as_str()).collect();

    let dnum = num.decompose(&v.id);
    let dden = den.decompose(&v.id);

    if dden.len() == 1 {
        // Monomial denominator in this variable: finitely many slices, all
        // exact, independent of the region tag.
        let (j, dpoly) = dden.iter().next().unwrap();
        let mut slices = Vec::new();
        for (i, npoly) in &dnum {
            let sub = expand_rec(npoly, dpoly, rest, rest_wins)?;
            slices.push((i - j, sub));
        }
        return Ok(assemble(vars, rest_wins, Span::full(), Span::empty(), slices));
    }

    let dir: i64 = match v.region {
        Region::AtZero => 1,
        Region::AtInfinity => -1,
        Region::Bilateral => {
            return Err(EngineError::InvalidParameter(format!(
                "cannot expand at bilateral variable `{}`",
                v.id
            )))
        }
    };
    // Infinitely many terms appear in the open direction, so the request
    // must bound it.
    let stop = if dir > 0 { win_v.hi } else { win_v.lo };
    let stop = stop.finite().ok_or_else(|| {
        EngineError::InvalidParameter(format!(
            "window for `{}` must be finite towards the expansion direction",
            v.id
        ))
    })?;

    let j_star = if dir > 0 {
        *dden.keys().next().unwrap()
    } else {
        *dden.keys().next_back().unwrap()
    };
    let dlead = dden.get(&j_star).unwrap().clone();
    let num_extreme = if dir > 0 {
        *dnum.keys().next().unwrap()
    } else {
        *dnum.keys().next_back().unwrap()
    };
    let e0 = num_extreme - j_star;
    let steps = if dir > 0 { stop - e0 } else { e0 - stop };

    // Laurent coefficient at exponent e0 + dir*s is P_s / dlead^{s+1}; the
    // recurrence keeps the P_s polynomial.
    let mut dpows: Vec<MPoly> = vec![MPoly::constant(&rest_ids, QScalar::one())];
    let ensure_pow = |dpows: &mut Vec<MPoly>, k: usize| {
        while dpows.len() <= k {
            let next = dpows.last().unwrap().mul(&dlead);
            dpows.push(next);
        }
    };
    let mut ps: Vec<MPoly> = Vec::new();
    let mut slices = Vec::new();
    if steps >= 0 {
        for s in 0..=steps {
            let su = s as usize;
            ensure_pow(&mut dpows, su);
            let e = e0 + dir * s;
            let mut p = match dnum.get(&(e + j_star)) {
                Some(n) => n.mul(&dpows[su]),
                None => MPoly::zero(&rest_ids),
            };
            for (j, dj) in &dden {
                if *j == j_star {
                    continue;
                }
                let d = (j - j_star).unsigned_abs() as usize;
                if su < d {
                    continue;
                }
                ensure_pow(&mut dpows, d - 1);
                p = p.sub(&dj.mul(&ps[su - d]).mul(&dpows[d - 1]));
            }
            ps.push(p.clone());
            if p.is_zero() {
                continue;
            }
            ensure_pow(&mut dpows, su + 1);
            let sub = expand_rec(&p, &dpows[su + 1], rest, rest_wins)?;
            if !sub.is_zero() {
                slices.push((e, sub));
            }
        }
    }

    let support_v = if dir > 0 {
        Span {
            lo: XInt::Fin(e0),
            hi: XInt::PosInf,
        }
    } else {
        Span {
            lo: XInt::NegInf,
            hi: XInt::Fin(e0),
        }
    };
    Ok(assemble(vars, rest_wins, win_v, support_v, slices))
}

/// Put one expanded variable's slices back together into a full series.
fn assemble(
    vars: &[VarSpec],
    rest_wins: &[Span],
    win_v: Span,
    structural_support_v: Span,
    slices: Vec<(i64, QSeries)>,
) -> QSeries {
    let n = vars.len();
    let mut window: Vec<Span> = rest_wins.to_vec();
    window.push(win_v);
    let mut out: QSeries =
        Series::from_parts(vars.to_vec(), vec![Span::empty(); n], window.clone(), []);
    let mut inner_support = vec![Span::empty(); n - 1];
    for (e, sub) in &slices {
        // Support must account for every nonzero slice, culled or not.
        out.widen_support(&vars[n - 1].id, Span::point(*e));
        for i in 0..n - 1 {
            inner_support[i] = inner_support[i].hull(&sub.support()[i]);
        }
        if !win_v.contains(*e) {
            continue;
        }
        for (re, c) in sub.terms() {
            if re.iter().zip(rest_wins).all(|(x, w)| w.contains(*x)) {
                let mut exp = re.clone();
                exp.push(*e);
                out.insert_term(exp, c.clone());
            }
        }
    }
    for (i, sp) in inner_support.iter().enumerate() {
        out.widen_support(&vars[i].id, *sp);
    }
    out.widen_support(&vars[n - 1].id, structural_support_v);
    out
}

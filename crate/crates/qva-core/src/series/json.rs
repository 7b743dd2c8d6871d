//! JSON form for scalar series:
//! `{vars: [{id, region}], terms: [{exp, coeff}], window: {..}, support: {..}}`
//! with terms in lexicographic exponent order and coefficients in the Q(q)
//! text grammar. Window and support endpoints use `null` for an infinite
//! side.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::core::{QSeries, Region, Series, VarSpec};
use super::xint::{Span, XInt};
use crate::error::{EngineError, Result};
use crate::scalar::QScalar;

#[derive(Serialize, Deserialize)]
struct VarJson {
    id: String,
    region: Region,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    vars: Vec<VarJson>,
    terms: Vec<TermJson>,
    window: BTreeMap<String, (Option<i64>, Option<i64>)>,
    support: BTreeMap<String, (Option<i64>, Option<i64>)>,
}

fn span_to_json(s: &Span) -> (Option<i64>, Option<i64>) {
    if s.is_empty() {
        // canonical empty encoding
        return (Some(1), Some(0));
    }
    (s.lo.finite(), s.hi.finite())
}

fn span_from_json(lo: Option<i64>, hi: Option<i64>) -> Span {
    Span {
        lo: lo.map(XInt::Fin).unwrap_or(XInt::NegInf),
        hi: hi.map(XInt::Fin).unwrap_or(XInt::PosInf),
    }
}

pub fn series_to_json(s: &QSeries) -> serde_json::Value {
    let j = SeriesJson {
        vars: s
            .vars()
            .iter()
            .map(|v| VarJson {
                id: v.id.clone(),
                region: v.region,
            })
            .collect(),
        terms: s
            .terms()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                coeff: c.to_string(),
            })
            .collect(),
        window: s
            .vars()
            .iter()
            .zip(s.window())
            .map(|(v, w)| (v.id.clone(), span_to_json(w)))
            .collect(),
        support: s
            .vars()
            .iter()
            .zip(s.support())
            .map(|(v, w)| (v.id.clone(), span_to_json(w)))
            .collect(),
    };
    serde_json::to_value(j).expect("series serializes")
}

pub fn series_from_json(v: &serde_json::Value) -> Result<QSeries> {
    let j: SeriesJson = serde_json::from_value(v.clone())
        .map_err(|e| EngineError::Parse(format!("series json: {e}")))?;
    let vars: Vec<VarSpec> = j
        .vars
        .iter()
        .map(|v| VarSpec::new(&v.id, v.region))
        .collect();
    let lookup = |m: &BTreeMap<String, (Option<i64>, Option<i64>)>| -> Result<Vec<Span>> {
        vars.iter()
            .map(|v| {
                m.get(&v.id)
                    .map(|(lo, hi)| span_from_json(*lo, *hi))
                    .ok_or_else(|| EngineError::Parse(format!("missing span for `{}`", v.id)))
            })
            .collect()
    };
    let window = lookup(&j.window)?;
    let support = lookup(&j.support)?;
    let mut out: QSeries = Series::from_parts(vars, vec![Span::empty(); j.vars.len()], window, []);
    for t in &j.terms {
        let c: QScalar = t.coeff.parse()?;
        out.insert_term(t.exp.clone(), c);
    }
    for (v, sp) in j.vars.iter().zip(support) {
        out.widen_support(&v.id, sp);
    }
    Ok(out)
}

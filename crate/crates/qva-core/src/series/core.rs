//! Windowed sparse Laurent series.
//!
//! A `Series` stores exact coefficients on a per-variable exponent box (the
//! *window*) together with per-variable *support* bounds certifying where
//! coefficients are provably zero. Arithmetic recomputes both: a result
//! window is the region where every contributing pair of input cells was
//! itself known exactly, and products whose per-cell contribution sets
//! cannot be certified finite are rejected instead of silently truncated.

use std::collections::BTreeMap;
use std::fmt;

use super::xint::{Span, XInt};
use crate::error::{EngineError, Result};
use crate::scalar::QScalar;
use crate::vect::{BasisKey, Vect};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    AtZero,
    AtInfinity,
    Bilateral,
}

impl Region {
    fn merge(self, other: Region, var: &str) -> Result<Region> {
        use Region::*;
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (Bilateral, r) | (r, Bilateral) => Ok(r),
            _ => Err(EngineError::RegionMismatch(var.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarSpec {
    pub id: String,
    pub region: Region,
}

impl VarSpec {
    pub fn new(id: &str, region: Region) -> Self {
        VarSpec {
            id: id.to_string(),
            region,
        }
    }

    pub fn at_zero(id: &str) -> Self {
        VarSpec::new(id, Region::AtZero)
    }

    pub fn at_infinity(id: &str) -> Self {
        VarSpec::new(id, Region::AtInfinity)
    }

    pub fn bilateral(id: &str) -> Self {
        VarSpec::new(id, Region::Bilateral)
    }
}

/// Coefficient objects the series layer can carry: the scalar field itself
/// or exact vectors in some module.
pub trait Coeff: Clone + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn neg(&self) -> Self;
    fn scale_q(&self, s: &QScalar) -> Self;
}

impl Coeff for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn neg(&self) -> Self {
        QScalar::neg(self)
    }
    fn scale_q(&self, s: &QScalar) -> Self {
        self.mul(s)
    }
}

impl<B: BasisKey> Coeff for Vect<B> {
    fn zero() -> Self {
        Vect::zero()
    }
    fn is_zero(&self) -> bool {
        Vect::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        Vect::add_assign(self, other);
    }
    fn neg(&self) -> Self {
        Vect::neg(self)
    }
    fn scale_q(&self, s: &QScalar) -> Self {
        self.scale(s)
    }
}

/// Cell report for a failed window check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellWitness {
    pub cell: Vec<(String, i64)>,
    pub value: String,
}

#[derive(Clone)]
pub struct Series<C: Coeff> {
    vars: Vec<VarSpec>,
    support: Vec<Span>,
    window: Vec<Span>,
    terms: BTreeMap<Vec<i64>, C>,
}

pub type QSeries = Series<QScalar>;

impl<C: Coeff> Series<C> {
    /// Zero series: empty support, exact everywhere.
    pub fn zero(vars: Vec<VarSpec>) -> Self {
        let n = vars.len();
        Series {
            vars,
            support: vec![Span::empty(); n],
            window: vec![Span::full(); n],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut s = Series::zero(vec![]);
        if !c.is_zero() {
            s.support = vec![];
            s.terms.insert(vec![], c);
        }
        s
    }

    pub fn from_parts(
        vars: Vec<VarSpec>,
        support: Vec<Span>,
        window: Vec<Span>,
        terms: impl IntoIterator<Item = (Vec<i64>, C)>,
    ) -> Self {
        let mut s = Series {
            vars,
            support,
            window,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            s.insert_term(e, c);
        }
        s
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn support(&self) -> &[Span] {
        &self.support
    }

    pub fn window(&self) -> &[Span] {
        &self.window
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.id == id)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_term(&mut self, exp: Vec<i64>, c: C) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(exp.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        debug_assert!(
            exp.iter()
                .zip(&self.window)
                .all(|(e, w)| w.contains(*e)),
            "term inserted outside window"
        );
        for (e, s) in exp.iter().zip(self.support.iter_mut()) {
            *s = s.hull(&Span::point(*e));
        }
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, exp: &[i64]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// Grow a support claim (structural knowledge beyond stored terms).
    pub fn widen_support(&mut self, id: &str, sp: Span) {
        if let Some(i) = self.index_of(id) {
            self.support[i] = self.support[i].hull(&sp);
        }
    }

    /// Narrow a support claim with externally certified knowledge (for
    /// example a locality certificate guaranteeing that a cleared product
    /// is jointly truncated). Stored terms must already comply.
    pub fn certify_support(&mut self, id: &str, sp: Span) {
        if let Some(i) = self.index_of(id) {
            self.support[i] = self.support[i].intersect(&sp);
            debug_assert!(
                self.terms.keys().all(|e| self.support[i].contains(e[i])),
                "certified support contradicts stored terms of `{id}`"
            );
        }
    }

    /// Multiply by `var^delta`: shift all exponents of one variable.
    pub fn shifted(&self, id: &str, delta: i64) -> Series<C> {
        let i = self.index_of(id).expect("variable present");
        let mut out = self.clone();
        out.support[i] = out.support[i].shift(delta);
        out.window[i] = out.window[i].shift(delta);
        out.terms = out
            .terms
            .into_iter()
            .map(|(mut e, c)| {
                e[i] += delta;
                (e, c)
            })
            .collect();
        out
    }

    /// Exactness region along variable `i`: the window, widened to infinity
    /// on any side where the support already certifies zeros.
    fn effective_window(&self, i: usize) -> Span {
        let w = self.window[i];
        let s = self.support[i];
        if s.is_empty() {
            return Span::full();
        }
        Span {
            lo: if w.lo <= s.lo { XInt::NegInf } else { w.lo },
            hi: if w.hi >= s.hi { XInt::PosInf } else { w.hi },
        }
    }

    pub fn effective_window_of(&self, id: &str) -> Option<Span> {
        self.index_of(id).map(|i| self.effective_window(i))
    }

    /// Extend the variable list (missing variables get exponent zero).
    pub fn with_vars(&self, target: &[VarSpec]) -> Result<Series<C>> {
        let mut mapping = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let j = target
                .iter()
                .position(|t| t.id == v.id)
                .ok_or_else(|| EngineError::RegionMismatch(v.id.clone()))?;
            v.region.merge(target[j].region, &v.id)?;
            mapping.push(j);
        }
        let n = target.len();
        let mut support = vec![Span::point(0); n];
        let mut window = vec![Span::full(); n];
        for (i, &j) in mapping.iter().enumerate() {
            support[j] = self.support[i];
            window[j] = self.window[i];
        }
        let mut out = Series {
            vars: target.to_vec(),
            support,
            window,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; n];
            for (i, &j) in mapping.iter().enumerate() {
                ne[j] = e[i];
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<C2: Coeff>(&self, f: impl Fn(&C) -> C2) -> Series<C2> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Series {
            vars: self.vars.clone(),
            support: self.support.clone(),
            window: self.window.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Series<C> {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale_q(&self, s: &QScalar) -> Series<C> {
        if s.is_zero() {
            let mut z = Series::zero(self.vars.clone());
            z.window = self.window.clone();
            return z;
        }
        self.map_coeffs(|c| c.scale_q(s))
    }

    pub fn add(&self, other: &Series<C>) -> Result<Series<C>> {
        let vars = union_vars(&self.vars, &other.vars)?;
        let a = self.with_vars(&vars)?;
        let b = other.with_vars(&vars)?;
        let n = vars.len();
        let mut support = Vec::with_capacity(n);
        let mut window = Vec::with_capacity(n);
        for i in 0..n {
            support.push(a.support[i].hull(&b.support[i]));
            window.push(a.effective_window(i).intersect(&b.effective_window(i)));
        }
        let mut out = Series {
            vars,
            support: vec![Span::empty(); n],
            window,
            terms: BTreeMap::new(),
        };
        for (e, c) in a.terms.iter().chain(b.terms.iter()) {
            if e.iter().zip(&out.window).all(|(x, w)| w.contains(*x)) {
                out.insert_term(e.clone(), c.clone());
            }
        }
        // support hull is sound even for culled terms
        for i in 0..out.support.len() {
            out.support[i] = out.support[i].hull(&support[i]);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series<C>) -> Result<Series<C>> {
        self.add(&other.neg())
    }

    /// Restrict the window (and cull stored terms) to the given box.
    pub fn restrict(&self, req: &[(String, Span)]) -> Series<C> {
        let mut out = self.clone();
        for (id, sp) in req {
            if let Some(i) = out.index_of(id) {
                out.window[i] = out.window[i].intersect(sp);
            }
        }
        out.terms
            .retain(|e, _| e.iter().zip(&out.window).all(|(x, w)| w.contains(*x)));
        out
    }

    /// The coefficient of `var^k` as a series in the remaining variables.
    /// Requires exactness at exponent `k`.
    pub fn coeff_of(&self, var: &str, k: i64) -> Result<Series<C>> {
        let i = self
            .index_of(var)
            .ok_or_else(|| EngineError::InvalidParameter(format!("no variable `{var}`")))?;
        if !self.effective_window(i).contains(k) {
            return Err(EngineError::WindowTooNarrow(format!(
                "coefficient of {var}^{k} not exact (window {:?}, support {:?})",
                self.window[i], self.support[i]
            )));
        }
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut support = self.support.clone();
        support.remove(i);
        let mut window = self.window.clone();
        window.remove(i);
        let mut out = Series {
            vars,
            support: support.iter().map(|_| Span::empty()).collect(),
            window,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut ne = e.clone();
                ne.remove(i);
                out.insert_term(ne, c.clone());
            }
        }
        Ok(out)
    }

    /// Formal residue: the coefficient of `var^{-1}`.
    pub fn residue(&self, var: &str) -> Result<Series<C>> {
        self.coeff_of(var, -1)
    }

    /// Check that all coefficients in the box vanish. The box must be
    /// covered by the exactness window of every listed variable.
    pub fn vanishes_on(&self, req: &[(String, Span)]) -> Result<Option<CellWitness>>
    where
        C: fmt::Display,
    {
        for (id, sp) in req {
            let i = self
                .index_of(id)
                .ok_or_else(|| EngineError::InvalidParameter(format!("no variable `{id}`")))?;
            let eff = self.effective_window(i);
            // Outside the support the check is vacuous, so it is enough to
            // cover the requested box intersected with the support.
            let need = sp.intersect(&self.support[i]);
            if !eff.contains_span(&need) {
                return Err(EngineError::WindowTooNarrow(format!(
                    "window {:?} of `{id}` does not cover requested {:?}",
                    self.window[i], sp
                )));
            }
        }
        for (e, c) in &self.terms {
            let inside = req.iter().all(|(id, sp)| {
                self.index_of(id)
                    .map(|i| sp.contains(e[i]))
                    .unwrap_or(true)
            });
            if inside {
                return Ok(Some(CellWitness {
                    cell: self
                        .vars
                        .iter()
                        .zip(e)
                        .map(|(v, x)| (v.id.clone(), *x))
                        .collect(),
                    value: format!("{c}"),
                }));
            }
        }
        Ok(None)
    }

    /// Substitute `from := base + shift` by the finite-window Taylor rule.
    /// `shift` must be a fresh variable, tagged at zero, with window
    /// `[0, shift_hi]`. Negative `from`-exponents expand into infinitely
    /// many shift powers, truncated exactly by `shift_hi`.
    pub fn subst_shift(
        &self,
        from: &str,
        base: &str,
        shift: &str,
        shift_hi: i64,
    ) -> Result<Series<C>> {
        let i_from = self
            .index_of(from)
            .ok_or_else(|| EngineError::InvalidParameter(format!("no variable `{from}`")))?;
        if self.index_of(shift).is_some() || shift == base || shift == from {
            return Err(EngineError::InvalidParameter(format!(
                "shift variable `{shift}` must be fresh"
            )));
        }
        if base == from {
            return Err(EngineError::InvalidParameter(
                "base must differ from substituted variable".to_string(),
            ));
        }
        let from_region = self.vars[i_from].region;

        let mut vars: Vec<VarSpec> = self
            .vars
            .iter()
            .filter(|v| v.id != from)
            .cloned()
            .collect();
        let base_new = !vars.iter().any(|v| v.id == base);
        if base_new {
            vars.push(VarSpec::new(base, from_region));
        }
        vars.push(VarSpec::new(shift, Region::AtZero));
        let n = vars.len();
        let i_base_out = vars.iter().position(|v| v.id == base).unwrap();
        let i_shift_out = n - 1;

        let supp_f = self.support[i_from];
        let eff_f = self.effective_window(i_from);
        let (supp_b, eff_b) = if base_new {
            (Span::point(0), Span::full())
        } else {
            let ib = self.index_of(base).unwrap();
            (self.support[ib], self.effective_window(ib))
        };

        // Carry over the untouched variables' support and window.
        let mut support = vec![Span::empty(); n];
        let mut window = vec![Span::full(); n];
        for (i, v) in self.vars.iter().enumerate() {
            if i == i_from || v.id == base {
                continue;
            }
            let j = vars.iter().position(|t| t.id == v.id).unwrap();
            support[j] = self.support[i];
            window[j] = self.window[i];
        }
        if supp_f.is_empty() {
            return Ok(Series {
                vars,
                support,
                window,
                terms: BTreeMap::new(),
            });
        }

        // True support of the substituted object. A negative from-exponent
        // contributes base exponents unboundedly far down and every shift
        // power; a non-negative one contributes base exponents in
        // [supp_b.lo, supp_b.hi + e_f] and shift powers up to e_f.
        let neg_from = supp_f.lo < XInt::Fin(0);
        support[i_base_out] = Span {
            lo: if neg_from { XInt::NegInf } else { supp_b.lo },
            hi: supp_b.hi.add(supp_f.hi),
        };
        support[i_shift_out] = Span {
            lo: XInt::Fin(0),
            hi: if neg_from { XInt::PosInf } else { supp_f.hi },
        };

        // Exactness box for the base variable, valid for every shift
        // exponent in [0, shift_hi]: a cell (g, i) receives contributions
        // from input cells (e_f, e_b = g - e_f + i), so the constraint from
        // each unbounded input window side is worst at i = 0 (lower) or
        // i = shift_hi (upper).
        let mut lo = XInt::NegInf;
        let mut hi = XInt::PosInf;
        if supp_f.lo < eff_f.lo {
            lo = lo.max(eff_f.lo.add(supp_b.hi));
        }
        if supp_b.lo < eff_b.lo {
            lo = lo.max(eff_b.lo.add(supp_f.hi));
        }
        if supp_f.hi > eff_f.hi {
            hi = hi.min(eff_f.hi.add(supp_b.lo).add(XInt::Fin(-shift_hi)));
        }
        if supp_b.hi > eff_b.hi {
            hi = hi.min(eff_b.hi.add(supp_f.lo).add(XInt::Fin(-shift_hi)));
        }
        window[i_base_out] = window[i_base_out].intersect(&Span { lo, hi });
        window[i_shift_out] = Span::fin(0, shift_hi);

        let mut out = Series {
            vars,
            support,
            window,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let ef = e[i_from];
            let i_max = if ef >= 0 { ef.min(shift_hi) } else { shift_hi };
            for i in 0..=i_max {
                let coef = crate::scalar::Rat::binomial(ef, i as u64);
                if coef.is_zero() {
                    continue;
                }
                let mut ne = vec![0i64; n];
                for (k, v) in self.vars.iter().enumerate() {
                    if k == i_from {
                        continue;
                    }
                    let j = out.vars.iter().position(|t| t.id == v.id).unwrap();
                    ne[j] = e[k];
                }
                ne[i_base_out] += ef - i;
                ne[i_shift_out] = i;
                if ne.iter().zip(&out.window).all(|(x, w)| w.contains(*x)) {
                    out.insert_term(ne, c.scale_q(&QScalar::from_rat(coef)));
                }
            }
        }
        // insert_term may have shrunk nothing, but it only hulls; restore
        // the structural claims computed above.
        Ok(out)
    }
}

pub(crate) fn union_vars(a: &[VarSpec], b: &[VarSpec]) -> Result<Vec<VarSpec>> {
    let mut out: Vec<VarSpec> = a.to_vec();
    for v in b {
        if let Some(existing) = out.iter_mut().find(|t| t.id == v.id) {
            existing.region = existing.region.merge(v.region, &v.id)?;
        } else {
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// Shared product kernel: support/window bookkeeping plus sparse
/// convolution. `combine` multiplies coefficients.
fn mul_impl<CA: Coeff, CB: Coeff, CO: Coeff>(
    a: &Series<CA>,
    b: &Series<CB>,
    combine: impl Fn(&CA, &CB) -> CO,
) -> Result<Series<CO>> {
    let vars = union_vars(&a.vars, &b.vars)?;
    let a = a.with_vars(&vars)?;
    let b = b.with_vars(&vars)?;
    let n = vars.len();
    let mut support = Vec::with_capacity(n);
    let mut window = Vec::with_capacity(n);
    for i in 0..n {
        let sa = a.support[i];
        let sb = b.support[i];
        if sa.is_empty() || sb.is_empty() {
            support.push(Span::empty());
            window.push(Span::full());
            continue;
        }
        let splits_finite = (sa.lo.is_finite() || sb.hi.is_finite())
            && (sa.hi.is_finite() || sb.lo.is_finite());
        if !splits_finite {
            return Err(EngineError::DivergentProduct(vars[i].id.clone()));
        }
        support.push(sa.add(&sb));
        let ea = a.effective_window(i);
        let eb = b.effective_window(i);
        let mut lo = XInt::NegInf;
        let mut hi = XInt::PosInf;
        if sa.lo < ea.lo {
            lo = lo.max(ea.lo.add(sb.hi));
        }
        if sb.lo < eb.lo {
            lo = lo.max(eb.lo.add(sa.hi));
        }
        if sa.hi > ea.hi {
            hi = hi.min(ea.hi.add(sb.lo));
        }
        if sb.hi > eb.hi {
            hi = hi.min(eb.hi.add(sa.lo));
        }
        window.push(Span { lo, hi });
    }
    let mut out = Series {
        vars,
        support: vec![Span::empty(); n],
        window,
        terms: BTreeMap::new(),
    };
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().zip(&out.window).all(|(x, w)| w.contains(*x)) {
                let c = combine(ca, cb);
                if !c.is_zero() {
                    out.insert_term(e, c);
                }
            }
        }
    }
    for i in 0..n {
        out.support[i] = out.support[i].hull(&support[i]);
    }
    Ok(out)
}

impl Series<QScalar> {
    pub fn mul(&self, other: &Series<QScalar>) -> Result<Series<QScalar>> {
        mul_impl(self, other, |a, b| a.mul(b))
    }

    /// Multiply a scalar series into a module-valued series.
    pub fn mul_module<B: BasisKey>(&self, other: &Series<Vect<B>>) -> Result<Series<Vect<B>>> {
        mul_impl(self, other, |a: &QScalar, b: &Vect<B>| b.scale(a))
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Series vars={:?} support={:?} window={:?}",
            self.vars.iter().map(|v| &v.id).collect::<Vec<_>>(),
            self.support,
            self.window
        )?;
        for (e, c) in &self.terms {
            writeln!(f, "  {e:?}: {c:?}")?;
        }
        Ok(())
    }
}

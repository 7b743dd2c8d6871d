//! The intertwining operator `Phi(t)`, defined directly by its mode
//! commutation recursion
//!
//!   Phi(t) e(m) = (t e(m) - e(m+1)) Phi(t)
//!   Phi(t) f(m) = (t f(m) - f(m+1)) Phi(t)
//!   Phi(t) h(m) = (t^2 h(m) - 2t h(m+1) + h(m+2)) Phi(t)
//!   Phi(t) |0>  = |0>
//!
//! so `Phi(t)v` is a polynomial in `t` with state coefficients. Per-monomial
//! images are memoized in a write-once table; concurrent duplicate
//! computation of the same key is idempotent.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::scalar::{QScalar, Rat};
use crate::superfock::{apply_mode, Gen, Mode, State, SuperMonomial};
use crate::vect::Vect;

/// Polynomial in `t` with state coefficients; index = degree.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiImage {
    coeffs: Vec<State>,
}

impl PhiImage {
    pub fn zero() -> Self {
        PhiImage { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<State>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PhiImage { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, j: usize) -> State {
        self.coeffs.get(j).cloned().unwrap_or_else(Vect::zero)
    }

    pub fn coeffs(&self) -> &[State] {
        &self.coeffs
    }

    pub fn add_scaled(&mut self, other: &PhiImage, s: &QScalar) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Vect::zero());
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            self.coeffs[j].add_scaled(c, s);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Evaluate at a scalar point.
    pub fn eval(&self, point: &QScalar) -> State {
        let mut acc = Vect::zero();
        let mut p = QScalar::one();
        for c in &self.coeffs {
            acc.add_scaled(c, &p);
            p = p.mul(point);
        }
        acc
    }
}

#[derive(Default)]
pub struct PhiCtx {
    memo: RwLock<HashMap<SuperMonomial, Arc<Vec<State>>>>,
}

impl PhiCtx {
    pub fn new() -> Self {
        PhiCtx::default()
    }

    pub fn apply(&self, v: &State) -> PhiImage {
        let mut out = PhiImage::zero();
        for (m, c) in v.iter() {
            let img = self.monomial_image(m);
            out.add_scaled(&PhiImage { coeffs: (*img).clone() }, c);
        }
        out
    }

    fn monomial_image(&self, m: &SuperMonomial) -> Arc<Vec<State>> {
        if let Some(hit) = self.memo.read().unwrap().get(m) {
            return hit.clone();
        }
        let computed = Arc::new(self.compute(m));
        let mut w = self.memo.write().unwrap();
        w.entry(m.clone()).or_insert(computed).clone()
    }

    fn compute(&self, m: &SuperMonomial) -> Vec<State> {
        if m.is_vacuum() {
            return vec![Vect::single(SuperMonomial::vacuum())];
        }
        // strip the leftmost mode; the remainder is still normal ordered
        let (head, rest) = split_leftmost(m);
        let inner = self.monomial_image(&rest);
        let deg = inner.len() - 1;
        let (span, rules): (usize, Vec<(usize, i64, i64)>) = match head.gen {
            // (t-degree bump, mode shift, integer factor)
            Gen::E | Gen::F => (1, vec![(1, 0, 1), (0, 1, -1)]),
            Gen::H => (2, vec![(2, 0, 1), (1, 1, -2), (0, 2, 1)]),
        };
        let mut out = vec![Vect::zero(); deg + span + 1];
        for (j, c) in inner.iter().enumerate() {
            for (bump, shift, factor) in &rules {
                let applied = apply_mode(Mode::new(head.gen, head.n + shift), c);
                out[j + bump].add_scaled(&applied, &QScalar::from_i64(*factor));
            }
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// Coefficients of `x^k` in `Phi(point + x) v`.
    pub fn apply_shifted(&self, v: &State, point: &QScalar) -> Vec<State> {
        let img = self.apply(v);
        let deg = match img.degree() {
            None => return vec![],
            Some(d) => d,
        };
        let mut out = vec![Vect::zero(); deg + 1];
        for (j, c) in img.coeffs().iter().enumerate() {
            for (k, slot) in out.iter_mut().enumerate().take(j + 1) {
                let b = QScalar::from_rat(Rat::binomial(j as i64, k as u64));
                let p = point.pow((j - k) as i64).expect("nonneg power");
                slot.add_scaled(c, &b.mul(&p));
            }
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// The i-th `t`-derivative of `Phi(t) v` evaluated at `point`.
    pub fn derivative_at(&self, v: &State, i: usize, point: &QScalar) -> State {
        let img = self.apply(v);
        let mut acc = Vect::zero();
        for (j, c) in img.coeffs().iter().enumerate() {
            if j < i {
                continue;
            }
            let fall = QScalar::from_rat(Rat::falling(j as i64, i as u64));
            let p = point.pow((j - i) as i64).expect("nonneg power");
            acc.add_scaled(c, &fall.mul(&p));
        }
        acc
    }
}

// ---------------------------------------------------------------------
// lemma-level verifiers
// ---------------------------------------------------------------------

/// Phi(x) Phi(t) v = Phi(t) Phi(x) v as two-variable polynomials.
pub fn commutativity_check(ctx: &PhiCtx, v: &State) -> Option<String> {
    let first = ctx.apply(v);
    let mut grid: Vec<Vec<State>> = Vec::new();
    for c in first.coeffs() {
        let img = ctx.apply(c);
        grid.push(img.coeffs().to_vec());
    }
    let rows = grid.len();
    let cols = grid.iter().map(|r| r.len()).max().unwrap_or(0);
    for a in 0..rows.max(cols) {
        for b in 0..rows.max(cols) {
            let get = |i: usize, j: usize| -> State {
                grid.get(i)
                    .and_then(|r| r.get(j))
                    .cloned()
                    .unwrap_or_else(Vect::zero)
            };
            if get(a, b) != get(b, a) {
                return Some(format!("asymmetry at t-degrees ({a},{b})"));
            }
        }
    }
    None
}

/// [D, Phi(t)] v = d/dt Phi(t) v.
pub fn translation_check(ctx: &PhiCtx, v: &State) -> Option<String> {
    use crate::superfock::d_operator;
    let img = ctx.apply(v);
    let dv_img = ctx.apply(&d_operator(v));
    let deg = img
        .degree()
        .unwrap_or(0)
        .max(dv_img.degree().unwrap_or(0))
        + 1;
    for j in 0..=deg {
        // coefficient of t^j in D Phi(t) v - Phi(t) D v
        let mut lhs = d_operator(&img.coeff(j));
        lhs.add_scaled(&dv_img.coeff(j), &QScalar::from_i64(-1));
        // coefficient of t^j in d/dt Phi(t) v is (j+1) c_{j+1}
        let rhs = img
            .coeff(j + 1)
            .scale(&QScalar::from_i64(j as i64 + 1));
        if lhs != rhs {
            return Some(format!("translation defect at t-degree {j}"));
        }
    }
    None
}

/// Phi(t) u(m) v agrees with the commutation rule applied to Phi(t) v, for
/// every mode index in the range: the two evaluation orders (normal order
/// first versus recursion first) must land on the same polynomial.
pub fn field_commutation_check(
    ctx: &PhiCtx,
    gen: Gen,
    v: &State,
    mode_lo: i64,
    mode_hi: i64,
) -> Option<String> {
    let base = ctx.apply(v);
    for m in mode_lo..=mode_hi {
        let lhs = ctx.apply(&apply_mode(Mode::new(gen, m), v));
        let mut rhs = PhiImage::zero();
        let rules: Vec<(usize, i64, i64)> = match gen {
            Gen::E | Gen::F => vec![(1, 0, 1), (0, 1, -1)],
            Gen::H => vec![(2, 0, 1), (1, 1, -2), (0, 2, 1)],
        };
        let deg = base.degree().map(|d| d as i64).unwrap_or(-1);
        let mut coeffs: Vec<State> = vec![Vect::zero(); (deg + 3) as usize];
        for j in 0..=deg.max(0) as usize {
            for (bump, shift, factor) in &rules {
                let applied = apply_mode(Mode::new(gen, m + shift), &base.coeff(j));
                coeffs[j + bump].add_scaled(&applied, &QScalar::from_i64(*factor));
            }
        }
        rhs.add_scaled(
            &PhiImage::from_coeffs(coeffs),
            &QScalar::one(),
        );
        if lhs != rhs {
            return Some(format!("{gen:?}({m}) commutation defect"));
        }
    }
    None
}

/// Phi(t) w = t^(top) w modulo lower-weight terms, where the top degree is
/// the mode count weighted twice for the even generator.
pub fn leading_coefficient_check(ctx: &PhiCtx, w: &SuperMonomial) -> Option<String> {
    let top = (w.e.len() + w.f.len() + 2 * w.h.len()) as usize;
    let img = ctx.apply(&Vect::single(w.clone()));
    let weight = w.weight();
    for (j, c) in img.coeffs().iter().enumerate() {
        let mut rem = c.clone();
        if j == top {
            rem.add_scaled(&Vect::single(w.clone()), &QScalar::from_i64(-1));
        }
        for (mono, _) in rem.iter() {
            if mono.weight() >= weight {
                return Some(format!(
                    "degree {j} carries a weight-{} term",
                    mono.weight()
                ));
            }
        }
    }
    None
}

fn split_leftmost(m: &SuperMonomial) -> (Mode, SuperMonomial) {
    let mut rest = m.clone();
    if !m.e.is_empty() {
        let n = rest.e.remove(0);
        (Mode::new(Gen::E, n), rest)
    } else if !m.f.is_empty() {
        let n = rest.f.remove(0);
        (Mode::new(Gen::F, n), rest)
    } else {
        let n = rest.h.remove(0);
        (Mode::new(Gen::H, n), rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superfock::vacuum;

    fn st(s: &str) -> State {
        Vect::single(s.parse().unwrap())
    }

    #[test]
    fn phi_fixes_vacuum() {
        let ctx = PhiCtx::new();
        let img = ctx.apply(&vacuum());
        assert_eq!(img.degree(), Some(0));
        assert_eq!(img.coeff(0), vacuum());
    }

    #[test]
    fn phi_on_generators() {
        let ctx = PhiCtx::new();
        // Phi(t) e = e (x) t
        let img = ctx.apply(&st("e(-1) |0>"));
        assert_eq!(img.degree(), Some(1));
        assert!(img.coeff(0).is_zero());
        assert_eq!(img.coeff(1), st("e(-1) |0>"));
        // Phi(t) h = h (x) t^2
        let img = ctx.apply(&st("h(-1) |0>"));
        assert_eq!(img.degree(), Some(2));
        assert!(img.coeff(0).is_zero());
        assert!(img.coeff(1).is_zero());
        assert_eq!(img.coeff(2), st("h(-1) |0>"));
    }

    #[test]
    fn derivative_examples() {
        let ctx = PhiCtx::new();
        let q = QScalar::q();
        assert!(ctx.derivative_at(&vacuum(), 1, &q).is_zero());
        let e = st("e(-1) |0>");
        assert_eq!(ctx.derivative_at(&e, 0, &q), e.scale(&q));
        assert_eq!(ctx.derivative_at(&e, 1, &q), e);
        assert!(ctx.derivative_at(&e, 2, &q).is_zero());
    }

    #[test]
    fn shifted_expansion_matches_derivatives() {
        // coefficients of Phi(point+x)v are Phi^(k)(point)v / k!
        let ctx = PhiCtx::new();
        let v = st("e(-2)e(-1) f(-1) h(-1) |0>");
        let point = QScalar::q();
        let shifted = ctx.apply_shifted(&v, &point);
        for (k, c) in shifted.iter().enumerate() {
            let der = ctx.derivative_at(&v, k, &point);
            let fact = QScalar::from_rat(Rat::factorial(k as u64));
            assert_eq!(c.scale(&fact), der, "degree {k}");
        }
    }
}

#[cfg(test)]
mod lemma_tests {
    use super::*;
    use crate::superfock::weight_basis;

    #[test]
    fn lemma_properties_on_low_weights() {
        let ctx = PhiCtx::new();
        for d in 0..=3 {
            for m in weight_basis(d) {
                let v = Vect::single(m.clone());
                assert!(commutativity_check(&ctx, &v).is_none());
                assert!(translation_check(&ctx, &v).is_none());
                assert!(leading_coefficient_check(&ctx, &m).is_none());
                for g in [Gen::E, Gen::F, Gen::H] {
                    assert!(field_commutation_check(&ctx, g, &v, -4, 4).is_none());
                }
            }
        }
    }
}

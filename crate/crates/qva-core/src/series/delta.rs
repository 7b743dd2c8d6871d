//! Formal delta distributions with affine arguments and derivatives.
//!
//! A term represents  coeff * (1/j!) (d/dt)^j [ s^{-1} delta(g(t)/s) ]
//! where `s` is the source variable (carrying the bilateral powers), `t`
//! the target variable, and `g(t) = scale*t + shift` an affine argument.
//! Deltas stay symbolic until a window check materializes them; products
//! against series that are polynomial in the source variable rewrite via
//! the substitution rule instead.

use super::core::{Coeff, QSeries, Region, Series, VarSpec};
use super::iota::{iota_expand, polynomial_series};
use super::mpoly::{qbinom, MPoly, RatFn};
use super::xint::Span;
use crate::error::{EngineError, Result};
use crate::scalar::QScalar;
use crate::vect::{BasisKey, Vect};

/// Affine map `x -> scale*x + shift` over Q(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineQ {
    pub scale: QScalar,
    pub shift: QScalar,
}

impl AffineQ {
    pub fn new(scale: QScalar, shift: QScalar) -> Result<Self> {
        if scale.is_zero() {
            return Err(EngineError::InvalidParameter(
                "affine map needs nonzero scale".to_string(),
            ));
        }
        Ok(AffineQ { scale, shift })
    }

    pub fn identity() -> Self {
        AffineQ {
            scale: QScalar::one(),
            shift: QScalar::zero(),
        }
    }

    pub fn shift_by(shift: QScalar) -> Self {
        AffineQ {
            scale: QScalar::one(),
            shift,
        }
    }

    pub fn shift_by_int(n: i64) -> Self {
        AffineQ::shift_by(QScalar::from_i64(n))
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }

    /// Composition: x -> self(other(x)).
    pub fn compose(&self, other: &AffineQ) -> AffineQ {
        AffineQ {
            scale: self.scale.mul(&other.scale),
            shift: self.scale.mul(&other.shift).add(&self.shift),
        }
    }

    pub fn inverse(&self) -> AffineQ {
        let inv = self.scale.recip().expect("nonzero scale");
        AffineQ {
            scale: inv.clone(),
            shift: inv.mul(&self.shift).neg(),
        }
    }

    pub fn apply(&self, x: &QScalar) -> QScalar {
        self.scale.mul(x).add(&self.shift)
    }

    /// The image `scale*t + shift` as a polynomial in the single variable `t`.
    pub fn as_mpoly(&self, t: &str) -> MPoly {
        MPoly::var(&[t], t)
            .scale(&self.scale)
            .add(&MPoly::constant(&[t], self.shift.clone()))
    }
}

#[derive(Clone, Debug)]
pub struct DeltaTerm<C: Coeff> {
    pub source: String,
    pub target: String,
    pub target_region: Region,
    pub map: AffineQ,
    pub order: usize,
    pub coeff: Series<C>,
}

/// Multiplication of a coefficient series by a scalar series, dispatched on
/// the coefficient kind.
pub trait ScalarMul: Coeff + Sized {
    fn mul_scalar_series(scalars: &QSeries, values: &Series<Self>) -> Result<Series<Self>>;
}

impl ScalarMul for QScalar {
    fn mul_scalar_series(scalars: &QSeries, values: &QSeries) -> Result<QSeries> {
        scalars.mul(values)
    }
}

impl<B: BasisKey> ScalarMul for Vect<B> {
    fn mul_scalar_series(scalars: &QSeries, values: &Series<Vect<B>>) -> Result<Series<Vect<B>>> {
        scalars.mul_module(values)
    }
}

impl<C: ScalarMul> DeltaTerm<C> {
    pub fn new(
        source: &str,
        target: &str,
        target_region: Region,
        map: AffineQ,
        order: usize,
        coeff: Series<C>,
    ) -> Self {
        DeltaTerm {
            source: source.to_string(),
            target: target.to_string(),
            target_region,
            map,
            order,
            coeff,
        }
    }

    /// Absorb a series that is polynomial (support bounded on both sides)
    /// in the source variable: the substitution rule rewrites source powers
    /// into target powers and lower-order derivative terms, so the result
    /// carries no source dependence outside the delta symbol.
    ///
    /// Uses  s^e * (1/j!) d^j delta  =  sum_i C(e, j-i) scale^(j-i)
    /// g(t)^(e-j+i) * (1/i!) d^i delta,  where the binomial kills every
    /// negative power of g.
    pub fn apply_series(&self, a: &QSeries, target_win: Span) -> Result<Vec<DeltaTerm<C>>> {
        let is = a.index_of(&self.source).ok_or_else(|| {
            EngineError::InvalidParameter(format!("series lacks `{}`", self.source))
        })?;
        let sp = a.support()[is];
        if sp.is_empty() {
            return Ok(vec![]);
        }
        let (lo, hi) = match (sp.lo.finite(), sp.hi.finite()) {
            (Some(l), Some(h)) => (l, h),
            _ => {
                return Err(EngineError::DivergentSubstitution(format!(
                    "series unbounded in `{}`",
                    self.source
                )))
            }
        };
        let j = self.order;
        let mut acc: Vec<Option<Series<C>>> = vec![None; j + 1];
        for e in lo..=hi {
            let slice = a.coeff_of(&self.source, e)?;
            if slice.is_zero() {
                continue;
            }
            for i in 0..=j {
                let b = qbinom(e, (j - i) as u64);
                if b.is_zero() {
                    continue;
                }
                let gexp = e - (j - i) as i64;
                let tspec = VarSpec::new(&self.target, self.target_region);
                let factor = self
                    .map
                    .scale
                    .pow((j - i) as i64)
                    .expect("nonzero scale")
                    .mul(&b);
                let gp_series = if gexp >= 0 {
                    polynomial_series(&self.map.as_mpoly(&self.target).pow(gexp as u32), &[tspec])
                } else {
                    let f = RatFn::new(
                        MPoly::constant(&[&self.target], QScalar::one()),
                        self.map.as_mpoly(&self.target).pow((-gexp) as u32),
                    )?;
                    iota_expand(&f, &[tspec], &[target_win])?
                };
                let gp_series = gp_series.scale_q(&factor);
                let scaled = gp_series.mul(&slice)?;
                let term = C::mul_scalar_series(&scaled, &self.coeff)?;
                acc[i] = Some(match acc[i].take() {
                    None => term,
                    Some(prev) => prev.add(&term)?,
                });
            }
        }
        let mut out = Vec::new();
        for (i, t) in acc.into_iter().enumerate() {
            if let Some(coeff) = t {
                if !coeff.is_zero() {
                    out.push(DeltaTerm {
                        source: self.source.clone(),
                        target: self.target.clone(),
                        target_region: self.target_region,
                        map: self.map.clone(),
                        order: i,
                        coeff,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Materialize onto a window:  (1/j!) d^j delta  expands as
    /// sum_k C(k, j) scale^j g(t)^(k-j) s^(-k-1),  with negative powers of
    /// g expanded at the target region.
    pub fn materialize(&self, source_win: Span, target_win: Span) -> Result<Series<C>> {
        let (slo, shi) = match (source_win.lo.finite(), source_win.hi.finite()) {
            (Some(l), Some(h)) => (l, h),
            _ => {
                return Err(EngineError::InvalidParameter(
                    "materialization needs a finite source window".to_string(),
                ))
            }
        };
        let tspec = VarSpec::new(&self.target, self.target_region);
        let sspec = VarSpec::bilateral(&self.source);
        let mut total: Option<Series<C>> = None;
        // source exponent -k-1 in [slo, shi]  <=>  k in [-shi-1, -slo-1]
        for k in (-shi - 1)..=(-slo - 1) {
            let b = qbinom(k, self.order as u64);
            if b.is_zero() {
                continue;
            }
            let factor = b.mul(&self.map.scale.pow(self.order as i64).expect("nonzero"));
            let gexp = k - self.order as i64;
            let gp_series = if gexp >= 0 {
                polynomial_series(&self.map.as_mpoly(&self.target).pow(gexp as u32), &[tspec.clone()])
            } else {
                let f = RatFn::new(
                    MPoly::constant(&[&self.target], QScalar::one()),
                    self.map.as_mpoly(&self.target).pow((-gexp) as u32),
                )?;
                iota_expand(&f, &[tspec.clone()], &[target_win])?
            };
            let slice = C::mul_scalar_series(&gp_series.scale_q(&factor), &self.coeff)?;
            // lift with the source exponent
            let mut vars = slice.vars().to_vec();
            vars.push(sspec.clone());
            let mut lifted: Series<C> = Series::from_parts(
                vars,
                slice
                    .support()
                    .iter()
                    .copied()
                    .chain([Span::point(-k - 1)])
                    .collect(),
                slice
                    .window()
                    .iter()
                    .copied()
                    .chain([source_win])
                    .collect(),
                [],
            );
            for (e, c) in slice.terms() {
                let mut exp = e.clone();
                exp.push(-k - 1);
                lifted.insert_term(exp, c.clone());
            }
            total = Some(match total {
                None => lifted,
                Some(prev) => prev.add(&lifted)?,
            });
        }
        let out = match total {
            Some(t) => t,
            None => {
                let vars = vec![tspec, sspec];
                Series::zero(vars)
            }
        };
        // Exactness in the source direction holds only on the materialized
        // range; a delta genuinely carries every source power.
        let out = out.restrict(&[(self.source.clone(), source_win)]);
        let mut out = out;
        out.widen_support(&self.source, Span::full());
        Ok(out)
    }
}

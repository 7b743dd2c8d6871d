//! n-th products read directly from a delta decomposition of the bracket.
//!
//! When `-[a(x1), b(x2)]` decomposes as a finite sum of fields times
//! derivatives of deltas at affine arguments `g_i(x2)`, the pair is
//! quasi-local with certificate `prod_i (x1 - g_i(x2))^(r+1)` and the
//! non-negative products are exactly the coefficients sitting at the
//! identity argument: `a(x)_n b(x) = Psi_{1,n}(x)`, zero above the top
//! derivative order. No window computation is involved, which is what
//! makes this an independent route against the substitution product.

use std::collections::BTreeMap;

use super::{Field, ModuleKind};
use crate::error::{EngineError, Result};
use crate::series::AffineQ;
use crate::vect::BasisKey;

#[derive(Clone)]
pub struct DecompositionTerm<B: BasisKey> {
    /// Affine argument of the delta, as a map applied to the second
    /// variable.
    pub map: AffineQ,
    /// Derivative order of the delta factor (with its 1/j! normalization).
    pub order: usize,
    /// The field coefficient `Psi_{i,j}(x2)`.
    pub field: Field<B>,
}

#[derive(Clone)]
pub struct BracketDecomposition<B: BasisKey> {
    pub kind: ModuleKind,
    pub terms: Vec<DecompositionTerm<B>>,
}

impl<B: BasisKey + 'static> BracketDecomposition<B> {
    /// Validates the decomposition: arguments must be pairwise distinct
    /// affine maps and, when present at all, the identity argument must be
    /// listed first.
    pub fn new(kind: ModuleKind, terms: Vec<DecompositionTerm<B>>) -> Result<Self> {
        let mut seen: Vec<(&AffineQ, usize)> = Vec::new();
        for t in &terms {
            if let Some((_, _)) = seen
                .iter()
                .find(|(m, o)| *m == &t.map && *o == t.order)
            {
                return Err(EngineError::MalformedDecomposition(format!(
                    "repeated argument {:?} at order {}",
                    t.map, t.order
                )));
            }
            seen.push((&t.map, t.order));
        }
        if let Some(first_id) = terms.iter().position(|t| t.map.is_identity()) {
            if terms[..first_id].iter().any(|t| !t.map.is_identity()) {
                return Err(EngineError::MalformedDecomposition(
                    "identity argument must come first".to_string(),
                ));
            }
        }
        Ok(BracketDecomposition { kind, terms })
    }

    /// Top derivative order across all arguments.
    pub fn top_order(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.order).max()
    }
}

/// The map `n -> a(x)_n b(x)` for `0 <= n <= r`; every product above the
/// top order is zero and is not listed.
pub fn bracket_nth_products<B: BasisKey + 'static>(
    d: &BracketDecomposition<B>,
) -> Result<BTreeMap<i64, Field<B>>> {
    let mut out = BTreeMap::new();
    let r = match d.top_order() {
        None => return Ok(out),
        Some(r) => r,
    };
    for n in 0..=r {
        let mut acc: Option<Field<B>> = None;
        for t in &d.terms {
            if t.map.is_identity() && t.order == n {
                acc = Some(match acc {
                    None => t.field.clone(),
                    Some(prev) => prev.add(&t.field),
                });
            }
        }
        out.insert(
            n as i64,
            acc.unwrap_or_else(|| Field::zero_field(d.kind)),
        );
    }
    Ok(out)
}

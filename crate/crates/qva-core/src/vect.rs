//! Exact linear combinations over an ordered basis.
//!
//! Every module the engine touches (super-Fock states, Fock states at
//! infinity, quotient Lie algebras) is a vector space with a canonical
//! basis; `Vect<B>` is the shared sparse-combination container.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::QScalar;

pub trait BasisKey: Clone + Ord + fmt::Debug + Send + Sync {}
impl<T: Clone + Ord + fmt::Debug + Send + Sync> BasisKey for T {}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vect<B: BasisKey> {
    terms: BTreeMap<B, QScalar>,
}

impl<B: BasisKey> Default for Vect<B> {
    fn default() -> Self {
        Vect {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: BasisKey> Vect<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(b: B) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, QScalar::one());
        Vect { terms }
    }

    pub fn term(b: B, c: QScalar) -> Self {
        let mut v = Vect::zero();
        v.add_term(b, &c);
        v
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (B, QScalar)>) -> Self {
        let mut v = Vect::zero();
        for (b, c) in pairs {
            v.add_term(b, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> QScalar {
        self.terms.get(b).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &QScalar)> {
        self.terms.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (B, QScalar)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, b: B, c: &QScalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Vect<B>) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &Vect<B>, s: &QScalar) {
        if s.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), &(c * s));
        }
    }

    pub fn add(&self, other: &Vect<B>) -> Vect<B> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Vect<B>) -> Vect<B> {
        let mut out = self.clone();
        out.add_scaled(other, &QScalar::from_i64(-1));
        out
    }

    pub fn neg(&self) -> Vect<B> {
        self.scale(&QScalar::from_i64(-1))
    }

    pub fn scale(&self, s: &QScalar) -> Vect<B> {
        if s.is_zero() {
            return Vect::zero();
        }
        Vect {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c * s)).collect(),
        }
    }

    /// Apply a basis-level linear map and collect the image.
    pub fn map_terms<B2: BasisKey>(
        &self,
        mut f: impl FnMut(&B, &QScalar) -> Vect<B2>,
    ) -> Vect<B2> {
        let mut out = Vect::zero();
        for (b, c) in &self.terms {
            out.add_assign(&f(b, c));
        }
        out
    }
}

impl<B: BasisKey + fmt::Display> fmt::Display for Vect<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({c})*{b}")?;
            }
        }
        Ok(())
    }
}

impl<B: BasisKey> fmt::Debug for Vect<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vect{:?}", self.terms)
    }
}

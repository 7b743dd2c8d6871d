//! Exact symbolic kernel for checking vertex-algebra-style identities on
//! truncated coefficient windows.
//!
//! Everything is computed over the field Q(q) with exact arithmetic; a
//! verification result always means "every coefficient in the stated
//! exponent window is exactly zero", never an approximation.
//!
//! Layers, bottom up:
//! - [`scalar`]: Q and Q(q) arithmetic with canonical forms.
//! - [`vect`]: sparse linear combinations over an ordered basis.
//! - [`series`]: sparse multivariate Laurent series with expansion-region
//!   tags, directional expansions of rational functions, shift
//!   substitution, residues, and formal delta distributions.
//! - [`superfock`]: the three-generator Lie superalgebra, its loop modes,
//!   and the induced vacuum module with its ordered monomial basis.
//! - [`phi`]: the polynomial intertwiner `Phi(t)` defined by mode
//!   commutation recursions, with memoized application.
//! - [`dy`]: the free-field realization `e/f/h` built from `Phi`, relation
//!   templates for both expansion directions, and the relation, basis-rank
//!   and filtration verifiers.
//! - [`fields`]: the calculus on `Hom(W, W((x^-1)))`: pair products,
//!   locality certificates, the certificate-based n-th product, weak
//!   associativity, the opposite Jacobi identity, and bracket-decomposition
//!   shortcuts.
//! - [`gamma`]: affinization brackets over a group of affine shifts, the
//!   quotient Lie algebra with exact Jacobi checking, and concrete Fock
//!   modules feeding [`fields`].

pub mod error;
pub mod scalar;
pub mod vect;

pub mod series;

pub mod superfock;

pub mod phi;

pub mod dy;

pub mod fields;

pub mod gamma;

pub use error::{EngineError, Result};

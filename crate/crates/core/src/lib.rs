//! Exact computations with finite-dimensional restricted Lie algebras over
//! prime fields F_p.
//!
//! Everything is dense linear algebra over F_p. Since `a^p = a` for every
//! scalar, p-semilinear maps are simply linear maps, so every space of
//! derivations, homomorphisms or cocycles is the solution set of a finite
//! linear system. Conditions that are not linear in the quantified element
//! (the p-map is not additive) are checked element by element, exhaustively
//! when the space is small and on a seeded sample otherwise; see
//! [`check::CheckConfig`].

pub mod algebra;
pub mod check;
pub mod crossed;
pub mod derivation;
pub mod extension;
pub mod error;
pub mod field;
pub mod linalg;
pub mod long_exact;
pub mod module;
pub mod sequence;
pub mod standard;
pub mod twofold;

pub use algebra::{Element, RestrictedLieAlgebra, RestrictedMorphism};
pub use check::{CheckConfig, Mode, Report};
pub use error::{Error, Result};
pub use field::{FpScalar, PrimeField};
pub use linalg::{FpMatrix, QuotientWithSection, Subspace};

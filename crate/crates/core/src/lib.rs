//! Exact computations on finitely presented groups: Fox calculus and Magnus
//! expansions, cup products on degree-1 cohomology, holonomy Lie algebras and
//! their solvable quotients, graded rank tables, mildness checks, nilpotent
//! filtered-formality obstructions and Seifert manifold groups.
//!
//! All arithmetic is exact over the rationals.

pub mod cli;
pub mod exactla;
pub mod fdlie;
pub mod foxmagnus;
pub mod freelie;
pub mod gradedgr;
pub mod holonomy;
pub mod seifert;
pub mod series;
mod sparse;
pub mod words;

pub use num_bigint::BigInt;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

//! Exact verification engine for Prym-Tyurin presentations.
//!
//! Given a finite group `G` acting on a curve with a geometric signature, a
//! subgroup `H` and rational irreducible representations of `G`, the engine
//! computes the correspondence coefficients, exponent, dimension, genus and
//! correspondence matrices of the induced Prym-Tyurin variety, and checks the
//! combinatorial identities that the self-product and dihedral constructions
//! rely on. All arithmetic is exact.

pub mod characters;
pub mod constructions;
pub mod error;
pub mod exact_algebra;
pub mod matrix;
pub mod permgroup;
pub mod pt_engine;

pub use error::{Error, Result};

/// Arbitrary-precision rational number; the scalar type used by the engine.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Cyclotomic field element with arbitrary-precision rational coordinates.
pub type Cyclotomic = exact_algebra::Cyc<Rational>;

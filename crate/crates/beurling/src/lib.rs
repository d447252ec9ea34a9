//! Exact kernels of block Hankel operators with rational and bounded-type
//! symbols, inner-outer factorization of rational matrix functions, and the
//! lattice operations (greatest common inner divisor, least common inner
//! multiple) on shift-invariant subspaces of vector-valued Hardy space.
//!
//! Everything is computed over an exact coefficient field: the Gaussian
//! rationals, extended by a single real quadratic irrationality when an inner
//! factor demands one. Floating point appears only in clearly marked
//! cross-check shadows, never in a result.
//!
//! The main entry points are:
//!
//! * [`hankel::HankelSymbol`] and its
//!   [`kernel_rational`](hankel::HankelSymbol::kernel_rational) method for
//!   kernels of Hankel operators with conjugate-rational symbols,
//! * [`inner::inner_outer`] for the inner-outer factorization of a rational
//!   matrix function of full column rank,
//! * [`nspan::NSpanMatrix`] and [`nspan::kernel_symbolic`] for symbols mixing
//!   rational functions with formal bounded-type atoms,
//! * [`lattice`] for joins, meets, and cyclic-vector tests on the lattice of
//!   shift-invariant subspaces.

pub mod blaschke;
pub mod corpus;
pub mod hankel;
pub mod inner;
pub mod lattice;
pub mod nspan;
pub mod numeric;
pub mod poly;
pub mod polymat;
pub mod ratfun;
pub mod roots;
pub mod scalar;

mod book_doctests;

use thiserror::Error;

/// Errors shared across the crate. Degenerate inputs are rejected, never
/// silently perturbed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A denominator vanishes on the unit circle, so the function is not in
    /// the Nevanlinna class of the disk in the intended way.
    #[error("pole on the unit circle at {0}")]
    PoleOnCircle(String),

    /// A zero or pole sits too close to the unit circle to classify within
    /// the numeric safety margin, or lies exactly on it.
    #[error("zero within the circle safety margin: {0}")]
    CircleDegenerate(String),

    /// An exact result exists but leaves the supported coefficient field
    /// (Gaussian rationals with at most one real quadratic extension).
    #[error("value not representable in the coefficient field: {0}")]
    NotRepresentable(String),

    /// Matrix shapes do not match the operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A function required to be analytic in the disk has an inner pole.
    #[error("not analytic in the disk: {0}")]
    NotAnalytic(String),

    /// A matrix claimed to be inner fails the exact isometry certificate.
    #[error("not inner: {0}")]
    NotInner(String),

    /// The zero function or zero matrix where a nonzero one is required.
    #[error("zero input: {0}")]
    ZeroInput(String),

    /// The operation is defined but not supported for this shape.
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    /// Formal atoms were multiplied together; products of atoms are outside
    /// the tracked algebra.
    #[error("product of formal atoms: {0}")]
    AtomProduct(String),

    /// An internal certificate failed; indicates a bug, surfaced loudly.
    #[error("internal certificate violated: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

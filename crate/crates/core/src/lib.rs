//! Exact two-terminal reliability polynomials of multigraphs, the geometry of
//! their complex roots, and the polynomial dynamics that arise when edges are
//! repeatedly replaced by two-terminal gadgets.
//!
//! The crate is organised in layers:
//!
//! * [`polynomial`]: dense univariate polynomials over arbitrary-precision
//!   rationals, with the coefficient-basis conversions, real-root isolation,
//!   and root-bound machinery the upper layers need.
//! * [`multigraph`]: labeled multigraphs with a marked terminal pair and the
//!   structural operations on them (deletion, contraction, subdivision,
//!   gadget substitution, relevance pruning, canonical keys).
//! * [`reliability`]: the exact reliability engine with series/parallel
//!   reductions plus memoized deletion-contraction, closed families, and the
//!   root-density constructions.
//! * [`rootfinder`]: simultaneous (Aberth) iteration with double-double
//!   Newton polishing, bounds, and region filters.
//! * [`dynamics`]: forward orbits, inverse orbits (backward iteration), and
//!   attractor reports for iterated gadget replacement.
//! * [`stability`]: Hermite-Biehler weak-stability testing and the
//!   cycle-family witness arguments.
//!
//! Everything except the root finder and the dynamics sampler is exact: graph
//! reductions and polynomial algebra run over `BigRational` end to end.

pub mod dynamics;
pub mod multigraph;
pub mod polynomial;
pub mod reliability;
pub mod rootfinder;
pub mod stability;

/// Exact rational scalar used throughout the crate.
pub type Q = num_rational::BigRational;

/// Double-precision complex scalar used by the numeric layers.
pub type C64 = num_complex::Complex64;

pub(crate) fn q_from_i64(n: i64) -> Q {
    Q::from_integer(num_bigint::BigInt::from(n))
}

/// Convert an exact rational to the nearest `f64`.
pub(crate) fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

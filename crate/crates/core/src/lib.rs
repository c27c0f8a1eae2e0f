//! Symbolic generic initial systems of fat-point ideals.
//!
//! The crate computes the reverse-lexicographic generic initial ideals
//! `gin(I^(m))` of symbolic powers of point configurations in projective
//! space, using exact rational linear algebra only, and studies the Newton
//! polytopes of the resulting monomial ideals: axis intercepts, areas of the
//! complementary regions, and the asymptotic invariants (initial degree,
//! Waldschmidt estimates, regularity) read off from them.
//!
//! Module map:
//!
//! * [`exact`] - rationals, dense matrices, an exact LP feasibility solver and
//!   seeded randomness.
//! * [`monomial`] - exponent vectors, the revlex order and monomial ideals.
//! * [`scheme`] - point configurations, star configurations and the
//!   differential conditions cutting out symbolic powers.
//! * [`gin`] - degree-by-degree generic initial ideals with certified
//!   genericity.
//! * [`shape`] - Newton polytopes, their complements and the predicted
//!   corner simplex.
//! * [`invariants`] - initial degrees, regularity and the end-to-end
//!   verification report.
//! * [`cli`] - the `starshape` command line, file formats and result cache.

pub mod cli;
pub mod error;
pub mod exact;
pub mod gin;
pub mod invariants;
pub mod monomial;
pub mod scheme;
pub mod shape;

pub use error::{Error, Result};
pub use gin::{compute_gin, GinOptions, GinResult};
pub use invariants::{verify_theorem, InvariantReport};
pub use exact::{RatMatrix, Rational, SeededRng};


pub use monomial::{ExponentVector, MonomialIdeal};
pub use scheme::{build_star, FatPointScheme, StarConfiguration, StarMode};
pub use shape::{CornerSimplex, Shape};


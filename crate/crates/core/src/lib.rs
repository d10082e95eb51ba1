//! Exact algebra for intersections of divisors on the formal line.
//!
//! The crate is organized bottom-up: [`gring`] supplies truncated graded
//! rings, [`oracle`] decides lattice questions degree by degree, and the
//! remaining modules build presentations, universal rings and exterior
//! powers on top of them.

pub mod divisor;
pub mod error;
pub mod exterior;
pub mod fitting;
pub mod gring;
pub mod oracle;
pub mod pkd;
pub mod series;
pub mod universal;

pub use error::{AlgebraError, Result};
pub use gring::{
    degree_basis, ring_add, ring_mul, CoeffRing, GradedPoly, Monomial, PolyMatrix, RingSpec, Scalar, UniPoly,
    Variable,
};
pub use oracle::{DegreewiseCheck, GradedLattice, IdealGens, QuotientRing};
pub use fitting::Presentation;
pub use divisor::Divisor;

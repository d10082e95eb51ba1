//! Truncated graded polynomial rings and their elements.

pub mod coeff;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod upoly;

pub use coeff::{CoeffRing, Scalar};
pub use matrix::PolyMatrix;
pub use poly::{ring_add, ring_mul, GradedPoly};
pub use ring::{Monomial, RingSpec, Variable};
pub use upoly::UniPoly;

/// All monomials of weighted degree exactly `d`, in the ring's order.
pub fn degree_basis(ring: &RingSpec, d: u32) -> crate::Result<Vec<Monomial>> {
    ring.degree_basis(d)
}

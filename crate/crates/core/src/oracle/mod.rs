//! Brute-force degreewise linear algebra used to verify every basis, rank
//! and ideal claim made elsewhere in the crate.

pub mod ideal;
pub mod invariant;
pub mod linalg;
pub mod quotient;

pub use ideal::{
    change_coeffs, degree_span_elements, ideal_contained, ideal_contains, ideal_degree_span, ideal_equal,
    quotient_graded_rank, quotient_graded_ranks, DegreewiseCheck, GradedLattice, IdealGens, QuotientRank,
};
pub use invariant::{invariant_lattice, invariant_subspace_dim, ActionMatrix};
pub use linalg::Echelon;
pub use quotient::{trivial_quotient, QuotientRing};

//! Finitely presented modules and their Fitting ideals.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::gring::json::{MatrixDoc, RingDoc};
use crate::gring::matrix::PolyMatrix;
use crate::gring::poly::GradedPoly;
use crate::gring::ring::RingSpec;
use crate::oracle::IdealGens;

/// A module presented as the cokernel of `matrix: R^{p1} -> R^{p0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    matrix: PolyMatrix,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl Presentation {
    pub fn new(matrix: PolyMatrix) -> Self {
        Presentation { matrix, row_labels: None, col_labels: None }
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.matrix.rows() || cols.len() != self.matrix.cols() {
            return Err(AlgebraError::ShapeMismatch("label count differs from matrix shape".into()));
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
    }

    /// The free module `R^{p0}` (no relations).
    pub fn free(ring: &Arc<RingSpec>, p0: usize) -> Self {
        Self::new(PolyMatrix::zeros(ring, p0, 0))
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    /// Number of generators.
    pub fn p0(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of relations.
    pub fn p1(&self) -> usize {
        self.matrix.cols()
    }

    /// The same module with more relations imposed.
    pub fn with_relations(&self, extra: &PolyMatrix) -> Result<Self> {
        Ok(Self::new(self.matrix.hstack(extra)?))
    }
}

/// All `k x k` minors in lexicographic (row set, column set) order.
pub fn minors(a: &PolyMatrix, k: usize) -> Vec<GradedPoly> {
    a.minors(k)
}

/// `I_j(M)`, generated by the minors of size `p0 - j`; the unit ideal
/// once `j >= p0`.
pub fn fitting_ideal(p: &Presentation, j: usize) -> IdealGens {
    let ring = p.ring();
    if j >= p.p0() {
        return IdealGens::unit(ring);
    }
    IdealGens::new(ring, p.matrix.minors(p.p0() - j)).expect("minors live in the presentation ring")
}

/// The least `r` with `I_r(M) != 0`.
pub fn fitting_rank(p: &Presentation) -> usize {
    (0..=p.p0()).find(|&r| fitting_ideal(p, r).is_nonzero()).unwrap_or(p.p0())
}

/// Block-diagonal presentation of `M ⊕ N`.
pub fn direct_sum(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    Ok(Presentation::new(p.matrix.block_diag(&q.matrix)?))
}

/// Presentation of the same module with `q0` extra generators and
/// relations: `[[A, -θ], [0, I]]`. `theta` is `p0 x q0`; `None` means zero.
pub fn stabilize(p: &Presentation, q0: usize, theta: Option<&PolyMatrix>) -> Result<Presentation> {
    let ring = p.ring();
    let zero;
    let theta = match theta {
        Some(t) => {
            if t.rows() != p.p0() || t.cols() != q0 {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "theta must be {}x{q0}, got {}x{}",
                    p.p0(),
                    t.rows(),
                    t.cols()
                )));
            }
            t
        }
        None => {
            zero = PolyMatrix::zeros(ring, p.p0(), q0);
            &zero
        }
    };
    let top = p.matrix.hstack(&theta.map(|e| -e))?;
    let bottom = PolyMatrix::zeros(ring, q0, p.p1()).hstack(&PolyMatrix::identity(ring, q0))?;
    Ok(Presentation::new(top.vstack(&bottom)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub ring: RingDoc,
    pub matrix: MatrixDoc,
}

impl PresentationDoc {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationDoc { ring: RingDoc::from_ring(p.ring()), matrix: MatrixDoc::from_matrix(p.matrix()) }
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let ring = self.ring.to_ring()?;
        Ok(Presentation::new(self.matrix.to_matrix(&ring)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::coeff::CoeffRing;

    fn za() -> Arc<RingSpec> {
        RingSpec::with_vars(CoeffRing::Integers, &[("a", 2)], 3).unwrap()
    }

    fn diag_a(n: usize) -> Presentation {
        let r = za();
        let a = GradedPoly::var(&r, "a").unwrap();
        Presentation::new(PolyMatrix::diagonal(&r, &vec![a; n]))
    }

    #[test]
    fn square_zero_example() {
        let p = diag_a(2);
        assert!(!fitting_ideal(&p, 0).is_nonzero());
        assert_eq!(fitting_ideal(&p, 1).gens().len(), 2);
        assert!(fitting_ideal(&p, 2).gens()[0].is_one());
        assert_eq!(fitting_rank(&p), 1);
        assert_eq!(fitting_rank(&diag_a(1)), 0);
    }

    #[test]
    fn free_and_zero_modules() {
        let r = za();
        let free = Presentation::new(PolyMatrix::zeros(&r, 2, 3));
        assert!(!fitting_ideal(&free, 1).is_nonzero());
        assert_eq!(fitting_rank(&free), 2);
        let zero = Presentation::new(PolyMatrix::identity(&r, 3));
        assert!((0..5).all(|j| fitting_ideal(&zero, j).is_nonzero()));
        assert_eq!(fitting_rank(&zero), 0);
        let two = direct_sum(&Presentation::free(&r, 1), &Presentation::free(&r, 1)).unwrap();
        assert_eq!(fitting_rank(&two), 2);
    }

    #[test]
    fn sums_and_stabilization() {
        let r = za();
        assert_eq!(direct_sum(&diag_a(1), &diag_a(1)).unwrap(), diag_a(2));
        let empty = Presentation::new(PolyMatrix::zeros(&r, 0, 0));
        assert_eq!(direct_sum(&diag_a(1), &empty).unwrap(), diag_a(1));
        let s = stabilize(&diag_a(1), 1, None).unwrap();
        let a = GradedPoly::var(&r, "a").unwrap();
        let expect = PolyMatrix::new(&r, 2, 2, vec![a, GradedPoly::zero(&r), GradedPoly::zero(&r), GradedPoly::one(&r)]).unwrap();
        assert_eq!(s.matrix(), &expect);
        assert_eq!(stabilize(&diag_a(1), 0, None).unwrap(), diag_a(1));
        let id = Presentation::new(PolyMatrix::identity(&r, 1));
        assert_eq!(fitting_rank(&stabilize(&id, 2, None).unwrap()), 0);
        assert!(stabilize(&id, 2, Some(&PolyMatrix::zeros(&r, 2, 2))).is_err());
    }
}

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{CoeffRing, Scalar};
use crate::oracle::linalg::{preimage, rank_over, Echelon};

/// Largest order accepted for a generator of a finite group action.
const MAX_ORDER: usize = 720;

/// Square integer matrix acting on column vectors.
pub type ActionMatrix = Vec<Vec<BigInt>>;

fn check_action(action: &[ActionMatrix]) -> Result<usize> {
    let n = action.first().map(|m| m.len()).unwrap_or(0);
    for m in action {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::ShapeMismatch("action matrices must be square of one size".into()));
        }
        if !has_finite_order(m) {
            return Err(AlgebraError::InvalidArgument(format!(
                "action matrix has no order up to {MAX_ORDER}"
            )));
        }
    }
    Ok(n)
}

fn mat_mul(a: &ActionMatrix, b: &ActionMatrix) -> ActionMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigInt::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

fn is_identity(m: &ActionMatrix) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

fn has_finite_order(m: &ActionMatrix) -> bool {
    let mut p = m.clone();
    for _ in 0..MAX_ORDER {
        if is_identity(&p) {
            return true;
        }
        p = mat_mul(&p, m);
    }
    false
}

/// Stacked `(g - 1)` rows, transposed so that a fixed vector `v` is a
/// vector with `v · rows = 0`.
fn fixed_point_system(action: &[ActionMatrix], n: usize) -> Vec<Vec<Scalar>> {
    // fixed v satisfies (g - 1) v = 0; as row combinations that is
    // v^T (g - 1)^T = 0, so each generator contributes n columns
    let mut rows = vec![Vec::with_capacity(n * action.len()); n];
    for g in action {
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n {
                // entry (i, j) of (g - 1)^T is g[j][i] - δ
                let mut x = g[j][i].clone();
                if i == j {
                    x -= 1;
                }
                row.push(Scalar::from_integer(x));
            }
        }
    }
    rows
}

/// Dimension over `coeffs` of the vectors fixed by every matrix in
/// `action`. Over Z this is the rank of the fixed lattice.
pub fn invariant_subspace_dim(action: &[ActionMatrix], coeffs: CoeffRing) -> Result<usize> {
    let n = check_action(action)?;
    if action.is_empty() {
        return Ok(n);
    }
    let stacked: Vec<Vec<Scalar>> = {
        let mut out = Vec::new();
        for g in action {
            for i in 0..n {
                out.push(
                    (0..n)
                        .map(|j| {
                            let mut x = g[i][j].clone();
                            if i == j {
                                x -= 1;
                            }
                            Scalar::from_integer(x)
                        })
                        .collect(),
                );
            }
        }
        out
    };
    Ok(n - rank_over(coeffs, n, stacked)?)
}

/// The lattice (or subspace) of vectors fixed by every matrix in `action`,
/// in echelon form.
pub fn invariant_lattice(action: &[ActionMatrix], coeffs: CoeffRing) -> Result<Echelon> {
    let n = check_action(action)?;
    let system = fixed_point_system(action, n);
    let width = n * action.len();
    preimage(coeffs, &system, &[], width)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ActionMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn trivial_action_fixes_everything() {
        let id = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(invariant_subspace_dim(&[id], CoeffRing::Rationals).unwrap(), 3);
    }

    #[test]
    fn swap_has_one_invariant() {
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(invariant_subspace_dim(std::slice::from_ref(&swap), CoeffRing::Rationals).unwrap(), 1);
        let lat = invariant_lattice(&[swap], CoeffRing::Integers).unwrap();
        assert_eq!(lat.rows(), &m(&[&[1, 1]])[..]);
    }

    #[test]
    fn sign_action_differs_in_characteristic_two() {
        let neg = m(&[&[-1]]);
        assert_eq!(invariant_subspace_dim(std::slice::from_ref(&neg), CoeffRing::Rationals).unwrap(), 0);
        assert_eq!(invariant_subspace_dim(&[neg], CoeffRing::PrimeField(2)).unwrap(), 1);
    }

    #[test]
    fn rejects_infinite_order() {
        let shear = m(&[&[1, 1], &[0, 1]]);
        assert!(invariant_subspace_dim(&[shear], CoeffRing::Rationals).is_err());
        let bad = m(&[&[1, 0]]);
        assert!(invariant_subspace_dim(&[bad], CoeffRing::Rationals).is_err());
    }
}

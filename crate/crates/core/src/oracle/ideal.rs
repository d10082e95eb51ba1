use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{CoeffRing, Scalar};
use crate::gring::poly::{same_ring, GradedPoly};
use crate::gring::ring::{Monomial, RingSpec};
use crate::oracle::linalg::Echelon;
use crate::oracle::quotient::{trivial_quotient, QuotientRing};

/// A finite list of generators of an ideal. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGens {
    ring: Arc<RingSpec>,
    gens: Vec<GradedPoly>,
}

impl IdealGens {
    pub fn new(ring: &Arc<RingSpec>, gens: Vec<GradedPoly>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(IdealGens { ring: ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        IdealGens { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Arc<RingSpec>) -> Self {
        IdealGens { ring: ring.clone(), gens: vec![GradedPoly::one(ring)] }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn gens(&self) -> &[GradedPoly] {
        &self.gens
    }

    /// True when some generator is nonzero, which for a generating set is
    /// the same as the ideal being nonzero.
    pub fn is_nonzero(&self) -> bool {
        !self.gens.is_empty()
    }

    /// Sum of two ideals.
    pub fn join(&self, other: &IdealGens) -> Result<IdealGens> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(IdealGens { ring: self.ring.clone(), gens })
    }

    /// Splits every generator into homogeneous components. The result
    /// generates the same ideal only when the input was already graded;
    /// callers use it when they know that.
    pub fn homogeneous_parts(&self) -> IdealGens {
        let mut gens = Vec::new();
        for g in &self.gens {
            let (lo, hi) = (g.min_degree().unwrap_or(0), g.max_degree().unwrap_or(0));
            for d in lo..=hi {
                let c = g.component(d);
                if !c.is_zero() {
                    gens.push(c);
                }
            }
        }
        IdealGens { ring: self.ring.clone(), gens }
    }
}

/// The degree-`d` piece of a submodule, as a canonical echelon matrix over
/// the reduced monomial basis of that degree.
#[derive(Clone, Debug)]
pub struct GradedLattice {
    degree: u32,
    ring: Arc<RingSpec>,
    basis: Vec<Monomial>,
    echelon: Echelon,
}

impl PartialEq for GradedLattice {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.basis == other.basis && self.echelon == other.echelon
    }
}

/// Free rank and torsion of a quotient in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientRank {
    pub free: usize,
    #[serde(serialize_with = "crate::gring::coeff::serialize_integers")]
    pub torsion: Vec<BigInt>,
}

#[derive(Serialize)]
pub struct LatticeDump {
    pub degree: u32,
    pub coeffs: String,
    pub basis: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl GradedLattice {
    /// Builds the span of `vectors` (elements of the degree-`d` component)
    /// in the coordinates of `basis`.
    pub fn from_elements(ring: &Arc<RingSpec>, degree: u32, basis: Vec<Monomial>, vectors: &[GradedPoly]) -> Result<Self> {
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let mut row = vec![Scalar::from_integer(0.into()); basis.len()];
            for (m, c) in v.terms() {
                let Some(&i) = index.get(m) else {
                    return Err(AlgebraError::InvalidArgument(format!(
                        "monomial {} is outside the degree-{degree} basis",
                        ring.format_monomial(m)
                    )));
                };
                row[i] = c.clone();
            }
            rows.push(row);
        }
        let echelon = Echelon::from_rows(ring.coeffs(), basis.len(), rows)?;
        Ok(GradedLattice { degree, ring: ring.clone(), basis, echelon })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_rank(&self) -> QuotientRank {
        QuotientRank { free: self.basis.len() - self.rank(), torsion: self.echelon.torsion() }
    }

    pub fn contains(&self, p: &GradedPoly) -> Result<bool> {
        let index: HashMap<&Monomial, usize> = self.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut row = vec![Scalar::from_integer(0.into()); self.basis.len()];
        for (m, c) in p.terms() {
            match index.get(m) {
                Some(&i) => row[i] = c.clone(),
                None => return Ok(false),
            }
        }
        self.echelon.contains(&row)
    }

    pub fn dump(&self) -> LatticeDump {
        LatticeDump {
            degree: self.degree,
            coeffs: self.ring.coeffs().label(),
            basis: self.basis.iter().map(|m| self.ring.format_monomial(m)).collect(),
            rows: self.echelon.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }
}

fn check_ideal_ring(i: &IdealGens, q: &QuotientRing) -> Result<()> {
    if same_ring(i.ring(), q.ambient()) {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch)
    }
}

/// The elements `reduce(m * g)` for every generator `g` and every reduced
/// monomial `m` of complementary degree.
pub fn degree_span_elements(i: &IdealGens, q: &QuotientRing, d: u32) -> Result<Vec<GradedPoly>> {
    check_ideal_ring(i, q)?;
    let ring = q.ambient();
    if d > ring.trunc() {
        return Err(AlgebraError::DegreeOutOfRange { degree: d, trunc: ring.trunc() });
    }
    let mut cache = HashMap::new();
    let mut out = Vec::new();
    for g in i.gens() {
        if !g.is_homogeneous() {
            return Err(AlgebraError::Inhomogeneous(g.to_string()));
        }
        let e = g.min_degree().expect("nonzero generator");
        if e > d {
            continue;
        }
        let g = q.reduce_cached(g, &mut cache)?;
        if g.is_zero() {
            continue;
        }
        for m in q.degree_basis(d - e)? {
            let v = q.reduce_cached(&g.shift(&m), &mut cache)?;
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Degree-`d` span of an ideal inside `q` (or the ambient ring).
pub fn ideal_degree_span(i: &IdealGens, q: Option<&QuotientRing>, d: u32) -> Result<GradedLattice> {
    let owned;
    let q = match q {
        Some(q) => q,
        None => {
            owned = trivial_quotient(i.ring());
            &owned
        }
    };
    let elems = degree_span_elements(i, q, d)?;
    GradedLattice::from_elements(q.ambient(), d, q.degree_basis(d)?, &elems)
}

/// Free rank and torsion of `(q / I)` in degree `d`.
pub fn quotient_graded_rank(i: &IdealGens, q: Option<&QuotientRing>, d: u32) -> Result<QuotientRank> {
    Ok(ideal_degree_span(i, q, d)?.quotient_rank())
}

/// Quotient ranks for every degree in `0..=max_degree`, computed in
/// parallel on the current rayon pool.
pub fn quotient_graded_ranks(i: &IdealGens, q: Option<&QuotientRing>, max_degree: u32) -> Result<Vec<QuotientRank>> {
    (0..=max_degree).into_par_iter().map(|d| quotient_graded_rank(i, q, d)).collect()
}

/// Outcome of a degreewise comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreewiseCheck {
    pub holds: bool,
    pub first_failing_degree: Option<u32>,
}

impl DegreewiseCheck {
    pub fn from_flags(flags: &[(u32, bool)]) -> Self {
        let first = flags.iter().find(|(_, ok)| !ok).map(|(d, _)| *d);
        DegreewiseCheck { holds: first.is_none(), first_failing_degree: first }
    }
}

/// Whether two ideals have the same degree-`d` span for every `d` up to
/// `up_to`.
pub fn ideal_equal(i: &IdealGens, j: &IdealGens, q: Option<&QuotientRing>, up_to: u32) -> Result<DegreewiseCheck> {
    if !same_ring(i.ring(), j.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    let flags = (0..=up_to)
        .into_par_iter()
        .map(|d| Ok((d, ideal_degree_span(i, q, d)? == ideal_degree_span(j, q, d)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreewiseCheck::from_flags(&flags))
}

/// Whether `i ⊆ j` degreewise up to `up_to`.
pub fn ideal_contained(i: &IdealGens, j: &IdealGens, q: Option<&QuotientRing>, up_to: u32) -> Result<DegreewiseCheck> {
    if !same_ring(i.ring(), j.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    let flags = (0..=up_to)
        .into_par_iter()
        .map(|d| {
            let a = ideal_degree_span(i, q, d)?;
            let b = ideal_degree_span(j, q, d)?;
            Ok((d, b.echelon().contains_span(a.echelon())?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreewiseCheck::from_flags(&flags))
}

/// Membership of an element in an ideal, checked on each homogeneous
/// component (which requires graded generators).
pub fn ideal_contains(i: &IdealGens, q: Option<&QuotientRing>, p: &GradedPoly) -> Result<bool> {
    let owned;
    let q = match q {
        Some(q) => q,
        None => {
            owned = trivial_quotient(i.ring());
            &owned
        }
    };
    let p = q.reduce(p)?;
    let (lo, hi) = match (p.min_degree(), p.max_degree()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Ok(true),
    };
    for d in lo..=hi {
        let c = p.component(d);
        if c.is_zero() {
            continue;
        }
        if !ideal_degree_span(i, Some(q), d)?.contains(&c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rebuilds generators over a different coefficient ring (same variables).
pub fn change_coeffs(i: &IdealGens, coeffs: CoeffRing) -> Result<IdealGens> {
    let ring = i.ring().with_coeffs(coeffs);
    let gens = i.gens().iter().map(|g| g.embed(&ring)).collect::<Result<_>>()?;
    IdealGens::new(&ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn za() -> Arc<RingSpec> {
        RingSpec::with_vars(CoeffRing::Integers, &[("a", 2)], 3).unwrap()
    }

    #[test]
    fn square_of_nilpotent_spans_nothing() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("a", 2)], 4).unwrap();
        let a = GradedPoly::var(&r, "a").unwrap();
        let r3 = za();
        let a3 = GradedPoly::var(&r3, "a").unwrap();
        let i = IdealGens::new(&r3, vec![&a3 * &a3]).unwrap();
        assert!(!i.is_nonzero());
        let i4 = IdealGens::new(&r, vec![&a * &a]).unwrap();
        assert_eq!(ideal_degree_span(&i4, None, 4).unwrap().rank(), 1);
        let i = IdealGens::new(&r3, vec![a3.clone()]).unwrap();
        let l = ideal_degree_span(&i, None, 2).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.quotient_rank(), QuotientRank { free: 0, torsion: vec![] });
    }

    #[test]
    fn span_rank_in_two_variables() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("x", 1), ("y", 1)], 4).unwrap();
        let g1 = GradedPoly::parse(&r, "x^2 + x*y + y^2").unwrap();
        let g2 = GradedPoly::parse(&r, "x^3").unwrap();
        let i = IdealGens::new(&r, vec![g1, g2]).unwrap();
        // x*g1, y*g1, x^3 are independent in the 4-dimensional degree 3
        assert_eq!(ideal_degree_span(&i, None, 3).unwrap().rank(), 3);
    }

    #[test]
    fn free_ranks_of_polynomial_ring() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("c1", 1), ("c2", 2)], 4).unwrap();
        let z = IdealGens::zero(&r);
        assert_eq!(quotient_graded_rank(&z, None, 2).unwrap().free, 2);
    }

    #[test]
    fn equality_examples() {
        let r = za();
        let a = GradedPoly::var(&r, "a").unwrap();
        let i = IdealGens::new(&r, vec![a.clone()]).unwrap();
        let j = IdealGens::new(&r, vec![-&a]).unwrap();
        assert!(ideal_equal(&i, &j, None, 3).unwrap().holds);
        let z = IdealGens::new(&r, vec![&a * &a]).unwrap();
        let check = ideal_equal(&z, &i, None, 3).unwrap();
        assert_eq!(check.first_failing_degree, Some(2));
    }

    #[test]
    fn torsion_detected() {
        let r = za();
        let i = IdealGens::new(&r, vec![GradedPoly::parse(&r, "2*a").unwrap()]).unwrap();
        let q = quotient_graded_rank(&i, None, 2).unwrap();
        assert_eq!(q.free, 0);
        assert_eq!(q.torsion, vec![BigInt::from(2)]);
        let i2 = change_coeffs(&i, CoeffRing::PrimeField(2)).unwrap();
        assert_eq!(quotient_graded_rank(&i2, None, 2).unwrap().free, 1);
    }

    #[test]
    fn membership() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("x", 1), ("y", 1)], 4).unwrap();
        let i = IdealGens::new(&r, vec![GradedPoly::parse(&r, "x - y").unwrap()]).unwrap();
        assert!(ideal_contains(&i, None, &GradedPoly::parse(&r, "x^2 - y^2").unwrap()).unwrap());
        assert!(!ideal_contains(&i, None, &GradedPoly::parse(&r, "x^2").unwrap()).unwrap());
    }
}

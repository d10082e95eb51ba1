use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::Scalar;
use crate::gring::poly::{same_ring, GradedPoly};
use crate::gring::ring::{Monomial, RingSpec};
use crate::gring::upoly::UniPoly;

/// A quotient of a truncated graded ring by monic relations, one per
/// distinguished variable.
///
/// Relation `i` is monic in its variable and its lower coefficients may only
/// involve non-distinguished variables and the distinguished variables of
/// relations `0..i`. That triangular shape makes reduction confluent: the
/// variables are eliminated from the last relation to the first.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ambient: Arc<RingSpec>,
    relations: Vec<Relation>,
}

#[derive(Clone, Debug)]
struct Relation {
    var: usize,
    degree: u32,
    /// `var^degree` rewrites to `tail`
    tail: Vec<GradedPoly>,
}

impl QuotientRing {
    /// `relations` lists `(variable name, f)` where `f` is a monic
    /// polynomial in that variable with coefficients in the ambient ring.
    pub fn new(ambient: &Arc<RingSpec>, relations: Vec<(String, UniPoly)>) -> Result<Self> {
        let mut rels: Vec<Relation> = Vec::new();
        for (name, f) in relations {
            let var = ambient.var_index(&name)?;
            if !same_ring(f.ring(), ambient) {
                return Err(AlgebraError::RingMismatch);
            }
            if !f.is_monic() {
                return Err(AlgebraError::InvalidDivisor(format!("relation for `{name}` is not monic")));
            }
            if rels.iter().any(|r| r.var == var) {
                return Err(AlgebraError::InvalidDivisor(format!("two relations for `{name}`")));
            }
            let degree = f.degree().expect("monic is nonzero");
            let mut tail = Vec::with_capacity(degree);
            for c in &f.coeffs()[..degree] {
                if c.support_vars().contains(&var) {
                    return Err(AlgebraError::InvalidDivisor(format!(
                        "coefficients of the relation for `{name}` involve `{name}`"
                    )));
                }
                tail.push(-c);
            }
            rels.push(Relation { var, degree: degree as u32, tail });
        }
        // coefficients may not mention distinguished variables introduced later
        for (i, r) in rels.iter().enumerate() {
            for c in &r.tail {
                for u in c.support_vars() {
                    if rels[i..].iter().any(|s| s.var == u) {
                        return Err(AlgebraError::InvalidDivisor(format!(
                            "relation for `{}` is not triangular",
                            ambient.vars()[r.var].name
                        )));
                    }
                }
            }
        }
        Ok(QuotientRing { ambient: ambient.clone(), relations: rels })
    }

    pub fn ambient(&self) -> &Arc<RingSpec> {
        &self.ambient
    }

    /// Distinguished variables with their relation degrees.
    pub fn bounds(&self) -> Vec<(usize, u32)> {
        self.relations.iter().map(|r| (r.var, r.degree)).collect()
    }

    pub fn is_reduced(&self, m: &Monomial) -> bool {
        self.relations.iter().all(|r| m.exp(r.var) < r.degree)
    }

    /// The reduced monomials of degree `d`: the free basis over the
    /// non-distinguished variables.
    pub fn degree_basis(&self, d: u32) -> Result<Vec<Monomial>> {
        Ok(self.ambient.degree_basis(d)?.into_iter().filter(|m| self.is_reduced(m)).collect())
    }

    /// Canonical representative on the reduced monomials.
    pub fn reduce(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let mut cache = HashMap::new();
        self.reduce_cached(p, &mut cache)
    }

    /// [`QuotientRing::reduce`] sharing a monomial cache across calls.
    pub fn reduce_cached(&self, p: &GradedPoly, cache: &mut HashMap<Monomial, GradedPoly>) -> Result<GradedPoly> {
        if !same_ring(p.ring(), &self.ambient) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut out = GradedPoly::zero(&self.ambient);
        for (m, c) in p.terms() {
            let r = self.reduce_monomial(m, cache);
            out = &out + &r.scale(c);
        }
        Ok(out)
    }

    fn reduce_monomial(&self, m: &Monomial, cache: &mut HashMap<Monomial, GradedPoly>) -> GradedPoly {
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let hit = self.relations.iter().rev().find(|r| m.exp(r.var) >= r.degree);
        let result = match hit {
            None => GradedPoly::term(&self.ambient, m.clone(), Scalar::one()),
            Some(r) => {
                let top = self.ambient.var_monomial(r.var, r.degree);
                let rest = m.div(&top).expect("exponent checked");
                let mut acc = GradedPoly::zero(&self.ambient);
                for (i, c) in r.tail.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let shifted = c.shift(&rest.mul(&self.ambient.var_monomial(r.var, i as u32)));
                    for (tm, tc) in shifted.terms() {
                        let red = self.reduce_monomial(tm, cache);
                        acc = &acc + &red.scale(tc);
                    }
                }
                acc
            }
        };
        cache.insert(m.clone(), result.clone());
        result
    }
}

/// A free quotient with no relations: the ring itself.
pub fn trivial_quotient(ring: &Arc<RingSpec>) -> QuotientRing {
    QuotientRing { ambient: ring.clone(), relations: Vec::new() }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::coeff::CoeffRing;

    fn rel(ring: &Arc<RingSpec>, var: &str, lower: &[&str]) -> (String, UniPoly) {
        let mut coeffs: Vec<GradedPoly> = lower.iter().map(|s| GradedPoly::parse(ring, s).unwrap()).collect();
        coeffs.push(GradedPoly::one(ring));
        (var.to_string(), UniPoly::from_coeffs(ring, coeffs))
    }

    #[test]
    fn one_division_step() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("a", 2), ("x", 1)], 4).unwrap();
        let q = QuotientRing::new(&r, vec![rel(&r, "x", &["-a", "0"])]).unwrap();
        let x2 = GradedPoly::parse(&r, "x^2").unwrap();
        assert_eq!(q.reduce(&x2).unwrap(), GradedPoly::parse(&r, "a").unwrap());
    }

    #[test]
    fn two_variable_example() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("x", 1), ("y", 1)], 6).unwrap();
        let q = QuotientRing::new(
            &r,
            vec![rel(&r, "x", &["0", "0", "0"]), rel(&r, "y", &["x^2", "x"])],
        )
        .unwrap();
        let y2 = GradedPoly::parse(&r, "y^2").unwrap();
        assert_eq!(q.reduce(&y2).unwrap(), GradedPoly::parse(&r, "-x^2 - x*y").unwrap());
        assert_eq!(q.degree_basis(2).unwrap().len(), 2);
        let total: usize = (0..=6).map(|d| q.degree_basis(d).unwrap().len()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn cube_vanishes_beyond() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("x", 1)], 6).unwrap();
        let q = QuotientRing::new(&r, vec![rel(&r, "x", &["0", "0", "0"])]).unwrap();
        assert!(q.reduce(&GradedPoly::parse(&r, "x^4").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_triangular() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("x", 1), ("y", 1)], 6).unwrap();
        let bad = QuotientRing::new(&r, vec![rel(&r, "x", &["y^2", "0"]), rel(&r, "y", &["0", "0"])]);
        assert!(bad.is_err());
    }
}

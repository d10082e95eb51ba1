use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::CoeffRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Variable { name: name.into(), degree }
    }
}

/// `K[z_1, ..., z_m]` with weighted gradings, modulo every monomial of
/// weighted degree above `trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    coeffs: CoeffRing,
    vars: Vec<Variable>,
    trunc: u32,
}

impl RingSpec {
    pub fn new(coeffs: CoeffRing, vars: Vec<Variable>, trunc: u32) -> Result<Arc<Self>> {
        let mut seen = HashSet::new();
        for v in &vars {
            if v.degree == 0 {
                return Err(AlgebraError::InvalidRing(format!(
                    "variable `{}` has grading 0",
                    v.name
                )));
            }
            if v.name.is_empty() || !v.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(AlgebraError::InvalidRing(format!("bad variable name `{}`", v.name)));
            }
            if v.name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(AlgebraError::InvalidRing(format!(
                    "variable name `{}` starts with a digit",
                    v.name
                )));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
        }
        if let CoeffRing::PrimeField(p) = coeffs {
            CoeffRing::prime_field(p)?;
        }
        Ok(Arc::new(RingSpec { coeffs, vars, trunc }))
    }

    /// Shorthand for rings built in code: `&[("a", 2), ("b", 1)]`.
    pub fn with_vars(coeffs: CoeffRing, vars: &[(&str, u32)], trunc: u32) -> Result<Arc<Self>> {
        Self::new(coeffs, vars.iter().map(|&(n, d)| Variable::new(n, d)).collect(), trunc)
    }

    pub fn coeffs(&self) -> CoeffRing {
        self.coeffs
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Same variables and truncation over another coefficient ring.
    pub fn with_coeffs(&self, coeffs: CoeffRing) -> Arc<Self> {
        Arc::new(RingSpec { coeffs, vars: self.vars.clone(), trunc: self.trunc })
    }

    /// Same variables and coefficients, different cutoff.
    pub fn with_trunc(&self, trunc: u32) -> Arc<Self> {
        Arc::new(RingSpec { coeffs: self.coeffs, vars: self.vars.clone(), trunc })
    }

    /// This ring with `extra` appended to the variable list.
    pub fn extend(&self, extra: &[Variable]) -> Result<Arc<Self>> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        RingSpec::new(self.coeffs, vars, self.trunc)
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != self.vars.len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "exponent vector of length {} in a ring with {} variables",
                exps.len(),
                self.vars.len()
            )));
        }
        let degree = self.weighted_degree(&exps);
        Ok(Monomial { degree, exps: exps.into_boxed_slice() })
    }

    /// Builds a monomial without the cutoff check, for exponent sets that
    /// describe module bases rather than ring elements.
    pub(crate) fn monomial_unchecked(&self, exps: Vec<u32>) -> Monomial {
        let degree = self.weighted_degree(&exps);
        Monomial { degree, exps: exps.into_boxed_slice() }
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial { degree: 0, exps: vec![0; self.vars.len()].into_boxed_slice() }
    }

    pub fn var_monomial(&self, idx: usize, exp: u32) -> Monomial {
        let mut exps = vec![0; self.vars.len()];
        exps[idx] = exp;
        Monomial { degree: self.vars[idx].degree * exp, exps: exps.into_boxed_slice() }
    }

    fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.vars).map(|(e, v)| e * v.degree).sum()
    }

    /// All monomials of weighted degree exactly `d`, in the canonical order
    /// (graded, then lexicographic with earlier variables dominant).
    pub fn degree_basis(&self, d: u32) -> Result<Vec<Monomial>> {
        if d > self.trunc {
            return Err(AlgebraError::DegreeOutOfRange { degree: d, trunc: self.trunc });
        }
        Ok(self.degree_basis_untruncated(d))
    }

    /// `degree_basis` without the cutoff check, for callers that enumerate
    /// monomials of a sub-polynomial-ring (e.g. exponent bounds).
    pub(crate) fn degree_basis_untruncated(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.vars.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out
    }

    fn enumerate(&self, idx: usize, remaining: u32, exps: &mut [u32], out: &mut Vec<Monomial>) {
        if idx == self.vars.len() {
            if remaining == 0 {
                let degree = self.weighted_degree(exps);
                out.push(Monomial { degree, exps: exps.to_vec().into_boxed_slice() });
            }
            return;
        }
        let w = self.vars[idx].degree;
        let max = remaining / w;
        for e in (0..=max).rev() {
            exps[idx] = e;
            self.enumerate(idx + 1, remaining - e * w, exps, out);
        }
        exps[idx] = 0;
    }

    /// Number of monomials in each degree `0..=d` (the Hilbert function of
    /// the free ring), by the product formula for `1/prod(1 - w^deg)`.
    pub fn hilbert_counts(&self, d: u32) -> Vec<u64> {
        let mut counts = vec![0u64; d as usize + 1];
        counts[0] = 1;
        for v in &self.vars {
            let w = v.degree as usize;
            for i in w..counts.len() {
                counts[i] += counts[i - w];
            }
        }
        counts
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (e, v) in m.exps.iter().zip(&self.vars) {
            match e {
                0 => {}
                1 => parts.push(v.name.clone()),
                _ => parts.push(format!("{}^{}", v.name, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// An exponent vector together with its cached weighted degree.
///
/// The `Ord` impl is the canonical basis order: ascending degree, then
/// descending lexicographic on exponents (so `u^2 < v` when both have
/// degree 2 and `u` is declared first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Box<[u32]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { degree: self.degree - other.degree, exps: exps.into_boxed_slice() })
    }

    /// Replaces the exponent of one variable, adjusting the degree.
    pub(crate) fn with_exp(&self, idx: usize, exp: u32, grading: u32) -> Monomial {
        let mut exps = self.exps.clone();
        let old = exps[idx];
        exps[idx] = exp;
        Monomial { degree: self.degree - old * grading + exp * grading, exps }
    }

    /// Reorders exponents: result's variable `i` takes the exponent of
    /// variable `perm[i]`. Valid only when the permuted variables share a
    /// grading.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Monomial {
        let exps: Box<[u32]> = perm.iter().map(|&j| self.exps[j]).collect();
        Monomial { degree: self.degree, exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(r: &RingSpec, ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(|m| r.format_monomial(m)).collect()
    }

    #[test]
    fn degree_basis_orders_graded_lex() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("u", 1), ("v", 2)], 4).unwrap();
        assert_eq!(names(&r, &r.degree_basis(2).unwrap()), ["u^2", "v"]);
        assert_eq!(names(&r, &r.degree_basis(0).unwrap()), ["1"]);
    }

    #[test]
    fn degree_basis_partitions_of_three() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("c1", 1), ("c2", 2), ("c3", 3)], 3)
            .unwrap();
        assert_eq!(names(&r, &r.degree_basis(3).unwrap()), ["c1^3", "c1*c2", "c3"]);
    }

    #[test]
    fn degree_basis_rejects_out_of_range() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("a", 2)], 3).unwrap();
        assert_eq!(
            r.degree_basis(4),
            Err(AlgebraError::DegreeOutOfRange { degree: 4, trunc: 3 })
        );
    }

    #[test]
    fn hilbert_counts_match_enumeration() {
        let r = RingSpec::with_vars(
            CoeffRing::Integers,
            &[("a", 1), ("b", 2), ("c", 2), ("d", 3)],
            9,
        )
        .unwrap();
        let counts = r.hilbert_counts(9);
        for d in 0..=9 {
            assert_eq!(counts[d as usize], r.degree_basis(d).unwrap().len() as u64);
        }
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(RingSpec::with_vars(CoeffRing::Integers, &[("a", 0)], 3).is_err());
        assert!(RingSpec::with_vars(CoeffRing::Integers, &[("a", 1), ("a", 2)], 3).is_err());
        assert!(RingSpec::with_vars(CoeffRing::PrimeField(4), &[("a", 1)], 3).is_err());
    }

    #[test]
    fn monomial_order_is_total_and_graded() {
        let r = RingSpec::with_vars(CoeffRing::Integers, &[("x", 1), ("y", 1)], 3).unwrap();
        let all: Vec<_> = (0..=3).flat_map(|d| r.degree_basis(d).unwrap()).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}

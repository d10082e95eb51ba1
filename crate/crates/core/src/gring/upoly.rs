use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::gring::poly::{same_ring, GradedPoly};
use crate::gring::ring::RingSpec;

/// A polynomial in one auxiliary variable whose coefficients live in a
/// truncated graded ring. The auxiliary variable itself is never truncated.
///
/// Coefficients are stored lowest power first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    ring: Arc<RingSpec>,
    coeffs: Vec<GradedPoly>,
}

impl UniPoly {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        UniPoly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(GradedPoly::one(ring))
    }

    pub fn constant(c: GradedPoly) -> Self {
        let ring = c.ring().clone();
        Self::from_coeffs(&ring, vec![c])
    }

    /// `x^k`.
    pub fn power(ring: &Arc<RingSpec>, k: usize) -> Self {
        let mut coeffs = vec![GradedPoly::zero(ring); k + 1];
        coeffs[k] = GradedPoly::one(ring);
        UniPoly { ring: ring.clone(), coeffs }
    }

    /// `x - a`.
    pub fn linear(a: &GradedPoly) -> Self {
        let ring = a.ring().clone();
        Self::from_coeffs(&ring, vec![-a, GradedPoly::one(&ring)])
    }

    pub fn from_coeffs(ring: &Arc<RingSpec>, coeffs: Vec<GradedPoly>) -> Self {
        for c in &coeffs {
            assert!(same_ring(c.ring(), ring), "coefficient from a different ring");
        }
        let mut p = UniPoly { ring: ring.clone(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> GradedPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| GradedPoly::zero(&self.ring))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        UniPoly::from_coeffs(&self.ring, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        UniPoly::from_coeffs(&self.ring, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.ring);
        }
        let mut coeffs = vec![GradedPoly::zero(&self.ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(&self.ring, coeffs)
    }

    pub fn scale(&self, c: &GradedPoly) -> UniPoly {
        UniPoly::from_coeffs(&self.ring, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![GradedPoly::zero(&self.ring); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { ring: self.ring.clone(), coeffs }
    }

    /// Euclidean division by a monic divisor: `self = q * f + r` with
    /// `deg r < deg f`.
    pub fn divrem_monic(&self, f: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if !f.is_monic() {
            return Err(AlgebraError::InvalidDivisor("divisor is not monic".into()));
        }
        let df = f.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= df {
            return Ok((UniPoly::zero(&self.ring), self.clone()));
        }
        let mut quot = vec![GradedPoly::zero(&self.ring); rem.len() - df];
        for top in (df..rem.len()).rev() {
            let lead = std::mem::replace(&mut rem[top], GradedPoly::zero(&self.ring));
            if lead.is_zero() {
                continue;
            }
            let shift = top - df;
            for (i, c) in f.coeffs[..df].iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&lead * c);
            }
            quot[shift] = lead;
        }
        rem.truncate(df);
        Ok((UniPoly::from_coeffs(&self.ring, quot), UniPoly::from_coeffs(&self.ring, rem)))
    }

    pub fn rem_monic(&self, f: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem_monic(f)?.1)
    }

    /// Horner evaluation at an element of the coefficient ring.
    pub fn eval(&self, at: &GradedPoly) -> GradedPoly {
        let mut acc = GradedPoly::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Moves every coefficient into a larger ring by variable name.
    pub fn embed(&self, target: &Arc<RingSpec>) -> Result<UniPoly> {
        let coeffs = self.coeffs.iter().map(|c| c.embed(target)).collect::<Result<_>>()?;
        Ok(UniPoly::from_coeffs(target, coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let xs = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "({c})")?;
            } else if c.is_one() {
                f.write_str(&xs)?;
            } else {
                write!(f, "({c})*{xs}")?;
            }
        }
        Ok(())
    }
}

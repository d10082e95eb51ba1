//! Truncated integer power series in one variable `w`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// `Σ_{k<=len-1} a_k w^k`, all terms beyond the length discarded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PowerSeries {
    #[serde(serialize_with = "crate::gring::coeff::serialize_integers")]
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(len: usize) -> Self {
        PowerSeries { coeffs: vec![BigInt::zero(); len] }
    }

    pub fn one(len: usize) -> Self {
        Self::monomial(len, 0)
    }

    /// `w^k`.
    pub fn monomial(len: usize, k: usize) -> Self {
        let mut s = Self::zero(len);
        if k < len {
            s.coeffs[k] = BigInt::one();
        }
        s
    }

    pub fn from_coeffs(len: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut s = Self::zero(len);
        for (i, c) in coeffs.into_iter().enumerate().take(len) {
            s.coeffs[i] = c;
        }
        s
    }

    /// `1 / (1 - w^g)`.
    pub fn geometric(len: usize, g: usize) -> Self {
        assert!(g > 0, "geometric series needs a positive step");
        let mut s = Self::zero(len);
        for k in (0..len).step_by(g) {
            s.coeffs[k] = BigInt::one();
        }
        s
    }

    /// Hilbert series of a free polynomial ring with the given gradings.
    pub fn free(len: usize, gradings: &[usize]) -> Self {
        gradings.iter().fold(Self::one(len), |acc, &g| acc.mul(&Self::geometric(len, g)))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        Self::from_coeffs(len, (0..len).map(|i| &self.coeffs[i] + &other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        Self::from_coeffs(len, (0..len).map(|i| &self.coeffs[i] - &other.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.len(), self.coeffs.iter().map(|c| -c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = Self::zero(len);
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Multiplication by `w^k`.
    pub fn shift(&self, k: usize) -> Self {
        let len = self.len();
        Self::from_coeffs(len, std::iter::repeat_n(BigInt::zero(), k).chain(self.coeffs.iter().cloned()))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*w"),
                _ => format!("{c}*w^{k}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

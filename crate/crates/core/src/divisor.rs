//! Divisors on the formal line over a truncated graded base, and the
//! presentations of the coordinate ring of an intersection.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::fitting::{fitting_ideal, fitting_rank, Presentation};
use crate::gring::coeff::CoeffRing;
use crate::gring::json::{PolyDoc, RingDoc};
use crate::gring::matrix::PolyMatrix;
use crate::gring::poly::{same_ring, GradedPoly};
use crate::gring::ring::{RingSpec, Variable};
use crate::gring::upoly::UniPoly;
use crate::oracle::IdealGens;

/// `f(x) = Σ c_i x^{d-i}` with `c_0 = 1` and every other `c_i` without a
/// constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    base: Arc<RingSpec>,
    coeffs: Vec<GradedPoly>,
}

impl Divisor {
    /// `coeffs` lists `c_1, ..., c_d`.
    pub fn new(base: &Arc<RingSpec>, coeffs: Vec<GradedPoly>) -> Result<Self> {
        for (i, c) in coeffs.iter().enumerate() {
            if !same_ring(c.ring(), base) {
                return Err(AlgebraError::RingMismatch);
            }
            if !c.constant_term().is_zero() {
                return Err(AlgebraError::InvalidDivisor(format!("c_{} = {c} has a constant term", i + 1)));
            }
        }
        Ok(Divisor { base: base.clone(), coeffs })
    }

    /// The divisor `d[0]` with equation `x^d`.
    pub fn point_power(base: &Arc<RingSpec>, d: usize) -> Self {
        Divisor { base: base.clone(), coeffs: vec![GradedPoly::zero(base); d] }
    }

    /// `∏ (x - a_i)`.
    pub fn from_roots(base: &Arc<RingSpec>, roots: &[GradedPoly]) -> Result<Self> {
        let mut f = UniPoly::one(base);
        for a in roots {
            f = f.mul(&UniPoly::linear(a));
        }
        Self::from_equation(&f)
    }

    pub fn from_equation(f: &UniPoly) -> Result<Self> {
        if !f.is_monic() {
            return Err(AlgebraError::InvalidDivisor(format!("{f} is not monic")));
        }
        let d = f.degree().expect("monic is nonzero");
        let coeffs = (1..=d).map(|i| f.coeff(d - i)).collect();
        Self::new(f.ring(), coeffs)
    }

    /// The tautological divisor `x^d + u_1 x^{d-1} + ... + u_d` over the
    /// ring with one variable `{prefix}{i}` of degree `i` per coefficient.
    pub fn tautological(prefix: &str, d: usize, coeffs: CoeffRing, trunc: u32) -> Result<Self> {
        let vars = (1..=d).map(|i| Variable::new(format!("{prefix}{i}"), i as u32)).collect();
        let base = RingSpec::new(coeffs, vars, trunc)?;
        let cs = (0..d).map(|i| GradedPoly::var_at(&base, i)).collect();
        Self::new(&base, cs)
    }

    pub fn base(&self) -> &Arc<RingSpec> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_i` with `c_0 = 1` and zero outside `0..=d`.
    pub fn coeff(&self, i: isize) -> GradedPoly {
        match i {
            0 => GradedPoly::one(&self.base),
            i if i > 0 && (i as usize) <= self.coeffs.len() => self.coeffs[i as usize - 1].clone(),
            _ => GradedPoly::zero(&self.base),
        }
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    /// The equation as a polynomial in `x`.
    pub fn equation(&self) -> UniPoly {
        let d = self.degree();
        let coeffs = (0..=d).map(|j| self.coeff((d - j) as isize)).collect();
        UniPoly::from_coeffs(&self.base, coeffs)
    }

    /// Whether every coefficient is homogeneous of degree `i`, which makes
    /// all constructions graded.
    pub fn is_graded(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || (c.is_homogeneous() && c.min_degree() == Some(i as u32 + 1)))
    }

    /// The same divisor over a larger base, matching variables by name.
    pub fn embed(&self, target: &Arc<RingSpec>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.embed(target)).collect::<Result<_>>()?;
        Self::new(target, coeffs)
    }

    fn check_pair(&self, other: &Divisor) -> Result<()> {
        if same_ring(&self.base, &other.base) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }
}

/// `D0 + D1`, with equation `f0 f1`.
pub fn divisor_sum(d0: &Divisor, d1: &Divisor) -> Result<Divisor> {
    d0.check_pair(d1)?;
    Divisor::from_equation(&d0.equation().mul(&d1.equation()))
}

/// Coefficient vector of `g mod f` in the basis `1, x, ..., x^{deg f - 1}`.
fn residue_vector(g: &UniPoly, f: &UniPoly) -> Vec<GradedPoly> {
    let r = g.rem_monic(f).expect("divisor equations are monic");
    let d = f.degree().expect("monic");
    (0..d).map(|i| r.coeff(i)).collect()
}

/// The map `O_{D0+D1} -> O_{D0} ⊕ O_{D1}`, `g ↦ (g mod f0, -(g mod f1))`.
pub fn presentation_pushout(d0: &Divisor, d1: &Divisor) -> Result<Presentation> {
    d0.check_pair(d1)?;
    let (f0, f1) = (d0.equation(), d1.equation());
    let (n0, n1) = (d0.degree(), d1.degree());
    let ring = &d0.base;
    let mut m = PolyMatrix::zeros(ring, n0 + n1, n0 + n1);
    for j in 0..n0 + n1 {
        let xj = UniPoly::power(ring, j);
        for (i, c) in residue_vector(&xj, &f0).into_iter().enumerate() {
            m.set(i, j, c);
        }
        for (i, c) in residue_vector(&xj, &f1).into_iter().enumerate() {
            m.set(n0 + i, j, -&c);
        }
    }
    Ok(Presentation::new(m))
}

/// Columns `x^j f0` (`j < d1`) then `x^j f1` (`j < d0`) in the basis
/// `1, ..., x^{d0+d1-1}`, constant row first.
pub fn presentation_sylvester(d0: &Divisor, d1: &Divisor) -> Result<Presentation> {
    d0.check_pair(d1)?;
    let (n0, n1) = (d0.degree() as isize, d1.degree() as isize);
    let size = (n0 + n1) as usize;
    let m = PolyMatrix::from_fn(&d0.base, size, size, |k, j| {
        let (k, j) = (k as isize, j as isize);
        if j < n1 {
            d0.coeff(n0 + j - k)
        } else {
            d1.coeff(n1 + (j - n1) - k)
        }
    });
    Ok(Presentation::new(m))
}

/// Multiplication by `f1` on `O_{D0}` in the basis `1, ..., x^{d0-1}`.
pub fn presentation_mu(d0: &Divisor, d1: &Divisor) -> Result<Presentation> {
    d0.check_pair(d1)?;
    let (f0, f1) = (d0.equation(), d1.equation());
    let n0 = d0.degree();
    let ring = &d0.base;
    let mut m = PolyMatrix::zeros(ring, n0, n0);
    for j in 0..n0 {
        let g = UniPoly::power(ring, j).mul(&f1);
        for (i, c) in residue_vector(&g, &f0).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(Presentation::new(m))
}

/// Multiplication by `f0` on `O_{D1}`.
pub fn presentation_mu_mirror(d0: &Divisor, d1: &Divisor) -> Result<Presentation> {
    presentation_mu(d1, d0)
}

/// `c_0, ..., c_n` with `f0 / f1 = x^{d0-d1} Σ c_i x^{-i}`.
pub fn laurent_coeffs(d0: &Divisor, d1: &Divisor, n: usize) -> Result<Vec<GradedPoly>> {
    d0.check_pair(d1)?;
    let mut c: Vec<GradedPoly> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut v = d0.coeff(i as isize);
        for j in 1..=i.min(d1.degree()) {
            v = &v - &(&d1.coeff(j as isize) * &c[i - j]);
        }
        c.push(v);
    }
    Ok(c)
}

/// `Φ_{ij} = c_{d0+i-j}` for `0 <= i, j < d1`.
pub fn presentation_laurent(d0: &Divisor, d1: &Divisor) -> Result<Presentation> {
    let (n0, n1) = (d0.degree(), d1.degree());
    let c = laurent_coeffs(d0, d1, n0 + n1)?;
    let get = |k: isize| if k < 0 { GradedPoly::zero(&d0.base) } else { c[k as usize].clone() };
    let m = PolyMatrix::from_fn(&d0.base, n1, n1, |i, j| get(n0 as isize + i as isize - j as isize));
    Ok(Presentation::new(m))
}

/// Fitting rank of `O_{D0∩D1}` over the base.
pub fn intersection_rank(d0: &Divisor, d1: &Divisor) -> Result<usize> {
    Ok(fitting_rank(&presentation_mu(d0, d1)?))
}

/// `I_{r-1}(O_{D0∩D1})`, cutting out the locus where the intersection has
/// rank at least `r`. For `r = 0` this is the unit ideal.
pub fn int_obstruction_ideal(d0: &Divisor, d1: &Divisor, r: usize) -> Result<IdealGens> {
    if r == 0 {
        return Ok(IdealGens::unit(&d0.base));
    }
    Ok(fitting_ideal(&presentation_mu(d0, d1)?, r - 1))
}

/// Determinant of the Sylvester matrix.
pub fn resultant(d0: &Divisor, d1: &Divisor) -> Result<GradedPoly> {
    presentation_sylvester(d0, d1)?.matrix().det()
}

/// `(Ψ_r)_{ij} = c_{d0-r+i-j}`, `0 <= i, j < d1 - r`.
pub fn porteous_matrix(d0: &Divisor, d1: &Divisor, r: usize) -> Result<PolyMatrix> {
    let (n0, n1) = (d0.degree(), d1.degree());
    if r > n1 {
        return Err(AlgebraError::InvalidArgument(format!("r = {r} exceeds d1 = {n1}")));
    }
    let c = laurent_coeffs(d0, d1, n0 + n1)?;
    let get = |k: isize| if k < 0 || k as usize >= c.len() { GradedPoly::zero(&d0.base) } else { c[k as usize].clone() };
    let size = n1 - r;
    Ok(PolyMatrix::from_fn(&d0.base, size, size, |i, j| {
        get(n0 as isize - r as isize + i as isize - j as isize)
    }))
}

/// `det(Ψ_r)`.
pub fn thom_porteous_minor(d0: &Divisor, d1: &Divisor, r: usize) -> Result<GradedPoly> {
    porteous_matrix(d0, d1, r)?.det()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDoc {
    pub degree: usize,
    pub coeffs: Vec<PolyDoc>,
}

impl DivisorDoc {
    pub fn from_divisor(d: &Divisor) -> Self {
        DivisorDoc { degree: d.degree(), coeffs: d.coeffs.iter().map(PolyDoc::from_poly).collect() }
    }

    pub fn to_divisor(&self, base: &Arc<RingSpec>) -> Result<Divisor> {
        if self.coeffs.len() != self.degree {
            return Err(AlgebraError::InvalidDivisor(format!(
                "degree {} with {} coefficients",
                self.degree,
                self.coeffs.len()
            )));
        }
        let cs = self.coeffs.iter().map(|c| c.to_poly(base)).collect::<Result<_>>()?;
        Divisor::new(base, cs)
    }
}

/// `{"base": ..., "divisor": {...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub base: RingDoc,
    pub divisor: DivisorDoc,
}

impl DivisorFile {
    pub fn load(&self) -> Result<Divisor> {
        self.divisor.to_divisor(&self.base.to_ring()?)
    }
}

/// `{"base": ..., "divisors": [{...}, {...}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorPairFile {
    pub base: RingDoc,
    pub divisors: [DivisorDoc; 2],
}

impl DivisorPairFile {
    pub fn load(&self) -> Result<(Divisor, Divisor)> {
        let base = self.base.to_ring()?;
        Ok((self.divisors[0].to_divisor(&base)?, self.divisors[1].to_divisor(&base)?))
    }
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{format_scalar, parse_scalar, Scalar};
use crate::gring::ring::{Monomial, RingSpec};

/// A sparse element of a truncated graded ring.
///
/// Stored terms are nonzero, normalized for the coefficient ring, and have
/// weighted degree at most the ring's cutoff.
#[derive(Clone, Debug)]
pub struct GradedPoly {
    ring: Arc<RingSpec>,
    terms: BTreeMap<Monomial, Scalar>,
}

pub(crate) fn same_ring(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn constant(ring: &Arc<RingSpec>, c: Scalar) -> Self {
        Self::term(ring, ring.unit_monomial(), c)
    }

    pub fn from_i64(ring: &Arc<RingSpec>, n: i64) -> Self {
        Self::constant(ring, Scalar::from_integer(n.into()))
    }

    pub fn term(ring: &Arc<RingSpec>, mono: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(mono, c);
        p
    }

    pub fn var(ring: &Arc<RingSpec>, name: &str) -> Result<Self> {
        let idx = ring.var_index(name)?;
        Ok(Self::var_at(ring, idx))
    }

    pub fn var_at(ring: &Arc<RingSpec>, idx: usize) -> Self {
        Self::term(ring, ring.var_monomial(idx, 1), Scalar::one())
    }

    pub fn from_terms(ring: &Arc<RingSpec>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parses expressions such as `x^2 - 3*a*b + 1/2`.
    pub fn parse(ring: &Arc<RingSpec>, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AlgebraError::Parse("empty polynomial".into()));
        }
        let mut p = Self::zero(ring);
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            if (c == b'+' || c == b'-') && !matches!(prev, b'^' | b'*' | b'/' | b'+' | b'-') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-Scalar::one(), &piece[1..]),
                b'+' => (Scalar::one(), &piece[1..]),
                _ => (Scalar::one(), piece),
            };
            if body.is_empty() {
                return Err(AlgebraError::Parse(format!("dangling sign in `{text}`")));
            }
            let mut coef = sign;
            let mut exps = vec![0u32; ring.nvars()];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(AlgebraError::Parse(format!("empty factor in `{text}`")));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    coef *= parse_scalar(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| AlgebraError::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                exps[ring.var_index(name)?] += exp;
            }
            let coef = ring.coeffs().admit(coef)?;
            p.add_term(ring.monomial(exps)?, coef);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&self.ring.unit_monomial())
    }

    /// Adds `c * mono` in place, dropping it if it is beyond the cutoff.
    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if mono.degree() > self.ring.trunc() || c.is_zero() {
            return;
        }
        let k = self.ring.coeffs();
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                let c = k.normalize(c);
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = k.normalize(e.get() + c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// The degree-`d` homogeneous component.
    pub fn component(&self, d: u32) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Convolution product, discarding everything above the cutoff.
    pub fn try_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let trunc = self.ring.trunc();
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > trunc {
                    break;
                }
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let k = self.ring.coeffs();
        let terms = acc
            .into_iter()
            .filter_map(|(m, c)| {
                let c = k.normalize(c);
                (!c.is_zero()).then_some((m, c))
            })
            .collect();
        Ok(GradedPoly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        let mut out = Self::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_i64(&self, c: i64) -> GradedPoly {
        self.scale(&Scalar::from_integer(c.into()))
    }

    /// Multiplication by a single monomial.
    pub fn shift(&self, mono: &Monomial) -> GradedPoly {
        let trunc = self.ring.trunc();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() + mono.degree() <= trunc)
            .map(|(m, c)| (m.mul(mono), c.clone()))
            .collect();
        GradedPoly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> GradedPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies the ring homomorphism sending each variable of this ring to
    /// its image in `target`. Variables that do not occur may be missing
    /// from `images`.
    pub fn substitute(
        &self,
        images: &HashMap<String, GradedPoly>,
        target: &Arc<RingSpec>,
    ) -> Result<GradedPoly> {
        for img in images.values() {
            if !same_ring(img.ring(), target) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let vars = self.ring.vars();
        let mut powers: HashMap<(usize, u32), GradedPoly> = HashMap::new();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(target, target.coeffs().admit(c.clone())?);
            for (idx, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let key = (idx, e);
                if let std::collections::hash_map::Entry::Vacant(slot) = powers.entry(key) {
                    let img = images
                        .get(&vars[idx].name)
                        .ok_or_else(|| AlgebraError::MissingImage(vars[idx].name.clone()))?;
                    slot.insert(img.pow(e));
                }
                t = &t * &powers[&key];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Maps this element into `target` by matching variable names. Every
    /// variable that occurs must exist in `target`; the gradings need not
    /// agree but usually do.
    pub fn embed(&self, target: &Arc<RingSpec>) -> Result<GradedPoly> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> =
            self.ring.vars().iter().map(|v| target.var_index(&v.name).ok()).collect();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (idx, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[idx]
                    .ok_or_else(|| AlgebraError::UnknownVariable(self.ring.vars()[idx].name.clone()))?;
                exps[j] += e;
            }
            out.add_term(target.monomial(exps)?, target.coeffs().admit(c.clone())?);
        }
        Ok(out)
    }

    /// Variables (by index) that occur with nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    fn check_ring(&self, other: &GradedPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = self.ring.format_monomial(m);
            if m.is_one() {
                f.write_str(&format_scalar(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), mono)?;
            }
        }
        Ok(())
    }
}

// The operator impls panic on mismatched rings; the `try_*` methods are the
// checked entry points.
impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.ring.coeffs().normalize(-c.clone())))
                .collect(),
        }
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: GradedPoly) -> GradedPoly {
        &self + &rhs
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: GradedPoly) -> GradedPoly {
        &self - &rhs
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

/// Checked sum, the public face of `+`.
pub fn ring_add(a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly> {
    a.try_add(b)
}

/// Checked truncated product, the public face of `*`.
pub fn ring_mul(a: &GradedPoly, b: &GradedPoly) -> Result<GradedPoly> {
    a.try_mul(b)
}

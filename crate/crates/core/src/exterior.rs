//! Tensor and exterior powers of `O_D = O_S[x]/f(x)` on the monomial
//! basis, the maps `μ_k`, `ψ_k`, `alt_k`, the module structure over
//! `O_{Sub_k(D)}` and the isomorphism `φ` onto `O_{Sub_k(D)}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{CoeffRing, Scalar};
use crate::gring::matrix::PolyMatrix;
use crate::gring::poly::{same_ring, GradedPoly};
use crate::gring::ring::{Monomial, RingSpec};
use crate::gring::upoly::UniPoly;
use crate::oracle::{degree_span_elements, ideal_degree_span, DegreewiseCheck, Echelon};
use crate::pkd::{coordinates, PkdContext, SubRing};

/// `Σ coef_α x^{α_0} ⊗ ... ⊗ x^{α_{k-1}}` with coefficients in `O_S` and
/// `0 <= α_i < d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    base: Arc<RingSpec>,
    d: usize,
    k: usize,
    terms: BTreeMap<Vec<u32>, GradedPoly>,
}

/// `Σ coef_β x^{β_0} ∧ ... ∧ x^{β_{k-1}}` with `d > β_0 > ... > β_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeElement {
    base: Arc<RingSpec>,
    d: usize,
    k: usize,
    terms: BTreeMap<Vec<u32>, GradedPoly>,
}

fn add_into(terms: &mut BTreeMap<Vec<u32>, GradedPoly>, key: Vec<u32>, c: GradedPoly) {
    match terms.get_mut(&key) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            if !c.is_zero() {
                terms.insert(key, c);
            }
        }
    }
}

fn check_indices(d: usize, k: usize, idx: &[u32]) -> Result<()> {
    if idx.len() != k || idx.iter().any(|&a| a as usize >= d) {
        return Err(AlgebraError::InvalidArgument(format!("index {idx:?} is not in [0, {d})^{k}")));
    }
    Ok(())
}

/// All permutations of `0..k` with their signs.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    permute(&mut cur, 0, false, &mut out);
    out
}

fn permute(cur: &mut Vec<usize>, start: usize, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
    if start + 1 >= cur.len() {
        out.push((cur.clone(), odd));
        return;
    }
    for i in start..cur.len() {
        cur.swap(start, i);
        permute(cur, start + 1, odd ^ (i != start), out);
        cur.swap(start, i);
    }
}

/// Sorts into strictly decreasing order, returning the permutation parity,
/// or `None` on a repeated index.
fn sort_decreasing(idx: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

impl TensorElement {
    pub fn zero(base: &Arc<RingSpec>, d: usize, k: usize) -> Self {
        TensorElement { base: base.clone(), d, k, terms: BTreeMap::new() }
    }

    /// The pure tensor `x^{α_0} ⊗ ... ⊗ x^{α_{k-1}}`.
    pub fn basis(base: &Arc<RingSpec>, d: usize, alpha: &[u32]) -> Result<Self> {
        check_indices(d, alpha.len(), alpha)?;
        let mut t = Self::zero(base, d, alpha.len());
        t.terms.insert(alpha.to_vec(), GradedPoly::one(base));
        Ok(t)
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, c: GradedPoly) -> Result<()> {
        check_indices(self.d, self.k, &alpha)?;
        if !same_ring(c.ring(), &self.base) {
            return Err(AlgebraError::RingMismatch);
        }
        add_into(&mut self.terms, alpha, c);
        Ok(())
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, GradedPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> GradedPoly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| GradedPoly::zero(&self.base))
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            add_into(&mut out.terms, a.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GradedPoly) -> TensorElement {
        let mut out = Self::zero(&self.base, self.d, self.k);
        for (a, v) in &self.terms {
            add_into(&mut out.terms, a.clone(), v * c);
        }
        out
    }

    /// The action `σ.(a_0 ⊗ ... ) = a_{σ^{-1}(0)} ⊗ ...`.
    pub fn act(&self, sigma: &[usize]) -> TensorElement {
        let mut out = Self::zero(&self.base, self.d, self.k);
        for (a, c) in &self.terms {
            let mut moved = vec![0; self.k];
            for (i, &s) in sigma.iter().enumerate() {
                moved[s] = a[i];
            }
            add_into(&mut out.terms, moved, c.clone());
        }
        out
    }
}

impl WedgeElement {
    pub fn zero(base: &Arc<RingSpec>, d: usize, k: usize) -> Self {
        WedgeElement { base: base.clone(), d, k, terms: BTreeMap::new() }
    }

    /// `x^{β_0} ∧ ... ∧ x^{β_{k-1}}` in normal form; zero if an index
    /// repeats.
    pub fn basis(base: &Arc<RingSpec>, d: usize, beta: &[u32]) -> Result<Self> {
        let mut w = Self::zero(base, d, beta.len());
        w.add_term(beta.to_vec(), GradedPoly::one(base))?;
        Ok(w)
    }

    /// Adds `c` times the wedge on `beta`, normalizing the order.
    pub fn add_term(&mut self, beta: Vec<u32>, c: GradedPoly) -> Result<()> {
        check_indices(self.d, self.k, &beta)?;
        if !same_ring(c.ring(), &self.base) {
            return Err(AlgebraError::RingMismatch);
        }
        if let Some((key, odd)) = sort_decreasing(&beta) {
            add_into(&mut self.terms, key, if odd { -&c } else { c });
        }
        Ok(())
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, GradedPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, beta: &[u32]) -> GradedPoly {
        self.terms.get(beta).cloned().unwrap_or_else(|| GradedPoly::zero(&self.base))
    }

    pub fn add(&self, other: &WedgeElement) -> WedgeElement {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            add_into(&mut out.terms, a.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GradedPoly) -> WedgeElement {
        let mut out = Self::zero(&self.base, self.d, self.k);
        for (a, v) in &self.terms {
            add_into(&mut out.terms, a.clone(), v * c);
        }
        out
    }
}

/// All index vectors in `[0, d)^k`.
pub fn tensor_basis(d: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|a: Vec<u32>| (0..d as u32).map(move |e| [a.clone(), vec![e]].concat()))
            .collect();
    }
    out
}

/// Strictly decreasing index vectors: the set `A_0`.
pub fn wedge_basis(d: usize, k: usize) -> Vec<Vec<u32>> {
    tensor_basis(d, k).into_iter().filter(|a| a.windows(2).all(|w| w[0] > w[1])).collect()
}

pub fn mu_k(t: &TensorElement) -> WedgeElement {
    let mut out = WedgeElement::zero(&t.base, t.d, t.k);
    for (a, c) in &t.terms {
        if let Some((key, odd)) = sort_decreasing(a) {
            add_into(&mut out.terms, key, if odd { -c } else { c.clone() });
        }
    }
    out
}

pub fn psi_k(w: &WedgeElement) -> TensorElement {
    let mut out = TensorElement::zero(&w.base, w.d, w.k);
    let perms = permutations(w.k);
    for (b, c) in &w.terms {
        for (sigma, odd) in &perms {
            let key: Vec<u32> = sigma.iter().map(|&s| b[s]).collect();
            add_into(&mut out.terms, key, if *odd { -c } else { c.clone() });
        }
    }
    out
}

pub fn alt_k(t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(&t.base, t.d, t.k);
    for (sigma, odd) in permutations(t.k) {
        let moved = t.act(&sigma);
        for (a, c) in moved.terms {
            add_into(&mut out.terms, a, if odd { -&c } else { c });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub d: usize,
    pub k: usize,
    pub tensors: usize,
    pub wedges: usize,
    /// `ψ_k μ_k = alt_k` on every basis tensor
    pub commutes: bool,
    /// `ψ_k μ_k x^α` has coefficient 1 at `α` and 0 at the rest of `A_0`
    pub triangular: bool,
    /// `μ_k ψ_k = k!` on every basis wedge
    pub mu_psi_factorial: bool,
}

/// Checks the square `ψ_k μ_k = alt_k` on the full tensor basis over `Z`.
pub fn check_cross(d: usize, k: usize) -> Result<CrossReport> {
    let base = RingSpec::new(CoeffRing::Integers, vec![], 0)?;
    let a0 = wedge_basis(d, k);
    let commutes = tensor_basis(d, k).par_iter().all(|a| {
        let t = TensorElement::basis(&base, d, a).expect("index in range");
        psi_k(&mu_k(&t)) == alt_k(&t)
    });
    let triangular = a0.iter().all(|a| {
        let t = psi_k(&mu_k(&TensorElement::basis(&base, d, a).expect("index in range")));
        a0.iter().all(|b| {
            let c = t.coefficient(b);
            if a == b {
                c.is_one()
            } else {
                c.is_zero()
            }
        })
    });
    let fact: i64 = (1..=k as i64).product();
    let mu_psi_factorial = a0.iter().all(|b| {
        let w = WedgeElement::basis(&base, d, b).expect("index in range");
        mu_k(&psi_k(&w)) == w.scale(&GradedPoly::from_i64(&base, fact))
    });
    Ok(CrossReport { d, k, tensors: d.pow(k as u32), wedges: a0.len(), commutes, triangular, mu_psi_factorial })
}

/// An element of `O_{D^k}` (reduced) as a tensor.
pub fn tensor_from_poly(ctx: &PkdContext, p: &GradedPoly) -> Result<TensorElement> {
    let base = ctx.divisor().base();
    let nb = base.nvars();
    let dk = ctx.dk_quotient()?;
    let p = dk.reduce(p)?;
    let mut t = TensorElement::zero(base, ctx.d(), ctx.k());
    for (m, c) in p.terms() {
        let s = base.monomial(m.exps()[..nb].to_vec())?;
        t.add_term(m.exps()[nb..].to_vec(), GradedPoly::term(base, s, c.clone()))?;
    }
    Ok(t)
}

pub fn tensor_to_poly(ctx: &PkdContext, t: &TensorElement) -> Result<GradedPoly> {
    let ring = ctx.ring();
    let mut out = GradedPoly::zero(ring);
    for (a, c) in &t.terms {
        let mut exps = vec![0; ring.nvars()];
        for (i, &e) in a.iter().enumerate() {
            exps[ctx.x_index(i)] = e;
        }
        let x = ring.monomial_unchecked(exps);
        if x.degree() > ring.trunc() {
            continue;
        }
        out = out.try_add(&c.embed(ring)?.shift(&x))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct KillRow {
    pub degree: u32,
    pub spanning: usize,
    pub killed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MuKillsReport {
    pub rows: Vec<KillRow>,
    pub check: DegreewiseCheck,
}

/// `μ_k` of every degreewise spanning element of `J_k O_{D^k}` vanishes.
pub fn mu_kills_jk(ctx: &PkdContext, up_to: u32) -> Result<MuKillsReport> {
    let dk = ctx.dk_quotient()?;
    let jk = ctx.jk()?;
    let rows: Vec<KillRow> = (0..=up_to)
        .into_par_iter()
        .map(|e| {
            let elems = degree_span_elements(&jk, &dk, e)?;
            let mut killed = true;
            for g in &elems {
                killed &= mu_k(&tensor_from_poly(ctx, g)?).is_zero();
            }
            Ok(KillRow { degree: e, spanning: elems.len(), killed })
        })
        .collect::<Result<_>>()?;
    let flags: Vec<(u32, bool)> = rows.iter().map(|r| (r.degree, r.killed)).collect();
    Ok(MuKillsReport { rows, check: DegreewiseCheck::from_flags(&flags) })
}

/// The lift of `w` sending each basis wedge to its own decreasing tensor.
pub fn canonical_lift(w: &WedgeElement) -> TensorElement {
    let mut t = TensorElement::zero(&w.base, w.d, w.k);
    t.terms = w.terms.clone();
    t
}

/// `μ_k(s t)` for a tensor `t`, with `s ∈ O_{D^k}` symmetric.
pub fn sub_action_on_lift(ctx: &PkdContext, s: &GradedPoly, t: &TensorElement) -> Result<WedgeElement> {
    check_symmetric(ctx, s)?;
    let prod = s.try_mul(&tensor_to_poly(ctx, t)?)?;
    Ok(mu_k(&tensor_from_poly(ctx, &prod)?))
}

/// The action of a symmetric `s ∈ O_{D^k}` on `λ^k O_D`.
pub fn sub_action(ctx: &PkdContext, s: &GradedPoly, w: &WedgeElement) -> Result<WedgeElement> {
    sub_action_on_lift(ctx, s, &canonical_lift(w))
}

fn check_symmetric(ctx: &PkdContext, s: &GradedPoly) -> Result<()> {
    let dk = ctx.dk_quotient()?;
    let s = dk.reduce(s)?;
    let n = ctx.ring().nvars();
    for i in 0..ctx.k().saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(ctx.x_index(i), ctx.x_index(i + 1));
        let moved = GradedPoly::from_terms(ctx.ring(), s.terms().map(|(m, c)| (m.permuted(&perm), c.clone())));
        if dk.reduce(&moved)? != s {
            return Err(AlgebraError::InvalidArgument(format!("{s} is not symmetric")));
        }
    }
    Ok(())
}

/// Coefficients of `x^n mod h` on `x^{k-1}, ..., x^0`.
fn reduced_power(sub: &SubRing, n: u32, cache: &mut HashMap<u32, Vec<GradedPoly>>) -> Result<Vec<GradedPoly>> {
    if let Some(v) = cache.get(&n) {
        return Ok(v.clone());
    }
    let k = sub.k();
    let rem = UniPoly::power(sub.ring(), n as usize).rem_monic(sub.h())?;
    let row: Vec<GradedPoly> = (0..k).map(|j| rem.coeff(k - 1 - j)).collect();
    cache.insert(n, row.clone());
    Ok(row)
}

/// The coefficient of `φ(w)` on `x^{k-1} ∧ ... ∧ x^0`, as a representative
/// in `O_S[c_1..c_k]` of a class in `O_{Sub_k(D)}`.
pub fn phi_map(sub: &SubRing, w: &WedgeElement) -> Result<GradedPoly> {
    let ring = sub.ring();
    let k = sub.k();
    let mut cache = HashMap::new();
    let mut out = GradedPoly::zero(ring);
    for (beta, c) in &w.terms {
        let mut entries = Vec::with_capacity(k * k);
        for &b in beta {
            entries.extend(reduced_power(sub, b, &mut cache)?);
        }
        let det = PolyMatrix::new(ring, k, k, entries)?.det()?;
        out = out.try_add(&det.try_mul(&c.embed(ring)?)?)?;
    }
    Ok(out)
}

/// `γ`: the complement of `β` in `0..d`, increasing.
pub fn complement(d: usize, beta: &[u32]) -> Result<Vec<u32>> {
    if sort_decreasing(beta).is_none_or(|(s, _)| s != beta) || beta.iter().any(|&b| b as usize >= d) {
        return Err(AlgebraError::InvalidArgument(format!("{beta:?} is not strictly decreasing below {d}")));
    }
    Ok((0..d as u32).filter(|i| !beta.contains(i)).collect())
}

/// `det(c_{k+i-γ_j})_{0<=i,j<d-k}` without any sign.
pub fn phi_determinant_unsigned(sub: &SubRing, d: usize, beta: &[u32]) -> Result<GradedPoly> {
    let gamma = complement(d, beta)?;
    let n = gamma.len();
    let k = sub.k() as isize;
    let entries = (0..n)
        .flat_map(|i| gamma.iter().map(move |&g| k + i as isize - g as isize))
        .map(|idx| sub.c(idx))
        .collect();
    PolyMatrix::new(sub.ring(), n, n, entries)?.det()
}

/// `(-1)^{|β| - k(k-1)/2}`: the sign relating the determinant to `φ` when
/// `h(x) = Σ c_i x^{k-i}`.
pub fn phi_sign(beta: &[u32]) -> bool {
    let k = beta.len() as u32;
    let weight: u32 = beta.iter().sum::<u32>() - k * k.saturating_sub(1) / 2;
    weight % 2 == 1
}

/// The closed form of `φ(x^β)`: the determinant with [`phi_sign`] applied.
pub fn phi_determinant(sub: &SubRing, d: usize, beta: &[u32]) -> Result<GradedPoly> {
    let det = phi_determinant_unsigned(sub, d, beta)?;
    Ok(if phi_sign(beta) { -&det } else { det })
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiFormulaReport {
    pub d: usize,
    pub k: usize,
    /// `phi_map / phi_determinant` when it is the same unit for every `β`
    pub global_sign: Option<i8>,
    /// `phi_map / det` per `β` for the unsigned determinant
    pub unsigned_signs: Vec<(Vec<u32>, i8)>,
    /// single sign relating `phi_map` to the determinant after
    /// `c_i -> (-1)^i c_i`, if one exists
    pub alternating_sign: Option<i8>,
}

fn unit_ratio(a: &GradedPoly, b: &GradedPoly) -> Option<i8> {
    if a == b {
        Some(1)
    } else if *a == -b {
        Some(-1)
    } else {
        None
    }
}

fn common_sign(signs: impl IntoIterator<Item = Option<i8>>) -> Option<i8> {
    let mut out = None;
    for s in signs {
        match (s?, out) {
            (s, None) => out = Some(s),
            (s, Some(t)) if s == t => {}
            _ => return None,
        }
    }
    out
}

/// Compares `phi_map` with the determinant formula on every basis wedge.
pub fn phi_formula_check(sub: &SubRing, d: usize) -> Result<PhiFormulaReport> {
    let k = sub.k();
    let base = sub.base().clone();
    let ring = sub.ring().clone();
    let mut flip: HashMap<String, GradedPoly> = (1..=k)
        .map(|i| (format!("c{i}"), if i % 2 == 1 { -&sub.c(i as isize) } else { sub.c(i as isize) }))
        .collect();
    for (i, v) in base.vars().iter().enumerate() {
        flip.insert(v.name.clone(), GradedPoly::var_at(&ring, i));
    }
    let mut signed = Vec::new();
    let mut unsigned_signs = Vec::new();
    let mut alternating = Vec::new();
    for beta in wedge_basis(d, k) {
        let phi = phi_map(sub, &WedgeElement::basis(&base, d, &beta)?)?;
        let raw = phi_determinant_unsigned(sub, d, &beta)?;
        signed.push(unit_ratio(&phi, &phi_determinant(sub, d, &beta)?));
        unsigned_signs.push((beta.clone(), unit_ratio(&phi, &raw).unwrap_or(0)));
        alternating.push(unit_ratio(&phi, &raw.substitute(&flip, &ring)?));
    }
    Ok(PhiFormulaReport {
        d,
        k,
        global_sign: common_sign(signed),
        unsigned_signs,
        alternating_sign: common_sign(alternating),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiIsoRow {
    pub degree: u32,
    pub wedges: usize,
    pub sub_rank: usize,
    pub surjective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiIsoReport {
    pub d: usize,
    pub k: usize,
    pub rows: Vec<PhiIsoRow>,
    pub passed: bool,
}

/// Degree of `x^β` under which `φ` is homogeneous of degree zero.
pub fn wedge_degree(beta: &[u32]) -> u32 {
    let k = beta.len() as u32;
    beta.iter().sum::<u32>() - k * k.saturating_sub(1) / 2
}

/// In each degree over `Z`, the images `s φ(x^β)` together with the
/// degree-`e` part of the ideal span the whole degree-`e` lattice, and the
/// quotient is free of rank equal to the number of such `s x^β`.
pub fn verify_phi_iso(sub: &SubRing, d: usize, up_to: u32) -> Result<PhiIsoReport> {
    let k = sub.k();
    let base = sub.base().clone();
    let ring = sub.ring().clone();
    let wedges = wedge_basis(d, k);
    let phis: Vec<(u32, GradedPoly)> = wedges
        .iter()
        .map(|b| Ok((wedge_degree(b), phi_map(sub, &WedgeElement::basis(&base, d, b)?)?)))
        .collect::<Result<_>>()?;
    let rows: Vec<PhiIsoRow> = (0..=up_to)
        .into_par_iter()
        .map(|e| {
            let span = ideal_degree_span(sub.ideal(), None, e)?;
            let index: HashMap<&Monomial, usize> = span.basis().iter().enumerate().map(|(i, m)| (m, i)).collect();
            let n = index.len();
            let mut rows: Vec<Vec<Scalar>> = span
                .echelon()
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| Scalar::from_integer(x.clone())).collect())
                .collect();
            let mut count = 0;
            for (w, phi) in &phis {
                if *w > e {
                    continue;
                }
                for s in base.degree_basis(e - w)? {
                    let s = GradedPoly::term(&base, s, Scalar::one()).embed(&ring)?;
                    rows.push(coordinates(&index, n, &phi.try_mul(&s)?)?);
                    count += 1;
                }
            }
            let all = Echelon::from_rows(ring.coeffs(), n, rows)?;
            let surjective = all.rank() == n && all.is_saturated() && all.rows().iter().all(|r| unit_pivot(r));
            let q = span.quotient_rank();
            let injective = q.torsion.is_empty() && q.free == count;
            Ok(PhiIsoRow { degree: e, wedges: count, sub_rank: q.free, surjective, injective })
        })
        .collect::<Result<_>>()?;
    let passed = rows.iter().all(|r| r.surjective && r.injective);
    Ok(PhiIsoReport { d, k, rows, passed })
}

fn unit_pivot(row: &[BigInt]) -> bool {
    row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_one() || *x == BigInt::from(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::Divisor;

    fn z() -> Arc<RingSpec> {
        RingSpec::new(CoeffRing::Integers, vec![], 0).unwrap()
    }

    #[test]
    fn mu_signs() {
        let b = z();
        let t10 = TensorElement::basis(&b, 2, &[1, 0]).unwrap();
        let t01 = TensorElement::basis(&b, 2, &[0, 1]).unwrap();
        let t00 = TensorElement::basis(&b, 2, &[0, 0]).unwrap();
        let w = WedgeElement::basis(&b, 2, &[1, 0]).unwrap();
        assert_eq!(mu_k(&t10), w);
        assert_eq!(mu_k(&t01), w.scale(&GradedPoly::from_i64(&b, -1)));
        assert!(mu_k(&t00).is_zero());
        assert_eq!(psi_k(&w), t10.add(&t01.scale(&GradedPoly::from_i64(&b, -1))));
        assert_eq!(alt_k(&t10), psi_k(&w));
        assert!(alt_k(&t00).is_zero());
    }

    #[test]
    fn cross_small() {
        for d in 1..=4 {
            for k in 1..=3 {
                let r = check_cross(d, k).unwrap();
                assert!(r.commutes && r.triangular && r.mu_psi_factorial, "{r:?}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        let base = RingSpec::new(CoeffRing::Integers, vec![], 6).unwrap();
        let sub = SubRing::new(&Divisor::point_power(&base, 3), 2).unwrap();
        let r = sub.ring();
        let top = WedgeElement::basis(&base, 3, &[1, 0]).unwrap();
        assert!(phi_map(&sub, &top).unwrap().is_one());
        let w = WedgeElement::basis(&base, 3, &[2, 0]).unwrap();
        assert_eq!(phi_map(&sub, &w).unwrap(), GradedPoly::parse(r, "-c1").unwrap());
        assert_eq!(phi_determinant_unsigned(&sub, 3, &[2, 0]).unwrap(), GradedPoly::parse(r, "c1").unwrap());
        assert_eq!(phi_determinant(&sub, 3, &[2, 0]).unwrap(), phi_map(&sub, &w).unwrap());

        let sub4 = SubRing::new(&Divisor::point_power(&base, 4), 2).unwrap();
        // c_3 vanishes for k = 2
        let det = phi_determinant_unsigned(&sub4, 4, &[3, 2]).unwrap();
        assert_eq!(det, GradedPoly::parse(sub4.ring(), "c2^2").unwrap());
        let w = WedgeElement::basis(&base, 4, &[3, 2]).unwrap();
        assert_eq!(phi_map(&sub4, &w).unwrap(), det);
    }

    #[test]
    fn phi_degree_one() {
        let base = RingSpec::new(CoeffRing::Integers, vec![], 4).unwrap();
        let sub = SubRing::new(&Divisor::point_power(&base, 2), 1).unwrap();
        let w = WedgeElement::basis(&base, 2, &[1]).unwrap();
        assert_eq!(phi_map(&sub, &w).unwrap(), GradedPoly::parse(sub.ring(), "-c1").unwrap());
    }
}

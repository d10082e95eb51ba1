//! The universal rings of pairs of divisors: the locus `Int_r` where the
//! intersection has rank at least `r`, the locus `Sub_r` of common
//! subdivisors of degree `r`, and the map `π: Sub_r -> Int_r`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::divisor::{presentation_sylvester, Divisor};
use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{CoeffRing, Scalar};
use crate::gring::matrix::PolyMatrix;
use crate::gring::poly::GradedPoly;
use crate::gring::ring::{Monomial, RingSpec, Variable};
use crate::oracle::{
    change_coeffs, ideal_degree_span, trivial_quotient, DegreewiseCheck, GradedLattice, IdealGens,
};
use crate::series::PowerSeries;

/// Parameters `(d0, d1, r)` with `n = d0 - r`, `m = d1 - r`, the ambient
/// ring `Z[u_1..u_{d0}, v_1..v_{d1}]` and the target ring
/// `Z[a_1..a_n, b_1..b_m, c_1..c_r]`, all truncated at `trunc`.
#[derive(Clone, Debug)]
pub struct UniversalSetup {
    pub d0: usize,
    pub d1: usize,
    pub r: usize,
    pub n: usize,
    pub m: usize,
    ambient: Arc<RingSpec>,
    target: Arc<RingSpec>,
}

fn graded_vars(prefix: &str, count: usize) -> Vec<Variable> {
    (1..=count).map(|i| Variable::new(format!("{prefix}{i}"), i as u32)).collect()
}

impl UniversalSetup {
    pub fn new(d0: usize, d1: usize, r: usize, trunc: u32) -> Result<Self> {
        if r > d0.min(d1) {
            return Err(AlgebraError::InvalidArgument(format!("r = {r} exceeds min(d0, d1) = {}", d0.min(d1))));
        }
        let (n, m) = (d0 - r, d1 - r);
        let mut vars = graded_vars("u", d0);
        vars.extend(graded_vars("v", d1));
        let ambient = RingSpec::new(CoeffRing::Integers, vars, trunc)?;
        let mut tvars = graded_vars("a", n);
        tvars.extend(graded_vars("b", m));
        tvars.extend(graded_vars("c", r));
        let target = RingSpec::new(CoeffRing::Integers, tvars, trunc)?;
        Ok(UniversalSetup { d0, d1, r, n, m, ambient, target })
    }

    pub fn ambient(&self) -> &Arc<RingSpec> {
        &self.ambient
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }

    pub fn trunc(&self) -> u32 {
        self.ambient.trunc()
    }

    fn u(&self, i: usize) -> GradedPoly {
        GradedPoly::var_at(&self.ambient, i - 1)
    }

    fn v(&self, j: usize) -> GradedPoly {
        GradedPoly::var_at(&self.ambient, self.d0 + j - 1)
    }

    /// `f0 = Σ u_i x^{d0-i}`.
    pub fn f0(&self) -> Divisor {
        Divisor::new(&self.ambient, (1..=self.d0).map(|i| self.u(i)).collect()).expect("tautological divisor")
    }

    /// `f1 = Σ v_j x^{d1-j}`.
    pub fn f1(&self) -> Divisor {
        Divisor::new(&self.ambient, (1..=self.d1).map(|j| self.v(j)).collect()).expect("tautological divisor")
    }

    /// Whether an ambient monomial only involves `u_1..u_n` and the `v`s.
    fn in_free_base(&self, m: &Monomial) -> bool {
        (self.n..self.d0).all(|i| m.exp(i) == 0)
    }

    fn free_base_gradings(&self) -> Vec<usize> {
        (1..=self.n).chain(1..=self.d1).collect()
    }
}

/// The minors of size `d0 + d1 - r + 1` of the Sylvester matrix of the
/// tautological divisors.
pub fn int_ideal_universal(setup: &UniversalSetup) -> IdealGens {
    let syl = presentation_sylvester(&setup.f0(), &setup.f1()).expect("same base");
    let size = setup.d0 + setup.d1 + 1 - setup.r;
    IdealGens::new(&setup.ambient, syl.matrix().minors(size)).expect("minors live in the ambient ring")
}

/// Exponent vectors `α` on `u_{n+1}, ..., u_{d0}` with `|α| <= m`.
fn basis_exponents(n: usize, r: usize, m: usize) -> Vec<Vec<u32>> {
    fn rec(idx: usize, r: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == r {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(idx + 1, r, left - e, cur, out);
            cur.pop();
        }
    }
    let _ = n;
    let mut out = Vec::new();
    rec(0, r, m as u32, &mut Vec::new(), &mut out);
    out
}

/// Weighted degrees of the free generators of `O_{Int_r}` over the free
/// base ring, one entry per monomial.
pub fn int_basis_degrees(d0: usize, d1: usize, r: usize) -> Vec<u32> {
    let n = d0 - r;
    basis_exponents(n, r, d1 - r)
        .iter()
        .map(|a| a.iter().enumerate().map(|(i, &e)| e * (n + 1 + i) as u32).sum())
        .collect()
}

/// The monomials `∏_{i=n+1}^{d0} u_i^{α_i}`, `|α| <= d1 - r`, that fit
/// under the truncation, in ring order.
pub fn int_basis_monomials(setup: &UniversalSetup) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = basis_exponents(setup.n, setup.r, setup.m)
        .into_iter()
        .filter_map(|a| {
            let mut exps = vec![0u32; setup.ambient.nvars()];
            exps[setup.n..setup.d0].copy_from_slice(&a);
            setup.ambient.monomial(exps).ok()
        })
        .collect();
    out.sort();
    out
}

/// Expected rank of `O_{Int_r}` in degree `d` from the basis description.
pub fn expected_int_rank(setup: &UniversalSetup, d: u32) -> u64 {
    let len = d as usize + 1;
    let free = PowerSeries::free(len, &setup.free_base_gradings());
    let mut total = BigInt::zero();
    for b in int_basis_degrees(setup.d0, setup.d1, setup.r) {
        if b <= d {
            total += free.coeff((d - b) as usize);
        }
    }
    u64::try_from(total).expect("rank fits in u64")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub degree: u32,
    pub expected: u64,
    /// Free rank of the quotient, per coefficient ring label.
    pub computed: BTreeMap<String, usize>,
    /// Nontrivial invariant factors over Z (must be empty).
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntBasisReport {
    pub d0: usize,
    pub d1: usize,
    pub r: usize,
    pub trunc: u32,
    pub rows: Vec<RankRow>,
    pub passed: bool,
    pub first_discrepancy: Option<u32>,
}

/// Compares the graded ranks of `Z[u, v] / I` with the count predicted by
/// the monomial basis, over each requested coefficient ring.
pub fn verify_int_basis(setup: &UniversalSetup, max_degree: u32, coeffs: &[CoeffRing]) -> Result<IntBasisReport> {
    if max_degree > setup.trunc() {
        return Err(AlgebraError::DegreeOutOfRange { degree: max_degree, trunc: setup.trunc() });
    }
    let ideal = int_ideal_universal(setup);
    let ideals: Vec<(CoeffRing, IdealGens)> = coeffs
        .iter()
        .map(|&k| Ok((k, change_coeffs(&ideal, k)?)))
        .collect::<Result<_>>()?;
    let rows = (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let mut computed = BTreeMap::new();
            let mut torsion = Vec::new();
            for (k, i) in &ideals {
                let q = ideal_degree_span(i, None, d)?.quotient_rank();
                if *k == CoeffRing::Integers {
                    torsion = q.torsion.iter().map(|t| t.to_string()).collect();
                }
                computed.insert(k.label(), q.free);
            }
            Ok(RankRow { degree: d, expected: expected_int_rank(setup, d), computed, torsion })
        })
        .collect::<Result<Vec<_>>>()?;
    let first = rows
        .iter()
        .find(|row| !row.torsion.is_empty() || row.computed.values().any(|&c| c as u64 != row.expected))
        .map(|row| row.degree);
    Ok(IntBasisReport {
        d0: setup.d0,
        d1: setup.d1,
        r: setup.r,
        trunc: setup.trunc(),
        rows,
        passed: first.is_none(),
        first_discrepancy: first,
    })
}

/// Substitution data for `π*`, sending `f0` to `f h` and `f1` to `g h`.
#[derive(Clone, Debug)]
pub struct PiStar {
    pub images: BTreeMap<String, GradedPoly>,
    target: Arc<RingSpec>,
}

impl PiStar {
    pub fn apply(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let map: HashMap<String, GradedPoly> = self.images.clone().into_iter().collect();
        p.substitute(&map, &self.target)
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }
}

/// Coefficient `Σ_{j+k=i} x_j y_k` of a product of two monic polynomials
/// written in descending coefficient form.
fn product_coeff(x: &[GradedPoly], y: &[GradedPoly], i: usize) -> GradedPoly {
    let ring = x[0].ring().clone();
    let mut acc = GradedPoly::zero(&ring);
    for j in 0..=i {
        if j < x.len() && i - j < y.len() {
            acc = &acc + &(&x[j] * &y[i - j]);
        }
    }
    acc
}

fn descending(ring: &Arc<RingSpec>, prefix: usize, count: usize) -> Vec<GradedPoly> {
    std::iter::once(GradedPoly::one(ring))
        .chain((0..count).map(|i| GradedPoly::var_at(ring, prefix + i)))
        .collect()
}

/// `u_i ↦ Σ a_j c_k`, `v_j ↦ Σ b_j c_k` (sums over `j + k = i`).
pub fn pi_star(setup: &UniversalSetup) -> PiStar {
    let t = &setup.target;
    let a = descending(t, 0, setup.n);
    let b = descending(t, setup.n, setup.m);
    let c = descending(t, setup.n + setup.m, setup.r);
    let mut images = BTreeMap::new();
    for i in 1..=setup.d0 {
        images.insert(format!("u{i}"), product_coeff(&a, &c, i));
    }
    for j in 1..=setup.d1 {
        images.insert(format!("v{j}"), product_coeff(&b, &c, j));
    }
    PiStar { images, target: t.clone() }
}

/// Whether `π*` sends every generator of the `Int_r` ideal to zero.
pub fn pi_star_kills_ideal(setup: &UniversalSetup) -> Result<bool> {
    let pi = pi_star(setup);
    for g in int_ideal_universal(setup).gens() {
        if !pi.apply(g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitMonoRow {
    pub degree: u32,
    /// Number of spanning products in this degree.
    pub count: usize,
    /// Rank over Q of their images.
    pub rank: usize,
    /// Whether the images span a direct summand over Z.
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitMonoReport {
    pub d0: usize,
    pub d1: usize,
    pub r: usize,
    pub trunc: u32,
    pub rows: Vec<SplitMonoRow>,
    pub passed: bool,
    pub first_failing_degree: Option<u32>,
}

/// The products (free-base monomial) × (basis monomial) of degree `d`.
fn spanning_products(setup: &UniversalSetup, d: u32) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    for b in int_basis_monomials(setup) {
        if b.degree() > d {
            continue;
        }
        for m in setup.ambient.degree_basis(d - b.degree())? {
            if setup.in_free_base(&m) {
                out.push(m.mul(&b));
            }
        }
    }
    Ok(out)
}

/// Checks degreewise that `π*` is injective on the span of the basis
/// products: their images are linearly independent over Q.
pub fn verify_pi_split_mono(setup: &UniversalSetup, max_degree: u32) -> Result<SplitMonoReport> {
    if max_degree > setup.trunc() {
        return Err(AlgebraError::DegreeOutOfRange { degree: max_degree, trunc: setup.trunc() });
    }
    let pi = pi_star(setup);
    let rows = (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let monos = spanning_products(setup, d)?;
            let images = monos
                .iter()
                .map(|m| pi.apply(&GradedPoly::term(&setup.ambient, m.clone(), Scalar::one())))
                .collect::<Result<Vec<_>>>()?;
            let basis = setup.target.degree_basis(d)?;
            let z = GradedLattice::from_elements(&setup.target, d, basis.clone(), &images)?;
            let qt = setup.target.with_coeffs(CoeffRing::Rationals);
            let qimages = images.iter().map(|p| p.embed(&qt)).collect::<Result<Vec<_>>>()?;
            let q = GradedLattice::from_elements(&qt, d, basis, &qimages)?;
            Ok(SplitMonoRow { degree: d, count: monos.len(), rank: q.rank(), saturated: z.echelon().is_saturated() })
        })
        .collect::<Result<Vec<_>>>()?;
    let first = rows.iter().find(|r| r.rank != r.count).map(|r| r.degree);
    Ok(SplitMonoReport {
        d0: setup.d0,
        d1: setup.d1,
        r: setup.r,
        trunc: setup.trunc(),
        rows,
        passed: first.is_none(),
        first_failing_degree: first,
    })
}

/// Lexicographic order with `u_1 << ... << u_{n+r}`: `u^α < u^β` when, at
/// the highest index where they differ, `α_i < β_i`.
pub fn schur_order(a: &Monomial, b: &Monomial) -> Ordering {
    for i in (0..a.exps().len()).rev() {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn check_gamma(r: usize, gamma: &[usize]) -> Result<()> {
    if gamma.is_empty() {
        return Err(AlgebraError::InvalidArgument("γ is empty".into()));
    }
    let m = gamma.len() - 1;
    if gamma.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AlgebraError::InvalidArgument(format!("γ = {gamma:?} is not strictly increasing")));
    }
    if gamma[m] >= m + r {
        return Err(AlgebraError::InvalidArgument(format!("γ = {gamma:?} leaves 0..{}", m + r)));
    }
    Ok(())
}

/// The ring `Z[u_1..u_{n+r}]`, `deg u_i = i`, with room for every Schur
/// determinant of size `size`.
pub fn schur_ring(n: usize, r: usize, size: usize) -> Arc<RingSpec> {
    let trunc = (size * (n + r)) as u32;
    RingSpec::new(CoeffRing::Integers, graded_vars("u", n + r), trunc).expect("valid ring")
}

/// `M_{ij} = u_{n+r+i-γ_j}` with `u_0 = 1` and `u_k = 0` outside `0..=n+r`.
pub fn schur_matrix(n: usize, r: usize, gamma: &[usize]) -> Result<PolyMatrix> {
    check_gamma(r, gamma)?;
    let size = gamma.len();
    let ring = schur_ring(n, r, size);
    let top = (n + r) as isize;
    Ok(PolyMatrix::from_fn(&ring, size, size, |i, j| {
        let k = top + i as isize - gamma[j] as isize;
        match k {
            0 => GradedPoly::one(&ring),
            k if k > 0 && k <= top => GradedPoly::var_at(&ring, k as usize - 1),
            _ => GradedPoly::zero(&ring),
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurReport {
    pub determinant: String,
    pub lowest_term: String,
    pub diagonal: String,
    /// Largest number of factors in any term of the determinant.
    pub max_weight: u32,
    pub holds: bool,
}

/// Determinant of the Schur matrix and its lowest term in
/// [`schur_order`], compared with the product of the diagonal entries.
pub fn schur_leading_term(n: usize, r: usize, gamma: &[usize]) -> Result<(GradedPoly, SchurReport)> {
    let m = schur_matrix(n, r, gamma)?;
    let det = m.det()?;
    let ring = m.ring().clone();
    let diag = (0..gamma.len()).fold(GradedPoly::one(&ring), |acc, i| &acc * m.get(i, i));
    let lowest = det.terms().min_by(|a, b| schur_order(a.0, b.0)).map(|(mono, c)| GradedPoly::term(&ring, mono.clone(), c.clone()));
    let lowest = lowest.unwrap_or_else(|| GradedPoly::zero(&ring));
    let max_weight = det.terms().map(|(mono, _)| mono.exps().iter().sum::<u32>()).max().unwrap_or(0);
    let report = SchurReport {
        determinant: det.to_string(),
        lowest_term: lowest.to_string(),
        diagonal: diag.to_string(),
        max_weight,
        holds: !diag.is_zero() && lowest == diag,
    };
    Ok((det, report))
}

/// Which Poincaré series to build from a basis description.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsComponent {
    /// `Z[c_1..c_r, a_1..a_n, b_1..b_m]`
    Sub,
    /// free base ring times the monomial basis
    Int,
    /// `Z[u_1..u_n, v_1..v_{d1}]`
    FreeBase,
}

/// Poincaré series in `w` (one step per algebraic degree) with `len`
/// coefficients.
pub fn poincare_series(d0: usize, d1: usize, r: usize, which: PsComponent, len: usize) -> PowerSeries {
    let (n, m) = (d0 - r, d1 - r);
    let free_base: Vec<usize> = (1..=n).chain(1..=d1).collect();
    match which {
        PsComponent::Sub => {
            let g: Vec<usize> = (1..=r).chain(1..=n).chain(1..=m).collect();
            PowerSeries::free(len, &g)
        }
        PsComponent::FreeBase => PowerSeries::free(len, &free_base),
        PsComponent::Int => {
            let mut basis = PowerSeries::zero(len);
            for b in int_basis_degrees(d0, d1, r) {
                basis = basis.add(&PowerSeries::monomial(len, b as usize));
            }
            PowerSeries::free(len, &free_base).mul(&basis)
        }
    }
}

/// `PS(Div_k^+)`.
pub fn divisor_space_series(k: usize, len: usize) -> PowerSeries {
    PowerSeries::free(len, &(1..=k).collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsIdentityReport {
    pub d0: usize,
    pub d1: usize,
    pub r: usize,
    pub max_degree: u32,
    /// `PS(Int_r) - PS(Int_{r+1})`
    pub difference: PowerSeries,
    /// `w^{(d0-r)(d1-r)} PS(Sub_r)`
    pub shifted_sub: PowerSeries,
    pub holds: bool,
    pub first_failing_degree: Option<u32>,
    /// Whether the opposite orientation `PS(Int_{r+1}) - PS(Int_r)`
    /// also matches (it only can when both sides vanish).
    pub reversed_holds: bool,
}

/// Termwise check of `PS(Int_r) - PS(Int_{r+1}) = w^{(d0-r)(d1-r)} PS(Sub_r)`.
pub fn verify_ps_identity(d0: usize, d1: usize, r: usize, max_degree: u32) -> Result<PsIdentityReport> {
    if r + 1 > d0.min(d1) {
        return Err(AlgebraError::InvalidArgument(format!("need r + 1 <= min(d0, d1), got r = {r}")));
    }
    let len = max_degree as usize + 1;
    let diff = poincare_series(d0, d1, r, PsComponent::Int, len)
        .sub(&poincare_series(d0, d1, r + 1, PsComponent::Int, len));
    let rhs = poincare_series(d0, d1, r, PsComponent::Sub, len).shift((d0 - r) * (d1 - r));
    let first = (0..len).find(|&k| diff.coeff(k) != rhs.coeff(k)).map(|k| k as u32);
    let reversed_holds = diff.neg() == rhs;
    Ok(PsIdentityReport {
        d0,
        d1,
        r,
        max_degree,
        difference: diff,
        shifted_sub: rhs,
        holds: first.is_none(),
        first_failing_degree: first,
        reversed_holds,
    })
}

/// `PS(Int_r) = PS(Sub_r)` at `r = min(d0, d1)`, termwise up to `max_degree`.
pub fn verify_ps_anchor(d0: usize, d1: usize, max_degree: u32) -> DegreewiseCheck {
    let r = d0.min(d1);
    let len = max_degree as usize + 1;
    let a = poincare_series(d0, d1, r, PsComponent::Int, len);
    let b = poincare_series(d0, d1, r, PsComponent::Sub, len);
    let flags: Vec<(u32, bool)> = (0..len).map(|k| (k as u32, a.coeff(k) == b.coeff(k))).collect();
    DegreewiseCheck::from_flags(&flags)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UcwRow {
    pub j: usize,
    /// `w_j`, a polynomial in the `c`s alone.
    pub w: String,
    pub holds: bool,
}

/// Checks that `π*u_{n+j} - π*u_n c_j - w_j` lies in the ideal generated by
/// `π*u_i` (`0 < i < n`) and all `π*v_j`, where
/// `w_j = -[y^{n+j}]((Σ_{i=n+1}^{m} β_i y^i) ĥ(y))` and `β = ĥ^{-1}`.
pub fn verify_ucw_identity(setup: &UniversalSetup) -> Result<Vec<UcwRow>> {
    let (n, m, r) = (setup.n, setup.m, setup.r);
    if (n + r) as u32 > setup.trunc() {
        return Err(AlgebraError::DegreeOutOfRange { degree: (n + r) as u32, trunc: setup.trunc() });
    }
    let t = &setup.target;
    let pi = pi_star(setup);
    let pu = |i: usize| -> GradedPoly {
        if i == 0 {
            GradedPoly::one(t)
        } else {
            pi.images[&format!("u{i}")].clone()
        }
    };
    let c = descending(t, n + m, r);
    let c_at = |k: usize| if k < c.len() { c[k].clone() } else { GradedPoly::zero(t) };
    let top = n + r;
    let mut beta = vec![GradedPoly::one(t)];
    for i in 1..=top {
        let mut b = GradedPoly::zero(t);
        for k in 1..=i.min(r) {
            b = &b - &(&c_at(k) * &beta[i - k]);
        }
        beta.push(b);
    }
    let mut gens: Vec<GradedPoly> = (1..n).map(pu).collect();
    gens.extend((1..=setup.d1).map(|j| pi.images[&format!("v{j}")].clone()));
    let k_ideal = IdealGens::new(t, gens)?;
    let q = trivial_quotient(t);
    let mut rows = Vec::new();
    for j in 1..=r {
        let mut w = GradedPoly::zero(t);
        for i in n + 1..=m.min(n + j) {
            w = &w - &(&beta[i] * &c_at(n + j - i));
        }
        let diff = &(&pu(n + j) - &(&pu(n) * &c_at(j))) - &w;
        let holds = diff.is_zero() || ideal_degree_span(&k_ideal, Some(&q), (n + j) as u32)?.contains(&diff)?;
        rows.push(UcwRow { j, w: w.to_string(), holds });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_monomial_examples() {
        let s = UniversalSetup::new(2, 3, 2, 6).unwrap();
        let names: Vec<String> = int_basis_monomials(&s).iter().map(|m| s.ambient().format_monomial(m)).collect();
        assert_eq!(names, vec!["1", "u1", "u2"]);
        let s = UniversalSetup::new(2, 2, 1, 6).unwrap();
        let names: Vec<String> = int_basis_monomials(&s).iter().map(|m| s.ambient().format_monomial(m)).collect();
        assert_eq!(names, vec!["1", "u2"]);
        let s = UniversalSetup::new(3, 2, 0, 6).unwrap();
        assert_eq!(int_basis_monomials(&s).len(), 1);
        assert!(!int_ideal_universal(&s).is_nonzero());
    }

    #[test]
    fn pi_star_examples() {
        let s = UniversalSetup::new(1, 1, 1, 4).unwrap();
        let pi = pi_star(&s);
        assert_eq!(pi.images["u1"].to_string(), "c1");
        assert_eq!(pi.images["v1"].to_string(), "c1");
        let s = UniversalSetup::new(2, 2, 1, 4).unwrap();
        let pi = pi_star(&s);
        assert_eq!(pi.images["u1"].to_string(), "a1 + c1");
        assert_eq!(pi.images["u2"].to_string(), "a1*c1");
        assert_eq!(pi.images["v1"].to_string(), "b1 + c1");
        assert_eq!(pi.images["v2"].to_string(), "b1*c1");
        assert!(pi_star_kills_ideal(&s).unwrap());
    }

    #[test]
    fn schur_examples() {
        let (det, rep) = schur_leading_term(1, 2, &[0, 1]).unwrap();
        assert_eq!(det.to_string(), "u3^2");
        assert!(rep.holds);
        let (det, rep) = schur_leading_term(2, 1, &[0]).unwrap();
        assert_eq!(det.to_string(), "u3");
        assert!(rep.holds);
        assert!(schur_matrix(1, 2, &[1, 0]).is_err());
        assert!(schur_matrix(1, 2, &[0, 3]).is_err());
    }

    #[test]
    fn series_examples() {
        let s = poincare_series(1, 1, 1, PsComponent::Sub, 5);
        assert_eq!(s, PowerSeries::free(5, &[1]));
        let s = poincare_series(2, 2, 1, PsComponent::Sub, 5);
        assert_eq!(s, PowerSeries::free(5, &[1, 1, 1]));
        assert!(verify_ps_identity(2, 2, 1, 10).unwrap().holds);
        assert!(!verify_ps_identity(2, 2, 1, 10).unwrap().reversed_holds);
        assert!(verify_ps_anchor(2, 3, 10).holds);
    }
}

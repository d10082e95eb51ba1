//! Ordered `k`-tuples of points on a divisor: the scheme `P_k D` cut out of
//! `D^k` by the division-chain relators, its monomial basis, the action of
//! the symmetric group and the ring of degree-`k` subdivisors `Sub_k(D)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::divisor::Divisor;
use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{CoeffRing, Scalar};
use crate::gring::matrix::PolyMatrix;
use crate::gring::poly::GradedPoly;
use crate::gring::ring::{Monomial, RingSpec, Variable};
use crate::gring::upoly::UniPoly;
use crate::oracle::linalg::preimage;
use crate::oracle::{
    ideal_degree_span, ideal_equal, invariant_subspace_dim, quotient_graded_rank, ActionMatrix, DegreewiseCheck,
    Echelon, IdealGens, QuotientRing,
};

/// The division chain of `f` by `p_i(t) = ∏_{j<i} (t - x_j)` over
/// `S[x_0..x_{k-1}]`.
#[derive(Clone, Debug)]
pub struct PkdContext {
    divisor: Divisor,
    k: usize,
    ring: Arc<RingSpec>,
    f: UniPoly,
    p: Vec<UniPoly>,
    q: Vec<UniPoly>,
    r: Vec<UniPoly>,
    b: Vec<GradedPoly>,
}

fn x_name(i: usize) -> String {
    format!("x{i}")
}

impl PkdContext {
    /// Runs the division chain for `0 <= i <= k`. The base truncation must
    /// reach `d` so that `f(x_0)` is representable.
    pub fn new(divisor: &Divisor, k: usize) -> Result<Self> {
        let d = divisor.degree();
        if k > d {
            return Err(AlgebraError::InvalidArgument(format!("k = {k} exceeds the degree {d}")));
        }
        let base = divisor.base();
        if (base.trunc() as usize) < d {
            return Err(AlgebraError::InvalidArgument(format!(
                "truncation {} is below the divisor degree {d}",
                base.trunc()
            )));
        }
        let xs: Vec<Variable> = (0..k).map(|i| Variable::new(x_name(i), 1)).collect();
        let ring = base.extend(&xs)?;
        let f = divisor.equation().embed(&ring)?;
        let mut p = vec![UniPoly::one(&ring)];
        let (mut q, mut r) = (Vec::new(), Vec::new());
        let mut b = Vec::new();
        for i in 0..=k {
            let (qi, ri) = f.divrem_monic(&p[i])?;
            if i < k {
                let xi = GradedPoly::var_at(&ring, base.nvars() + i);
                b.push(qi.eval(&xi));
                p.push(p[i].mul(&UniPoly::linear(&xi)));
            }
            q.push(qi);
            r.push(ri);
        }
        Ok(PkdContext { divisor: divisor.clone(), k, ring, f, p, q, r, b })
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.divisor.degree()
    }

    /// `S[x_0..x_{k-1}]`.
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn x_index(&self, i: usize) -> usize {
        self.divisor.base().nvars() + i
    }

    pub fn x(&self, i: usize) -> GradedPoly {
        GradedPoly::var_at(&self.ring, self.x_index(i))
    }

    /// `f` with coefficients in `S[x]`.
    pub fn equation(&self) -> &UniPoly {
        &self.f
    }

    pub fn p(&self, i: usize) -> &UniPoly {
        &self.p[i]
    }

    pub fn q(&self, i: usize) -> &UniPoly {
        &self.q[i]
    }

    pub fn r(&self, i: usize) -> &UniPoly {
        &self.r[i]
    }

    /// Coefficient of `t^j` in `r_i`.
    pub fn a(&self, i: usize, j: usize) -> GradedPoly {
        self.r[i].coeff(j)
    }

    /// `b_i = q_i(x_i) = a_{i+1,i}`.
    pub fn b(&self, i: usize) -> &GradedPoly {
        &self.b[i]
    }

    pub fn relators_b(&self) -> &[GradedPoly] {
        &self.b
    }

    /// `a_{k,0}, ..., a_{k,k-1}`.
    pub fn relators_a(&self) -> Vec<GradedPoly> {
        (0..self.k).map(|j| self.a(self.k, j)).collect()
    }

    /// `f = q_i p_i + r_i` with `deg r_i < i`, and `r_{i+1} = b_i p_i + r_i`.
    pub fn check_identities(&self) -> bool {
        let division = (0..=self.k).all(|i| {
            let small = self.r[i].degree().is_none_or(|e| e < i);
            small && self.q[i].mul(&self.p[i]).add(&self.r[i]) == self.f
        });
        let step = (0..self.k).all(|i| {
            self.a(i + 1, i) == self.b[i] && self.r[i + 1] == self.p[i].scale(&self.b[i]).add(&self.r[i])
        });
        division && step
    }

    /// `J_k` inside the free ring, generated by the `b_i`.
    pub fn jk(&self) -> Result<IdealGens> {
        IdealGens::new(&self.ring, self.b.clone())
    }

    /// `J_k` generated by the last remainder's coefficients.
    pub fn jk_remainder(&self) -> Result<IdealGens> {
        IdealGens::new(&self.ring, self.relators_a())
    }

    /// `O_{P_k D}` with relations `q_i(x_i) = 0`.
    pub fn pkd_quotient(&self) -> Result<QuotientRing> {
        let rels = (0..self.k).map(|i| (x_name(i), self.q[i].clone())).collect();
        QuotientRing::new(&self.ring, rels)
    }

    /// `O_{D^k}` with relations `f(x_j) = 0`.
    pub fn dk_quotient(&self) -> Result<QuotientRing> {
        let rels = (0..self.k).map(|j| (x_name(j), self.f.clone())).collect();
        QuotientRing::new(&self.ring, rels)
    }

    /// Expected rank of `O_{P_k D}` in degree `e`: the basis monomials
    /// weighted by the Hilbert function of the base.
    pub fn expected_rank(&self, e: u32) -> usize {
        let hs = self.divisor.base().hilbert_counts(e);
        pkd_basis_exponents(self.d(), self.k)
            .iter()
            .map(|a| a.iter().sum::<u32>())
            .filter(|&s| s <= e)
            .map(|s| hs[(e - s) as usize] as usize)
            .sum()
    }
}

pub fn division_chain(divisor: &Divisor, k: usize) -> Result<PkdContext> {
    PkdContext::new(divisor, k)
}

/// Exact quotient of `p` by `x_hi - x_lo`, by synthetic division in the
/// variable `x_hi`.
fn divide_difference(p: &GradedPoly, hi: usize, lo: usize) -> Result<GradedPoly> {
    let ring = p.ring().clone();
    let mut layers: BTreeMap<u32, GradedPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exp(hi);
        let rest = m.with_exp(hi, 0, ring.vars()[hi].degree);
        layers.entry(e).or_insert_with(|| GradedPoly::zero(&ring)).add_term(rest, c.clone());
    }
    let top = match layers.keys().next_back() {
        Some(&t) => t,
        None => return Ok(GradedPoly::zero(&ring)),
    };
    let x_lo = GradedPoly::var_at(&ring, lo);
    let zero = GradedPoly::zero(&ring);
    // q_{e-1} = p_e + x_lo q_e, remainder p_0 + x_lo q_0
    let mut carry = GradedPoly::zero(&ring);
    let mut out = GradedPoly::zero(&ring);
    for e in (1..=top).rev() {
        carry = layers.get(&e).unwrap_or(&zero).try_add(&x_lo.try_mul(&carry)?)?;
        out = out.try_add(&carry.shift(&ring.var_monomial(hi, e - 1)))?;
    }
    let rem = layers.get(&0).unwrap_or(&zero).try_add(&x_lo.try_mul(&carry)?)?;
    if !rem.is_zero() {
        return Err(AlgebraError::InexactDivision(format!("remainder {rem} dividing by x_{hi} - x_{lo}")));
    }
    Ok(out)
}

/// Truncation wide enough to hold `det(B_{j+1})` for every `j < k`.
fn det_trunc(ctx: &PkdContext) -> u32 {
    let k = ctx.k as u32;
    let need = ctx.d() as u32 + k.saturating_sub(1) * k.saturating_sub(2) / 2;
    need.max(ctx.ring.trunc())
}

/// `B_{j+1}`: row `i <= j` is `1, x_i, ..., x_i^{j-1}, f(x_i)`.
pub fn b_matrix(ctx: &PkdContext, j: usize) -> Result<PolyMatrix> {
    let wide = ctx.ring.with_trunc(det_trunc(ctx));
    let f = ctx.f.embed(&wide)?;
    let n = j + 1;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let xi = GradedPoly::var_at(&wide, ctx.x_index(i));
        for c in 0..n {
            entries.push(if c + 1 < n { xi.pow(c as u32) } else { f.eval(&xi) });
        }
    }
    PolyMatrix::new(&wide, n, n, entries)
}

/// `v_{j+1} = ∏_{i < i' <= j} (x_{i'} - x_i)` in the widened ring.
pub fn vandermonde(ctx: &PkdContext, j: usize) -> Result<GradedPoly> {
    let wide = ctx.ring.with_trunc(det_trunc(ctx));
    let mut v = GradedPoly::one(&wide);
    for hi in 0..=j {
        for lo in 0..hi {
            let diff = GradedPoly::var_at(&wide, ctx.x_index(hi)).try_sub(&GradedPoly::var_at(&wide, ctx.x_index(lo)))?;
            v = v.try_mul(&diff)?;
        }
    }
    Ok(v)
}

/// `b_j = det(B_{j+1}) / v_{j+1}`, dividing one factor at a time.
pub fn pkd_relators_det(ctx: &PkdContext) -> Result<Vec<GradedPoly>> {
    (0..ctx.k)
        .map(|j| {
            let mut quot = b_matrix(ctx, j)?.det()?;
            for hi in 0..=j {
                for lo in 0..hi {
                    quot = divide_difference(&quot, ctx.x_index(hi), ctx.x_index(lo))?;
                }
            }
            quot.embed(&ctx.ring)
        })
        .collect()
}

/// `v_j b_j = det(B_j)` for every `j`, each side computed independently.
pub fn vandermonde_identity_holds(ctx: &PkdContext) -> Result<bool> {
    for j in 0..ctx.k {
        let det = b_matrix(ctx, j)?.det()?;
        let v = vandermonde(ctx, j)?;
        let b = ctx.b[j].embed(v.ring())?;
        if v.try_mul(&b)? != det {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exponent vectors with `α_i <= d - 1 - i`, in lexicographic order.
pub fn pkd_basis_exponents(d: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 0..k {
        let bound = (d - i) as u32;
        out = out.into_iter().flat_map(|a| (0..bound).map(move |e| [a.clone(), vec![e]].concat())).collect();
    }
    out
}

/// The basis monomials of `O_{P_k D}` over `O_S`.
pub fn pkd_basis(ctx: &PkdContext) -> Result<Vec<Monomial>> {
    let n = ctx.ring.nvars();
    let mut out: Vec<Monomial> = pkd_basis_exponents(ctx.d(), ctx.k)
        .into_iter()
        .map(|a| {
            let mut exps = vec![0; n];
            for (i, e) in a.into_iter().enumerate() {
                exps[ctx.x_index(i)] = e;
            }
            ctx.ring.monomial_unchecked(exps)
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PkdRankRow {
    pub degree: u32,
    pub expected: usize,
    pub free: usize,
    #[serde(serialize_with = "crate::gring::coeff::serialize_integers")]
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PkdRankReport {
    pub d: usize,
    pub k: usize,
    pub basis_size: usize,
    pub rows: Vec<PkdRankRow>,
    pub passed: bool,
}

/// Degreewise rank of `S[x] / (b_0..b_{k-1})` over the free ring, compared
/// with the basis count.
pub fn verify_pkd_rank(ctx: &PkdContext, up_to: u32) -> Result<PkdRankReport> {
    let jk = ctx.jk()?;
    let rows: Vec<PkdRankRow> = (0..=up_to)
        .into_par_iter()
        .map(|e| {
            let qr = quotient_graded_rank(&jk, None, e)?;
            Ok(PkdRankRow { degree: e, expected: ctx.expected_rank(e), free: qr.free, torsion: qr.torsion })
        })
        .collect::<Result<_>>()?;
    let passed = rows.iter().all(|r| r.free == r.expected && r.torsion.is_empty());
    let basis_size = pkd_basis_exponents(ctx.d(), ctx.k).len();
    Ok(PkdRankReport { d: ctx.d(), k: ctx.k, basis_size, rows, passed })
}

/// `(a_{k,j}) = (b_j)` in the free ring, degree by degree.
pub fn relator_families_agree(ctx: &PkdContext, up_to: u32) -> Result<DegreewiseCheck> {
    ideal_equal(&ctx.jk_remainder()?, &ctx.jk()?, None, up_to)
}

/// Coordinates of `p` on `basis`; every term must occur there.
pub(crate) fn coordinates(basis: &HashMap<&Monomial, usize>, len: usize, p: &GradedPoly) -> Result<Vec<Scalar>> {
    let mut row = vec![Scalar::zero(); len];
    for (m, c) in p.terms() {
        let i = *basis.get(m).ok_or_else(|| {
            AlgebraError::InvalidArgument(format!("monomial {} is outside the basis", p.ring().format_monomial(m)))
        })?;
        row[i] = c.clone();
    }
    Ok(row)
}

fn integer_entry(c: &Scalar) -> Result<BigInt> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(AlgebraError::InvalidArgument(format!("non-integral action entry {c}")))
    }
}

/// Permutation of the variable slots swapping `x_i` and `x_{i+1}`.
fn transposition(ctx: &PkdContext, i: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..ctx.ring.nvars()).collect();
    perm.swap(ctx.x_index(i), ctx.x_index(i + 1));
    perm
}

/// Matrices of the adjacent transpositions on a reduced degree basis of
/// `q`, columns indexed by the basis.
fn action_on(ctx: &PkdContext, q: &QuotientRing, basis: &[Monomial]) -> Result<Vec<ActionMatrix>> {
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = basis.len();
    let mut cache = HashMap::new();
    (0..ctx.k.saturating_sub(1))
        .map(|i| {
            let perm = transposition(ctx, i);
            let mut mat = vec![vec![BigInt::zero(); n]; n];
            for (j, m) in basis.iter().enumerate() {
                let img = GradedPoly::term(&ctx.ring, m.permuted(&perm), Scalar::one());
                let red = q.reduce_cached(&img, &mut cache)?;
                for (r, c) in coordinates(&index, n, &red)?.iter().enumerate() {
                    mat[r][j] = integer_entry(c)?;
                }
            }
            Ok(mat)
        })
        .collect()
}

/// The reduced basis of `O_{P_k D}` in degree `e` with the adjacent
/// transposition matrices.
pub fn sigma_action(ctx: &PkdContext, e: u32) -> Result<(Vec<Monomial>, Vec<ActionMatrix>)> {
    let q = ctx.pkd_quotient()?;
    let basis = q.degree_basis(e)?;
    let action = action_on(ctx, &q, &basis)?;
    Ok((basis, action))
}

/// Dimension over `coeffs` of the `Σ_k`-invariants of `O_{P_k D}` in
/// degree `e`.
pub fn sigma_invariants(ctx: &PkdContext, coeffs: CoeffRing, e: u32) -> Result<usize> {
    let (basis, action) = sigma_action(ctx, e)?;
    if action.is_empty() {
        return Ok(basis.len());
    }
    invariant_subspace_dim(&action, coeffs)
}

/// Same count for `O_{D^k}`, where the action permutes the basis.
pub fn dk_sigma_invariants(ctx: &PkdContext, coeffs: CoeffRing, e: u32) -> Result<usize> {
    let q = ctx.dk_quotient()?;
    let basis = q.degree_basis(e)?;
    let action = action_on(ctx, &q, &basis)?;
    if action.is_empty() {
        return Ok(basis.len());
    }
    invariant_subspace_dim(&action, coeffs)
}

/// The ring `O_S[c_1..c_k] / I` of monic degree-`k` factors
/// `h(t) = Σ c_i t^{k-i}` of `f`, where `I` is generated by the
/// coefficients of `f mod h`.
#[derive(Clone, Debug)]
pub struct SubRing {
    d: usize,
    k: usize,
    base: Arc<RingSpec>,
    ring: Arc<RingSpec>,
    h: UniPoly,
    ideal: IdealGens,
}

impl SubRing {
    pub fn new(divisor: &Divisor, k: usize) -> Result<Self> {
        let d = divisor.degree();
        if k > d {
            return Err(AlgebraError::InvalidArgument(format!("k = {k} exceeds the degree {d}")));
        }
        let base = divisor.base().clone();
        let cs: Vec<Variable> = (1..=k).map(|i| Variable::new(format!("c{i}"), i as u32)).collect();
        let ring = base.extend(&cs)?;
        let mut coeffs: Vec<GradedPoly> = (1..=k).rev().map(|i| GradedPoly::var_at(&ring, base.nvars() + i - 1)).collect();
        coeffs.push(GradedPoly::one(&ring));
        let h = UniPoly::from_coeffs(&ring, coeffs);
        let rem = divisor.equation().embed(&ring)?.rem_monic(&h)?;
        let ideal = IdealGens::new(&ring, rem.coeffs().to_vec())?;
        Ok(SubRing { d, k, base, ring, h, ideal })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<RingSpec> {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `c_i` with `c_0 = 1` and zero outside `0..=k`.
    pub fn c(&self, i: isize) -> GradedPoly {
        match i {
            0 => GradedPoly::one(&self.ring),
            i if i < 0 || i as usize > self.k => GradedPoly::zero(&self.ring),
            i => GradedPoly::var_at(&self.ring, self.base.nvars() + i as usize - 1),
        }
    }

    pub fn h(&self) -> &UniPoly {
        &self.h
    }

    pub fn ideal(&self) -> &IdealGens {
        &self.ideal
    }

    /// Exponents of `c_1..c_k` of total (unweighted) degree at most `d - k`.
    pub fn basis_exponents(&self) -> Vec<Vec<u32>> {
        let top = (self.d - self.k) as u32;
        let mut out = vec![Vec::new()];
        for _ in 0..self.k {
            out = out
                .into_iter()
                .flat_map(|a: Vec<u32>| {
                    let used: u32 = a.iter().sum();
                    (0..=top - used).map(move |e| [a.clone(), vec![e]].concat())
                })
                .collect();
        }
        out
    }

    /// Rank of `O_{Sub_k(D)}` in degree `e` predicted by the basis.
    pub fn expected_rank(&self, e: u32) -> usize {
        let hs = self.base.hilbert_counts(e);
        self.basis_exponents()
            .iter()
            .map(|a| a.iter().enumerate().map(|(i, x)| (i as u32 + 1) * x).sum::<u32>())
            .filter(|&w| w <= e)
            .map(|w| hs[(e - w) as usize] as usize)
            .sum()
    }
}

type SymPoly = BTreeMap<Vec<u32>, BigInt>;

fn sym_mul(a: &SymPoly, b: &SymPoly) -> SymPoly {
    let mut out = SymPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn elementary(k: usize, i: usize) -> SymPoly {
    let mut out = SymPoly::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize == i {
            out.insert((0..k).map(|j| (mask >> j) & 1).collect(), BigInt::one());
        }
    }
    out
}

fn distinct_permutations(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = alpha.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// The monomial symmetric function `m_α` written in `c_i = (-1)^i e_i`,
/// as exponent vectors of `c_1..c_k`.
fn monomial_symmetric_in_c(k: usize, alpha: &[u32]) -> SymPoly {
    let mut rest: SymPoly = distinct_permutations(alpha).into_iter().map(|e| (e, BigInt::one())).collect();
    let es: Vec<SymPoly> = (1..=k).map(|i| elementary(k, i)).collect();
    let mut out = SymPoly::new();
    while let Some((lead, coef)) = rest.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let powers: Vec<u32> = (0..k).map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0)).collect();
        let mut prod: SymPoly = [(vec![0; k], BigInt::one())].into_iter().collect();
        let mut sign_odd = false;
        for (i, &n) in powers.iter().enumerate() {
            for _ in 0..n {
                prod = sym_mul(&prod, &es[i]);
            }
            sign_odd ^= (i + 1) % 2 == 1 && n % 2 == 1;
        }
        for (e, c) in prod {
            let slot = rest.entry(e).or_insert_with(BigInt::zero);
            *slot -= &coef * c;
        }
        rest.retain(|_, c| !c.is_zero());
        let c = if sign_odd { -coef } else { coef };
        *out.entry(powers).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Orbit sums of the reduced monomials of `O_{D^k}` in degree `e`: the
/// free basis of the invariants. Each orbit is keyed by its representative
/// with non-increasing `x`-exponents.
fn orbit_sums(ctx: &PkdContext, dk: &QuotientRing, e: u32) -> Result<Vec<(Monomial, GradedPoly)>> {
    let nb = ctx.divisor.base().nvars();
    let mut orbits: BTreeMap<Monomial, GradedPoly> = BTreeMap::new();
    for m in dk.degree_basis(e)? {
        let mut alpha: Vec<u32> = (0..ctx.k).map(|i| m.exp(nb + i)).collect();
        alpha.sort_unstable_by(|a, b| b.cmp(a));
        let mut exps = m.exps().to_vec();
        exps[nb..].copy_from_slice(&alpha);
        let key = ctx.ring.monomial_unchecked(exps);
        orbits.entry(key).or_insert_with(|| GradedPoly::zero(&ctx.ring)).add_term(m, Scalar::one());
    }
    Ok(orbits.into_iter().collect())
}

/// Writes a `Σ_k`-invariant element of `O_{D^k}` as a polynomial in the
/// `c_i`, sending `e_i(x)` to `(-1)^i c_i`. Fails if `s` is not symmetric.
pub fn symmetric_to_sub(ctx: &PkdContext, sub: &SubRing, s: &GradedPoly) -> Result<GradedPoly> {
    let dk = ctx.dk_quotient()?;
    let s = dk.reduce(s)?;
    for i in 0..ctx.k.saturating_sub(1) {
        let perm = transposition(ctx, i);
        let moved = GradedPoly::from_terms(&ctx.ring, s.terms().map(|(m, c)| (m.permuted(&perm), c.clone())));
        if dk.reduce(&moved)? != s {
            return Err(AlgebraError::InvalidArgument(format!("{s} is not symmetric")));
        }
    }
    let nb = ctx.divisor.base().nvars();
    let mut out = GradedPoly::zero(sub.ring());
    for (m, c) in s.terms() {
        let alpha = &m.exps()[nb..];
        if alpha.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let sym = monomial_symmetric_in_c(ctx.k, alpha);
        out = out.try_add(&lift_to_sub(sub, m, nb, &sym).scale(c))?;
    }
    Ok(out)
}

/// A basis of `J_k^{Σ_k}` in degree `e`, as elements of `O_{D^k}`.
pub fn invariant_jk_elements(ctx: &PkdContext, e: u32) -> Result<Vec<GradedPoly>> {
    let dk = ctx.dk_quotient()?;
    let orbits = orbit_sums(ctx, &dk, e)?;
    let span = ideal_degree_span(&ctx.jk()?, Some(&dk), e)?;
    let index: HashMap<&Monomial, usize> = span.basis().iter().enumerate().map(|(i, m)| (m, i)).collect();
    let in_dk: Vec<Vec<Scalar>> =
        orbits.iter().map(|(_, o)| coordinates(&index, index.len(), o)).collect::<Result<_>>()?;
    let lat = preimage(ctx.ring.coeffs(), &in_dk, &integer_rows(span.echelon()), index.len())?;
    Ok(lat
        .rows()
        .iter()
        .map(|row| {
            let mut acc = GradedPoly::zero(&ctx.ring);
            for (x, (_, o)) in row.iter().zip(&orbits) {
                if !x.is_zero() {
                    acc = &acc + &o.scale(&Scalar::from_integer(x.clone()));
                }
            }
            acc
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantKernelRow {
    pub degree: u32,
    pub orbits: usize,
    /// rank of the kernel into `O_{P_k D}`
    pub kernel_pkd: usize,
    /// rank of the kernel into `O_{Sub_k(D)}`
    pub kernel_sub: usize,
    /// rank of `J_k^{Σ_k}`
    pub invariant_jk: usize,
    pub lattices_equal: bool,
    pub quotient_rank: usize,
    pub sub_rank: usize,
    pub expected_sub_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantKernelReport {
    pub d: usize,
    pub k: usize,
    pub rows: Vec<InvariantKernelRow>,
    pub passed: bool,
}

/// Compares, in each degree over Z, three sublattices of the invariants of
/// `O_{D^k}` written on orbit sums: the kernel of the map to `O_{P_k D}`,
/// the kernel of the map to `O_{Sub_k(D)}` (through elementary symmetric
/// functions), and the invariant part of the span of `J_k`. Also compares
/// the quotient rank with the basis count of `O_{Sub_k(D)}`.
pub fn verify_invariant_kernel(ctx: &PkdContext, up_to: u32) -> Result<InvariantKernelReport> {
    let dk = ctx.dk_quotient()?;
    let pk = ctx.pkd_quotient()?;
    let sub = SubRing::new(&ctx.divisor, ctx.k)?;
    let jk = ctx.jk()?;
    let nb = ctx.divisor.base().nvars();
    let coeffs = ctx.ring.coeffs();
    let rows: Vec<InvariantKernelRow> = (0..=up_to)
        .into_par_iter()
        .map(|e| {
            let orbits = orbit_sums(ctx, &dk, e)?;
            let n = orbits.len();

            let pk_basis = pk.degree_basis(e)?;
            let pk_index: HashMap<&Monomial, usize> = pk_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut cache = HashMap::new();
            let to_pkd: Vec<Vec<Scalar>> = orbits
                .iter()
                .map(|(_, o)| coordinates(&pk_index, pk_basis.len(), &pk.reduce_cached(o, &mut cache)?))
                .collect::<Result<_>>()?;
            let kernel_pkd = preimage(coeffs, &to_pkd, &[], pk_basis.len())?;

            let jk_span = ideal_degree_span(&jk, Some(&dk), e)?;
            let dk_index: HashMap<&Monomial, usize> =
                jk_span.basis().iter().enumerate().map(|(i, m)| (m, i)).collect();
            let in_dk: Vec<Vec<Scalar>> =
                orbits.iter().map(|(_, o)| coordinates(&dk_index, dk_index.len(), o)).collect::<Result<_>>()?;
            let jk_rows = integer_rows(jk_span.echelon());
            let invariant_jk = preimage(coeffs, &in_dk, &jk_rows, dk_index.len())?;

            let sub_span = ideal_degree_span(sub.ideal(), None, e)?;
            let sub_index: HashMap<&Monomial, usize> =
                sub_span.basis().iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut decomp: HashMap<Vec<u32>, SymPoly> = HashMap::new();
            let to_sub: Vec<Vec<Scalar>> = orbits
                .iter()
                .map(|(key, _)| {
                    let alpha: Vec<u32> = key.exps()[nb..].to_vec();
                    let sym = decomp.entry(alpha.clone()).or_insert_with(|| monomial_symmetric_in_c(ctx.k, &alpha));
                    let img = lift_to_sub(&sub, key, nb, sym);
                    coordinates(&sub_index, sub_index.len(), &img)
                })
                .collect::<Result<_>>()?;
            let kernel_sub = preimage(coeffs, &to_sub, &integer_rows(sub_span.echelon()), sub_index.len())?;

            let lattices_equal = kernel_pkd == invariant_jk && kernel_sub == invariant_jk;
            let sub_rank = sub_span.quotient_rank();
            Ok(InvariantKernelRow {
                degree: e,
                orbits: n,
                kernel_pkd: kernel_pkd.rank(),
                kernel_sub: kernel_sub.rank(),
                invariant_jk: invariant_jk.rank(),
                lattices_equal,
                quotient_rank: n - invariant_jk.rank(),
                sub_rank: if sub_rank.torsion.is_empty() { sub_rank.free } else { usize::MAX },
                expected_sub_rank: sub.expected_rank(e),
            })
        })
        .collect::<Result<_>>()?;
    let passed = rows
        .iter()
        .all(|r| r.lattices_equal && r.quotient_rank == r.expected_sub_rank && r.sub_rank == r.expected_sub_rank);
    Ok(InvariantKernelReport { d: ctx.d(), k: ctx.k, rows, passed })
}

fn integer_rows(e: &Echelon) -> Vec<Vec<Scalar>> {
    e.rows().iter().map(|r| r.iter().map(|x| Scalar::from_integer(x.clone())).collect()).collect()
}

/// `s * m_α(x)` mapped to `s * m_α` in `c`, for the orbit keyed by `key`.
fn lift_to_sub(sub: &SubRing, key: &Monomial, nb: usize, sym: &SymPoly) -> GradedPoly {
    let ring = sub.ring();
    let mut out = GradedPoly::zero(ring);
    for (cexp, coef) in sym {
        let mut exps = key.exps()[..nb].to_vec();
        exps.extend_from_slice(cexp);
        out.add_term(ring.monomial_unchecked(exps), Scalar::from_integer(coef.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_cubed() -> Divisor {
        let base = RingSpec::new(CoeffRing::Integers, vec![], 6).unwrap();
        Divisor::point_power(&base, 3)
    }

    #[test]
    fn cube_chain() {
        let ctx = PkdContext::new(&point_cubed(), 2).unwrap();
        assert!(ctx.check_identities());
        let r = ctx.ring();
        assert_eq!(ctx.b(0), &GradedPoly::parse(r, "x0^3").unwrap());
        assert_eq!(ctx.b(1), &GradedPoly::parse(r, "x0^2 + x0*x1 + x1^2").unwrap());
        assert_eq!(pkd_relators_det(&ctx).unwrap(), ctx.relators_b());
        assert!(vandermonde_identity_holds(&ctx).unwrap());
        assert!(relator_families_agree(&ctx, 6).unwrap().holds);
    }

    #[test]
    fn point_power_k1() {
        let base = RingSpec::new(CoeffRing::Integers, vec![], 6).unwrap();
        let ctx = PkdContext::new(&Divisor::point_power(&base, 4), 1).unwrap();
        assert_eq!(ctx.b(0), &GradedPoly::parse(ctx.ring(), "x0^4").unwrap());
        assert_eq!(ctx.relators_a(), ctx.relators_b());
    }

    #[test]
    fn basis_counts() {
        assert_eq!(pkd_basis_exponents(3, 2).len(), 6);
        assert_eq!(pkd_basis_exponents(4, 3).len(), 24);
        assert_eq!(pkd_basis_exponents(5, 0), vec![Vec::<u32>::new()]);
        let ctx = PkdContext::new(&point_cubed(), 2).unwrap();
        let names: Vec<String> = pkd_basis(&ctx).unwrap().iter().map(|m| ctx.ring().format_monomial(m)).collect();
        assert_eq!(names, ["1", "x0", "x1", "x0^2", "x0*x1", "x0^2*x1"]);
        assert!(verify_pkd_rank(&ctx, 6).unwrap().passed);
    }

    #[test]
    fn cube_invariants() {
        let ctx = PkdContext::new(&point_cubed(), 2).unwrap();
        let q: Vec<usize> = (0..=3).map(|e| sigma_invariants(&ctx, CoeffRing::Rationals, e).unwrap()).collect();
        let f2: Vec<usize> = (0..=3).map(|e| sigma_invariants(&ctx, CoeffRing::PrimeField(2), e).unwrap()).collect();
        assert_eq!(q, [1, 1, 1, 0]);
        assert_eq!(f2, [1, 1, 1, 1]);
    }

    #[test]
    fn elementary_decomposition() {
        // m_(1,1) = e_2 = c_2; m_(2) = e_1^2 - 2 e_2 = c_1^2 - 2 c_2
        let m11 = monomial_symmetric_in_c(2, &[1, 1]);
        assert_eq!(m11, [(vec![0, 1], BigInt::one())].into_iter().collect());
        let m2 = monomial_symmetric_in_c(2, &[2, 0]);
        let expect: SymPoly = [(vec![2, 0], BigInt::one()), (vec![0, 1], BigInt::from(-2))].into_iter().collect();
        assert_eq!(m2, expect);
        // m_(1) in three variables = e_1 = -c_1
        let m1 = monomial_symmetric_in_c(3, &[1, 0, 0]);
        assert_eq!(m1, [(vec![1, 0, 0], BigInt::from(-1))].into_iter().collect());
    }

    #[test]
    fn cube_kernel() {
        let ctx = PkdContext::new(&point_cubed(), 2).unwrap();
        let rep = verify_invariant_kernel(&ctx, 6).unwrap();
        assert!(rep.passed, "{rep:?}");
        let total: usize = rep.rows.iter().map(|r| r.quotient_rank).sum();
        assert_eq!(total, 3);
    }
}

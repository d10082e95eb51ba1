//! Exact echelon forms over Z, Q and F_p.

use num_bigint::BigInt;
use num_integer::{ExtendedGcd, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::gring::coeff::{CoeffRing, Scalar};

/// Canonical row-echelon form of a row span.
///
/// Over Z this is the Hermite normal form (positive pivots, entries above a
/// pivot reduced into `[0, pivot)`); over a field it is the reduced row
/// echelon form, stored for Q as primitive integer rows with positive
/// pivots and for F_p with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    coeffs: CoeffRing,
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn from_rows(coeffs: CoeffRing, ncols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(AlgebraError::ShapeMismatch(format!("row of length {} in {ncols} columns", r.len())));
            }
        }
        let rows = match coeffs {
            CoeffRing::Integers => {
                let ints = rows.into_iter().map(|r| to_integers(&r)).collect::<Result<Vec<_>>>()?;
                hnf(ncols, ints)
            }
            CoeffRing::Rationals => rref_rational(ncols, rows).iter().map(|r| primitive(r)).collect(),
            CoeffRing::PrimeField(p) => {
                let small = rows.iter().map(|r| r.iter().map(|x| to_mod(x, p)).collect()).collect();
                rref_mod_p(ncols, small, p)
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect()
            }
        };
        let pivots = rows.iter().map(|r| leading(r).expect("echelon rows are nonzero")).collect();
        Ok(Echelon { coeffs, ncols, rows, pivots })
    }

    pub fn from_integer_rows(coeffs: CoeffRing, ncols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::from_integer).collect())
            .collect();
        Self::from_rows(coeffs, ncols, rows)
    }

    pub fn coeffs(&self) -> CoeffRing {
        self.coeffs
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether every pivot is a unit, i.e. the span is a direct summand.
    pub fn is_saturated(&self) -> bool {
        match self.coeffs {
            CoeffRing::Integers => self.pivots.iter().zip(&self.rows).all(|(&c, r)| r[c].is_one()),
            _ => true,
        }
    }

    /// Nontrivial invariant factors of the quotient (empty over a field).
    pub fn torsion(&self) -> Vec<BigInt> {
        if self.is_saturated() {
            return Vec::new();
        }
        smith_invariants(&self.rows).into_iter().filter(|d| !d.is_one()).collect()
    }

    /// Membership of a vector in the span.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ncols {
            return Err(AlgebraError::ShapeMismatch(format!("vector of length {} in {} columns", v.len(), self.ncols)));
        }
        match self.coeffs {
            CoeffRing::Integers => {
                let mut w = to_integers(v)?;
                for (r, &c) in self.rows.iter().zip(&self.pivots) {
                    if let Some(l) = leading(&w) {
                        if l < c {
                            return Ok(false);
                        }
                    }
                    if w[c].is_zero() {
                        continue;
                    }
                    let (q, rem) = w[c].div_rem(&r[c]);
                    if !rem.is_zero() {
                        return Ok(false);
                    }
                    axpy(&mut w, &-q, r, c);
                }
                Ok(w.iter().all(Zero::is_zero))
            }
            CoeffRing::Rationals => {
                let mut w: Vec<BigRational> = v.to_vec();
                for (r, &c) in self.rows.iter().zip(&self.pivots) {
                    if w[c].is_zero() {
                        continue;
                    }
                    let f = &w[c] / BigRational::from_integer(r[c].clone());
                    for j in c..self.ncols {
                        if !r[j].is_zero() {
                            w[j] -= &f * BigRational::from_integer(r[j].clone());
                        }
                    }
                }
                Ok(w.iter().all(Zero::is_zero))
            }
            CoeffRing::PrimeField(p) => {
                let mut w: Vec<u64> = v.iter().map(|x| to_mod(x, p)).collect();
                for (r, &c) in self.rows.iter().zip(&self.pivots) {
                    let f = w[c];
                    if f == 0 {
                        continue;
                    }
                    for j in c..self.ncols {
                        let rj = r[j].to_u64().unwrap_or(0);
                        w[j] = sub_mod(w[j], mul_mod(f, rj, p), p);
                    }
                }
                Ok(w.iter().all(|&x| x == 0))
            }
        }
    }

    /// Membership of every row of `other`.
    pub fn contains_span(&self, other: &Echelon) -> Result<bool> {
        for r in &other.rows {
            let v: Vec<Scalar> = r.iter().cloned().map(Scalar::from_integer).collect();
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The lattice `{x : x * images ∈ span(target)}`, where `images` has one
/// row per coordinate of `x`.
pub fn preimage(coeffs: CoeffRing, images: &[Vec<Scalar>], target: &[Vec<Scalar>], ncols: usize) -> Result<Echelon> {
    let m = images.len();
    let mut rows = Vec::with_capacity(m + target.len());
    for (i, img) in images.iter().enumerate() {
        if img.len() != ncols {
            return Err(AlgebraError::ShapeMismatch("image row length".into()));
        }
        let mut r = img.clone();
        r.extend((0..m).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
        rows.push(r);
    }
    for t in target {
        if t.len() != ncols {
            return Err(AlgebraError::ShapeMismatch("target row length".into()));
        }
        let mut r = t.clone();
        r.extend(std::iter::repeat_n(Scalar::zero(), m));
        rows.push(r);
    }
    let full = Echelon::from_rows(coeffs, ncols + m, rows)?;
    let kernel: Vec<Vec<BigInt>> = full
        .rows
        .iter()
        .zip(&full.pivots)
        .filter(|(_, &c)| c >= ncols)
        .map(|(r, _)| r[ncols..].to_vec())
        .collect();
    Echelon::from_integer_rows(coeffs, m, kernel)
}

/// Rank of an integer matrix over Q or F_p (Z is treated as Q).
pub fn rank_over(coeffs: CoeffRing, ncols: usize, rows: Vec<Vec<Scalar>>) -> Result<usize> {
    let k = match coeffs {
        CoeffRing::Integers => CoeffRing::Rationals,
        other => other,
    };
    if let CoeffRing::Rationals = k {
        let ints = rows.iter().map(|r| primitive_scalars(r)).collect();
        return Ok(bareiss_rank(ncols, ints));
    }
    Ok(Echelon::from_rows(k, ncols, rows)?.rank())
}

fn leading(r: &[BigInt]) -> Option<usize> {
    r.iter().position(|x| !x.is_zero())
}

fn to_integers(r: &[Scalar]) -> Result<Vec<BigInt>> {
    r.iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(AlgebraError::InvalidArgument(format!("non-integer entry {x} in an integer lattice")))
            }
        })
        .collect()
}

fn to_mod(x: &Scalar, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb);
    let den = x.denom().mod_floor(&pb);
    let inv = crate::gring::coeff::mod_inverse(&den, &pb).expect("denominator invertible mod p");
    (num * inv).mod_floor(&pb).to_u64().expect("reduced residue fits")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b { a - b } else { a + p - b }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// `w[from..] += f * r[from..]`
fn axpy(w: &mut [BigInt], f: &BigInt, r: &[BigInt], from: usize) {
    if f.is_zero() {
        return;
    }
    for j in from..w.len() {
        if !r[j].is_zero() {
            w[j] += f * &r[j];
        }
    }
}

/// Hermite normal form of the row lattice, nonzero rows only, ordered by
/// pivot column.
pub fn hnf(ncols: usize, rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut piv: Vec<Option<Vec<BigInt>>> = vec![None; ncols];
    for row in rows {
        hnf_insert(&mut piv, row);
    }
    let cols: Vec<usize> = (0..ncols).filter(|&c| piv[c].is_some()).collect();
    for (idx, &c) in cols.iter().enumerate() {
        let pr = piv[c].take().expect("pivot present");
        for &c2 in &cols[..idx] {
            let r2 = piv[c2].as_mut().expect("pivot present");
            let q = r2[c].div_floor(&pr[c]);
            if !q.is_zero() {
                axpy(r2, &-q, &pr, c);
            }
        }
        piv[c] = Some(pr);
    }
    piv.into_iter().flatten().collect()
}

fn hnf_insert(piv: &mut [Option<Vec<BigInt>>], mut v: Vec<BigInt>) {
    let mut start = 0;
    loop {
        let Some(off) = v[start..].iter().position(|x| !x.is_zero()) else {
            return;
        };
        let c = start + off;
        match piv[c].take() {
            None => {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                piv[c] = Some(v);
                return;
            }
            Some(mut p) => {
                let (q, rem) = v[c].div_rem(&p[c]);
                if rem.is_zero() {
                    axpy(&mut v, &-q, &p, c);
                } else {
                    let ExtendedGcd { gcd, x: s, y: t } = p[c].extended_gcd(&v[c]);
                    let pa = &p[c] / &gcd;
                    let va = &v[c] / &gcd;
                    let mut new: Vec<BigInt> = vec![BigInt::zero(); v.len()];
                    let mut rest: Vec<BigInt> = vec![BigInt::zero(); v.len()];
                    for j in c..v.len() {
                        new[j] = &s * &p[j] + &t * &v[j];
                        rest[j] = &pa * &v[j] - &va * &p[j];
                    }
                    if new[c].is_negative() {
                        new.iter_mut().for_each(|x| *x = -&*x);
                    }
                    p = new;
                    v = rest;
                }
                piv[c] = Some(p);
                start = c + 1;
            }
        }
    }
}

/// Diagonal of the Smith normal form of an integer matrix, nonzero
/// entries only, each dividing the next.
pub fn smith_invariants(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nr = a.len();
    if nr == 0 {
        return Vec::new();
    }
    let nc = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pr = a[t].clone();
                axpy(&mut a[i], &-q, &pr, t);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..nr {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                // divisibility condition with the rest of the block
                let mut fix = None;
                'outer: for i in t + 1..nr {
                    for j in t + 1..nc {
                        if !a[i][j].mod_floor(&a[t][t]).is_zero() {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        let ri = a[i].clone();
                        axpy(&mut a[t], &BigInt::one(), &ri, 0);
                    }
                    None => break,
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Reduced row echelon form modulo a prime.
pub fn rref_mod_p(ncols: usize, mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for j in c..ncols {
            rows[rank][j] = mul_mod(rows[rank][j], inv, p);
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..ncols {
                row[j] = sub_mod(row[j], mul_mod(f, pivot[j], p), p);
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Reduced row echelon form over Q.
pub fn rref_rational(ncols: usize, rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    // clear denominators and eliminate fraction-free first, then normalize
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_scalars(r)).collect();
    let echelon = bareiss_echelon(ncols, ints);
    let mut out: Vec<Vec<BigRational>> = echelon
        .into_iter()
        .map(|r| {
            let c = leading(&r).expect("nonzero row");
            let lead = r[c].clone();
            r.into_iter().map(|x| BigRational::new(x, lead.clone())).collect()
        })
        .collect();
    for i in (0..out.len()).rev() {
        let c = out[i].iter().position(|x| !x.is_zero()).expect("nonzero row");
        let pivot = out[i].clone();
        for row in out.iter_mut().take(i) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !pivot[j].is_zero() {
                    row[j] -= &f * &pivot[j];
                }
            }
        }
    }
    out
}

/// A rational row scaled to a primitive integer row (zero stays zero).
fn primitive_scalars(r: &[BigRational]) -> Vec<BigInt> {
    primitive(r)
}

/// Primitive integer row with positive leading entry.
fn primitive(r: &[BigRational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        ints.iter_mut().for_each(|x| *x = &*x / &g);
    }
    if leading(&ints).is_some_and(|c| ints[c].is_negative()) {
        ints.iter_mut().for_each(|x| *x = -&*x);
    }
    ints
}

/// Fraction-free row echelon form (not reduced), nonzero rows only.
fn bareiss_echelon(ncols: usize, mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c].clone();
            for j in c..ncols {
                let v = &pivot[c] * &row[j] - &f * &pivot[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot[c].clone();
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn bareiss_rank(ncols: usize, rows: Vec<Vec<BigInt>>) -> usize {
    bareiss_echelon(ncols, rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn scalars(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect()).collect()
    }

    #[test]
    fn hnf_of_small_lattice() {
        let h = hnf(2, ints(&[&[2, 4], &[3, 5]]));
        // lattice generated by (2,4),(3,5) = {(1,1),(0,2)} after reduction
        assert_eq!(h, ints(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(3, ints(&[&[1, 2, 3], &[0, 4, 6]]));
        let b = hnf(3, ints(&[&[1, 6, 9], &[0, -4, -6], &[2, 8, 12]]));
        assert_eq!(a, b);
    }

    #[test]
    fn smith_of_diag() {
        assert_eq!(smith_invariants(&ints(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(smith_invariants(&ints(&[&[2, 4], &[0, 2]])), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn torsion_and_membership() {
        let e = Echelon::from_rows(CoeffRing::Integers, 2, scalars(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.torsion(), vec![BigInt::from(6)]);
        assert!(e.contains(&scalars(&[&[4, -3]])[0]).unwrap());
        assert!(!e.contains(&scalars(&[&[1, 0]])[0]).unwrap());
        let q = Echelon::from_rows(CoeffRing::Rationals, 2, scalars(&[&[2, 0], &[0, 3]])).unwrap();
        assert!(q.contains(&scalars(&[&[1, 0]])[0]).unwrap());
    }

    #[test]
    fn ranks_over_fields() {
        let m = scalars(&[&[1, 1], &[1, -1]]);
        assert_eq!(rank_over(CoeffRing::Rationals, 2, m.clone()).unwrap(), 2);
        assert_eq!(rank_over(CoeffRing::PrimeField(2), 2, m).unwrap(), 1);
    }

    #[test]
    fn preimage_of_sublattice() {
        // x -> 2x into Z, preimage of 4Z is 2Z
        let img = scalars(&[&[2]]);
        let tgt = scalars(&[&[4]]);
        let k = preimage(CoeffRing::Integers, &img, &tgt, 1).unwrap();
        assert_eq!(k.rows(), &ints(&[&[2]])[..]);
    }

    #[test]
    fn rational_rref() {
        let r = rref_rational(3, scalars(&[&[2, 4, 6], &[1, 1, 1]]));
        let expect: Vec<Vec<BigRational>> = scalars(&[&[1, 0, -1], &[0, 1, 2]]);
        assert_eq!(r, expect);
    }
}

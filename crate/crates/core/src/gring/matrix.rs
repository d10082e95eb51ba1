use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::gring::poly::{same_ring, GradedPoly};
use crate::gring::ring::RingSpec;

/// A dense matrix of graded polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<RingSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<GradedPoly>,
}

impl PolyMatrix {
    pub fn new(ring: &Arc<RingSpec>, rows: usize, cols: usize, entries: Vec<GradedPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Arc<RingSpec>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![GradedPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Arc<RingSpec>, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { GradedPoly::one(ring) } else { GradedPoly::zero(ring) })
    }

    pub fn diagonal(ring: &Arc<RingSpec>, diag: &[GradedPoly]) -> Self {
        let n = diag.len();
        Self::from_fn(ring, n, n, |i, j| if i == j { diag[i].clone() } else { GradedPoly::zero(ring) })
    }

    pub fn from_fn(
        ring: &Arc<RingSpec>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GradedPoly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GradedPoly) {
        assert!(same_ring(v.ring(), &self.ring), "entry from a different ring");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GradedPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Reverses both the row order and the column order.
    pub fn reversed(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(&self.ring, r, c, |i, j| self.get(r - 1 - i, c - 1 - j).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&GradedPoly) -> GradedPoly) -> Self {
        let entries: Vec<_> = self.entries.iter().map(&mut f).collect();
        let ring = entries.first().map(|e| e.ring().clone()).unwrap_or_else(|| self.ring.clone());
        PolyMatrix { ring, rows: self.rows, cols: self.cols, entries }
    }

    /// Block matrix `[[self, 0], [0, other]]`.
    pub fn block_diag(&self, other: &PolyMatrix) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let (r0, c0) = (self.rows, self.cols);
        Ok(Self::from_fn(&self.ring, r0 + other.rows, c0 + other.cols, |i, j| {
            match (i < r0, j < c0) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - r0, j - c0).clone(),
                _ => GradedPoly::zero(&self.ring),
            }
        }))
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.rows != other.rows {
            return Err(AlgebraError::ShapeMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let c0 = self.cols;
        Ok(Self::from_fn(&self.ring, self.rows, c0 + other.cols, |i, j| {
            if j < c0 { self.get(i, j).clone() } else { other.get(i, j - c0).clone() }
        }))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &PolyMatrix) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.cols != other.cols {
            return Err(AlgebraError::ShapeMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let r0 = self.rows;
        Ok(Self::from_fn(&self.ring, r0 + other.rows, self.cols, |i, j| {
            if i < r0 { self.get(i, j).clone() } else { other.get(i - r0, j).clone() }
        }))
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            let mut acc = GradedPoly::zero(&self.ring);
            for t in 0..self.cols {
                acc = &acc + &(self.get(i, t) * other.get(t, j));
            }
            acc
        }))
    }

    /// Determinant of a square matrix.
    ///
    /// Uses Laplace expansion along successive rows with every sub-minor on
    /// the leading rows memoized by its column set. This is division-free,
    /// which matters because truncated rings have zero divisors.
    pub fn det(&self) -> Result<GradedPoly> {
        if self.rows != self.cols {
            return Err(AlgebraError::ShapeMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor(&rows, &cols))
    }

    /// The minor on the given (sorted) row and column index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> GradedPoly {
        assert_eq!(rows.len(), cols.len());
        let mut layer: HashMap<u64, GradedPoly> = HashMap::new();
        layer.insert(0, GradedPoly::one(&self.ring));
        for &r in rows {
            layer = self.extend_layer(&layer, r, cols);
        }
        let full: u64 = cols.iter().fold(0, |m, &c| m | (1 << c));
        layer.remove(&full).unwrap_or_else(|| GradedPoly::zero(&self.ring))
    }

    /// Adds one more row to every memoized minor, restricted to `allowed`
    /// columns. Keys are column bitmasks; zero minors are dropped.
    fn extend_layer(&self, layer: &HashMap<u64, GradedPoly>, row: usize, allowed: &[usize]) -> HashMap<u64, GradedPoly> {
        let mut next: HashMap<u64, GradedPoly> = HashMap::new();
        for (&mask, sub) in layer {
            for &c in allowed {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = self.get(row, c);
                if entry.is_zero() {
                    continue;
                }
                // position of c within mask ∪ {c}, and the new row is last
                let above = (mask >> c).count_ones();
                let term = sub * entry;
                if term.is_zero() {
                    continue;
                }
                let term = if above % 2 == 1 { -term } else { term };
                let key = mask | (1 << c);
                match next.get_mut(&key) {
                    Some(v) => *v = &*v + &term,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        next
    }

    /// All `k x k` minors in lexicographic order of (row set, column set).
    pub fn minors(&self, k: usize) -> Vec<GradedPoly> {
        self.indexed_minors(k).into_iter().map(|(_, _, m)| m).collect()
    }

    /// Like [`PolyMatrix::minors`] but tagged with the index sets.
    pub fn indexed_minors(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>, GradedPoly)> {
        if k == 0 {
            return vec![(Vec::new(), Vec::new(), GradedPoly::one(&self.ring))];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        assert!(self.cols <= 64, "minor enumeration supports at most 64 columns");
        let col_sets = combinations(self.cols, k);
        let allowed: Vec<usize> = (0..self.cols).collect();
        let mut out = Vec::new();
        let mut start = HashMap::new();
        start.insert(0u64, GradedPoly::one(&self.ring));
        let mut chosen = Vec::with_capacity(k);
        self.minors_rec(0, k, &start, &allowed, &col_sets, &mut chosen, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn minors_rec(
        &self,
        next_row: usize,
        k: usize,
        layer: &HashMap<u64, GradedPoly>,
        allowed: &[usize],
        col_sets: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>, GradedPoly)>,
    ) {
        if chosen.len() == k {
            for cs in col_sets {
                let mask = cs.iter().fold(0u64, |m, &c| m | (1 << c));
                let v = layer.get(&mask).cloned().unwrap_or_else(|| GradedPoly::zero(&self.ring));
                out.push((chosen.clone(), cs.clone(), v));
            }
            return;
        }
        let remaining = k - chosen.len();
        for r in next_row..=self.rows - remaining {
            let next = self.extend_layer(layer, r, allowed);
            chosen.push(r);
            self.minors_rec(r + 1, k, &next, allowed, col_sets, chosen, out);
            chosen.pop();
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::coeff::CoeffRing;

    fn ring() -> Arc<RingSpec> {
        RingSpec::with_vars(CoeffRing::Integers, &[("a", 1), ("b", 1), ("c", 1), ("d", 1)], 4).unwrap()
    }

    fn p(r: &Arc<RingSpec>, s: &str) -> GradedPoly {
        GradedPoly::parse(r, s).unwrap()
    }

    #[test]
    fn two_by_two_determinant() {
        let r = ring();
        let m = PolyMatrix::new(&r, 2, 2, vec![p(&r, "a"), p(&r, "b"), p(&r, "c"), p(&r, "d")]).unwrap();
        assert_eq!(m.det().unwrap(), p(&r, "a*d - b*c"));
    }

    #[test]
    fn integer_determinant_and_minors() {
        let r = ring();
        let vals = [2, 0, 1, 1, 3, 2, 1, 1, 1];
        let m = PolyMatrix::new(&r, 3, 3, vals.iter().map(|&v| GradedPoly::from_i64(&r, v)).collect()).unwrap();
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert!(m.det().unwrap().is_zero());
        assert_eq!(m.minors(0), vec![GradedPoly::one(&r)]);
        assert_eq!(m.minors(1).len(), 9);
        assert_eq!(m.minors(2).len(), 9);
        assert!(m.minors(4).is_empty());
        let two = m.indexed_minors(2);
        assert_eq!((two[0].0.clone(), two[0].1.clone()), (vec![0, 1], vec![0, 1]));
        assert_eq!(two[0].2, GradedPoly::from_i64(&r, 6));
        assert_eq!((two[1].0.clone(), two[1].1.clone()), (vec![0, 1], vec![0, 2]));
        assert_eq!(two[1].2, GradedPoly::from_i64(&r, 3));
    }

    #[test]
    fn minors_agree_with_submatrix_determinants() {
        let r = ring();
        let names = ["a", "b", "c", "d", "a+b", "c-d", "1", "a*b", "2"];
        let m = PolyMatrix::new(&r, 3, 3, names.iter().map(|s| p(&r, s)).collect()).unwrap();
        for (rows, cols, v) in m.indexed_minors(2) {
            assert_eq!(m.submatrix(&rows, &cols).det().unwrap(), v);
        }
    }

    #[test]
    fn combinations_in_lex_order() {
        assert_eq!(combinations(4, 2), vec![
            vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]
        ]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}

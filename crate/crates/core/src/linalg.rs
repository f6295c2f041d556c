//! Exact linear algebra over the rationals.
//!
//! [`RationalMatrix`] is a dense matrix with Gauss-Jordan reduction (first
//! nonzero pivot, column order), used where the output has to be a
//! reduced row echelon form. [`EchelonBasis`] is an incremental sparse
//! elimination used for the large, very sparse operator matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type SparseVec = BTreeMap<usize, Rational>;

pub fn sparse_add_scaled(target: &mut SparseVec, other: &SparseVec, c: &Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    for (&i, a) in other {
        let v = a * c;
        match target.entry(i) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![vec![rational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch { expected: cols, got: bad.len() });
        }
        Ok(RationalMatrix { rows: rows.len(), cols, data: rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect();
        let cols = data.first().map_or(0, |r| r.len());
        RationalMatrix { rows: data.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (&i, v) in c {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        self.data.iter().map(|r| r.iter().zip(x).fold(rational::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for v in m[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (RationalMatrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null-space basis, one vector per free column in increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![rational::zero(); self.cols];
            v[free] = rational::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r.data[row][free].clone();
            }
            out.push(v);
        }
        out
    }

    /// A solution of `self * x = b` (free variables set to zero), if one exists.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, got: b.len() });
        }
        let mut aug = self.data.clone();
        for (row, v) in aug.iter_mut().zip(b) {
            row.push(v.clone());
        }
        let aug = RationalMatrix { rows: self.rows, cols: self.cols + 1, data: aug };
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![rational::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.data[row][self.cols].clone();
        }
        Ok(Some(x))
    }
}

/// Free-standing form of [`RationalMatrix::kernel_basis`].
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

#[derive(Clone, Debug)]
struct EchelonRow {
    pivot: usize,
    vec: SparseVec,
    combo: SparseVec,
}

/// Incrementally built semi-echelon basis of a span of sparse vectors.
///
/// Each stored row has leading coefficient one at its pivot (its smallest
/// index) and no other stored row is consulted out of pivot order, so the
/// remainder returned by [`EchelonBasis::reduce`] is a linear function of
/// its input. When tracking is on, every row also records its expression in
/// terms of the vectors passed to [`EchelonBasis::insert`].
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<EchelonRow>,
    by_pivot: BTreeMap<usize, usize>,
    inserted: usize,
    track: bool,
}

pub struct Reduction {
    pub remainder: SparseVec,
    /// `input = remainder + Σ combo[j] · inserted[j]` (only when tracking).
    pub combo: SparseVec,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        EchelonBasis { track: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = rem.range(cursor..).find(|(i, _)| self.by_pivot.contains_key(i)).map(|(&i, c)| (i, c.clone()));
            let Some((i, c)) = next else { break };
            let row = &self.rows[self.by_pivot[&i]];
            sparse_add_scaled(&mut rem, &row.vec, &-c.clone());
            if self.track {
                sparse_add_scaled(&mut combo, &row.combo, &c);
            }
            cursor = i + 1;
        }
        Reduction { remainder: rem, combo }
    }

    /// Adds `v` to the spanning set. Returns the dependency (`v = Σ combo[j]·inserted[j]`)
    /// when `v` is already in the span, `None` when it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        if red.remainder.is_empty() {
            return Some(red.combo);
        }
        let (&pivot, lead) = red.remainder.iter().next().unwrap();
        let inv = lead.recip();
        let vec: SparseVec = red.remainder.iter().map(|(&i, c)| (i, c * &inv)).collect();
        let mut combo = SparseVec::new();
        if self.track {
            // remainder = v - Σ combo·inserted
            combo.insert(id, rational::one());
            sparse_add_scaled(&mut combo, &red.combo, &-rational::one());
            combo = combo.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        }
        self.by_pivot.insert(pivot, self.rows.len());
        self.rows.push(EchelonRow { pivot, vec, combo });
        None
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }
}

/// Rank of a set of sparse column vectors.
pub fn sparse_rank(columns: &[SparseVec]) -> usize {
    let mut e = EchelonBasis::new();
    for c in columns {
        e.insert(c);
    }
    e.rank()
}

/// Kernel of the map `x ↦ Σ x_j columns[j]`, one vector per dependent column.
pub fn sparse_kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = EchelonBasis::tracking();
    let mut out = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        if let Some(dep) = e.insert(c) {
            let mut k: SparseVec = dep.into_iter().map(|(i, c)| (i, -c)).collect();
            k.insert(j, rational::one());
            out.push(k);
        }
    }
    out
}

/// Solves `Σ x_j columns[j] = b`.
pub fn sparse_solve(columns: &[SparseVec], b: &SparseVec) -> Option<SparseVec> {
    let mut e = EchelonBasis::tracking();
    for c in columns {
        e.insert(c);
    }
    let red = e.reduce(b);
    red.remainder.is_empty().then_some(red.combo)
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn is_one(c: &Rational) -> bool {
    c.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(2).kernel_basis().is_empty());
        let z = RationalMatrix::zeros(2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, c) in v.iter().enumerate() {
                assert_eq!(*c, if i == j { int(1) } else { int(0) });
            }
        }
        let m = RationalMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = RationalMatrix::from_i64(&[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1]]);
        let (r, p) = m.rref();
        let (r2, p2) = r.rref();
        assert_eq!(r, r2);
        assert_eq!(p, p2);
        assert_eq!(p, vec![0, 2]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve(&[int(1), int(2)]).unwrap(), Some(vec![int(1), int(0)]));
        assert_eq!(m.solve(&[int(1), int(3)]).unwrap(), None);
    }

    #[test]
    fn sparse_and_dense_agree() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3, 0], &[0, 1, 1, 1], &[1, 3, 4, 1]]);
        let cols: Vec<SparseVec> = (0..m.ncols())
            .map(|j| dense_to_sparse(&(0..m.nrows()).map(|i| m.get(i, j).clone()).collect::<Vec<_>>()))
            .collect();
        assert_eq!(sparse_rank(&cols), m.rank());
        for k in sparse_kernel(&cols) {
            let mut acc = SparseVec::new();
            for (&j, c) in &k {
                sparse_add_scaled(&mut acc, &cols[j], c);
            }
            assert!(acc.is_empty());
        }
        assert_eq!(sparse_kernel(&cols).len(), m.kernel_basis().len());
        let b = dense_to_sparse(&[int(3), int(1), int(4)]);
        let x = sparse_solve(&cols, &b).unwrap();
        let mut acc = SparseVec::new();
        for (&j, c) in &x {
            sparse_add_scaled(&mut acc, &cols[j], c);
        }
        assert_eq!(acc, b);
    }
}

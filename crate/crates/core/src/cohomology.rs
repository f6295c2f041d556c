//! Weight-local cohomology of `(F_r A^{0,•}_w, ∂̄)`.
//!
//! For fixed `(w, r)` the valid forms of degree `q` are the kernel of the Euler
//! contraction on a raw coordinate space, so
//! `dim Z^q = dim ker [ι; ∂̄]` on raw degree `q`, and
//! `dim B^q = dim V^{q−1} − dim Z^{q−1}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::RawSpace;
use crate::linalg::{sparse_rank, SparseVec};

/// Stacks two column families with disjoint row ranges.
pub(crate) fn stack(top: Vec<SparseVec>, top_rows: usize, bottom: Vec<SparseVec>) -> Vec<SparseVec> {
    top.into_iter()
        .zip(bottom)
        .map(|(mut a, b)| {
            a.extend(b.into_iter().map(|(k, v)| (k + top_rows, v)));
            a
        })
        .collect()
}

/// `(dim V^q, dim Z^q)` for the slice `(n, p, q, w, r)`.
pub fn valid_and_cycles(n: usize, p: usize, q: usize, w: &[i64], r: u32) -> Result<(usize, usize)> {
    let raw = RawSpace::new(n, p, q, w, r)?;
    if raw.is_empty() {
        return Ok((0, 0));
    }
    let dbar_target = RawSpace::new(n, p, q + 1, w, r)?;
    let dbar = raw.dbar_columns(&dbar_target);
    if q == 0 {
        return Ok((raw.len(), raw.len() - sparse_rank(&dbar)));
    }
    let e_target = RawSpace::new(n, p, q - 1, w, r + 1)?;
    let euler = raw.euler_columns(&e_target);
    let valid = raw.len() - sparse_rank(&euler);
    let both = stack(euler, e_target.len(), dbar);
    Ok((valid, raw.len() - sparse_rank(&both)))
}

/// `dim H^q(F_r A^{0,•}_w, ∂̄)`.
pub fn cohomology_at(n: usize, q: usize, w: &[i64], r: u32) -> Result<usize> {
    if w.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: w.len() });
    }
    let (_, z) = valid_and_cycles(n, 0, q, w, r)?;
    let b = if q == 0 {
        0
    } else {
        let (v, z1) = valid_and_cycles(n, 0, q - 1, w, r)?;
        v - z1
    };
    Ok(z - b)
}

/// Dimension at `r` together with the stabilization flag (`r` and `r+1` agree).
pub fn cohomology_dim(n: usize, q: usize, w: &[i64], r: u32) -> Result<(usize, bool)> {
    let a = cohomology_at(n, q, w, r)?;
    let b = cohomology_at(n, q, w, r + 1)?;
    Ok((a, a == b))
}

/// Limit dimension of `H^q_w` for the punctured disk.
pub fn expected_dim(n: usize, q: usize, w: &[i64]) -> usize {
    if n == 1 {
        return usize::from(q == 0);
    }
    if q == 0 {
        usize::from(w.iter().all(|&x| x >= 0))
    } else if q == n - 1 {
        usize::from(w.iter().all(|&x| x <= -1))
    } else {
        0
    }
}

/// Default escalation ceiling: `n + 2` above the pole mass `Σ max(0, −w_i)`,
/// which bounds the level `1 + Σ(−w_i − 1)` of the multipole classes.
pub fn default_pole_cap(n: usize, w: &[i64]) -> u32 {
    w.iter().map(|&x| (-x).max(0) as u32).sum::<u32>() + n as u32 + 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyCell {
    pub n: usize,
    pub q: usize,
    pub weight: Vec<i64>,
    /// `dims[r]` is the dimension at pole bound `r`.
    pub dims: Vec<usize>,
    /// Least `r` from which the dimensions are constant up to the cap.
    pub stable_from: u32,
    pub dim: usize,
    pub stabilized: bool,
    pub expected: usize,
}

impl CohomologyCell {
    pub fn matches(&self) -> bool {
        self.stabilized && self.dim == self.expected
    }

    /// Dimensions never decrease with the pole bound.
    pub fn monotone(&self) -> bool {
        self.dims.windows(2).all(|p| p[0] <= p[1])
    }
}

/// Computes the dimensions for `r = 0..=cap` and reads off the stable value.
pub fn cohomology_cell(n: usize, q: usize, w: &[i64], cap: Option<u32>) -> Result<CohomologyCell> {
    let cap = cap.unwrap_or_else(|| default_pole_cap(n, w)).max(1);
    let dims = (0..=cap).map(|r| cohomology_at(n, q, w, r)).collect::<Result<Vec<_>>>()?;
    let last = *dims.last().unwrap();
    let stable_from = dims.iter().rposition(|&d| d != last).map_or(0, |k| k + 1) as u32;
    Ok(CohomologyCell {
        n,
        q,
        weight: w.to_vec(),
        stabilized: stable_from < cap,
        dim: last,
        stable_from,
        expected: expected_dim(n, q, w),
        dims,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable {
    pub cells: Vec<CohomologyCell>,
}

impl CohomologyTable {
    pub fn mismatches(&self) -> impl Iterator<Item = &CohomologyCell> {
        self.cells.iter().filter(|c| !c.matches())
    }
}

/// All weights in the box `[-b, b]^n`, lexicographically.
pub fn weight_box(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (-b..=b).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Cells for every `q in 0..n` and every weight of the box, computed in parallel
/// and returned in `(weight, q)` order.
pub fn cohomology_table(n: usize, bound: i64, cap: Option<u32>) -> Result<CohomologyTable> {
    let keys: Vec<(Vec<i64>, usize)> =
        weight_box(n, bound).into_iter().flat_map(|w| (0..n).map(move |q| (w.clone(), q))).collect();
    let cells = keys.par_iter().map(|(w, q)| cohomology_cell(n, *q, w, cap)).collect::<Result<Vec<_>>>()?;
    Ok(CohomologyTable { cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(cohomology_cell(2, 0, &[1, 2], None).unwrap().dim, 1);
        assert_eq!(cohomology_cell(2, 1, &[-1, -3], None).unwrap().dim, 1);
        assert_eq!(cohomology_cell(2, 1, &[0, -2], None).unwrap().dim, 0);
        for w in [[-1, -1, -1], [0, 0, 0], [-2, 1, -1]] {
            assert_eq!(cohomology_cell(3, 1, &w, None).unwrap().dim, 0);
        }
    }

    #[test]
    fn one_dimensional_laurent() {
        for a in -4..=4 {
            let c = cohomology_cell(1, 0, &[a], None).unwrap();
            assert!(c.matches(), "{c:?}");
        }
    }

    #[test]
    fn small_box_n2() {
        let t = cohomology_table(2, 2, None).unwrap();
        for c in &t.cells {
            assert!(c.matches(), "{c:?}");
        }
    }
}

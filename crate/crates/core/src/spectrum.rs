//! GL_n representation theory of the truncated form spaces.
//!
//! Weight multiplicities of irreducibles are counted with Gelfand–Tsetlin
//! patterns. Inside `F_r A^{0,q}` the numerator bidegree is preserved by the
//! `gl_n` action, so the forms with a fixed weight sum `d` make up a
//! finite-dimensional representation whose character can be decomposed exactly.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cohomology::stack;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::forms::RawSpace;
use crate::linalg::{sparse_kernel, sparse_rank, SparseVec};

pub type DominantWeight = Vec<i64>;

pub fn check_dominant(alpha: &[i64]) -> Result<()> {
    if alpha.windows(2).all(|p| p[0] >= p[1]) {
        Ok(())
    } else {
        Err(Error::NotDominant(alpha.to_vec()))
    }
}

pub fn is_dominant(alpha: &[i64]) -> bool {
    check_dominant(alpha).is_ok()
}

/// Whether `Σ^α` occurs in `A^{0,p}` of the `n`-dimensional punctured disk:
/// `α_1 ≥ 0 ≥ α_2 ≥ 0 ≥ ⋯ ≥ 0 ≥ α_{n−p} ≥ −1 ≥ α_{n−p+1} ≥ −1 ≥ ⋯ ≥ −1 ≥ α_n`.
pub fn interlacing_predicate(alpha: &[i64], p: usize, n: usize) -> Result<bool> {
    if alpha.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: alpha.len() });
    }
    check_dominant(alpha)?;
    if n == 0 || p >= n {
        return Err(Error::Config(format!("form degree {p} outside 0..{n}")));
    }
    // separator between α_i and α_{i+1} (1-based i): 0 for i < n − p, else −1
    Ok((1..n).all(|i| {
        let sep = if i < n - p { 0 } else { -1 };
        alpha[i - 1] >= sep && sep >= alpha[i]
    }))
}

/// All `β` with `α_1 ≥ β_1 ≥ α_2 ≥ ⋯ ≥ β_{n−1} ≥ α_n`.
pub fn branching_restriction(alpha: &[i64]) -> Result<Vec<DominantWeight>> {
    check_dominant(alpha)?;
    if alpha.len() < 2 {
        return Err(Error::Config("branching needs n ≥ 2".into()));
    }
    let mut out = vec![vec![]];
    for i in 0..alpha.len() - 1 {
        out = out
            .into_iter()
            .flat_map(|b: Vec<i64>| {
                (alpha[i + 1]..=alpha[i]).rev().map(move |x| {
                    let mut v = b.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

/// Counts Gelfand–Tsetlin patterns below a fixed top row by weight.
#[derive(Default)]
pub struct GtCounter {
    memo: HashMap<(Vec<i64>, Vec<i64>), u64>,
}

impl GtCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Patterns with top row `top` whose row sums realize `w` cumulatively.
    pub fn count(&mut self, top: &[i64], w: &[i64]) -> u64 {
        let m = top.len();
        if top.iter().sum::<i64>() != w.iter().sum::<i64>() {
            return 0;
        }
        if m == 1 {
            return 1;
        }
        let key = (top.to_vec(), w.to_vec());
        if let Some(&c) = self.memo.get(&key) {
            return c;
        }
        let target: i64 = w[..m - 1].iter().sum();
        let mut total = 0;
        let mut beta = vec![0i64; m - 1];
        self.enumerate(top, 0, target, &mut beta, &w[..m - 1], &mut total);
        self.memo.insert(key, total);
        total
    }

    fn enumerate(&mut self, top: &[i64], i: usize, rest: i64, beta: &mut Vec<i64>, w: &[i64], total: &mut u64) {
        let m = top.len() - 1;
        if i == m {
            if rest == 0 {
                let b = beta.clone();
                *total += self.count(&b, w);
            }
            return;
        }
        // remaining entries are bounded by the interlacing windows
        let lo_rest: i64 = (i + 1..m).map(|k| top[k + 1]).sum();
        let hi_rest: i64 = (i + 1..m).map(|k| top[k]).sum();
        for x in top[i + 1]..=top[i] {
            let r = rest - x;
            if r < lo_rest || r > hi_rest {
                continue;
            }
            beta[i] = x;
            self.enumerate(top, i + 1, r, beta, w, total);
        }
    }
}

/// Multiplicity of the torus weight `w` in `Σ^α`. Negative entries are handled by
/// the uniform shift `α → α + c(1,…,1)`, `w → w + c(1,…,1)`.
pub fn weight_multiplicity(alpha: &[i64], w: &[i64]) -> Result<u64> {
    if alpha.len() != w.len() {
        return Err(Error::LengthMismatch { expected: alpha.len(), got: w.len() });
    }
    check_dominant(alpha)?;
    let c = (-alpha.iter().copied().min().unwrap_or(0)).max(0);
    let top: Vec<i64> = alpha.iter().map(|a| a + c).collect();
    let ws: Vec<i64> = w.iter().map(|x| x + c).collect();
    Ok(GtCounter::new().count(&top, &ws))
}

/// All weights of `Σ^α` with their multiplicities.
pub fn character(alpha: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    check_dominant(alpha)?;
    let n = alpha.len();
    let mut out = BTreeMap::new();
    let mut counter = GtCounter::new();
    let (lo, hi) = (*alpha.last().unwrap_or(&0), *alpha.first().unwrap_or(&0));
    let total: i64 = alpha.iter().sum();
    let mut stack = vec![vec![]];
    while let Some(w) = stack.pop() {
        if w.len() == n {
            if w.iter().sum::<i64>() == total {
                let c = counter.count(alpha, &w);
                if c > 0 {
                    out.insert(w, c);
                }
            }
            continue;
        }
        for x in lo..=hi {
            let mut v: Vec<i64> = w.clone();
            v.push(x);
            stack.push(v);
        }
    }
    Ok(out)
}

/// Weyl's dimension formula `Π_{i<j} (α_i − α_j + j − i)/(j − i)`.
pub fn weyl_dimension(alpha: &[i64]) -> Result<u64> {
    check_dominant(alpha)?;
    let n = alpha.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= (alpha[i] - alpha[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    Ok((num / den) as u64)
}

pub fn gt_dimension(alpha: &[i64]) -> Result<u64> {
    Ok(character(alpha)?.values().sum())
}

fn shifted(w: &[i64], i: usize, j: usize) -> Vec<i64> {
    let mut v = w.to_vec();
    v[i] += 1;
    v[j] -= 1;
    v
}

/// Columns of `[ι; E_{12}; …; E_{n−1,n}]` on the raw space of degree `(0, q)`.
fn highest_weight_system(n: usize, q: usize, alpha: &[i64], r: u32) -> Result<(RawSpace, Vec<SparseVec>)> {
    let raw = RawSpace::new(n, 0, q, alpha, r)?;
    let mut cols: Vec<SparseVec> = vec![SparseVec::new(); raw.len()];
    let mut offset = 0;
    if q > 0 {
        let t = RawSpace::new(n, 0, q - 1, alpha, r + 1)?;
        cols = stack(cols, 0, raw.euler_columns(&t));
        offset = t.len();
    }
    for i in 0..n.saturating_sub(1) {
        let t = RawSpace::new(n, 0, q, &shifted(alpha, i, i + 1), r)?;
        cols = stack(cols, offset, raw.gl_columns(i, i + 1, &t));
        offset += t.len();
    }
    Ok((raw, cols))
}

/// Dimension of the valid weight-`α` forms of degree `q` and level `≤ r` killed by all `E_{i,i+1}`.
pub fn hwv_multiplicity(n: usize, q: usize, alpha: &[i64], r: u32) -> Result<usize> {
    let (raw, cols) = highest_weight_system(n, q, alpha, r)?;
    Ok(raw.len() - sparse_rank(&cols))
}

/// The highest-weight vectors themselves.
pub fn hwv_vectors(n: usize, q: usize, alpha: &[i64], r: u32) -> Result<Vec<Form>> {
    let (raw, cols) = highest_weight_system(n, q, alpha, r)?;
    Ok(sparse_kernel(&cols).iter().map(|v| raw.to_form(v)).collect())
}

/// Dimension of the valid forms of degree `(0, q)`, weight `w`, level `≤ r`.
pub fn valid_weight_dim(n: usize, q: usize, w: &[i64], r: u32) -> Result<usize> {
    crate::forms::valid_dimension(n, 0, q, w, r)
}

/// Complete weight table of `F_r A^{0,q}` in weight sum `d`: a finite-dimensional
/// `gl_n`-representation. Weights with zero dimension inside the bounding box are
/// listed explicitly so that the table declares its region.
pub fn form_weight_table(n: usize, q: usize, r: u32, d: i64) -> Result<BTreeMap<Vec<i64>, u64>> {
    let lo = -(r as i64) - q as i64;
    let hi = d + r as i64 + q as i64;
    let mut out = BTreeMap::new();
    let mut stack = vec![vec![]];
    while let Some(w) = stack.pop() {
        if w.len() == n {
            if w.iter().sum::<i64>() == d {
                out.insert(w.clone(), valid_weight_dim(n, q, &w, r)? as u64);
            }
            continue;
        }
        for x in lo..=hi {
            let mut v: Vec<i64> = w.clone();
            v.push(x);
            stack.push(v);
        }
    }
    Ok(out)
}

/// Subtractive highest-weight decomposition of a weight table.
///
/// The table's keys declare the region; every weight of every subtracted
/// irreducible must lie in it, and residuals must never go negative.
pub fn character_decompose(table: &BTreeMap<Vec<i64>, u64>) -> Result<BTreeMap<DominantWeight, u64>> {
    let mut residual: BTreeMap<Vec<i64>, i64> = table.iter().map(|(k, v)| (k.clone(), *v as i64)).collect();
    let mut out = BTreeMap::new();
    // Lexicographic order refines dominance on weights with equal sums, so the
    // largest remaining weight is always a highest weight.
    while let Some((w, m)) = residual.iter().rev().find(|(_, m)| **m != 0).map(|(w, m)| (w.clone(), *m)) {
        if m < 0 {
            return Err(Error::InconsistentTable(format!("negative residual {m} at weight {w:?}")));
        }
        if !is_dominant(&w) {
            return Err(Error::InconsistentTable(format!("largest remaining weight {w:?} is not dominant")));
        }
        for (mu, k) in character(&w)? {
            let slot = residual.get_mut(&mu).ok_or_else(|| {
                Error::InconsistentTable(format!("weight {mu:?} of Σ^{w:?} lies outside the table region"))
            })?;
            *slot -= m * k as i64;
            if *slot < 0 {
                return Err(Error::InconsistentTable(format!("negative residual at weight {mu:?}")));
            }
        }
        out.insert(w, m as u64);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumCell {
    pub n: usize,
    pub q: usize,
    pub alpha: Vec<i64>,
    /// Multiplicity at each pole bound `0..=cap`.
    pub multiplicities: Vec<usize>,
    pub predicate: bool,
}

impl SpectrumCell {
    pub fn simple(&self) -> bool {
        self.multiplicities.iter().all(|&m| m <= 1)
    }

    pub fn matches(&self) -> bool {
        self.simple() && *self.multiplicities.last().unwrap_or(&0) == usize::from(self.predicate)
    }
}

pub fn default_spectrum_cap(n: usize, alpha: &[i64]) -> u32 {
    alpha.iter().map(|a| a.unsigned_abs() as u32).sum::<u32>() + n as u32 + 1
}

pub fn spectrum_cell(n: usize, q: usize, alpha: &[i64], cap: Option<u32>) -> Result<SpectrumCell> {
    let cap = cap.unwrap_or_else(|| default_spectrum_cap(n, alpha));
    let multiplicities = (0..=cap).map(|r| hwv_multiplicity(n, q, alpha, r)).collect::<Result<Vec<_>>>()?;
    Ok(SpectrumCell { n, q, alpha: alpha.to_vec(), multiplicities, predicate: interlacing_predicate(alpha, q, n)? })
}

/// Dominant weights in `[−b, b]^n`.
pub fn dominant_box(n: usize, b: i64) -> Vec<Vec<i64>> {
    crate::cohomology::weight_box(n, b).into_iter().filter(|w| is_dominant(w)).collect()
}

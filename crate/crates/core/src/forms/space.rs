//! Finite coordinate spaces for weight- and pole-truncated forms.
//!
//! `RawSpace(n, p, q, w, r)` has one coordinate per `(I, J, z^a z*^b)` with
//! `|I| = p`, `|J| = q`, `|b| = r` and `a − b + e_I − e_J = w`; the coordinate
//! stands for `z^a z*^b dz_I ∧ dz*_J / s^{r+q}`. These are exactly the
//! z*-homogeneous forms of weight `w` and level `≤ r`; the valid ones are the
//! kernel of the Euler contraction. Operators are assembled directly on the
//! numerators (fixed denominators, no normalization).

use std::collections::HashMap;

use num_traits::Zero;

use super::coefficient::LocalizedCoefficient;
use super::form::{Form, WeightVector};
use super::wedge::{self, bits, WedgeKey};
use crate::error::{Error, Result};
use crate::linalg::{sparse_kernel, sparse_rank, SparseVec};
use crate::poly::{Monomial, SparsePolynomial};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceKey {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub weight: WeightVector,
    pub r: u32,
}

#[derive(Clone, Debug)]
pub struct RawSpace {
    key: SpaceKey,
    coords: Vec<(WedgeKey, Monomial)>,
    lookup: HashMap<(WedgeKey, Monomial), usize>,
}

fn subsets(n: usize, size: usize) -> Vec<u16> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == size).map(|m| m as u16).collect()
}

/// Exponent vectors of length `n` summing to `total`, in lexicographic order.
fn compositions(n: usize, total: u32) -> Vec<Vec<u16>> {
    fn go(n: usize, total: u32, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() + 1 == n {
            prefix.push(total as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=total).rev() {
            prefix.push(e as u16);
            go(n, total - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(n, total, &mut Vec::new(), &mut out);
    out
}

impl RawSpace {
    pub fn new(n: usize, p: usize, q: usize, weight: &[i64], r: u32) -> Result<Self> {
        if weight.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: weight.len() });
        }
        let key = SpaceKey { n, p, q, weight: weight.to_vec(), r };
        let mut coords = Vec::new();
        if p <= n && q <= n {
            let bs = compositions(n, r);
            for &i in &subsets(n, p) {
                for &j in &subsets(n, q) {
                    let wk = WedgeKey::new(i, j);
                    'b: for b in &bs {
                        let mut a = Vec::with_capacity(n);
                        for k in 0..n {
                            let e =
                                weight[k] + b[k] as i64 - i64::from(i & (1 << k) != 0) + i64::from(j & (1 << k) != 0);
                            if e < 0 {
                                continue 'b;
                            }
                            a.push(e as u16);
                        }
                        coords.push((wk, Monomial::new(&a, b)));
                    }
                }
            }
        }
        coords.sort();
        let lookup = coords.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        Ok(RawSpace { key, coords, lookup })
    }

    pub fn key(&self) -> &SpaceKey {
        &self.key
    }

    pub fn n(&self) -> usize {
        self.key.n
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Power of `s` in the common denominator.
    pub fn denominator(&self) -> u32 {
        self.key.r + self.key.q as u32
    }

    pub fn coordinate(&self, k: usize) -> &(WedgeKey, Monomial) {
        &self.coords[k]
    }

    pub fn index_of(&self, key: WedgeKey, m: &Monomial) -> Option<usize> {
        self.lookup.get(&(key, m.clone())).copied()
    }

    pub fn to_form(&self, v: &SparseVec) -> Form {
        let n = self.n();
        let mut nums: std::collections::BTreeMap<WedgeKey, SparsePolynomial> = Default::default();
        for (k, c) in v {
            let (wk, m) = &self.coords[*k];
            nums.entry(*wk).or_insert_with(|| SparsePolynomial::zero(n)).add_term(m.clone(), c.clone());
        }
        let den = self.denominator();
        Form::from_terms(n, nums.into_iter().map(|(k, p)| (k, LocalizedCoefficient::new(p, den))))
    }

    pub fn basis_form(&self, k: usize) -> Form {
        let mut v = SparseVec::new();
        v.insert(k, rational::one());
        self.to_form(&v)
    }

    /// Coordinates of `f`, or `NotInSpace` if `f` is not in this space.
    pub fn coordinates(&self, f: &Form) -> Result<SparseVec> {
        let den = self.denominator();
        let mut v = SparseVec::new();
        for (k, c) in f.terms() {
            let num = c
                .numerator_at(den)
                .ok_or_else(|| Error::NotInSpace(format!("pole order {} exceeds {} at {}", c.pole(), den, k)))?;
            for (m, a) in num.terms() {
                let idx = self
                    .index_of(*k, m)
                    .ok_or_else(|| Error::NotInSpace(format!("monomial {} at {} outside {:?}", m, k, self.key)))?;
                v.insert(idx, a.clone());
            }
        }
        Ok(v)
    }

    /// Columns of the Euler contraction into `RawSpace(p, q−1, w, r+1)`.
    pub fn euler_columns(&self, target: &RawSpace) -> Vec<SparseVec> {
        let n = self.n();
        self.coords
            .iter()
            .map(|(key, m)| {
                let mut col = SparseVec::new();
                for (pos, j) in bits(key.dzs).enumerate() {
                    let k = WedgeKey::new(key.dz, key.dzs & !(1 << j));
                    let mm = m.mul(&Monomial::zs_var(n, j));
                    push(&mut col, target, k, &mm, rational::sign(key.p() + pos));
                }
                col
            })
            .collect()
    }

    /// Columns of `∂̄` into `RawSpace(p, q+1, w, r)`.
    pub fn dbar_columns(&self, target: &RawSpace) -> Vec<SparseVec> {
        let n = self.n();
        let den = self.denominator();
        self.coords
            .iter()
            .map(|(key, m)| {
                let mut col = SparseVec::new();
                for nu in 0..n {
                    let Some((e, k)) = wedge::prepend_dzs(nu, *key) else { continue };
                    let num = quotient_rule(n, m, n + nu, den);
                    for (mm, c) in num.terms() {
                        push(&mut col, target, k, mm, c * rational::sign(e));
                    }
                }
                col
            })
            .collect()
    }

    /// Columns of `∂` into `RawSpace(p+1, q, w, r+1)`.
    pub fn del_columns(&self, target: &RawSpace) -> Vec<SparseVec> {
        let n = self.n();
        let den = self.denominator();
        self.coords
            .iter()
            .map(|(key, m)| {
                let mut col = SparseVec::new();
                for nu in 0..n {
                    let Some((e, k)) = wedge::prepend_dz(nu, *key) else { continue };
                    let num = quotient_rule(n, m, nu, den);
                    for (mm, c) in num.terms() {
                        push(&mut col, target, k, mm, c * rational::sign(e));
                    }
                }
                col
            })
            .collect()
    }

    /// Columns of `E_ij` (0-based) into `RawSpace(p, q, w + e_i − e_j, r)`.
    pub fn gl_columns(&self, i: usize, j: usize, target: &RawSpace) -> Vec<SparseVec> {
        let n = self.n();
        self.coords
            .iter()
            .map(|(key, m)| {
                let mut col = SparseVec::new();
                let zj = m.exp(j);
                if zj > 0 {
                    let mm = m.with_exp(j, zj - 1).mul(&Monomial::z_var(n, i));
                    push(&mut col, target, *key, &mm, rational::int(zj as i64));
                }
                let wi = m.exp(n + i);
                if wi > 0 {
                    let mm = m.with_exp(n + i, wi - 1).mul(&Monomial::zs_var(n, j));
                    push(&mut col, target, *key, &mm, -rational::int(wi as i64));
                }
                if key.dz & (1 << j) != 0 {
                    if let Some((e, d)) = wedge::replace_index(key.dz, j, i) {
                        push(&mut col, target, WedgeKey::new(d, key.dzs), m, rational::sign(e));
                    }
                }
                if key.dzs & (1 << i) != 0 {
                    if let Some((e, d)) = wedge::replace_index(key.dzs, i, j) {
                        push(&mut col, target, WedgeKey::new(key.dz, d), m, rational::sign(e + 1));
                    }
                }
                col
            })
            .collect()
    }
}

/// Numerator of `∂/∂x_k (m / s^den)` over `s^{den+1}`.
fn quotient_rule(n: usize, m: &Monomial, k: usize, den: u32) -> SparsePolynomial {
    let mut out = SparsePolynomial::zero(n);
    let e = m.exp(k);
    if e > 0 {
        let dm = m.with_exp(k, e - 1);
        let s = SparsePolynomial::quadric(n);
        out.add_scaled(&s.mul_monomial(&dm, &rational::int(e as i64)), &rational::one());
    }
    if den > 0 {
        // ∂s/∂z_ν = z*_ν, ∂s/∂z*_ν = z_ν
        let ds = if k < n { Monomial::zs_var(n, k) } else { Monomial::z_var(n, k - n) };
        out.add_term(m.mul(&ds), -rational::int(den as i64));
    }
    out
}

fn push(col: &mut SparseVec, target: &RawSpace, key: WedgeKey, m: &Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    let idx =
        target.index_of(key, m).unwrap_or_else(|| panic!("operator image {} {} escapes {:?}", key, m, target.key));
    let slot = col.entry(idx).or_insert_with(rational::zero);
    *slot += c;
    if slot.is_zero() {
        col.remove(&idx);
    }
}

/// The valid forms of a raw space, as a kernel basis of the Euler contraction.
#[derive(Clone, Debug)]
pub struct ValidSpace {
    pub raw: RawSpace,
    pub basis: Vec<SparseVec>,
}

impl ValidSpace {
    pub fn new(n: usize, p: usize, q: usize, weight: &[i64], r: u32) -> Result<Self> {
        let raw = RawSpace::new(n, p, q, weight, r)?;
        let basis = if q == 0 {
            (0..raw.len()).map(|k| SparseVec::from([(k, rational::one())])).collect()
        } else {
            let target = RawSpace::new(n, p, q - 1, weight, r + 1)?;
            sparse_kernel(&raw.euler_columns(&target))
        };
        Ok(ValidSpace { raw, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn forms(&self) -> Vec<Form> {
        self.basis.iter().map(|v| self.raw.to_form(v)).collect()
    }
}

/// Dimension of the valid forms in `RawSpace(n, p, q, w, r)`.
pub fn valid_dimension(n: usize, p: usize, q: usize, weight: &[i64], r: u32) -> Result<usize> {
    let raw = RawSpace::new(n, p, q, weight, r)?;
    if q == 0 {
        return Ok(raw.len());
    }
    let target = RawSpace::new(n, p, q - 1, weight, r + 1)?;
    Ok(raw.len() - sparse_rank(&raw.euler_columns(&target)))
}

/// A basis of the valid forms of bidegree `(p, q)`, weight `w` and level `≤ r`.
pub fn basis(n: usize, p: usize, q: usize, weight: &[i64], r: u32) -> Result<Vec<Form>> {
    Ok(ValidSpace::new(n, p, q, weight, r)?.forms())
}

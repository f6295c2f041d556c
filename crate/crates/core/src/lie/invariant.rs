use std::collections::BTreeMap;

use num_traits::Zero;

use super::algebra::{matrix_product, trace, FiniteLieAlgebra, LieHom};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A symmetric `m`-linear form on a Lie algebra, stored on sorted basis-index multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPolynomial {
    pub degree: usize,
    pub dim: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

fn multisets(dim: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let start = v.last().copied().unwrap_or(0);
                (start..dim).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

impl InvariantPolynomial {
    pub fn zero(dim: usize, degree: usize) -> Self {
        InvariantPolynomial { degree, dim, coeffs: BTreeMap::new() }
    }

    /// A symmetric form from values on index multisets (keys in any order).
    /// No invariance is imposed.
    pub fn from_values(dim: usize, degree: usize, values: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (mut k, v) in values {
            k.sort_unstable();
            if !v.is_zero() {
                coeffs.insert(k, v);
            }
        }
        InvariantPolynomial { degree, dim, coeffs }
    }

    /// Value on basis elements `e_{k_1}, …, e_{k_m}` (any order).
    pub fn eval(&self, ks: &[usize]) -> Rational {
        let mut key = ks.to_vec();
        key.sort_unstable();
        self.coeffs.get(&key).cloned().unwrap_or_else(rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Rational, other: &Self, b: &Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        for k in self.coeffs.keys().chain(other.coeffs.keys()) {
            let v = a * self.eval(k) + b * other.eval(k);
            if !v.is_zero() {
                coeffs.insert(k.clone(), v);
            }
        }
        InvariantPolynomial { degree: self.degree, dim: self.dim, coeffs }
    }

    /// `φ^* P` for a homomorphism `φ: src → target algebra of self`.
    pub fn pullback(&self, phi: &LieHom, src_dim: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        for key in multisets(src_dim, self.degree) {
            // expand multilinearly through the images
            let mut acc = vec![(Vec::<usize>::new(), rational::one())];
            for k in &key {
                acc = acc
                    .into_iter()
                    .flat_map(|(ks, c)| {
                        phi.images[*k].iter().map(move |(j, a)| {
                            let mut v = ks.clone();
                            v.push(*j);
                            (v, &c * a)
                        })
                    })
                    .collect();
            }
            let v: Rational = acc.iter().map(|(ks, c)| c * self.eval(ks)).sum();
            if !v.is_zero() {
                coeffs.insert(key, v);
            }
        }
        InvariantPolynomial { degree: self.degree, dim: src_dim, coeffs }
    }

    /// `Σ_j P(x_1, …, [e_z, x_j], …, x_m)` over all basis `z` and basis tuples;
    /// returns the first nonzero residual found.
    pub fn ad_invariance_residual(&self, lie: &FiniteLieAlgebra) -> Option<(usize, Vec<usize>, Rational)> {
        let d = lie.dim();
        for z in 0..d {
            for xs in multisets(d, self.degree) {
                let mut total = rational::zero();
                for j in 0..xs.len() {
                    for (k, c) in lie.bracket(z, xs[j]) {
                        let mut ys = xs.clone();
                        ys[j] = *k;
                        total += c * self.eval(&ys);
                    }
                }
                if !total.is_zero() {
                    return Some((z, xs, total));
                }
            }
        }
        None
    }
}

/// The polarized power trace `P(x_1, …, x_m) = (1/m!) Σ_σ tr(φ(x_σ1)⋯φ(x_σm))`.
pub fn build_p_phi(lie: &FiniteLieAlgebra, m: usize) -> Result<InvariantPolynomial> {
    let mats = lie.realization().ok_or_else(|| Error::MissingRealization(lie.name.clone()))?;
    if m < 2 {
        return Err(Error::Config(format!("invariant polynomial degree {m} < 2")));
    }
    let perms = permutations(m);
    let norm = rational::factorial(m as u32).recip();
    let mut coeffs = BTreeMap::new();
    for key in multisets(lie.dim(), m) {
        let mut total = rational::zero();
        for p in &perms {
            let ms: Vec<_> = p.iter().map(|&i| &mats[key[i]]).collect();
            total += trace(&matrix_product(&ms));
        }
        let v = total * &norm;
        if !v.is_zero() {
            coeffs.insert(key, v);
        }
    }
    Ok(InvariantPolynomial { degree: m, dim: lie.dim(), coeffs })
}

pub(crate) fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    permutations(m)
}

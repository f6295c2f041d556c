//! Sparse polynomials in `z_1..z_n, z*_1..z*_n` with exact rational coefficients.
//!
//! Monomials are ordered graded-lexicographically on the concatenated exponent
//! vector `(z_1..z_n, z*_1..z*_n)`, so the largest key of a polynomial is its
//! leading monomial. Under this order the leading monomial of the quadric
//! `s = Σ z_ν z*_ν` is `z_1 z*_1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type Exponents = SmallVec<[u16; 8]>;

/// `z^a z*^b`, stored as the concatenation `(a_1..a_n, b_1..b_n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, 2 * n) }
    }

    pub fn new(z: &[u16], zs: &[u16]) -> Self {
        assert_eq!(z.len(), zs.len(), "z and z* exponent vectors differ in length");
        let mut exps = Exponents::with_capacity(2 * z.len());
        exps.extend_from_slice(z);
        exps.extend_from_slice(zs);
        Monomial { exps }
    }

    pub fn z_var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn zs_var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[n + i] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn z(&self) -> &[u16] {
        &self.exps[..self.dim()]
    }

    pub fn zs(&self) -> &[u16] {
        &self.exps[self.dim()..]
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn z_degree(&self) -> u32 {
        self.z().iter().map(|&e| e as u32).sum()
    }

    pub fn zs_degree(&self) -> u32 {
        self.zs().iter().map(|&e| e as u32).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Torus weight `a - b`.
    pub fn weight(&self) -> Vec<i64> {
        let n = self.dim();
        (0..n).map(|i| self.exps[i] as i64 - self.exps[n + i] as i64).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial { exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() }
    }

    /// Exponent of the variable at concatenated position `k`.
    pub fn exp(&self, k: usize) -> u16 {
        self.exps[k]
    }

    pub fn with_exp(&self, k: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.exps[k] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut parts = Vec::new();
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if k < n { format!("z{}", k + 1) } else { format!("w{}", k - n + 1) };
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{}^{}", name, e));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A polynomial in `k[z, z*]`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePolynomial {
    pub fn zero(n: usize) -> Self {
        SparsePolynomial { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(n, Monomial::one(n), c)
    }

    pub fn term(n: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.dim(), n);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SparsePolynomial { n, terms }
    }

    pub fn z(n: usize, i: usize) -> Self {
        Self::term(n, Monomial::z_var(n, i), rational::one())
    }

    pub fn zs(n: usize, i: usize) -> Self {
        Self::term(n, Monomial::zs_var(n, i), rational::one())
    }

    /// The incidence quadric `s = Σ z_ν z*_ν`.
    pub fn quadric(n: usize) -> Self {
        let mut p = Self::zero(n);
        for i in 0..n {
            let m = Monomial::z_var(n, i).mul(&Monomial::zs_var(n, i));
            p.terms.insert(m, rational::one());
        }
        p
    }

    pub fn quadric_power(n: usize, k: u32) -> Self {
        let s = Self::quadric(n);
        let mut acc = Self::one(n);
        for _ in 0..k {
            acc = acc.mul_poly(&s);
        }
        acc
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.dim(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparsePolynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> SparsePolynomial {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SparsePolynomial { n: self.n, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> SparsePolynomial {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SparsePolynomial { n: self.n, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    /// Exact product.
    pub fn multiply(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.mul_poly(other))
    }

    pub(crate) fn mul_poly(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SparsePolynomial {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// Partial derivative with respect to the variable at concatenated position `k`
    /// (`k < n` is `z_{k+1}`, `k >= n` is `z*_{k-n+1}`).
    pub fn derivative(&self, k: usize) -> SparsePolynomial {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exp(k);
            if e > 0 {
                out.add_term(m.with_exp(k, e - 1), c * rational::int(e as i64));
            }
        }
        out
    }

    pub fn d_z(&self, i: usize) -> SparsePolynomial {
        self.derivative(i)
    }

    pub fn d_zs(&self, i: usize) -> SparsePolynomial {
        self.derivative(self.n + i)
    }

    /// `Some(d)` when every monomial has z*-degree `d`.
    pub fn zs_homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.zs_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Value at `z = 0, z* = 0`.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.n))
    }

    /// Quotient by `s` if `s` divides `self`, otherwise `None`.
    ///
    /// Division by a single polynomial leaves a zero remainder exactly when it
    /// divides, so leading-term reduction decides membership. For `n = 1` the
    /// quadric is the monomial `z_1 z*_1` and this reduces to an exponent check.
    pub fn divide_by_quadric_once(&self) -> Option<SparsePolynomial> {
        let n = self.n;
        if self.is_zero() {
            return Some(self.clone());
        }
        let lead_s = Monomial::z_var(n, 0).mul(&Monomial::zs_var(n, 0));
        if n == 1 {
            let mut q = Self::zero(n);
            for (m, c) in &self.terms {
                if !lead_s.divides(m) {
                    return None;
                }
                q.terms.insert(lead_s.quotient_of(m), c.clone());
            }
            return Some(q);
        }
        let s = Self::quadric(n);
        let mut rem = self.clone();
        let mut q = Self::zero(n);
        while let Some((m, c)) = rem.leading() {
            if !lead_s.divides(m) {
                return None;
            }
            let t = lead_s.quotient_of(m);
            let c = c.clone();
            rem.add_scaled(&s.mul_monomial(&t, &rational::one()), &-c.clone());
            q.add_term(t, c);
        }
        Some(q)
    }

    /// Largest `k` with `s^k | self` together with the quotient; zero maps to `(0, 0)`.
    pub fn strip_quadric(&self) -> (u32, SparsePolynomial) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.divide_by_quadric_once() {
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    pub fn weights(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.terms.keys().map(|m| m.weight())
    }
}

/// Outcome of dividing by a power of the quadric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Division {
    Exact(SparsePolynomial),
    Failure,
}

/// `q` with `s^k q = p`, or `Failure` when no polynomial `q` exists.
pub fn exact_divide_by_quadric(p: &SparsePolynomial, k: u32) -> Division {
    let mut cur = p.clone();
    for _ in 0..k {
        match cur.divide_by_quadric_once() {
            Some(q) => cur = q,
            None => return Division::Failure,
        }
    }
    Division::Exact(cur)
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_one = m.total_degree() == 0;
            if a.is_one() {
                write!(f, "{}", m)?;
            } else if is_one {
                write!(f, "{}", rational::to_text(&a))?;
            } else {
                write!(f, "{}*{}", rational::to_text(&a), m)?;
            }
        }
        Ok(())
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        out.add_scaled(rhs, &rational::one());
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        out.add_scaled(rhs, &-rational::one());
        out
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.n, rhs.n);
        self.mul_poly(rhs)
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        self.scale(&-rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn binomial_square() {
        let n = 1;
        let p = &SparsePolynomial::z(n, 0) + &SparsePolynomial::zs(n, 0);
        let sq = p.multiply(&p).unwrap();
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&Monomial::new(&[1], &[1])), int(2));
        assert_eq!(sq.coeff(&Monomial::new(&[2], &[0])), int(1));
        assert_eq!(sq.coeff(&Monomial::new(&[0], &[2])), int(1));
    }

    #[test]
    fn times_zero_and_dimension_mismatch() {
        let p = SparsePolynomial::quadric(2);
        assert!(p.multiply(&SparsePolynomial::zero(2)).unwrap().is_zero());
        assert_eq!(p.multiply(&SparsePolynomial::one(3)), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn grlex_leading_term_of_quadric() {
        let s = SparsePolynomial::quadric(3);
        let (m, _) = s.leading().unwrap();
        assert_eq!(m, &Monomial::new(&[1, 0, 0], &[1, 0, 0]));
    }

    #[test]
    fn division_examples() {
        let s = SparsePolynomial::quadric(2);
        assert_eq!(exact_divide_by_quadric(&s, 1), Division::Exact(SparsePolynomial::one(2)));
        let s2 = s.pow(2);
        assert_eq!(exact_divide_by_quadric(&s2, 2), Division::Exact(SparsePolynomial::one(2)));
        let z1w1 = SparsePolynomial::term(2, Monomial::new(&[1, 0], &[1, 0]), int(1));
        assert_eq!(exact_divide_by_quadric(&z1w1, 1), Division::Failure);
        // n = 1: s is a monomial
        let m = SparsePolynomial::term(1, Monomial::new(&[3], &[2]), int(5));
        assert_eq!(
            exact_divide_by_quadric(&m, 2),
            Division::Exact(SparsePolynomial::term(1, Monomial::new(&[1], &[0]), int(5)))
        );
        assert_eq!(exact_divide_by_quadric(&m, 3), Division::Failure);
    }

    #[test]
    fn strip_counts_powers() {
        let n = 3;
        let f = &SparsePolynomial::z(n, 1) + &SparsePolynomial::zs(n, 2);
        let p = f.mul_poly(&SparsePolynomial::quadric_power(n, 3));
        let (k, q) = p.strip_quadric();
        assert_eq!(k, 3);
        assert_eq!(q, f);
    }

    #[test]
    fn derivative_and_weight() {
        let n = 2;
        let p = SparsePolynomial::term(n, Monomial::new(&[2, 0], &[0, 1]), int(3));
        assert_eq!(p.d_z(0), SparsePolynomial::term(n, Monomial::new(&[1, 0], &[0, 1]), int(6)));
        assert_eq!(p.weights().next().unwrap(), vec![2, -1]);
    }
}

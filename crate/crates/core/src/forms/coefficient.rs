use std::fmt;

use num_traits::Zero;

use crate::poly::{Monomial, SparsePolynomial};
use crate::rational::{self, Rational};

/// `numerator / s^pole` in normal form: the numerator is not divisible by `s`
/// whenever `pole > 0`, and zero is stored with `pole = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalizedCoefficient {
    numerator: SparsePolynomial,
    pole: u32,
}

impl LocalizedCoefficient {
    pub fn new(numerator: SparsePolynomial, pole: u32) -> Self {
        let mut c = LocalizedCoefficient { numerator, pole };
        c.normalize();
        c
    }

    pub fn polynomial(p: SparsePolynomial) -> Self {
        LocalizedCoefficient { numerator: p, pole: 0 }
    }

    pub fn zero(n: usize) -> Self {
        LocalizedCoefficient { numerator: SparsePolynomial::zero(n), pole: 0 }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::polynomial(SparsePolynomial::constant(n, c))
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.pole = 0;
            return;
        }
        while self.pole > 0 {
            match self.numerator.divide_by_quadric_once() {
                Some(q) => {
                    self.numerator = q;
                    self.pole -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numerator(&self) -> &SparsePolynomial {
        &self.numerator
    }

    pub fn pole(&self) -> u32 {
        self.pole
    }

    pub fn dim(&self) -> usize {
        self.numerator.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerator over `s^k` for `k >= pole`.
    pub fn numerator_at(&self, k: u32) -> Option<SparsePolynomial> {
        (k >= self.pole).then(|| self.numerator.mul_poly(&SparsePolynomial::quadric_power(self.dim(), k - self.pole)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.pole.max(other.pole);
        let mut num = self.numerator_at(k).unwrap();
        num.add_scaled(&other.numerator_at(k).unwrap(), &rational::one());
        Self::new(num, k)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim());
        }
        LocalizedCoefficient { numerator: self.numerator.scale(c), pole: self.pole }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.numerator.mul_poly(&other.numerator), self.pole + other.pole)
    }

    pub fn mul_poly(&self, p: &SparsePolynomial) -> Self {
        Self::new(self.numerator.mul_poly(p), self.pole)
    }

    /// Derivative in the variable at concatenated position `k` (quotient rule).
    pub fn derivative(&self, k: usize) -> Self {
        let n = self.dim();
        if self.pole == 0 {
            return Self::polynomial(self.numerator.derivative(k));
        }
        let s = SparsePolynomial::quadric(n);
        // ∂s/∂z_i = z*_i and ∂s/∂z*_i = z_i
        let ds = if k < n { SparsePolynomial::zs(n, k) } else { SparsePolynomial::z(n, k - n) };
        let mut num = self.numerator.derivative(k).mul_poly(&s);
        num.add_scaled(&self.numerator.mul_poly(&ds), &-rational::int(self.pole as i64));
        Self::new(num, self.pole + 1)
    }

    /// Applies the derivation `z_i ∂/∂z_j - z*_j ∂/∂z*_i` (which kills `s`).
    pub fn gl_derivation(&self, i: usize, j: usize) -> Self {
        let n = self.dim();
        let mut num = SparsePolynomial::z(n, i).mul_poly(&self.numerator.d_z(j));
        num.add_scaled(&SparsePolynomial::zs(n, j).mul_poly(&self.numerator.d_zs(i)), &-rational::one());
        Self::new(num, self.pole)
    }

    /// `Some(d)` when the numerator is z*-homogeneous of degree `d + pole`.
    pub fn zs_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        self.numerator.zs_homogeneous_degree().map(|d| d as i64 - self.pole as i64)
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.numerator.terms()
    }
}

impl fmt::Debug for LocalizedCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LocalizedCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pole == 0 {
            write!(f, "({})", self.numerator)
        } else {
            write!(f, "({})*S^-{}", self.numerator, self.pole)
        }
    }
}

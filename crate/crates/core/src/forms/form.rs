use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::coefficient::LocalizedCoefficient;
use super::wedge::{self, bits, WedgeKey};
use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePolynomial};
use crate::rational::{self, Rational};

pub type WeightVector = Vec<i64>;

/// A finite sum `Σ f_{I,J} dz_I ∧ dz*_J` with localized coefficients.
///
/// Index arguments of the public operations are 1-based, matching the printed
/// names `z1`, `dz1`, ...
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    terms: BTreeMap<WedgeKey, LocalizedCoefficient>,
}

fn check_index(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(i - 1)
    }
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::function(LocalizedCoefficient::constant(n, rational::one()))
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::function(LocalizedCoefficient::constant(n, c))
    }

    pub fn function(c: LocalizedCoefficient) -> Self {
        Self::term(WedgeKey::EMPTY, c)
    }

    pub fn polynomial(p: SparsePolynomial) -> Self {
        Self::function(LocalizedCoefficient::polynomial(p))
    }

    pub fn term(key: WedgeKey, c: LocalizedCoefficient) -> Self {
        let mut f = Self::zero(c.dim());
        f.add_term(key, c);
        f
    }

    /// `dz_i` (1-based).
    pub fn dz(n: usize, i: usize) -> Result<Self> {
        let k = check_index(i, n)?;
        Ok(Self::term(WedgeKey::new(1 << k, 0), LocalizedCoefficient::constant(n, rational::one())))
    }

    /// `dz*_i` (1-based).
    pub fn dzs(n: usize, i: usize) -> Result<Self> {
        let k = check_index(i, n)?;
        Ok(Self::term(WedgeKey::new(0, 1 << k), LocalizedCoefficient::constant(n, rational::one())))
    }

    /// `dz_1 ∧ ⋯ ∧ dz_n`.
    pub fn volume_dz(n: usize) -> Self {
        Self::term(WedgeKey::new(((1u32 << n) - 1) as u16, 0), LocalizedCoefficient::constant(n, rational::one()))
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (WedgeKey, LocalizedCoefficient)>) -> Self {
        let mut f = Self::zero(n);
        for (k, c) in it {
            f.add_term(k, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeKey, &LocalizedCoefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &WedgeKey) -> Option<&LocalizedCoefficient> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: WedgeKey, c: LocalizedCoefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Accumulates raw numerators per wedge key and normalizes once at the end.
    fn from_raw(n: usize, raw: BTreeMap<WedgeKey, (SparsePolynomial, u32)>) -> Self {
        let mut f = Self::zero(n);
        for (k, (p, pole)) in raw {
            let c = LocalizedCoefficient::new(p, pole);
            if !c.is_zero() {
                f.terms.insert(k, c);
            }
        }
        f
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.scale(&-rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect() }
    }

    pub fn mul_function(&self, f: &LocalizedCoefficient) -> Form {
        Self::from_terms(self.n, self.terms.iter().map(|(k, v)| (*k, v.mul(f))))
    }

    fn check_dim(&self, other: &Form) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    /// `(p, q)` when every term has the same bidegree.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|k| (k.p(), k.q()));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Total degree `p + q` when homogeneous; the zero form reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Terms of total degree `m`.
    pub fn degree_part(&self, m: usize) -> Form {
        Form {
            n: self.n,
            terms: self.terms.iter().filter(|(k, _)| k.degree() == m).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some((e, k)) = wedge::wedge_keys(*ka, *kb) {
                    out.add_term(k, ca.mul(cb).scale(&rational::sign(e)));
                }
            }
        }
        Ok(out)
    }

    /// `∂̄ = Σ dz*_ν ∂/∂z*_ν`, acting from the left.
    pub fn dbar(&self) -> Form {
        let n = self.n;
        let mut raw: BTreeMap<WedgeKey, (SparsePolynomial, u32)> = BTreeMap::new();
        for (key, c) in &self.terms {
            for nu in 0..n {
                let Some((e, k)) = wedge::prepend_dzs(nu, *key) else { continue };
                let d = c.derivative(n + nu);
                accumulate(&mut raw, n, k, &d, &rational::sign(e));
            }
        }
        Self::from_raw(n, raw)
    }

    /// `∂ = Σ dz_ν ∂/∂z_ν`, acting from the left.
    pub fn del(&self) -> Form {
        let n = self.n;
        let mut raw: BTreeMap<WedgeKey, (SparsePolynomial, u32)> = BTreeMap::new();
        for (key, c) in &self.terms {
            for nu in 0..n {
                let Some((e, k)) = wedge::prepend_dz(nu, *key) else { continue };
                let d = c.derivative(nu);
                accumulate(&mut raw, n, k, &d, &rational::sign(e));
            }
        }
        Self::from_raw(n, raw)
    }

    /// Contraction with the Euler field `Σ z*_ν ∂/∂z*_ν`: an odd derivation
    /// sending `dz*_ν` to `z*_ν` and `dz_ν` to 0.
    pub fn euler_contract(&self) -> Form {
        let n = self.n;
        let mut raw: BTreeMap<WedgeKey, (SparsePolynomial, u32)> = BTreeMap::new();
        for (key, c) in &self.terms {
            for (m, j) in bits(key.dzs).enumerate() {
                let k = WedgeKey::new(key.dz, key.dzs & !(1 << j));
                let d = c.mul_poly(&SparsePolynomial::zs(n, j));
                accumulate(&mut raw, n, k, &d, &rational::sign(key.p() + m));
            }
        }
        Self::from_raw(n, raw)
    }

    /// `Ok(())` for a valid form, otherwise the violated condition.
    pub fn validity(&self) -> std::result::Result<(), String> {
        for (k, c) in &self.terms {
            match c.zs_degree() {
                Some(d) if d + k.q() as i64 == 0 => {}
                Some(d) => return Err(format!("z*-homogeneity: term {} has z*-degree {} ≠ 0", k, d + k.q() as i64)),
                None => return Err(format!("z*-homogeneity: coefficient of {} is not z*-homogeneous", k)),
            }
        }
        let e = self.euler_contract();
        if !e.is_zero() {
            return Err(format!("Euler contraction is nonzero: {}", e));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validity().is_ok()
    }

    /// The derivation `E_ij` (1-based indices).
    pub fn gl_action(&self, i: usize, j: usize) -> Result<Form> {
        let i = check_index(i, self.n)?;
        let j = check_index(j, self.n)?;
        Ok(self.gl_action0(i, j))
    }

    pub(crate) fn gl_action0(&self, i: usize, j: usize) -> Form {
        let n = self.n;
        let mut out = Self::zero(n);
        for (key, c) in &self.terms {
            out.add_term(*key, c.gl_derivation(i, j));
            // dz_j ↦ dz_i
            if key.dz & (1 << j) != 0 {
                if let Some((e, m)) = wedge::replace_index(key.dz, j, i) {
                    out.add_term(WedgeKey::new(m, key.dzs), c.scale(&rational::sign(e)));
                }
            }
            // dz*_i ↦ −dz*_j
            if key.dzs & (1 << i) != 0 {
                if let Some((e, m)) = wedge::replace_index(key.dzs, i, j) {
                    out.add_term(WedgeKey::new(key.dz, m), c.scale(&rational::sign(e + 1)));
                }
            }
        }
        out
    }

    /// Coefficient-wise `∂/∂z_i` (1-based).
    pub fn partial_z(&self, i: usize) -> Result<Form> {
        let i = check_index(i, self.n)?;
        Ok(self.partial_z0(i))
    }

    pub(crate) fn partial_z0(&self, i: usize) -> Form {
        Self::from_terms(self.n, self.terms.iter().map(|(k, c)| (*k, c.derivative(i))))
    }

    /// Splits into torus-weight components (`z_i`, `dz_i` weigh `+e_i`; `z*_i`, `dz*_i` weigh `−e_i`).
    pub fn weight_decompose(&self) -> BTreeMap<WeightVector, Form> {
        let n = self.n;
        let mut raw: BTreeMap<WeightVector, BTreeMap<WedgeKey, (SparsePolynomial, u32)>> = BTreeMap::new();
        for (key, c) in &self.terms {
            let shift = key_weight(n, key);
            for (m, a) in c.monomials() {
                let w: WeightVector = m.weight().iter().zip(&shift).map(|(x, y)| x + y).collect();
                let slot =
                    raw.entry(w).or_default().entry(*key).or_insert_with(|| (SparsePolynomial::zero(n), c.pole()));
                slot.0.add_term(m.clone(), a.clone());
            }
        }
        raw.into_iter().map(|(w, terms)| (w, Self::from_raw(n, terms))).filter(|(_, f)| !f.is_zero()).collect()
    }

    /// The component of a single torus weight.
    pub fn weight_component(&self, w: &[i64]) -> Form {
        self.weight_decompose().remove(w).unwrap_or_else(|| Self::zero(self.n))
    }

    /// The single torus weight of the form, if it has one.
    pub fn weight(&self) -> Option<WeightVector> {
        let d = self.weight_decompose();
        (d.len() == 1).then(|| d.into_keys().next().unwrap())
    }

    /// Pole-filtration level: the least `r` with every coefficient times `s^{r+q}` polynomial.
    pub fn level(&self) -> u32 {
        self.terms.iter().map(|(k, c)| (c.pole() as i64 - k.q() as i64).max(0) as u32).max().unwrap_or(0)
    }

    pub fn max_pole(&self) -> u32 {
        self.terms.values().map(|c| c.pole()).max().unwrap_or(0)
    }
}

/// Adds `scale · d` to the raw accumulator, lifting numerators to a common pole.
fn accumulate(
    raw: &mut BTreeMap<WedgeKey, (SparsePolynomial, u32)>,
    n: usize,
    key: WedgeKey,
    d: &LocalizedCoefficient,
    scale: &Rational,
) {
    if d.is_zero() {
        return;
    }
    let slot = raw.entry(key).or_insert_with(|| (SparsePolynomial::zero(n), d.pole()));
    if slot.1 < d.pole() {
        slot.0 = slot.0.mul_poly(&SparsePolynomial::quadric_power(n, d.pole() - slot.1));
        slot.1 = d.pole();
    }
    let lifted = d.numerator_at(slot.1).unwrap();
    slot.0.add_scaled(&lifted, scale);
}

pub(crate) fn key_weight(n: usize, key: &WedgeKey) -> WeightVector {
    (0..n).map(|i| i64::from(key.dz & (1 << i) != 0) - i64::from(key.dzs & (1 << i) != 0)).collect()
}

/// The Martinelli–Bochner form `Σ_ν (−1)^{ν−1} z*_ν dz*_1 ∧ ⋯ \widehat{dz*_ν} ⋯ ∧ dz*_n / s^n`.
pub fn mb_form(n: usize) -> Form {
    let full = ((1u32 << n) - 1) as u16;
    let mut f = Form::zero(n);
    for nu in 0..n {
        let c =
            LocalizedCoefficient::new(SparsePolynomial::term(n, Monomial::zs_var(n, nu), rational::sign(nu)), n as u32);
        f.add_term(WedgeKey::new(0, full & !(1 << nu)), c);
    }
    f
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Renders in the workbench input grammar, so printed forms parse back.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| if *k == WedgeKey::EMPTY { format!("{}", c) } else { format!("{}*{}", c, k) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

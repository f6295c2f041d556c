//! The algebraic residue `Res: A^{n,n−1} → k`.
//!
//! `Res` is the unique functional with `Res(Ω ∧ dz) = 1` that vanishes on
//! `∂(A^{n−1,n−1}) + ∂̄(A^{n,n−2})` and on nonzero torus weights. At witness
//! level `b` we reduce the weight-zero part of `ω` modulo the span of the
//! `∂`-images of `F_b A^{n−1,n−1}_0` and the `∂̄`-images of `F_{b+1} A^{n,n−2}_0`,
//! all inside the raw space of level `b + 1`; the remainder must then be a
//! multiple `c` of the remainder of `Ω ∧ dz`, and `c` is the residue.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use crate::cohomology::{default_pole_cap, stack};
use crate::error::{Error, Result};
use crate::forms::{mb_form, Form, RawSpace, ValidSpace};
use crate::linalg::{sparse_add_scaled, EchelonBasis, RationalMatrix, SparseVec};
use crate::rational::{self, Rational};

/// `Ω ∧ dz_1 ∧ ⋯ ∧ dz_n`, the form of residue one.
pub fn normalized_top_form(n: usize) -> Form {
    mb_form(n).wedge(&Form::volume_dz(n)).expect("same dimension")
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueCertificate {
    #[serde(serialize_with = "as_text")]
    pub input: Form,
    #[serde(serialize_with = "as_text")]
    pub weight_zero: Form,
    #[serde(serialize_with = "rational_text")]
    pub value: Rational,
    #[serde(serialize_with = "as_text")]
    pub alpha: Form,
    #[serde(serialize_with = "as_text")]
    pub beta: Form,
    pub witness_level: u32,
}

fn as_text<S: serde::Serializer>(f: &Form, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

fn rational_text<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_text(q))
}

impl ResidueCertificate {
    /// Rechecks `ω_0 = c·Ω∧dz + ∂α + ∂̄β` exactly.
    pub fn verify(&self) -> bool {
        let n = self.input.dim();
        let rhs =
            normalized_top_form(n).scale(&self.value).add(&self.alpha.del()).and_then(|f| f.add(&self.beta.dbar()));
        matches!(rhs, Ok(f) if f == self.weight_zero)
    }
}

#[derive(Clone, Copy, Debug)]
enum Source {
    Del(usize),
    Dbar(usize),
}

/// The reduced image span at one witness level.
struct ResidueContext {
    target: RawSpace,
    alpha_space: ValidSpace,
    beta_space: ValidSpace,
    sources: Vec<Source>,
    echelon: EchelonBasis,
    /// Remainder of `Ω ∧ dz` and its lead index.
    unit: SparseVec,
    unit_lead: Option<usize>,
    unit_combo: SparseVec,
}

impl ResidueContext {
    fn build(n: usize, b: u32) -> Result<Self> {
        let zero = vec![0i64; n];
        let target = RawSpace::new(n, n, n - 1, &zero, b + 1)?;
        let alpha_space = ValidSpace::new(n, n - 1, n - 1, &zero, b)?;
        let beta_space = if n >= 2 {
            ValidSpace::new(n, n, n - 2, &zero, b + 1)?
        } else {
            ValidSpace { raw: RawSpace::new(n, 0, 0, &zero, 0)?, basis: vec![] }
        };
        let del_cols = alpha_space.raw.del_columns(&target);
        let dbar_cols = if n >= 2 { beta_space.raw.dbar_columns(&target) } else { vec![] };
        let mut echelon = EchelonBasis::tracking();
        let mut sources = Vec::new();
        for (k, v) in alpha_space.basis.iter().enumerate() {
            echelon.insert(&combine(&del_cols, v));
            sources.push(Source::Del(k));
        }
        for (k, v) in beta_space.basis.iter().enumerate() {
            echelon.insert(&combine(&dbar_cols, v));
            sources.push(Source::Dbar(k));
        }
        let unit_vec = target.coordinates(&normalized_top_form(n))?;
        let red = echelon.reduce(&unit_vec);
        let unit_lead = red.remainder.keys().next().copied();
        Ok(ResidueContext {
            target,
            alpha_space,
            beta_space,
            sources,
            echelon,
            unit: red.remainder,
            unit_lead,
            unit_combo: red.combo,
        })
    }

    /// `Some((c, combo))` with `v = c·unit + Σ combo·images`, or `None` if the level is too low.
    fn solve(&self, v: &SparseVec) -> Option<(Rational, SparseVec)> {
        let red = self.echelon.reduce(v);
        let lead = self.unit_lead?;
        let c = red.remainder.get(&lead).cloned().unwrap_or_else(rational::zero) / &self.unit[&lead];
        let mut check = red.remainder.clone();
        sparse_add_scaled(&mut check, &self.unit, &-c.clone());
        if !check.is_empty() {
            return None;
        }
        let mut combo = red.combo;
        sparse_add_scaled(&mut combo, &self.unit_combo, &-c.clone());
        Some((c, combo))
    }

    /// Whether `v − c·(Ω∧dz)` lies in the image span.
    fn identity_holds(&self, v: &SparseVec, c: &Rational) -> bool {
        let mut w = v.clone();
        let unit_vec = self.target.coordinates(&normalized_top_form(self.target.n())).unwrap();
        sparse_add_scaled(&mut w, &unit_vec, &-c.clone());
        self.echelon.contains(&w)
    }

    fn witnesses(&self, combo: &SparseVec) -> (Form, Form) {
        let mut a = SparseVec::new();
        let mut b = SparseVec::new();
        for (j, c) in combo {
            match self.sources[*j] {
                Source::Del(k) => sparse_add_scaled(&mut a, &self.alpha_space.basis[k], c),
                Source::Dbar(k) => sparse_add_scaled(&mut b, &self.beta_space.basis[k], c),
            }
        }
        (self.alpha_space.raw.to_form(&a), self.beta_space.raw.to_form(&b))
    }
}

fn combine(columns: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in v {
        sparse_add_scaled(&mut out, &columns[*k], c);
    }
    out
}

/// Residue solver with per-level contexts cached across calls.
pub struct ResidueSolver {
    /// Highest witness level tried, replacing the default `level(ω) + 2n + 4`.
    cap_override: Option<u32>,
    contexts: Mutex<HashMap<(usize, u32), Arc<ResidueContext>>>,
}

impl Default for ResidueSolver {
    fn default() -> Self {
        Self::new(None)
    }
}

impl ResidueSolver {
    /// `cap`: highest witness level tried; defaults to `level(ω) + 2n + 4`.
    pub fn new(cap: Option<u32>) -> Self {
        ResidueSolver { cap_override: cap, contexts: Mutex::new(HashMap::new()) }
    }

    /// The process-wide solver with the default cap.
    pub fn global() -> &'static ResidueSolver {
        static GLOBAL: OnceLock<ResidueSolver> = OnceLock::new();
        GLOBAL.get_or_init(ResidueSolver::default)
    }

    fn context(&self, n: usize, b: u32) -> Result<Arc<ResidueContext>> {
        if let Some(c) = self.contexts.lock().unwrap().get(&(n, b)) {
            return Ok(c.clone());
        }
        let ctx = Arc::new(ResidueContext::build(n, b)?);
        Ok(self.contexts.lock().unwrap().entry((n, b)).or_insert(ctx).clone())
    }

    pub fn cap_for(&self, omega: &Form) -> u32 {
        self.cap_override.unwrap_or(omega.level() + 2 * omega.dim() as u32 + 4)
    }

    /// The residue together with its certificate.
    pub fn residue_certified(&self, omega: &Form) -> Result<(Rational, ResidueCertificate)> {
        let n = omega.dim();
        let top = omega.terms().all(|(k, _)| k.p() == n && k.q() + 1 == n);
        let weight_zero = if top { omega.weight_component(&vec![0; n]) } else { Form::zero(n) };
        let empty = |b| ResidueCertificate {
            input: omega.clone(),
            weight_zero: weight_zero.clone(),
            value: rational::zero(),
            alpha: Form::zero(n),
            beta: Form::zero(n),
            witness_level: b,
        };
        if !top && omega.terms().any(|(k, _)| k.p() == n && k.q() + 1 == n) {
            // Mixed bidegrees: only the (n, n−1) part contributes.
            let part = Form::from_terms(
                n,
                omega.terms().filter(|(k, _)| k.p() == n && k.q() + 1 == n).map(|(k, c)| (*k, c.clone())),
            );
            let (c, mut cert) = self.residue_certified(&part)?;
            cert.input = omega.clone();
            return Ok((c, cert));
        }
        if weight_zero.is_zero() {
            return Ok((rational::zero(), empty(0)));
        }
        let start = weight_zero.level().max(n as u32);
        let cap = self.cap_for(omega);
        for b in start..=cap {
            let ctx = self.context(n, b)?;
            let v = ctx.target.coordinates(&weight_zero)?;
            if let Some((c, combo)) = ctx.solve(&v) {
                let (alpha, beta) = ctx.witnesses(&combo);
                let cert = ResidueCertificate {
                    input: omega.clone(),
                    weight_zero,
                    value: c.clone(),
                    alpha,
                    beta,
                    witness_level: b,
                };
                return Ok((c, cert));
            }
        }
        Err(Error::Unresolved { bound: cap })
    }

    pub fn residue(&self, omega: &Form) -> Result<Rational> {
        Ok(self.residue_certified(omega)?.0)
    }

    /// Whether `ω_0 − c·Ω∧dz` is a sum of `∂`- and `∂̄`-images at witness level `b`.
    pub fn identity_holds_at(&self, omega: &Form, c: &Rational, b: u32) -> Result<bool> {
        let n = omega.dim();
        let ctx = self.context(n, b)?;
        let w0 = omega.weight_component(&vec![0; n]);
        Ok(ctx.identity_holds(&ctx.target.coordinates(&w0)?, c))
    }
}

/// Residue via the global solver.
pub fn residue(omega: &Form) -> Result<Rational> {
    ResidueSolver::global().residue(omega)
}

pub fn residue_certified(omega: &Form) -> Result<(Rational, ResidueCertificate)> {
    ResidueSolver::global().residue_certified(omega)
}

/// `Res(∂α) = 0` and `Res(∂̄β) = 0`.
pub fn stokes_check(alpha: &Form, beta: &Form) -> Result<bool> {
    Ok(residue(&alpha.del())?.is_zero() && residue(&beta.dbar())?.is_zero())
}

/// Rank of `(a, b) ↦ Res(a ∧ b)` between the bases of `(p, q, w)` and `(n−p, n−1−q, −w)` at level `r`.
pub fn pairing_rank(n: usize, p: usize, q: usize, w: &[i64], r: u32) -> Result<usize> {
    if p > n || q > n - 1 {
        return Ok(0);
    }
    let left = ValidSpace::new(n, p, q, w, r)?.forms();
    let neg: Vec<i64> = w.iter().map(|x| -x).collect();
    let right = ValidSpace::new(n, n - p, n - 1 - q, &neg, r)?.forms();
    pairing_matrix(&left, &right).map(|m| m.rank())
}

pub fn pairing_matrix(left: &[Form], right: &[Form]) -> Result<RationalMatrix> {
    let mut m = RationalMatrix::zeros(left.len(), right.len());
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            m.set(i, j, residue(&a.wedge(b)?)?);
        }
    }
    Ok(m)
}

/// Cycles of `(F_r A^{p,•}_w, ∂̄)` in degree `q`, split into a boundary basis and
/// a complement spanning cohomology.
pub struct CohomologySlice {
    pub space: ValidSpace,
    pub boundaries: EchelonBasis,
    pub representatives: Vec<Form>,
}

pub fn cohomology_slice(n: usize, p: usize, q: usize, w: &[i64], r: u32) -> Result<CohomologySlice> {
    let space = ValidSpace::new(n, p, q, w, r)?;
    let raw = &space.raw;
    // Cycles: kernel of [ι; ∂̄] on the raw space.
    let dbar_target = RawSpace::new(n, p, q + 1, w, r)?;
    let dbar = raw.dbar_columns(&dbar_target);
    let cycles = if q == 0 {
        crate::linalg::sparse_kernel(&dbar)
    } else {
        let e_target = RawSpace::new(n, p, q - 1, w, r + 1)?;
        crate::linalg::sparse_kernel(&stack(raw.euler_columns(&e_target), e_target.len(), dbar))
    };
    let mut boundaries = EchelonBasis::new();
    if q > 0 {
        let prev = ValidSpace::new(n, p, q - 1, w, r)?;
        let cols = prev.raw.dbar_columns(raw);
        for v in &prev.basis {
            boundaries.insert(&combine(&cols, v));
        }
    }
    let mut all = boundaries.clone();
    let mut representatives = Vec::new();
    for z in &cycles {
        if all.insert(z).is_none() {
            representatives.push(raw.to_form(z));
        }
    }
    Ok(CohomologySlice { space, boundaries, representatives })
}

impl CohomologySlice {
    /// Whether `f` is a boundary in this slice.
    pub fn is_boundary(&self, f: &Form) -> Result<bool> {
        Ok(self.boundaries.contains(&self.space.raw.coordinates(f)?))
    }

    /// Remainder of `f` modulo boundaries.
    pub fn reduce(&self, f: &Form) -> Result<SparseVec> {
        Ok(self.boundaries.reduce(&self.space.raw.coordinates(f)?).remainder)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityCheck {
    pub n: usize,
    pub q: usize,
    pub weight: Vec<i64>,
    pub level: u32,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rank: usize,
}

impl DualityCheck {
    pub fn nondegenerate(&self) -> bool {
        self.left_dim == self.right_dim && self.rank == self.left_dim
    }
}

/// Pairs cohomology representatives of `H^q(A^{0,•})_w` with those of
/// `H^{n−1−q}(A^{n,•})_{−w}` at a stabilized level.
pub fn duality_check(n: usize, q: usize, w: &[i64], r: Option<u32>) -> Result<DualityCheck> {
    let neg: Vec<i64> = w.iter().map(|x| -x).collect();
    let shifted: Vec<i64> = neg.iter().map(|x| x - 1).collect();
    let level = r.unwrap_or_else(|| default_pole_cap(n, w).max(default_pole_cap(n, &shifted)));
    let left = cohomology_slice(n, 0, q, w, level)?.representatives;
    let right = cohomology_slice(n, n, n - 1 - q, &neg, level)?.representatives;
    let rank = pairing_matrix(&left, &right)?.rank();
    Ok(DualityCheck { n, q, weight: w.to_vec(), level, left_dim: left.len(), right_dim: right.len(), rank })
}

/// `Π_i ∂_{z_i}^{−w_i−1} Ω`.
pub fn multipole(n: usize, w: &[i64]) -> Result<Form> {
    if w.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: w.len() });
    }
    if w.iter().any(|&x| x > -1) {
        return Err(Error::Config(format!("multipole weight {:?} must be ≤ −1 componentwise", w)));
    }
    let mut f = mb_form(n);
    for (i, &x) in w.iter().enumerate() {
        for _ in 0..(-x - 1) {
            f = f.partial_z0(i);
        }
    }
    Ok(f)
}

#[derive(Clone, Debug, Serialize)]
pub struct MultipoleCheck {
    pub weight: Vec<i64>,
    pub level: u32,
    pub cohomology_dim: usize,
    /// `representative ≡ scale · multipole` modulo boundaries.
    #[serde(serialize_with = "rational_text")]
    pub scale: Rational,
    pub passed: bool,
}

/// The weight-`w` class of `H^{n−1}` is spanned by the multipole `P_w(∂_z) Ω`.
pub fn multipole_check(n: usize, w: &[i64]) -> Result<MultipoleCheck> {
    let m = multipole(n, w)?;
    let level = default_pole_cap(n, w).max(m.level());
    let slice = cohomology_slice(n, 0, n - 1, w, level)?;
    let dim = slice.representatives.len();
    let mut scale = rational::zero();
    let mut passed = dim == 1 && m.is_valid() && m.dbar().is_zero();
    if passed {
        let rm = slice.reduce(&m)?;
        let rh = slice.reduce(&slice.representatives[0])?;
        match rm.iter().next() {
            None => passed = false,
            Some((lead, c)) => {
                scale = rh.get(lead).cloned().unwrap_or_else(rational::zero) / c;
                let mut diff = rh.clone();
                sparse_add_scaled(&mut diff, &rm, &-scale.clone());
                passed = diff.is_empty() && !scale.is_zero();
            }
        }
    }
    Ok(MultipoleCheck { weight: w.to_vec(), level, cohomology_dim: dim, scale, passed })
}

/// Memoized `Res(f_0 ∧ ∂f_1 ∧ ⋯ ∧ ∂f_n)` for tuples of `(0, q)`-forms.
///
/// Tuples whose form degrees do not sum to `n − 1`, or whose torus weights do not
/// sum to zero, are answered without a residue solve.
#[derive(Default)]
pub struct DelTupleResidue {
    cache: Mutex<HashMap<Vec<Form>, Rational>>,
}

impl DelTupleResidue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn evaluate(&self, forms: &[Form]) -> Result<Rational> {
        let Some(first) = forms.first() else { return Ok(rational::zero()) };
        let n = first.dim();
        if forms.len() != n + 1 {
            return Err(Error::LengthMismatch { expected: n + 1, got: forms.len() });
        }
        if forms.iter().any(|f| f.is_zero()) {
            return Ok(rational::zero());
        }
        let mut degree = 0;
        for f in forms {
            match f.degree() {
                Some(d) => degree += d,
                None => return self.evaluate_split(forms),
            }
        }
        if degree + 1 != n {
            return Ok(rational::zero());
        }
        let mut total = vec![0i64; n];
        for f in forms {
            match f.weight() {
                Some(w) => total.iter_mut().zip(&w).for_each(|(t, x)| *t += x),
                None => return self.solve(forms),
            }
        }
        if total.iter().any(|&x| x != 0) {
            return Ok(rational::zero());
        }
        self.solve(forms)
    }

    /// Splits an inhomogeneous slot by degree and sums.
    fn evaluate_split(&self, forms: &[Form]) -> Result<Rational> {
        let (k, f) = forms.iter().enumerate().find(|(_, f)| f.degree().is_none()).unwrap();
        let mut acc = rational::zero();
        for d in 0..=2 * f.dim() {
            let part = f.degree_part(d);
            if part.is_zero() {
                continue;
            }
            let mut t = forms.to_vec();
            t[k] = part;
            acc += self.evaluate(&t)?;
        }
        Ok(acc)
    }

    fn solve(&self, forms: &[Form]) -> Result<Rational> {
        if let Some(v) = self.cache.lock().unwrap().get(forms) {
            return Ok(v.clone());
        }
        let mut acc = forms[0].clone();
        for f in &forms[1..] {
            acc = acc.wedge(&f.del())?;
            if acc.is_zero() {
                break;
            }
        }
        let v = residue(&acc)?;
        self.cache.lock().unwrap().insert(forms.to_vec(), v.clone());
        Ok(v)
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{LocalizedCoefficient, WedgeKey};
    use crate::poly::SparsePolynomial;

    #[test]
    fn normalization() {
        for n in 1..=3 {
            let (c, cert) = residue_certified(&normalized_top_form(n)).unwrap();
            assert_eq!(c, rational::one(), "n={n}");
            assert!(cert.verify());
        }
    }

    #[test]
    fn one_variable_laurent() {
        // z^a dz with z^a realized through z*^{-a}/s^{-a} for a < 0.
        for a in -4i64..=3 {
            let coeff = if a >= 0 {
                LocalizedCoefficient::polynomial(SparsePolynomial::z(1, 0).pow(a as u32))
            } else {
                LocalizedCoefficient::new(SparsePolynomial::zs(1, 0).pow((-a) as u32), (-a) as u32)
            };
            let f = Form::term(WedgeKey::new(1, 0), coeff);
            let expected = if a == -1 { rational::one() } else { rational::zero() };
            assert_eq!(residue(&f).unwrap(), expected, "a={a}");
        }
    }

    #[test]
    fn martinelli_bochner_value_at_origin() {
        let n = 2;
        let f = &SparsePolynomial::one(n) + &(&SparsePolynomial::z(n, 0) * &SparsePolynomial::z(n, 1));
        let omega = normalized_top_form(n).mul_function(&LocalizedCoefficient::polynomial(f));
        let (c, cert) = residue_certified(&omega).unwrap();
        assert_eq!(c, rational::one());
        assert!(cert.verify());
        let g = &SparsePolynomial::z(n, 0) * &SparsePolynomial::z(n, 1);
        assert!(residue(&normalized_top_form(n).mul_function(&LocalizedCoefficient::polynomial(g))).unwrap().is_zero());
    }

    #[test]
    fn off_bidegree_is_zero() {
        assert!(residue(&mb_form(2)).unwrap().is_zero());
    }

    #[test]
    fn c_is_unique() {
        let omega = normalized_top_form(2);
        let solver = ResidueSolver::default();
        let (c, cert) = solver.residue_certified(&omega).unwrap();
        let b = cert.witness_level;
        assert!(solver.identity_holds_at(&omega, &c, b).unwrap());
        assert!(!solver.identity_holds_at(&omega, &(c.clone() + rational::one()), b).unwrap());
        assert!(!solver.identity_holds_at(&omega, &(c + rational::one()), b + 1).unwrap());
    }

    #[test]
    fn unresolved_is_loud() {
        // the first witness level tried is max(level, n) = 2
        let solver = ResidueSolver::new(Some(1));
        assert_eq!(solver.residue(&normalized_top_form(2)), Err(Error::Unresolved { bound: 1 }));
        assert!(ResidueSolver::new(Some(2)).residue(&normalized_top_form(2)).is_ok());
    }

    #[test]
    fn multipoles() {
        assert!(multipole_check(2, &[-1, -1]).unwrap().passed);
        assert!(multipole_check(2, &[-2, -1]).unwrap().passed);
        let c = multipole_check(1, &[-3]).unwrap();
        assert!(c.passed);
        assert!(multipole_check(3, &[-1, -1, -1]).unwrap().passed);
    }

    #[test]
    fn pairing_examples() {
        for a in -3..=3 {
            assert_eq!(pairing_rank(1, 0, 0, &[a], 4).unwrap(), 1, "a={a}");
        }
        // The dual partner ∂_{z1}∂_{z2}Ω∧dz first appears at level 3; level 2 has no
        // valid forms of this bidegree and weight at all.
        assert!(crate::forms::basis(2, 2, 1, &[-1, -1], 2).unwrap().is_empty());
        assert!(pairing_rank(2, 2, 1, &[-1, -1], 3).unwrap() >= 1);
        assert_eq!(pairing_rank(2, 0, 1, &[5, 5], 0).unwrap(), 0);
    }

    #[test]
    fn duality_small() {
        for w in [[0, 0], [1, 0], [-1, -1], [-2, -1], [0, -1], [2, -3]] {
            for q in 0..2 {
                let d = duality_check(2, q, &w, None).unwrap();
                assert!(d.nondegenerate(), "{d:?}");
            }
        }
    }
}

//! Pointwise Chevalley–Eilenberg cochain calculus on `g ⊗ A`.
//!
//! A cochain is a graded-symmetric multilinear functional on the suspension
//! `l[1]`; an argument `sξ` has degree `|ξ| − 1`. The two differentials are
//! dual to the coderivations built from
//! `Q_1(sξ) = −s∂̄ξ` and `Q_2(sx, sy) = (−1)^{|x|} s[x, y]`, so that
//! `(d_Lie + D)² = 0` is the dual of `(Q_1 + Q_2)² = 0`.

use std::hash::{DefaultHasher, Hash, Hasher};

use num_traits::Zero;

use super::algebra::FiniteLieAlgebra;
use super::current::{shifted_binary, shifted_unary, Current};
use super::invariant::{all_permutations, InvariantPolynomial};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::rational::{self, Rational};
use crate::residue::DelTupleResidue;

pub trait Cochain: Send + Sync {
    fn arity(&self) -> usize;

    /// Degree as a functional on `S^m(l[1])`, when fixed.
    fn degree(&self) -> Option<i64> {
        None
    }

    fn eval(&self, args: &[Current]) -> Result<Rational>;
}

/// Shifted degrees of homogeneous arguments; `None` if some argument is zero.
pub fn shifted_degrees(args: &[Current]) -> Result<Option<Vec<i64>>> {
    let mut out = Vec::with_capacity(args.len());
    for a in args {
        if a.is_zero() {
            return Ok(None);
        }
        out.push(a.shifted_degree().ok_or_else(|| Error::Bookkeeping(format!("inhomogeneous argument {a}")))?);
    }
    Ok(Some(out))
}

/// Sign of reordering `v_0 … v_{m−1}` into `v_{order[0]} …` under the Koszul rule.
pub fn koszul_sign(degrees: &[i64], order: &[usize]) -> Rational {
    let mut odd = 0usize;
    for p in 0..order.len() {
        for q in p + 1..order.len() {
            if order[p] > order[q] && degrees[order[p]] * degrees[order[q]] % 2 != 0 {
                odd += 1;
            }
        }
    }
    rational::sign(odd)
}

fn check_arity(c: &dyn Cochain, args: &[Current]) -> Result<()> {
    if args.len() != c.arity() {
        return Err(Error::LengthMismatch { expected: c.arity(), got: args.len() });
    }
    Ok(())
}

/// `D c = c ∘ Q̂_1`.
pub struct DbarDifferential<'a> {
    inner: &'a dyn Cochain,
}

impl Cochain for DbarDifferential<'_> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn degree(&self) -> Option<i64> {
        self.inner.degree().map(|d| d + 1)
    }

    fn eval(&self, args: &[Current]) -> Result<Rational> {
        check_arity(self, args)?;
        let Some(deg) = shifted_degrees(args)? else { return Ok(rational::zero()) };
        let mut total = rational::zero();
        let mut before = 0i64;
        for i in 0..args.len() {
            let q = shifted_unary(&args[i]);
            if !q.is_zero() {
                let mut t = args.to_vec();
                t[i] = q;
                let v = self.inner.eval(&t)?;
                if !v.is_zero() {
                    total += rational::sign(before.rem_euclid(2) as usize) * v;
                }
            }
            before += deg[i];
        }
        Ok(total)
    }
}

/// `d_Lie c = c ∘ Q̂_2`: arity grows by one.
pub struct LieDifferential<'a> {
    inner: &'a dyn Cochain,
    lie: &'a FiniteLieAlgebra,
}

impl Cochain for LieDifferential<'_> {
    fn arity(&self) -> usize {
        self.inner.arity() + 1
    }

    fn degree(&self) -> Option<i64> {
        self.inner.degree().map(|d| d + 1)
    }

    fn eval(&self, args: &[Current]) -> Result<Rational> {
        check_arity(self, args)?;
        let Some(deg) = shifted_degrees(args)? else { return Ok(rational::zero()) };
        let m = args.len();
        let mut total = rational::zero();
        for i in 0..m {
            for j in i + 1..m {
                let q = shifted_binary(self.lie, &args[i], &args[j])?;
                if q.is_zero() {
                    continue;
                }
                let mut order = vec![i, j];
                order.extend((0..m).filter(|&k| k != i && k != j));
                let mut t = vec![q];
                t.extend(order[2..].iter().map(|&k| args[k].clone()));
                let v = self.inner.eval(&t)?;
                if !v.is_zero() {
                    total += koszul_sign(&deg, &order) * v;
                }
            }
        }
        Ok(total)
    }
}

/// `(d_Lie c, D c)`.
pub fn ce_differentials<'a>(
    c: &'a dyn Cochain,
    lie: &'a FiniteLieAlgebra,
) -> (LieDifferential<'a>, DbarDifferential<'a>) {
    (LieDifferential { inner: c, lie }, DbarDifferential { inner: c })
}

pub fn dbar_differential(c: &dyn Cochain) -> DbarDifferential<'_> {
    DbarDifferential { inner: c }
}

pub fn lie_differential<'a>(c: &'a dyn Cochain, lie: &'a FiniteLieAlgebra) -> LieDifferential<'a> {
    LieDifferential { inner: c, lie }
}

/// Sum of cochains of equal arity.
pub struct CochainSum<'a>(pub Vec<&'a dyn Cochain>);

impl Cochain for CochainSum<'_> {
    fn arity(&self) -> usize {
        self.0[0].arity()
    }

    fn eval(&self, args: &[Current]) -> Result<Rational> {
        let mut total = rational::zero();
        for c in &self.0 {
            total += c.eval(args)?;
        }
        Ok(total)
    }
}

/// `γ_P(sξ_0, …, sξ_n) = P(x_0, …, x_n) · Res(f_0 ∧ ∂f_1 ∧ ⋯ ∧ ∂f_n)`.
pub struct GammaCochain {
    n: usize,
    p: InvariantPolynomial,
    residues: DelTupleResidue,
}

impl GammaCochain {
    pub fn new(n: usize, p: InvariantPolynomial) -> Result<Self> {
        if p.degree != n + 1 {
            return Err(Error::Config(format!("invariant polynomial of degree {} on {n}-dimensional forms", p.degree)));
        }
        Ok(GammaCochain { n, p, residues: DelTupleResidue::new() })
    }

    pub fn polynomial(&self) -> &InvariantPolynomial {
        &self.p
    }

    pub fn residue_cache_size(&self) -> usize {
        self.residues.cached()
    }
}

impl Cochain for GammaCochain {
    fn arity(&self) -> usize {
        self.n + 1
    }

    fn degree(&self) -> Option<i64> {
        Some(2)
    }

    fn eval(&self, args: &[Current]) -> Result<Rational> {
        check_arity(self, args)?;
        if self.p.is_zero() || args.iter().any(|a| a.is_zero()) {
            return Ok(rational::zero());
        }
        let slots: Vec<Vec<(usize, &Form)>> = args.iter().map(|a| a.terms().map(|(k, f)| (*k, f)).collect()).collect();
        let mut idx = vec![0usize; slots.len()];
        let mut total = rational::zero();
        loop {
            let ks: Vec<usize> = idx.iter().zip(&slots).map(|(&i, s)| s[i].0).collect();
            let c = self.p.eval(&ks);
            if !c.is_zero() {
                let forms: Vec<Form> = idx.iter().zip(&slots).map(|(&i, s)| s[i].1.clone()).collect();
                let r = self.residues.evaluate(&forms)?;
                if !r.is_zero() {
                    total += c * r;
                }
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(total);
                }
                idx[pos] += 1;
                if idx[pos] < slots[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// A pseudo-random linear functional on currents: a seeded integer weight on
/// each (Lie index, wedge key, numerator monomial over `s^K`) coordinate.
#[derive(Clone, Debug)]
pub struct LinearFunctional {
    seed: u64,
    pole_bound: u32,
}

impl LinearFunctional {
    pub fn new(seed: u64, pole_bound: u32) -> Self {
        LinearFunctional { seed, pole_bound }
    }

    fn weight(&self, item: impl Hash) -> Rational {
        let mut h = DefaultHasher::new();
        (self.seed, item).hash(&mut h);
        rational::int((h.finish() % 7) as i64 - 3)
    }

    pub fn apply(&self, x: &Current) -> Result<Rational> {
        let mut total = rational::zero();
        for (k, f) in x.terms() {
            for (key, c) in f.terms() {
                let num = c.numerator_at(self.pole_bound).ok_or_else(|| {
                    Error::Bookkeeping(format!("pole {} exceeds functional bound {}", c.pole(), self.pole_bound))
                })?;
                for (m, a) in num.terms() {
                    total += a * self.weight((k, key.degree(), format!("{key}"), m.exps()));
                }
            }
        }
        Ok(total)
    }
}

/// `c(v_1, …, v_m) = Σ_σ ε(σ) Π_i λ_i(v_σ(i))`, graded-symmetric by construction.
pub struct RandomCochain {
    functionals: Vec<LinearFunctional>,
    perms: Vec<Vec<usize>>,
}

impl RandomCochain {
    pub fn new(arity: usize, seed: u64, pole_bound: u32) -> Self {
        let functionals = (0..arity)
            .map(|i| LinearFunctional::new(seed.wrapping_mul(31).wrapping_add(i as u64), pole_bound))
            .collect();
        RandomCochain { functionals, perms: all_permutations(arity) }
    }
}

impl Cochain for RandomCochain {
    fn arity(&self) -> usize {
        self.functionals.len()
    }

    fn eval(&self, args: &[Current]) -> Result<Rational> {
        check_arity(self, args)?;
        let Some(deg) = shifted_degrees(args)? else { return Ok(rational::zero()) };
        // values[i][j] = λ_i(v_j)
        let mut values = Vec::with_capacity(args.len());
        for l in &self.functionals {
            values.push(args.iter().map(|a| l.apply(a)).collect::<Result<Vec<_>>>()?);
        }
        let mut total = rational::zero();
        for p in &self.perms {
            let mut prod = rational::one();
            for (i, &j) in p.iter().enumerate() {
                prod *= &values[i][j];
                if prod.is_zero() {
                    break;
                }
            }
            if !prod.is_zero() {
                total += koszul_sign(&deg, p) * prod;
            }
        }
        Ok(total)
    }
}

/// The zero cochain of a given arity.
pub struct ZeroCochain(pub usize);

impl Cochain for ZeroCochain {
    fn arity(&self) -> usize {
        self.0
    }

    fn eval(&self, _: &[Current]) -> Result<Rational> {
        Ok(rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::mb_form;
    use crate::grid::laurent;
    use crate::lie::invariant::build_p_phi;

    #[test]
    fn gamma_one_variable() {
        let g = FiniteLieAlgebra::gl(1);
        let gamma = GammaCochain::new(1, build_p_phi(&g, 2).unwrap()).unwrap();
        let e = |a| Current::basis(0, laurent(a));
        assert_eq!(gamma.eval(&[e(2), e(-2)]).unwrap(), rational::int(-2));
        assert_eq!(gamma.eval(&[e(0), e(1)]).unwrap(), rational::zero());
        for a in -3..=3 {
            for b in -3..=3 {
                let expected = if a + b == 0 { rational::int(b) } else { rational::zero() };
                assert_eq!(gamma.eval(&[e(a), e(b)]).unwrap(), expected, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn gamma_wrong_degree_vanishes() {
        let g = FiniteLieAlgebra::gl(1);
        let gamma = GammaCochain::new(2, build_p_phi(&g, 3).unwrap()).unwrap();
        let x = Current::basis(0, mb_form(2));
        assert!(gamma.eval(&[x.clone(), x.clone(), x]).unwrap().is_zero());
    }

    #[test]
    fn koszul_signs() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]), -rational::one());
        assert_eq!(koszul_sign(&[1, 0], &[1, 0]), rational::one());
        assert_eq!(koszul_sign(&[-1, -1, -1], &[2, 0, 1]), rational::one());
    }

    #[test]
    fn trivial_differentials() {
        let g = FiniteLieAlgebra::gl(1);
        let zero = ZeroCochain(2);
        let (dl, dd) = ce_differentials(&zero, &g);
        let x = Current::basis(0, laurent(1));
        assert!(dl.eval(&[x.clone(), x.clone(), x.clone()]).unwrap().is_zero());
        assert!(dd.eval(&[x.clone(), x]).unwrap().is_zero());
        // abelian data: d_Lie of anything vanishes
        let c = RandomCochain::new(1, 5, 8);
        let dl = lie_differential(&c, &g);
        assert!(dl.eval(&[Current::basis(0, laurent(2)), Current::basis(0, laurent(-1))]).unwrap().is_zero());
    }
}

//! The central extension of `g ⊗ A` by `γ_P` as an L∞ algebra on `l[1] ⊕ k·K`.
//!
//! Brackets on the suspension, all of degree `+1`, with `K` central of degree 0
//! (shifted degree −1):
//! `Q_1 = −∂̄`, `Q_2(sx, sy) = (−1)^{|x|} s[x, y]`, `Q_{n+1} = γ_P·K`
//! (for `n = 1` the last one folds into `Q_2`). The generalized Jacobi identity
//! in arity `N` is
//! `Σ_{i+j=N+1} Σ_{unshuffles} ε · Q_j(Q_i(v_S), v_{S^c}) = 0`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::FiniteLieAlgebra;
use super::checks::GridConfig;
use super::cochain::{koszul_sign, Cochain, GammaCochain};
use super::current::{current_bracket, shifted_binary, shifted_unary, Current};
use super::invariant::InvariantPolynomial;
use crate::checks::{run_parallel, CheckOutcome};
use crate::error::{Error, Result};
use crate::grid::{laurent, FormGrid};
use crate::rational::{self, Rational};

/// `sξ + c·K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement {
    pub current: Current,
    pub central: Rational,
}

impl ExtElement {
    pub fn zero(n: usize) -> Self {
        ExtElement { current: Current::zero(n), central: rational::zero() }
    }

    pub fn current(c: Current) -> Self {
        ExtElement { current: c, central: rational::zero() }
    }

    pub fn central(n: usize, c: Rational) -> Self {
        ExtElement { current: Current::zero(n), central: c }
    }

    pub fn is_zero(&self) -> bool {
        self.current.is_zero() && self.central.is_zero()
    }

    /// `None` for zero.
    pub fn shifted_degree(&self) -> Result<Option<i64>> {
        if !self.current.is_zero() {
            let d = self.current.shifted_degree().ok_or_else(|| Error::Bookkeeping("inhomogeneous current".into()))?;
            if !self.central.is_zero() && d != -1 {
                return Err(Error::Bookkeeping("inhomogeneous extension element".into()));
            }
            return Ok(Some(d));
        }
        Ok((!self.central.is_zero()).then_some(-1))
    }

    pub fn add_scaled(&mut self, other: &ExtElement, c: &Rational) -> Result<()> {
        self.current = self.current.add(&other.current.scale(c))?;
        self.central += &other.central * c;
        Ok(())
    }
}

impl std::fmt::Display for ExtElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + ({})·K", self.current, self.central)
    }
}

pub struct LinftyExtension<'a> {
    n: usize,
    lie: &'a FiniteLieAlgebra,
    gamma: GammaCochain,
}

impl<'a> LinftyExtension<'a> {
    pub fn new(n: usize, lie: &'a FiniteLieAlgebra, p: &InvariantPolynomial) -> Result<Self> {
        Ok(LinftyExtension { n, lie, gamma: GammaCochain::new(n, p.clone())? })
    }

    /// `Q_k(v_1, …, v_k)`; central components of the arguments contribute nothing.
    pub fn bracket(&self, args: &[ExtElement]) -> Result<ExtElement> {
        let n = self.n;
        let cur: Vec<Current> = args.iter().map(|a| a.current.clone()).collect();
        let mut out = ExtElement::zero(n);
        if cur.iter().any(|c| c.is_zero()) {
            return Ok(out);
        }
        match args.len() {
            1 => out.current = shifted_unary(&cur[0]),
            2 => out.current = shifted_binary(self.lie, &cur[0], &cur[1])?,
            _ => {}
        }
        if args.len() == n + 1 {
            out.central = self.gamma.eval(&cur)?;
        }
        Ok(out)
    }

    /// The arity-`N` Jacobi expression; zero for an L∞ algebra.
    pub fn jacobi(&self, args: &[ExtElement]) -> Result<ExtElement> {
        let big_n = args.len();
        let mut deg = Vec::with_capacity(big_n);
        for a in args {
            match a.shifted_degree()? {
                Some(d) => deg.push(d),
                None => return Ok(ExtElement::zero(self.n)),
            }
        }
        let mut total = ExtElement::zero(self.n);
        // subsets S as bitmasks, |S| = i ≥ 1
        for mask in 1u32..(1 << big_n) {
            let s: Vec<usize> = (0..big_n).filter(|k| mask >> k & 1 == 1).collect();
            let rest: Vec<usize> = (0..big_n).filter(|k| mask >> k & 1 == 0).collect();
            let inner = self.bracket(&s.iter().map(|&k| args[k].clone()).collect::<Vec<_>>())?;
            if inner.current.is_zero() {
                // a central output is annihilated by every outer bracket
                continue;
            }
            let mut outer_args = vec![inner];
            outer_args.extend(rest.iter().map(|&k| args[k].clone()));
            let outer = self.bracket(&outer_args)?;
            if outer.is_zero() {
                continue;
            }
            let order: Vec<usize> = s.iter().chain(&rest).copied().collect();
            total.add_scaled(&outer, &koszul_sign(&deg, &order))?;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LinftyReport {
    pub n: usize,
    pub lie: String,
    pub checks: Vec<CheckOutcome>,
}

impl LinftyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

fn describe(t: &[ExtElement]) -> String {
    let parts: Vec<String> = t.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Seeded weight-0 tuples of arity `m`, spread over the feasible degree sums.
fn sampled_tuples(grid: &FormGrid, dim: usize, m: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Current>> {
    let n = grid.n;
    let top = m * (n - 1);
    let sets: Vec<Vec<Vec<usize>>> = (0..=top).map(|s| grid.multisets(m, s, &vec![0; n])).collect();
    let feasible: Vec<usize> = (0..=top).filter(|&s| !sets[s].is_empty()).collect();
    if feasible.is_empty() {
        return vec![];
    }
    (0..count)
        .map(|_| {
            let s = &sets[feasible[rng.random_range(0..feasible.len())]];
            let mut idx = s[rng.random_range(0..s.len())].clone();
            rand::seq::SliceRandom::shuffle(idx.as_mut_slice(), rng);
            idx.iter().map(|&i| Current::basis(rng.random_range(0..dim), grid.form(i).clone())).collect()
        })
        .collect()
}

/// Generalized Jacobi identities up to arity `n + 2` on `samples` seeded tuples
/// per arity, centrality of `K`, and the `n = 1` affine comparison.
pub fn linfty_extension(
    n: usize,
    lie: &FiniteLieAlgebra,
    p: &InvariantPolynomial,
    cfg: &GridConfig,
    samples: usize,
) -> Result<LinftyReport> {
    let ext = LinftyExtension::new(n, lie, p)?;
    let grid = cfg.grid(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x11f);
    let mut checks = Vec::new();
    for arity in 1..=n + 2 {
        let tuples: Vec<Vec<ExtElement>> = sampled_tuples(&grid, lie.dim(), arity, samples, &mut rng)
            .into_iter()
            .map(|t| t.into_iter().map(ExtElement::current).collect())
            .collect();
        checks.push(run_parallel(&format!("linfty.jacobi.{arity}"), false, &tuples, |t| {
            let j = ext.jacobi(t)?;
            Ok((!j.is_zero()).then(|| format!("{} ↦ {j}", describe(t))))
        })?);
    }

    // K in any slot of any bracket gives zero
    let k = ExtElement::central(n, rational::one());
    let mut central_items = Vec::new();
    for arity in 1..=n + 1 {
        for t in sampled_tuples(&grid, lie.dim(), arity, samples / (n + 1), &mut rng) {
            let mut t: Vec<ExtElement> = t.into_iter().map(ExtElement::current).collect();
            let slot = rng.random_range(0..arity);
            t[slot] = k.clone();
            central_items.push(t);
        }
    }
    checks.push(run_parallel("linfty.centrality", false, &central_items, |t| {
        let b = ext.bracket(t)?;
        Ok((!b.is_zero()).then(|| format!("{} ↦ {b}", describe(t))))
    })?);

    if n == 1 {
        checks.push(affine_comparison(&ext, lie, p, cfg.weight_bound)?);
    }
    if lie.is_abelian() && n >= 2 {
        checks.push(abelian_shape(&ext, &grid, lie, samples, &mut rng)?);
    }
    Ok(LinftyReport { n, lie: lie.name.clone(), checks })
}

/// `l_2(x z^a, y z^b) = [x, y] z^{a+b} + b·δ_{a+b,0}·P(x, y)·K` on degree-0 currents.
fn affine_comparison(
    ext: &LinftyExtension,
    lie: &FiniteLieAlgebra,
    p: &InvariantPolynomial,
    bound: i64,
) -> Result<CheckOutcome> {
    let d = lie.dim();
    let mut items = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for x in 0..d {
                for y in 0..d {
                    items.push((a, b, x, y));
                }
            }
        }
    }
    run_parallel("linfty.affine", true, &items, |&(a, b, x, y)| {
        let u = Current::basis(x, laurent(a));
        let v = Current::basis(y, laurent(b));
        let got = ext.bracket(&[ExtElement::current(u.clone()), ExtElement::current(v.clone())])?;
        let central = if a + b == 0 { rational::int(b) * p.eval(&[x, y]) } else { rational::zero() };
        let expected = ExtElement { current: current_bracket(lie, &u, &v)?, central };
        Ok((got != expected).then(|| format!("(e{x} z^{a}, e{y} z^{b}) ↦ {got}, expected {expected}")))
    })
}

/// Abelian `g`: the binary bracket vanishes and only `l_{n+1}` survives.
fn abelian_shape(
    ext: &LinftyExtension,
    grid: &FormGrid,
    lie: &FiniteLieAlgebra,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<CheckOutcome> {
    let n = grid.n;
    let pairs = sampled_tuples(grid, lie.dim(), 2, samples, rng);
    let mut out = run_parallel("linfty.abelian_shape", false, &pairs, |t| {
        let b = ext.bracket(&[ExtElement::current(t[0].clone()), ExtElement::current(t[1].clone())])?;
        Ok((!b.is_zero()).then(|| format!("l_2 nonzero: {b}")))
    })?;
    let tops = sampled_tuples(grid, lie.dim(), n + 1, samples, rng);
    let mut nonzero = false;
    for t in &tops {
        let args: Vec<ExtElement> = t.iter().cloned().map(ExtElement::current).collect();
        if !ext.bracket(&args)?.central.is_zero() {
            nonzero = true;
            break;
        }
    }
    out.record(nonzero, || format!("l_{} vanished on all {} samples", n + 1, tops.len()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::invariant::build_p_phi;

    #[test]
    fn affine_extension() {
        let g = FiniteLieAlgebra::gl(2);
        let p = build_p_phi(&g, 2).unwrap();
        let r = linfty_extension(1, &g, &p, &GridConfig::quick(1), 40).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{}", c.summary());
        }
    }

    #[test]
    fn heisenberg_shape() {
        let g = FiniteLieAlgebra::gl(1);
        let p = build_p_phi(&g, 3).unwrap();
        let r = linfty_extension(2, &g, &p, &GridConfig::quick(2), 40).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{}", c.summary());
        }
        assert!(r.checks.iter().any(|c| c.id == "linfty.abelian_shape"));
    }
}

//! Tuple-grid verification of the cocycle `γ_P`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::{FiniteLieAlgebra, LieHom};
use super::cochain::{
    dbar_differential, koszul_sign, lie_differential, shifted_degrees, Cochain, GammaCochain, RandomCochain,
};
use super::current::Current;
use super::invariant::InvariantPolynomial;
use crate::checks::{run_parallel, CheckOutcome};
use crate::error::Result;
use crate::grid::{describe_tuple, laurent, FormGrid};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridConfig {
    pub weight_bound: i64,
    pub pole_bound: u32,
    pub degree_bound: usize,
    /// Largest grid tested exhaustively; larger grids are sampled to this size.
    pub limit: usize,
    /// Extra tuples with two-label slots.
    pub samples: usize,
    pub seed: u64,
}

impl GridConfig {
    pub fn quick(n: usize) -> Self {
        match n {
            1 => GridConfig { weight_bound: 3, pole_bound: 3, degree_bound: 0, limit: 2000, samples: 50, seed: 1 },
            _ => GridConfig { weight_bound: 1, pole_bound: 3, degree_bound: n - 1, limit: 300, samples: 30, seed: 1 },
        }
    }

    pub fn grid(&self, n: usize) -> Result<FormGrid> {
        FormGrid::new(n, self.weight_bound, self.pole_bound, self.degree_bound)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub n: usize,
    pub lie: String,
    pub grid_forms: usize,
    pub checks: Vec<CheckOutcome>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

fn tuples_for(
    grid: &FormGrid,
    dim: usize,
    m: usize,
    degree_sum: usize,
    weight_sum: &[i64],
    cfg: &GridConfig,
    rng: &mut ChaCha8Rng,
) -> (Vec<Vec<Current>>, bool) {
    let set = grid.current_tuples(dim, m, degree_sum, weight_sum, cfg.limit, rng);
    let mut tuples = set.tuples;
    tuples.extend(grid.mixed_tuples(dim, m, degree_sum, weight_sum, cfg.samples, rng));
    (tuples, set.exhaustive)
}

fn residual_check(id: &str, c: &dyn Cochain, tuples: &[Vec<Current>], exhaustive: bool) -> Result<CheckOutcome> {
    run_parallel(id, exhaustive, tuples, |t| {
        let v = c.eval(t)?;
        Ok((!v.is_zero()).then(|| format!("{} = {}", describe_tuple(t), v)))
    })
}

/// Graded symmetry of `γ_P` under adjacent transpositions.
pub fn symmetry_check(id: &str, c: &dyn Cochain, tuples: &[Vec<Current>], exhaustive: bool) -> Result<CheckOutcome> {
    run_parallel(id, exhaustive, tuples, |t| {
        let Some(deg) = shifted_degrees(t)? else { return Ok(None) };
        let v = c.eval(t)?;
        for k in 0..t.len() - 1 {
            let mut order: Vec<usize> = (0..t.len()).collect();
            order.swap(k, k + 1);
            let swapped: Vec<Current> = order.iter().map(|&i| t[i].clone()).collect();
            let w = c.eval(&swapped)?;
            if w != koszul_sign(&deg, &order) * &v {
                return Ok(Some(format!("{} = {v}, swap {k}↔{} gives {w}", describe_tuple(t), k + 1)));
            }
        }
        Ok(None)
    })
}

/// Symmetry, degree, `d_Lie γ_P = 0` and `D γ_P = 0` on bounded tuple grids.
pub fn cocycle_check_gamma(
    n: usize,
    lie: &FiniteLieAlgebra,
    p: &InvariantPolynomial,
    cfg: &GridConfig,
) -> Result<CocycleReport> {
    let grid = cfg.grid(n)?;
    let gamma = GammaCochain::new(n, p.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let zero = vec![0i64; n];
    let d = lie.dim();
    let mut checks = Vec::new();

    let (ts, ex) = tuples_for(&grid, d, n + 1, n - 1, &zero, cfg, &mut rng);
    checks.push(symmetry_check("gamma.symmetry", &gamma, &ts, ex)?);

    // values off total form degree n − 1 vanish: γ has degree 2 on S^{n+1}(l[1])
    let mut off = Vec::new();
    let mut off_ex = true;
    for s in (0..=(n + 1) * cfg.degree_bound.min(n - 1)).filter(|&s| s != n - 1) {
        let (t, e) = tuples_for(&grid, d, n + 1, s, &zero, cfg, &mut rng);
        off.extend(t);
        off_ex &= e;
    }
    checks.push(residual_check("gamma.degree", &gamma, &off, off_ex)?);

    let dl = lie_differential(&gamma, lie);
    let (ts, ex) = tuples_for(&grid, d, n + 2, n - 1, &zero, cfg, &mut rng);
    checks.push(residual_check("gamma.d_lie", &dl, &ts, ex)?);

    let dd = dbar_differential(&gamma);
    let (ts, ex) = if n >= 2 { tuples_for(&grid, d, n + 1, n - 2, &zero, cfg, &mut rng) } else { (vec![], true) };
    checks.push(residual_check("gamma.dbar", &dd, &ts, ex)?);

    Ok(CocycleReport { n, lie: lie.name.clone(), grid_forms: grid.len(), checks })
}

/// `Σ_k γ_P(…, E_ij·ξ_k, …) = 0` for all `i, j` (the form action is even).
pub fn gl_invariance_gamma(
    n: usize,
    lie: &FiniteLieAlgebra,
    p: &InvariantPolynomial,
    cfg: &GridConfig,
) -> Result<CheckOutcome> {
    let grid = cfg.grid(n)?;
    let gamma = GammaCochain::new(n, p.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37);
    let mut items = Vec::new();
    let mut exhaustive = true;
    for i in 1..=n {
        for j in 1..=n {
            // E_ij raises the weight by e_i − e_j
            let mut w = vec![0i64; n];
            w[i - 1] -= 1;
            w[j - 1] += 1;
            let (ts, ex) = tuples_for(&grid, lie.dim(), n + 1, n - 1, &w, cfg, &mut rng);
            exhaustive &= ex;
            items.extend(ts.into_iter().map(|t| (i, j, t)));
        }
    }
    run_parallel("gamma.gl_invariance", exhaustive, &items, |(i, j, t)| {
        let mut total = rational::zero();
        for k in 0..t.len() {
            let mut s = t.clone();
            s[k] = t[k].gl_action(*i, *j)?;
            total += gamma.eval(&s)?;
        }
        Ok((!total.is_zero()).then(|| format!("E{i}{j} on {} gives {total}", describe_tuple(t))))
    })
}

/// `γ_{aP + bQ} = a γ_P + b γ_Q`.
pub fn gamma_linearity(
    n: usize,
    lie: &FiniteLieAlgebra,
    (a, p): (&Rational, &InvariantPolynomial),
    (b, q): (&Rational, &InvariantPolynomial),
    cfg: &GridConfig,
) -> Result<CheckOutcome> {
    let grid = cfg.grid(n)?;
    let gp = GammaCochain::new(n, p.clone())?;
    let gq = GammaCochain::new(n, q.clone())?;
    let gs = GammaCochain::new(n, p.combine(a, q, b))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x51);
    let (ts, ex) = tuples_for(&grid, lie.dim(), n + 1, n - 1, &vec![0; n], cfg, &mut rng);
    run_parallel("gamma.linearity", ex, &ts, |t| {
        let lhs = gs.eval(t)?;
        let rhs = a * gp.eval(t)? + b * gq.eval(t)?;
        Ok((lhs != rhs).then(|| format!("{}: {lhs} ≠ {rhs}", describe_tuple(t))))
    })
}

/// `γ_{φ*P}(ξ) = γ_P(φ ξ)` for a homomorphism `φ: src → dst`.
pub fn gamma_pullback(
    n: usize,
    src: &FiniteLieAlgebra,
    phi: &LieHom,
    p_dst: &InvariantPolynomial,
    cfg: &GridConfig,
) -> Result<CheckOutcome> {
    let grid = cfg.grid(n)?;
    let pulled = GammaCochain::new(n, p_dst.pullback(phi, src.dim()))?;
    let direct = GammaCochain::new(n, p_dst.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x77);
    let (ts, ex) = tuples_for(&grid, src.dim(), n + 1, n - 1, &vec![0; n], cfg, &mut rng);
    run_parallel("gamma.pullback", ex, &ts, |t| {
        let lhs = pulled.eval(t)?;
        let mapped: Vec<Current> = t.iter().map(|x| phi.apply(x)).collect::<Result<_>>()?;
        let rhs = direct.eval(&mapped)?;
        Ok((lhs != rhs).then(|| format!("{}: {lhs} ≠ {rhs}", describe_tuple(t))))
    })
}

/// `(d_Lie + D)² = 0` on seeded graded-symmetric cochains of arity `1..=max_arity`:
/// its components `D²c`, `(d_Lie D + D d_Lie)c` and `d_Lie² c` vanish.
pub fn differential_square(
    n: usize,
    lie: &FiniteLieAlgebra,
    cfg: &GridConfig,
    max_arity: usize,
) -> Result<CheckOutcome> {
    let grid = cfg.grid(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd2);
    let zero = vec![0i64; n];
    let top = n.saturating_sub(1);
    let mut items = Vec::new();
    let mut exhaustive = true;
    for m in 1..=max_arity {
        for extra in 0..=2 {
            for s in 0..=(m + extra) * top {
                let (ts, ex) = tuples_for(&grid, lie.dim(), m + extra, s, &zero, cfg, &mut rng);
                exhaustive &= ex;
                items.extend(ts.into_iter().map(|t| (m, extra, t)));
            }
        }
    }
    // each bracket or ∂̄ can raise the pole by up to the pole bound
    let cochains: Vec<RandomCochain> = (1..=max_arity)
        .map(|m| RandomCochain::new(m, cfg.seed.wrapping_add(m as u64), cfg.pole_bound * (m as u32 + 2) + 2))
        .collect();
    run_parallel("cochain.differential_square", exhaustive, &items, |(m, extra, t)| {
        let c = &cochains[m - 1];
        let dl = lie_differential(c, lie);
        let dd = dbar_differential(c);
        let v = match extra {
            0 => dbar_differential(&dd).eval(t)?,
            1 => dbar_differential(&dl).eval(t)? + lie_differential(&dd, lie).eval(t)?,
            _ => lie_differential(&dl, lie).eval(t)?,
        };
        Ok((!v.is_zero()).then(|| format!("arity {m}, component {extra}: {} = {v}", describe_tuple(t))))
    })
}

/// For `n = 1`: `γ(x z^a, y z^b) = b·δ_{a+b,0}·P(x, y)` on `|a|, |b| ≤ bound`.
pub fn affine_table(lie: &FiniteLieAlgebra, p: &InvariantPolynomial, bound: i64) -> Result<CheckOutcome> {
    let gamma = GammaCochain::new(1, p.clone())?;
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
    run_parallel("gamma.affine_table", true, &items, |&(a, b, x, y)| {
        let v = gamma.eval(&[Current::basis(x, laurent(a)), Current::basis(y, laurent(b))])?;
        let expected = if a + b == 0 { rational::int(b) * p.eval(&[x, y]) } else { rational::zero() };
        Ok((v != expected).then(|| format!("(e{x} z^{a}, e{y} z^{b}) = {v}, expected {expected}")))
    })
}

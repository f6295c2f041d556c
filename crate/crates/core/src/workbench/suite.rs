//! Verification suites: each expands to a list of independent tasks over the
//! configured `(n, weight, degree, pole)` grid. Tasks and the cells inside them
//! run on the rayon pool; records are assembled in task order, so a report does
//! not depend on the number of workers.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::report::{CheckRecord, VerificationReport};
use crate::checks::{run_parallel, CheckOutcome};
use crate::cohomology::{cohomology_cell, weight_box};
use crate::cyclic::{compare_gamma_theta, verify_residue_cocycle};
use crate::error::{Error, Result};
use crate::forms::{basis, Form};
use crate::lie::checks::{
    affine_table, cocycle_check_gamma, differential_square, gamma_linearity, gamma_pullback, gl_invariance_gamma,
    GridConfig,
};
use crate::lie::linfty::linfty_extension;
use crate::lie::{build_p_phi, FiniteLieAlgebra, LieHom};
use crate::poly::{Monomial, SparsePolynomial};
use crate::rational;
use crate::residue::{duality_check, multipole_check, normalized_top_form, ResidueSolver};
use crate::spectrum::{branching_restriction, dominant_box, gt_dimension, spectrum_cell, weyl_dimension};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    #[default]
    Quick,
    Standard,
    Full,
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "standard" => Ok(Level::Standard),
            "full" => Ok(Level::Full),
            _ => Err(Error::Config(format!("unknown level '{s}' (quick, standard, full)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Cohomology,
    Residue,
    Spectrum,
    Cocycle,
    Cyclic,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] =
        [SuiteName::Cohomology, SuiteName::Residue, SuiteName::Spectrum, SuiteName::Cocycle, SuiteName::Cyclic];
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cohomology" => SuiteName::Cohomology,
            "residue" => SuiteName::Residue,
            "spectrum" => SuiteName::Spectrum,
            "cocycle" => SuiteName::Cocycle,
            "cyclic" => SuiteName::Cyclic,
            "all" => SuiteName::All,
            _ => {
                return Err(Error::Config(format!(
                    "unknown suite '{s}' (cohomology, residue, spectrum, cocycle, cyclic, all)"
                )))
            }
        })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteName::Cohomology => "cohomology",
            SuiteName::Residue => "residue",
            SuiteName::Spectrum => "spectrum",
            SuiteName::Cocycle => "cocycle",
            SuiteName::Cyclic => "cyclic",
            SuiteName::All => "all",
        };
        f.write_str(s)
    }
}

/// Level plus optional overrides. `jobs` changes only scheduling, so it is not
/// echoed into reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub level: Level,
    pub n: Option<usize>,
    pub pole_max: Option<u32>,
    pub weight_box: Option<i64>,
    pub degree_max: Option<usize>,
    pub seed: u64,
    #[serde(skip)]
    pub jobs: Option<usize>,
    pub escalation_cap: Option<u32>,
}

impl SuiteConfig {
    pub fn level(level: Level) -> Self {
        SuiteConfig { level, seed: 1, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        match self.n {
            Some(n) if !(1..=4).contains(&n) => return bad(format!("--n must be in 1..=4, got {n}")),
            _ => {}
        }
        match self.weight_box {
            Some(b) if !(0..=12).contains(&b) => return bad(format!("--weight-box must be in 0..=12, got {b}")),
            _ => {}
        }
        if self.pole_max.is_some_and(|r| r > 16) {
            return bad("--pole-max must be ≤ 16".into());
        }
        if self.jobs == Some(0) {
            return bad("--jobs must be ≥ 1".into());
        }
        if let (Some(n), Some(d)) = (self.n, self.degree_max) {
            if d >= n {
                return bad(format!("--degree-max {d} exceeds n − 1 = {}", n - 1));
            }
        }
        Ok(())
    }

    fn dims(&self, defaults: &[usize]) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => defaults.to_vec(),
        }
    }

    fn bound(&self, default: i64) -> i64 {
        self.weight_box.unwrap_or(default)
    }

    fn degrees(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        0..=self.degree_max.unwrap_or(n - 1).min(n - 1)
    }

    fn grid(&self, base: GridConfig, n: usize) -> GridConfig {
        GridConfig {
            weight_bound: self.weight_box.unwrap_or(base.weight_bound),
            pole_bound: self.pole_max.unwrap_or(base.pole_bound),
            degree_bound: self.degree_max.unwrap_or(base.degree_bound).min(n - 1),
            seed: self.seed,
            ..base
        }
    }
}

type Job<'a> = Box<dyn FnOnce() -> Result<Vec<CheckOutcome>> + Send + 'a>;

struct Task<'a> {
    label: String,
    job: Job<'a>,
}

fn task<'a>(label: impl Into<String>, job: impl FnOnce() -> Result<Vec<CheckOutcome>> + Send + 'a) -> Task<'a> {
    Task { label: label.into(), job: Box::new(job) }
}

fn prefixed(prefix: &str, mut outcomes: Vec<CheckOutcome>) -> Vec<CheckOutcome> {
    for o in &mut outcomes {
        o.id = format!("{prefix}.{}", o.id);
    }
    outcomes
}

fn show(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cohomology_tasks<'a>(cfg: &'a SuiteConfig) -> Vec<Task<'a>> {
    let plan: &[(usize, i64)] = match cfg.level {
        Level::Quick => &[(2, 2)],
        Level::Standard => &[(2, 6), (3, 2)],
        Level::Full => &[(2, 6), (3, 3), (4, 1)],
    };
    let plan: Vec<(usize, i64)> = match cfg.n {
        Some(n) => vec![(n, cfg.bound(if n <= 2 { 4 } else { 2 }))],
        None => plan.iter().map(|&(n, b)| (n, cfg.bound(b))).collect(),
    };
    let mut out = Vec::new();
    for (n, b) in plan {
        for q in cfg.degrees(n) {
            let id = format!("cohomology.n{n}.q{q}.box{b}");
            out.push(task(id.clone(), move || {
                let weights = weight_box(n, b);
                let o = run_parallel(&id, true, &weights, |w| {
                    let cell = cohomology_cell(n, q, w, cfg.pole_max)?;
                    Ok((!(cell.monotone() && cell.matches())).then(|| {
                        format!(
                            "w={}: dims {:?}, stabilized {}, expected {}",
                            show(w),
                            cell.dims,
                            cell.stabilized,
                            cell.expected
                        )
                    }))
                })?;
                Ok(vec![o])
            }));
        }
    }
    out
}

/// A seeded polynomial in `z` of degree `≤ degree` with small integer coefficients.
pub fn random_polynomial(n: usize, degree: u32, rng: &mut impl Rng) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero(n);
    for _ in 0..rng.random_range(1..=5) {
        let mut z = vec![0u16; n];
        let d = rng.random_range(0..=degree);
        for _ in 0..d {
            z[rng.random_range(0..n)] += 1;
        }
        let c = rng.random_range(-5i64..=5);
        p.add_term(Monomial::new(&z, &vec![0; n]), rational::int(c));
    }
    p
}

fn residue_tasks<'a>(cfg: &'a SuiteConfig, solver: &'a ResidueSolver) -> Vec<Task<'a>> {
    let (dims, samples, degree, stokes_r, duality_dims, bound) = match cfg.level {
        Level::Quick => (vec![1, 2], 10, 3, 2, vec![1, 2], 2),
        Level::Standard => (vec![1, 2, 3], 50, 4, 3, vec![1, 2], 4),
        Level::Full => (vec![1, 2, 3, 4], 50, 4, 3, vec![1, 2, 3], 4),
    };
    let dims = cfg.dims(&dims);
    let stokes_r = cfg.pole_max.unwrap_or(stokes_r);
    let bound = cfg.bound(bound);
    let mut out = Vec::new();
    for &n in &dims {
        out.push(task(format!("residue.normalization.n{n}"), move || {
            let mut o = CheckOutcome::new(format!("residue.normalization.n{n}"), true).with_inputs(&[n]);
            let (v, cert) = solver.residue_certified(&normalized_top_form(n))?;
            o.record(v == rational::one() && cert.verify(), || format!("Res(Ω∧dz) = {v}"));
            Ok(vec![o])
        }));
        out.push(task(format!("residue.martinelli_bochner.n{n}"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (0x3b00 + n as u64));
            let polys: Vec<SparsePolynomial> = (0..samples).map(|_| random_polynomial(n, degree, &mut rng)).collect();
            let top = normalized_top_form(n);
            let id = format!("residue.martinelli_bochner.n{n}.deg{degree}");
            let o = run_parallel(&id, false, &polys, |f| {
                let omega = top.mul_function(&crate::forms::LocalizedCoefficient::polynomial(f.clone()));
                let (v, cert) = solver.residue_certified(&omega)?;
                let expected = f.constant_term();
                let unique = !solver.identity_holds_at(&omega, &(&v + rational::one()), cert.witness_level)?;
                Ok((v != expected || !cert.verify() || !unique).then(|| {
                    format!("f = {f}: Res = {v}, f(0) = {expected}, certified {}, unique {unique}", cert.verify())
                }))
            })?;
            Ok(vec![o])
        }));
        if n >= 2 {
            for r in 0..=stokes_r {
                let id = format!("residue.stokes.n{n}.r{r}");
                out.push(task(id.clone(), move || {
                    let zero = vec![0; n];
                    let mut items: Vec<(bool, Form)> =
                        basis(n, n - 1, n - 1, &zero, r)?.into_iter().map(|a| (true, a)).collect();
                    items.extend(basis(n, n, n - 2, &zero, r)?.into_iter().map(|b| (false, b)));
                    let o = run_parallel(&id, true, &items, |(is_alpha, f)| {
                        let image = if *is_alpha { f.del() } else { f.dbar() };
                        let v = solver.residue(&image)?;
                        let op = if *is_alpha { "∂" } else { "∂̄" };
                        Ok((!v.is_zero()).then(|| format!("Res({op}[{f}]) = {v}")))
                    })?;
                    Ok(vec![o])
                }));
            }
        }
        let id = format!("residue.gl_invariance.n{n}");
        out.push(task(id.clone(), move || {
            let r = stokes_r.min(2);
            let mut items = Vec::new();
            for w in weight_box(n, 1) {
                for f in basis(n, n, n - 1, &w, r)? {
                    for i in 1..=n {
                        for j in 1..=n {
                            items.push((i, j, f.clone()));
                        }
                    }
                }
            }
            let o = run_parallel(&id, true, &items, |(i, j, f)| {
                let v = solver.residue(&f.gl_action(*i, *j)?)?;
                Ok((!v.is_zero()).then(|| format!("Res(E{i}{j}·[{f}]) = {v}")))
            })?;
            Ok(vec![o])
        }));
        if n <= 2 || cfg.level == Level::Full {
            let id = format!("residue.multipole.n{n}.box{bound}");
            out.push(task(id.clone(), move || {
                let weights: Vec<Vec<i64>> =
                    weight_box(n, bound).into_iter().filter(|w| w.iter().all(|&x| x <= -1)).collect();
                let o = run_parallel(&id, true, &weights, |w| {
                    let m = multipole_check(n, w)?;
                    Ok((!m.passed).then(|| format!("w={}: H dim {}, scale {}", show(w), m.cohomology_dim, m.scale)))
                })?;
                Ok(vec![o])
            }));
        }
    }
    for n in duality_dims.into_iter().filter(|n| dims.contains(n)) {
        for q in cfg.degrees(n) {
            let id = format!("residue.duality.n{n}.q{q}.box{bound}");
            out.push(task(id.clone(), move || {
                let weights = weight_box(n, bound);
                let o = run_parallel(&id, true, &weights, |w| {
                    let d = duality_check(n, q, w, cfg.pole_max)?;
                    Ok((!d.nondegenerate()).then(|| {
                        format!("w={}: dims {}×{}, rank {} at r={}", show(w), d.left_dim, d.right_dim, d.rank, d.level)
                    }))
                })?;
                Ok(vec![o])
            }));
        }
    }
    out
}

fn spectrum_tasks<'a>(cfg: &'a SuiteConfig) -> Vec<Task<'a>> {
    let plan: &[(usize, i64)] = match cfg.level {
        Level::Quick => &[(2, 2)],
        Level::Standard => &[(2, 3), (3, 3)],
        Level::Full => &[(2, 3), (3, 3), (4, 1)],
    };
    let plan: Vec<(usize, i64)> = match cfg.n {
        Some(n) => vec![(n, cfg.bound(if n <= 3 { 2 } else { 1 }))],
        None => plan.iter().map(|&(n, b)| (n, cfg.bound(b))).collect(),
    };
    let mut out = Vec::new();
    for &(n, b) in &plan {
        for q in cfg.degrees(n) {
            let id = format!("spectrum.simple.n{n}.q{q}.box{b}");
            out.push(task(id.clone(), move || {
                let alphas = dominant_box(n, b);
                let o = run_parallel(&id, true, &alphas, |a| {
                    let cell = spectrum_cell(n, q, a, cfg.pole_max)?;
                    Ok((!cell.matches()).then(|| {
                        format!(
                            "α={}: multiplicities {:?}, interlacing {}",
                            show(a),
                            cell.multiplicities,
                            cell.predicate
                        )
                    }))
                })?;
                Ok(vec![o])
            }));
        }
        let id = format!("spectrum.dimensions.n{n}");
        out.push(task(id.clone(), move || {
            let alphas = dominant_box(n, 3);
            let weyl = run_parallel(&format!("{id}.weyl"), true, &alphas, |a| {
                let (g, w) = (gt_dimension(a)?, weyl_dimension(a)?);
                Ok((g != w).then(|| format!("α={}: patterns {g}, Weyl {w}", show(a))))
            })?;
            let branching = run_parallel(&format!("{id}.branching"), true, &alphas, |a| {
                if n < 2 {
                    return Ok(None);
                }
                let total: u64 = branching_restriction(a)?.iter().map(|b| gt_dimension(b)).sum::<Result<u64>>()?;
                let d = gt_dimension(a)?;
                Ok((total != d).then(|| format!("α={}: Σ restricted {total} ≠ {d}", show(a))))
            })?;
            Ok(vec![weyl, branching])
        }));
    }
    if plan.iter().any(|&(n, _)| n == 2) {
        let b = plan.iter().find(|&&(n, _)| n == 2).unwrap().1.max(3);
        let id = format!("spectrum.plane_example.box{b}");
        out.push(task(id.clone(), move || {
            let weights = weight_box(2, b);
            let o = run_parallel(&id, true, &weights, |w| {
                let h0 = cohomology_cell(2, 0, w, cfg.pole_max)?.dim;
                let h1 = cohomology_cell(2, 1, w, cfg.pole_max)?.dim;
                let polynomial = w.iter().all(|&x| x >= 0);
                let negative = w.iter().all(|&x| x <= -1);
                let closed = !polynomial || {
                    let z = Monomial::new(&[w[0] as u16, w[1] as u16], &[0, 0]);
                    let f = Form::polynomial(SparsePolynomial::term(2, z, rational::one()));
                    f.is_valid() && f.dbar().is_zero()
                };
                let ok = h0 == usize::from(polynomial) && h1 == usize::from(negative) && closed;
                Ok((!ok).then(|| format!("w={}: H0 {h0}, H1 {h1}", show(w))))
            })?;
            Ok(vec![o])
        }));
    }
    out
}

/// The Lie-algebraic configurations: `(n, algebra)` with `P` the trace polynomial of degree `n + 1`.
fn lie_configs(dims: &[usize]) -> Vec<(usize, FiniteLieAlgebra)> {
    let mut out = Vec::new();
    for &n in dims {
        match n {
            1 => out.push((1, FiniteLieAlgebra::gl(2))),
            2 => {
                out.push((2, FiniteLieAlgebra::gl(1)));
                out.push((2, FiniteLieAlgebra::gl(2)));
            }
            _ => out.push((n, FiniteLieAlgebra::gl(1))),
        }
    }
    out
}

fn cocycle_tasks<'a>(cfg: &'a SuiteConfig) -> Vec<Task<'a>> {
    let (dims, samples, affine_bound) = match cfg.level {
        Level::Quick => (vec![1, 2], 20, 3),
        Level::Standard => (vec![1, 2], 200, 5),
        Level::Full => (vec![1, 2, 3], 200, 5),
    };
    let base = |n: usize, lie: &FiniteLieAlgebra| {
        let g = GridConfig::quick(n);
        match (cfg.level, n, lie.dim()) {
            (_, 1, _) => g,
            (Level::Quick, _, d) => GridConfig { limit: if d == 1 { 60 } else { 40 }, samples: 10, ..g },
            (Level::Standard, _, _) => g,
            (Level::Full, _, _) => GridConfig { limit: 1000, samples: 100, ..g },
        }
    };
    let mut out = Vec::new();
    for (n, lie) in lie_configs(&cfg.dims(&dims)) {
        let grid = cfg.grid(base(n, &lie), n);
        let prefix = format!("cocycle.n{n}.{}", lie.name);
        let lie = std::sync::Arc::new(lie);
        {
            let (lie, grid, prefix) = (lie.clone(), grid.clone(), prefix.clone());
            out.push(task(format!("{prefix}.gamma"), move || {
                let p = build_p_phi(&lie, n + 1)?;
                let mut v = cocycle_check_gamma(n, &lie, &p, &grid)?.checks;
                v.push(gl_invariance_gamma(n, &lie, &p, &grid)?);
                if n == 1 {
                    v.push(affine_table(&lie, &p, affine_bound)?);
                    let q = p.combine(&rational::int(3), &p, &rational::zero());
                    v.push(gamma_linearity(n, &lie, (&rational::int(2), &p), (&rational::int(-1), &q), &grid)?);
                    if lie.dim() == 4 {
                        v.push(gamma_pullback(n, &FiniteLieAlgebra::sl2(), &LieHom::sl2_into_gl2(), &p, &grid)?);
                    }
                }
                Ok(prefixed(&prefix, v))
            }));
        }
        {
            let (lie, grid, prefix) = (lie.clone(), grid.clone(), prefix.clone());
            out.push(task(format!("{prefix}.differentials"), move || {
                // the nested differentials are the costliest evaluators here
                let (arity, limit) = match (cfg.level, n) {
                    (Level::Quick, 1) => (3, 100),
                    (Level::Quick, _) => (2, 30),
                    (Level::Standard, _) => (3, 100),
                    (Level::Full, _) => (3, 300),
                };
                let small = GridConfig { limit: grid.limit.min(limit), samples: grid.samples.min(10), ..grid };
                Ok(prefixed(&prefix, vec![differential_square(n, &lie, &small, arity)?]))
            }));
        }
        out.push(task(format!("{prefix}.linfty"), move || {
            let p = build_p_phi(&lie, n + 1)?;
            Ok(prefixed(&prefix, linfty_extension(n, &lie, &p, &grid, samples)?.checks))
        }));
    }
    out
}

fn cyclic_tasks<'a>(cfg: &'a SuiteConfig) -> Vec<Task<'a>> {
    let dims = cfg.dims(&[1, 2]);
    let base = |n: usize| match (cfg.level, n) {
        (Level::Quick, 1) => GridConfig { weight_bound: 3, pole_bound: 3, ..GridConfig::quick(1) },
        (_, 1) => GridConfig { weight_bound: 4, pole_bound: 4, ..GridConfig::quick(1) },
        (Level::Quick, _) => {
            GridConfig { weight_bound: 1, pole_bound: 2, limit: 60, samples: 0, ..GridConfig::quick(n) }
        }
        (Level::Standard, _) => GridConfig { weight_bound: 1, pole_bound: 2, limit: 150, ..GridConfig::quick(n) },
        (Level::Full, _) => GridConfig { weight_bound: 1, pole_bound: 2, limit: 600, ..GridConfig::quick(n) },
    };
    let mut out = Vec::new();
    for &n in &dims {
        let grid = cfg.grid(base(n), n);
        let g2 = grid.clone();
        out.push(task(format!("cyclic.n{n}.residue_cochain"), move || {
            Ok(prefixed(&format!("cyclic.n{n}"), verify_residue_cocycle(n, &g2)?.checks))
        }));
        let ranks: &[usize] = match (n, cfg.level) {
            (1, Level::Full) => &[2, 3],
            (1, _) => &[2],
            (2, _) => &[1],
            _ => &[],
        };
        for &r in ranks {
            let grid = grid.clone();
            let grid = if n == 2 { GridConfig { limit: grid.limit.min(150), ..grid } } else { grid };
            out.push(task(format!("cyclic.n{n}.gl{r}.loday"), move || {
                Ok(prefixed(&format!("cyclic.n{n}.gl{r}"), vec![compare_gamma_theta(n, r, &grid)?]))
            }));
        }
    }
    out
}

/// Runs one suite (or all of them) and assembles the report.
///
/// An exhausted residue escalation surfaces as `Error::Unresolved` and a bad
/// configuration as `Error::Config`; any other error inside a task is recorded
/// as a failed check carrying the error text.
pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let run = || {
        let solver = ResidueSolver::new(cfg.escalation_cap);
        let names: Vec<SuiteName> = if name == SuiteName::All { SuiteName::ALL.to_vec() } else { vec![name] };
        let mut tasks = Vec::new();
        for s in names {
            tasks.extend(match s {
                SuiteName::Cohomology => cohomology_tasks(cfg),
                SuiteName::Residue => residue_tasks(cfg, &solver),
                SuiteName::Spectrum => spectrum_tasks(cfg),
                SuiteName::Cocycle => cocycle_tasks(cfg),
                SuiteName::Cyclic => cyclic_tasks(cfg),
                SuiteName::All => unreachable!(),
            });
        }
        let results: Vec<(String, Result<Vec<CheckOutcome>>, u64)> = tasks
            .into_par_iter()
            .map(|t| {
                let start = Instant::now();
                let r = (t.job)();
                (t.label, r, start.elapsed().as_millis() as u64)
            })
            .collect();
        let mut records = Vec::new();
        for (label, r, millis) in results {
            match r {
                Ok(outcomes) => records.extend(outcomes.iter().map(|o| CheckRecord::from_outcome(o, millis))),
                Err(e @ (Error::Unresolved { .. } | Error::Config(_))) => return Err(e),
                Err(e) => {
                    let mut o = CheckOutcome::new(label.clone(), false).with_inputs(&[label]);
                    o.record(false, || format!("error: {e}"));
                    records.push(CheckRecord::from_outcome(&o, millis));
                }
            }
        }
        let mut echo = serde_json::to_value(cfg).expect("config serializes");
        echo["suite"] = serde_json::Value::String(name.to_string());
        Ok(VerificationReport::new(&name.to_string(), echo, cfg.seed, records))
    };
    match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {j} workers: {e}")))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_levels_parse() {
        assert_eq!("cyclic".parse::<SuiteName>().unwrap(), SuiteName::Cyclic);
        assert!(matches!("bogus".parse::<SuiteName>(), Err(Error::Config(_))));
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
    }

    #[test]
    fn bad_config_is_rejected() {
        let cfg = SuiteConfig { n: Some(7), ..SuiteConfig::level(Level::Quick) };
        assert!(matches!(run_suite(SuiteName::Cohomology, &cfg), Err(Error::Config(_))));
        let cfg = SuiteConfig { jobs: Some(0), ..SuiteConfig::level(Level::Quick) };
        assert!(matches!(run_suite(SuiteName::Cohomology, &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn small_cohomology_run() {
        let cfg = SuiteConfig { n: Some(2), weight_box: Some(1), ..SuiteConfig::level(Level::Quick) };
        let r = run_suite(SuiteName::Cohomology, &cfg).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 2);
        let serial = run_suite(SuiteName::Cohomology, &SuiteConfig { jobs: Some(1), ..cfg }).unwrap();
        assert_eq!(serial.without_timing(), r.without_timing());
    }

    #[test]
    fn tiny_escalation_cap_is_unresolved() {
        let cfg = SuiteConfig { n: Some(2), escalation_cap: Some(0), ..SuiteConfig::level(Level::Quick) };
        assert!(matches!(run_suite(SuiteName::Residue, &cfg), Err(Error::Unresolved { .. })));
    }
}

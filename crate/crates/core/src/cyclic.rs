//! Hochschild and cyclic chains over `Mat_r(A)` with graded slots.
//!
//! Every slot is a matrix unit times a homogeneous form, `E_ij ⊗ a`; plain
//! forms are the `r = 1` case. Signs are the unshifted Koszul ones:
//! `t(a_0 ⊗ ⋯ ⊗ a_k) = (−1)^{k + |a_k|(|a_0| + ⋯ + |a_{k−1}|)} a_k ⊗ a_0 ⊗ ⋯ ⊗ a_{k−1}`
//! and `b = Σ_{i<k} (−1)^i d_i + (−1)^k d_k`, where `d_k` moves `a_k` to the
//! front (with its Koszul sign) before multiplying.
//!
//! Cyclic coinvariants are compared through the norm `N = 1 + t + ⋯ + t^k`:
//! over ℚ, `[x] = [y]` in the coinvariants iff `N x = N y`.

use std::collections::HashMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::checks::{run_parallel, CheckOutcome};
use crate::error::{Error, Result};
use crate::forms::{Form, WedgeKey};
use crate::grid::describe_tuple;
use crate::lie::checks::GridConfig;
use crate::lie::cochain::{koszul_sign, Cochain, GammaCochain};
use crate::lie::{build_p_phi, Current, FiniteLieAlgebra};
use crate::poly::Monomial;
use crate::rational::{self, Rational};
use crate::residue::DelTupleResidue;

/// `E_{row,col} ⊗ form`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub row: usize,
    pub col: usize,
    pub form: Form,
}

impl Slot {
    pub fn plain(form: Form) -> Self {
        Slot { row: 0, col: 0, form }
    }

    pub fn degree(&self) -> Result<usize> {
        self.form.degree().ok_or_else(|| Error::Bookkeeping(format!("inhomogeneous slot {}", self.form)))
    }

    pub fn mul(&self, other: &Slot) -> Result<Option<Slot>> {
        if self.col != other.row {
            return Ok(None);
        }
        let f = self.form.wedge(&other.form)?;
        Ok((!f.is_zero()).then_some(Slot { row: self.row, col: other.col, form: f }))
    }
}

impl std::fmt::Display for Slot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E{}{}·[{}]", self.row + 1, self.col + 1, self.form)
    }
}

type Coordinate = (usize, usize, WedgeKey, Monomial);

/// A finite combination of elementary tensors of a common length.
#[derive(Clone, Debug, Default)]
pub struct ChainTensor {
    terms: Vec<(Vec<Slot>, Rational)>,
}

impl ChainTensor {
    pub fn zero() -> Self {
        ChainTensor::default()
    }

    pub fn elementary(slots: Vec<Slot>) -> Self {
        ChainTensor { terms: vec![(slots, rational::one())] }
    }

    pub fn from_forms(forms: &[Form]) -> Self {
        Self::elementary(forms.iter().cloned().map(Slot::plain).collect())
    }

    pub fn terms(&self) -> &[(Vec<Slot>, Rational)] {
        &self.terms
    }

    pub fn push(&mut self, slots: Vec<Slot>, c: Rational) {
        if !c.is_zero() && slots.iter().all(|s| !s.form.is_zero()) {
            self.terms.push((slots, c));
        }
    }

    pub fn add(&self, other: &ChainTensor) -> ChainTensor {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, c: &Rational) -> ChainTensor {
        let mut out = ChainTensor::zero();
        for (s, a) in &self.terms {
            out.push(s.clone(), a * c);
        }
        out
    }

    pub fn sub(&self, other: &ChainTensor) -> ChainTensor {
        self.add(&other.scale(&-rational::one()))
    }

    /// Coordinates in the basis of elementary tensors of matrix units,
    /// wedge keys and numerator monomials over a common `s^K` per slot.
    pub fn coordinates(&self) -> HashMap<Vec<Coordinate>, Rational> {
        let len = self.terms.first().map_or(0, |(s, _)| s.len());
        let mut poles = vec![0u32; len];
        for (slots, _) in &self.terms {
            for (k, s) in slots.iter().enumerate() {
                poles[k] = poles[k].max(s.form.max_pole());
            }
        }
        let mut out: HashMap<Vec<Coordinate>, Rational> = HashMap::new();
        for (slots, c) in &self.terms {
            let mut acc: Vec<(Vec<Coordinate>, Rational)> = vec![(vec![], c.clone())];
            for (k, s) in slots.iter().enumerate() {
                let mut expanded = Vec::new();
                for (key, coeff) in s.form.terms() {
                    let num = coeff.numerator_at(poles[k]).expect("pole below slot maximum");
                    for (m, a) in num.terms() {
                        expanded.push(((s.row, s.col, *key, m.clone()), a.clone()));
                    }
                }
                acc = acc
                    .into_iter()
                    .flat_map(|(v, c)| {
                        expanded.iter().map(move |(e, a)| {
                            let mut w = v.clone();
                            w.push(e.clone());
                            (w, &c * a)
                        })
                    })
                    .collect();
            }
            for (v, a) in acc {
                let e = out.entry(v).or_insert_with(rational::zero);
                *e += a;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.coordinates().is_empty()
    }

    pub fn equals(&self, other: &ChainTensor) -> bool {
        self.sub(other).is_zero()
    }
}

impl std::fmt::Display for ChainTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let slots: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                format!("({c})·{}", slots.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn degrees(slots: &[Slot]) -> Result<Vec<i64>> {
    slots.iter().map(|s| s.degree().map(|d| d as i64)).collect()
}

/// `(−1)^{k + |a_k|(|a_0| + ⋯ + |a_{k−1}|)}` and the rotated slots.
fn rotate(slots: &[Slot]) -> Result<(Rational, Vec<Slot>)> {
    let k = slots.len() - 1;
    let deg = degrees(slots)?;
    let mut order = vec![k];
    order.extend(0..k);
    let sign = koszul_sign(&deg, &order) * rational::sign(k);
    Ok((sign, order.iter().map(|&i| slots[i].clone()).collect()))
}

pub fn cyclic_t(t: &ChainTensor) -> Result<ChainTensor> {
    let mut out = ChainTensor::zero();
    for (slots, c) in &t.terms {
        let (sign, rotated) = rotate(slots)?;
        out.push(rotated, c * sign);
    }
    Ok(out)
}

/// `1 + t + ⋯ + t^k`.
pub fn cyclic_norm(t: &ChainTensor) -> Result<ChainTensor> {
    let len = t.terms.first().map_or(0, |(s, _)| s.len());
    let mut out = t.clone();
    let mut cur = t.clone();
    for _ in 1..len {
        cur = cyclic_t(&cur)?;
        out = out.add(&cur);
    }
    Ok(out)
}

/// Equality in the cyclic coinvariants.
pub fn coinvariant_equal(x: &ChainTensor, y: &ChainTensor) -> Result<bool> {
    Ok(cyclic_norm(&x.sub(y))?.is_zero())
}

pub fn hochschild_b(t: &ChainTensor) -> Result<ChainTensor> {
    let mut out = ChainTensor::zero();
    for (slots, c) in &t.terms {
        let k = slots.len() - 1;
        if k == 0 {
            continue;
        }
        for i in 0..k {
            if let Some(prod) = slots[i].mul(&slots[i + 1])? {
                let mut s = slots[..i].to_vec();
                s.push(prod);
                s.extend_from_slice(&slots[i + 2..]);
                out.push(s, c * rational::sign(i));
            }
        }
        // last face: a_k a_0 ⊗ a_1 ⊗ ⋯ ⊗ a_{k−1}
        let (sign, rotated) = rotate(slots)?;
        if let Some(prod) = rotated[0].mul(&rotated[1])? {
            let mut s = vec![prod];
            s.extend_from_slice(&rotated[2..]);
            // `rotate` already carries (−1)^k
            out.push(s, c * sign);
        }
    }
    Ok(out)
}

/// `Σ_i (−1)^{|a_0| + ⋯ + |a_{i−1}|} a_0 ⊗ ⋯ ⊗ ∂̄a_i ⊗ ⋯`.
pub fn dbar_chain(t: &ChainTensor) -> Result<ChainTensor> {
    let mut out = ChainTensor::zero();
    for (slots, c) in &t.terms {
        let deg = degrees(slots)?;
        let mut before = 0usize;
        for i in 0..slots.len() {
            let mut s = slots.to_vec();
            s[i].form = slots[i].form.dbar();
            out.push(s, c * rational::sign(before));
            before += deg[i] as usize;
        }
    }
    Ok(out)
}

/// `tr(u_0 a_0 ⊗ ⋯ ⊗ u_k a_k) = tr(u_0 ⋯ u_k) a_0 ⊗ ⋯ ⊗ a_k`.
pub fn matrix_trace_chain(t: &ChainTensor) -> ChainTensor {
    let mut out = ChainTensor::zero();
    for (slots, c) in &t.terms {
        // a product of matrix units is E_{row_0, col_k} when the indices chain
        let chained = slots.windows(2).all(|w| w[0].col == w[1].row);
        if chained && slots.first().map(|s| s.row) == slots.last().map(|s| s.col) {
            out.push(slots.iter().map(|s| Slot::plain(s.form.clone())).collect(), c.clone());
        }
    }
    out
}

/// The corner embedding `a ↦ E_11 a` on every slot.
pub fn corner_embedding(t: &ChainTensor) -> ChainTensor {
    let mut out = ChainTensor::zero();
    for (slots, c) in &t.terms {
        out.push(slots.iter().map(|s| Slot { row: 0, col: 0, form: s.form.clone() }).collect(), c.clone());
    }
    out
}

/// The Koszul-sign twist relating the residue cochain to the literal
/// `Res(f_0 ∂f_1 ⋯ ∂f_n)`: `(−1)^{Σ_i (n−i)|f_i|}`.
pub fn residue_twist(degrees: &[usize]) -> Rational {
    let n = degrees.len() - 1;
    rational::sign(degrees.iter().enumerate().map(|(i, d)| (n - i) * d).sum())
}

/// `r(f_0, …, f_n) = (−1)^{Σ (n−i)|f_i|} Res(f_0 ∂f_1 ⋯ ∂f_n)`, zero off bidegree `(n, n−1)`.
pub struct ResidueCochain {
    residues: DelTupleResidue,
}

impl Default for ResidueCochain {
    fn default() -> Self {
        Self::new()
    }
}

impl ResidueCochain {
    pub fn new() -> Self {
        ResidueCochain { residues: DelTupleResidue::new() }
    }

    pub fn eval(&self, forms: &[Form]) -> Result<Rational> {
        if forms.iter().any(|f| f.is_zero()) {
            return Ok(rational::zero());
        }
        let mut deg = Vec::with_capacity(forms.len());
        for f in forms {
            deg.push(f.degree().ok_or_else(|| Error::Bookkeeping(format!("inhomogeneous slot {f}")))?);
        }
        let v = self.residues.evaluate(forms)?;
        Ok(if v.is_zero() { v } else { residue_twist(&deg) * v })
    }

    /// Extended linearly to chains of plain slots.
    pub fn apply(&self, t: &ChainTensor) -> Result<Rational> {
        let mut total = rational::zero();
        for (slots, c) in &t.terms {
            if slots.iter().any(|s| s.row != 0 || s.col != 0) {
                return Err(Error::Bookkeeping("residue cochain applied to a matrix-valued chain".into()));
            }
            let forms: Vec<Form> = slots.iter().map(|s| s.form.clone()).collect();
            total += c * self.eval(&forms)?;
        }
        Ok(total)
    }
}

pub fn residue_cochain(forms: &[Form]) -> Result<Rational> {
    ResidueCochain::new().eval(forms)
}

/// Slots of a `gl_r` current: basis index `a·r + b` is `E_ab`.
pub fn current_slots(x: &Current, r: usize) -> Vec<Slot> {
    x.terms().map(|(k, f)| Slot { row: k / r, col: k % r, form: f.clone() }).collect()
}

/// `θ(a_0 ∧ ⋯ ∧ a_n) = Σ_{σ ∈ S_n} sgn(σ) ε_Koszul · a_0 ⊗ a_{σ(1)} ⊗ ⋯ ⊗ a_{σ(n)}`,
/// expanded multilinearly; each argument is a homogeneous sum of slots.
pub fn loday_theta(args: &[Vec<Slot>]) -> Result<ChainTensor> {
    let mut out = ChainTensor::zero();
    if args.is_empty() || args.iter().any(|a| a.is_empty()) {
        return Ok(out);
    }
    let deg: Vec<i64> = args.iter().map(|a| degrees(a).map(|d| d[0])).collect::<Result<_>>()?;
    let n = args.len() - 1;
    for perm in crate::lie::invariant::all_permutations(n) {
        let mut order = vec![0];
        order.extend(perm.iter().map(|&p| p + 1));
        let sign = permutation_sign(&perm) * koszul_sign(&deg, &order);
        // expand the product of slot sums
        let mut acc: Vec<Vec<Slot>> = vec![vec![]];
        for &i in &order {
            acc = acc
                .into_iter()
                .flat_map(|v| {
                    args[i].iter().map(move |s| {
                        let mut w = v.clone();
                        w.push(s.clone());
                        w
                    })
                })
                .collect();
        }
        for slots in acc {
            out.push(slots, sign.clone());
        }
    }
    Ok(out)
}

fn permutation_sign(p: &[usize]) -> Rational {
    let inversions =
        (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    rational::sign(inversions)
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicReport {
    pub n: usize,
    pub checks: Vec<CheckOutcome>,
}

impl CyclicReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

fn form_tuples(
    cfg: &GridConfig,
    n: usize,
    m: usize,
    degree_sum: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Vec<Form>>, bool)> {
    let grid = cfg.grid(n)?;
    let set = grid.current_tuples(1, m, degree_sum, &vec![0; n], cfg.limit, rng);
    let tuples = set.tuples.iter().map(|t| t.iter().map(|c| c.terms().next().unwrap().1.clone()).collect()).collect();
    Ok((tuples, set.exhaustive))
}

fn describe_forms(t: &[Form]) -> String {
    let parts: Vec<String> = t.iter().map(|f| format!("[{f}]")).collect();
    format!("({})", parts.join(", "))
}

/// Cyclic symmetry, `r ∘ b = 0`, `r ∘ ∂̄ = 0` and `gl_n`-invariance of the residue
/// cochain on bounded tuple grids.
pub fn verify_residue_cocycle(n: usize, cfg: &GridConfig) -> Result<CyclicReport> {
    let r = ResidueCochain::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc1c);
    let mut checks = Vec::new();

    let (ts, ex) = form_tuples(cfg, n, n + 1, n - 1, &mut rng)?;
    checks.push(run_parallel("residue_cochain.cyclic_symmetry", ex, &ts, |t| {
        let lhs = r.eval(t)?;
        let mut rotated = t[1..].to_vec();
        rotated.push(t[0].clone());
        let tail: usize = t[1..].iter().map(|f| f.degree().unwrap_or(0)).sum();
        let sign = rational::sign(n + t[0].degree().unwrap_or(0) * tail);
        let rhs = sign * r.eval(&rotated)?;
        Ok((lhs != rhs).then(|| format!("{}: {lhs} vs rotated {rhs}", describe_forms(t))))
    })?);

    let (ts, ex) = form_tuples(cfg, n, n + 2, n - 1, &mut rng)?;
    checks.push(run_parallel("residue_cochain.hochschild", ex, &ts, |t| {
        let v = r.apply(&hochschild_b(&ChainTensor::from_forms(t))?)?;
        Ok((!v.is_zero()).then(|| format!("r(b{}) = {v}", describe_forms(t))))
    })?);

    let (ts, ex) = if n >= 2 { form_tuples(cfg, n, n + 1, n - 2, &mut rng)? } else { (vec![], true) };
    checks.push(run_parallel("residue_cochain.dbar", ex, &ts, |t| {
        let v = r.apply(&dbar_chain(&ChainTensor::from_forms(t))?)?;
        Ok((!v.is_zero()).then(|| format!("r(∂̄{}) = {v}", describe_forms(t))))
    })?);

    let mut items = Vec::new();
    let mut inv_ex = true;
    let grid = cfg.grid(n)?;
    for i in 1..=n {
        for j in 1..=n {
            let mut w = vec![0i64; n];
            w[i - 1] -= 1;
            w[j - 1] += 1;
            let set = grid.current_tuples(1, n + 1, n - 1, &w, cfg.limit, &mut rng);
            inv_ex &= set.exhaustive;
            for t in set.tuples {
                let forms: Vec<Form> = t.iter().map(|c| c.terms().next().unwrap().1.clone()).collect();
                items.push((i, j, forms));
            }
        }
    }
    checks.push(run_parallel("residue_cochain.gl_invariance", inv_ex, &items, |(i, j, t)| {
        let mut total = rational::zero();
        for k in 0..t.len() {
            let mut s = t.clone();
            s[k] = t[k].gl_action(*i, *j)?;
            total += r.eval(&s)?;
        }
        Ok((!total.is_zero()).then(|| format!("E{i}{j} on {} gives {total}", describe_forms(t))))
    })?);

    Ok(CyclicReport { n, checks })
}

/// `(−1)^{Σ_i (n−i)|ξ_i|}` from `dec(sξ_0 ⊗ ⋯ ⊗ sξ_n)`.
pub fn decalage_sign(deg: &[usize]) -> Rational {
    residue_twist(deg)
}

/// `n!·γ_{P_tr}(sξ_0, …, sξ_n) = dec · r(tr(θ(ξ_0 ∧ ⋯ ∧ ξ_n)))` on `gl_r` tuples.
pub fn compare_gamma_theta(n: usize, r: usize, cfg: &GridConfig) -> Result<CheckOutcome> {
    let lie = FiniteLieAlgebra::gl(r);
    let gamma = GammaCochain::new(n, build_p_phi(&lie, n + 1)?)?;
    let res = ResidueCochain::new();
    let grid = cfg.grid(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7e7a);
    let set = grid.current_tuples(lie.dim(), n + 1, n - 1, &vec![0; n], cfg.limit, &mut rng);
    let mut tuples = set.tuples;
    tuples.extend(grid.mixed_tuples(lie.dim(), n + 1, n - 1, &vec![0; n], cfg.samples, &mut rng));
    let nfact = rational::factorial(n as u32);
    run_parallel("gamma.loday_comparison", set.exhaustive, &tuples, |t| {
        let lhs = &nfact * gamma.eval(t)?;
        let args: Vec<Vec<Slot>> = t.iter().map(|x| current_slots(x, r)).collect();
        let deg: Vec<usize> = t.iter().map(|x| x.degree().unwrap_or(0)).collect();
        let rhs = decalage_sign(&deg) * res.apply(&matrix_trace_chain(&loday_theta(&args)?))?;
        Ok((lhs != rhs).then(|| format!("{}: n!·γ = {lhs}, r∘tr∘θ = {rhs}", describe_tuple(t))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::mb_form;
    use crate::grid::laurent;
    use crate::poly::SparsePolynomial;

    fn z(n: usize, i: usize) -> Form {
        Form::polynomial(SparsePolynomial::z(n, i))
    }

    #[test]
    fn two_slot_b_is_commutator() {
        let a = Slot { row: 0, col: 1, form: laurent(1) };
        let b = Slot { row: 1, col: 0, form: laurent(2) };
        let got = hochschild_b(&ChainTensor::elementary(vec![a.clone(), b.clone()])).unwrap();
        let mut expected = ChainTensor::elementary(vec![a.mul(&b).unwrap().unwrap()]);
        expected.push(vec![b.mul(&a).unwrap().unwrap()], -rational::one());
        assert!(got.equals(&expected));
        // central degree-0 unit: b(1 ⊗ a) = a − a
        let one = Slot::plain(Form::one(1));
        let c = Slot::plain(laurent(3));
        assert!(hochschild_b(&ChainTensor::elementary(vec![one, c])).unwrap().is_zero());
    }

    #[test]
    fn b_squared_and_rotation_order() {
        let n = 2;
        let slots = vec![
            Slot { row: 0, col: 1, form: mb_form(n) },
            Slot { row: 1, col: 1, form: z(n, 0) },
            Slot { row: 1, col: 0, form: mb_form(n).partial_z(2).unwrap() },
            Slot { row: 0, col: 0, form: z(n, 1) },
        ];
        let t = ChainTensor::elementary(slots.clone());
        assert!(hochschild_b(&hochschild_b(&t).unwrap()).unwrap().is_zero());
        let mut cur = t.clone();
        for _ in 0..4 {
            cur = cyclic_t(&cur).unwrap();
        }
        assert!(cur.equals(&t));
        // (1 − t) then the norm vanishes
        let diff = t.sub(&cyclic_t(&t).unwrap());
        assert!(cyclic_norm(&diff).unwrap().is_zero());
    }

    #[test]
    fn trace_examples() {
        let a = laurent(1);
        let b = laurent(-1);
        let t = ChainTensor::elementary(vec![
            Slot { row: 0, col: 1, form: a.clone() },
            Slot { row: 1, col: 0, form: b.clone() },
        ]);
        assert!(matrix_trace_chain(&t).equals(&ChainTensor::from_forms(&[a.clone(), b.clone()])));
        let t = ChainTensor::elementary(vec![
            Slot { row: 0, col: 0, form: a.clone() },
            Slot { row: 1, col: 1, form: b.clone() },
        ]);
        assert!(matrix_trace_chain(&t).is_zero());
        let t = ChainTensor::from_forms(&[a, b]);
        assert!(matrix_trace_chain(&corner_embedding(&t)).equals(&t));
    }

    #[test]
    fn theta_examples() {
        let a: Vec<Slot> = (0..3).map(|k| Slot::plain(laurent(k))).collect();
        let th = loday_theta(&[vec![a[0].clone()], vec![a[1].clone()]]).unwrap();
        assert!(th.equals(&ChainTensor::elementary(vec![a[0].clone(), a[1].clone()])));
        let th = loday_theta(&[vec![a[0].clone()], vec![a[1].clone()], vec![a[2].clone()]]).unwrap();
        let expected = ChainTensor::elementary(a.clone()).sub(&ChainTensor::elementary(vec![
            a[0].clone(),
            a[2].clone(),
            a[1].clone(),
        ]));
        assert!(th.equals(&expected));
        assert!(loday_theta(&[vec![], vec![a[1].clone()]]).unwrap().is_zero());
    }

    /// Degree-0 entries: θ(d_CE(a_0 ∧ a_1 ∧ a_2)) = b θ(a_0 ∧ a_1 ∧ a_2) in the coinvariants,
    /// with `d_CE(a_0 ∧ ⋯ ∧ a_k) = Σ_{i<j} (−1)^{i+j+1} [a_i, a_j] ∧ (rest)`.
    #[test]
    fn theta_is_a_chain_map_on_ungraded_entries() {
        let args = [
            Slot { row: 0, col: 1, form: laurent(1) },
            Slot { row: 1, col: 0, form: laurent(-2) },
            Slot { row: 0, col: 0, form: laurent(1) },
        ];
        let commutator = |a: &Slot, b: &Slot| -> Vec<(Slot, Rational)> {
            let mut v = vec![];
            if let Some(p) = a.mul(b).unwrap() {
                v.push((p, rational::one()));
            }
            if let Some(p) = b.mul(a).unwrap() {
                v.push((p, -rational::one()));
            }
            v
        };
        let mut lhs = ChainTensor::zero();
        for i in 0..3 {
            for j in i + 1..3 {
                let k = 3 - i - j;
                for (s, c) in commutator(&args[i], &args[j]) {
                    let th = loday_theta(&[vec![s], vec![args[k].clone()]]).unwrap();
                    lhs = lhs.add(&th.scale(&(c * rational::sign(i + j + 1))));
                }
            }
        }
        let rhs =
            hochschild_b(&loday_theta(&args.iter().map(|a| vec![a.clone()]).collect::<Vec<_>>()).unwrap()).unwrap();
        assert!(!rhs.is_zero());
        assert!(coinvariant_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn residue_cochain_examples() {
        for a in -4..=4 {
            for b in -4..=4 {
                let expected = if a + b == 0 { rational::int(b) } else { rational::zero() };
                assert_eq!(residue_cochain(&[laurent(a), laurent(b)]).unwrap(), expected);
            }
        }
        let n = 2;
        let v = residue_cochain(&[Form::one(n), z(n, 0), z(n, 1)]).unwrap();
        assert!(v.is_zero());
        let x = mb_form(n);
        assert!(residue_cochain(&[x.clone(), x.clone(), x]).unwrap().is_zero());
    }

    #[test]
    fn residue_cocycle_quick() {
        let r =
            verify_residue_cocycle(1, &GridConfig { weight_bound: 4, pole_bound: 4, ..GridConfig::quick(1) }).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        let cfg = GridConfig { weight_bound: 1, pole_bound: 2, limit: 150, ..GridConfig::quick(2) };
        let r = verify_residue_cocycle(2, &cfg).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{}", c.summary());
        }
    }

    #[test]
    fn loday_comparison_quick() {
        let o = compare_gamma_theta(1, 2, &GridConfig::quick(1)).unwrap();
        assert!(o.passed(), "{}", o.summary());
        let o = compare_gamma_theta(2, 1, &GridConfig { limit: 150, ..GridConfig::quick(2) }).unwrap();
        assert!(o.passed(), "{}", o.summary());
    }
}

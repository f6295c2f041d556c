//! Bounded grids of basis forms and the argument tuples drawn from them.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::weight_box;
use crate::error::Result;
use crate::forms::{basis, Form};
use crate::lie::Current;
use crate::rational;

/// Valid `(0, q)`-forms at pole level `r` spanning every weight in a box.
#[derive(Clone, Debug)]
pub struct FormGrid {
    pub n: usize,
    pub weight_bound: i64,
    forms: Vec<Form>,
    weights: Vec<Vec<i64>>,
    degrees: Vec<usize>,
}

impl FormGrid {
    pub fn new(n: usize, weight_bound: i64, pole_bound: u32, max_degree: usize) -> Result<Self> {
        let mut grid = FormGrid { n, weight_bound, forms: vec![], weights: vec![], degrees: vec![] };
        for q in 0..=max_degree.min(n.saturating_sub(1)) {
            for w in weight_box(n, weight_bound) {
                for f in basis(n, 0, q, &w, pole_bound)? {
                    grid.forms.push(f);
                    grid.weights.push(w.clone());
                    grid.degrees.push(q);
                }
            }
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn form(&self, i: usize) -> &Form {
        &self.forms[i]
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Sorted index multisets of size `m` with the given degree and weight sums.
    pub fn multisets(&self, m: usize, degree_sum: usize, weight_sum: &[i64]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        let mut w = vec![0i64; self.n];
        self.extend(m, degree_sum, weight_sum, 0, 0, &mut w, &mut cur, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        m: usize,
        degree_sum: usize,
        weight_sum: &[i64],
        start: usize,
        deg: usize,
        w: &mut Vec<i64>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let left = (m - cur.len()) as i64;
        if deg > degree_sum || w.iter().zip(weight_sum).any(|(a, b)| (b - a).abs() > left * self.weight_bound) {
            return;
        }
        if left == 0 {
            if deg == degree_sum {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..self.forms.len() {
            cur.push(i);
            w.iter_mut().zip(&self.weights[i]).for_each(|(a, b)| *a += b);
            self.extend(m, degree_sum, weight_sum, i, deg + self.degrees[i], w, cur, out);
            w.iter_mut().zip(&self.weights[i]).for_each(|(a, b)| *a -= b);
            cur.pop();
        }
    }

    /// Tuples of basis currents `e_k ⊗ f`: every labelling of every multiset
    /// when there are at most `limit`, otherwise `limit` seeded samples in
    /// shuffled slot order.
    pub fn current_tuples(
        &self,
        lie_dim: usize,
        m: usize,
        degree_sum: usize,
        weight_sum: &[i64],
        limit: usize,
        rng: &mut ChaCha8Rng,
    ) -> TupleSet {
        let sets = self.multisets(m, degree_sum, weight_sum);
        let per = lie_dim.checked_pow(m as u32).unwrap_or(usize::MAX);
        let candidates = sets.len().saturating_mul(per);
        let mut tuples = Vec::new();
        if candidates <= limit {
            for s in &sets {
                for mut code in 0..per {
                    let mut t = Vec::with_capacity(m);
                    for &i in s {
                        t.push(Current::basis(code % lie_dim, self.forms[i].clone()));
                        code /= lie_dim;
                    }
                    tuples.push(t);
                }
            }
        } else {
            for _ in 0..limit {
                let mut s = sets[rng.random_range(0..sets.len())].clone();
                s.shuffle(rng);
                tuples.push(
                    s.iter().map(|&i| Current::basis(rng.random_range(0..lie_dim), self.forms[i].clone())).collect(),
                );
            }
        }
        TupleSet { tuples, exhaustive: candidates <= limit, candidates }
    }

    /// Seeded tuples whose slots are small integer combinations of two
    /// labels on the same form, exercising multilinearity.
    pub fn mixed_tuples(
        &self,
        lie_dim: usize,
        m: usize,
        degree_sum: usize,
        weight_sum: &[i64],
        count: usize,
        rng: &mut ChaCha8Rng,
    ) -> Vec<Vec<Current>> {
        let sets = self.multisets(m, degree_sum, weight_sum);
        if sets.is_empty() {
            return vec![];
        }
        let coeff = |rng: &mut ChaCha8Rng| rational::int([-3, -2, -1, 1, 2, 3][rng.random_range(0..6)]);
        (0..count)
            .map(|_| {
                let mut s = sets[rng.random_range(0..sets.len())].clone();
                s.shuffle(rng);
                s.iter()
                    .map(|&i| {
                        let f = &self.forms[i];
                        let a = Current::basis(rng.random_range(0..lie_dim), f.scale(&coeff(rng)));
                        let b = Current::basis(rng.random_range(0..lie_dim), f.scale(&coeff(rng)));
                        a.add(&b).expect("same dimension")
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TupleSet {
    pub tuples: Vec<Vec<Current>>,
    pub exhaustive: bool,
    /// Size of the full bounded grid.
    pub candidates: usize,
}

/// The one-variable Laurent monomial `z^a`, with `z^{−k} = z*^k / s^k`.
pub fn laurent(a: i64) -> Form {
    use crate::forms::LocalizedCoefficient;
    use crate::poly::SparsePolynomial;
    if a >= 0 {
        Form::polynomial(SparsePolynomial::z(1, 0).pow(a as u32))
    } else {
        Form::function(LocalizedCoefficient::new(SparsePolynomial::zs(1, 0).pow((-a) as u32), (-a) as u32))
    }
}

pub fn describe_tuple(t: &[Current]) -> String {
    let parts: Vec<String> = t.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

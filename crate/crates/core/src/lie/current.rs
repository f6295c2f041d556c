use std::collections::BTreeMap;
use std::fmt;

use super::algebra::FiniteLieAlgebra;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::rational::{self, Rational};

/// An element `Σ_k e_k ⊗ ω_k` of `g ⊗ A`, collected by Lie basis index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Current {
    n: usize,
    terms: BTreeMap<usize, Form>,
}

impl Current {
    pub fn zero(n: usize) -> Self {
        Current { n, terms: BTreeMap::new() }
    }

    /// `e_k ⊗ ω`.
    pub fn basis(k: usize, form: Form) -> Self {
        let mut c = Self::zero(form.dim());
        if !form.is_zero() {
            c.terms.insert(k, form);
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &Form)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, k: usize, f: &Form) -> Result<()> {
        let sum = match self.terms.get(&k) {
            Some(old) => old.add(f)?,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Current) -> Result<Current> {
        let mut out = self.clone();
        for (k, f) in &other.terms {
            out.add_term(*k, f)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Current {
        let mut out = Current::zero(self.n);
        for (k, f) in &self.terms {
            let g = f.scale(c);
            if !g.is_zero() {
                out.terms.insert(*k, g);
            }
        }
        out
    }

    /// Form degree, when every component has the same one.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.values().map(|f| f.degree());
        let first = it.next()??;
        it.all(|d| d == Some(first)).then_some(first)
    }

    /// Degree after suspension: `deg − 1`.
    pub fn shifted_degree(&self) -> Option<i64> {
        self.degree().map(|d| d as i64 - 1)
    }

    pub fn map_forms(&self, f: impl Fn(&Form) -> Result<Form>) -> Result<Current> {
        let mut out = Current::zero(self.n);
        for (k, g) in &self.terms {
            out.add_term(*k, &f(g)?)?;
        }
        Ok(out)
    }

    pub fn dbar(&self) -> Current {
        self.map_forms(|f| Ok(f.dbar())).expect("same dimension")
    }

    /// The `gl_n` action on the form factors (1-based indices).
    pub fn gl_action(&self, i: usize, j: usize) -> Result<Current> {
        self.map_forms(|f| f.gl_action(i, j))
    }
}

impl fmt::Debug for Current {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Current {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, g)| format!("e{}⊗[{}]", k, g)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[x ⊗ a, y ⊗ b] = [x, y] ⊗ (a ∧ b)`, extended bilinearly.
pub fn current_bracket(lie: &FiniteLieAlgebra, a: &Current, b: &Current) -> Result<Current> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    let mut out = Current::zero(a.n);
    for (i, f) in &a.terms {
        for (j, g) in &b.terms {
            let br = lie.bracket(*i, *j);
            if br.is_empty() {
                continue;
            }
            let w = f.wedge(g)?;
            if w.is_zero() {
                continue;
            }
            for (k, c) in br {
                out.add_term(*k, &w.scale(c))?;
            }
        }
    }
    Ok(out)
}

/// Unary bracket on the suspension: `Q_1(sξ) = −s∂̄ξ`.
pub fn shifted_unary(xi: &Current) -> Current {
    xi.dbar().scale(&-rational::one())
}

/// Binary bracket on the suspension: `Q_2(sx, sy) = (−1)^{|x|} s[x, y]`.
pub fn shifted_binary(lie: &FiniteLieAlgebra, x: &Current, y: &Current) -> Result<Current> {
    if x.is_zero() || y.is_zero() {
        return Ok(Current::zero(x.n));
    }
    let d = x.degree().ok_or_else(|| Error::Bookkeeping("inhomogeneous current in bracket".into()))?;
    Ok(current_bracket(lie, x, y)?.scale(&rational::sign(d)))
}

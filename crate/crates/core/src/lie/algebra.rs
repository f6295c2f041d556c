use num_traits::Zero;

use super::current::Current;
use crate::error::{Error, Result};
use crate::linalg::{sparse_add_scaled, sparse_solve, RationalMatrix, SparseVec};
use crate::rational::{self, Rational};

/// A finite-dimensional Lie algebra given by structure constants, optionally
/// with a faithful matrix realization.
#[derive(Clone, Debug)]
pub struct FiniteLieAlgebra {
    pub name: String,
    pub basis: Vec<String>,
    /// `brackets[i][j] = [e_i, e_j]` in the basis.
    brackets: Vec<Vec<SparseVec>>,
    realization: Option<Vec<RationalMatrix>>,
}

fn matmul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.ncols() {
                let y = b.get(k, j);
                if !y.is_zero() {
                    let v = out.get(i, j) + x * y;
                    out.set(i, j, v);
                }
            }
        }
    }
    out
}

pub(crate) fn matrix_product(ms: &[&RationalMatrix]) -> RationalMatrix {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = matmul(&acc, m);
    }
    acc
}

pub(crate) fn trace(m: &RationalMatrix) -> Rational {
    (0..m.nrows()).map(|i| m.get(i, i).clone()).sum()
}

fn flatten(m: &RationalMatrix) -> SparseVec {
    let c = m.ncols();
    let mut v = SparseVec::new();
    for i in 0..m.nrows() {
        for j in 0..c {
            if !m.get(i, j).is_zero() {
                v.insert(i * c + j, m.get(i, j).clone());
            }
        }
    }
    v
}

impl FiniteLieAlgebra {
    /// Builds the structure constants from a linearly independent set of matrices
    /// closed under commutators.
    pub fn from_matrices(name: &str, basis: Vec<String>, mats: Vec<RationalMatrix>) -> Result<Self> {
        let flat: Vec<SparseVec> = mats.iter().map(flatten).collect();
        let mut brackets = Vec::with_capacity(mats.len());
        for a in &mats {
            let mut row = Vec::with_capacity(mats.len());
            for b in &mats {
                let mut c = flatten(&matmul(a, b));
                sparse_add_scaled(&mut c, &flatten(&matmul(b, a)), &-rational::one());
                let coords = sparse_solve(&flat, &c)
                    .ok_or_else(|| Error::Bookkeeping(format!("{name}: matrices not closed under commutator")))?;
                row.push(coords);
            }
            brackets.push(row);
        }
        Ok(FiniteLieAlgebra { name: name.into(), basis, brackets, realization: Some(mats) })
    }

    pub fn from_structure_constants(name: &str, basis: Vec<String>, brackets: Vec<Vec<SparseVec>>) -> Self {
        FiniteLieAlgebra { name: name.into(), basis, brackets, realization: None }
    }

    /// `gl_r` with basis `E_ab` at index `a·r + b`.
    pub fn gl(r: usize) -> Self {
        let mut names = Vec::new();
        let mut mats = Vec::new();
        for a in 0..r {
            for b in 0..r {
                names.push(format!("E{}{}", a + 1, b + 1));
                let mut m = RationalMatrix::zeros(r, r);
                m.set(a, b, rational::one());
                mats.push(m);
            }
        }
        Self::from_matrices(&format!("gl{r}"), names, mats).expect("gl_r is closed")
    }

    /// `sl_2` with basis `e, f, h`.
    pub fn sl2() -> Self {
        let e = RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        let f = RationalMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        let h = RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        Self::from_matrices("sl2", vec!["e".into(), "f".into(), "h".into()], vec![e, f, h]).expect("sl2 is closed")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    pub fn realization(&self) -> Option<&[RationalMatrix]> {
        self.realization.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|row| row.iter().all(|v| v.is_empty()))
    }

    /// Bracket of two vectors in the basis.
    pub fn bracket_vectors(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                sparse_add_scaled(&mut out, &self.brackets[*i][*j], &(a * b));
            }
        }
        out
    }

    /// Antisymmetry, Jacobi, and (if present) the realization being a homomorphism.
    pub fn verify(&self) -> Result<()> {
        let d = self.dim();
        let unit = |i: usize| SparseVec::from([(i, rational::one())]);
        for i in 0..d {
            for j in 0..d {
                let mut s = self.brackets[i][j].clone();
                sparse_add_scaled(&mut s, &self.brackets[j][i], &rational::one());
                if !s.is_empty() {
                    return Err(Error::Bookkeeping(format!("{}: bracket not antisymmetric at ({i},{j})", self.name)));
                }
                for k in 0..d {
                    let mut jac = self.bracket_vectors(&unit(i), &self.brackets[j][k]);
                    sparse_add_scaled(
                        &mut jac,
                        &self.bracket_vectors(&unit(j), &self.brackets[k][i]),
                        &rational::one(),
                    );
                    sparse_add_scaled(
                        &mut jac,
                        &self.bracket_vectors(&unit(k), &self.brackets[i][j]),
                        &rational::one(),
                    );
                    if !jac.is_empty() {
                        return Err(Error::Bookkeeping(format!("{}: Jacobi fails at ({i},{j},{k})", self.name)));
                    }
                }
            }
        }
        if let Some(ms) = &self.realization {
            for i in 0..d {
                for j in 0..d {
                    let mut lhs = flatten(&matmul(&ms[i], &ms[j]));
                    sparse_add_scaled(&mut lhs, &flatten(&matmul(&ms[j], &ms[i])), &-rational::one());
                    let mut rhs = SparseVec::new();
                    for (k, c) in &self.brackets[i][j] {
                        sparse_add_scaled(&mut rhs, &flatten(&ms[*k]), c);
                    }
                    if lhs != rhs {
                        return Err(Error::Bookkeeping(format!("{}: realization is not a homomorphism", self.name)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A linear map between Lie algebras, given on basis elements.
#[derive(Clone, Debug)]
pub struct LieHom {
    pub images: Vec<SparseVec>,
}

impl LieHom {
    /// The inclusion of `sl_2` into `gl_2` (standard representation).
    pub fn sl2_into_gl2() -> Self {
        let one = rational::one();
        LieHom {
            images: vec![
                SparseVec::from([(1, one.clone())]),
                SparseVec::from([(2, one.clone())]),
                SparseVec::from([(0, one.clone()), (3, -one)]),
            ],
        }
    }

    /// `φ ⊗ id` on currents.
    pub fn apply(&self, x: &Current) -> Result<Current> {
        let mut out = Current::zero(x.dim());
        for (k, f) in x.terms() {
            for (j, c) in &self.images[*k] {
                out.add_term(*j, &f.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Checks `φ([x, y]) = [φx, φy]` on basis pairs.
    pub fn is_homomorphism(&self, src: &FiniteLieAlgebra, dst: &FiniteLieAlgebra) -> bool {
        let map = |v: &SparseVec| {
            let mut out = SparseVec::new();
            for (k, c) in v {
                sparse_add_scaled(&mut out, &self.images[*k], c);
            }
            out
        };
        (0..src.dim()).all(|i| {
            (0..src.dim()).all(|j| map(src.bracket(i, j)) == dst.bracket_vectors(&self.images[i], &self.images[j]))
        })
    }
}

//! Exact computations in the Jouanolou model of the punctured formal disk.

pub mod checks;
pub mod cohomology;
pub mod cyclic;
pub mod error;
pub mod forms;
pub mod grid;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod residue;
pub mod spectrum;
pub mod workbench;

pub use error::{Error, Result};
pub use forms::{mb_form, Form, LocalizedCoefficient, WedgeKey, WeightVector};
pub use linalg::{kernel_basis, RationalMatrix};
pub use poly::{exact_divide_by_quadric, Division, Monomial, SparsePolynomial};
pub use rational::Rational;

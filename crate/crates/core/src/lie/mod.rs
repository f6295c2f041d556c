//! Derived current algebras `g ⊗ A`, invariant polynomials, the cocycle
//! `γ_P` and its central extension.

pub mod algebra;
pub mod checks;
pub mod cochain;
pub mod current;
pub mod invariant;
pub mod linfty;

pub use algebra::{FiniteLieAlgebra, LieHom};
pub use cochain::{ce_differentials, Cochain, GammaCochain, RandomCochain};
pub use current::{current_bracket, Current};
pub use invariant::{build_p_phi, InvariantPolynomial};

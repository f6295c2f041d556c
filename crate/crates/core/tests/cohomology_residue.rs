use jouanolou::cohomology::{cohomology_cell, cohomology_table, expected_dim};
use jouanolou::forms::{basis, LocalizedCoefficient};
use jouanolou::grid::laurent;
use jouanolou::rational::{self, Rational};
use jouanolou::residue::{
    multipole_check, normalized_top_form, pairing_rank, residue, residue_certified, stokes_check, ResidueSolver,
};
use jouanolou::{mb_form, Error, Form, Monomial, SparsePolynomial};
use proptest::prelude::*;

fn dz(n: usize, i: usize) -> Form {
    Form::dz(n, i).unwrap()
}

#[test]
fn cohomology_examples() {
    assert_eq!(cohomology_cell(2, 0, &[1, 2], None).unwrap().dim, 1);
    assert_eq!(cohomology_cell(2, 1, &[-1, -3], None).unwrap().dim, 1);
    assert_eq!(cohomology_cell(2, 1, &[0, -2], None).unwrap().dim, 0);
    assert_eq!(cohomology_cell(3, 1, &[-1, -1, -1], None).unwrap().dim, 0);
}

#[test]
fn one_variable_cohomology_is_laurent_polynomials() {
    for a in -4..=4 {
        let cell = cohomology_cell(1, 0, &[a], None).unwrap();
        assert!(cell.matches() && cell.dim == 1, "{cell:?}");
        assert!(laurent(a).dbar().is_zero());
    }
}

#[test]
fn small_tables_are_monotone_and_match() {
    let t = cohomology_table(2, 2, None).unwrap();
    assert_eq!(t.cells.len(), 25 * 2);
    assert!(t.cells.iter().all(|c| c.monotone()));
    assert_eq!(t.mismatches().count(), 0);
    assert_eq!(expected_dim(3, 2, &[-1, -2, -1]), 1);
    assert_eq!(expected_dim(3, 1, &[-1, -2, -1]), 0);
}

#[test]
fn residue_examples() {
    for n in 1..=3 {
        assert_eq!(residue(&normalized_top_form(n)).unwrap(), rational::one());
    }
    let n = 2;
    let f = &SparsePolynomial::one(n) + &SparsePolynomial::z(n, 0).multiply(&SparsePolynomial::z(n, 1)).unwrap();
    let omega = normalized_top_form(n).mul_function(&LocalizedCoefficient::polynomial(f));
    assert_eq!(residue(&omega).unwrap(), rational::one());
    // n = 1: z^{-1} dz
    assert_eq!(residue(&laurent(-1).wedge(&dz(1, 1)).unwrap()).unwrap(), rational::one());
    assert_eq!(residue(&laurent(-2).wedge(&dz(1, 1)).unwrap()).unwrap(), rational::zero());
    // off bidegree
    assert_eq!(residue(&mb_form(2)).unwrap(), rational::zero());
}

#[test]
fn certificates_verify_and_c_is_unique() {
    let solver = ResidueSolver::new(None);
    for n in 1..=3 {
        let omega = normalized_top_form(n).scale(&rational::frac(-7, 3));
        let (c, cert) = solver.residue_certified(&omega).unwrap();
        assert_eq!(c, rational::frac(-7, 3));
        assert!(cert.verify());
        for b in cert.witness_level..cert.witness_level + 2 {
            assert!(!solver.identity_holds_at(&omega, &(&c + rational::one()), b).unwrap());
        }
    }
}

#[test]
fn escalation_cap_is_loud() {
    let err = ResidueSolver::new(Some(1)).residue(&normalized_top_form(3)).unwrap_err();
    assert_eq!(err, Error::Unresolved { bound: 1 });
}

#[test]
fn stokes_examples() {
    assert!(stokes_check(&Form::zero(2), &Form::zero(2)).unwrap());
    for a in basis(2, 1, 1, &[0, 0], 3).unwrap() {
        assert_eq!(residue(&a.del()).unwrap(), rational::zero(), "{a}");
    }
    for b in basis(3, 3, 1, &[0, 0, 0], 2).unwrap() {
        assert_eq!(residue(&b.dbar()).unwrap(), rational::zero(), "{b}");
    }
}

#[test]
fn pairing_examples() {
    for a in -3..=3 {
        assert_eq!(pairing_rank(1, 0, 0, &[a], 4).unwrap(), 1, "a = {a}");
    }
    assert_eq!(pairing_rank(2, 2, 1, &[-1, -1], 3).unwrap(), 1);
    assert_eq!(pairing_rank(2, 2, 1, &[-1, -1], 2).unwrap(), 0);
}

#[test]
fn multipole_examples() {
    assert!(multipole_check(2, &[-1, -1]).unwrap().passed);
    assert!(multipole_check(2, &[-2, -1]).unwrap().passed);
    let c = multipole_check(1, &[-3]).unwrap();
    assert!(c.passed);
    assert_eq!(rational::abs(&c.scale), rational::frac(1, 2));
    assert!(multipole_check(3, &[-1, -2, -1]).unwrap().passed);
}

fn z_polynomial(n: usize, terms: &[(Vec<u16>, i64)]) -> SparsePolynomial {
    SparsePolynomial::from_terms(n, terms.iter().map(|(e, c)| (Monomial::new(e, &vec![0; n]), rational::int(*c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn martinelli_bochner_formula(terms in prop::collection::vec((prop::collection::vec(0u16..=2, 2), -5i64..=5), 0..5)) {
        let f = z_polynomial(2, &terms);
        let omega = normalized_top_form(2).mul_function(&LocalizedCoefficient::polynomial(f.clone()));
        prop_assert_eq!(residue(&omega).unwrap(), f.constant_term());
    }

    #[test]
    fn residue_is_gl_invariant(w in prop::collection::vec(-1i64..=1, 2), coeffs in prop::collection::vec(-3i64..=3, 1..5),
                               i in 1usize..=2, j in 1usize..=2) {
        let mut omega = Form::zero(2);
        for (b, c) in basis(2, 2, 1, &w, 2).unwrap().iter().zip(coeffs.iter().cycle()) {
            omega = omega.add(&b.scale(&rational::int(*c))).unwrap();
        }
        prop_assert_eq!(residue(&omega.gl_action(i, j).unwrap()).unwrap(), rational::zero());
        if w != [0, 0] {
            prop_assert_eq!(residue(&omega).unwrap(), rational::zero());
        }
    }

    #[test]
    fn residue_is_linear(a in -4i64..=4, b in -4i64..=4) {
        let x = normalized_top_form(2);
        let y = basis(2, 2, 1, &[0, 0], 2).unwrap().into_iter().next().unwrap();
        let lhs = residue(&x.scale(&rational::int(a)).add(&y.scale(&rational::int(b))).unwrap()).unwrap();
        let rhs: Rational = rational::int(a) * residue(&x).unwrap() + rational::int(b) * residue(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn certified_residues_verify(k in 0usize..6) {
        let forms = basis(2, 2, 1, &[0, 0], 2).unwrap();
        let omega = &forms[k % forms.len()];
        let (_, cert) = residue_certified(omega).unwrap();
        prop_assert!(cert.verify());
    }
}

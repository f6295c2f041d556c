use jouanolou::cyclic::{
    coinvariant_equal, compare_gamma_theta, corner_embedding, cyclic_norm, cyclic_t, hochschild_b, loday_theta,
    matrix_trace_chain, residue_cochain, verify_residue_cocycle, ChainTensor, ResidueCochain, Slot,
};
use jouanolou::grid::laurent;
use jouanolou::lie::checks::GridConfig;
use jouanolou::rational;
use jouanolou::{mb_form, Form, SparsePolynomial};
use proptest::prelude::*;

fn slot(r: usize) -> impl Strategy<Value = Slot> {
    (0..r, 0..r, -3i64..=3).prop_map(|(row, col, a)| Slot { row, col, form: laurent(a) })
}

fn tensor(r: usize, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ChainTensor> {
    prop::collection::vec(
        (prop::collection::vec(slot(r), len.clone()), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])),
        1..4,
    )
    .prop_map(move |terms| {
        let len = terms[0].0.len();
        let mut t = ChainTensor::zero();
        for (mut s, c) in terms {
            s.resize(len, s[0].clone());
            t.push(s, rational::int(c));
        }
        t
    })
}

/// Slots of mixed form degree in two variables.
fn graded_slots() -> Vec<Slot> {
    let n = 2;
    let m = mb_form(n);
    vec![
        Slot { row: 0, col: 1, form: m.clone() },
        Slot { row: 1, col: 1, form: Form::polynomial(SparsePolynomial::z(n, 0)) },
        Slot { row: 1, col: 0, form: m.partial_z(1).unwrap() },
        Slot { row: 0, col: 0, form: Form::polynomial(SparsePolynomial::zs(n, 1)) },
        Slot { row: 0, col: 0, form: Form::dz(n, 2).unwrap() },
    ]
}

#[test]
fn one_variable_residue_pairing() {
    for a in -5..=5 {
        for b in -5..=5 {
            let expected = if a + b == 0 { rational::int(b) } else { rational::zero() };
            assert_eq!(residue_cochain(&[laurent(a), laurent(b)]).unwrap(), expected, "({a}, {b})");
        }
    }
    // constants pair to zero
    assert_eq!(residue_cochain(&[laurent(0), laurent(0)]).unwrap(), rational::zero());
}

#[test]
fn graded_chains_square_to_zero() {
    let s = graded_slots();
    for len in 2..=s.len() {
        let t = ChainTensor::elementary(s[..len].to_vec());
        assert!(hochschild_b(&hochschild_b(&t).unwrap()).unwrap().is_zero(), "length {len}");
        let mut cur = t.clone();
        for _ in 0..len {
            cur = cyclic_t(&cur).unwrap();
        }
        assert!(cur.equals(&t), "t^{len} ≠ 1");
    }
}

#[test]
fn residue_cochain_is_a_cyclic_cocycle() {
    let cfg = GridConfig { weight_bound: 3, pole_bound: 3, ..GridConfig::quick(1) };
    let report = verify_residue_cocycle(1, &cfg).unwrap();
    assert!(report.passed(), "{:?}", report.checks);
    let cfg = GridConfig { weight_bound: 1, pole_bound: 2, limit: 60, ..GridConfig::quick(2) };
    let report = verify_residue_cocycle(2, &cfg).unwrap();
    assert_eq!(report.checks.len(), 4);
    assert!(report.passed(), "{:?}", report.checks);
}

#[test]
fn loday_comparison_small() {
    let o = compare_gamma_theta(1, 2, &GridConfig::quick(1)).unwrap();
    assert!(o.passed() && o.tested > 0, "{}", o.summary());
    let o = compare_gamma_theta(2, 1, &GridConfig { limit: 60, ..GridConfig::quick(2) }).unwrap();
    assert!(o.passed() && o.tested > 0, "{}", o.summary());
}

#[test]
fn theta_of_two_is_the_tensor() {
    let a = Slot { row: 0, col: 1, form: laurent(2) };
    let b = Slot { row: 1, col: 0, form: laurent(-2) };
    let th = loday_theta(&[vec![a.clone()], vec![b.clone()]]).unwrap();
    assert!(th.equals(&ChainTensor::elementary(vec![a, b])));
    // tr(E12 z² ⊗ E21 z⁻²) = z² ⊗ z⁻², and r of that is −2
    let r = ResidueCochain::new().apply(&matrix_trace_chain(&th)).unwrap();
    assert_eq!(r, rational::int(-2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn b_squares_to_zero(t in tensor(2, 2..=4)) {
        prop_assert!(hochschild_b(&hochschild_b(&t).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rotation_has_order_length(t in tensor(2, 1..=4)) {
        let len = t.terms()[0].0.len();
        let mut cur = t.clone();
        for _ in 0..len {
            cur = cyclic_t(&cur).unwrap();
        }
        prop_assert!(cur.equals(&t));
        // t x and x agree in the coinvariants
        prop_assert!(coinvariant_equal(&cyclic_t(&t).unwrap(), &t).unwrap());
        prop_assert!(cyclic_norm(&t.sub(&cyclic_t(&t).unwrap())).unwrap().is_zero());
    }

    #[test]
    fn trace_is_a_chain_map(t in tensor(2, 2..=4)) {
        let lhs = matrix_trace_chain(&hochschild_b(&t).unwrap());
        let rhs = hochschild_b(&matrix_trace_chain(&t)).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn corner_then_trace_is_identity(t in tensor(1, 1..=3)) {
        prop_assert!(matrix_trace_chain(&corner_embedding(&t)).equals(&t));
    }

    #[test]
    fn residue_kills_boundaries_and_rotations(t in tensor(1, 2..=3)) {
        let r = ResidueCochain::new();
        let len = t.terms()[0].0.len();
        if len == 3 {
            prop_assert_eq!(r.apply(&hochschild_b(&t).unwrap()).unwrap(), rational::zero());
        } else {
            prop_assert_eq!(r.apply(&cyclic_t(&t).unwrap()).unwrap(), r.apply(&t).unwrap());
        }
    }
}

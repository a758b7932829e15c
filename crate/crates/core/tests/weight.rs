use chowkit::graded::{fit_hilbert_polynomial, IdealPieces, Window};
use chowkit::io::fixtures;
use chowkit::weight::{gieseker_weight, min_weight_basis, weight_polynomial, OnePS};
use chowkit::Error;
use proptest::prelude::*;

/// Conic weight via the parametrization (1 : t : t²).
fn conic_oracle(lambda: &[i64], m: i64) -> i64 {
    (0..=2 * m)
        .map(|k| {
            (0..=m)
                .filter_map(|a2| {
                    let a1 = k - 2 * a2;
                    let a0 = m - a1 - a2;
                    (a1 >= 0 && a0 >= 0).then(|| a0 * lambda[0] + a1 * lambda[1] + a2 * lambda[2])
                })
                .min()
                .unwrap()
        })
        .sum()
}

#[test]
fn weights_of_a_subgroup_and_its_inverse_sum_to_at_most_zero() {
    for f in fixtures::all() {
        let p = f.pieces();
        for l in f.lambdas() {
            for m in 1..5 {
                let a = gieseker_weight(&p, &l, m, None).unwrap();
                let b = gieseker_weight(&p, &l.inverse(), m, None).unwrap();
                assert!(a + b <= 0, "{} {:?} m = {m}: {a} + {b}", f.name, l.weights());
            }
        }
    }
}

#[test]
fn conic_admits_two_negative_weights() {
    let p = fixtures::CONIC.pieces();
    let l = OnePS::new(vec![1, 1, -2], false).unwrap();
    assert!(gieseker_weight(&p, &l, 2, None).unwrap() < 0);
    assert!(gieseker_weight(&p, &l.inverse(), 2, None).unwrap() < 0);
}

#[test]
fn permuting_variables_and_weights_together_preserves_weights() {
    let f = fixtures::TWISTED_CUBIC;
    let perm = [3, 2, 1, 0];
    let a = f.pieces();
    let b = IdealPieces::new(f.ideal().permute_vars(&perm).unwrap());
    for l in f.lambdas() {
        for m in 1..4 {
            let wa = gieseker_weight(&a, &l, m, None).unwrap();
            let wb = gieseker_weight(&b, &l.permute(&perm), m, None).unwrap();
            assert_eq!(wa, wb, "{:?} m = {m}", l.weights());
        }
    }
}

#[test]
fn weights_scale_linearly() {
    let p = fixtures::QUADRIC_SURFACE.pieces();
    for l in fixtures::QUADRIC_SURFACE.lambdas() {
        for m in 1..4 {
            let w = gieseker_weight(&p, &l, m, None).unwrap();
            assert_eq!(gieseker_weight(&p, &l.scaled(3), m, None).unwrap(), 3 * w);
        }
    }
}

#[test]
fn trivial_subgroup_has_weight_zero() {
    let p = fixtures::TWISTED_CUBIC.pieces();
    for m in 0..4 {
        assert_eq!(min_weight_basis(&p.piece(m), &OnePS::trivial(4)).unwrap().0, 0);
    }
}

#[test]
fn non_special_linear_needs_opt_in() {
    assert!(matches!(OnePS::new(vec![1, 0, 0], false), Err(Error::NotSpecialLinear { .. })));
    assert!(OnePS::new(vec![1, 0, 0], true).is_ok());
}

#[test]
fn weight_polynomial_respects_the_degree_bound() {
    for f in fixtures::all() {
        let p = f.pieces();
        let h = fit_hilbert_polynomial(&p, Window::new(0, f.num_vars as u32 + 4)).unwrap();
        let window = Window::new(h.m_stab.unwrap().max(1) + 2, h.dim as u32 + 4);
        for l in f.lambdas() {
            let w = weight_polynomial(&p, &l, window, &h).unwrap();
            assert!(w.poly.degree().unwrap_or(0) <= h.dim + 1, "{}", f.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn conic_greedy_matches_parametrization(a in -3i64..=3, b in -3i64..=3, m in 1u32..5) {
        let lambda = vec![a, b, -a - b];
        let p = fixtures::CONIC.pieces();
        let l = OnePS::new(lambda.clone(), false).unwrap();
        prop_assert_eq!(gieseker_weight(&p, &l, m, None).unwrap(), conic_oracle(&lambda, m as i64));
    }
}

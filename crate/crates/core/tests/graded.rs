use chowkit::exact::{int, PolyM};
use chowkit::graded::{
    enumerate_monomials, fit_hilbert_polynomial, gotzmann_number, HomogeneousIdeal, IdealPieces, MultiIndex, Window,
};
use chowkit::io::fixtures;
use chowkit::Error;
use proptest::prelude::*;

#[test]
fn fixture_hilbert_polynomials() {
    let expected: [(&str, &[i64], u32); 6] = [
        ("conic", &[1, 2], 0),
        ("twisted_cubic", &[1, 3], 0),
        ("quadric_surface", &[1, 2, 1], 0),
        ("point", &[1], 0),
        ("two_points", &[2], 1),
        ("fat_point", &[3], 1),
    ];
    for (name, poly, m_stab) in expected {
        let f = fixtures::by_name(name).unwrap();
        let h = fit_hilbert_polynomial(&f.pieces(), Window::new(0, f.num_vars as u32 + 4)).unwrap();
        assert_eq!(h.poly, PolyM::from_i64(poly), "{name}");
        assert_eq!(h.m_stab, Some(m_stab), "{name}");
    }
}

#[test]
fn monomial_counts() {
    for m in 0..6u32 {
        assert_eq!(enumerate_monomials(2, m).len() as u32, (m + 1) * (m + 2) / 2);
    }
}

#[test]
fn gotzmann_numbers() {
    let cases: [(&[i64], usize); 5] = [(&[1, 2], 2), (&[1, 3], 4), (&[1, 2, 1], 2), (&[3], 3), (&[1], 1)];
    for (p, g) in cases {
        assert_eq!(gotzmann_number(&PolyM::from_i64(p)).unwrap(), g, "{p:?}");
    }
}

#[test]
fn hilbert_function_is_invariant_under_variable_permutation() {
    let ideal = fixtures::TWISTED_CUBIC.ideal();
    let perm = [2, 0, 3, 1];
    let a = IdealPieces::new(ideal.clone());
    let b = IdealPieces::new(ideal.permute_vars(&perm).unwrap());
    for m in 0..6 {
        assert_eq!(a.hilbert_function(m), b.hilbert_function(m));
    }
}

#[test]
fn short_window_is_rejected() {
    let p = fixtures::QUADRIC_SURFACE.pieces();
    assert!(matches!(fit_hilbert_polynomial(&p, Window::new(0, 3)), Err(Error::WindowTooShort { .. })));
}

#[test]
fn inhomogeneous_generator_is_rejected() {
    assert!(HomogeneousIdeal::parse(3, &["z0^2 - z1"]).is_err());
}

#[test]
fn standard_monomials_of_the_conic_avoid_the_leading_term() {
    let p = fixtures::CONIC.pieces();
    let piece = p.piece(2);
    let std = piece.standard_monomials();
    assert_eq!(std.len(), 5);
    assert!(!std.contains(&MultiIndex::new(vec![1, 0, 1])));
    assert_eq!(piece.reduce_to_quotient(&vec![int(0); 6]).len(), 5);
}

/// Degree-`m` monomials in three variables outside the monomial ideal.
fn outside_monomial_ideal(gens: &[MultiIndex], m: u32) -> usize {
    let mut count = 0;
    for a in 0..=m {
        for b in 0..=m - a {
            let x = [a, b, m - a - b];
            if !gens.iter().any(|g| g.exps().iter().zip(&x).all(|(e, y)| e <= y)) {
                count += 1;
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monomial_ideal_hilbert_function_counts_standard_monomials(
        raw in prop::collection::vec((0u32..3, 0u32..3, 0u32..3), 1..4),
        shift in 0u32..2,
    ) {
        let gens: Vec<MultiIndex> = raw
            .into_iter()
            .map(|(a, b, c)| MultiIndex::new(vec![a + shift + 1, b, c]))
            .collect();
        let d = gens.iter().map(|g| g.degree()).max().unwrap();
        // Pad to a common degree so the generators stay homogeneous.
        let gens: Vec<MultiIndex> = gens
            .into_iter()
            .map(|g| { let k = d - g.degree(); g.mul(&MultiIndex::new(vec![0, 0, k])) })
            .collect();
        let text: Vec<String> = gens
            .iter()
            .map(|g| g.exps().iter().enumerate().map(|(i, e)| format!("z{i}^{e}")).collect::<Vec<_>>().join("*"))
            .collect();
        let refs: Vec<&str> = text.iter().map(String::as_str).collect();
        let pieces = IdealPieces::new(HomogeneousIdeal::parse(3, &refs).unwrap());
        for m in 0..d + 3 {
            prop_assert_eq!(pieces.hilbert_function(m), outside_monomial_ideal(&gens, m));
        }
    }
}

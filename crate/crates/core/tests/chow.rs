use chowkit::exact::{int, rat, PivotStrategy, Rational, RationalSampler};
use chowkit::graded::{fit_hilbert_polynomial, HomogeneousIdeal, IdealPieces, Window};
use chowkit::koszul::{
    build_koszul, chow_eval, chow_interpolate, scaling_exponent, vanishing_order_probe, ChowNormalizer, LinearFormSet,
};
use chowkit::Error;

fn pieces(num_vars: usize, gens: &[&str]) -> IdealPieces {
    IdealPieces::new(HomogeneousIdeal::parse(num_vars, gens).unwrap())
}

fn conic() -> IdealPieces {
    pieces(3, &["z0*z2 - z1^2"])
}

fn twisted_cubic() -> IdealPieces {
    pieces(4, &["z0*z2 - z1^2", "z0*z3 - z1*z2", "z1*z3 - z2^2"])
}

fn cross(a: &[Rational], b: &[Rational]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// `F(w_0 × w_1)` for `F = z0 z2 - z1^2`.
fn conic_oracle(forms: &[Vec<Rational>]) -> Rational {
    let p = cross(&forms[0], &forms[1]);
    &p[0] * &p[2] - &p[1] * &p[1]
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Random form vanishing at `p` (requires `p[0] != 0`).
fn form_through(s: &mut RationalSampler, p: &[Rational]) -> Vec<Rational> {
    let mut f = s.vector(p.len());
    f[0] = int(0);
    f[0] = -dot(&f, p) / &p[0];
    f
}

fn eval(p: &IdealPieces, forms: &LinearFormSet, m: u32) -> Result<Rational, Error> {
    chow_eval(p, forms, m, PivotStrategy::MinIndex).map(|t| t.value)
}

#[test]
fn conic_torsion_is_a_fixed_power_of_the_oracle() {
    let conic = conic();
    let mut s = RationalSampler::new(11, 100);
    let mut constant: Option<Rational> = None;
    for _ in 0..20 {
        let forms = LinearFormSet::random(&mut s, 2, 3);
        let r = eval(&conic, &forms, 2).unwrap() * conic_oracle(forms.forms());
        assert_eq!(constant.get_or_insert(r.clone()), &r);
    }
}

#[test]
fn conic_interpolant_equals_oracle_coefficientwise() {
    let conic = conic();
    let h = fit_hilbert_polynomial(&conic, Window::new(1, 6)).unwrap();
    let out = chow_interpolate(&conic, &h, 2, 5, 100, 20).unwrap();
    assert_eq!(out.exponent, -1);
    assert_eq!(out.held_out, 20);
    // Oracle coefficients of F(w0 × w1) in the monomial basis, read off by
    // evaluating at random points: compare the two polynomials as functions
    // on 30 points after matching the primitive scaling.
    let mut s = RationalSampler::new(99, 50);
    let mut k: Option<Rational> = None;
    for _ in 0..30 {
        let f = s.matrix(2, 3);
        let a = out.poly.eval(&f);
        let b = conic_oracle(&f);
        assert_eq!(a.clone() == int(0), b.clone() == int(0));
        if b != int(0) {
            let r = a / b;
            assert_eq!(k.get_or_insert(r.clone()), &r);
        }
    }
    let k = k.unwrap();
    assert!(k == int(1) || k == int(-1));
    assert_eq!(out.poly.terms.len(), 7);
    assert!(out.poly.terms.values().all(|c| c.is_integer()));
    assert!(out.poly.is_grassmannian_symmetric());
}

#[test]
fn point_and_two_point_are_products_of_evaluations() {
    let point = pieces(3, &["z1", "z2"]);
    let h = fit_hilbert_polynomial(&point, Window::new(0, 5)).unwrap();
    let out = chow_interpolate(&point, &h, 1, 3, 100, 20).unwrap();
    let terms = out.poly.to_terms();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].exps, vec![vec![1, 0, 0]]);
    assert_eq!(terms[0].coeff, int(1));
    assert_eq!(out.exponent, 1);

    let two = pieces(2, &["z0*z1"]);
    let mut s = RationalSampler::new(2, 100);
    for _ in 0..10 {
        let f = LinearFormSet::random(&mut s, 1, 2);
        let w = &f.forms()[0];
        let t = eval(&two, &f, 2).unwrap();
        assert_eq!(t, &w[0] * &w[1]);
    }
}

#[test]
fn pivot_strategies_agree() {
    let mut s = RationalSampler::new(4, 100);
    let fixtures = [(conic(), 2usize, 3usize), (twisted_cubic(), 2, 4), (pieces(3, &["z1", "z2"]), 1, 3)];
    for (p, count, vars) in &fixtures {
        for m in [2, 3] {
            let forms = LinearFormSet::random(&mut s, *count, *vars);
            let a = chow_eval(p, &forms, m, PivotStrategy::MinIndex).unwrap();
            let b = chow_eval(p, &forms, m, PivotStrategy::MaxAbsNumerator).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.value, a.product_of_minors());
        }
    }
}

#[test]
fn normalized_value_is_independent_of_m() {
    let mut s = RationalSampler::new(5, 100);
    for (p, count, vars) in [(conic(), 2usize, 3usize), (twisted_cubic(), 2, 4)] {
        let n2 = ChowNormalizer::seeded(&p, count, 2, 1, 100).unwrap();
        let n3 = ChowNormalizer::with_reference(&p, n2.reference.clone(), 3).unwrap();
        for _ in 0..5 {
            let forms = LinearFormSet::random(&mut s, count, vars);
            let a = n2.normalize(&eval(&p, &forms, 2).unwrap());
            let b = n3.normalize(&eval(&p, &forms, 3).unwrap());
            assert_eq!(a, b);
        }
    }
}

#[test]
fn scaling_one_form_scales_by_a_power_of_rho() {
    let conic = conic();
    let mut s = RationalSampler::new(6, 100);
    let forms = LinearFormSet::random(&mut s, 2, 3);
    let e = scaling_exponent(&conic, &forms, 2, 1).unwrap().unwrap();
    assert_eq!(e.abs(), 2);
    let base = eval(&conic, &forms, 2).unwrap();
    for _ in 0..10 {
        let rho = Rational::from_integer(s.nonzero_integer().into());
        let scaled = eval(&conic, &forms.scale_form(0, &rho), 2).unwrap();
        assert_eq!(scaled, &base * rho.pow(e as i32));
    }
}

#[test]
fn incidence_exactly_when_forms_meet_the_conic() {
    let conic = conic();
    let mut s = RationalSampler::new(7, 30);
    for i in 0..60 {
        let forms = if i % 2 == 0 {
            let t = s.rational();
            let p = vec![int(1), t.clone(), &t * &t];
            LinearFormSet::unchecked(vec![form_through(&mut s, &p), form_through(&mut s, &p)]).unwrap()
        } else {
            LinearFormSet::random(&mut s, 2, 3)
        };
        if forms.matrix().rank() < 2 {
            continue;
        }
        let incident = conic_oracle(forms.forms()) == int(0);
        match eval(&conic, &forms, 2) {
            Ok(_) => assert!(!incident),
            Err(Error::Incidence { .. }) => assert!(incident),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn incidence_exactly_when_form_vanishes_at_the_point() {
    let point = pieces(3, &["z1", "z2"]);
    let mut s = RationalSampler::new(8, 5);
    for _ in 0..50 {
        let forms = LinearFormSet::unchecked(vec![s.vector(3)]).unwrap();
        let incident = forms.forms()[0][0] == int(0);
        assert_eq!(eval(&point, &forms, 2).is_err(), incident);
    }
}

#[test]
fn twisted_cubic_form_vanishes_on_incident_lines() {
    let tc = twisted_cubic();
    let h = fit_hilbert_polynomial(&tc, Window::new(1, 6)).unwrap();
    let out = chow_interpolate(&tc, &h, 2, 5, 100, 20).unwrap();
    assert_eq!(out.poly.degree, 3);
    let mut s = RationalSampler::new(9, 20);
    for _ in 0..20 {
        let t = s.rational();
        let p = vec![int(1), t.clone(), &t * &t, &t * &t * &t];
        let f = vec![form_through(&mut s, &p), form_through(&mut s, &p)];
        assert_eq!(out.poly.eval(&f), int(0));
    }
    let generic = s.matrix(2, 4);
    assert_ne!(out.poly.eval(&generic), int(0));
}

#[test]
fn koszul_squares_to_zero_on_fixtures() {
    let mut s = RationalSampler::new(10, 100);
    for (p, count, vars) in [(conic(), 2usize, 3usize), (twisted_cubic(), 2, 4), (pieces(4, &["z0*z3 - z1*z2"]), 3, 4)] {
        let forms = LinearFormSet::random(&mut s, count, vars);
        let c = build_koszul(&p, 2, &forms, None).unwrap();
        for pair in c.boundaries().windows(2) {
            assert!(pair[0].mul(&pair[1]).unwrap().is_zero());
        }
        assert!(c.is_exact());
    }
}

#[test]
fn conic_pencils() {
    let conic = conic();
    // Transversal: the intersection point (1 - 2t, -t, t) crosses the conic
    // with F = t - 3t^2.
    let a = LinearFormSet::from_i64(&[&[0, 1, 0], &[0, 1, 1]]).unwrap();
    let b = LinearFormSet::from_i64(&[&[1, 2, 3], &[0, 1, 1]]).unwrap();
    let probe = vanishing_order_probe(&conic, &a, &b, 2, 4).unwrap();
    assert_eq!(probe.order.abs(), 1);
    assert!(probe.warning.is_none());
    // Tangent: l_1 = z2 is tangent to the conic at [1:0:0]; F = -t^2.
    let a = LinearFormSet::from_i64(&[&[0, 1, 0], &[0, 0, 1]]).unwrap();
    let b = LinearFormSet::from_i64(&[&[1, 2, 3], &[0, 0, 1]]).unwrap();
    let probe = vanishing_order_probe(&conic, &a, &b, 2, 4).unwrap();
    assert_eq!(probe.order.abs(), 2);
    assert!(probe.warning.as_deref().unwrap().contains("tangent"));
}

#[test]
fn point_pencil_has_simple_zero() {
    let point = pieces(3, &["z1", "z2"]);
    let a = LinearFormSet::from_i64(&[&[0, 1, 0]]).unwrap();
    let b = LinearFormSet::from_i64(&[&[1, 0, 0]]).unwrap();
    let probe = vanishing_order_probe(&point, &a, &b, 2, 1).unwrap();
    assert_eq!(probe.order, 1);
    assert_eq!(probe.function.eval(&rat(1, 2)), Some(rat(1, 2)));
}

use chowkit::cgkm::{ll_weight, refined_cm_weight, solve_q_system, verify_identities, CgkmLedger};
use chowkit::exact::int;
use chowkit::graded::{fit_hilbert_polynomial, HilbertData, MuConvention, Window};
use chowkit::io::fixtures::{self, Fixture};
use chowkit::weight::{weight_polynomial, OnePS};
use chowkit::Error;

fn hilbert(f: &Fixture) -> HilbertData {
    fit_hilbert_polynomial(&f.pieces(), Window::new(0, f.num_vars as u32 + 4)).unwrap()
}

#[test]
fn identities_hold_on_positive_dimensional_fixtures() {
    for f in [fixtures::CONIC, fixtures::TWISTED_CUBIC, fixtures::QUADRIC_SURFACE] {
        let checks = verify_identities(&hilbert(&f)).unwrap();
        assert!(!checks.is_empty());
        for c in checks {
            assert!(c.holds(), "{}: {} l = {:?}: {}", f.name, c.identity, c.l, c.residual);
        }
    }
}

#[test]
fn zero_dimensional_schemes_are_rejected() {
    let h = hilbert(&fixtures::TWO_POINTS);
    assert!(matches!(verify_identities(&h), Err(Error::Precondition(_))));
    assert!(solve_q_system(&hilbert(&fixtures::CONIC), 0).is_ok());
}

#[test]
fn ll_weights_agree_across_routes() {
    for f in [fixtures::TWISTED_CUBIC, fixtures::QUADRIC_SURFACE] {
        let p = f.pieces();
        let h = hilbert(&f);
        let window = Window::new(2, h.dim as u32 + 4);
        for l in f.lambdas() {
            let w = weight_polynomial(&p, &l, window, &h).unwrap();
            for k in 0..=h.dim + 1 {
                assert!(ll_weight(&h, &w, k).unwrap().agrees());
            }
        }
    }
}

#[test]
fn refined_weight_needs_special_linear_subgroup() {
    let f = fixtures::CONIC;
    let p = f.pieces();
    let h = hilbert(&f);
    let l = OnePS::new(vec![1, 0, 0], true).unwrap();
    let w = weight_polynomial(&p, &l, Window::new(2, 5), &h).unwrap();
    assert!(matches!(
        refined_cm_weight(&h, &w, &l, MuConvention::Normalized),
        Err(Error::NotSpecialLinear { .. })
    ));
}

#[test]
fn twisted_cubic_ratio_depends_on_mu_convention_only_through_a_constant() {
    let f = fixtures::TWISTED_CUBIC;
    let p = f.pieces();
    let h = hilbert(&f);
    let window = Window::new(2, 5);
    for l in f.lambdas() {
        let w = weight_polynomial(&p, &l, window, &h).unwrap();
        let n = refined_cm_weight(&h, &w, &l, MuConvention::Normalized).unwrap();
        if let Some(r) = n.ratio {
            assert_eq!(r, int(12));
        }
    }
}

#[test]
fn ledger_builds_with_and_without_a_subgroup() {
    let f = fixtures::CONIC;
    let h = hilbert(&f);
    assert!(CgkmLedger::build(&h, None).is_ok());
    let l = &f.lambdas()[0];
    let w = weight_polynomial(&f.pieces(), l, Window::new(2, 5), &h).unwrap();
    assert!(CgkmLedger::build(&h, Some((l, &w))).is_ok());
}

use chowkit::exact::{int, rat, Rational};
use chowkit::futaki::{futaki_expansion, stability_report, Verdict};
use chowkit::graded::{fit_hilbert_polynomial, HilbertData, IdealPieces, Window};
use chowkit::io::fixtures::{self, Fixture};
use chowkit::weight::{weight_polynomial, OnePS};

fn setup(f: &Fixture) -> (IdealPieces, HilbertData, Window) {
    let p = f.pieces();
    let h = fit_hilbert_polynomial(&p, Window::new(0, f.num_vars as u32 + 4)).unwrap();
    let w = Window::new(h.m_stab.unwrap().max(1) + 1, h.dim as u32 + 4);
    (p, h, w)
}

#[test]
fn conic_expansion_to_third_order() {
    let (p, h, window) = setup(&fixtures::CONIC);
    let l = OnePS::new(vec![1, 1, -2], false).unwrap();
    let w = weight_polynomial(&p, &l, window, &h).unwrap();
    let e = futaki_expansion(&h, &w, 3).unwrap();
    // (1 - m) / (2m + 1) = -1/2 + (3/4) m^{-1} - (3/8) m^{-2} + (3/16) m^{-3}.
    assert_eq!(e.f, vec![rat(-1, 2), rat(3, 4), rat(-3, 8), rat(3, 16)]);
}

#[test]
fn futaki_invariants_are_linear_in_the_subgroup() {
    for f in [fixtures::CONIC, fixtures::TWISTED_CUBIC, fixtures::QUADRIC_SURFACE] {
        let (p, h, window) = setup(&f);
        for l in f.lambdas() {
            let a = futaki_expansion(&h, &weight_polynomial(&p, &l, window, &h).unwrap(), 2).unwrap();
            let b = futaki_expansion(&h, &weight_polynomial(&p, &l.scaled(2), window, &h).unwrap(), 2).unwrap();
            let two: Vec<Rational> = a.f.iter().map(|x| x * int(2)).collect();
            assert_eq!(b.f, two, "{} {:?}", f.name, l.weights());
        }
    }
}

#[test]
fn automorphism_of_the_quadric_has_vanishing_f1() {
    let (p, h, window) = setup(&fixtures::QUADRIC_SURFACE);
    let l = OnePS::new(vec![1, 0, 0, -1], false).unwrap();
    let e = futaki_expansion(&h, &weight_polynomial(&p, &l, window, &h).unwrap(), 1).unwrap();
    assert_eq!(e.f1(), int(0));
}

#[test]
fn conic_report() {
    let (p, h, window) = setup(&fixtures::CONIC);
    let v = stability_report(&p, &h, &fixtures::CONIC.lambdas(), window, 1).unwrap();
    assert_eq!(v.records.len(), 4);
    assert_eq!(v.verdict, Verdict::Destabilized);
    for r in &v.records {
        assert_eq!(r.opposite_convention_df(), -r.f1());
        assert_eq!(r.k_stable, r.f1() < int(0));
    }
    let trivial = stability_report(&p, &h, &[OnePS::trivial(3)], window, 1).unwrap();
    assert_eq!(trivial.verdict, Verdict::Undetermined);
    assert!(trivial.destabilizing.is_empty());
}

#[test]
fn empty_subgroup_list_is_an_input_error() {
    let (p, h, window) = setup(&fixtures::CONIC);
    assert!(stability_report(&p, &h, &[], window, 1).is_err());
}

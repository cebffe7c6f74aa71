use poly_core::{rat, w_deg, Mono, PiecewiseWeight, Poly, PolyError, QPoly, Weight};
use proptest::prelude::*;

fn p(terms: &[(i64, u32, u32)]) -> QPoly {
    Poly::from_terms(terms.iter().map(|&(c, i, j)| (Mono::new(i, j), rat(c, 1))))
}

#[test]
fn weighted_degree_of_monomials() {
    let m = Mono::new(2, 4);
    assert_eq!(w_deg(&m, &Weight::new(3, 1)), 10);
    let pw = PiecewiseWeight { weights: vec![(Weight::new(3, 1), 1), (Weight::STANDARD, 1)], d: 6 };
    assert_eq!(w_deg(&m, &pw), 6);
    assert_eq!(w_deg(&Mono::ONE, &Weight::new(7, 5)), 0);
}

#[test]
fn standard_and_weighted_jets() {
    let f = p(&[(1, 3, 0), (1, 0, 4), (1, 5, 0)]);
    assert_eq!(f.jet(4), p(&[(1, 3, 0), (1, 0, 4)]));
    let g = p(&[(1, 3, 0), (1, 0, 4)]);
    assert_eq!(g.w_jet(&Weight::new(4, 3), 12), g);
    assert!(g.w_jet(&Weight::new(4, 3), -1).is_zero());
}

#[test]
fn saturation_extracts_monomial_factor() {
    let (g, n, m) = p(&[(1, 2, 3), (1, 4, 2)]).saturate().unwrap();
    assert_eq!((g.to_string(), n, m), ("y+x^2".to_string(), 2, 2));
    let f = p(&[(1, 3, 0), (1, 0, 4)]);
    assert_eq!(f.saturate().unwrap(), (f.clone(), 0, 0));
    let (g, n, m) = p(&[(4, 4, 2), (1, 3, 3), (1, 2, 4)]).saturate().unwrap();
    assert_eq!((g, n, m), (p(&[(4, 2, 0), (1, 1, 1), (1, 0, 2)]), 2, 2));
    assert_eq!(QPoly::zero().saturate().unwrap_err(), PolyError::ZeroSaturation);
}

#[test]
fn shear_removes_mixed_terms() {
    // (x+y)^3 + y^5 under x -> x - y
    let f = p(&[(1, 1, 0), (1, 0, 1)]).pow(3).add(&p(&[(1, 0, 5)]));
    let g = f.substitute(&p(&[(1, 1, 0), (-1, 0, 1)]), &QPoly::y()).unwrap();
    assert_eq!(g, p(&[(1, 3, 0), (1, 0, 5)]));
    assert_eq!(f.substitute(&QPoly::x(), &QPoly::y()).unwrap(), f);
}

#[test]
fn non_automorphisms_are_rejected() {
    let f = p(&[(1, 3, 0)]);
    assert!(matches!(f.substitute(&p(&[(1, 1, 0), (1, 0, 0)]), &QPoly::y()), Err(PolyError::NotAutomorphism(_))));
    assert!(matches!(f.substitute(&QPoly::x(), &QPoly::x()), Err(PolyError::NotAutomorphism(_))));
    assert!(matches!(f.substitute(&p(&[(1, 2, 0)]), &QPoly::y()), Err(PolyError::NotAutomorphism(_))));
}

#[test]
fn rendering_is_ascending_degree_with_signs() {
    let f = p(&[(1, 4, 2), (1, 2, 4), (1, 0, 10), (1, 13, 0)]);
    assert_eq!(f.to_string(), "x^4*y^2+x^2*y^4+y^10+x^13");
    let g = Poly::from_terms([(Mono::new(1, 0), rat(-1, 3)), (Mono::new(0, 2), rat(5, 1)), (Mono::ONE, rat(-2, 1))]);
    assert_eq!(g.to_string(), "-2-1/3*x+5*y^2");
    assert_eq!(QPoly::zero().to_string(), "0");
}

#[test]
fn truncated_substitution_equals_jet_of_substitution() {
    let f = p(&[(4, 2, 4), (1, 3, 3), (1, 4, 2), (5, 10, 0), (1, 0, 13)]);
    let ix = p(&[(1, 1, 0), (1, 0, 2), (1, 2, 0), (1, 1, 1), (1, 2, 1), (1, 1, 3)]);
    let iy = p(&[(1, 0, 1), (1, 0, 2), (2, 2, 0), (1, 1, 1), (1, 2, 1), (1, 1, 2), (1, 1, 4)]);
    let full = f.substitute(&ix, &iy).unwrap();
    assert_eq!(f.substitute_truncated(&ix, &iy, 9).unwrap(), full.jet(9));
}

fn small_poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-5i64..5, 0u32..4, 0u32..4), 0..6).prop_map(|t| p(&t))
}

fn germ_image() -> impl Strategy<Value = (QPoly, QPoly)> {
    (small_poly(), small_poly(), -3i64..3).prop_map(|(a, b, c)| {
        let hx = a.filter(|m| m.degree() >= 2);
        let hy = b.filter(|m| m.degree() >= 2);
        (QPoly::x().add(&p(&[(c, 0, 1)])).add(&hx), QPoly::y().add(&hy))
    })
}

proptest! {
    #[test]
    fn substitution_is_a_ring_morphism(f in small_poly(), g in small_poly(), (ix, iy) in germ_image()) {
        let s = |h: &QPoly| h.substitute(&ix, &iy).unwrap();
        prop_assert_eq!(s(&f.mul(&g)), s(&f).mul(&s(&g)));
        prop_assert_eq!(s(&f.add(&g)), s(&f).add(&s(&g)));
    }

    #[test]
    fn saturation_leaves_no_monomial_factor(f in small_poly()) {
        prop_assume!(!f.is_zero());
        let (g, n, m) = f.saturate().unwrap();
        prop_assert_eq!(g.monomial_content(), (0, 0));
        prop_assert_eq!(g.mul(&QPoly::mono(n, m)), f);
    }

    #[test]
    fn weighted_jet_is_idempotent(f in small_poly(), wx in 1u32..5, wy in 1u32..5, j in -1i64..20) {
        let w = Weight::new(wx, wy);
        let once = f.w_jet(&w, j);
        prop_assert_eq!(once.w_jet(&w, j), once);
    }
}

use newton_geometry::{
    classify_monomial, facet_jet, is_convenient, modality_lattice, newton_number, newton_polygon, piecewise_weight,
    GeometryError, Position,
};
use poly_core::{rat, Mono, Poly, QPoly, Weight};
use proptest::prelude::*;

fn p(terms: &[(i64, u32, u32)]) -> QPoly {
    Poly::from_terms(terms.iter().map(|&(c, i, j)| (Mono::new(i, j), rat(c, 1))))
}

fn classified() -> QPoly {
    p(&[(4, 4, 2), (1, 3, 3), (1, 2, 4), (1, 0, 10), (1, 13, 0), (3, 5, 5)])
}

#[test]
fn two_point_hull() {
    let poly = newton_polygon(&p(&[(1, 3, 0), (1, 0, 4)])).unwrap();
    assert_eq!(poly.vertices, vec![Mono::new(0, 4), Mono::new(3, 0)]);
    assert_eq!(poly.normals(), vec![Weight::new(4, 3)]);
}

#[test]
fn classified_polygon_of_the_worked_example() {
    let poly = newton_polygon(&classified()).unwrap();
    assert_eq!(
        poly.to_string(),
        "vertices: [0,10], [2,4], [4,2], [13,0]; facets: [[0,10], [2,4]], [[2,4], [4,2]], [[4,2], [13,0]]; \
         normals: [3,1], [1,1], [2,9]"
    );
    let pw = piecewise_weight(&poly).unwrap();
    assert_eq!(pw.d, 390);
    assert_eq!(pw.weights.iter().map(|(_, l)| *l).collect::<Vec<_>>(), vec![39, 65, 15]);
    assert_eq!(poly.twice_area().unwrap(), 58);
    assert_eq!(newton_number(&classified()).unwrap(), 36);
    assert_eq!(modality_lattice(&poly).unwrap().count, 6);
    assert_eq!(classify_monomial(&Mono::new(3, 3), &poly).unwrap(), Position::On);
}

#[test]
fn convenience() {
    assert!(is_convenient(&p(&[(1, 3, 0), (1, 0, 4)])));
    assert!(!is_convenient(&p(&[(1, 2, 1), (1, 0, 3)])));
    assert!(is_convenient(&p(&[(1, 2, 1), (1, 0, 3), (1, 6, 0)])));
    assert_eq!(newton_number(&p(&[(1, 2, 1), (1, 0, 3)])).unwrap_err(), GeometryError::NotConvenient);
}

#[test]
fn single_facet_weights() {
    let poly = newton_polygon(&p(&[(1, 3, 0), (1, 0, 4)])).unwrap();
    let pw = piecewise_weight(&poly).unwrap();
    assert_eq!((pw.d, pw.weights[0].1), (12, 1));
    // x^4 + x^2*y + y^4 ... facets (0,4)-(2,1) weight (3,2) deg 8 and (2,1)-(4,0) weight (1,2) deg 4
    let two = newton_polygon(&p(&[(1, 0, 3), (1, 1, 1), (1, 3, 0)])).unwrap();
    let pw = piecewise_weight(&two).unwrap();
    assert_eq!(pw.weights.iter().map(|(_, l)| *l).collect::<Vec<_>>(), vec![1, 1]);
}

#[test]
fn facet_jets() {
    let f = p(&[(1, 3, 0), (1, 0, 4), (1, 2, 3)]);
    let poly = newton_polygon(&f).unwrap();
    assert_eq!(facet_jet(&f, &poly.facets[0]).unwrap(), p(&[(1, 3, 0), (1, 0, 4)]));
    let g = classified();
    let mid = newton_polygon(&g).unwrap().facets[1];
    assert_eq!(facet_jet(&g, &mid).unwrap(), p(&[(4, 4, 2), (1, 3, 3), (1, 2, 4)]));
    let other = newton_polygon(&p(&[(1, 5, 0), (1, 0, 5)])).unwrap().facets[0];
    assert!(matches!(facet_jet(&f, &other), Err(GeometryError::NotAFacet(_))));
}

#[test]
fn newton_numbers() {
    assert_eq!(newton_number(&p(&[(1, 3, 0), (1, 0, 4)])).unwrap(), 6);
    assert_eq!(newton_number(&p(&[(1, 5, 0), (1, 0, 7)])).unwrap(), 24);
    assert_eq!(newton_number(&p(&[(1, 2, 0), (1, 0, 2)])).unwrap(), 1);
}

#[test]
fn modality_counts() {
    let x9 = newton_polygon(&p(&[(1, 4, 0), (1, 0, 4)])).unwrap();
    let m = modality_lattice(&x9).unwrap();
    assert_eq!((m.count, m.witnesses), (1, vec![Mono::new(2, 2)]));
    assert_eq!(modality_lattice(&newton_polygon(&p(&[(1, 3, 0), (1, 0, 4)])).unwrap()).unwrap().count, 0);
    assert_eq!(classify_monomial(&Mono::new(2, 2), &x9).unwrap(), Position::On);
    assert_eq!(classify_monomial(&Mono::new(1, 1), &x9).unwrap(), Position::Below);
    assert_eq!(classify_monomial(&Mono::new(3, 2), &x9).unwrap(), Position::Above);
}

fn support() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((1i64..4, 0u32..12, 0u32..12), 1..8).prop_map(|t| p(&t))
}

proptest! {
    #[test]
    fn mirror_matches_swapped_germ(f in support()) {
        let a = newton_polygon(&f.swap_xy()).unwrap();
        let b = newton_polygon(&f).unwrap().mirror();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn facet_normals_are_primitive_and_slopes_increase(f in support()) {
        let poly = newton_polygon(&f).unwrap();
        for fa in &poly.facets {
            prop_assert_eq!(num_gcd(fa.weight.wx, fa.weight.wy), 1);
            prop_assert_eq!(fa.weight.degree(&fa.left), fa.weight.degree(&fa.right));
            for m in f.support() {
                prop_assert!(fa.weight.degree(&m) >= fa.degree);
            }
        }
        for w in poly.facets.windows(2) {
            // wx/wy strictly decreases from left to right
            prop_assert!((w[0].weight.wx as u64) * (w[1].weight.wy as u64) > (w[1].weight.wx as u64) * (w[0].weight.wy as u64));
        }
    }
}

fn num_gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

use field_tower::{rat, AlgebraicNumber, Rational, Ring};
use local_algebra::standard_basis;
use poly_core::{Mono, QPoly};
use puiseux::{
    branches, characteristic_exponents, default_bound, expansions, intersection_number, lift, newton_puiseux,
    residual_vanishes, topological_data, PuiseuxError, PuiseuxExpansion,
};

fn q(terms: &[(i64, u32, u32)]) -> QPoly {
    QPoly::from_terms(terms.iter().map(|&(c, i, j)| (Mono::new(i, j), rat(c, 1))))
}

fn series(terms: &[(Rational, Rational)]) -> Vec<(Rational, AlgebraicNumber)> {
    terms.iter().map(|(e, c)| (e.clone(), AlgebraicNumber::rational(c.clone()))).collect()
}

/// Colength of `<f, g>` in the local ring, by a standard basis.
fn colength(f: &QPoly, g: &QPoly) -> usize {
    standard_basis(&[f.clone(), g.clone()]).complement().expect("finite colength").len()
}

/// Coefficients of `(1+x)^(1/2)` from the binomial recursion.
fn sqrt_one_plus(n: usize) -> Vec<Rational> {
    let half = rat(1, 2);
    let mut out = vec![rat(1, 1)];
    for k in 1..n {
        let prev = out[k - 1].clone();
        out.push(prev * (half.clone() - rat(k as i64 - 1, 1)) / rat(k as i64, 1));
    }
    out
}

#[test]
fn cusp_expansion_terminates() {
    let cusp = q(&[(1, 0, 2), (-1, 3, 0)]);
    let l = default_bound(&lift(&cusp)).unwrap();
    let e = newton_puiseux(&cusp, &l).unwrap();
    assert!(e.exact);
    assert_eq!(e.ramification, 2);
    assert_eq!(e.terms, series(&[(rat(3, 2), rat(1, 1))]));
    assert_eq!(e.to_string(), "x^(3/2)");
    assert_eq!(characteristic_exponents(&e).unwrap().exponents, vec![2, 3]);
}

#[test]
fn smooth_branch() {
    let f = q(&[(1, 0, 1), (-1, 2, 0)]);
    let e = newton_puiseux(&f, &rat(5, 1)).unwrap();
    assert_eq!(e.terms, series(&[(rat(2, 1), rat(1, 1))]));
    assert_eq!(e.ramification, 1);
    assert_eq!(characteristic_exponents(&e).unwrap().exponents, vec![1]);
}

#[test]
fn node_branch_matches_binomial_series() {
    // y^2 - x^2 - x^3 has the branches y = +-x*sqrt(1+x)
    let f = q(&[(1, 0, 2), (-1, 2, 0), (-1, 3, 0)]);
    let all = expansions(&f, &rat(3, 1)).unwrap();
    assert_eq!(all.len(), 2);
    let b = sqrt_one_plus(3);
    let plus = series(&[(rat(1, 1), b[0].clone()), (rat(2, 1), b[1].clone()), (rat(3, 1), b[2].clone())]);
    assert_eq!(plus, series(&[(rat(1, 1), rat(1, 1)), (rat(2, 1), rat(1, 2)), (rat(3, 1), rat(-1, 8))]));
    let minus: Vec<_> = plus.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
    assert!(all.iter().any(|e| e.terms == plus), "{all:?}");
    assert!(all.iter().any(|e| e.terms == minus));
    for e in &all {
        assert!(!e.exact);
        assert!(residual_vanishes(&lift(&f), e));
    }
    // developing further keeps following the binomial series
    let b = sqrt_one_plus(8);
    let long = expansions(&f, &rat(8, 1)).unwrap();
    let plus = long.iter().find(|e| e.terms[0].1.is_one()).unwrap();
    let expected: Vec<_> = (0..8).map(|k| (rat(k + 1, 1), b[k as usize].clone())).collect();
    assert_eq!(plus.terms, series(&expected));
}

#[test]
fn characteristic_exponents_from_support() {
    let one = AlgebraicNumber::one();
    let e = PuiseuxExpansion {
        ramification: 4,
        terms: vec![(rat(1, 1), one.clone()), (rat(3, 2), one.clone()), (rat(7, 4), one)],
        developed_order: rat(2, 1),
        exact: false,
    };
    let c = characteristic_exponents(&e).unwrap();
    assert_eq!(c.exponents, vec![4, 6, 7]);
    assert!(!c.transposed);
}

#[test]
fn branch_tangent_to_the_y_axis_uses_the_transposed_rows() {
    // y^3 = x^2 gives y = x^(2/3): n = 3 > m = 2
    let f = q(&[(1, 0, 3), (-1, 2, 0)]);
    let e = newton_puiseux(&f, &rat(4, 1)).unwrap();
    assert_eq!(e.terms, series(&[(rat(2, 3), rat(1, 1))]));
    let c = characteristic_exponents(&e).unwrap();
    assert!(c.transposed);
    assert_eq!(c.exponents, vec![2, 3]);
}

#[test]
fn non_y_general_input_is_rejected() {
    let f = q(&[(1, 1, 1), (1, 3, 0)]);
    assert!(matches!(newton_puiseux(&f, &rat(3, 1)), Err(PuiseuxError::NotYGeneral)));
}

#[test]
fn extension_for_conjugate_branches() {
    // y^2 - 2x^2: two lines conjugate over Q
    let f = q(&[(1, 0, 2), (-2, 2, 0)]);
    let bs = branches(&lift(&f), &rat(3, 1)).unwrap();
    assert_eq!(bs.len(), 1);
    assert_eq!(bs[0].tower.degree(), 2);
    assert!(bs[0].exact);
    let e = bs[0].expansion().unwrap();
    let c = e.terms[0].1.clone();
    assert_eq!(c.clone() * c, AlgebraicNumber::from_int(2));
    assert!(residual_vanishes(&lift(&f), &e));
}

#[test]
fn ramified_conjugates_need_no_extension() {
    // y = x^(3/2) * sqrt(-1) is one branch over Q; its parametrization is rational
    let f = q(&[(1, 0, 2), (1, 3, 0)]);
    let bs = branches(&lift(&f), &rat(3, 1)).unwrap();
    assert_eq!(bs.len(), 1);
    assert!(bs[0].tower.is_rational());
    assert_eq!(bs[0].ramification, 2);
    let e = bs[0].expansion().unwrap();
    assert!(residual_vanishes(&lift(&f), &e));
}

#[test]
fn intersection_numbers_of_small_pairs() {
    let x = q(&[(1, 1, 0)]);
    let y = q(&[(1, 0, 1)]);
    let cusp = q(&[(1, 0, 2), (-1, 3, 0)]);
    assert_eq!(intersection_number(&x, &cusp).unwrap(), 2);
    assert_eq!(intersection_number(&y, &x).unwrap(), 1);
    let a = q(&[(1, 0, 1), (-1, 2, 0)]);
    let b = q(&[(1, 0, 1), (1, 2, 0)]);
    assert_eq!(intersection_number(&a, &b).unwrap(), 2);
}

#[test]
fn intersection_numbers_match_the_local_colength() {
    let germs = [
        q(&[(1, 0, 2), (-1, 3, 0)]),
        q(&[(1, 0, 3), (-1, 5, 0)]),
        q(&[(1, 0, 2), (-1, 5, 0), (1, 3, 1)]),
        q(&[(1, 0, 1), (-3, 2, 0), (1, 3, 0)]),
        q(&[(1, 0, 4), (-2, 3, 2), (-4, 5, 1), (1, 6, 0), (-1, 7, 0)]),
        q(&[(1, 1, 0), (1, 1, 1), (-1, 0, 3)]),
    ];
    for f in &germs {
        for g in &germs {
            if f == g {
                continue;
            }
            let i = intersection_number(f, g).unwrap();
            assert_eq!(i as usize, colength(f, g), "{f} / {g}");
            assert_eq!(i, intersection_number(g, f).unwrap());
        }
    }
}

#[test]
fn common_components_are_reported() {
    let cusp = q(&[(1, 0, 2), (-1, 3, 0)]);
    let twice = cusp.mul(&q(&[(1, 0, 1), (1, 1, 0)]));
    assert!(matches!(intersection_number(&twice, &cusp), Err(PuiseuxError::CommonComponent)));
}

#[test]
fn reducible_second_argument_is_reported() {
    let x = q(&[(1, 1, 0)]);
    let node = q(&[(1, 0, 2), (-1, 2, 0)]);
    assert!(matches!(intersection_number(&x, &node), Err(PuiseuxError::Reducible)));
}

#[test]
fn topological_data_of_a_product() {
    let g1 = q(&[(1, 0, 2), (-1, 3, 0)]);
    let g2 = q(&[(1, 0, 3), (-1, 5, 0)]);
    let data = topological_data(&lift(&g1.mul(&g2))).unwrap();
    let mut classes: Vec<_> = data.branches.iter().map(|b| (b.characteristic_exponents.clone(), b.conjugates)).collect();
    classes.sort();
    assert_eq!(classes, vec![(vec![2, 3], 1), (vec![3, 5], 1)]);
    assert_eq!(data.intersections[0][1], colength(&g1, &g2) as u64);
    assert_eq!(data.intersections[0][1], data.intersections[1][0]);
    assert_eq!(data.intersections[0][0], 0);
}

#[test]
fn topological_data_groups_conjugate_lines() {
    // four lines y = +-sqrt(2) x, y = +-sqrt(3) x meet pairwise with multiplicity 1
    let f = q(&[(1, 0, 2), (-2, 2, 0)]).mul(&q(&[(1, 0, 2), (-3, 2, 0)]));
    let data = topological_data(&lift(&f)).unwrap();
    assert_eq!(data.branches.len(), 2);
    assert!(data.branches.iter().all(|b| b.characteristic_exponents == vec![1] && b.conjugates == 2));
    // ordered pairs of distinct conjugates, and all four cross pairs
    assert_eq!(data.intersections[0][0], 2);
    assert_eq!(data.intersections[0][1], 4);
}

#[test]
fn coordinate_cross_is_sheared_first() {
    let f = q(&[(1, 1, 1)]);
    let data = topological_data(&lift(&f)).unwrap();
    assert_eq!(data.branches.len(), 2);
    assert_eq!(data.intersections[0][1], 1);
}

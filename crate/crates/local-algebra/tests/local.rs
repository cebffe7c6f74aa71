use local_algebra::{
    corank, determinacy_bound, milnor_number, mora_normal_form, standard_basis, LocalError, Mu,
};
use poly_core::{rat, Field, Mono, Poly, QPoly, Rational, Ring};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn p(terms: &[(i64, u32, u32)]) -> QPoly {
    Poly::from_terms(terms.iter().map(|&(c, i, j)| (Mono::new(i, j), rat(c, 1))))
}

fn m(i: u32, j: u32) -> Mono {
    Mono::new(i, j)
}

fn golden_g() -> QPoly {
    p(&[(4, 2, 4), (1, 3, 3), (1, 4, 2), (5, 10, 0), (1, 0, 13)])
}

fn golden_phi() -> (QPoly, QPoly) {
    (
        p(&[(1, 1, 0), (1, 0, 2), (1, 2, 0), (1, 1, 1), (1, 2, 1), (1, 1, 3)]),
        p(&[(1, 0, 1), (1, 0, 2), (2, 2, 0), (1, 1, 1), (1, 2, 1), (1, 1, 2), (1, 1, 4)]),
    )
}

/// dim Q[x,y] / (<gens> + m^n) by sparse Gaussian elimination on the
/// multiples of the generators by all monomials, truncated below degree n.
fn ideal_colength(gens: &[QPoly], n: u32) -> usize {
    let cols: Vec<Mono> = (0..n).flat_map(Mono::of_degree).collect();
    let mut pivots: BTreeMap<Mono, QPoly> = BTreeMap::new();
    for g in gens {
        for s in &cols {
            let mut row = g.mul_term(&Rational::one(), s).jet(n as i64 - 1);
            while let Some((lead, c)) = row.lead() {
                match pivots.get(&lead) {
                    Some(piv) => row = row.sub(&piv.scale(&c)),
                    None => {
                        pivots.insert(lead, row.scale(&c.inv().unwrap()));
                        break;
                    }
                }
            }
        }
    }
    cols.len() - pivots.len()
}

fn macaulay_colength(f: &QPoly, n: u32) -> usize {
    ideal_colength(&[f.dx(), f.dy()], n)
}

#[test]
fn normal_forms_of_small_examples() {
    let x2 = standard_basis(&[p(&[(1, 2, 0)])]);
    assert!(mora_normal_form(&p(&[(1, 3, 0)]), &x2).is_zero());
    assert!(mora_normal_form(&p(&[(1, 2, 0), (1, 3, 0)]), &x2).is_zero());
    let sq = standard_basis(&[p(&[(1, 2, 0)]), p(&[(1, 0, 2)])]);
    assert_eq!(mora_normal_form(&p(&[(1, 1, 1)]), &sq), p(&[(1, 1, 1)]));
}

#[test]
fn standard_bases_of_small_ideals() {
    let sb = standard_basis(&[p(&[(1, 2, 0)]), p(&[(1, 0, 3)])]);
    let mut leads = sb.lead_ideal().to_vec();
    leads.sort();
    assert_eq!(leads, vec![m(2, 0), m(0, 3)]);
    let sb = standard_basis(&[p(&[(1, 2, 0), (1, 0, 3)]), p(&[(1, 0, 2)])]);
    let mut leads = sb.lead_ideal().to_vec();
    leads.sort();
    assert_eq!(leads, vec![m(2, 0), m(0, 2)]);
    let f = p(&[(1, 3, 0), (1, 0, 4)]);
    let sb = standard_basis(&[f.dx(), f.dy()]);
    let mut leads = sb.lead_ideal().to_vec();
    leads.sort();
    assert_eq!(leads, vec![m(2, 0), m(0, 3)]);
}

#[test]
fn milnor_numbers_of_simple_germs() {
    let a1 = milnor_number(&p(&[(1, 2, 0), (1, 0, 2)])).unwrap();
    assert_eq!(a1.mu, Mu::Finite(1));
    assert_eq!(a1.basis, vec![Mono::ONE]);
    let e6 = milnor_number(&p(&[(1, 3, 0), (1, 0, 4)])).unwrap();
    assert_eq!(e6.mu, Mu::Finite(6));
    let mut expect = vec![Mono::ONE, m(1, 0), m(0, 1), m(1, 1), m(0, 2), m(1, 2)];
    expect.sort();
    assert_eq!(e6.basis, expect);
    assert_eq!(macaulay_colength(&p(&[(1, 3, 0), (1, 0, 4)]), 8), 6);
}

#[test]
fn non_isolated_germs_have_infinite_milnor_number() {
    assert_eq!(milnor_number(&p(&[(1, 2, 2)])).unwrap().mu, Mu::Infinite);
    // (x^2 + y^3)^2
    let f = p(&[(1, 2, 0), (1, 0, 3)]).pow(2);
    assert_eq!(milnor_number(&f).unwrap().mu, Mu::Infinite);
    assert_eq!(determinacy_bound(&f).unwrap_err(), LocalError::InfiniteMilnor);
    assert_eq!(milnor_number(&QPoly::zero()).unwrap_err(), LocalError::ZeroGerm);
}

#[test]
fn golden_germ_and_its_image_have_milnor_number_36() {
    assert_eq!(milnor_number(&golden_g()).unwrap().mu, Mu::Finite(36));
    let (ix, iy) = golden_phi();
    let f = golden_g().substitute(&ix, &iy).unwrap();
    assert_eq!(milnor_number(&f).unwrap().mu, Mu::Finite(36));
    let classified = p(&[(1, 4, 2), (1, 2, 4), (1, 0, 10), (1, 13, 0)]);
    assert_eq!(milnor_number(&classified).unwrap().mu, Mu::Finite(36));
}

#[test]
fn determinacy_of_simple_germs() {
    assert_eq!(determinacy_bound(&p(&[(1, 2, 0), (1, 0, 2)])).unwrap(), 2);
    assert_eq!(determinacy_bound(&p(&[(1, 3, 0), (1, 0, 4)])).unwrap(), 4);
    let k = determinacy_bound(&golden_g()).unwrap();
    assert!(k <= 37);
}

#[test]
fn determinacy_matches_the_colength_oracle() {
    // an untruncated standard basis of m^2 Jac(f) used to stall on this germ
    let f = p(&[(-7, 1, 2), (2, 0, 5), (-3, 10, 0), (2, 6, 4), (4, 5, 5), (4, 11, 3)]);
    let mu = milnor_number(&f).unwrap().mu.finite().unwrap() as u32;
    let gens: Vec<QPoly> = Mono::of_degree(2)
        .flat_map(|m| [f.dx().mul_term(&Rational::one(), &m), f.dy().mul_term(&Rational::one(), &m)])
        .collect();
    let full = ideal_colength(&gens, mu + 8);
    let covered = |k: u32| ideal_colength(&gens, k + 1) == full;
    let k = determinacy_bound(&f).unwrap();
    assert!(covered(k));
    assert!(k == 1 || !covered(k - 1));
}

#[test]
fn corank_from_hessian() {
    assert_eq!(corank(&p(&[(1, 3, 0), (1, 0, 3)])).unwrap(), 2);
    assert_eq!(corank(&p(&[(1, 2, 0), (1, 0, 3)])).unwrap(), 1);
    assert_eq!(corank(&p(&[(1, 2, 0), (1, 1, 1), (1, 0, 2)])).unwrap(), 0);
    assert_eq!(corank(&p(&[(1, 1, 0), (1, 0, 3)])).unwrap_err(), LocalError::Smooth);
}

#[test]
fn extending_a_truncated_basis_keeps_the_maximal_ideal_power() {
    let f = p(&[(1, 4, 2), (1, 2, 4), (1, 0, 10), (1, 13, 0), (1, 3, 3), (1, 3, 5), (1, 1, 11)]);
    let sb = standard_basis(&[f.dx(), f.dy()]);
    assert!(sb.power_of_maximal_ideal().is_some());
    let extra = [m(3, 5), m(3, 4), m(4, 3), m(0, 10), m(2, 4), m(3, 3)];
    let mut inc = sb.clone();
    for e in &extra {
        inc = inc.extend(&[Poly::term(Rational::from_integer(1.into()), *e)]);
    }
    let mut gens = vec![f.dx(), f.dy()];
    gens.extend(extra.iter().map(|e| Poly::term(Rational::from_integer(1.into()), *e)));
    let scratch = standard_basis(&gens);
    assert_eq!(inc.complement(), scratch.complement());
    for k in 0..14 {
        for t in Mono::of_degree(k) {
            let q = Poly::term(Rational::from_integer(1.into()), t);
            assert_eq!(inc.contains(&q), scratch.contains(&q), "{t}");
        }
    }
}

#[test]
fn reduction_trace_reassembles() {
    let f = p(&[(1, 3, 0), (1, 1, 1), (1, 0, 4)]);
    let sb = standard_basis(&[f.dx(), f.dy()]);
    let h = p(&[(3, 1, 2), (-2, 4, 1), (1, 0, 5), (7, 1, 0)]);
    let red = sb.reduce_with_cofactors(&h).unwrap();
    let mut back = red.remainder.clone();
    for (q, g) in red.quotients.iter().zip(sb.generators()) {
        back = back.add(&q.mul(g));
    }
    let diff = h.sub(&back);
    assert!(diff.terms().all(|(t, _)| t.degree() >= red.truncation));
}

fn germ() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-4i64..5, 0u32..7, 0u32..7), 1..6).prop_map(|t| {
        let mut f = p(&t).filter(|mm| mm.degree() >= 2);
        // keep the singularity isolated
        f = f.add(&p(&[(1, 7, 0), (1, 0, 8)]));
        f
    })
}

fn automorphism() -> impl Strategy<Value = (QPoly, QPoly)> {
    (-2i64..3, -2i64..3, prop::collection::vec((-2i64..3, 0u32..3, 0u32..3), 0..3)).prop_map(|(a, b, t)| {
        let h = p(&t).filter(|mm| mm.degree() >= 2);
        (p(&[(1, 1, 0), (a, 0, 1)]).add(&h), p(&[(b, 1, 0), (1 - a * b, 0, 1)]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn milnor_number_matches_macaulay_oracle(f in germ()) {
        let mu = milnor_number(&f).unwrap().mu.finite().unwrap();
        prop_assume!(mu <= 30);
        prop_assert_eq!(macaulay_colength(&f, mu as u32 + 2), mu);
    }

    #[test]
    fn milnor_number_is_invariant_under_automorphisms(f in germ(), (ix, iy) in automorphism()) {
        let data = milnor_number(&f).unwrap();
        let k = determinacy_bound(&f).unwrap();
        let g = f.substitute_truncated(&ix, &iy, k).unwrap();
        prop_assert_eq!(milnor_number(&g).unwrap().mu, data.mu);
        prop_assert_eq!(data.basis.len(), data.mu.finite().unwrap());
    }

    #[test]
    fn normal_form_differs_by_an_ideal_element(f in germ(), h in germ()) {
        let sb = standard_basis(&[f.dx(), f.dy()]);
        let red = sb.reduce_with_cofactors(&h).unwrap();
        prop_assert_eq!(&red.remainder, &mora_normal_form(&h, &sb));
        let mut back = red.remainder.clone();
        for (q, g) in red.quotients.iter().zip(sb.generators()) {
            back = back.add(&q.mul(g));
        }
        prop_assert!(h.sub(&back).terms().all(|(t, _)| t.degree() >= red.truncation));
        prop_assert!(red.remainder.terms().all(|(t, _)| !sb.in_lead_ideal(t)));
    }
}

use classify::{classify, ClassifyOutcome};
use field_tower::{rat, Tower};
use local_algebra::{milnor_number, standard_basis};
use num_integer::Integer;
use poly_core::{Mono, QPoly};
use proptest::prelude::*;
use puiseux::{
    branches, characteristic_exponents, default_bound, expansions, intersection_number, lift, residual_vanishes,
    topological_data,
};
use wh_factor::has_nondegenerate_boundary;

/// Convenient germs `x^a + y^b + ...` with small random middle terms.
fn germ() -> impl Strategy<Value = QPoly> {
    let term = (2u32..=5, 0u32..=5, -2i64..=2);
    (prop::collection::vec(term, 0..5), 2u32..=6, 2u32..=6).prop_map(|(ts, a, b)| {
        let mut f = QPoly::mono(a, 0).add(&QPoly::mono(0, b));
        for (d, i, c) in ts {
            let i = i.min(d);
            f.add_term(Mono::new(i, d - i), rat(c, 1));
        }
        f
    })
}

/// `y^a - c x^b` plus terms above the segment; a single edge of lattice
/// length one, hence one branch.
fn branch() -> impl Strategy<Value = QPoly> {
    let extra = prop::collection::vec((0u32..=6, 0u32..=4, -2i64..=2), 0..3);
    (1u32..=4, 1u32..=6, prop::sample::select(vec![-2i64, -1, 1, 3]), extra).prop_filter_map(
        "coprime exponents",
        |(a, b, c, extra)| {
            if a.gcd(&b) != 1 {
                return None;
            }
            let mut g = QPoly::mono(0, a).add(&QPoly::mono(b, 0).scale(&rat(-c, 1)));
            for (i, j, k) in extra {
                if a * i + b * j > a * b {
                    g.add_term(Mono::new(i, j), rat(k, 1));
                }
            }
            Some(g)
        },
    )
}

fn automorphism() -> impl Strategy<Value = (QPoly, QPoly)> {
    let coeff = -2i64..=2;
    (coeff.clone(), coeff.clone(), prop::collection::vec((0u32..=2, coeff.clone()), 0..3), prop::collection::vec((0u32..=2, coeff), 0..3))
        .prop_map(|(a, b, hx, hy)| {
            let px0 = QPoly::x().add(&QPoly::y().scale(&rat(a, 1)));
            let py0 = if a * b == 1 { QPoly::y() } else { QPoly::y().add(&QPoly::x().scale(&rat(b, 1))) };
            let (mut px, mut py) = (px0, py0);
            for (i, c) in hx {
                px.add_term(Mono::new(i, 2 - i), rat(c, 1));
            }
            for (i, c) in hy {
                py.add_term(Mono::new(i, 2 - i), rat(c, 1));
            }
            (px, py)
        })
}

fn colength(f: &QPoly, g: &QPoly) -> Option<usize> {
    standard_basis(&[f.clone(), g.clone()]).complement().map(|c| c.len())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn expansions_are_roots_to_the_developed_order(f in germ()) {
        let Ok(l) = default_bound(&lift(&f)) else { return Ok(()) };
        let bs = branches(&lift(&f), &l).unwrap();
        let total: usize = bs.iter().map(|b| b.ramification as usize * b.conjugates(&Tower::rationals()) * b.multiplicity as usize).sum();
        let ord_y = f.terms().filter(|(m, _)| m.x == 0).map(|(m, _)| m.y as usize).min().unwrap();
        prop_assert_eq!(total, ord_y);
        for e in expansions(&f, &l).unwrap() {
            prop_assert!(residual_vanishes(&lift(&f), &e), "{} at {}", f, e);
            if let Ok(c) = characteristic_exponents(&e) {
                if c.transposed {
                    println!("transposed rows used: {f} -> {e}");
                }
            }
        }
    }

    #[test]
    fn intersection_numbers_are_symmetric_and_match_colength(f in branch(), g in branch()) {
        let Some(len) = colength(&f, &g) else { return Ok(()) };
        let i = intersection_number(&f, &g).unwrap();
        prop_assert_eq!(i as usize, len, "{} / {}", f, g);
        prop_assert_eq!(intersection_number(&g, &f).unwrap(), i);
    }

    #[test]
    fn topological_data_is_invariant_under_automorphisms(f in germ(), (px, py) in automorphism()) {
        let Some(mu) = milnor_number(&f).unwrap().mu.finite() else { return Ok(()) };
        let g = f.substitute_truncated(&px, &py, mu as u32 + 1).unwrap();
        let before = topological_data(&lift(&f)).unwrap().canonical();
        let after = topological_data(&lift(&g)).unwrap().canonical();
        prop_assert_eq!(before, after, "{} -> {}", f, g);
    }

    #[test]
    fn classification_keeps_the_topological_type(f in germ()) {
        if milnor_number(&f).unwrap().mu.finite().is_none() || f.jet(2) != QPoly::zero() {
            return Ok(());
        }
        let ClassifyOutcome::Classified(c) = classify(&f).unwrap() else { return Ok(()) };
        if !c.tower().is_rational() {
            return Ok(());
        }
        let before = topological_data(&lift(&f)).unwrap().canonical();
        let after = topological_data(&c.germ).unwrap().canonical();
        prop_assert_eq!(before, after, "{}", f);
    }

    #[test]
    fn nondegenerate_boundaries_separate_branches_at_first_order(f in germ()) {
        let k = lift(&f);
        if milnor_number(&f).unwrap().mu.finite().is_none() || !has_nondegenerate_boundary(&k).unwrap() {
            return Ok(());
        }
        for b in branches(&k, &rat(1, 1)).unwrap() {
            prop_assert_eq!(b.heights.get(1).copied().unwrap_or(1), 1, "{}", f);
        }
    }
}

use classify::{classify, lift_rational, ClassifyOutcome};
use field_tower::rat;
use local_algebra::milnor_number;
use poly_core::{Mono, QPoly};
use proptest::prelude::*;
use newton_geometry::newton_number;
use wh_factor::has_nondegenerate_boundary;

fn germ() -> impl Strategy<Value = QPoly> {
    let term = (3u32..=6, 0u32..=6, -2i64..=2);
    (prop::collection::vec(term, 1..6), 4u32..=8, 4u32..=8).prop_map(|(ts, a, b)| {
        let mut f = QPoly::mono(a, 0).add(&QPoly::mono(0, b));
        for (d, i, c) in ts {
            let i = i.min(d);
            f.add_term(Mono::new(i, d - i), rat(c, 1));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn outcome_is_equivalent_and_replayable(f in germ()) {
        let Some(mu) = milnor_number(&f).unwrap().mu.finite() else { return Ok(()) };
        if f.jet(2) != QPoly::zero() {
            return Ok(());
        }
        match classify(&f).unwrap() {
            ClassifyOutcome::Classified(c) => {
                prop_assert_eq!(c.mu, mu);
                prop_assert_eq!(milnor_number(&c.germ).unwrap().mu.finite(), Some(mu));
                prop_assert_eq!(c.log.replay(&lift_rational(&f)).unwrap(), c.germ.clone());
                prop_assert!(has_nondegenerate_boundary(&c.germ).unwrap());
                prop_assert!(c.polygon.is_convenient());
                prop_assert_eq!(newton_number(&c.germ).unwrap(), mu as i64);
            }
            ClassifyOutcome::NotNonDegenerate { germ, log } => {
                prop_assert_eq!(log.replay(&lift_rational(&f)).unwrap(), germ.clone());
                prop_assert_eq!(milnor_number(&germ).unwrap().mu.finite(), Some(mu));
            }
        }
    }
}

fn automorphism() -> impl Strategy<Value = (QPoly, QPoly)> {
    let coeff = -2i64..=2;
    (coeff.clone(), coeff.clone(), prop::collection::vec((0u32..=3, coeff.clone()), 0..3), prop::collection::vec((0u32..=3, coeff), 0..3))
        .prop_map(|(a, b, hx, hy)| {
            let mut px = QPoly::x().add(&QPoly::y().scale(&rat(a, 1)));
            let mut py = QPoly::y().add(&QPoly::x().scale(&rat(b, 1)));
            if a * b == 1 {
                py = QPoly::y();
            }
            for (i, c) in hx {
                px.add_term(Mono::new(i, 3 - i), rat(c, 1));
            }
            for (i, c) in hy {
                py.add_term(Mono::new(i.min(2), 2 - i.min(2)), rat(c, 1));
            }
            (px, py)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn disguised_germs_recover_newton_number(f in germ(), (px, py) in automorphism()) {
        let Some(mu) = milnor_number(&f).unwrap().mu.finite() else { return Ok(()) };
        if f.jet(2) != QPoly::zero() {
            return Ok(());
        }
        let g = f.substitute_truncated(&px, &py, mu as u32 + 1).unwrap();
        let original = classify(&f).unwrap().classified().is_some();
        let outcome = classify(&g).unwrap();
        // failure is only reported when no non-degenerate form exists
        prop_assert_eq!(outcome.classified().is_some(), original, "{} vs {}", f, g);
        if let ClassifyOutcome::Classified(c) = outcome {
            prop_assert_eq!(c.mu, mu);
            prop_assert_eq!(newton_number(&c.germ).unwrap(), mu as i64);
            prop_assert_eq!(c.log.replay(&lift_rational(&g)).unwrap(), c.germ.clone());
        }
    }
}

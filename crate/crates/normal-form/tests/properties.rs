use std::collections::BTreeMap;

use field_tower::rat;
use local_algebra::{determinacy_bound, milnor_number, standard_basis};
use newton_geometry::{newton_number, newton_polygon};
use normal_form::{normal_form, regular_basis};
use poly_core::{Mono, QPoly, Rational};
use proptest::prelude::*;
use wh_factor::has_nondegenerate_boundary;

fn germ() -> impl Strategy<Value = QPoly> {
    let term = (3u32..=6, 0u32..=6, prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3, 5]));
    (prop::collection::vec(term, 0..4), 3u32..=7, 3u32..=7).prop_map(|(ts, a, b)| {
        let mut f = QPoly::mono(a, 0).add(&QPoly::mono(0, b));
        for (d, i, c) in ts {
            let i = i.min(d);
            if (i, d - i) != (a, 0) && (i, d - i) != (0, b) {
                f.add_term(Mono::new(i, d - i), rat(c, 1));
            }
        }
        f
    })
}

fn nondegenerate(f: &QPoly) -> bool {
    newton_polygon(f).map(|p| p.is_convenient()).unwrap_or(false) && has_nondegenerate_boundary(f).unwrap_or(false)
}

fn rank(rows: Vec<QPoly>) -> usize {
    let mut rows: Vec<BTreeMap<Mono, Rational>> =
        rows.iter().map(|p| p.terms().map(|(m, c)| (*m, c.clone())).collect()).collect();
    let mut r = 0;
    while r < rows.len() {
        rows[r..].sort_by_key(|row| std::cmp::Reverse(row.len()));
        let Some((&pivot, c)) = rows[r].iter().next().map(|(m, c)| (m, c.clone())) else { break };
        for k in r + 1..rows.len() {
            if let Some(e) = rows[k].get(&pivot).cloned() {
                let factor = e / c.clone();
                let pivot_row = rows[r].clone();
                for (m, v) in pivot_row {
                    let entry = rows[k].entry(m).or_insert_with(|| rat(0, 1));
                    *entry -= factor.clone() * v;
                    if *entry == rat(0, 1) {
                        rows[k].remove(&m);
                    }
                }
            }
        }
        r += 1;
    }
    rows.iter().filter(|row| !row.is_empty()).count()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn full_basis_has_milnor_many_elements(f in germ()) {
        prop_assume!(nondegenerate(&f));
        let mu = milnor_number(&f).unwrap().mu.finite().unwrap();
        prop_assert_eq!(regular_basis(&f, 0).unwrap().len(), mu);
    }

    #[test]
    fn basis_above_boundary_counts_inner_lattice_points(f in germ()) {
        prop_assume!(nondegenerate(&f));
        let p = newton_polygon(&f).unwrap();
        let d = p.piecewise_weight().unwrap().d;
        prop_assert_eq!(regular_basis(&f, d).unwrap().len(), p.modality_lattice().unwrap().count);
    }

    #[test]
    fn members_of_one_degree_stay_independent(f in germ()) {
        prop_assume!(nondegenerate(&f));
        let p = newton_polygon(&f).unwrap();
        let pw = p.piecewise_weight().unwrap();
        let k = determinacy_bound(&f).unwrap();
        let basis = regular_basis(&f, 0).unwrap();
        let mut by_degree: BTreeMap<u64, Vec<Mono>> = BTreeMap::new();
        for (m, d) in basis.monomials.iter().zip(&basis.degrees) {
            by_degree.entry(*d).or_default().push(*m);
        }
        for (d, members) in by_degree {
            let mut gens = vec![f.dx(), f.dy()];
            gens.extend(Mono::of_degree(k + 1).map(|m| QPoly::mono(m.x, m.y)));
            gens.extend((0..=k).flat_map(Mono::of_degree).filter(|m| pw.degree(m) > d).map(|m| QPoly::mono(m.x, m.y)));
            let sb = standard_basis(&gens);
            let forms: Vec<QPoly> = members.iter().map(|m| sb.normal_form(&QPoly::mono(m.x, m.y))).collect();
            prop_assert_eq!(rank(forms), members.len(), "degree {}", d);
        }
    }

    #[test]
    fn generic_members_of_the_family_keep_the_newton_number(f in germ(), seed in prop::collection::vec(-3i64..=3, 8)) {
        prop_assume!(nondegenerate(&f));
        let nf = normal_form(&f).unwrap();
        let point: BTreeMap<(u32, u32), Rational> =
            nf.parameter_monomials.iter().zip(seed.iter().cycle()).map(|(m, &v)| ((m.x, m.y), rat(v, 1))).collect();
        prop_assume!(nf.exceptional_generator().evaluate(&point) != rat(0, 1));
        let g = nf.specialize(&point);
        prop_assert_eq!(milnor_number(&g).unwrap().mu.finite(), Some(newton_number(&nf.vertex_polynomial).unwrap() as usize));
    }
}

//! The p-map, morphisms, closures and constructed families.

use plalg_core::algebra::verify_restricted;
use plalg_core::analysis::{
    center, fitting, frattini, ideal_closure, is_abelian, is_ideal, is_p_stable, is_subalgebra,
    p_closure, series, subalgebra_closure, transporter, FrattiniMode, SeriesKind, TransporterMode,
};
use plalg_core::constructions::{
    borel2, direct_sum, field_torus, gln, gln_matrix, heisenberg, random_abelian, random_semidirect,
    sl2, sl2_into_witt, witt, SolubleKind,
};
use plalg_core::linalg::enumerate_subspaces;
use plalg_core::simplicity::{fingerprint, is_simple, rebase};
use plalg_core::{AlgebraSpec, Budgets, Matrix, PMorphism};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixtures() -> Vec<AlgebraSpec> {
    vec![
        sl2(5).unwrap(),
        witt(5).unwrap(),
        heisenberg(5).unwrap(),
        borel2(5).unwrap(),
        gln(3, 2).unwrap(),
        field_torus(5, 2).unwrap(),
    ]
}

fn random_soluble(seed: u64) -> AlgebraSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = [5, 7][rng.gen_range(0..2)];
    let dim = rng.gen_range(2..=4);
    let acting = rng.gen_range(1..dim);
    let kind = if rng.gen_bool(0.5) { SolubleKind::Split } else { SolubleKind::Unipotent };
    random_semidirect(p, dim, acting, kind, &mut rng).unwrap()
}

fn random_invertible(spec: &AlgebraSpec, rng: &mut ChaCha8Rng) -> Matrix {
    let n = spec.dim();
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..spec.p())).collect();
        let m = Matrix::new(spec.field(), n, n, data).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobson_matches_matrix_power(case in prop::sample::select(vec![(3u32, 2usize), (3, 3), (5, 2), (5, 3)]), seed in any::<u64>()) {
        let (p, n) = case;
        let g = gln(p, n).unwrap();
        let x = g.random_element(&mut ChaCha8Rng::seed_from_u64(seed));
        let lhs = gln_matrix(g.field(), n, &g.p_power(&x));
        prop_assert_eq!(lhs, gln_matrix(g.field(), n, &x).pow(p as u64));
    }

    #[test]
    fn fold_order_is_irrelevant(which in 0usize..6, seed in any::<u64>()) {
        let spec = &fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = spec.random_element(&mut rng);
        let rev: Vec<usize> = (0..spec.dim()).rev().collect();
        let mut shuffled: Vec<usize> = (0..spec.dim()).collect();
        rand::seq::SliceRandom::shuffle(&mut shuffled[..], &mut rng);
        let base = spec.p_power(&x);
        prop_assert_eq!(spec.p_power_fold(&x, &rev), base.clone());
        prop_assert_eq!(spec.p_power_fold(&x, &shuffled), base);
    }

    #[test]
    fn bracket_of_iterated_powers(which in 0usize..6, seed in any::<u64>(), i in 0u32..=2, j in 0u32..=2) {
        let spec = &fixtures()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (spec.random_element(&mut rng), spec.random_element(&mut rng));
        let p = spec.p() as u64;
        let lhs = spec.bracket(&spec.p_power_iter(&x, i as usize), &spec.p_power_iter(&y, j as usize));
        let inner = spec.ad_matrix(&y).pow(p.pow(j) - 1).mul_vec(&spec.bracket(&x, &y));
        let rhs = spec.ad_matrix(&x).pow(p.pow(i) - 1).mul_vec(&inner);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn morphisms_hold_on_fresh_samples(seed in any::<u64>()) {
        let b = borel2(5).unwrap();
        let u = b.span_of_names(&["u"]).unwrap();
        let (_, q) = b.quotient(&u).unwrap();
        let h = heisenberg(5).unwrap();
        let (_, qz) = h.quotient(&center(&h)).unwrap();
        let maps: Vec<PMorphism> = vec![sl2_into_witt(5).unwrap(), q, qz, PMorphism::identity(&gln(3, 2).unwrap())];
        for f in maps {
            prop_assert!(f.check_samples(seed, 20).is_ok());
        }
    }

    #[test]
    fn direct_sum_has_no_cross_terms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = borel2(5).unwrap();
        let b = random_abelian(5, 2, &mut rng).unwrap();
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        let x = [a.random_element(&mut rng), vec![0; 2]].concat();
        let y = [vec![0; 2], b.random_element(&mut rng)].concat();
        let f = s.field();
        prop_assert_eq!(s.p_power(&f.add_vec(&x, &y)), f.add_vec(&s.p_power(&x), &s.p_power(&y)));
    }

    #[test]
    fn abelian_ideal_powers_are_central(seed in any::<u64>()) {
        let spec = random_soluble(seed);
        let z = center(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        for i in enumerate_subspaces(spec.field(), spec.dim(), None, 100_000).unwrap() {
            if i.is_zero() || !is_ideal(&spec, &i) || !is_abelian(&spec, &i) {
                continue;
            }
            for v in i.basis() {
                prop_assert!(z.contains_vector(&spec.p_power(v)));
            }
            let coords: Vec<u32> = (0..i.dim()).map(|_| rng.gen_range(0..spec.p())).collect();
            prop_assert!(z.contains_vector(&spec.p_power(&i.combine(&coords))));
        }
    }

    #[test]
    fn transporters_and_fitting_are_p_stable(seed in any::<u64>()) {
        let spec = random_soluble(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..=spec.dim());
        let s = spec.span(&(0..k).map(|_| spec.random_element(&mut rng)).collect::<Vec<_>>());
        for mode in [TransporterMode::Centralizer, TransporterMode::Normalizer] {
            if let Ok(t) = transporter(&spec, &s, mode) {
                prop_assert!(is_p_stable(&spec, &t));
            }
        }
        for term in series(&spec, &spec.full(), SeriesKind::UpperCentral).unwrap().terms {
            prop_assert!(is_p_stable(&spec, &term));
        }
        prop_assert!(is_p_stable(&spec, &fitting(&spec, &Budgets::default()).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn p_closure_keeps_class(seed in any::<u64>()) {
        let spec = random_soluble(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=2);
        let h = subalgebra_closure(&spec, &spec.span(&(0..k).map(|_| spec.random_element(&mut rng)).collect::<Vec<_>>()));
        let c = p_closure(&spec, &h).unwrap();
        prop_assert!(is_subalgebra(&spec, &c) && is_p_stable(&spec, &c));
        let (dh, dc) = (series(&spec, &h, SeriesKind::Derived).unwrap(), series(&spec, &c, SeriesKind::Derived).unwrap());
        prop_assert_eq!(dh.is_soluble(), dc.is_soluble());
        prop_assert_eq!(dh.class.max(Some(1)), dc.class.max(Some(1)));
        let (lh, lc) = (series(&spec, &h, SeriesKind::LowerCentral).unwrap(), series(&spec, &c, SeriesKind::LowerCentral).unwrap());
        prop_assert_eq!(lh.is_nilpotent(), lc.is_nilpotent());
        if lh.is_nilpotent() {
            prop_assert_eq!(lh.class.max(Some(1)), lc.class.max(Some(1)));
        }
    }

    #[test]
    fn fingerprint_survives_rebasing(which in 0usize..3, seed in any::<u64>()) {
        let spec = [sl2(5).unwrap(), borel2(5).unwrap(), heisenberg(5).unwrap()][which].clone();
        let b = Budgets::default();
        let m = random_invertible(&spec, &mut ChaCha8Rng::seed_from_u64(seed));
        let other = rebase(&spec, &m).unwrap();
        prop_assert_eq!(fingerprint(&other, &b).unwrap(), fingerprint(&spec, &b).unwrap());
    }
}

#[test]
fn constructed_families_verify() {
    let families = [
        witt(5), witt(7), sl2(3), sl2(5), sl2(7), gln(3, 2), gln(5, 2), gln(3, 3),
        heisenberg(5), borel2(5), field_torus(5, 3), field_torus(7, 2),
    ];
    for spec in families {
        let spec = spec.unwrap();
        let r = verify_restricted(&spec, 1_000_000);
        assert!(r.passed && r.exhaustive, "{}: {:?}", spec.name(), r.findings);
    }
}

#[test]
fn witt_is_simple_and_field_tori_are_semisimple() {
    let b = Budgets::default();
    assert!(is_simple(&witt(5).unwrap(), &b).unwrap());
    assert!(is_simple(&witt(7).unwrap(), &b).unwrap());
    for (p, k) in [(5, 2), (5, 3), (7, 2)] {
        let t = field_torus(p, k).unwrap();
        for x in t.full().elements() {
            assert!(plalg_core::analysis::p_closure_of(&t, &t.p_power(&x)).contains_vector(&x));
        }
    }
}

#[test]
fn frattini_of_simple_algebras_holds_no_ideal() {
    for spec in [sl2(5).unwrap(), witt(5).unwrap()] {
        let phi = frattini(&spec, FrattiniMode::Plain, 1_000_000).unwrap();
        for x in phi.elements().filter(|x| x.iter().any(|&c| c != 0)) {
            let i = ideal_closure(&spec, &spec.span(&[x]));
            assert!(!phi.contains(&i).unwrap());
        }
    }
}

//! Field arithmetic and canonical subspaces.

use plalg_core::ffarith::{ExtField, PrimeField};
use plalg_core::Subspace;
use proptest::prelude::*;

fn vectors(p: u32, n: usize, k: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..p, n), k)
}

fn ext_case() -> impl Strategy<Value = (u32, usize)> {
    prop::sample::select(vec![(3, 2), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn frobenius_is_a_ring_map((p, k) in ext_case(), a in any::<u64>(), b in any::<u64>()) {
        let e = ExtField::with_least_modulus(p, k).unwrap();
        let (x, y) = (e.element(a % e.order()), e.element(b % e.order()));
        let fr = |v: &[u32]| e.frobenius(v, 1);
        prop_assert_eq!(fr(&e.add(&x, &y)), e.add(&fr(&x), &fr(&y)));
        prop_assert_eq!(fr(&e.mul(&x, &y)), e.mul(&fr(&x), &fr(&y)));
        prop_assert_eq!(fr(&x), e.pow(&x, p as u64));
    }

    #[test]
    fn rref_is_canonical(
        gens in vectors(5, 5, 1..5),
        mix in prop::collection::vec(prop::collection::vec(0u32..5, 8), 8),
    ) {
        let f = PrimeField::new(5).unwrap();
        let s = Subspace::span(f, 5, &gens);
        // Recombine the basis by random rows and add redundant vectors.
        let mut other: Vec<Vec<u32>> = Vec::new();
        for row in &mix {
            let mut v = vec![0u32; 5];
            for (c, b) in row.iter().zip(s.basis()) {
                f.axpy(&mut v, *c, b);
            }
            other.push(v);
        }
        let t = Subspace::span(f, 5, &[other.clone(), s.basis().to_vec()].concat());
        prop_assert_eq!(&t, &s);
        prop_assert_eq!(t.basis(), s.basis());
        prop_assert_eq!(t.pivots(), s.pivots());
        let u = Subspace::span(f, 5, &other);
        prop_assert!(s.contains(&u).unwrap());
    }

    #[test]
    fn dimension_is_modular(a in vectors(3, 6, 0..5), b in vectors(3, 6, 0..5)) {
        let f = PrimeField::new(3).unwrap();
        let (a, b) = (Subspace::span(f, 6, &a), Subspace::span(f, 6, &b));
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), sum.dim() + meet.dim());
        prop_assert!(sum.contains(&a).unwrap() && a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
    }

    #[test]
    fn complements_split(a in vectors(7, 5, 1..5), pick in prop::collection::vec(0u32..7, 4)) {
        let f = PrimeField::new(7).unwrap();
        let a = Subspace::span(f, 5, &a);
        let v = a.combine(&pick[..a.dim()]);
        let b = Subspace::span(f, 5, &[v]);
        let c = a.complement_in(&b).unwrap();
        prop_assert!(b.intersect(&c).unwrap().is_zero());
        prop_assert_eq!(b.sum(&c).unwrap(), a);
    }
}

#[test]
fn frobenius_has_order_k() {
    for (p, k) in [(2, 3), (3, 3), (5, 2), (5, 3), (7, 3), (11, 3), (97, 2)] {
        let e = ExtField::with_least_modulus(p, k).unwrap();
        assert!(e.order() <= 10_000);
        for x in e.elements() {
            assert_eq!(e.frobenius(&x, k), x, "p = {p}, k = {k}");
        }
    }
}

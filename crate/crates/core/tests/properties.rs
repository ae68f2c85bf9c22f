use num_bigint::BigInt;
use proptest::prelude::*;

use euclid_lab::dsl::{parse_element, parse_monoid_spec};
use euclid_lab::euclid::{bezout, euclid_subtractive, gcd, porism_check};
use euclid_lab::factorization::{algebraic_gcd, factorizations, is_irreducible};
use euclid_lab::proportion::{
    fraction_equal, pythagorean, pythagorean_witnesses, CanonicalPartsMode, ProportionQuad,
};
use euclid_lab::{Element, Limits, MonoidDescriptor, Norm};

fn monoid() -> impl Strategy<Value = MonoidDescriptor> {
    prop_oneof![
        Just(MonoidDescriptor::Naturals),
        prop::sample::select(vec![(1u64, 3u64), (1, 4), (1, 5), (3, 6), (4, 6)])
            .prop_map(|(r, m)| MonoidDescriptor::congruence(r, m).unwrap()),
        prop::sample::select(vec![2u64, 3, 5]).prop_map(|d| MonoidDescriptor::quadratic(d).unwrap()),
    ]
}

/// Elements of `desc` with small components.
fn element_of(desc: MonoidDescriptor, size: u64) -> BoxedStrategy<Element> {
    match desc {
        MonoidDescriptor::Naturals => (1..=size).prop_map(move |n| desc.int(n).unwrap()).boxed(),
        MonoidDescriptor::Congruence { residue, modulus } => (0..=size / modulus + 1)
            .prop_map(move |k| {
                let n = if k == 0 { 1 } else { residue + modulus * (k - 1) };
                desc.int(n).unwrap()
            })
            .boxed(),
        MonoidDescriptor::Quadratic { .. } => {
            let side = (size as f64).sqrt() as u64 + 1;
            (0..=side, 0..=side)
                .prop_filter("not both zero", |(a, b)| *a + *b > 0)
                .prop_map(move |(a, b)| desc.quad(a, b).unwrap())
                .boxed()
        }
    }
}

fn monoid_with(count: usize, size: u64) -> impl Strategy<Value = (MonoidDescriptor, Vec<Element>)> {
    monoid().prop_flat_map(move |desc| {
        (Just(desc), prop::collection::vec(element_of(desc, size), count))
    })
}

fn quad(v: &[Element]) -> ProportionQuad {
    ProportionQuad::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn products_stay_in_the_monoid((desc, v) in monoid_with(2, 400)) {
        let p = v[0].mul(&v[1]).unwrap();
        prop_assert_eq!(p.monoid(), desc);
        prop_assert_eq!(p.clone(), v[1].mul(&v[0]).unwrap());
        prop_assert!(p.norm() >= v[0].norm());
        let back = parse_element(desc, &p.to_pair_form()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn multiplication_is_associative((_desc, v) in monoid_with(3, 100)) {
        let left = v[0].mul(&v[1]).unwrap().mul(&v[2]).unwrap();
        let right = v[0].mul(&v[1].mul(&v[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn division_undoes_multiplication((desc, v) in monoid_with(2, 400)) {
        let p = v[0].mul(&v[1]).unwrap();
        prop_assert_eq!(p.try_divide(&v[1]).unwrap(), Some(v[0].clone()));
        prop_assert!(v[0].divides(&p).unwrap());
        prop_assert_eq!(p.try_divide(&desc.identity()).unwrap(), Some(p.clone()));
    }

    #[test]
    fn divisors_match_a_product_scan((desc, v) in monoid_with(1, 150)) {
        let limits = Limits::default();
        let x = &v[0];
        let candidates = desc.enumerate_up_to(&x.norm(), &limits).unwrap();
        let scanned: Vec<Element> = candidates
            .iter()
            .filter(|d| candidates.iter().any(|e| d.mul(e).unwrap() == *x))
            .cloned()
            .collect();
        prop_assert_eq!(x.divisors(&limits).unwrap(), scanned);
    }

    #[test]
    fn factorizations_multiply_back((_desc, v) in monoid_with(1, 300)) {
        let limits = Limits::default();
        let all = factorizations(&v[0], &limits).unwrap();
        prop_assert!(!all.is_empty());
        for f in &all {
            prop_assert_eq!(f.product(), v[0].clone());
            for p in &f.factors {
                prop_assert!(is_irreducible(p, &limits).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_and_bounded(desc in monoid(), bound in 1u32..60) {
        let bound = Norm::integer(bound);
        let all = desc.enumerate_up_to(&bound, &Limits::default()).unwrap();
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(all.iter().all(|e| e.norm() <= bound));
        prop_assert_eq!(all.first(), Some(&desc.identity()));
    }

    #[test]
    fn pythagorean_implies_fraction_equality((_desc, v) in monoid_with(4, 120)) {
        let limits = Limits::default();
        let q = quad(&v);
        let witnesses = pythagorean_witnesses(&q, &limits).unwrap();
        for w in &witnesses {
            prop_assert!(w.verify(&q));
        }
        if !witnesses.is_empty() {
            prop_assert!(fraction_equal(&q));
        }
        let swapped = pythagorean(&q.swapped(), CanonicalPartsMode::AnyWitness, &limits).unwrap();
        prop_assert_eq!(swapped.is_some(), !witnesses.is_empty());
    }

    #[test]
    fn proportional_pairs_found_by_scaling((_desc, v) in monoid_with(4, 60)) {
        // a:b = (a·k):(b·k) always, taking x = 1, y = k.
        let limits = Limits::default();
        let (a, b, k) = (&v[0], &v[1], &v[2]);
        let q = ProportionQuad::new(a.clone(), b.clone(), a.mul(k).unwrap(), b.mul(k).unwrap()).unwrap();
        prop_assert!(pythagorean(&q, CanonicalPartsMode::AnyWitness, &limits).unwrap().is_some());
    }

    #[test]
    fn canonical_mode_agrees_when_gcds_exist(v in prop::collection::vec(1u64..=80, 4)) {
        let limits = Limits::default();
        let nat = MonoidDescriptor::Naturals;
        let e: Vec<Element> = v.iter().map(|&n| nat.int(n).unwrap()).collect();
        let q = quad(&e);
        let any = pythagorean(&q, CanonicalPartsMode::AnyWitness, &limits).unwrap();
        let canonical = pythagorean(&q, CanonicalPartsMode::CanonicalOnly, &limits).unwrap();
        prop_assert_eq!(any.is_some(), canonical.is_some());
        prop_assert_eq!(any.is_some(), v[0] * v[3] == v[1] * v[2]);
    }

    #[test]
    fn algebraic_gcd_is_symmetric_and_matches_euclid(a in 1u64..=300, b in 1u64..=300) {
        let limits = Limits::default();
        let nat = MonoidDescriptor::Naturals;
        let (x, y) = (nat.int(a).unwrap(), nat.int(b).unwrap());
        let g = algebraic_gcd(&x, &y, &limits).unwrap().algebraic_gcd.unwrap();
        prop_assert_eq!(g.clone(), algebraic_gcd(&y, &x, &limits).unwrap().algebraic_gcd.unwrap());
        prop_assert_eq!(g, nat.int(gcd(&a, &b).unwrap()).unwrap());
    }

    #[test]
    fn gcd_laws(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
        let g = gcd(&a, &b).unwrap();
        prop_assert_eq!(g, gcd(&b, &a).unwrap());
        prop_assert!(a % g == 0 && b % g == 0);
        if a % b != 0 {
            prop_assert_eq!(g, gcd(&b, &(a % b)).unwrap());
        }
        let cert = bezout(&a, &b).unwrap();
        prop_assert_eq!(cert.g, g);
        prop_assert_eq!(&cert.s * BigInt::from(a) + &cert.t * BigInt::from(b), BigInt::from(g));
    }

    #[test]
    fn subtractive_matches_quotient_remainder(a in 1u64..=3_000, b in 1u64..=3_000) {
        let trace = euclid_subtractive(a, b, &Limits::default()).unwrap();
        prop_assert_eq!(trace.result, gcd(&a, &b).unwrap());
        prop_assert!(porism_check(&a, &b).unwrap());
    }

    #[test]
    fn spec_text_round_trips(desc in monoid()) {
        prop_assert_eq!(parse_monoid_spec(&desc.to_string()).unwrap(), desc);
    }
}

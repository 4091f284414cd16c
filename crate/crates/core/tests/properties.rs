use proptest::prelude::*;
use weylchar::rootsys::{RootVector, WeightVector};
use weylchar::weyloracle::weyl_group_order;
use weylchar::{CartanDatum, Integer, LaurentPolynomial, Monomial, Specialization};

const BUILTIN: [&str; 16] = [
    "A1", "A2", "A3", "A5", "A8", "B2", "B3", "B8", "C2", "C4", "C8", "D4", "D8", "E6", "F4", "G2",
];

const NVARS: usize = 3;

fn poly(max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::array::uniform3(-4i64..=4), -9i64..=9), 0..max_terms).prop_map(|terms| {
        LaurentPolynomial::from_terms(NVARS, terms.into_iter().map(|(e, c)| (e.to_vec(), Integer::from(c))))
            .unwrap()
    })
}

fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    poly(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn big_poly() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::array::uniform3(-2i64..=2), any::<i64>()), 1..6).prop_map(|terms| {
        LaurentPolynomial::from_terms(NVARS, terms.into_iter().map(|(e, c)| (e.to_vec(), Integer::from(c))))
            .unwrap()
    })
}

fn datum() -> impl Strategy<Value = CartanDatum> {
    prop::sample::select(BUILTIN.to_vec()).prop_map(|n| CartanDatum::from_name(n).unwrap())
}

fn datum_and_labels(max: i64) -> impl Strategy<Value = (CartanDatum, Vec<i64>)> {
    datum().prop_flat_map(move |d| {
        let r = d.rank();
        (Just(d), prop::collection::vec(-max..=max, r))
    })
}

fn small_group(max: i64) -> impl Strategy<Value = (CartanDatum, Vec<i64>)> {
    prop::sample::select(vec!["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"])
        .prop_flat_map(move |n| {
            let d = CartanDatum::from_name(n).unwrap();
            let r = d.rank();
            (Just(d), prop::collection::vec(-max..=max, r))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_a_group(p in poly(8), q in poly(8), r in poly(8)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p + &(-&p), LaurentPolynomial::zero(NVARS));
    }

    #[test]
    fn multiplication_is_commutative_ring(p in poly(6), q in poly(6), r in poly(6)) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &LaurentPolynomial::one(NVARS), p.clone());
    }

    #[test]
    fn exact_division_inverts_product(p in poly(8), q in nonzero_poly(6)) {
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn binomial_division_matches_long_division(p in poly(8), alpha in prop::array::uniform3(-3i64..=3)) {
        let a = Monomial::from_slice(&alpha).unwrap();
        prop_assume!(!a.is_zero());
        let binomial = &LaurentPolynomial::from_monomial(NVARS, a, Integer::one()) - &LaurentPolynomial::one(NVARS);
        let product = &p * &binomial;
        prop_assert_eq!(product.exact_div_binomial(&a).unwrap(), p.clone());
        prop_assert_eq!(product.exact_div(&binomial).unwrap(), p);
    }

    #[test]
    fn inexact_division_is_reported(p in nonzero_poly(6), alpha in prop::array::uniform3(0i64..=2)) {
        let a = Monomial::from_slice(&alpha).unwrap();
        prop_assume!(!a.is_zero());
        let shifted = &p * &LaurentPolynomial::from_monomial(NVARS, a, Integer::one());
        // p·u^α − p + 1 leaves remainder 1 modulo u^α − 1
        let q = &(&shifted - &p) + &LaurentPolynomial::one(NVARS);
        prop_assert!(q.exact_div_binomial(&a).is_err());
    }

    #[test]
    fn specialization_is_a_ring_map(p in poly(6), q in poly(6), images in prop::collection::vec(prop::array::uniform2(-2i64..=2), NVARS)) {
        let s = Specialization::new(2, images.iter().map(|e| e.to_vec()).collect()).unwrap();
        let sp = p.specialize(&s).unwrap();
        let sq = q.specialize(&s).unwrap();
        prop_assert_eq!((&p + &q).specialize(&s).unwrap(), &sp + &sq);
        prop_assert_eq!((&p * &q).specialize(&s).unwrap(), &sp * &sq);
    }

    #[test]
    fn evaluation_at_one_is_a_ring_map(p in poly(6), q in poly(6)) {
        let (a, b) = (p.evaluate_at_one(), q.evaluate_at_one());
        prop_assert_eq!((&p + &q).evaluate_at_one(), &a + &b);
        prop_assert_eq!((&p * &q).evaluate_at_one(), &a * &b);
        prop_assert_eq!(p.specialize(&Specialization::at_one(NVARS)).unwrap().evaluate_at_one(), a);
    }

    #[test]
    fn large_coefficients_stay_exact(p in big_poly(), q in big_poly()) {
        let product = &p * &q;
        let expected = p.iter().fold(num_bigint::BigInt::from(0), |acc, (_, c)| acc + c.to_big())
            * q.iter().fold(num_bigint::BigInt::from(0), |acc, (_, c)| acc + c.to_big());
        prop_assert_eq!(product.evaluate_at_one().to_big(), expected);
        prop_assert_eq!(product.exact_div(&q).unwrap(), p);
    }

    #[test]
    fn json_round_trip(p in poly(8)) {
        prop_assert_eq!(LaurentPolynomial::from_json(&p.to_json()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn form_is_symmetric((d, x) in datum_and_labels(3), seed in any::<u64>()) {
        let r = d.rank();
        let y: Vec<i64> = (0..r).map(|i| ((seed >> (4 * i)) & 7) as i64 - 3).collect();
        let wx = WeightVector::from_labels(&x);
        let wy = WeightVector::from_labels(&y);
        prop_assert_eq!(d.bilinear(&wx, &wy).unwrap(), d.bilinear(&wy, &wx).unwrap());
        let rx = RootVector(x.clone());
        let ry = RootVector(y);
        prop_assert_eq!(d.bilinear(&rx, &ry).unwrap(), d.bilinear(&ry, &rx).unwrap());
    }

    #[test]
    fn labels_and_root_coordinates_round_trip((d, root) in datum_and_labels(4)) {
        let labels = d.root_to_labels(&root);
        let coords = d.labels_to_root_coords(&labels);
        let back: Vec<i64> = coords.iter().map(|c| {
            assert!(c.is_integer());
            c.to_integer()
        }).collect();
        prop_assert_eq!(back, root);
        let w = WeightVector::from_labels(&labels);
        prop_assert_eq!(d.root_coords_to_weight(&coords), w);
    }

    #[test]
    fn orbits_preserve_the_norm((d, labels) in small_group(2)) {
        let orbit = d.weyl_orbit_labels(&labels);
        let norm = |l: &[i64]| {
            let w = WeightVector::from_labels(l);
            d.bilinear(&w, &w).unwrap()
        };
        let n = norm(&labels);
        prop_assert!(orbit.iter().all(|w| norm(w) == n));
        prop_assert_eq!(weyl_group_order(&d) % orbit.len() as u64, 0);
        let dom = d.dominant_representative(&labels);
        prop_assert!(dom.iter().all(|&s| s >= 0));
        prop_assert!(orbit.contains(&dom));
        prop_assert!(orbit.contains(&d.antidominant_representative(&labels)));
    }
}

#[test]
fn positive_root_count_is_half_rank_times_coxeter_number() {
    for name in BUILTIN {
        let d = CartanDatum::from_name(name).unwrap();
        let n: usize = name[1..].parse().unwrap();
        let h = match &name[..1] {
            "A" => n + 1,
            "B" | "C" => 2 * n,
            "D" => 2 * n - 2,
            "G" => 6,
            _ => 12,
        };
        assert_eq!(d.coxeter_number() as usize, h, "{name}");
        assert_eq!(2 * d.positive_roots().len(), d.rank() * h, "{name}");
        assert_eq!(d.highest_root().height() as usize + 1, h, "{name}");
    }
}

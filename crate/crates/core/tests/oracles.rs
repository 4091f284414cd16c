mod common;

use std::collections::BTreeMap;
use weylchar::specialroots::denominator_product;
use weylchar::weyloracle::{direct_a_polynomial, enumerate_weyl};
use weylchar::{tensor_decompose, CartanDatum, Engine, Integer, LaurentPolynomial, Specialization};

const SMALL: [&str; 12] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"];

fn engine(name: &str) -> Engine {
    Engine::new(CartanDatum::from_name(name).unwrap()).unwrap()
}

/// All label vectors with entries in `0..=max`.
fn weights(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=max).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn tuples_are_weyl_elements() {
    for name in SMALL.iter().chain(&["F4"]) {
        let e = engine(name);
        let d = e.datum();
        let r = d.rank();
        let by_image: BTreeMap<Vec<Vec<i64>>, i8> = enumerate_weyl(d)
            .unwrap()
            .into_iter()
            .map(|g| {
                let images = (0..r)
                    .map(|i| {
                        let mut l = vec![0; r];
                        l[i] = 1;
                        g.apply(&l)
                    })
                    .collect();
                (images, g.det)
            })
            .collect();
        let sys = e.system();
        assert_eq!(sys.len(), by_image.len(), "{name}");
        for a in 0..sys.len() {
            let images: Vec<Vec<i64>> = sys
                .gammas(a)
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let mut l = d.root_to_labels(&g.0).iter().map(|x| -x).collect::<Vec<_>>();
                    l[i] += 1;
                    l
                })
                .collect();
            assert_eq!(by_image.get(&images), Some(&sys.signatures[a]), "{name} tuple {}", a + 1);
        }
    }
}

#[test]
fn a_polynomial_matches_weyl_sum() {
    for name in SMALL {
        let e = engine(name);
        let group = enumerate_weyl(e.datum()).unwrap();
        for hw in weights(e.datum().rank(), 1) {
            let (ours, _) = e.a_polynomial(&hw).unwrap();
            assert_eq!(ours, direct_a_polynomial(e.datum(), &group, &hw).unwrap(), "{name} {hw:?}");
        }
        assert_eq!(*e.denominator(), denominator_product(e.datum()), "{name}");
    }
}

#[test]
fn f4_denominator_shape() {
    let e = engine("F4");
    let a = e.denominator();
    assert_eq!(a.len(), 1152);
    let plus = a.iter().filter(|(_, c)| **c == Integer::one()).count();
    let minus = a.iter().filter(|(_, c)| **c == Integer::from(-1)).count();
    assert_eq!((plus, minus), (576, 576));
    let group = enumerate_weyl(e.datum()).unwrap();
    let direct = direct_a_polynomial(e.datum(), &group, &[0, 0, 0, 1]).unwrap();
    assert_eq!(direct.exact_div(a).unwrap().evaluate_at_one(), Integer::from(26));
}

#[test]
fn division_is_exact_for_small_weights() {
    for name in SMALL {
        let e = engine(name);
        let max = 3;
        for hw in weights(e.datum().rank(), max) {
            let c = e.character(&hw).unwrap();
            assert!(c.polynomial.iter().all(|(_, x)| x.is_positive()), "{name} {hw:?}");
        }
    }
}

#[test]
fn f4_division_is_exact() {
    let e = engine("F4");
    // uncached: the larger characters run to a million terms each
    for hw in weights(4, 3) {
        let c = e.compute_character(&hw).unwrap();
        assert!(c.polynomial.iter().all(|(_, x)| x.is_positive()), "{hw:?}");
    }
}

#[test]
fn multiplicities_match_freudenthal() {
    let cases: &[(&str, &[&[i64]])] = &[
        ("A2", &[&[1, 1], &[2, 1], &[3, 0], &[2, 2]]),
        ("B2", &[&[1, 1], &[2, 0], &[0, 3], &[2, 2]]),
        ("C3", &[&[1, 0, 1], &[0, 2, 0], &[1, 1, 1]]),
        ("G2", &[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]),
        ("D4", &[&[0, 1, 0, 0], &[1, 0, 1, 1]]),
        ("F4", &[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 1], &[0, 1, 0, 0], &[1, 0, 0, 1]]),
    ];
    for (name, hws) in cases {
        let e = engine(name);
        for hw in *hws {
            let ours: BTreeMap<Vec<i64>, i64> = e
                .character(hw)
                .unwrap()
                .multiplicities
                .iter()
                .map(|(w, m)| (w.clone(), m.to_i64().unwrap()))
                .collect();
            assert_eq!(ours, common::freudenthal(e.datum(), hw), "{name} {hw:?}");
        }
    }
    let f4 = engine("F4");
    assert_eq!(f4.multiplicity(&[1, 0, 0, 0], &[0, 0, 0, 0]).unwrap(), Integer::from(4));
}

#[test]
fn orbit_sums_give_dimension() {
    for (name, hw) in [("F4", vec![0, 0, 1, 1]), ("B3", vec![1, 1, 1]), ("G2", vec![2, 3])] {
        let e = engine(name);
        let c = e.character(&hw).unwrap();
        let mut total = Integer::zero();
        for (w, m) in &c.multiplicities {
            let orbit = e.datum().weyl_orbit_labels(w).len() as i64;
            total.add_mul(m, &Integer::from(orbit));
        }
        assert_eq!(total, c.dimension, "{name} {hw:?}");
    }
}

#[test]
fn specialization_commutes_with_division() {
    let e = engine("F4");
    let (merge, _) = Specialization::merge("x,x,y,y", 4).unwrap();
    let den = e.denominator().specialize(&merge).unwrap();
    for hw in weights(4, 1) {
        let (num, _) = e.a_polynomial(&hw).unwrap();
        let q = num.specialize(&merge).unwrap().exact_div(&den).unwrap();
        assert_eq!(q, e.character(&hw).unwrap().polynomial.specialize(&merge).unwrap(), "{hw:?}");
    }
}

#[test]
fn tensor_products_reconstruct() {
    let e = engine("F4");
    let cases: [(&[i64], &[i64]); 3] = [
        (&[1, 0, 0, 0], &[0, 0, 1, 1]),
        (&[0, 0, 0, 1], &[0, 0, 0, 1]),
        (&[0, 0, 1, 0], &[1, 0, 0, 1]),
    ];
    for (a, b) in cases {
        let d = tensor_decompose(&e, a, b).unwrap();
        assert_eq!(d, {
            let mut swapped = tensor_decompose(&e, b, a).unwrap();
            swapped.factors = (a.to_vec(), b.to_vec());
            swapped
        });
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        assert_eq!(d.multiplicity(&sum), Integer::one());
        let ca = e.character(a).unwrap();
        let cb = e.character(b).unwrap();
        let product = &ca.laurent_form(e.datum()).unwrap() * &cb.laurent_form(e.datum()).unwrap();
        let mut rebuilt = LaurentPolynomial::zero(4);
        for (w, m) in &d.constituents {
            let c = e.character(w).unwrap();
            rebuilt = &rebuilt + &c.laurent_form(e.datum()).unwrap().scale(m);
        }
        assert_eq!(rebuilt, product, "{a:?} ⊗ {b:?}");
    }
}

#[test]
fn tensor_with_trivial_module() {
    for name in ["A3", "F4"] {
        let e = engine(name);
        let r = e.datum().rank();
        let hw: Vec<i64> = (0..r as i64).map(|i| i % 2).collect();
        let d = tensor_decompose(&e, &vec![0; r], &hw).unwrap();
        assert_eq!(d.constituents, vec![(hw, Integer::one())]);
    }
}

#[test]
fn larger_groups_build() {
    let e6 = engine("E6");
    assert_eq!(e6.system().len(), 51840);
    assert_eq!(e6.dimension(&[1, 0, 0, 0, 0, 0]).unwrap(), Integer::from(27));
    assert_eq!(e6.dimension(&[0, 1, 0, 0, 0, 0]).unwrap(), Integer::from(78));
    let b8 = CartanDatum::from_name("B8").unwrap();
    assert!(matches!(Engine::new(b8), Err(weylchar::Error::GroupTooLarge(_))));
}

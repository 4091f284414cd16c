//! Freudenthal's recursion, as an independent source of weight
//! multiplicities.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use weylchar::{CartanDatum, Rational, WeightVector};

fn form(d: &CartanDatum, a: &[i64], b: &[i64]) -> Rational {
    d.bilinear(&WeightVector::from_labels(a), &WeightVector::from_labels(b))
        .unwrap()
}

fn add(a: &[i64], b: &[i64], k: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

/// Dominant weights of V(Λ), by repeatedly subtracting positive roots.
pub fn dominant_weights(d: &CartanDatum, hw: &[i64]) -> BTreeSet<Vec<i64>> {
    let roots: Vec<Vec<i64>> = d.positive_roots().iter().map(|a| d.root_to_labels(&a.0)).collect();
    let mut seen = BTreeSet::from([hw.to_vec()]);
    let mut queue = VecDeque::from([hw.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        for a in &roots {
            let nu = add(&mu, a, -1);
            if nu.iter().all(|&x| x >= 0) && seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    seen
}

/// `m_Λ(μ)` for every dominant μ.
pub fn freudenthal(d: &CartanDatum, hw: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let r = d.rank();
    let rho = vec![1; r];
    let roots: Vec<Vec<i64>> = d.positive_roots().iter().map(|a| d.root_to_labels(&a.0)).collect();
    let lr = add(hw, &rho, 1);
    let top = form(d, &lr, &lr);
    let depth = |mu: &[i64]| -> Rational {
        d.labels_to_root_coords(&add(hw, mu, -1)).into_iter().sum()
    };
    let mut order: Vec<Vec<i64>> = dominant_weights(d, hw).into_iter().collect();
    order.sort_by_key(|mu| depth(mu));
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for mu in order {
        if mu == hw {
            mult.insert(mu, 1);
            continue;
        }
        let mut sum = Rational::from_integer(0);
        for a in &roots {
            for k in 1.. {
                let nu = add(&mu, a, k);
                let m = mult.get(&d.dominant_representative(&nu)).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                sum += form(d, &nu, a) * m;
            }
        }
        let mr = add(&mu, &rho, 1);
        let m = sum * 2 / (top - form(d, &mr, &mr));
        assert!(m.is_integer(), "non-integral multiplicity {m} at {mu:?}");
        mult.insert(mu, m.to_integer());
    }
    mult.retain(|_, m| *m > 0);
    mult
}

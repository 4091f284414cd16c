//! Brute-force reference: explicit Weyl group enumeration and the literal
//! signed sum `Σ_σ ε(σ) e^{σ(ρ+Λ)}`.
//!
//! Deliberately naive. It exists to check the special-root construction and
//! is only practical for small groups.

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::rootsys::{CartanDatum, Rational};
use crate::integer::Integer;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use std::collections::VecDeque;

pub const MAX_GROUP_ORDER: usize = 10_000_000;

/// A Weyl group element acting on Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Simple reflections, applied right to left: `s_{w[0]} ∘ s_{w[1]} ∘ …`.
    pub word: Vec<u8>,
    /// Row-major `r × r` integer matrix on the weight lattice.
    pub action: Vec<i64>,
    pub det: i8,
}

impl WeylElement {
    pub fn rank(&self) -> usize {
        (0..=self.action.len()).find(|r| r * r == self.action.len()).unwrap_or(0)
    }

    pub fn apply(&self, labels: &[i64]) -> Vec<i64> {
        let r = labels.len();
        (0..r)
            .map(|i| (0..r).map(|j| self.action[i * r + j] * labels[j]).sum())
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> Vec<i64> {
        let r = self.rank();
        let mut m = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.action[i * r + k];
                if a != 0 {
                    for j in 0..r {
                        m[i * r + j] += a * other.action[k * r + j];
                    }
                }
            }
        }
        m
    }
}

fn reflection_matrix(datum: &CartanDatum, i: usize) -> Vec<i64> {
    let r = datum.rank();
    let a = datum.cartan();
    let mut m = vec![0; r * r];
    for row in 0..r {
        m[row * r + row] = 1;
        // m' = m − mᵢ·(column i of A)
        m[row * r + i] -= a[row][i];
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x != 0 {
                for j in 0..r {
                    m[i * r + j] += x * b[k * r + j];
                }
            }
        }
    }
    m
}

/// All elements of W, by breadth-first closure under left multiplication by
/// simple reflections, deduplicated on the action matrix.
pub fn enumerate_weyl(datum: &CartanDatum) -> Result<Vec<WeylElement>> {
    let r = datum.rank();
    let gens: Vec<Vec<i64>> = (0..r).map(|i| reflection_matrix(datum, i)).collect();
    let mut identity = vec![0; r * r];
    for i in 0..r {
        identity[i * r + i] = 1;
    }
    let mut index: FxHashMap<Vec<i64>, usize> = FxHashMap::default();
    let mut elements = vec![WeylElement {
        word: Vec::new(),
        action: identity.clone(),
        det: 1,
    }];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let action = mat_mul(g, &elements[k].action, r);
            if index.contains_key(&action) {
                continue;
            }
            if elements.len() >= MAX_GROUP_ORDER {
                return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
            }
            let mut word = Vec::with_capacity(elements[k].word.len() + 1);
            word.push(i as u8);
            word.extend_from_slice(&elements[k].word);
            let det = -elements[k].det;
            index.insert(action.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(WeylElement { word, action, det });
        }
    }
    Ok(elements)
}

/// |W| from the exponents of W, read off the height distribution of Φ⁺:
/// the number of exponents ≥ k equals the number of positive roots of
/// height k, and |W| = ∏ (mᵢ + 1).
pub fn weyl_group_order(datum: &CartanDatum) -> u64 {
    let max_h = datum.highest_root().height() as usize;
    let mut by_height = vec![0u64; max_h + 2];
    for a in datum.positive_roots() {
        by_height[a.height() as usize] += 1;
    }
    let mut order = 1u64;
    for k in 1..=max_h {
        let with_exponent_k = by_height[k] - by_height[k + 1];
        order *= (k as u64 + 1).pow(with_exponent_k as u32);
    }
    order
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[i64], r: usize) -> i64 {
    let mut a: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..r {
        if a[k * r + k] == 0 {
            let Some(p) = (k + 1..r).find(|&i| a[i * r + k] != 0) else {
                return 0;
            };
            for j in 0..r {
                a.swap(k * r + j, p * r + j);
            }
            sign = -sign;
        }
        for i in k + 1..r {
            for j in k + 1..r {
                a[i * r + j] = (a[i * r + j] * a[k * r + k] - a[i * r + k] * a[k * r + j]) / prev;
            }
        }
        prev = a[k * r + k];
    }
    (sign * a[r * r - 1]) as i64
}

/// `Σ_σ det(σ) u^{c(σ(ρ+Λ)) − c(w₀(ρ+Λ))}`, where `c` is the simple-root
/// coordinate map; the shift by the lowest weight makes every exponent a
/// nonnegative integer, matching the normalization of the special-root
/// construction.
pub fn direct_a_polynomial(
    datum: &CartanDatum,
    group: &[WeylElement],
    highest: &[i64],
) -> Result<LaurentPolynomial> {
    let r = datum.rank();
    datum.check_len(highest.len())?;
    let shifted: Vec<i64> = highest.iter().map(|s| s + 1).collect();
    let images: Vec<(Vec<Rational>, i8)> = group
        .iter()
        .map(|g| (datum.labels_to_root_coords(&g.apply(&shifted)), g.det))
        .collect();
    let mut low = vec![Rational::zero(); r];
    for (i, l) in low.iter_mut().enumerate() {
        *l = images.iter().map(|(c, _)| c[i]).min().unwrap();
    }
    let terms = images
        .into_iter()
        .map(|(c, det)| {
            let e: Option<Vec<i64>> = c
                .iter()
                .zip(&low)
                .map(|(x, l)| {
                    let d = x - l;
                    d.is_integer().then(|| d.to_integer())
                })
                .collect();
            e.map(|e| (e, Integer::from(det as i64)))
                .ok_or_else(|| Error::Inconsistent("non-integral orbit difference".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPolynomial::from_terms(r, terms)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for (name, order) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("F4", 1152)] {
            let d = CartanDatum::from_name(name).unwrap();
            let w = enumerate_weyl(&d).unwrap();
            assert_eq!(w.len(), order, "{name}");
            assert_eq!(weyl_group_order(&d), order as u64, "{name}");
        }
        for (name, order) in [("E6", 51840u64), ("B8", 10_321_920), ("D8", 5_160_960), ("A8", 362_880)] {
            assert_eq!(weyl_group_order(&CartanDatum::from_name(name).unwrap()), order);
        }
    }

    #[test]
    fn parity_matches_determinant() {
        let d = CartanDatum::from_name("B3").unwrap();
        for g in enumerate_weyl(&d).unwrap() {
            assert_eq!(determinant(&g.action, 3), g.det as i64);
            assert_eq!(g.det, if g.word.len() % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn closure_under_composition() {
        let d = CartanDatum::from_name("G2").unwrap();
        let w = enumerate_weyl(&d).unwrap();
        let set: std::collections::HashSet<_> = w.iter().map(|g| g.action.clone()).collect();
        for a in &w {
            for b in &w {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn a1_direct_sum() {
        let d = CartanDatum::from_name("A1").unwrap();
        let w = enumerate_weyl(&d).unwrap();
        let p = direct_a_polynomial(&d, &w, &[1]).unwrap();
        let expected = LaurentPolynomial::from_terms(
            1,
            [(vec![2], Integer::one()), (vec![0], Integer::from(-1))],
        )
        .unwrap();
        assert_eq!(p, expected);
    }
}

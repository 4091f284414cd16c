//! Tensor product decomposition by peeling off highest weights.

use crate::characters::{integer_json, integral_coords, shifted_labels, Engine};
use crate::error::{Error, Result};
use crate::integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: (Vec<i64>, Vec<i64>),
    /// Highest weights with multiplicities, in decreasing graded-lex order
    /// of their Dynkin labels.
    pub constituents: Vec<(Vec<i64>, Integer)>,
    /// `dim V(Λ₁) · dim V(Λ₂)`, already matched against the constituents.
    pub dimension: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentJson {
    pub w: Vec<i64>,
    pub mult: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub lhs: Vec<Vec<i64>>,
    pub rhs: Vec<ConstituentJson>,
    pub dim_check: Value,
}

impl Decomposition {
    pub fn multiplicity(&self, w: &[i64]) -> Integer {
        self.constituents
            .iter()
            .find(|(v, _)| v == w)
            .map_or_else(Integer::zero, |(_, m)| m.clone())
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            lhs: vec![self.factors.0.clone(), self.factors.1.clone()],
            rhs: self
                .constituents
                .iter()
                .map(|(w, m)| ConstituentJson {
                    w: w.clone(),
                    mult: integer_json(m),
                })
                .collect(),
            dim_check: integer_json(&self.dimension),
        }
    }
}

fn graded_lex_desc(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
    sb.cmp(&sa).then_with(|| b.cmp(a))
}

/// Multiplies the two characters and repeatedly subtracts the character of
/// the highest remaining weight.
///
/// The product is Weyl-invariant, so its term of largest total degree is
/// always dominant: a non-dominant weight has a reflection image of larger
/// height in the same support.
pub fn tensor_decompose(engine: &Engine, l1: &[i64], l2: &[i64]) -> Result<Decomposition> {
    let datum = engine.datum();
    let c1 = engine.character(l1)?;
    let c2 = engine.character(l2)?;
    let mut rest = c1.polynomial.checked_mul(&c2.polynomial)?;
    let lowest: Vec<i64> = c1.lowest.iter().zip(&c2.lowest).map(|(a, b)| a + b).collect();
    let mut constituents: Vec<(Vec<i64>, Integer)> = Vec::new();
    let mut steps = 0;
    while let Some((top, coeff)) = rest.leading_term() {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Tensor(format!("no termination after {MAX_STEPS} steps")));
        }
        let coeff = coeff.clone();
        let mu = shifted_labels(datum, &lowest, &top);
        if mu.iter().any(|&m| m < 0) {
            return Err(Error::Tensor(format!("highest remaining weight {mu:?} is not dominant")));
        }
        if !coeff.is_positive() {
            return Err(Error::Tensor(format!("weight {mu:?} has coefficient {coeff}")));
        }
        let ch = engine.character(&mu)?;
        let diff: Vec<i64> = ch.lowest.iter().zip(&lowest).map(|(a, b)| a - b).collect();
        let shift = integral_coords(&datum.labels_to_root_coords(&diff)).ok_or_else(|| {
            Error::Tensor(format!("{mu:?} is not in the root-lattice class of the product"))
        })?;
        rest.sub_scaled_shifted(&ch.polynomial, &coeff, &shift)?;
        match constituents.iter_mut().find(|(w, _)| *w == mu) {
            Some((_, m)) => *m += &coeff,
            None => constituents.push((mu, coeff)),
        }
    }
    constituents.sort_by(|a, b| graded_lex_desc(&a.0, &b.0));
    let dimension = &c1.dimension * &c2.dimension;
    let mut total = Integer::zero();
    for (w, m) in &constituents {
        total.add_mul(m, &engine.dimension(w)?);
    }
    if total != dimension {
        return Err(Error::Inconsistent(format!(
            "constituent dimensions sum to {total}, expected {dimension}"
        )));
    }
    Ok(Decomposition {
        factors: (l1.to_vec(), l2.to_vec()),
        constituents,
        dimension,
    })
}

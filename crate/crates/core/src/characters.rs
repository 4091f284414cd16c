//! Characters as exact quotients `A(ρ+Λ) / A(ρ)`.
//!
//! Every polynomial here is stored with its lowest weight at the origin: the
//! exponent vector `e` of a term stands for the weight whose simple-root
//! coordinates are `c(lowest) + e`. With that convention the trivial
//! character is the constant 1 and all exponents are nonnegative.

use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::laurent::{LaurentPolynomial, Monomial, PolyJson};
use crate::rootsys::{CartanDatum, Rational};
use crate::specialroots::{denominator_product, GammaSystem, GammaSystemJson};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterResult {
    pub highest: Vec<i64>,
    /// Dynkin labels of the lowest weight `w₀Λ`.
    pub lowest: Vec<i64>,
    pub polynomial: LaurentPolynomial,
    /// Dominant weights with their multiplicities, highest first.
    pub multiplicities: Vec<(Vec<i64>, Integer)>,
    pub dimension: Integer,
}

impl CharacterResult {
    /// Dynkin labels of the weight carried by exponent `e`.
    pub fn weight_of(&self, datum: &CartanDatum, e: &Monomial) -> Vec<i64> {
        shifted_labels(datum, &self.lowest, e)
    }

    /// Every weight of the module with its multiplicity.
    pub fn weights(&self, datum: &CartanDatum) -> Vec<(Vec<i64>, Integer)> {
        self.polynomial
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| (self.weight_of(datum, &m), c.clone()))
            .collect()
    }

    /// `m_Λ(μ)`, read at the dominant representative of μ.
    pub fn multiplicity(&self, datum: &CartanDatum, mu: &[i64]) -> Integer {
        let dominant = datum.dominant_representative(mu);
        self.multiplicities
            .iter()
            .find(|(w, _)| *w == dominant)
            .map_or_else(Integer::zero, |(_, m)| m.clone())
    }

    /// The character as a genuine Laurent polynomial in `uᵢ = e^{αᵢ}`;
    /// `None` when Λ is not in the root lattice.
    pub fn laurent_form(&self, datum: &CartanDatum) -> Option<LaurentPolynomial> {
        let offset = integral_coords(&datum.labels_to_root_coords(&self.lowest))?;
        Some(self.polynomial.shift(&offset))
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            hw: self.highest.clone(),
            dim: integer_json(&self.dimension),
            mults: self
                .multiplicities
                .iter()
                .map(|(w, m)| MultJson {
                    w: w.clone(),
                    m: integer_json(m),
                })
                .collect(),
            poly: self.polynomial.to_json(),
        }
    }

    /// Rebuilds a result and re-derives everything that can be re-derived;
    /// the JSON must agree with it.
    pub fn from_json(datum: &CartanDatum, j: &CharacterJson) -> Result<Self> {
        check_dominant(datum, &j.hw)?;
        let polynomial = LaurentPolynomial::from_json(&j.poly)?;
        if polynomial.nvars() != datum.rank() {
            return Err(Error::DimensionMismatch {
                expected: datum.rank(),
                got: polynomial.nvars(),
            });
        }
        let result = assemble(datum, &j.hw, polynomial)?;
        if result.to_json() != *j {
            return Err(Error::Inconsistent(format!(
                "character JSON for {:?} does not match its polynomial",
                j.hw
            )));
        }
        Ok(result)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultJson {
    pub w: Vec<i64>,
    pub m: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub hw: Vec<i64>,
    pub dim: Value,
    pub mults: Vec<MultJson>,
    pub poly: PolyJson,
}

/// A JSON number when it fits in `u64`/`i64`, a decimal string otherwise.
pub fn integer_json(n: &Integer) -> Value {
    match (n.to_i64(), n.to_u64()) {
        (Some(v), _) => Value::from(v),
        (None, Some(v)) => Value::from(v),
        _ => Value::String(n.to_string()),
    }
}

pub(crate) fn shifted_labels(datum: &CartanDatum, base: &[i64], e: &Monomial) -> Vec<i64> {
    let r = datum.rank();
    let a = datum.cartan();
    (0..r)
        .map(|i| base[i] + (0..r).map(|j| a[i][j] * e.get(j)).sum::<i64>())
        .collect()
}

pub(crate) fn integral_coords(c: &[Rational]) -> Option<Monomial> {
    let v: Option<Vec<i64>> = c
        .iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect();
    Monomial::from_slice(&v?).ok()
}

pub fn check_dominant(datum: &CartanDatum, labels: &[i64]) -> Result<()> {
    datum.check_len(labels.len())?;
    if labels.iter().any(|&s| s < 0) {
        return Err(Error::NotDominant(
            labels.iter().map(ToString::to_string).collect(),
        ));
    }
    Ok(())
}

/// `∏_{α∈Φ⁺} (ρ+Λ, α) / (ρ, α)`, exactly.
pub fn weyl_dimension(datum: &CartanDatum, highest: &[i64]) -> Result<Integer> {
    check_dominant(datum, highest)?;
    let norms = datum.norms();
    let pair = |labels: &dyn Fn(usize) -> i64, root: &[i64]| -> BigRational {
        let v: Rational = root
            .iter()
            .enumerate()
            .map(|(k, &n)| norms[k] * (n * labels(k)))
            .sum();
        BigRational::new(BigInt::from(*v.numer()), BigInt::from(*v.denom()))
    };
    let mut dim = BigRational::one();
    for a in datum.positive_roots() {
        let num = pair(&|k| highest[k] + 1, &a.0);
        let den = pair(&|_| 1, &a.0);
        dim *= num / den;
    }
    if !dim.is_integer() || !dim.is_positive() {
        return Err(Error::Inconsistent(format!(
            "dimension product for {highest:?} is {dim}"
        )));
    }
    Ok(Integer::from(dim.to_integer()))
}

fn assemble(datum: &CartanDatum, highest: &[i64], polynomial: LaurentPolynomial) -> Result<CharacterResult> {
    let lowest = datum.antidominant_representative(highest);
    if polynomial.coeff(&Monomial::zero()) != Integer::one() {
        return Err(Error::Inconsistent(format!(
            "character of {highest:?} does not have its lowest weight at the origin"
        )));
    }
    let mut multiplicities = Vec::new();
    for (m, c) in polynomial.sorted_terms() {
        if !c.is_positive() {
            return Err(Error::Inconsistent(format!(
                "character of {highest:?} has coefficient {c}"
            )));
        }
        let w = shifted_labels(datum, &lowest, &m);
        if w.iter().all(|&x| x >= 0) {
            multiplicities.push((w, c.clone()));
        }
    }
    if multiplicities.first().map(|(w, m)| (w.as_slice(), m.clone()))
        != Some((highest, Integer::one()))
    {
        return Err(Error::Inconsistent(format!(
            "highest term of the character of {highest:?} is not its highest weight"
        )));
    }
    let at_one = polynomial.evaluate_at_one();
    let closed = weyl_dimension(datum, highest)?;
    if at_one != closed {
        return Err(Error::Inconsistent(format!(
            "dimension of {highest:?}: polynomial gives {at_one}, product formula gives {closed}"
        )));
    }
    Ok(CharacterResult {
        highest: highest.to_vec(),
        lowest,
        polynomial,
        multiplicities,
        dimension: at_one,
    })
}

/// Owns a root system, its tuple system and the normalized `A(ρ)`, and
/// memoizes characters.
pub struct Engine {
    datum: CartanDatum,
    system: GammaSystem,
    denominator: LaurentPolynomial,
    cache: RwLock<FxHashMap<Vec<i64>, Arc<CharacterResult>>>,
    disk: Option<PathBuf>,
}

impl Engine {
    pub fn new(datum: CartanDatum) -> Result<Self> {
        let system = GammaSystem::build(&datum)?;
        Self::from_parts(datum, system, None)
    }

    /// Like [`Engine::new`], but keeps the tuple system and computed
    /// characters as JSON under `dir`.
    pub fn with_cache_dir(datum: CartanDatum, dir: &Path) -> Result<Self> {
        let root = dir.join(format!(
            "{}-{}",
            datum
                .name()
                .chars()
                .filter(char::is_ascii_alphanumeric)
                .collect::<String>(),
            datum.fingerprint()
        ));
        let path = root.join("system.json");
        let cached = fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str::<GammaSystemJson>(&s).ok())
            .and_then(|j| GammaSystem::from_json(&datum, &j).ok());
        let system = match cached {
            Some(s) => s,
            None => {
                let s = GammaSystem::build(&datum)?;
                let _ = write_atomic(&path, &serde_json::to_string(&s.to_json(&datum))?);
                s
            }
        };
        Self::from_parts(datum, system, Some(root))
    }

    fn from_parts(datum: CartanDatum, system: GammaSystem, disk: Option<PathBuf>) -> Result<Self> {
        let mut engine = Engine {
            denominator: LaurentPolynomial::zero(datum.rank()),
            datum,
            system,
            cache: RwLock::new(FxHashMap::default()),
            disk,
        };
        let (denominator, _) = engine.a_polynomial(&vec![0; engine.datum.rank()])?;
        if denominator != denominator_product(&engine.datum) {
            return Err(Error::Inconsistent(
                "signed tuple sum A(ρ) differs from ∏(u^α − 1)".into(),
            ));
        }
        engine.denominator = denominator;
        Ok(engine)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn system(&self) -> &GammaSystem {
        &self.system
    }

    /// Normalized `A(ρ)`.
    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    /// `Σ_A ε_A u^{ξ(A)}`, together with the simple-root coordinates of the
    /// lowest orbit point `w₀(ρ+Λ)` that was subtracted from the exponents.
    pub fn a_polynomial(&self, highest: &[i64]) -> Result<(LaurentPolynomial, Vec<Rational>)> {
        check_dominant(&self.datum, highest)?;
        let xi = self.system.exponents(&self.datum, highest)?;
        let mut p = LaurentPolynomial::zero(self.datum.rank());
        for (m, &s) in xi.vectors.iter().zip(&self.system.signatures) {
            p.add_term(*m, &Integer::from(s as i64));
        }
        if p.len() != xi.vectors.len() {
            return Err(Error::Inconsistent(format!(
                "exponents of A(ρ+{highest:?}) collide"
            )));
        }
        Ok((p, xi.offset))
    }

    pub fn character(&self, highest: &[i64]) -> Result<Arc<CharacterResult>> {
        check_dominant(&self.datum, highest)?;
        if let Some(c) = self.cache.read().expect("cache lock").get(highest) {
            return Ok(Arc::clone(c));
        }
        let result = match self.load(highest) {
            Some(c) => c,
            None => {
                let c = self.compute_character(highest)?;
                self.store(&c);
                c
            }
        };
        let result = Arc::new(result);
        self.cache
            .write()
            .expect("cache lock")
            .entry(highest.to_vec())
            .or_insert_with(|| Arc::clone(&result));
        Ok(result)
    }

    /// Computes the character without reading or filling either cache.
    pub fn compute_character(&self, highest: &[i64]) -> Result<CharacterResult> {
        check_dominant(&self.datum, highest)?;
        let (mut q, _) = self.a_polynomial(highest)?;
        // A(ρ) = ∏(u^α − 1), checked at construction
        for a in self.datum.positive_roots() {
            q = q.exact_div_binomial(&Monomial::from_slice(&a.0)?)?;
        }
        assemble(&self.datum, highest, q)
    }

    /// The character by long division of `A(ρ+Λ)` by the expanded `A(ρ)`;
    /// slower than [`Engine::character`], which divides one factor
    /// `u^α − 1` at a time, and kept as a cross-check.
    pub fn character_by_long_division(&self, highest: &[i64]) -> Result<CharacterResult> {
        let (num, _) = self.a_polynomial(highest)?;
        assemble(&self.datum, highest, num.exact_div(&self.denominator)?)
    }

    /// Dimension by evaluating the character at 1, checked against the
    /// product formula.
    pub fn dimension(&self, highest: &[i64]) -> Result<Integer> {
        Ok(self.character(highest)?.dimension.clone())
    }

    pub fn multiplicity(&self, highest: &[i64], mu: &[i64]) -> Result<Integer> {
        self.datum.check_len(mu.len())?;
        Ok(self.character(highest)?.multiplicity(&self.datum, mu))
    }

    fn char_path(&self, highest: &[i64]) -> Option<PathBuf> {
        let key: Vec<String> = highest.iter().map(ToString::to_string).collect();
        Some(self.disk.as_ref()?.join("characters").join(format!("{}.json", key.join("_"))))
    }

    fn load(&self, highest: &[i64]) -> Option<CharacterResult> {
        let s = fs::read_to_string(self.char_path(highest)?).ok()?;
        let j: CharacterJson = serde_json::from_str(&s).ok()?;
        if j.hw != highest {
            return None;
        }
        CharacterResult::from_json(&self.datum, &j).ok()
    }

    fn store(&self, c: &CharacterResult) {
        if let Some(path) = self.char_path(&c.highest) {
            if let Ok(s) = serde_json::to_string(&c.to_json()) {
                let _ = write_atomic(&path, &s);
            }
        }
    }
}

fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_characters() {
        let e = Engine::new(CartanDatum::from_name("A1").unwrap()).unwrap();
        let c = e.character(&[3]).unwrap();
        assert_eq!(c.polynomial.len(), 4);
        assert!(c.polynomial.iter().all(|(_, x)| *x == Integer::one()));
        assert_eq!(c.dimension, Integer::from(4));
        assert_eq!(c.lowest, vec![-3]);
        assert!(c.laurent_form(e.datum()).is_none());
        let c2 = e.character(&[2]).unwrap();
        let lf = c2.laurent_form(e.datum()).unwrap();
        assert_eq!(lf.coeff_of(&[-1]), Integer::one());
        assert_eq!(lf.coeff_of(&[1]), Integer::one());
        assert_eq!(e.character(&[0]).unwrap().polynomial, LaurentPolynomial::one(1));
    }

    #[test]
    fn f4_fundamental_dimensions() {
        let f4 = CartanDatum::from_name("F4").unwrap();
        for (hw, d) in [([1, 0, 0, 0], 52), ([0, 1, 0, 0], 1274), ([0, 0, 1, 0], 273), ([0, 0, 0, 1], 26)] {
            assert_eq!(weyl_dimension(&f4, &hw).unwrap(), Integer::from(d));
        }
        let e = Engine::new(f4).unwrap();
        assert_eq!(e.dimension(&[0, 0, 0, 1]).unwrap(), Integer::from(26));
        for hw in [[1, 0, 0, 0], [0, 0, 1, 1], [1, 1, 0, 1]] {
            assert_eq!(e.character_by_long_division(&hw).unwrap(), *e.character(&hw).unwrap());
        }
        assert_eq!(e.multiplicity(&[1, 0, 0, 0], &[0, 0, 0, 0]).unwrap(), Integer::from(4));
        assert_eq!(e.multiplicity(&[1, 0, 0, 0], &[1, 0, 0, 0]).unwrap(), Integer::one());
        assert_eq!(e.multiplicity(&[1, 0, 0, 0], &[3, -1, 0, 0]).unwrap(), Integer::zero());
    }

    #[test]
    fn rejects_non_dominant() {
        let e = Engine::new(CartanDatum::from_name("A2").unwrap()).unwrap();
        assert!(matches!(e.character(&[1, -1]), Err(Error::NotDominant(_))));
        assert!(matches!(e.character(&[1]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip_and_disk_cache() {
        let dir = tempfile::tempdir().unwrap();
        let b2 = CartanDatum::from_name("B2").unwrap();
        let e = Engine::with_cache_dir(b2.clone(), dir.path()).unwrap();
        let c = e.character(&[1, 1]).unwrap();
        let j = serde_json::to_string(&c.to_json()).unwrap();
        let back: CharacterJson = serde_json::from_str(&j).unwrap();
        assert_eq!(CharacterResult::from_json(&b2, &back).unwrap(), *c);
        let again = Engine::with_cache_dir(b2, dir.path()).unwrap();
        assert_eq!(*again.character(&[1, 1]).unwrap(), *c);
    }
}

//! Special roots and the tuple system that replaces the Weyl group.
//!
//! For each fundamental weight `λᵢ` the table `γᵢ(1..|Iᵢ|)` lists the
//! elements of the positive root lattice with `λᵢ − γᵢ` on the Weyl orbit of
//! `λᵢ`. A tuple `(I₁, …, I_r)` is admissible when
//! `(λᵢ − γᵢ(Iᵢ), λⱼ − γⱼ(Iⱼ)) = (λᵢ, λⱼ)` for every pair `i, j`; there are
//! exactly |W| admissible tuples, one per Weyl element. Each tuple's sign is
//! read off the expansion of `∏_{α∈Φ⁺}(e^α − 1)`.

use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::laurent::{LaurentPolynomial, Monomial};
use crate::rootsys::{CartanDatum, Rational, RootVector};
use crate::weyloracle::weyl_group_order;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

/// Tuple enumeration refuses groups larger than this.
pub const MAX_TUPLES: u64 = 5_000_000;

/// `tables[i]` lists `γᵢ(1), γᵢ(2), …` in ascending lexicographic order of
/// simple-root coordinates, so `γᵢ(1) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    pub tables: Vec<Vec<RootVector>>,
}

impl GammaTable {
    pub fn sizes(&self) -> Vec<usize> {
        self.tables.iter().map(Vec::len).collect()
    }

    pub fn get(&self, i: usize, index: u32) -> &RootVector {
        &self.tables[i][index as usize]
    }
}

/// Tables, admissible tuples (zero-based indices into the tables) and their
/// signatures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSystem {
    pub tables: GammaTable,
    pub tuples: Vec<Vec<u32>>,
    pub signatures: Vec<i8>,
}

/// Exponent vectors `ξ(A)` for every tuple, shifted so the lowest term of
/// `A(ρ+Λ)` sits at the origin.
#[derive(Clone, Debug)]
pub struct Exponents {
    /// Simple-root coordinates of `w₀(ρ+Λ)`, the amount subtracted from the
    /// raw exponents.
    pub offset: Vec<Rational>,
    pub vectors: Vec<Monomial>,
}

pub fn build_gamma_tables(datum: &CartanDatum) -> Result<GammaTable> {
    let r = datum.rank();
    let mut tables = Vec::with_capacity(r);
    for i in 0..r {
        let mut lambda = vec![0; r];
        lambda[i] = 1;
        let mut table = Vec::new();
        for mu in datum.weyl_orbit_labels(&lambda) {
            let diff: Vec<i64> = lambda.iter().zip(&mu).map(|(a, b)| a - b).collect();
            let coords = datum.labels_to_root_coords(&diff);
            let gamma: Option<Vec<i64>> = coords
                .iter()
                .map(|c| (c.is_integer() && !c.is_negative()).then(|| c.to_integer()))
                .collect();
            let gamma = gamma.ok_or_else(|| {
                Error::Inconsistent(format!(
                    "λ{} − {mu:?} is not in the positive root lattice",
                    i + 1
                ))
            })?;
            table.push(RootVector(gamma));
        }
        table.sort();
        tables.push(table);
    }
    Ok(GammaTable { tables })
}

/// Integer rescaling of the form so the pairwise test avoids rationals.
struct ScaledForm {
    gram: Vec<Vec<i64>>,
    norms: Vec<i64>,
}

impl ScaledForm {
    fn new(datum: &CartanDatum) -> Self {
        let denom = datum
            .norms()
            .iter()
            .fold(1i64, |acc, d| acc.lcm(d.denom()));
        let scale = |q: &Rational| (q * denom).to_integer();
        ScaledForm {
            gram: datum
                .form()
                .iter()
                .map(|row| row.iter().map(scale).collect())
                .collect(),
            norms: datum.norms().iter().map(scale).collect(),
        }
    }

    fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `(λᵢ − g, λⱼ − h) = (λᵢ, λⱼ)`, i.e. `(g, h) = dᵢ hᵢ + dⱼ gⱼ`.
    fn compatible(&self, i: usize, g: &[i64], j: usize, h: &[i64], bh: &[i64]) -> bool {
        let gh: i64 = g.iter().zip(bh).map(|(a, b)| a * b).sum();
        gh == self.norms[i] * h[i] + self.norms[j] * g[j]
    }
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for k in 0..n {
            b.insert(k);
        }
        b
    }

    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn and_assign(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }
}

/// All admissible tuples, in lexicographic order of their indices.
///
/// Depth-first over `i = 1..r`; a partial assignment survives only if it is
/// compatible with every index already fixed. The count is checked against
/// |W| computed independently from the root heights.
pub fn build_tuples(datum: &CartanDatum, tables: &GammaTable) -> Result<Vec<Vec<u32>>> {
    let r = datum.rank();
    let expected = weyl_group_order(datum);
    if expected > MAX_TUPLES {
        return Err(Error::GroupTooLarge(MAX_TUPLES as usize));
    }
    let form = ScaledForm::new(datum);
    let images: Vec<Vec<Vec<i64>>> = tables
        .tables
        .iter()
        .map(|t| t.iter().map(|g| form.apply(&g.0)).collect())
        .collect();
    // compat[j][i][b]: entries of table i compatible with γⱼ(b), for j < i
    let mut compat: Vec<Vec<Vec<BitSet>>> = vec![Vec::new(); r];
    for j in 0..r {
        compat[j] = vec![Vec::new(); r];
        for i in j + 1..r {
            let ti = &tables.tables[i];
            compat[j][i] = tables.tables[j]
                .iter()
                .zip(&images[j])
                .map(|(gj, bgj)| {
                    let mut set = BitSet::new(ti.len());
                    for (a, gi) in ti.iter().enumerate() {
                        if form.compatible(i, &gi.0, j, &gj.0, bgj) {
                            set.insert(a);
                        }
                    }
                    set
                })
                .collect();
        }
    }
    let mut out = Vec::with_capacity(expected as usize);
    let mut chosen = vec![0u32; r];
    search(0, r, tables, &compat, &mut chosen, &mut out);
    if out.len() as u64 != expected {
        return Err(Error::TupleCount {
            found: out.len(),
            expected,
        });
    }
    Ok(out)
}

fn search(
    level: usize,
    r: usize,
    tables: &GammaTable,
    compat: &[Vec<Vec<BitSet>>],
    chosen: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if level == r {
        out.push(chosen.clone());
        return;
    }
    let mut candidates = BitSet::full(tables.tables[level].len());
    for j in 0..level {
        candidates.and_assign(&compat[j][level][chosen[j] as usize]);
    }
    for a in candidates.ones() {
        chosen[level] = a as u32;
        search(level + 1, r, tables, compat, chosen, out);
    }
}

/// Exponents `ξᵢ(A) = (λᵢ − γᵢ(Iᵢ(A)), ρ+Λ) / dᵢ` for every tuple, shifted by
/// their componentwise minimum (the lowest weight of the orbit of ρ+Λ).
///
/// The unshifted values are the simple-root coordinates of the orbit points;
/// at Λ = 0 the identity tuple gives `kᵢ`, the coordinates of ρ.
pub fn exponents(
    datum: &CartanDatum,
    tables: &GammaTable,
    tuples: &[Vec<u32>],
    highest: &[i64],
) -> Result<Exponents> {
    let r = datum.rank();
    datum.check_len(highest.len())?;
    let shifted: Vec<i64> = highest.iter().map(|s| s + 1).collect();
    let base = datum.labels_to_root_coords(&shifted);
    let norms = datum.norms();
    // (γ, ρ+Λ) = Σₖ γₖ dₖ mₖ
    let pairing: Vec<Vec<Rational>> = tables
        .tables
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.iter()
                .map(|g| {
                    let p: Rational = g
                        .0
                        .iter()
                        .zip(norms)
                        .zip(&shifted)
                        .map(|((&gk, dk), &mk)| dk * (gk * mk))
                        .sum();
                    base[i] - p / norms[i]
                })
                .collect()
        })
        .collect();
    let raw = |tuple: &[u32], i: usize| pairing[i][tuple[i] as usize];
    let mut offset = vec![Rational::zero(); r];
    for (i, o) in offset.iter_mut().enumerate() {
        *o = tuples
            .iter()
            .map(|t| raw(t, i))
            .min()
            .unwrap_or_else(Rational::zero);
    }
    let vectors = tuples
        .iter()
        .enumerate()
        .map(|(a, t)| {
            let mut e = vec![0i64; r];
            for i in 0..r {
                let v = raw(t, i) - offset[i];
                if !v.is_integer() {
                    return Err(Error::NonIntegralExponent {
                        tuple: a + 1,
                        value: v.to_string(),
                    });
                }
                e[i] = v.to_integer();
            }
            Ok(Monomial::from_slice(&e)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Exponents { offset, vectors })
}

/// `∏_{α∈Φ⁺} (u^α − 1)`, multiplied smallest height first.
pub fn denominator_product(datum: &CartanDatum) -> LaurentPolynomial {
    let r = datum.rank();
    let mut p = LaurentPolynomial::one(r);
    for a in datum.positive_roots() {
        let factor = LaurentPolynomial::from_terms(
            r,
            [
                (a.0.clone(), Integer::one()),
                (vec![0; r], Integer::from(-1)),
            ],
        )
        .expect("rank matches");
        p = &p * &factor;
    }
    p
}

/// Reads each tuple's sign off the expanded product `∏(u^α − 1)`, which is
/// `A(ρ)` up to the monomial `u^ρ`: every monomial must be hit by exactly
/// one tuple exponent `ξ⁰(A)`, with coefficient ±1.
pub fn assign_signatures(
    datum: &CartanDatum,
    tables: GammaTable,
    tuples: Vec<Vec<u32>>,
) -> Result<GammaSystem> {
    let xi0 = exponents(datum, &tables, &tuples, &vec![0; datum.rank()])?;
    let expected_offset: Vec<Rational> = datum.rho_root_coords().iter().map(|k| -k).collect();
    if xi0.offset != expected_offset {
        return Err(Error::Signature(format!(
            "lowest exponent {:?} is not −ρ",
            xi0.offset
        )));
    }
    let mut by_exponent: FxHashMap<Monomial, usize> = FxHashMap::default();
    for (a, m) in xi0.vectors.iter().enumerate() {
        if let Some(prev) = by_exponent.insert(*m, a) {
            return Err(Error::Signature(format!(
                "tuples {} and {} share exponent {:?}",
                prev + 1,
                a + 1,
                m.as_slice(datum.rank())
            )));
        }
    }
    let product = denominator_product(datum);
    let mut signatures = vec![0i8; tuples.len()];
    for (m, c) in product.iter() {
        let a = *by_exponent.get(m).ok_or_else(|| {
            Error::Signature(format!(
                "monomial {:?} matches no tuple",
                m.as_slice(datum.rank())
            ))
        })?;
        signatures[a] = match c.to_i64() {
            Some(1) => 1,
            Some(-1) => -1,
            _ => {
                return Err(Error::Signature(format!(
                    "coefficient {c} of tuple {} is not ±1",
                    a + 1
                )))
            }
        };
    }
    if let Some(a) = signatures.iter().position(|&s| s == 0) {
        return Err(Error::Signature(format!(
            "tuple {} matches no monomial",
            a + 1
        )));
    }
    Ok(GammaSystem {
        tables,
        tuples,
        signatures,
    })
}

impl GammaSystem {
    pub fn build(datum: &CartanDatum) -> Result<Self> {
        let tables = build_gamma_tables(datum)?;
        let tuples = build_tuples(datum, &tables)?;
        assign_signatures(datum, tables, tuples)
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `(γ₁(I₁(A)), …, γ_r(I_r(A)))`.
    pub fn gammas(&self, a: usize) -> Vec<&RootVector> {
        self.tuples[a]
            .iter()
            .enumerate()
            .map(|(i, &k)| self.tables.get(i, k))
            .collect()
    }

    pub fn exponents(&self, datum: &CartanDatum, highest: &[i64]) -> Result<Exponents> {
        exponents(datum, &self.tables, &self.tuples, highest)
    }

    /// Re-checks every structural invariant; used when loading from a cache.
    pub fn validate(&self, datum: &CartanDatum) -> Result<()> {
        let r = datum.rank();
        let bad = |m: String| Err(Error::Inconsistent(m));
        if self.tables.tables.len() != r {
            return bad("table count differs from rank".into());
        }
        for (i, t) in self.tables.tables.iter().enumerate() {
            let mut lambda = vec![0; r];
            lambda[i] = 1;
            if t.len() != datum.weyl_orbit_labels(&lambda).len() {
                return bad(format!("table {} has the wrong length", i + 1));
            }
            if t.first().map(|g| g.0.iter().all(|&x| x == 0)) != Some(true) {
                return bad(format!("table {} does not start with 0", i + 1));
            }
            if t.iter().any(|g| g.0.len() != r || !g.is_nonnegative()) {
                return bad(format!("table {} has an entry outside R⁺", i + 1));
            }
        }
        let expected = weyl_group_order(datum);
        if self.tuples.len() as u64 != expected || self.signatures.len() != self.tuples.len() {
            return Err(Error::TupleCount {
                found: self.tuples.len(),
                expected,
            });
        }
        let form = ScaledForm::new(datum);
        let mut seen = std::collections::HashSet::new();
        for (a, t) in self.tuples.iter().enumerate() {
            if t.len() != r || t.iter().enumerate().any(|(i, &k)| k as usize >= self.tables.tables[i].len()) {
                return bad(format!("tuple {} is malformed", a + 1));
            }
            if !seen.insert(t.clone()) {
                return bad(format!("tuple {} is repeated", a + 1));
            }
            for i in 0..r {
                for j in 0..=i {
                    let gi = &self.tables.get(i, t[i]).0;
                    let gj = &self.tables.get(j, t[j]).0;
                    if !form.compatible(i, gi, j, gj, &form.apply(gj)) {
                        return bad(format!("tuple {} violates the pairing at ({}, {})", a + 1, i + 1, j + 1));
                    }
                }
            }
        }
        if self.signatures.iter().any(|&s| s != 1 && s != -1) {
            return bad("signature outside ±1".into());
        }
        if self.signatures.iter().map(|&s| s as i64).sum::<i64>() != 0 {
            return bad("signatures are unbalanced".into());
        }
        Ok(())
    }

    pub fn to_json(&self, datum: &CartanDatum) -> GammaSystemJson {
        GammaSystemJson {
            algebra: datum.name().to_string(),
            fingerprint: datum.fingerprint(),
            tables: self
                .tables
                .tables
                .iter()
                .map(|t| t.iter().map(|g| g.0.clone()).collect())
                .collect(),
            tuples: self
                .tuples
                .iter()
                .map(|t| t.iter().map(|&k| k + 1).collect())
                .collect(),
            signatures: self.signatures.clone(),
        }
    }

    pub fn from_json(datum: &CartanDatum, j: &GammaSystemJson) -> Result<Self> {
        if j.fingerprint != datum.fingerprint() {
            return Err(Error::Inconsistent(format!(
                "cached system belongs to {} ({}), not {} ({})",
                j.algebra,
                j.fingerprint,
                datum.name(),
                datum.fingerprint()
            )));
        }
        let tuples = j
            .tuples
            .iter()
            .map(|t| {
                t.iter()
                    .map(|&k| {
                        k.checked_sub(1)
                            .ok_or_else(|| Error::Parse("tuple indices are 1-based".into()))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        let sys = GammaSystem {
            tables: GammaTable {
                tables: j
                    .tables
                    .iter()
                    .map(|t| t.iter().cloned().map(RootVector).collect())
                    .collect(),
            },
            tuples,
            signatures: j.signatures.clone(),
        };
        sys.validate(datum)?;
        Ok(sys)
    }
}

/// Cache format. Tuple indices are 1-based, like the `Γ_A = {I₁, …}` notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSystemJson {
    pub algebra: String,
    pub fingerprint: String,
    pub tables: Vec<Vec<Vec<i64>>>,
    pub tuples: Vec<Vec<u32>>,
    pub signatures: Vec<i8>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_system() {
        let a1 = CartanDatum::from_name("A1").unwrap();
        let sys = GammaSystem::build(&a1).unwrap();
        assert_eq!(sys.tables.tables, vec![vec![RootVector(vec![0]), RootVector(vec![1])]]);
        assert_eq!(sys.tuples, vec![vec![0], vec![1]]);
        assert_eq!(sys.signatures, vec![1, -1]);
        let xi = sys.exponents(&a1, &[0]).unwrap();
        assert_eq!(xi.vectors, vec![Monomial::unit(0), Monomial::zero()]);
        let xi = sys.exponents(&a1, &[3]).unwrap();
        assert_eq!(xi.vectors[0], Monomial::from_slice(&[4]).unwrap());
        assert_eq!(xi.offset, vec![Rational::from_integer(-2)]);
    }

    #[test]
    fn f4_table_sizes_and_anchors() {
        let f4 = CartanDatum::from_name("F4").unwrap();
        let t = build_gamma_tables(&f4).unwrap();
        assert_eq!(t.sizes(), vec![24, 96, 96, 24]);
        assert_eq!(t.get(0, 1).0, vec![1, 0, 0, 0]);
        assert_eq!(t.get(0, 23).0, vec![4, 6, 8, 4]);
        assert_eq!(t.get(3, 23).0, vec![2, 4, 6, 4]);
        for table in &t.tables {
            assert!(table[0].0.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn f4_system() {
        let f4 = CartanDatum::from_name("F4").unwrap();
        let sys = GammaSystem::build(&f4).unwrap();
        assert_eq!(sys.len(), 1152);
        assert_eq!(sys.tuples[0], vec![0, 0, 0, 0]);
        assert_eq!(sys.tuples[1], vec![0, 0, 0, 1]);
        assert_eq!(sys.signatures[0], 1);
        assert_eq!(sys.signatures[1], -1);
        assert_eq!(sys.signatures[1151], 1);
        assert_eq!(sys.signatures.iter().map(|&s| s as i64).sum::<i64>(), 0);
        sys.validate(&f4).unwrap();
        let xi = sys.exponents(&f4, &[0; 4]).unwrap();
        let k: Vec<Rational> = f4.rho_root_coords();
        for i in 0..4 {
            assert_eq!(Rational::from_integer(xi.vectors[0].get(i)) + xi.offset[i], k[i]);
        }
    }

    #[test]
    fn json_round_trip_validates() {
        let g2 = CartanDatum::from_name("G2").unwrap();
        let sys = GammaSystem::build(&g2).unwrap();
        let j = sys.to_json(&g2);
        let back = GammaSystem::from_json(&g2, &j).unwrap();
        assert_eq!(back, sys);
        let mut broken = j.clone();
        broken.signatures[3] = -broken.signatures[3];
        assert!(GammaSystem::from_json(&g2, &broken).is_err());
        let b2 = CartanDatum::from_name("B2").unwrap();
        assert!(GammaSystem::from_json(&b2, &j).is_err());
    }
}

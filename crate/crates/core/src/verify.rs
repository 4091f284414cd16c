//! Golden and oracle checks, shared by `weylchar verify` and the test suite.

use crate::characters::{integral_coords, weyl_dimension, Engine};
use crate::error::{Error, Result};
use crate::golden;
use crate::integer::Integer;
use crate::laurent::{LaurentPolynomial, Specialization};
use crate::rootsys::{CartanDatum, RootVector};
use crate::specialroots::{build_gamma_tables, build_tuples, denominator_product};
use crate::tensor::tensor_decompose;
use crate::weyloracle::{direct_a_polynomial, enumerate_weyl, weyl_group_order};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

fn run(id: usize, name: &'static str, body: impl FnOnce() -> Result<String>) -> Check {
    match body() {
        Ok(detail) => Check { id, name, passed: true, detail },
        Err(e) => Check { id, name, passed: false, detail: e.to_string() },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistent(msg()))
    }
}

pub const F4_CHECKS: [&str; 9] = [
    "tuple count",
    "special-root tables",
    "tuples and signatures",
    "denominator identity",
    "character golden tests",
    "dimension suite",
    "tensor example",
    "oracle sweep",
    "inversion symmetry",
];

/// One check by number, 1 to 9.
pub fn f4_check(engine: &Engine, id: usize) -> Check {
    let name = F4_CHECKS[id - 1];
    match id {
        1 => run(id, name, || tuple_count(engine.datum())),
        2 => run(id, name, || special_root_tables(engine.datum())),
        3 => run(id, name, || tuples_and_signatures(engine)),
        4 => run(id, name, || denominator_identity(engine)),
        5 => run(id, name, || character_goldens(engine)),
        6 => run(id, name, || dimension_suite(engine)),
        7 => run(id, name, || tensor_example(engine)),
        8 => run(id, name, || {
            let mut parts = Vec::new();
            for name in ["A1", "A2", "B2", "C2", "G2"] {
                let e = Engine::new(CartanDatum::from_name(name)?)?;
                parts.push(format!("{name} {}", oracle_sweep(&e)?));
            }
            parts.push(format!("F4 {}", oracle_sweep(engine)?));
            Ok(parts.join(", "))
        }),
        9 => run(id, name, || inversion_symmetry(engine)),
        _ => panic!("no check {id}"),
    }
}

pub fn f4_checks(engine: &Engine) -> Vec<Check> {
    (1..=9).map(|id| f4_check(engine, id)).collect()
}

/// The checks that make sense for any algebra.
pub fn generic_checks(engine: &Engine) -> Vec<Check> {
    vec![
        run(1, "tuple count", || tuple_count(engine.datum())),
        run(2, "denominator identity", || {
            let d = engine.datum();
            ensure(*engine.denominator() == denominator_product(d), || {
                "A(ρ) differs from the expanded product".into()
            })?;
            if weyl_group_order(d) <= 100_000 {
                let w = enumerate_weyl(d)?;
                ensure(*engine.denominator() == direct_a_polynomial(d, &w, &vec![0; d.rank()])?, || {
                    "A(ρ) differs from the Weyl-group sum".into()
                })?;
            }
            Ok(format!("{} terms", engine.denominator().len()))
        }),
        run(3, "fundamental dimensions", || {
            let r = engine.datum().rank();
            let dims = (0..r)
                .map(|i| {
                    let mut hw = vec![0; r];
                    hw[i] = 1;
                    engine.dimension(&hw).map(|d| d.to_string())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(dims.join(", "))
        }),
        run(4, "oracle sweep", || {
            if weyl_group_order(engine.datum()) > 100_000 {
                return Ok("skipped, group too large for the brute-force oracle".into());
            }
            oracle_sweep(engine)
        }),
    ]
}

fn tuple_count(datum: &CartanDatum) -> Result<String> {
    let tables = build_gamma_tables(datum)?;
    let tuples = build_tuples(datum, &tables)?;
    let sizes = tables.sizes();
    let orbits: Vec<usize> = (0..datum.rank())
        .map(|i| {
            let mut l = vec![0; datum.rank()];
            l[i] = 1;
            datum.weyl_orbit_labels(&l).len()
        })
        .collect();
    ensure(sizes == orbits, || format!("table sizes {sizes:?}, orbit sizes {orbits:?}"))?;
    if datum.name() == "F4" {
        ensure(sizes == [24, 96, 96, 24], || format!("table sizes {sizes:?}"))?;
        ensure(tuples.len() == 1152, || format!("{} tuples", tuples.len()))?;
    }
    Ok(format!("{} tuples, table sizes {sizes:?}", tuples.len()))
}

fn coord_set(t: &[RootVector]) -> BTreeSet<Vec<i64>> {
    t.iter().map(|g| g.0.clone()).collect()
}

fn special_root_tables(datum: &CartanDatum) -> Result<String> {
    let ours = build_gamma_tables(datum)?;
    let reference = golden::f4_special_roots()?;
    for (i, (a, b)) in ours.tables.iter().zip(&reference).enumerate() {
        ensure(coord_set(a) == coord_set(b) && a.len() == b.len(), || {
            format!("table {} differs as a set", i + 1)
        })?;
    }
    ensure(ours.get(0, 1).0 == [1, 0, 0, 0], || "γ₁(2) ≠ α₁".into())?;
    ensure(ours.get(3, 23).0 == [2, 4, 6, 4], || "γ₄(24) ≠ 2α₁+4α₂+6α₃+4α₄".into())?;
    let rows: usize = reference.iter().map(Vec::len).sum();
    let same_order = ours.tables == reference;
    Ok(format!("{rows} rows equal as sets; row order identical: {same_order}"))
}

type GammaKey = Vec<Vec<i64>>;

fn tuples_and_signatures(engine: &Engine) -> Result<String> {
    let sys = engine.system();
    let computed: BTreeMap<GammaKey, i8> = (0..sys.len())
        .map(|a| (sys.gammas(a).iter().map(|g| g.0.clone()).collect(), sys.signatures[a]))
        .collect();
    ensure(computed.len() == sys.len(), || "computed tuples repeat".into())?;
    let tables = golden::f4_special_roots()?;
    let rows = golden::f4_tuples()?;
    let mut reference: BTreeMap<GammaKey, i8> = BTreeMap::new();
    for (a, (idx, sign)) in rows.iter().enumerate() {
        let key = idx
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                tables[i]
                    .get((k as usize).wrapping_sub(1))
                    .map(|g| g.0.clone())
                    .ok_or_else(|| Error::Parse(format!("tuple {} index out of range", a + 1)))
            })
            .collect::<Result<GammaKey>>()?;
        reference.insert(key, *sign);
    }
    ensure(reference.len() == rows.len(), || "published tuples repeat".into())?;
    let missing = reference.iter().filter(|(k, s)| computed.get(*k) != Some(s)).count();
    ensure(missing == 0 && reference.len() == computed.len(), || {
        format!("{missing} published rows disagree")
    })?;
    ensure(rows[0] == (vec![1, 1, 1, 1], 1) && rows[1] == (vec![1, 1, 1, 2], -1), || {
        "published anchors".into()
    })?;
    ensure(sys.tuples[0] == [0, 0, 0, 0] && sys.signatures[0] == 1, || "Γ₁ ≠ {1,1,1,1} or ε₁ ≠ +1".into())?;
    ensure(sys.tuples[1] == [0, 0, 0, 1] && sys.signatures[1] == -1, || "Γ₂ ≠ {1,1,1,2} or ε₂ ≠ −1".into())?;
    let sum: i64 = sys.signatures.iter().map(|&s| s as i64).sum();
    ensure(sum == 0, || format!("signature sum {sum}"))?;
    let same_order = rows
        .iter()
        .zip(sys.tuples.iter().zip(&sys.signatures))
        .all(|((idx, s), (t, e))| idx.iter().zip(t).all(|(a, b)| *a == b + 1) && s == e);
    Ok(format!(
        "{} rows match, signature sum 0; row order identical: {same_order}",
        reference.len()
    ))
}

fn xy() -> Result<Specialization> {
    Ok(Specialization::merge("x,x,y,y", 4)?.0)
}

/// `A(ρ+Λ)` as a true Laurent polynomial in `u`.
fn a_laurent(engine: &Engine, hw: &[i64]) -> Result<LaurentPolynomial> {
    let (p, offset) = engine.a_polynomial(hw)?;
    let shift = integral_coords(&offset)
        .ok_or_else(|| Error::Inconsistent("orbit of ρ+Λ is not in the root lattice".into()))?;
    Ok(p.shift(&shift))
}

fn denominator_identity(engine: &Engine) -> Result<String> {
    let d = engine.datum();
    let a_rho = engine.denominator();
    ensure(*a_rho == denominator_product(d), || "A(ρ) differs from ∏(u^α − 1)".into())?;
    let w = enumerate_weyl(d)?;
    ensure(*a_rho == direct_a_polynomial(d, &w, &[0; 4])?, || {
        "A(ρ) differs from the Weyl-group sum".into()
    })?;
    let special = a_laurent(engine, &[0; 4])?.specialize(&xy()?)?;
    let reference = golden::parse_xy(golden::F4_DENOMINATOR_XY)?;
    ensure(special == reference, || "specialized A(ρ) differs from the factored form".into())?;
    Ok(format!(
        "{} terms; product, Weyl sum and {}-term specialization agree",
        a_rho.len(),
        reference.len()
    ))
}

/// `ours = u^m · theirs` for a single monomial `m`; returns `m`.
fn common_factor(ours: &LaurentPolynomial, theirs: &LaurentPolynomial) -> Result<Vec<i64>> {
    let (Some((a, _)), Some((b, _))) = (ours.leading_term(), theirs.leading_term()) else {
        return Err(Error::Inconsistent("empty polynomial".into()));
    };
    let m = a.sub(&b);
    ensure(*ours == theirs.shift(&m), || "no common monomial factor".into())?;
    Ok(m.as_slice(ours.nvars()).to_vec())
}

fn character_goldens(engine: &Engine) -> Result<String> {
    let spec = xy()?;
    let mut parts = Vec::new();
    for (hw, src, dim) in [
        ([1, 0, 0, 0], golden::F4_CH_L1_XY, 52),
        ([0, 0, 1, 1], golden::F4_CH_L3L4_XY, 4096),
    ] {
        let ch = engine.character(&hw)?;
        let ours = ch
            .laurent_form(engine.datum())
            .ok_or_else(|| Error::Inconsistent("weight outside the root lattice".into()))?
            .specialize(&spec)?;
        let reference = golden::parse_xy(src)?;
        let m = common_factor(&ours, &reference)?;
        let sum = ours.evaluate_at_one();
        ensure(sum == Integer::from(dim) && reference.evaluate_at_one() == Integer::from(dim), || {
            format!("coefficient sum {sum} for {hw:?}")
        })?;
        parts.push(format!("{hw:?}: sum {sum}, monomial factor x^{} y^{}", m[0], m[1]));
    }
    Ok(parts.join("; "))
}

fn dimension_suite(engine: &Engine) -> Result<String> {
    let mut parts = Vec::new();
    for (hw, dim) in [
        ([0, 0, 0, 1], 26),
        ([1, 0, 0, 0], 52),
        ([0, 0, 1, 0], 273),
        ([0, 1, 0, 0], 1274),
    ] {
        let by_poly = engine.character(&hw)?.polynomial.evaluate_at_one();
        let closed = weyl_dimension(engine.datum(), &hw)?;
        ensure(by_poly == closed && closed == Integer::from(dim), || {
            format!("{hw:?}: polynomial {by_poly}, product {closed}, expected {dim}")
        })?;
        parts.push(format!("{hw:?} → {dim}"));
    }
    Ok(parts.join(", "))
}

fn tensor_example(engine: &Engine) -> Result<String> {
    let d = tensor_decompose(engine, &[1, 0, 0, 0], &[0, 0, 1, 1])?;
    let ours: BTreeSet<(Vec<i64>, Integer)> = d.constituents.iter().cloned().collect();
    let reference: BTreeSet<(Vec<i64>, Integer)> = golden::F4_TENSOR_L1_L3L4
        .iter()
        .map(|(w, m)| (w.to_vec(), Integer::from(*m as i64)))
        .collect();
    ensure(ours == reference, || format!("decomposition {:?}", d.constituents))?;
    let mut total = Integer::zero();
    for (w, m) in &d.constituents {
        total.add_mul(m, &engine.dimension(w)?);
    }
    ensure(total == Integer::from(52 * 4096), || format!("Σ mult·dim = {total}"))?;
    Ok(format!(
        "{} constituents, V(λ₃+λ₄) twice, Σ mult·dim = {total}",
        d.constituents.len()
    ))
}

/// Every Λ with labels in {0, 1}: special-root `A(ρ+Λ)` equals the Weyl-group
/// sum, and the character is positive with multiplicities constant on orbits.
pub fn oracle_sweep(engine: &Engine) -> Result<String> {
    let d = engine.datum();
    let r = d.rank();
    let group = enumerate_weyl(d)?;
    let mut weights = 0usize;
    for bits in 0..1u32 << r {
        let hw: Vec<i64> = (0..r).map(|i| ((bits >> i) & 1) as i64).collect();
        let (ours, _) = engine.a_polynomial(&hw)?;
        ensure(ours == direct_a_polynomial(d, &group, &hw)?, || {
            format!("A(ρ+{hw:?}) differs from the Weyl-group sum")
        })?;
        let ch = engine.character(&hw)?;
        for (m, c) in ch.polynomial.iter() {
            ensure(c.is_positive(), || format!("{hw:?}: coefficient {c}"))?;
            let mu = ch.weight_of(d, m);
            let dominant = ch.multiplicity(d, &mu);
            ensure(*c == dominant, || {
                format!("{hw:?}: m({mu:?}) = {c} but its dominant representative has {dominant}")
            })?;
            weights += 1;
        }
    }
    Ok(format!("{} highest weights, {weights} weights", 1u32 << r))
}

fn inversion_symmetry(engine: &Engine) -> Result<String> {
    let spec = xy()?;
    let mut parts = Vec::new();
    for (hw, s) in [([0, 0, 0, 0], "0"), ([1, 0, 0, 0], "e1"), ([0, 0, 1, 1], "e3+e4")] {
        let p = a_laurent(engine, &hw)?.specialize(&spec)?;
        // grade by (deg x, deg y), lexicographically
        let mut plus = LaurentPolynomial::zero(2);
        let mut minus = LaurentPolynomial::zero(2);
        for (m, c) in p.iter() {
            let g = m.as_slice(2);
            match g.cmp(&[0, 0][..]) {
                std::cmp::Ordering::Greater => plus.add_term(*m, c),
                std::cmp::Ordering::Less => minus.add_term(*m, c),
                std::cmp::Ordering::Equal => {
                    // the constant term is shared equally
                    let half = c
                        .checked_div_exact(&Integer::from(2))
                        .ok_or_else(|| Error::Inconsistent(format!("s = {s}: odd constant term {c}")))?;
                    plus.add_term(*m, &half);
                    minus.add_term(*m, &half);
                }
            }
        }
        ensure(minus == plus.invert_variables(), || format!("s = {s}: P⁻ ≠ P⁺(1/x,1/y)"))?;
        let reference_plus = golden::f4_p_plus([hw[0], hw[1], hw[2], hw[3]])?;
        ensure(p == reference_plus.checked_add(&reference_plus.invert_variables())?, || {
            format!("s = {s}: P differs from the published P⁺(x,y) + P⁺(1/x,1/y)")
        })?;
        parts.push(format!(
            "s = {s}: {} terms, constant term {}",
            p.len(),
            p.coeff_of(&[0, 0])
        ));
    }
    Ok(parts.join(", "))
}

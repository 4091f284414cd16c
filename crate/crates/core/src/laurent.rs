//! Sparse multivariate Laurent polynomials over arbitrary-precision integers.
//!
//! Variables are `u₁..u_r` with `uᵢ = e^{αᵢ}`; exponents may be negative.
//! Terms live in a hash map and are only put in graded-lex order when they are
//! iterated for output or division.

use crate::error::PolyError;
use crate::integer::Integer;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest supported number of variables (the largest supported rank).
pub const MAX_VARS: usize = 8;

/// Exponent vector. Unused trailing slots are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([i64; MAX_VARS]);

impl Monomial {
    pub fn zero() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_slice(exps: &[i64]) -> Result<Self, PolyError> {
        if exps.len() > MAX_VARS {
            return Err(PolyError::TooManyVars {
                max: MAX_VARS,
                got: exps.len(),
            });
        }
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Ok(Monomial(m))
    }

    /// Unit exponent vector for variable `i`.
    pub fn unit(i: usize) -> Self {
        let mut m = [0; MAX_VARS];
        m[i] = 1;
        Monomial(m)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn as_slice(&self, nvars: usize) -> &[i64] {
        &self.0[..nvars]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn sub(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn neg(&self) -> Monomial {
        let mut m = self.0;
        for a in m.iter_mut() {
            *a = -*a;
        }
        Monomial(m)
    }

    pub fn scale(&self, k: i64) -> Monomial {
        let mut m = self.0;
        for a in m.iter_mut() {
            *a *= k;
        }
        Monomial(m)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..n])
    }
}

/// Graded-lex: total degree first, then lexicographic with `u₁` most
/// significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: FxHashMap<Monomial, Integer>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        LaurentPolynomial {
            nvars,
            terms: FxHashMap::default(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Integer::one())
    }

    pub fn constant(nvars: usize, c: Integer) -> Self {
        Self::from_monomial(nvars, Monomial::zero(), c)
    }

    pub fn from_monomial(nvars: usize, m: Monomial, c: Integer) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `c · u^exps`.
    pub fn monomial(exps: &[i64], c: impl Into<Integer>) -> Result<Self, PolyError> {
        Ok(Self::from_monomial(exps.len(), Monomial::from_slice(exps)?, c.into()))
    }

    /// The variable `u_{i+1}`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::from_monomial(nvars, Monomial::unit(i), Integer::one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<i64>, Integer)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::NvarsMismatch(nvars, e.len()));
            }
            p.add_term(Monomial::from_slice(&e)?, &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Integer {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, exps: &[i64]) -> Integer {
        match Monomial::from_slice(exps) {
            Ok(m) if exps.len() == self.nvars => self.coeff(&m),
            _ => Integer::zero(),
        }
    }

    /// Unordered term iterator.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Integer)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (the canonical order).
    pub fn sorted_terms(&self) -> Vec<(Monomial, &Integer)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        v
    }

    pub fn leading_term(&self) -> Option<(Monomial, &Integer)> {
        self.terms.iter().max_by(|a, b| a.0.cmp(b.0)).map(|(m, c)| (*m, c))
    }

    pub fn trailing_term(&self) -> Option<(Monomial, &Integer)> {
        self.terms.iter().min_by(|a, b| a.0.cmp(b.0)).map(|(m, c)| (*m, c))
    }

    /// `self += c · u^m`.
    pub fn add_term(&mut self, m: Monomial, c: &Integer) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::NvarsMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_nvars(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: FxHashMap<Monomial, Integer> = FxHashMap::default();
        acc.reserve(large.len() * small.len().min(8));
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                acc.entry(ma.add(mb)).or_default().add_mul(ca, cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPolynomial {
            nvars: self.nvars,
            terms: acc,
        })
    }

    /// `self -= c · u^shift · other`, in place.
    pub fn sub_scaled_shifted(
        &mut self,
        other: &Self,
        c: &Integer,
        shift: &Monomial,
    ) -> Result<(), PolyError> {
        self.check_nvars(other)?;
        let neg = -c;
        for (m, oc) in &other.terms {
            match self.terms.entry(m.add(shift)) {
                Entry::Occupied(mut o) => {
                    o.get_mut().add_mul(&neg, oc);
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                Entry::Vacant(v) => {
                    v.insert(&neg * oc);
                }
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Integer) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `u^shift`.
    pub fn shift(&self, shift: &Monomial) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.add(shift), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `uᵢ → 1/uᵢ` for every variable.
    pub fn invert_variables(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.neg(), c.clone())).collect(),
        }
    }

    /// Sum of all coefficients, i.e. the value at `u₁ = … = u_r = 1`.
    pub fn evaluate_at_one(&self) -> Integer {
        self.terms.values().cloned().sum()
    }

    /// Substitutes each variable by a monomial in the target variables.
    pub fn specialize(&self, spec: &Specialization) -> Result<Self, PolyError> {
        if spec.images.len() != self.nvars {
            return Err(PolyError::NvarsMismatch(self.nvars, spec.images.len()));
        }
        let mut out = Self::zero(spec.target_nvars);
        for (m, c) in &self.terms {
            let mut img = Monomial::zero();
            for (i, im) in spec.images.iter().enumerate() {
                let e = m.get(i);
                if e != 0 {
                    img = img.add(&im.scale(e));
                }
            }
            out.add_term(img, c);
        }
        Ok(out)
    }

    /// Exact quotient `self / den`.
    ///
    /// Repeatedly cancels the graded-lex leading term of the running
    /// remainder against the leading term of `den`. Every leading-coefficient
    /// division must be exact, and every quotient term must lie inside the
    /// Newton box of `self` minus that of `den` and above
    /// `trail(self) - trail(den)`; any violation means the division has a
    /// nonzero remainder. The box bound also guarantees termination.
    pub fn exact_div(&self, den: &Self) -> Result<Self, PolyError> {
        self.check_nvars(den)?;
        let (den_lead, den_lc) = match den.leading_term() {
            Some((m, c)) => (m, c.clone()),
            None => return Err(PolyError::DivisionByZero),
        };
        let den_trail = den.trailing_term().map(|(m, _)| m).unwrap_or_default();
        let mut quotient = Self::zero(self.nvars);
        let Some((num_trail, _)) = self.trailing_term() else {
            return Ok(quotient);
        };
        let lower_bound = num_trail.sub(&den_trail);
        let (num_lo, num_hi) = self.exponent_box();
        let (den_lo, den_hi) = den.exponent_box();
        let q_lo = num_lo.sub(&den_lo);
        let q_hi = num_hi.sub(&den_hi);
        let n = self.nvars;
        let in_box = |m: &Monomial| (0..n).all(|i| q_lo.get(i) <= m.get(i) && m.get(i) <= q_hi.get(i));

        let mut rem = self.terms.clone();
        let mut heap: BinaryHeap<Monomial> = rem.keys().copied().collect();
        while let Some(top) = heap.pop() {
            let Some(rc) = rem.get(&top) else {
                continue;
            };
            let q_mon = top.sub(&den_lead);
            let not_exact = || PolyError::NotExact {
                term: format!("{rc}·u^{:?}", top.as_slice(self.nvars)),
            };
            if q_mon < lower_bound || !in_box(&q_mon) {
                return Err(not_exact());
            }
            let qc = rc.checked_div_exact(&den_lc).ok_or_else(not_exact)?;
            let neg = -&qc;
            for (dm, dc) in &den.terms {
                let target = q_mon.add(dm);
                match rem.entry(target) {
                    Entry::Occupied(mut o) => {
                        o.get_mut().add_mul(&neg, dc);
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(&neg * dc);
                        heap.push(target);
                    }
                }
            }
            debug_assert!(!rem.contains_key(&top));
            quotient.terms.insert(q_mon, qc);
        }
        Ok(quotient)
    }

    /// Exact quotient by `u^alpha − 1`.
    ///
    /// Terms are grouped into chains `m₀ + tα`; along a chain the quotient
    /// satisfies `q(t) = q(t−1) − p(t)`, and exactness means the running sum
    /// returns to zero at the top of every chain.
    pub fn exact_div_binomial(&self, alpha: &Monomial) -> Result<Self, PolyError> {
        let n = self.nvars;
        let i = (0..n)
            .find(|&i| alpha.get(i) != 0)
            .ok_or(PolyError::DivisionByZero)?;
        let ai = alpha.get(i);
        let mut chains: FxHashMap<Monomial, Vec<(i64, &Integer)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let t = m.get(i).div_euclid(ai);
            chains.entry(m.sub(&alpha.scale(t))).or_default().push((t, c));
        }
        let mut terms = FxHashMap::with_capacity_and_hasher(self.terms.len(), Default::default());
        for (base, mut chain) in chains {
            chain.sort_unstable_by_key(|(t, _)| *t);
            let mut run = Integer::zero();
            let mut k = 0;
            let mut t = chain[0].0;
            loop {
                while k < chain.len() && chain[k].0 == t {
                    run -= chain[k].1;
                    k += 1;
                }
                if k == chain.len() {
                    break;
                }
                if !run.is_zero() {
                    terms.insert(base.add(&alpha.scale(t)), run.clone());
                }
                t += 1;
            }
            if !run.is_zero() {
                return Err(PolyError::NotExact {
                    term: format!("{run}·u^{:?}", base.add(&alpha.scale(t)).as_slice(n)),
                });
            }
        }
        Ok(LaurentPolynomial { nvars: n, terms })
    }

    /// Componentwise minimum and maximum exponents.
    pub fn exponent_box(&self) -> (Monomial, Monomial) {
        let mut lo = [i64::MAX; MAX_VARS];
        let mut hi = [i64::MIN; MAX_VARS];
        for m in self.terms.keys() {
            for i in 0..MAX_VARS {
                lo[i] = lo[i].min(m.get(i));
                hi[i] = hi[i].max(m.get(i));
            }
        }
        if self.terms.is_empty() {
            return (Monomial::zero(), Monomial::zero());
        }
        (Monomial(lo), Monomial(hi))
    }

    /// Canonical JSON form.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    e: m.as_slice(self.nvars).to_vec(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, PolyError> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let c: Integer = t
                    .c
                    .parse()
                    .map_err(|_| PolyError::Malformed(format!("bad coefficient {:?}", t.c)))?;
                Ok((t.e.clone(), c))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        Self::from_terms(j.nvars, terms)
    }

    /// Human-readable form `c·x^a·y^b + …` using the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }
}

struct DisplayWith<'a> {
    poly: &'a LaurentPolynomial,
    names: &'a [String],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = if negative { -*c } else { (*c).clone() };
            let mut factors: Vec<String> = Vec::new();
            if abs != Integer::one() || m.is_zero() {
                factors.push(abs.to_string());
            }
            for i in 0..self.poly.nvars {
                let name = self
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("u{}", i + 1));
                match m.get(i) {
                    0 => {}
                    1 => factors.push(name),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("·"))?;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<i64>,
    pub c: String,
}

/// Wire format: `{"nvars": r, "terms": [{"e": [..], "c": "decimal"}, ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_add(rhs).expect("nvars mismatch in add")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_sub(rhs).expect("nvars mismatch in sub")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("nvars mismatch in mul")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(&Integer::from(-1))
    }
}

/// A substitution `uᵢ → (monomial in target variables)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    target_nvars: usize,
    images: Vec<Monomial>,
}

impl Specialization {
    pub fn new(target_nvars: usize, images: Vec<Vec<i64>>) -> Result<Self, PolyError> {
        if target_nvars > MAX_VARS {
            return Err(PolyError::TooManyVars {
                max: MAX_VARS,
                got: target_nvars,
            });
        }
        let images = images
            .iter()
            .map(|e| {
                if e.len() != target_nvars {
                    Err(PolyError::NvarsMismatch(target_nvars, e.len()))
                } else {
                    Monomial::from_slice(e)
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Specialization {
            target_nvars,
            images,
        })
    }

    pub fn identity(nvars: usize) -> Self {
        Specialization {
            target_nvars: nvars,
            images: (0..nvars).map(Monomial::unit).collect(),
        }
    }

    /// Every variable goes to 1.
    pub fn at_one(nvars: usize) -> Self {
        Specialization {
            target_nvars: 0,
            images: vec![Monomial::zero(); nvars],
        }
    }

    /// Variable merge such as `"x,x,y,y"`: each source variable is sent to
    /// the named target variable; target variables are numbered in order of
    /// first appearance. Returns the specialization and the target names.
    pub fn merge(spec: &str, nvars: usize) -> Result<(Self, Vec<String>), PolyError> {
        let labels: Vec<&str> = spec.split(',').map(str::trim).collect();
        if labels.len() != nvars || labels.iter().any(|l| l.is_empty()) {
            return Err(PolyError::Malformed(format!(
                "specialization {spec:?} must name {nvars} variables"
            )));
        }
        let mut names: Vec<String> = Vec::new();
        let mut idx = Vec::with_capacity(nvars);
        for l in labels {
            let k = match names.iter().position(|n| n == l) {
                Some(k) => k,
                None => {
                    names.push(l.to_string());
                    names.len() - 1
                }
            };
            idx.push(k);
        }
        let target = names.len();
        let images = idx
            .into_iter()
            .map(|k| {
                let mut e = vec![0; target];
                e[k] = 1;
                e
            })
            .collect();
        Ok((Self::new(target, images)?, names))
    }

    pub fn source_nvars(&self) -> usize {
        self.images.len()
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }
}

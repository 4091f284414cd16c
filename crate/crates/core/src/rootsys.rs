//! Root systems from Cartan data.
//!
//! Roots are integer vectors in the simple-root basis; weights are rational
//! vectors in the fundamental-weight basis (Dynkin labels when integral).
//! The Cartan matrix convention is `A[i][j] = 2(αᵢ,αⱼ)/(αᵢ,αᵢ)`, so the
//! Dynkin labels of `αⱼ` are the `j`-th column of `A` and the form on the
//! root lattice is `B[i][j] = dᵢ·A[i][j]` with `dᵢ = (αᵢ,αᵢ)/2`.

use crate::error::{Error, Result};
use crate::laurent::MAX_VARS;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::hash::Hash;
use std::path::Path;

pub type Rational = Ratio<i64>;

/// Generation of positive roots gives up past this height.
pub const MAX_ROOT_HEIGHT: i64 = 1000;

/// Integer coordinates `nᵢ` of `Σ nᵢ αᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&n| n >= 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

/// Coefficients in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![Rational::zero(); rank])
    }

    pub fn from_labels(labels: &[i64]) -> Self {
        WeightVector(labels.iter().map(|&s| Rational::from_integer(s)).collect())
    }

    /// The fundamental weight `λ_{i+1}`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self::from_labels(&v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Integer Dynkin labels, if the weight is integral.
    pub fn labels(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| c.is_integer() && !c.is_negative())
    }
}

/// Anything that can be expressed in the simple-root basis.
pub trait RootCoordinates {
    fn root_coords(&self, datum: &CartanDatum) -> Result<Vec<Rational>>;
}

impl RootCoordinates for RootVector {
    fn root_coords(&self, datum: &CartanDatum) -> Result<Vec<Rational>> {
        datum.check_len(self.0.len())?;
        Ok(self.0.iter().map(|&n| Rational::from_integer(n)).collect())
    }
}

impl RootCoordinates for WeightVector {
    fn root_coords(&self, datum: &CartanDatum) -> Result<Vec<Rational>> {
        datum.check_len(self.0.len())?;
        Ok(mat_vec(&datum.cartan_inv, &self.0))
    }
}

fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Cartan matrix together with the root-length normalization.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    name: String,
    cartan: Vec<Vec<i64>>,
    norms: Vec<Rational>,
    form: Vec<Vec<Rational>>,
    cartan_inv: Vec<Vec<Rational>>,
    positive_roots: Vec<RootVector>,
}

#[derive(Deserialize)]
struct CartanFile {
    cartan: Vec<Vec<i64>>,
    #[serde(default)]
    norms: Option<Vec<i64>>,
}

impl CartanDatum {
    /// Validates the datum and generates its positive roots.
    ///
    /// `norms[i]` is `(αᵢ,αᵢ)/2`. When `None`, the smallest integer
    /// symmetrizer is used (shortest roots get norm 1).
    pub fn new(
        name: impl Into<String>,
        cartan: Vec<Vec<i64>>,
        norms: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let rank = cartan.len();
        let bad = |msg: String| Err(Error::InvalidCartan(msg));
        if rank == 0 || rank > MAX_VARS {
            return bad(format!("rank must be between 1 and {MAX_VARS}, got {rank}"));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return bad(format!("row {i} has length {}, expected {rank}", row.len()));
            }
            if row[i] != 2 {
                return bad(format!("diagonal entry {i} is {}, expected 2", row[i]));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && a > 0 {
                    return bad(format!("off-diagonal entry ({i},{j}) is positive"));
                }
                if (a == 0) != (cartan[j][i] == 0) {
                    return bad(format!("entries ({i},{j}) and ({j},{i}) must vanish together"));
                }
            }
        }
        let norms = match norms {
            Some(n) => n,
            None => symmetrizer(&cartan)?,
        };
        if norms.len() != rank {
            return bad(format!("{} norms given for rank {rank}", norms.len()));
        }
        if norms.iter().any(|d| !d.is_positive()) {
            return bad("root norms must be positive".into());
        }
        let form: Vec<Vec<Rational>> = (0..rank)
            .map(|i| (0..rank).map(|j| norms[i] * cartan[i][j]).collect())
            .collect();
        for i in 0..rank {
            for j in 0..i {
                if form[i][j] != form[j][i] {
                    return bad(format!(
                        "norms do not symmetrize the Cartan matrix at ({i},{j})"
                    ));
                }
            }
        }
        if !positive_definite(&form) {
            return bad("quadratic form is not positive definite (not of finite type)".into());
        }
        let cartan_rat: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|r| r.iter().map(|&a| Rational::from_integer(a)).collect())
            .collect();
        let cartan_inv = invert(&cartan_rat).ok_or_else(|| {
            Error::InvalidCartan("Cartan matrix is singular".into())
        })?;
        let mut datum = CartanDatum {
            name: name.into(),
            cartan,
            norms,
            form,
            cartan_inv,
            positive_roots: Vec::new(),
        };
        datum.positive_roots = datum.generate_positive_roots()?;
        Ok(datum)
    }

    /// Built-in algebra by name: `A1`–`A8`, `B2`–`B8`, `C2`–`C8`, `D4`–`D8`,
    /// `G2`, `F4`, `E6`.
    pub fn from_name(name: &str) -> Result<Self> {
        let upper = name.trim().to_ascii_uppercase();
        let unknown = || Error::UnknownAlgebra(name.to_string());
        let (family, n) = upper.split_at(1.min(upper.len()));
        let n: usize = n.parse().map_err(|_| unknown())?;
        let (cartan, norms): (Vec<Vec<i64>>, Vec<i64>) = match (family, n) {
            ("A", 1..=8) => (chain(n), vec![1; n]),
            ("B", 2..=8) => {
                let mut a = chain(n);
                a[n - 1][n - 2] = -2;
                let mut d = vec![2; n];
                d[n - 1] = 1;
                (a, d)
            }
            ("C", 2..=8) => {
                let mut a = chain(n);
                a[n - 2][n - 1] = -2;
                let mut d = vec![1; n];
                d[n - 1] = 2;
                (a, d)
            }
            ("D", 4..=8) => {
                let mut a = chain(n - 1);
                for row in a.iter_mut() {
                    row.push(0);
                }
                let mut last = vec![0; n];
                last[n - 1] = 2;
                last[n - 3] = -1;
                a[n - 3][n - 1] = -1;
                a.push(last);
                (a, vec![1; n])
            }
            ("G", 2) => (vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
            ("F", 4) => (
                vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -1, 0],
                    vec![0, -2, 2, -1],
                    vec![0, 0, -1, 2],
                ],
                vec![2, 2, 1, 1],
            ),
            ("E", 6) => {
                let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
                let mut a = vec![vec![0; 6]; 6];
                for (i, row) in a.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for (i, j) in edges {
                    a[i][j] = -1;
                    a[j][i] = -1;
                }
                (a, vec![1; 6])
            }
            _ => return Err(unknown()),
        };
        let norms = norms.into_iter().map(Rational::from_integer).collect();
        Self::new(upper, cartan, Some(norms))
    }

    /// Loads `{"cartan": [[..]], "norms": [..]}`; `norms` is optional.
    pub fn from_json_str(name: &str, json: &str) -> Result<Self> {
        let f: CartanFile = serde_json::from_str(json)?;
        let norms = f
            .norms
            .map(|n| n.into_iter().map(Rational::from_integer).collect());
        Self::new(name, f.cartan, norms)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Self::from_json_str(&name, &text)
    }

    /// A built-in name, or a path to a JSON Cartan file.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        let path = Path::new(name_or_path);
        if name_or_path.ends_with(".json") || path.is_file() {
            Self::from_json_file(path)
        } else {
            Self::from_name(name_or_path)
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `dᵢ = (αᵢ,αᵢ)/2`.
    pub fn norms(&self) -> &[Rational] {
        &self.norms
    }

    /// Gram matrix `(αᵢ,αⱼ)`.
    pub fn form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    pub fn cartan_inverse(&self) -> &[Vec<Rational>] {
        &self.cartan_inv
    }

    /// Stable hash of the Cartan matrix and normalization, used as a cache key.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{:?}|", self.cartan).as_bytes());
        for d in &self.norms {
            h.update(format!("{d},").as_bytes());
        }
        let digest = h.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if n == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: n,
            })
        }
    }

    /// The symmetric form `(x, y)`; either argument may be a root or a weight.
    pub fn bilinear<X, Y>(&self, x: &X, y: &Y) -> Result<Rational>
    where
        X: RootCoordinates + ?Sized,
        Y: RootCoordinates + ?Sized,
    {
        let cx = x.root_coords(self)?;
        let cy = y.root_coords(self)?;
        Ok(self.form_on_coords(&cx, &cy))
    }

    pub(crate) fn form_on_coords(&self, cx: &[Rational], cy: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in cx.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in cy.iter().enumerate() {
                if !b.is_zero() {
                    acc += a * self.form[i][j] * b;
                }
            }
        }
        acc
    }

    /// Simple-root coordinates of an integral weight.
    pub fn labels_to_root_coords(&self, labels: &[i64]) -> Vec<Rational> {
        self.cartan_inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(labels)
                    .map(|(a, &m)| a * m)
                    .sum::<Rational>()
            })
            .collect()
    }

    /// Dynkin labels of an element of the root lattice.
    pub fn root_to_labels(&self, root: &[i64]) -> Vec<i64> {
        self.cartan
            .iter()
            .map(|row| row.iter().zip(root).map(|(a, c)| a * c).sum())
            .collect()
    }

    /// Converts a weight to the simple-root basis and back.
    pub fn root_coords_to_weight(&self, coords: &[Rational]) -> WeightVector {
        WeightVector(
            self.cartan
                .iter()
                .map(|row| row.iter().zip(coords).map(|(&a, c)| c * a).sum())
                .collect(),
        )
    }

    fn generate_positive_roots(&self) -> Result<Vec<RootVector>> {
        let r = self.rank();
        let mut all: HashSet<Vec<i64>> = HashSet::new();
        let mut out: Vec<RootVector> = Vec::new();
        let mut layer: BTreeSet<Vec<i64>> = (0..r).map(|i| RootVector::simple(r, i).0).collect();
        let mut height = 1;
        while !layer.is_empty() {
            if height > MAX_ROOT_HEIGHT {
                return Err(Error::NotFiniteType(MAX_ROOT_HEIGHT));
            }
            all.extend(layer.iter().cloned());
            let mut next = BTreeSet::new();
            for beta in &layer {
                for i in 0..r {
                    // length of the αᵢ-string below β
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if all.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..r).map(|j| self.cartan[i][j] * beta[j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            // descending lex within a height: α₁ before α₂, and so on
            out.extend(layer.into_iter().rev().map(RootVector));
            layer = next;
            height += 1;
        }
        Ok(out)
    }

    /// Φ⁺ ordered by height, then descending lexicographic on coordinates.
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &RootVector {
        self.positive_roots.last().expect("rank ≥ 1")
    }

    /// `h = ht(θ) + 1`.
    pub fn coxeter_number(&self) -> i64 {
        self.highest_root().height() + 1
    }

    /// ρ = (1, …, 1), after checking `2ρ = Σ_{α∈Φ⁺} α`.
    pub fn weyl_vector(&self) -> Result<WeightVector> {
        let r = self.rank();
        let rho = WeightVector::from_labels(&vec![1; r]);
        let mut sum = vec![0i64; r];
        for a in &self.positive_roots {
            for (s, n) in sum.iter_mut().zip(&a.0) {
                *s += n;
            }
        }
        let two_rho: Vec<Rational> = rho
            .root_coords(self)?
            .into_iter()
            .map(|c| c * 2)
            .collect();
        let expected: Vec<Rational> = sum.iter().map(|&s| Rational::from_integer(s)).collect();
        if two_rho != expected {
            return Err(Error::Inconsistent(format!(
                "2ρ = {two_rho:?} but the positive roots sum to {sum:?}"
            )));
        }
        Ok(rho)
    }

    /// Simple-root coordinates of ρ; these are the exponents `kᵢ` of the
    /// normalizing monomial `∏ uᵢ^{kᵢ}` (half the top degree of `∏(e^α − 1)`).
    pub fn rho_root_coords(&self) -> Vec<Rational> {
        self.labels_to_root_coords(&vec![1; self.rank()])
    }

    /// `sᵢ(μ) = μ − μᵢ αᵢ` on Dynkin labels.
    pub fn reflect_labels(&self, labels: &mut [i64], i: usize) {
        let mi = labels[i];
        if mi != 0 {
            for (k, l) in labels.iter_mut().enumerate() {
                *l -= mi * self.cartan[k][i];
            }
        }
    }

    /// Weyl orbit of an integral weight, in breadth-first order from the seed.
    pub fn weyl_orbit_labels(&self, seed: &[i64]) -> Vec<Vec<i64>> {
        orbit_bfs(seed.to_vec(), self.rank(), |v, i| {
            let mut w = v.to_vec();
            self.reflect_labels(&mut w, i);
            w
        })
    }

    /// Weyl orbit of an arbitrary (rational) weight.
    pub fn weyl_orbit(&self, w: &WeightVector) -> Result<Vec<WeightVector>> {
        self.check_len(w.rank())?;
        let orbit = orbit_bfs(w.0.clone(), self.rank(), |v, i| {
            let mi = v[i];
            v.iter()
                .enumerate()
                .map(|(k, l)| l - mi * self.cartan[k][i])
                .collect()
        });
        Ok(orbit.into_iter().map(WeightVector).collect())
    }

    /// The dominant element of the orbit of `labels`.
    pub fn dominant_representative(&self, labels: &[i64]) -> Vec<i64> {
        let mut v = labels.to_vec();
        while let Some(i) = v.iter().position(|&m| m < 0) {
            self.reflect_labels(&mut v, i);
        }
        v
    }

    /// The antidominant element of the orbit (the lowest weight `w₀μ` for
    /// dominant `μ`).
    pub fn antidominant_representative(&self, labels: &[i64]) -> Vec<i64> {
        let mut v = labels.to_vec();
        while let Some(i) = v.iter().position(|&m| m > 0) {
            self.reflect_labels(&mut v, i);
        }
        v
    }
}

fn orbit_bfs<T, F>(seed: Vec<T>, rank: usize, reflect: F) -> Vec<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&[T], usize) -> Vec<T>,
{
    let mut seen: HashSet<Vec<T>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed);
    while let Some(v) = queue.pop_front() {
        for i in 0..rank {
            let w = reflect(&v, i);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
        out.push(v);
    }
    out
}

fn chain(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

/// Smallest symmetrizer `d` with `dᵢ A[i][j] = dⱼ A[j][i]`, scaled so that
/// the minimum over each connected component is 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Rational>> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        d[start] = Some(Rational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = di * cartan[i][j] / cartan[j][i];
                match d[j] {
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidCartan(
                            "Cartan matrix is not symmetrizable".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        let min = component.iter().map(|&k| d[k].unwrap()).min().unwrap();
        for &k in &component {
            d[k] = Some(d[k].unwrap() / min);
        }
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}

/// Sylvester's criterion via fraction-exact Gaussian elimination.
fn positive_definite(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let v = a[k][j] * f;
                a[i][j] -= v;
            }
        }
    }
    true
}

pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c] * f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

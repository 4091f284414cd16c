//! Published F₄ reference data: special-root tables, tuples with signs, and
//! the displayed polynomials in the variables `x = u₁ = u₂`, `y = u₃ = u₄`.

use crate::error::{Error, Result};
use crate::expr::parse_polynomial;
use crate::laurent::LaurentPolynomial;
use crate::rootsys::RootVector;

pub const F4_SPECIAL_ROOTS: &str = include_str!("../data/f4_special_roots.tsv");
pub const F4_TUPLES: &str = include_str!("../data/f4_tuples.tsv");
/// `P⁺(x, y, s₁, s₂, s₃, s₄)`; the full numerator is `P⁺(x,y) + P⁺(1/x,1/y)`.
pub const F4_P_PLUS: &str = include_str!("../data/f4_p_plus.txt");

/// `A(ρ)` after `u₁ = u₂ = x`, `u₃ = u₄ = y`.
pub const F4_DENOMINATOR_XY: &str = "x^-23 y^-32 (1 + x) (1 + y) (-1 + x)^3 (-1 + y)^3 \
    (-1 + x y)^4 (1 + x y)^2 (-1 + x^2 y) (-1 + x y^2)^4 (1 + x y^2) \
    (1 + x y + x^2 y^2) (-1 + x^3 y^2) (-1 + x y^3) (-1 + x^2 y^3)^2 (1 + x^2 y^3) \
    (-1 + x y^4) (1 + x y^2 + x^2 y^4) (-1 + x^3 y^4)^2 (-1 + x^3 y^5) (-1 + x^5 y^6)";

/// `Ch(λ₁)` in `x, y`.
pub const F4_CH_L1_XY: &str = "x^-5 y^-6 (1 + x^2 y^2) (1 + x + x^2 + x^2 y + x^2 y^2 \
    + x^2 y^3 + x^3 y^3 + x^2 y^4 + 2 x^3 y^4 + x^4 y^4 + x^5 y^4 + x^3 y^5 + x^5 y^5 \
    + x^3 y^6 + x^4 y^6 + 2 x^5 y^6 + x^6 y^6 + x^5 y^7 + x^6 y^7 + x^6 y^8 + x^6 y^9 \
    + x^6 y^10 + x^7 y^10 + x^8 y^10)";

/// `Ch(λ₃+λ₄)` in `x, y`.
pub const F4_CH_L3L4_XY: &str = "x^-9 y^-14 (1 + y)^2 (1 + x y)^2 (1 + x^2 y) (1 + y^2) \
    (1 + x y^2) (1 + x^2 y^2) (1 - x y + x^2 y^2) (1 + x y^3) (1 + x^2 y^3) \
    (1 + x^3 y^4) (1 + x^3 y^5)";

/// `V(λ₁) ⊗ V(λ₃+λ₄)`, constituents in the published order.
pub const F4_TENSOR_L1_L3L4: [([i64; 4], u32); 12] = [
    ([1, 0, 1, 1], 1),
    ([0, 0, 1, 2], 1),
    ([0, 0, 2, 0], 1),
    ([0, 1, 0, 1], 1),
    ([1, 0, 0, 2], 1),
    ([1, 0, 1, 0], 1),
    ([0, 0, 1, 1], 2),
    ([0, 0, 0, 3], 1),
    ([0, 1, 0, 0], 1),
    ([1, 0, 0, 1], 1),
    ([0, 0, 0, 2], 1),
    ([0, 0, 1, 0], 1),
];

pub const XY: [&str; 2] = ["x", "y"];

pub fn parse_xy(src: &str) -> Result<LaurentPolynomial> {
    parse_polynomial(src, &XY, &[])
}

/// `P⁺` at the given `s`.
pub fn f4_p_plus(s: [i64; 4]) -> Result<LaurentPolynomial> {
    parse_polynomial(
        F4_P_PLUS,
        &XY,
        &[("s1", s[0]), ("s2", s[1]), ("s3", s[2]), ("s4", s[3])],
    )
}

fn data_lines(src: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    src.lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
        .map(|(n, l)| (n + 1, l.split('\t').collect()))
}

fn ints(field: &str, line: usize) -> Result<Vec<i64>> {
    field
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("line {line}: bad integer {t:?}"))))
        .collect()
}

/// `tables[i][I−1] = γᵢ(I)`.
pub fn f4_special_roots() -> Result<Vec<Vec<RootVector>>> {
    let mut tables: Vec<Vec<RootVector>> = vec![Vec::new(); 4];
    for (n, f) in data_lines(F4_SPECIAL_ROOTS) {
        let [i, row, coords] = f[..] else {
            return Err(Error::Parse(format!("line {n}: expected 3 fields")));
        };
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("line {n}: bad index")))?;
        let row: usize = row.parse().map_err(|_| Error::Parse(format!("line {n}: bad row")))?;
        let table = tables
            .get_mut(i.wrapping_sub(1))
            .ok_or_else(|| Error::Parse(format!("line {n}: index {i} out of range")))?;
        if row != table.len() + 1 {
            return Err(Error::Parse(format!("line {n}: rows out of sequence")));
        }
        table.push(RootVector(ints(coords, n)?));
    }
    Ok(tables)
}

/// `(Γ_A, ε_A)` for `A = 1, 2, …`, with 1-based row indices.
pub fn f4_tuples() -> Result<Vec<(Vec<u32>, i8)>> {
    data_lines(F4_TUPLES)
        .map(|(n, f)| {
            let [_, idx, sign] = f[..] else {
                return Err(Error::Parse(format!("line {n}: expected 3 fields")));
            };
            let idx = ints(idx, n)?.into_iter().map(|v| v as u32).collect();
            let sign = match sign.trim() {
                "+1" => 1,
                "-1" => -1,
                s => return Err(Error::Parse(format!("line {n}: bad signature {s:?}"))),
            };
            Ok((idx, sign))
        })
        .collect()
}

// SPDX-License-Identifier: Apache-2.0

//! Trace-zero Hamilton quaternions and positive-definite ternary forms.
//!
//! Vectors live in the trace-zero part of the quaternion algebra with
//! `i² = j² = −1`, `ij = k = −ji`; the reduced norm there is the sum of
//! squares of the `i, j, k` coefficients. A [`TernaryForm`] is the reduced
//! norm restricted to a rank-3 lattice, stored as an integer coefficient
//! matrix: `gram[i][i]` is the coefficient of `vᵢ²` and `gram[i][j]`
//! (`i ≠ j`) is the coefficient of the cross term `vᵢvⱼ`, i.e. twice the
//! polarization `B(bᵢ, bⱼ)`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// A trace-zero quaternion `x·i + y·j + z·k` with rational coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuaternionVec {
    pub x: Ratio<i64>,
    pub y: Ratio<i64>,
    pub z: Ratio<i64>,
}

impl QuaternionVec {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn i() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn j() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn k() -> Self {
        Self::new(0, 0, 1)
    }

    pub fn scale(self, a: i64) -> Self {
        Self {
            x: self.x * a,
            y: self.y * a,
            z: self.z * a,
        }
    }

    /// Reduced norm `x² + y² + z²`.
    pub fn nrd(&self) -> Ratio<i64> {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Polarization `B(u, v) = (nrd(u+v) − nrd(u) − nrd(v)) / 2`.
    pub fn polar(&self, other: &Self) -> Ratio<i64> {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

impl std::ops::Add for QuaternionVec {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            x: self.x + o.x,
            y: self.y + o.y,
            z: self.z + o.z,
        }
    }
}

impl std::ops::Sub for QuaternionVec {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            x: self.x - o.x,
            y: self.y - o.y,
            z: self.z - o.z,
        }
    }
}

pub fn nrd(v: &QuaternionVec) -> Ratio<i64> {
    v.nrd()
}

/// Positive-definite integral ternary quadratic form (see module docs for
/// the storage convention).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct TernaryForm {
    gram: [[i64; 3]; 3],
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    gram: [[i64; 3]; 3],
}

impl TryFrom<RawForm> for TernaryForm {
    type Error = Error;
    fn try_from(raw: RawForm) -> Result<Self> {
        TernaryForm::from_gram(raw.gram)
    }
}

impl From<TernaryForm> for RawForm {
    fn from(f: TernaryForm) -> Self {
        RawForm { gram: f.gram }
    }
}

impl TernaryForm {
    /// Builds a form from a symmetric coefficient matrix, rejecting
    /// asymmetric or non-positive-definite input.
    pub fn from_gram(gram: [[i64; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NonIntegralGram(format!(
                        "asymmetric entry ({i},{j})"
                    )));
                }
            }
        }
        let form = Self { gram };
        if !form.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(form)
    }

    /// `a·x² + b·y² + c·z² + d·yz + e·xz + f·xy`.
    pub fn from_coefficients(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Result<Self> {
        Self::from_gram([[a, f, e], [f, b, d], [e, d, c]])
    }

    pub fn diagonal(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::from_coefficients(a, b, c, 0, 0, 0)
    }

    pub fn gram(&self) -> [[i64; 3]; 3] {
        self.gram
    }

    /// Polarization matrix `B` with half-integral off-diagonal entries.
    pub fn bilinear(&self) -> [[Q; 3]; 3] {
        let mut b = [[Q::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = if i == j {
                    Q::from_integer(self.gram[i][i] as i128)
                } else {
                    Q::new(self.gram[i][j] as i128, 2)
                };
            }
        }
        b
    }

    /// Determinant of the polarization matrix.
    pub fn determinant(&self) -> Ratio<i64> {
        let d = det3(&self.bilinear());
        Ratio::new(*d.numer() as i64, *d.denom() as i64)
    }

    fn is_positive_definite(&self) -> bool {
        let b = self.bilinear();
        let m1 = b[0][0];
        let m2 = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        m1.is_positive() && m2.is_positive() && det3(&b).is_positive()
    }

    pub fn value(&self, v: [i64; 3]) -> i64 {
        let g = &self.gram;
        g[0][0] * v[0] * v[0]
            + g[1][1] * v[1] * v[1]
            + g[2][2] * v[2] * v[2]
            + g[1][2] * v[1] * v[2]
            + g[0][2] * v[0] * v[2]
            + g[0][1] * v[0] * v[1]
    }

    /// The same form with variables permuted: new variable `i` is old
    /// variable `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let mut g = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = self.gram[perm[i]][perm[j]];
            }
        }
        Self { gram: g }
    }

    fn completion(&self) -> Completion {
        let b = self.bilinear();
        let q11 = b[0][0];
        let mu12 = b[0][1] / q11;
        let mu13 = b[0][2] / q11;
        let q22 = b[1][1] - b[0][1] * mu12;
        let mu23 = (b[1][2] - b[0][1] * mu13) / q22;
        let q33 = det3(&b) / (q11 * q22);
        Completion {
            q11,
            q22,
            q33,
            mu12,
            mu13,
            mu23,
        }
    }

    /// Calls `visit(v, value)` for every integer vector with `value(v) ≤ max`.
    ///
    /// Coordinate ranges come from completing the square with exact
    /// rationals, so no vector is missed or double counted.
    pub fn for_each_point<F: FnMut([i64; 3], u64)>(&self, max: u64, mut visit: F) {
        let c = self.completion();
        let g = &self.gram;
        let budget = Q::from_integer(max as i128);
        let Some((lo3, hi3)) = integer_window(Q::zero(), budget / c.q33) else {
            return;
        };
        for v3 in lo3..=hi3 {
            let rest3 = budget - c.q33 * Q::from_integer(v3 * v3);
            let shift2 = c.mu23 * Q::from_integer(v3);
            let Some((lo2, hi2)) = integer_window(shift2, rest3 / c.q22) else {
                continue;
            };
            for v2 in lo2..=hi2 {
                let t = Q::from_integer(v2) + shift2;
                let rest2 = rest3 - c.q22 * t * t;
                let shift1 = c.mu12 * Q::from_integer(v2) + c.mu13 * Q::from_integer(v3);
                let Some((lo1, hi1)) = integer_window(shift1, rest2 / c.q11) else {
                    continue;
                };
                let (v2, v3) = (v2 as i64, v3 as i64);
                let lin = g[0][1] * v2 + g[0][2] * v3;
                let konst = g[1][1] * v2 * v2 + g[2][2] * v3 * v3 + g[1][2] * v2 * v3;
                for v1 in lo1 as i64..=hi1 as i64 {
                    let val = g[0][0] * v1 * v1 + lin * v1 + konst;
                    debug_assert!(val >= 0 && val as u64 <= max);
                    visit([v1, v2, v3], val as u64);
                }
            }
        }
    }

    /// Number of integer vectors with `value(v) = m`.
    pub fn count_reps(&self, m: u64) -> u64 {
        if m == 0 {
            return 1;
        }
        let c = self.completion();
        let g = &self.gram;
        let budget = Q::from_integer(m as i128);
        let mut count = 0u64;
        let Some((lo3, hi3)) = integer_window(Q::zero(), budget / c.q33) else {
            return 0;
        };
        let a = g[0][0] as i128;
        for v3 in lo3..=hi3 {
            let rest3 = budget - c.q33 * Q::from_integer(v3 * v3);
            let shift2 = c.mu23 * Q::from_integer(v3);
            let Some((lo2, hi2)) = integer_window(shift2, rest3 / c.q22) else {
                continue;
            };
            for v2 in lo2..=hi2 {
                let lin = g[0][1] as i128 * v2 + g[0][2] as i128 * v3;
                let konst = g[1][1] as i128 * v2 * v2
                    + g[2][2] as i128 * v3 * v3
                    + g[1][2] as i128 * v2 * v3
                    - m as i128;
                // a·v1² + lin·v1 + konst = 0
                let disc = lin * lin - 4 * a * konst;
                if disc < 0 {
                    continue;
                }
                let r = isqrt(disc as u128) as i128;
                if r * r != disc {
                    continue;
                }
                for num in [-lin + r, -lin - r] {
                    if num % (2 * a) == 0 {
                        count += 1;
                    }
                    if r == 0 {
                        break;
                    }
                }
            }
        }
        count
    }

    /// `hist[m]` = number of representations of `m`, for `0 ≤ m ≤ max`,
    /// from one sweep of the ellipsoid.
    pub fn reps_histogram(&self, max: u64) -> Vec<u64> {
        let mut hist = vec![0u64; max as usize + 1];
        self.for_each_point(max, |_, val| hist[val as usize] += 1);
        hist
    }

    /// Like [`reps_histogram`](Self::reps_histogram) with a per-vector weight.
    pub fn weighted_histogram<W: Fn([i64; 3]) -> i64>(&self, max: u64, weight: W) -> Vec<i64> {
        let mut hist = vec![0i64; max as usize + 1];
        self.for_each_point(max, |v, val| hist[val as usize] += weight(v));
        hist
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.gram;
        let terms = [
            (g[0][0], "x^2"),
            (g[1][1], "y^2"),
            (g[2][2], "z^2"),
            (g[1][2], "yz"),
            (g[0][2], "xz"),
            (g[0][1], "xy"),
        ];
        let mut first = true;
        for (c, mono) in terms {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{mono}")?;
            first = false;
        }
        Ok(())
    }
}

struct Completion {
    q11: Q,
    q22: Q,
    q33: Q,
    mu12: Q,
    mu13: Q,
    mu23: Q,
}

fn det3(b: &[[Q; 3]; 3]) -> Q {
    b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0])
}

/// Integers `v` with `(v + shift)² ≤ bound`, as an inclusive range.
fn integer_window(shift: Q, bound: Q) -> Option<(i128, i128)> {
    if bound.is_negative() {
        return None;
    }
    let (cn, cd) = (*shift.numer(), *shift.denom());
    // (v·cd + cn)² ≤ bound·cd², and the left side is an integer.
    let scaled = (bound * Q::from_integer(cd * cd)).floor().to_integer();
    let s = isqrt(scaled as u128) as i128;
    let lo = num_integer::div_ceil(-s - cn, cd);
    let hi = num_integer::div_floor(s - cn, cd);
    (lo <= hi).then_some((lo, hi))
}

/// Reduced-norm form on `ℤb₁ ⊕ ℤb₂ ⊕ ℤb₃`.
pub fn gram_from_basis(b1: QuaternionVec, b2: QuaternionVec, b3: QuaternionVec) -> Result<TernaryForm> {
    let basis = [b1, b2, b3];
    let mut gram = [[0i64; 3]; 3];
    let mut polar = [[Q::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let p = basis[i].polar(&basis[j]);
            polar[i][j] = Q::new(*p.numer() as i128, *p.denom() as i128);
            let entry = if i == j { p } else { p * 2 };
            if !entry.is_integer() {
                return Err(Error::NonIntegralGram(format!("({i},{j}) = {p}")));
            }
            gram[i][j] = entry.to_integer();
        }
    }
    if det3(&polar).is_zero() {
        return Err(Error::DegenerateBasis);
    }
    // nrd is positive definite on trace-zero vectors, so a nondegenerate
    // basis always gives a positive-definite form.
    TernaryForm::from_gram(gram)
}

/// Parses `"2i-2j+k"`-style trace-zero quaternions with integer
/// coefficients. Used for the committed lattice bases.
pub fn parse_quaternion(s: &str) -> Result<QuaternionVec> {
    let mut coefs = [0i64; 3];
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = cleaned.as_str();
    let bad = || Error::Internal(format!("cannot parse quaternion {s:?}"));
    while !rest.is_empty() {
        let (sign, tail) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let digits = tail.chars().take_while(|c| c.is_ascii_digit()).count();
        let coef: i64 = if digits == 0 {
            1
        } else {
            tail[..digits].parse().map_err(|_| bad())?
        };
        let unit = tail[digits..].chars().next().ok_or_else(bad)?;
        let idx = match unit {
            'i' => 0,
            'j' => 1,
            'k' => 2,
            _ => return Err(bad()),
        };
        coefs[idx] += sign * coef;
        rest = &tail[digits + 1..];
    }
    Ok(QuaternionVec::new(coefs[0], coefs[1], coefs[2]))
}

// SPDX-License-Identifier: Apache-2.0

//! Complete 2-descent on `y² = x(x − e₁m)(x − e₂m)`.
//!
//! `Sel₂` is the set of `Λ = (b₁, b₂) ∈ ℚ(S,2)²` lying in every local Kummer
//! image `κ_v(E(ℚ_v))` for `v ∈ S`. `ℚ(S,2)` is generated by `−1` and the
//! primes of `S`, enumerated in that order.

pub mod local;
pub mod redei;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use local::{clambda_locally_solvable, local_image, LocalImage};
pub use redei::{redei_block_system, sel2_redei_fastpath, RedeiBlockData};

use crate::arith::{prime_divisors, squarefree_part};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::lfunc::{l_value_1, torsion::torsion, TwistCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Square-free representatives of a class in `ℚ(S,2)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SelmerPair {
    pub b1: i64,
    pub b2: i64,
}

impl SelmerPair {
    /// Reduces arbitrary nonzero integers to square-free representatives.
    pub fn new(b1: i64, b2: i64) -> Self {
        Self {
            b1: squarefree_part(b1 as i128) as i64,
            b2: squarefree_part(b2 as i128) as i64,
        }
    }

    pub fn mul(&self, other: &SelmerPair) -> SelmerPair {
        SelmerPair::new(self.b1 * other.b1, self.b2 * other.b2)
    }
}

impl fmt::Display for SelmerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b1, self.b2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelmerResult {
    pub s_set: Vec<Place>,
    pub members: Vec<SelmerPair>,
    pub dim: u32,
    pub torsion_dim: u32,
    pub quotient_dim: u32,
}

impl SelmerResult {
    pub fn member_set(&self) -> BTreeSet<SelmerPair> {
        self.members.iter().copied().collect()
    }
}

/// Primes of `2m·e₁e₂(e₁ − e₂)` followed by `∞`.
pub fn s_set(e1: i64, e2: i64, m: i64) -> Vec<Place> {
    let prod = 2 * m as i128 * e1 as i128 * e2 as i128 * (e1 - e2) as i128;
    let mut places: Vec<Place> = prime_divisors(prod)
        .into_iter()
        .map(|p| Place::Finite(p as u64))
        .collect();
    places.push(Place::Infinity);
    places
}

/// `κ` of the 2-torsion points `O, (0,0), (e₁m,0), (e₂m,0)`.
pub fn torsion_lambdas(e1: i64, e2: i64, m: i64) -> [SelmerPair; 4] {
    // e₂/e₁ and (e₁ − e₂)/e₁ have the square classes of e₁e₂ and e₁(e₁ − e₂).
    [
        SelmerPair::new(1, 1),
        SelmerPair::new(e1 * e2, -e1 * m),
        SelmerPair::new(e1 * m, e1 * (e1 - e2)),
        SelmerPair::new(e2 * m, (e2 - e1) * m),
    ]
}

/// `κ(P)` for an affine rational point with integer abscissa.
pub fn kummer(e1: i64, e2: i64, m: i64, x: i128) -> SelmerPair {
    let (a, b) = ((e1 * m) as i128, (e2 * m) as i128);
    let sf = |v: i128| squarefree_part(v) as i64;
    if x == 0 {
        SelmerPair { b1: sf(a * b), b2: sf(-a) }
    } else if x == a {
        SelmerPair { b1: sf(a), b2: sf(a * (a - b)) }
    } else {
        SelmerPair { b1: sf(x), b2: sf(x - a) }
    }
}

/// Generators `−1, p₁, …` of `ℚ(S,2)`.
pub(crate) fn generators(s: &[Place]) -> Vec<i64> {
    std::iter::once(-1)
        .chain(s.iter().filter_map(|p| match p {
            Place::Finite(p) => Some(*p as i64),
            Place::Infinity => None,
        }))
        .collect()
}

/// Coordinates of a square-free integer over `generators`.
fn coords(b: i64, gens: &[i64]) -> Option<Vec<u8>> {
    let mut rest = b;
    let mut out = vec![0u8; gens.len()];
    if rest < 0 {
        out[0] = 1;
        rest = -rest;
    }
    for (i, &p) in gens.iter().enumerate().skip(1) {
        if rest % p == 0 {
            out[i] = 1;
            rest /= p;
        }
    }
    (rest == 1).then_some(out)
}

pub(crate) fn pair_vector(l: SelmerPair, gens: &[i64]) -> Option<BitVec> {
    let mut bits = coords(l.b1, gens)?;
    bits.extend(coords(l.b2, gens)?);
    Some(BitVec::from_bits(&bits))
}

/// F₂-dimension of the span of `κ(E(ℚ)_tor)`.
pub fn torsion_dim(e1: i64, e2: i64, m: i64) -> u32 {
    let curve = TwistCurve::TwoTorsion { e1, e2, m };
    let gens = generators(&s_set(e1, e2, m));
    let rows: Vec<Vec<u8>> = torsion(&curve)
        .two_power_points
        .iter()
        .map(|&(x, _)| {
            pair_vector(kummer(e1, e2, m, x), &gens)
                .expect("torsion images are supported on S")
                .bits()
        })
        .collect();
    BitMatrix::from_rows(&rows).rank() as u32
}

/// Assembles a [`SelmerResult`] after checking the group structure.
pub(crate) fn finish(e1: i64, e2: i64, m: i64, s: Vec<Place>, mut members: Vec<SelmerPair>) -> Result<SelmerResult> {
    members.sort();
    members.dedup();
    let set: BTreeSet<SelmerPair> = members.iter().copied().collect();
    if !set.contains(&SelmerPair::new(1, 1)) {
        return Err(Error::Internal("Selmer set lacks the identity".into()));
    }
    for x in &members {
        for y in &members {
            if !set.contains(&x.mul(y)) {
                return Err(Error::Internal(format!("Selmer set not closed: {x}·{y}")));
            }
        }
    }
    if !members.len().is_power_of_two() {
        return Err(Error::Internal("Selmer set size is not a power of two".into()));
    }
    for t in torsion_lambdas(e1, e2, m) {
        if !set.contains(&t) {
            return Err(Error::Internal(format!("torsion class {t} missing from Selmer set")));
        }
    }
    let dim = members.len().trailing_zeros();
    let tdim = torsion_dim(e1, e2, m);
    Ok(SelmerResult {
        s_set: s,
        members,
        dim,
        torsion_dim: tdim,
        quotient_dim: dim - tdim,
    })
}

/// The 2-Selmer group of `y² = x(x − e₁m)(x − e₂m)` by exhausting `ℚ(S,2)²`.
pub fn sel2(e1: i64, e2: i64, m: i64) -> Result<SelmerResult> {
    TwistCurve::two_torsion(e1, e2, m)?;
    let s = s_set(e1, e2, m);
    let gens = generators(&s);
    let images: Vec<LocalImage> = s
        .iter()
        .map(|&v| local_image(e1, e2, m, v))
        .collect::<Result<_>>()?;
    // codes[v][i] is the class code of the i-th generator at v
    let codes: Vec<Vec<u8>> = images
        .iter()
        .map(|img| gens.iter().map(|&g| local::class_code(g as i128, img.place)).collect())
        .collect();
    let g = gens.len();
    let mut members = Vec::new();
    for mask1 in 0u32..1 << g {
        for mask2 in 0u32..1 << g {
            let ok = images.iter().zip(&codes).all(|(img, c)| {
                let fold = |mask: u32| (0..g).filter(|i| mask >> i & 1 == 1).fold(0u8, |acc, i| acc ^ c[i]);
                img.contains_code(local::pair_code(fold(mask1), fold(mask2)))
            });
            if ok {
                let prod = |mask: u32| (0..g).filter(|i| mask >> i & 1 == 1).map(|i| gens[i]).product::<i64>();
                members.push(SelmerPair::new(prod(mask1), prod(mask2)));
            }
        }
    }
    finish(e1, e2, m, s, members)
}

/// Root number of `ny² = x³ − x`: `+1` iff `n ≡ 1, 2, 3 (mod 8)`.
pub fn congruent_root_number(n: i64) -> i32 {
    if [1, 2, 3].contains(&n.rem_euclid(8)) {
        1
    } else {
        -1
    }
}

/// Whether `dim Sel₂/κ(E_tor)` has the parity of the analytic rank, with the
/// root number taken from the closed form (congruent family) or from `L(1)`.
pub fn monsky_parity_check(curve: &TwistCurve) -> Result<bool> {
    let epsilon = match curve {
        TwistCurve::Congruent(n) => congruent_root_number(*n),
        TwistCurve::TwoTorsion { .. } => l_value_1(curve)?.epsilon,
    };
    let (e1, e2, m) = curve.params();
    let sel = sel2(e1, e2, m)?;
    Ok((sel.quotient_dim % 2 == 0) == (epsilon == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_set_examples() {
        use Place::*;
        assert_eq!(s_set(1, -3, 1), vec![Finite(2), Finite(3), Infinity]);
        assert_eq!(s_set(1, -1, 5), vec![Finite(2), Finite(5), Infinity]);
        assert_eq!(s_set(1, -3, 7), vec![Finite(2), Finite(3), Finite(7), Infinity]);
    }

    #[test]
    fn torsion_lambda_examples() {
        let t = torsion_lambdas(1, -3, 1);
        assert_eq!(t[0], SelmerPair::new(1, 1));
        assert_eq!(t[1], SelmerPair::new(-3, -1));
        assert_eq!(t[2], SelmerPair::new(1, 1));
        for (x, l) in [(0i128, t[1]), (1, t[2]), (-3, t[3])] {
            assert_eq!(kummer(1, -3, 1, x), l);
        }
    }

    #[test]
    fn torsion_image_has_dimension_two() {
        for (e1, e2, m) in [(1, -1, 1), (1, -3, 1), (1, -3, -13), (1, -1, 34)] {
            assert_eq!(torsion_dim(e1, e2, m), 2);
        }
    }

    #[test]
    fn congruent_one_has_trivial_quotient() {
        let s = sel2(1, -1, 1).unwrap();
        assert_eq!(s.quotient_dim, 0);
        assert_eq!(s.dim, 2);
    }

    #[test]
    fn known_congruent_ranks() {
        // 5, 6, 7 are congruent (rank 1); 1, 2, 3 are not, with trivial Sha[2].
        for n in [5i64, 6, 7] {
            assert_eq!(sel2(1, -1, n).unwrap().quotient_dim, 1, "n={n}");
        }
        for n in [1i64, 2, 3] {
            assert_eq!(sel2(1, -1, n).unwrap().quotient_dim, 0, "n={n}");
        }
        // 41 is congruent with rank 2.
        assert_eq!(sel2(1, -1, 41).unwrap().quotient_dim, 2);
    }

    #[test]
    fn tiling_minus_thirteen() {
        assert!(sel2(1, -3, -13).unwrap().quotient_dim >= 2);
    }
}

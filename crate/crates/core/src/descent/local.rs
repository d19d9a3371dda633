// SPDX-License-Identifier: Apache-2.0

//! Local square classes and the images of the local Kummer maps.
//!
//! A class in `ℚ_v^×/ℚ_v^×²` is encoded as a small bit vector whose XOR is
//! the group law:
//!
//! * odd `p`: bit 0 is `v_p mod 2`, bit 1 marks a non-residue unit part;
//! * `p = 2`: bit 0 is `v_2 mod 2`, bit 1 marks `u ≡ 3 (mod 4)`, bit 2 marks
//!   `u ≡ ±3 (mod 8)`;
//! * `∞`: bit 0 is the sign.
//!
//! `C_Λ(ℚ_v) ≠ ∅` exactly when `Λ` lies in `κ_v(E(ℚ_v))`. That image is a
//! group of known order (4 at odd `p`, 8 at `p = 2`, 2 at `∞`), so it is
//! computed by collecting images of sampled local points until their span
//! reaches that order.

use super::{Place, SelmerPair};
use crate::arith::{legendre, valuation};
use crate::error::{Error, Result};

/// Bits per class code; pair codes pack `b₁` low and `b₂` high.
const CLASS_BITS: u32 = 3;

pub fn class_code(x: i128, place: Place) -> u8 {
    assert!(x != 0, "square class of zero");
    match place {
        Place::Infinity => (x < 0) as u8,
        Place::Finite(p) => {
            let p = p as i128;
            let v = valuation(x, p).unwrap();
            let u = x / p.pow(v);
            let par = (v & 1) as u8;
            if p == 2 {
                let r = u.rem_euclid(8);
                par | (((r % 4 == 3) as u8) << 1) | (((r == 3 || r == 5) as u8) << 2)
            } else {
                par | (((legendre(u, p) == -1) as u8) << 1)
            }
        }
    }
}

pub fn pair_code(c1: u8, c2: u8) -> u8 {
    c1 | (c2 << CLASS_BITS)
}

pub fn selmer_pair_code(l: SelmerPair, place: Place) -> u8 {
    pair_code(class_code(l.b1 as i128, place), class_code(l.b2 as i128, place))
}

/// The subgroup `κ_v(E(ℚ_v))` as a bitmask over pair codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalImage {
    pub place: Place,
    mask: u64,
}

impl LocalImage {
    pub fn contains_code(&self, code: u8) -> bool {
        self.mask >> code & 1 == 1
    }

    pub fn contains(&self, l: SelmerPair) -> bool {
        self.contains_code(selmer_pair_code(l, self.place))
    }

    pub fn size(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn codes(&self) -> Vec<u8> {
        (0..64).filter(|&c| self.contains_code(c)).collect()
    }
}

/// Order of `E(ℚ_v)/2E(ℚ_v)` when `E[2] ⊂ E(ℚ)`.
pub fn expected_image_size(place: Place) -> u32 {
    match place {
        Place::Infinity => 2,
        Place::Finite(2) => 8,
        Place::Finite(_) => 4,
    }
}

fn close(mask: u64, code: u8) -> u64 {
    if mask >> code & 1 == 1 {
        return mask;
    }
    let mut out = mask;
    for c in 0..64u8 {
        if mask >> c & 1 == 1 {
            out |= 1 << (c ^ code);
        }
    }
    out
}

/// `κ` of the local point with abscissa `x = N/d²` (so square classes of
/// `x − r` are those of `N − r·d²`), if `f(x)` is a nonzero local square.
fn kummer_sample(n: i128, d2: i128, a: i128, b: i128, place: Place) -> Option<u8> {
    let (f0, f1, f2) = (n, n.checked_sub(a.checked_mul(d2)?)?, n.checked_sub(b.checked_mul(d2)?)?);
    if f0 == 0 || f1 == 0 || f2 == 0 {
        return None;
    }
    let (c0, c1, c2) = (class_code(f0, place), class_code(f1, place), class_code(f2, place));
    (c0 ^ c1 ^ c2 == 0).then(|| pair_code(c0, c1))
}

/// `κ` of the 2-torsion points of `y² = x(x − a)(x − b)`.
pub fn torsion_codes(a: i128, b: i128, place: Place) -> [u8; 4] {
    let c = |x: i128| class_code(x, place);
    [
        0,
        pair_code(c(a * b), c(-a)),
        pair_code(c(a), c(a * (a - b))),
        pair_code(c(b), c(b - a)),
    ]
}

/// Computes `κ_v(E(ℚ_v))` for `y² = x(x − e₁m)(x − e₂m)`.
pub fn local_image(e1: i64, e2: i64, m: i64, place: Place) -> Result<LocalImage> {
    let (a, b) = ((e1 * m) as i128, (e2 * m) as i128);
    let target = expected_image_size(place);
    let mut mask = 1u64;
    for code in torsion_codes(a, b, place) {
        mask = close(mask, code);
    }
    let done = |mask: u64| mask.count_ones() >= target;
    let roots = [0i128, a, b];
    match place {
        Place::Infinity => {
            let top = roots.iter().copied().max().unwrap();
            let mut samples: Vec<i128> = roots.iter().flat_map(|&r| [4 * r + 1, 4 * r - 1]).collect();
            samples.push(4 * top + 4);
            for n in samples {
                if done(mask) {
                    break;
                }
                if let Some(code) = kummer_sample(n, 4, a, b, place) {
                    mask = close(mask, code);
                }
            }
        }
        Place::Finite(p) => {
            let pi = p as i128;
            let units: Vec<i128> = if p == 2 {
                (1..16).step_by(2).collect()
            } else {
                (1..pi.min(97)).collect()
            };
            let disc = a * b * (a - b);
            let depth = valuation(disc, pi).unwrap() + 4;
            'search: for j in 0..=depth {
                let pj = pi.checked_pow(j).ok_or(Error::PrecisionExhausted { p: p as i64 })?;
                for &w in &units {
                    for sign in [1i128, -1] {
                        let step = sign * w * pj;
                        let near_roots = roots.iter().map(|&r| (r + step, 1i128));
                        // x = ±w/p^{3j} probes the neighbourhood of infinity
                        let d2 = pj.checked_mul(pj).and_then(|d| d.checked_mul(d));
                        let far = d2.map(|d2| (sign * w * pj, d2));
                        for (n, d2) in near_roots.chain(far) {
                            if let Some(code) = kummer_sample(n, d2, a, b, place) {
                                mask = close(mask, code);
                                if done(mask) {
                                    break 'search;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if mask.count_ones() != target {
        let p = match place {
            Place::Finite(p) => p as i64,
            Place::Infinity => 0,
        };
        return Err(Error::PrecisionExhausted { p });
    }
    Ok(LocalImage { place, mask })
}

/// Whether `C_Λ` has a `ℚ_v`-point; `v` must lie in `S`.
pub fn clambda_locally_solvable(e1: i64, e2: i64, m: i64, lambda: SelmerPair, place: Place) -> Result<bool> {
    let s = super::s_set(e1, e2, m);
    if !s.contains(&place) {
        return Err(Error::PlaceOutsideS(place.to_string()));
    }
    Ok(local_image(e1, e2, m, place)?.contains(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_multiplicative() {
        for place in [Place::Finite(2), Place::Finite(3), Place::Finite(7), Place::Infinity] {
            for x in [-30i128, -7, -2, 1, 3, 5, 12, 50] {
                for y in [-5i128, -1, 2, 6, 7, 45] {
                    assert_eq!(class_code(x * y, place), class_code(x, place) ^ class_code(y, place));
                }
            }
        }
        assert_eq!(class_code(17, Place::Finite(2)), 0);
        assert_eq!(class_code(9 * 4, Place::Finite(3)), 0);
        assert_ne!(class_code(-1, Place::Finite(3)), 0);
        assert_eq!(class_code(-1, Place::Finite(5)), 0);
    }

    #[test]
    fn image_sizes_on_congruent_and_tiling() {
        for (e1, e2, m) in [(1, -1, 1), (1, -1, 5), (1, -1, 6), (1, -3, 1), (1, -3, -13), (1, -3, 35)] {
            for place in super::super::s_set(e1, e2, m) {
                let img = local_image(e1, e2, m, place).unwrap();
                assert_eq!(img.size(), expected_image_size(place), "({e1},{e2},{m}) at {place}");
            }
        }
    }

    #[test]
    fn places_outside_s_are_refused() {
        let err = clambda_locally_solvable(1, -3, 1, SelmerPair::new(1, 1), Place::Finite(5));
        assert!(matches!(err, Err(Error::PlaceOutsideS(_))));
    }

    // Independent check at odd p: a smooth point of C_Λ modulo p lifts by
    // Hensel's lemma, so the image must contain Λ whenever one exists.
    #[test]
    fn smooth_points_mod_p_imply_membership() {
        let (e1, e2, m) = (1i64, -3i64, 35i64);
        for p in [5u64, 7] {
            let img = local_image(e1, e2, m, Place::Finite(p)).unwrap();
            let pi = p as i64;
            for b1 in [1i64, -1, 5, 7, -5, -7, 35, 2, 3, -3] {
                for b2 in [1i64, -1, 5, 7, -7, 3, -3, 2, 10] {
                    if b1 % pi == 0 || b2 % pi == 0 {
                        continue;
                    }
                    let (f, g) = ((e1 * m).rem_euclid(pi), (e2 * m).rem_euclid(pi));
                    let mut smooth = false;
                    'scan: for z1 in 0..pi {
                        for z2 in 0..pi {
                            for z3 in 0..pi {
                                for t in 0..pi {
                                    if z1 == 0 && z2 == 0 && z3 == 0 && t == 0 {
                                        continue;
                                    }
                                    let q1 = b1 * z1 * z1 - b2 * z2 * z2 - f * t * t;
                                    let q2 = b1 * z1 * z1 - b1 * b2 * z3 * z3 - g * t * t;
                                    if q1.rem_euclid(pi) != 0 || q2.rem_euclid(pi) != 0 {
                                        continue;
                                    }
                                    // gradients (halved) of the two quadrics
                                    let r1 = [b1 * z1, -b2 * z2, 0, -f * t];
                                    let r2 = [b1 * z1, 0, -b1 * b2 * z3, -g * t];
                                    let minor = (0..4).any(|i| {
                                        (0..4).any(|j| (r1[i] * r2[j] - r1[j] * r2[i]).rem_euclid(pi) != 0)
                                    });
                                    if minor {
                                        smooth = true;
                                        break 'scan;
                                    }
                                }
                            }
                        }
                    }
                    if smooth {
                        assert!(img.contains(SelmerPair::new(b1, b2)), "p={p} Λ=({b1},{b2})");
                    }
                }
            }
        }
    }
}

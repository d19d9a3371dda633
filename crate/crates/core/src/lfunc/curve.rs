// SPDX-License-Identifier: Apache-2.0

//! Integral Weierstrass models `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆`.

use crate::arith::{mod_pos, val_or_inf};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weierstrass {
    pub a1: i128,
    pub a2: i128,
    pub a3: i128,
    pub a4: i128,
    pub a6: i128,
}

impl Weierstrass {
    pub fn new(a1: i128, a2: i128, a3: i128, a4: i128, a6: i128) -> Result<Self> {
        let w = Self { a1, a2, a3, a4, a6 };
        if w.discriminant() == 0 {
            return Err(Error::InvalidCurve(format!("singular model {w:?}")));
        }
        Ok(w)
    }

    /// `y² = x(x − a)(x − b)`.
    pub fn two_torsion_model(a: i128, b: i128) -> Result<Self> {
        Self::new(0, -(a + b), 0, a * b, 0)
    }

    pub fn b2(&self) -> i128 {
        self.a1 * self.a1 + 4 * self.a2
    }

    pub fn b4(&self) -> i128 {
        2 * self.a4 + self.a1 * self.a3
    }

    pub fn b6(&self) -> i128 {
        self.a3 * self.a3 + 4 * self.a6
    }

    pub fn b8(&self) -> i128 {
        let Self { a1, a2, a3, a4, a6 } = *self;
        a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> i128 {
        let b2 = self.b2();
        b2 * b2 - 24 * self.b4()
    }

    pub fn c6(&self) -> i128 {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
    }

    pub fn discriminant(&self) -> i128 {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    /// Substitution `x = x' + r`, `y = y' + s·x' + t`.
    pub fn shift(&self, r: i128, s: i128, t: i128) -> Self {
        let Self { a1, a2, a3, a4, a6 } = *self;
        Self {
            a1: a1 + 2 * s,
            a2: a2 - s * a1 + 3 * r - s * s,
            a3: a3 + r * a1 + 2 * t,
            a4: a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6: a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
        }
    }

    /// Scaling `x = u²x'`, `y = u³y'`; each `aᵢ` must be divisible by `uⁱ`.
    pub fn unscale(&self, u: i128) -> Self {
        let u2 = u * u;
        let u3 = u2 * u;
        debug_assert!(self.a1 % u == 0 && self.a2 % u2 == 0 && self.a3 % u3 == 0);
        debug_assert!(self.a4 % (u2 * u2) == 0 && self.a6 % (u3 * u3) == 0);
        Self {
            a1: self.a1 / u,
            a2: self.a2 / u2,
            a3: self.a3 / u3,
            a4: self.a4 / (u2 * u2),
            a6: self.a6 / (u3 * u3),
        }
    }

    /// `4x³ + b₂x² + 2b₄x + b₆`, whose roots are the x-coordinates of 2-torsion.
    pub fn two_division(&self, x: i128) -> i128 {
        ((4 * x + self.b2()) * x + 2 * self.b4()) * x + self.b6()
    }

    /// Whether `(x, y)` lies on the reduction modulo `p`.
    pub(crate) fn on_curve_mod(&self, x: i128, y: i128, p: i128) -> bool {
        let lhs = y * y + self.a1 * x * y + self.a3 * y;
        let rhs = ((x + self.a2) * x + self.a4) * x + self.a6;
        mod_pos(lhs - rhs, p) == 0
    }

    /// `#E(F_p)` including the point at infinity; meaningful at good `p`.
    pub fn count_points(&self, p: u64) -> u64 {
        let pi = p as i128;
        if p == 2 {
            let affine = (0..2)
                .flat_map(|x| (0..2).map(move |y| (x, y)))
                .filter(|&(x, y)| self.on_curve_mod(x, y, 2))
                .count() as u64;
            return affine + 1;
        }
        let chi = residue_table(p);
        let (b2, b4, b6) = (
            mod_pos(self.b2(), pi),
            mod_pos(self.b4(), pi),
            mod_pos(self.b6(), pi),
        );
        let mut count = 1u64;
        for x in 0..pi {
            let g = (((4 * x + b2) % pi * x + 2 * b4) % pi * x + b6) % pi;
            count += (1 + chi[g as usize]) as u64;
        }
        count
    }

    /// `a_p = p + 1 − #E(F_p)` by counting; rejects primes of bad reduction.
    pub fn ap(&self, p: u64) -> Result<i64> {
        if val_or_inf(self.discriminant(), p as i128) > 0 {
            return Err(Error::BadPrime { p: p as i64 });
        }
        Ok(p as i64 + 1 - self.count_points(p) as i64)
    }
}

/// Quadratic character table `χ(x)` for `0 ≤ x < p`, `p` odd.
pub(crate) fn residue_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[(x * x % p) as usize] = 1;
    }
    chi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_congruent_base() {
        let e = Weierstrass::two_torsion_model(1, -1).unwrap();
        assert_eq!((e.a2, e.a4), (0, -1));
        assert_eq!(e.discriminant(), 64);
        assert_eq!(e.c4(), 48);
        assert_eq!(e.c6(), 0);
    }

    #[test]
    fn shift_preserves_discriminant_and_c4() {
        let e = Weierstrass::new(1, -1, 1, -5, 7).unwrap();
        let f = e.shift(3, -2, 5);
        assert_eq!(e.discriminant(), f.discriminant());
        assert_eq!(e.c4(), f.c4());
        assert_eq!(e.c6(), f.c6());
    }

    #[test]
    fn counts_match_brute_force() {
        let e = Weierstrass::new(1, 0, 1, -3, 2).unwrap();
        for p in [3u64, 5, 7, 11, 13] {
            let pi = p as i128;
            let brute = (0..pi)
                .flat_map(|x| (0..pi).map(move |y| (x, y)))
                .filter(|&(x, y)| e.on_curve_mod(x, y, pi))
                .count() as u64
                + 1;
            assert_eq!(e.count_points(p), brute, "p={p}");
        }
    }

    #[test]
    fn rejects_bad_primes() {
        let e = Weierstrass::two_torsion_model(1, -1).unwrap();
        assert_eq!(e.ap(2), Err(Error::BadPrime { p: 2 }));
        assert_eq!(e.ap(5), Ok(-2));
        assert_eq!(e.ap(3), Ok(0));
    }
}

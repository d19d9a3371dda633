// SPDX-License-Identifier: Apache-2.0

//! Class groups of imaginary quadratic fields through reduced binary forms.
//!
//! The field discriminant of `ℚ(√−n)` is `−n` when `n ≡ 3 (mod 4)` and `−4n`
//! otherwise. `g(n) = #2Cl = h / 2^{t−1}` follows from genus theory, and the
//! 2-Sylow structure from explicit composition serves as an independent check
//! on the Rédei 4-rank.

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{additive_legendre, divisors, kronecker, prime_divisors};
use crate::error::{require_squarefree, Error, Result};
use crate::f2::BitMatrix;

/// A primitive positive-definite form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let BinaryForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn reduce(self) -> BinaryForm {
        let d = self.discriminant();
        let BinaryForm { mut a, mut b, mut c } = self;
        loop {
            // bring b into (−a, a]
            let two_a = 2 * a;
            let mut nb = b.mod_floor(&two_a);
            if nb > a {
                nb -= two_a;
            }
            if nb != b {
                b = nb;
                c = (b * b - d) / (4 * a);
            }
            if c < a {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            return BinaryForm { a, b, c };
        }
    }

    pub fn principal(d: i64) -> BinaryForm {
        let b = d.rem_euclid(2);
        BinaryForm { a: 1, b, c: (b * b - d) / 4 }
    }

    /// Gauss composition, reduced.
    pub fn compose(&self, other: &BinaryForm) -> BinaryForm {
        let d = self.discriminant();
        debug_assert_eq!(d, other.discriminant());
        let (f1, f2) = if self.a > other.a { (other, self) } else { (self, other) };
        let (a1, b1) = (f1.a, f1.b);
        let (a2, b2, c2) = (f2.a, f2.b, f2.c);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, dd) = if a2 % a1 == 0 {
            (0, a1)
        } else {
            let e = a2.extended_gcd(&a1);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s % dd == 0 {
            (0, -1, dd)
        } else {
            let e = s.extended_gcd(&dd);
            (e.x, -e.y, e.gcd)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).mod_floor(&v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 * b3 - d) / (4 * a3);
        BinaryForm { a: a3, b: b3, c: c3 }.reduce()
    }

    pub fn inverse(&self) -> BinaryForm {
        BinaryForm { a: self.a, b: -self.b, c: self.c }.reduce()
    }
}

pub fn field_discriminant(n: i64) -> i64 {
    if n % 4 == 3 {
        -n
    } else {
        -4 * n
    }
}

fn check_discriminant(d: i64) -> Result<()> {
    if d < 0 && (d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        Ok(())
    } else {
        Err(Error::InvalidDiscriminant(d))
    }
}

/// All primitive reduced forms of discriminant `d`, sorted.
pub fn reduced_forms(d: i64) -> Result<Vec<BinaryForm>> {
    check_discriminant(d)?;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BinaryForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && a.gcd(&b).gcd(&f.c) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

pub fn class_number(d: i64) -> Result<usize> {
    Ok(reduced_forms(d)?.len())
}

/// Order of `f` in the class group.
pub fn form_order(f: &BinaryForm) -> u64 {
    let id = BinaryForm::principal(f.discriminant());
    let mut g = *f;
    let mut k = 1;
    while g != id {
        g = g.compose(f);
        k += 1;
    }
    k
}

/// Cyclic factors `ℤ/2^{kᵢ}` of the 2-Sylow subgroup, exponents descending.
pub fn class_group_2sylow(d: i64) -> Result<Vec<u32>> {
    let forms = reduced_forms(d)?;
    let orders: Vec<u64> = forms.iter().map(form_order).collect();
    // tors[k] = #Cl[2^k]
    let mut tors = vec![0u64];
    loop {
        let k = tors.len() as u32 - 1;
        let count = orders.iter().filter(|&&o| (1u64 << k).is_multiple_of(o)).count() as u64;
        if k > 0 && count == tors[k as usize - 1] {
            break;
        }
        tors[k as usize] = count;
        tors.push(0);
    }
    tors.pop();
    // factors of order ≥ 2^k: log₂(#Cl[2^k] / #Cl[2^{k−1}])
    let ranks: Vec<u32> = (1..tors.len())
        .map(|k| (tors[k] / tors[k - 1]).trailing_zeros())
        .collect();
    let mut exps = Vec::new();
    for (k, &r) in ranks.iter().enumerate() {
        let next = ranks.get(k + 1).copied().unwrap_or(0);
        for _ in 0..r - next {
            exps.push(k as u32 + 1);
        }
    }
    exps.sort_unstable_by(|a, b| b.cmp(a));
    Ok(exps)
}

/// Prime discriminants `p*`, with `−4`, `8` or `−8` at 2, whose product is `d`.
pub fn prime_discriminants(d: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut odd_product = 1i64;
    for p in prime_divisors(d as i128) {
        let p = p as i64;
        if p != 2 {
            let star = if p % 4 == 1 { p } else { -p };
            odd_product *= star;
            out.push((p, star));
        }
    }
    if d % 4 == 0 {
        out.insert(0, (2, d / odd_product));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassGroupData {
    pub n: i64,
    pub d: i64,
    pub h: u64,
    pub t: u32,
    pub g: u64,
    pub four_rank: u32,
}

pub fn g_invariant(n: i64) -> Result<(u64, bool)> {
    require_squarefree(n)?;
    let d = field_discriminant(n);
    let h = class_number(d)? as u64;
    let t = prime_divisors(d as i128).len() as u32;
    let g = h >> (t - 1);
    debug_assert_eq!(g << (t - 1), h);
    Ok((g, g % 2 == 1))
}

/// `t − 1 − rank R` with `R_ij = [d_j/p_i]` over the prime discriminants.
pub fn redei_four_rank(n: i64) -> Result<u32> {
    require_squarefree(n)?;
    let d = field_discriminant(n);
    let pd = prime_discriminants(d);
    let t = pd.len();
    let mut r = BitMatrix::zeros(t, t);
    for i in 0..t {
        let mut sum = false;
        for j in 0..t {
            if i != j {
                let (p, _) = pd[i];
                let dj = pd[j].1;
                let bit = if p == 2 {
                    kronecker(dj as i128, 2) == -1
                } else {
                    additive_legendre(dj as i128, p as i128) == 1
                };
                r.set(i, j, bit);
                sum ^= bit;
            }
        }
        r.set(i, i, sum);
    }
    Ok((t - 1 - r.rank()) as u32)
}

pub fn class_group_data(n: i64) -> Result<ClassGroupData> {
    let (g, _) = g_invariant(n)?;
    let d = field_discriminant(n);
    Ok(ClassGroupData {
        n,
        d,
        h: class_number(d)? as u64,
        t: prime_divisors(d as i128).len() as u32,
        g,
        four_rank: redei_four_rank(n)?,
    })
}

/// Parity of the genus invariant: `true` when it is odd.
pub fn genus_invariant_flpt(n: i64, epsilon: i32) -> Result<bool> {
    require_squarefree(n)?;
    crate::error::require_residue(n, 24, &[3, 7])?;
    let mut total = g_invariant(n)?.0;
    if n % 24 == 7 && epsilon == -1 {
        for d in divisors(n as u64) {
            if d % 24 == 11 {
                let d = d as i64;
                total += g_invariant(n / d)?.0 * g_invariant(d)?.0;
            }
        }
    }
    Ok(total % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryForm {
        BinaryForm { a, b, c }
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(reduced_forms(-3).unwrap(), vec![f(1, 1, 1)]);
        assert_eq!(reduced_forms(-4).unwrap(), vec![f(1, 0, 1)]);
        assert_eq!(reduced_forms(-39).unwrap().len(), 4);
        assert_eq!(reduced_forms(-23).unwrap().len(), 3);
        assert!(reduced_forms(-5).is_err());
        assert!(reduced_forms(12).is_err());
    }

    #[test]
    fn discriminant_convention() {
        assert_eq!(field_discriminant(3), -3);
        assert_eq!(field_discriminant(1), -4);
        assert_eq!(field_discriminant(2), -8);
        assert_eq!(field_discriminant(21), -84);
    }

    #[test]
    fn composition_is_a_group_law() {
        let forms = reduced_forms(-4 * 65).unwrap();
        let id = BinaryForm::principal(-260);
        for x in &forms {
            assert_eq!(x.compose(&id), *x);
            assert_eq!(x.compose(&x.inverse()), id);
            for y in &forms {
                assert_eq!(x.compose(y), y.compose(x));
                for z in &forms {
                    assert_eq!(x.compose(y).compose(z), x.compose(&y.compose(z)));
                }
            }
        }
    }

    #[test]
    fn two_sylow_examples() {
        assert_eq!(class_group_2sylow(-39).unwrap(), vec![2]);
        assert_eq!(class_group_2sylow(-84).unwrap(), vec![1, 1]);
        assert_eq!(class_group_2sylow(-3).unwrap(), Vec::<u32>::new());
        // h(−23) = 3 has trivial 2-part
        assert_eq!(class_group_2sylow(-23).unwrap(), Vec::<u32>::new());
    }

    #[test]
    fn g_and_four_rank_examples() {
        assert_eq!(g_invariant(3).unwrap(), (1, true));
        assert_eq!(g_invariant(39).unwrap(), (2, false));
        assert_eq!(g_invariant(21).unwrap(), (1, true));
        assert_eq!(redei_four_rank(39).unwrap(), 1);
        assert_eq!(redei_four_rank(21).unwrap(), 0);
        assert_eq!(redei_four_rank(3).unwrap(), 0);
    }

    #[test]
    fn flpt_invariant_examples() {
        assert!(genus_invariant_flpt(3, 1).unwrap());
        assert_eq!(genus_invariant_flpt(7, 1).unwrap(), g_invariant(7).unwrap().1);
        assert_eq!(genus_invariant_flpt(7, -1).unwrap(), g_invariant(7).unwrap().1);
        assert!(genus_invariant_flpt(5, 1).is_err());
    }

    #[test]
    fn prime_discriminant_products() {
        for n in [1i64, 2, 3, 5, 6, 7, 10, 21, 39, 105, 130] {
            let d = field_discriminant(n);
            assert_eq!(prime_discriminants(d).iter().map(|x| x.1).product::<i64>(), d, "n={n}");
        }
    }
}

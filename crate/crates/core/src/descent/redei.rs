// SPDX-License-Identifier: Apache-2.0

//! The Rédei-matrix description of `Sel₂` for the tiling family
//! `y² = x(x − m)(x + 3m)`, `m = q·n` with `n > 0` coprime to 6.
//!
//! Writing `bₜ = cₜ·∏ ℓᵢ^{xₜ,ᵢ}` with `cₜ ∈ ⟨−1, 2, 3⟩`, the conditions at
//! the primes `ℓᵢ | n` are the F₂-linear system
//!
//! ```text
//! [ A + D_q    D_{−3}   ] [x₁]   [z_{c₁}]
//! [   0      A + D_{−q} ] [x₂] = [z_{c₂}]
//! ```
//!
//! and the conditions at `2, 3, ∞` are tested against the local images.

use super::local::local_image;
use super::{finish, s_set, Place, SelmerPair, SelmerResult};
use crate::arith::{additive_legendre, is_squarefree, prime_divisors};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedeiBlockData {
    pub primes: Vec<i64>,
    pub a: BitMatrix,
    pub d_q: BitMatrix,
    pub d_minus3: BitMatrix,
    pub d_minus_q: BitMatrix,
    pub block: BitMatrix,
    pub rhs: BitVec,
}

/// `z_d = ([d/ℓ₁], …, [d/ℓ_k])`.
pub fn z_vector(d: i64, primes: &[i64]) -> BitVec {
    let bits: Vec<u8> = primes
        .iter()
        .map(|&l| additive_legendre(d as i128, l as i128))
        .collect();
    BitVec::from_bits(&bits)
}

/// The Rédei matrix: `a_ij = [ℓⱼ/ℓᵢ]` off the diagonal, rows summing to zero.
pub fn redei_matrix(primes: &[i64]) -> BitMatrix {
    let k = primes.len();
    let mut a = BitMatrix::zeros(k, k);
    for i in 0..k {
        let mut row_sum = false;
        for j in 0..k {
            if i != j {
                let bit = additive_legendre(primes[j] as i128, primes[i] as i128) == 1;
                a.set(i, j, bit);
                row_sum ^= bit;
            }
        }
        a.set(i, i, row_sum);
    }
    a
}

fn check_n(n: i64) -> Result<Vec<i64>> {
    if n < 1 || !is_squarefree(n) || n % 2 == 0 || n % 3 == 0 {
        return Err(Error::InvalidCurve(format!(
            "{n} must be positive, square-free and coprime to 6"
        )));
    }
    Ok(prime_divisors(n as i128).into_iter().map(|p| p as i64).collect())
}

pub fn redei_block_system(n: i64, q: i64, c1: i64, c2: i64) -> Result<RedeiBlockData> {
    let primes = check_n(n)?;
    let k = primes.len();
    let a = redei_matrix(&primes);
    let d_q = BitMatrix::diagonal(&z_vector(q, &primes));
    let d_minus3 = BitMatrix::diagonal(&z_vector(-3, &primes));
    let d_minus_q = BitMatrix::diagonal(&z_vector(-q, &primes));
    let block = BitMatrix::block(&a.add(&d_q), &d_minus3, &BitMatrix::zeros(k, k), &a.add(&d_minus_q));
    let rhs = z_vector(c1, &primes).concat(&z_vector(c2, &primes));
    Ok(RedeiBlockData {
        primes,
        a,
        d_q,
        d_minus3,
        d_minus_q,
        block,
        rhs,
    })
}

/// `⟨−1, 2, 3⟩` as square-free representatives.
fn s_prime_classes() -> Vec<i64> {
    let mut out = Vec::with_capacity(8);
    for sign in [1, -1] {
        for two in [1, 2] {
            for three in [1, 3] {
                out.push(sign * two * three);
            }
        }
    }
    out
}

/// `Sel₂` of the tiling twist `m = ε·n` from the Rédei system.
pub fn sel2_redei_fastpath(n: i64, epsilon: i32) -> Result<SelmerResult> {
    assert!(epsilon == 1 || epsilon == -1);
    let primes = check_n(n)?;
    let q = epsilon as i64;
    let m = q * n;
    let s = s_set(1, -3, m);
    let images = [Place::Finite(2), Place::Finite(3), Place::Infinity]
        .map(|v| local_image(1, -3, m, v));
    let images: Vec<_> = images.into_iter().collect::<Result<_>>()?;
    let mut members = Vec::new();
    let classes = s_prime_classes();
    for &c1 in &classes {
        for &c2 in &classes {
            let sys = redei_block_system(n, q, c1, c2)?;
            let Some(sol) = sys.block.solve(&sys.rhs) else {
                continue;
            };
            for x in sol.enumerate() {
                let k = primes.len();
                let lift = |c: i64, off: usize| {
                    (0..k).filter(|&i| x.get(off + i)).fold(c, |acc, i| acc * primes[i])
                };
                let lambda = SelmerPair::new(lift(c1, 0), lift(c2, k));
                if images.iter().all(|img| img.contains(lambda)) {
                    members.push(lambda);
                }
            }
        }
    }
    finish(1, -3, m, s, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_n_gives_zero_matrix() {
        let d = redei_block_system(13, 1, 1, 1).unwrap();
        assert_eq!(d.a, BitMatrix::zeros(1, 1));
    }

    #[test]
    fn two_prime_entries_and_row_sums() {
        // (7/5) = −1, (5/7) = −1
        let d = redei_block_system(35, -1, 1, 1).unwrap();
        assert_eq!(d.primes, vec![5, 7]);
        assert!(d.a.get(0, 1) && d.a.get(1, 0));
        for i in 0..2 {
            assert!(!(d.a.get(i, 0) ^ d.a.get(i, 1)));
        }
        // (−3/5) = −1, (−3/7) = +1
        assert!(d.d_minus3.get(0, 0) && !d.d_minus3.get(1, 1));
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(redei_block_system(15, 1, 1, 1).is_err());
        assert!(sel2_redei_fastpath(26, 1).is_err());
    }

    #[test]
    fn agrees_with_generic_descent_on_small_n() {
        for n in [1i64, 5, 7, 11, 13, 35, 65, 91] {
            for eps in [1, -1] {
                let fast = sel2_redei_fastpath(n, eps).unwrap();
                let slow = super::super::sel2(1, -3, eps as i64 * n).unwrap();
                assert_eq!(fast.member_set(), slow.member_set(), "n={n} eps={eps}");
            }
        }
    }
}

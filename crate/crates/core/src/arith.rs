// SPDX-License-Identifier: Apache-2.0

//! Small exact integer helpers shared by every module: square roots,
//! valuations, factorization, residue symbols and square-free sieves.

use num_integer::Integer;

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Exact square root if `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u128) as i128;
    (r * r == n).then_some(r)
}

/// p-adic valuation; `None` for zero.
pub fn valuation(mut n: i128, p: i128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Valuation with zero mapped to a large sentinel, for "p^k divides" tests.
pub fn val_or_inf(n: i128, p: i128) -> u32 {
    valuation(n, p).unwrap_or(u32::MAX / 2)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factor(n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of |n|.
pub fn prime_divisors(n: i128) -> Vec<i128> {
    factor(n.unsigned_abs())
        .into_iter()
        .map(|(p, _)| p as i128)
        .collect()
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factor(n.unsigned_abs() as u128).iter().all(|&(_, e)| e == 1)
}

/// Square-free part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: i128) -> i128 {
    assert!(n != 0, "square class of zero");
    let mut out: i128 = n.signum();
    for (p, e) in factor(n.unsigned_abs()) {
        if e % 2 == 1 {
            out *= p as i128;
        }
    }
    out
}

pub fn mod_pos(a: i128, m: i128) -> i128 {
    a.mod_floor(&m)
}

pub fn mod_pow(mut b: i128, mut e: u128, m: i128) -> i128 {
    let mut r = 1 % m;
    b = mod_pos(b, m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m` (requires gcd 1).
pub fn mod_inv(a: i128, m: i128) -> i128 {
    let e = a.extended_gcd(&m);
    assert!(e.gcd.abs() == 1, "{a} not invertible mod {m}");
    mod_pos(e.x * e.gcd, m)
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: i128, p: i128) -> i32 {
    let a = mod_pos(a, p);
    if a == 0 {
        return 0;
    }
    if mod_pow(a, ((p - 1) / 2) as u128, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol (a/n) for n > 0.
pub fn kronecker(a: i128, n: i128) -> i32 {
    assert!(n > 0);
    let mut result = 1;
    for (p, e) in factor(n as u128) {
        let p = p as i128;
        let s = if p == 2 {
            if a % 2 == 0 {
                0
            } else {
                match mod_pos(a, 8) {
                    1 | 7 => 1,
                    _ => -1,
                }
            }
        } else {
            legendre(a, p)
        };
        if e % 2 == 1 {
            result *= s;
        } else if s == 0 {
            result = 0;
        }
    }
    result
}

/// Additive Legendre symbol over F₂: 0 for a residue, 1 for a non-residue.
pub fn additive_legendre(a: i128, p: i128) -> u8 {
    match legendre(a, p) {
        1 => 0,
        -1 => 1,
        _ => panic!("additive Legendre symbol of {a} at {p} is undefined"),
    }
}

/// Smallest-prime-factor table for 0..=limit.
pub fn spf_sieve(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// All primes up to `limit`.
pub fn primes_up_to(limit: usize) -> Vec<u64> {
    let spf = spf_sieve(limit);
    (2..=limit)
        .filter(|&i| spf[i] as usize == i)
        .map(|i| i as u64)
        .collect()
}

/// Square-free flags for 0..=limit (index 0 is false).
pub fn squarefree_sieve(limit: usize) -> Vec<bool> {
    let mut sf = vec![true; limit + 1];
    sf[0] = false;
    let mut d = 2usize;
    while d * d <= limit {
        let sq = d * d;
        let mut j = sq;
        while j <= limit {
            sf[j] = false;
            j += sq;
        }
        d += 1;
    }
    sf
}

/// Positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor(n as u128) {
        let p = p as u64;
        let current = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

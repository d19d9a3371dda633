// SPDX-License-Identifier: Apache-2.0

//! Rational torsion of `y² = x(x − a)(x − b)`.
//!
//! With full 2-torsion the torsion group is `ℤ/2 × ℤ/2k` with `k ≤ 4`, so
//! only 2-power halving and 3-torsion need testing. Torsion points on this
//! integral model have integer coordinates.

use serde::Serialize;

use super::TwistCurve;
use crate::arith::{divisors, exact_sqrt, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionData {
    pub order: u32,
    /// Affine torsion points of 2-power order on the given model.
    pub two_power_points: Vec<(i128, i128)>,
    pub has_three_torsion: bool,
}

/// Halves of `(x0, y0)` with roots `0, a, b`: `x0 − eᵢ` all square is the
/// criterion, and then `x(Q) = x0 + ρ₁ρ₂ + ρ₁ρ₃ + ρ₂ρ₃`.
fn halves(x0: i128, a: i128, b: i128) -> Vec<(i128, i128)> {
    let rho: Option<Vec<i128>> = [x0, x0 - a, x0 - b].iter().map(|&d| exact_sqrt(d)).collect();
    let Some(rho) = rho else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for signs in 0..8u8 {
        let r: Vec<i128> = (0..3)
            .map(|i| if signs >> i & 1 == 1 { -rho[i] } else { rho[i] })
            .collect();
        let x = x0 + r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
        let rhs = x * (x - a) * (x - b);
        if let Some(y) = exact_sqrt(rhs) {
            for pt in [(x, y), (x, -y)] {
                if !out.contains(&pt) {
                    out.push(pt);
                }
            }
        }
    }
    out
}

fn three_torsion(a: i128, b: i128) -> bool {
    // y² = x³ + Ax² + Bx: ψ₃ = 3x⁴ + 4Ax³ + 6Bx² − B².
    let (big_a, big_b) = (-(a + b), a * b);
    let count = |p: u64| -> u64 {
        let pi = p as i128;
        let mut c = 1;
        for x in 0..pi {
            let f = (x * (x - a) % pi * (x - b)).rem_euclid(pi);
            c += if f == 0 { 1 } else if crate::arith::legendre(f, pi) == 1 { 2 } else { 0 };
        }
        c as u64
    };
    let disc = a * b * (a - b);
    let gcd = (5..200u64)
        .filter(|&p| is_prime(p) && disc % p as i128 != 0)
        .take(8)
        .fold(0u64, |g, p| num_integer::gcd(g, count(p)));
    if gcd % 3 != 0 {
        return false;
    }
    let b2 = (big_b * big_b).unsigned_abs() as u64;
    for d in divisors(b2) {
        for x in [d as i128, -(d as i128)] {
            let psi = ((3 * x + 4 * big_a) * x + 6 * big_b) * x * x - big_b * big_b;
            if psi == 0 {
                let rhs = x * (x - a) * (x - b);
                if rhs > 0 && exact_sqrt(rhs).is_some() {
                    return true;
                }
            }
        }
    }
    false
}

pub fn torsion(curve: &TwistCurve) -> TorsionData {
    let (a, b) = curve.roots();
    let mut points: Vec<(i128, i128)> = vec![(0, 0), (a, 0), (b, 0)];
    let mut frontier = points.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &(x, _) in &frontier {
            for q in halves(x, a, b) {
                if !points.contains(&q) {
                    points.push(q);
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    points.sort();
    let has_three = three_torsion(a, b);
    let order = (points.len() as u32 + 1) * if has_three { 3 } else { 1 };
    TorsionData {
        order,
        two_power_points: points,
        has_three_torsion: has_three,
    }
}

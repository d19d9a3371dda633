// SPDX-License-Identifier: Apache-2.0

//! Dirichlet coefficients and the central value `L(1, E)` through the
//! functional equation, with the root number chosen by self-consistency.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::curve::residue_table;
use super::tate::GlobalData;
use super::TwistCurve;
use crate::arith::{legendre, primes_up_to, spf_sieve};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LSeriesEval {
    pub value: f64,
    pub abs_error_bound: f64,
    pub truncation: usize,
    pub epsilon: i32,
    pub conductor: u128,
}

/// Second evaluation point of the two-point root-number test.
pub const DEFAULT_T2: f64 = 1.2;
/// Largest `t` the cutoff is sized for.
const T_MAX: f64 = 1.3;
pub const DEFAULT_DIGITS: u32 = 9;

/// `a_p` of `y² = x(x − e₁)(x − e₂)` for odd primes up to a bound.
struct BaseTraces {
    limit: u64,
    ap: HashMap<u64, i64>,
}

type TraceCache = Mutex<HashMap<(i64, i64), Arc<BaseTraces>>>;

fn base_traces(e1: i64, e2: i64, limit: u64) -> Arc<BaseTraces> {
    static CACHE: OnceLock<TraceCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(e1, e2)) {
        if t.limit >= limit {
            return t.clone();
        }
    }
    let mut ap = HashMap::new();
    for p in primes_up_to(limit as usize).into_iter().skip(1) {
        let chi = residue_table(p);
        let pi = p as i64;
        let (a, b) = (e1.rem_euclid(pi), e2.rem_euclid(pi));
        let s: i64 = (0..pi)
            .map(|x| chi[(x * ((x - a).rem_euclid(pi)) % pi * ((x - b).rem_euclid(pi)) % pi) as usize] as i64)
            .sum();
        ap.insert(p, -s);
    }
    let t = Arc::new(BaseTraces { limit, ap });
    cache.lock().unwrap().insert((e1, e2), t.clone());
    t
}

/// `a_p` for every prime `p ≤ limit`, using the twist relation
/// `a_p(E⁽ᵐ⁾) = (m/p)·a_p(E)` away from the primes of `2m·e₁e₂(e₁ − e₂)`.
fn prime_traces(curve: &TwistCurve, g: &GlobalData, limit: u64) -> HashMap<u64, i64> {
    let (e1, e2, m) = curve.params();
    let base = base_traces(e1, e2, limit);
    let special = curve.s_primes();
    let mut out = HashMap::new();
    for p in primes_up_to(limit as usize) {
        let ap = if let Some(l) = g.local(p) {
            l.reduction.bad_ap().expect("listed primes are bad")
        } else if special.contains(&p) {
            p as i64 + 1 - g.minimal.count_points(p) as i64
        } else {
            legendre(m as i128, p as i128) as i64 * base.ap[&p]
        };
        out.insert(p, ap);
    }
    out
}

/// `a₁, …, a_M` (index 0 unused and set to 0).
pub fn an_coeffs(curve: &TwistCurve, max: usize) -> Vec<i64> {
    let g = curve.global_data();
    an_from_global(curve, &g, max)
}

fn an_from_global(curve: &TwistCurve, g: &GlobalData, max: usize) -> Vec<i64> {
    let traces = prime_traces(curve, g, max as u64);
    let spf = spf_sieve(max);
    let mut a = vec![0i64; max + 1];
    if max >= 1 {
        a[1] = 1;
    }
    for n in 2..=max {
        let p = spf[n] as usize;
        let mut pk = p;
        let mut rest = n / p;
        while rest.is_multiple_of(p) {
            rest /= p;
            pk *= p;
        }
        if rest > 1 {
            a[n] = a[pk] * a[rest];
            continue;
        }
        let ap = traces[&(p as u64)];
        a[n] = if pk == p {
            ap
        } else if g.local(p as u64).is_some() {
            ap * a[pk / p]
        } else {
            ap * a[pk / p] - p as i64 * a[pk / p / p]
        };
    }
    a
}

/// Cutoff `M` with `Σ_{m>M} 4·e^{−c·m} < 10^{−(digits+1)}` for
/// `c = 2π/(t_max·√N)`; uses `|a_m|/m ≤ d(m)/√m ≤ 2`.
fn cutoff(conductor: u128, digits: u32) -> (usize, f64) {
    let c = 2.0 * PI / (T_MAX * (conductor as f64).sqrt());
    let target = 10f64.powi(-(digits as i32 + 1));
    let geometric = 1.0 / (1.0 - (-c).exp());
    let m = ((4.0 * geometric / target).ln() / c).ceil().max(1.0) as usize;
    let tail = 4.0 * (-c * (m as f64 + 1.0)).exp() * geometric;
    (m, tail)
}

fn g_sum(a: &[i64], sqrt_n: f64, t: f64, eps: f64) -> f64 {
    let (q1, q2) = ((-2.0 * PI / (t * sqrt_n)).exp(), (-2.0 * PI * t / sqrt_n).exp());
    let (mut z1, mut z2) = (1.0, 1.0);
    let mut sum = 0.0;
    for (m, &am) in a.iter().enumerate().skip(1) {
        z1 *= q1;
        z2 *= q2;
        if am != 0 {
            sum += am as f64 / m as f64 * (z1 + eps * z2);
        }
    }
    sum
}

pub fn l_value_1(curve: &TwistCurve) -> Result<LSeriesEval> {
    l_value_1_with(curve, DEFAULT_DIGITS, DEFAULT_T2)
}

/// `L(1, E)` from `G(t) = Σ (a_m/m)(e^{−2πm/(t√N)} + ε·e^{−2πmt/√N})`,
/// which is independent of `t` exactly when `ε` is the root number.
pub fn l_value_1_with(curve: &TwistCurve, digits: u32, t2: f64) -> Result<LSeriesEval> {
    assert!(t2 > 1.0 && t2 <= T_MAX);
    let g = curve.global_data();
    let conductor = g.conductor();
    let (m, tail) = cutoff(conductor, digits);
    let a = an_from_global(curve, &g, m);
    let sqrt_n = (conductor as f64).sqrt();
    let residual = |eps: f64| (g_sum(&a, sqrt_n, 1.0, eps) - g_sum(&a, sqrt_n, t2, eps)).abs();
    let (plus, minus) = (residual(1.0), residual(-1.0));
    let tol = 10f64.powi(-(digits as i32));
    if plus.min(minus) > 10.0 * tol {
        return Err(Error::AmbiguousRootNumber { plus, minus });
    }
    let epsilon = if plus <= minus { 1 } else { -1 };
    let value = g_sum(&a, sqrt_n, 1.0, epsilon as f64);
    Ok(LSeriesEval {
        value,
        abs_error_bound: tail + plus.min(minus),
        truncation: m,
        epsilon,
        conductor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_identities() {
        let c = TwistCurve::Congruent(1);
        let a = an_coeffs(&c, 100);
        assert_eq!(a[1], 1);
        assert_eq!(a[15], a[3] * a[5]);
        assert_eq!(a[25], a[5] * a[5] - 5);
        assert_eq!(a[5], -2);
        // 32a: q − 2q⁵ − 3q⁹ + 6q¹³ + 2q¹⁷ − q²⁵ + ...
        assert_eq!((a[9], a[13], a[17], a[25]), (-3, 6, 2, -1));
    }

    #[test]
    fn twist_relation_matches_direct_counts() {
        for c in [TwistCurve::Congruent(7), TwistCurve::TwoTorsion { e1: 1, e2: -3, m: -13 }] {
            let g = c.global_data();
            let traces = prime_traces(&c, &g, 400);
            for p in primes_up_to(400) {
                if g.local(p).is_none() {
                    assert_eq!(traces[&p], c.global_data().minimal.ap(p).unwrap(), "{c} p={p}");
                }
            }
        }
    }

    #[test]
    fn l_value_of_32a() {
        let l = l_value_1(&TwistCurve::Congruent(1)).unwrap();
        assert_eq!(l.epsilon, 1);
        assert_eq!(l.conductor, 32);
        // L(1) = Ω/4 for y² = x³ − x
        let omega = super::super::base_period();
        assert!((l.value - omega / 4.0).abs() < 1e-9);
    }

    #[test]
    fn vanishing_at_five() {
        let l = l_value_1(&TwistCurve::Congruent(5)).unwrap();
        assert_eq!(l.epsilon, -1);
        assert!(l.value.abs() <= l.abs_error_bound);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Limiting Selmer-rank distribution constants
//! `C_{p,d} = ∏_{j≥0} (1 + p^{−j})^{−1} · ∏_{i=1}^{d} p/(p^i − 1)`.

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Factors past this index change the infinite product by less than `2^{−200}`.
const PRODUCT_TERMS: i32 = 200;

/// `∏_{j≥0} (1 + p^{−j})^{−1}`, the `j = 0` factor being `1/2`.
pub fn base_product(p: u64) -> f64 {
    let p = p as f64;
    (0..PRODUCT_TERMS).fold(1.0, |acc, j| acc / (1.0 + p.powi(-j)))
}

pub fn c_pd(p: u64, d: u32) -> f64 {
    let pf = p as f64;
    (1..=d as i32).fold(base_product(p), |acc, i| acc * pf / (pf.powi(i) - 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionConstants {
    pub p: u64,
    pub table: Vec<f64>,
    /// `1 − Σ_d C_{p,d}` over the table.
    pub defect: f64,
}

pub fn distribution_constants(p: u64, d_max: u32) -> Result<DistributionConstants> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let table: Vec<f64> = (0..=d_max).map(|d| c_pd(p, d)).collect();
    let defect = 1.0 - table.iter().sum::<f64>();
    Ok(DistributionConstants { p, table, defect })
}

/// `∏_{i≥1} (1 − 2^{−i})`.
pub fn euler_product_half() -> f64 {
    (1..PRODUCT_TERMS).fold(1.0, |acc, i| acc * (1.0 - 2f64.powi(-i)))
}

/// Selmer-rank probabilities for a family whose parity is fixed to `d0 mod 2`:
/// twice the unrestricted constant on the matching parity, zero otherwise.
pub fn parity_constrained(p: u64, d: u32, d0: u32) -> f64 {
    if d % 2 == d0 % 2 {
        2.0 * c_pd(p, d)
    } else {
        0.0
    }
}

// SPDX-License-Identifier: Apache-2.0

//! The analytic order of Sha in the rank-zero regime,
//! `L(1)/Ω · #E(ℚ)_tor² / ∏ c_ℓ`, rounded to a small rational.

use num_rational::Ratio;
use serde::Serialize;

use super::period::real_period;
use super::series::{l_value_1, LSeriesEval};
use super::torsion::torsion;
use super::TwistCurve;
use crate::error::{Error, Result};

/// Largest denominator accepted when rounding.
pub const MAX_DENOMINATOR: i64 = 4;
/// Largest rounding residual accepted.
pub const ROUNDING_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShaEstimate {
    pub value: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub rounded: Ratio<i64>,
    pub residual: f64,
    /// Parity of the numerator of `rounded`.
    pub odd: bool,
    pub l_value: LSeriesEval,
    pub neron_period: f64,
    pub torsion_order: u32,
    pub tamagawa_product: u64,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Nearest rational with denominator at most [`MAX_DENOMINATOR`].
pub fn round_small(x: f64) -> (Ratio<i64>, f64) {
    (1..=MAX_DENOMINATOR)
        .map(|d| {
            let r = Ratio::new((x * d as f64).round() as i64, d);
            (r, (x - *r.numer() as f64 / *r.denom() as f64).abs())
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap()
}

pub fn analytic_sha(curve: &TwistCurve) -> Result<ShaEstimate> {
    let l = l_value_1(curve)?;
    if l.epsilon != 1 || l.value.abs() <= 10.0 * l.abs_error_bound {
        return Err(Error::NotRankZero {
            epsilon: l.epsilon,
            value: l.value.abs(),
        });
    }
    let omega = real_period(curve)?.neron;
    let tors = torsion(curve).order;
    let tam = curve.global_data().tamagawa_product();
    let value = l.value / omega * (tors as f64).powi(2) / tam as f64;
    let (rounded, residual) = round_small(value);
    if residual > ROUNDING_TOLERANCE {
        return Err(Error::RoundingUnstable { value, residual });
    }
    Ok(ShaEstimate {
        value,
        rounded,
        residual,
        odd: rounded.numer() % 2 != 0,
        l_value: l,
        neron_period: omega,
        torsion_order: tors,
        tamagawa_product: tam,
    })
}

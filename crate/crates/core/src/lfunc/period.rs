// SPDX-License-Identifier: Apache-2.0

//! Real periods by the arithmetic-geometric mean, cross-checked by adaptive
//! Gauss–Kronrod quadrature of the defining integral.

use std::f64::consts::PI;

use serde::Serialize;

use super::TwistCurve;
use crate::error::{Error, Result};

/// Maximum AGM/quadrature disagreement accepted by [`real_period`].
pub const PERIOD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodData {
    /// `∫ dx/√f(x)` from the largest root to infinity, by AGM.
    pub identity_component: f64,
    /// The same integral by quadrature.
    pub quadrature: f64,
    /// Number of connected components of `E(ℝ)`.
    pub components: u32,
    /// The Néron real period `components · identity_component`.
    pub neron: f64,
}

pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let next = ((a + b) / 2.0, (a * b).sqrt());
        if (next.0 - next.1).abs() <= 1e-16 * next.0 {
            return next.0;
        }
        (a, b) = next;
    }
    a
}

/// `∫_{e₃}^∞ dx / √((x − e₁)(x − e₂)(x − e₃))` for real `e₁ < e₂ < e₃`.
pub fn period_agm(e: [f64; 3]) -> f64 {
    PI / agm((e[2] - e[0]).sqrt(), (e[2] - e[1]).sqrt())
}

// Kronrod 15-point nodes/weights on [-1, 1] and the embedded Gauss 7-point weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = (a + b) / 2.0;
    let h = (b - a) / 2.0;
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod integration on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (val, err) = kronrod(f, a, b);
        if err <= tol || depth == 0 {
            return val;
        }
        let m = (a + b) / 2.0;
        rec(f, a, m, tol / 2.0, depth - 1) + rec(f, m, b, tol / 2.0, depth - 1)
    }
    rec(f, a, b, tol, 40)
}

/// The same integral as [`period_agm`], substituting `x = e₃ + s²` and
/// `s = u/(1 − u)` to reach a smooth integrand on `[0, 1]`.
pub fn period_quadrature(e: [f64; 3]) -> f64 {
    let (a, b) = (e[2] - e[0], e[2] - e[1]);
    let f = move |u: f64| {
        if u >= 1.0 {
            return 2.0;
        }
        let w = 1.0 - u;
        // 2/√((s² + a)(s² + b)) · ds/du with the factors of 1/w cancelled
        2.0 / ((u * u + a * w * w) * (u * u + b * w * w)).sqrt()
    };
    integrate(&f, 0.0, 1.0, 1e-14)
}

/// Real roots `e₁ < e₂ < e₃` of the cubic of the globally minimal model,
/// in that model's coordinates.
pub fn minimal_roots(curve: &TwistCurve) -> [f64; 3] {
    let g = curve.global_data();
    let (a, b) = curve.roots();
    let u2 = (g.change.u * g.change.u) as f64;
    let mut roots = [0i128, a, b].map(|r| (r - g.change.r) as f64 / u2);
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots
}

/// The Néron real period of the minimal model, by two independent methods.
pub fn real_period(curve: &TwistCurve) -> Result<PeriodData> {
    let e = minimal_roots(curve);
    let agm = period_agm(e);
    let quad = period_quadrature(e);
    if (agm - quad).abs() > PERIOD_TOLERANCE {
        return Err(Error::PeriodMismatch { agm, quad });
    }
    // All three roots are real, so the discriminant is positive and E(ℝ)
    // has two components.
    Ok(PeriodData {
        identity_component: agm,
        quadrature: quad,
        components: 2,
        neron: 2.0 * agm,
    })
}

/// `Ω = ∫₁^∞ dx/√(x³ − x)`, the identity-component period of `y² = x³ − x`.
pub fn base_period() -> f64 {
    real_period(&TwistCurve::Congruent(1))
        .expect("base period methods agree")
        .identity_component
}

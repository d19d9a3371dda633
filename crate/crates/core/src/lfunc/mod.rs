// SPDX-License-Identifier: Apache-2.0

//! Elliptic curves in quadratic twist families with full rational 2-torsion:
//! local data, real periods, the central value `L(1, E)` and the analytic
//! order of Sha.

pub mod curve;
pub mod period;
pub mod series;
pub mod sha;
pub mod tate;
pub mod torsion;

use serde::{Deserialize, Serialize};

pub use curve::Weierstrass;
pub use period::{base_period, real_period, PeriodData};
pub use series::{an_coeffs, l_value_1, l_value_1_with, LSeriesEval};
pub use sha::{analytic_sha, ShaEstimate};
pub use tate::{global_data, tate, GlobalData, Kodaira, LocalData, Reduction};
pub use torsion::{torsion, TorsionData};

use crate::arith::is_squarefree;
use crate::error::{Error, Result};

/// A member of a twist family.
///
/// `Congruent(n)` is `ny² = x³ − x`, modelled as `y² = x(x − n)(x + n)`.
/// `TwoTorsion { e1, e2, m }` is `y² = x(x − e₁m)(x − e₂m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistCurve {
    Congruent(i64),
    TwoTorsion { e1: i64, e2: i64, m: i64 },
}

impl TwistCurve {
    pub fn congruent(n: i64) -> Result<Self> {
        if n >= 1 && is_squarefree(n) {
            Ok(TwistCurve::Congruent(n))
        } else {
            Err(Error::NotSquarefree(n))
        }
    }

    pub fn two_torsion(e1: i64, e2: i64, m: i64) -> Result<Self> {
        if e1 == e2 || e1 == 0 || e2 == 0 {
            return Err(Error::InvalidCurve(format!(
                "need e1 ≠ e2 and e1·e2 ≠ 0, got ({e1}, {e2})"
            )));
        }
        if !is_squarefree(m) {
            return Err(Error::InvalidCurve(format!("twist {m} is not square-free")));
        }
        Ok(TwistCurve::TwoTorsion { e1, e2, m })
    }

    /// The tiling curve `y² = x(x − m)(x + 3m)`.
    pub fn tiling(m: i64) -> Result<Self> {
        Self::two_torsion(1, -3, m)
    }

    /// `(e₁, e₂, m)`; the congruent family is `(1, −1, n)`.
    pub fn params(&self) -> (i64, i64, i64) {
        match *self {
            TwistCurve::Congruent(n) => (1, -1, n),
            TwistCurve::TwoTorsion { e1, e2, m } => (e1, e2, m),
        }
    }

    pub fn twist(&self) -> i64 {
        self.params().2
    }

    /// The untwisted family member `m = 1`.
    pub fn base(&self) -> TwistCurve {
        let (e1, e2, _) = self.params();
        TwistCurve::TwoTorsion { e1, e2, m: 1 }
    }

    /// The nonzero 2-torsion abscissae `(e₁m, e₂m)` on the given model.
    pub fn roots(&self) -> (i128, i128) {
        let (e1, e2, m) = self.params();
        ((e1 * m) as i128, (e2 * m) as i128)
    }

    pub fn model(&self) -> Weierstrass {
        let (a, b) = self.roots();
        Weierstrass::two_torsion_model(a, b).expect("validated family data is nonsingular")
    }

    /// Primes dividing `2·m·e₁e₂(e₁ − e₂)`.
    pub fn s_primes(&self) -> Vec<u64> {
        let (e1, e2, m) = self.params();
        let prod = 2 * (m as i128) * (e1 as i128) * (e2 as i128) * ((e1 - e2) as i128);
        crate::arith::prime_divisors(prod)
            .into_iter()
            .map(|p| p as u64)
            .collect()
    }

    pub fn global_data(&self) -> GlobalData {
        tate::global_data(&self.model())
    }

    pub fn conductor(&self) -> u128 {
        self.global_data().conductor()
    }

    pub fn tate_local(&self, p: u64) -> LocalData {
        tate::tate(&self.model(), p).local
    }

    /// Trace of Frobenius by point counting on the given model.
    pub fn ap(&self, p: u64) -> Result<i64> {
        self.model().ap(p)
    }
}

impl std::fmt::Display for TwistCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwistCurve::Congruent(n) => write!(f, "congruent({n})"),
            TwistCurve::TwoTorsion { e1, e2, m } => write!(f, "two_torsion({e1},{e2},{m})"),
        }
    }
}

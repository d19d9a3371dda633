// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a positive square-free integer")]
    NotSquarefree(i64),
    #[error("{n} is outside the residue classes {allowed} (mod {modulus})")]
    ResidueClass {
        n: i64,
        modulus: i64,
        allowed: String,
    },
    #[error("basis is degenerate (zero Gram determinant)")]
    DegenerateBasis,
    #[error("Gram entry {0} is not integral or half-integral")]
    NonIntegralGram(String),
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid curve parameters: {0}")]
    InvalidCurve(String),
    #[error("prime {p} divides the discriminant of the model")]
    BadPrime { p: i64 },
    #[error("p-adic search exhausted its precision bound at p = {p}")]
    PrecisionExhausted { p: i64 },
    #[error("place {0} is outside the descent set S")]
    PlaceOutsideS(String),
    #[error("curve is not in the rank-zero regime (root number {epsilon}, |L(1)| = {value:.3e})")]
    NotRankZero { epsilon: i32, value: f64 },
    #[error("analytic Sha {value} does not round stably (residual {residual:.3e})")]
    RoundingUnstable { value: f64, residual: f64 },
    #[error("root number is ambiguous: two-point residuals {plus:.3e} (+1) and {minus:.3e} (-1)")]
    AmbiguousRootNumber { plus: f64, minus: f64 },
    #[error("period methods disagree: AGM {agm} vs quadrature {quad}")]
    PeriodMismatch { agm: f64, quad: f64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid discriminant {0}")]
    InvalidDiscriminant(i64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks `n ≥ 1` square-free.
pub fn require_squarefree(n: i64) -> Result<()> {
    if n >= 1 && crate::arith::is_squarefree(n) {
        Ok(())
    } else {
        Err(Error::NotSquarefree(n))
    }
}

pub fn require_residue(n: i64, modulus: i64, allowed: &[i64]) -> Result<()> {
    if allowed.contains(&n.rem_euclid(modulus)) {
        Ok(())
    } else {
        Err(Error::ResidueClass {
            n,
            modulus,
            allowed: allowed
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(","),
        })
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Exact and numerical arithmetic for quadratic twist families with full
//! rational 2-torsion, centred on the congruent-number curves
//! `y² = x³ − n²x` and the tiling curves `y² = x(x − n)(x + 3n)`.
//!
//! * [`forms`]: trace-zero quaternion lattices and ternary representation counts.
//! * [`tunnell`]: the Tunnell count and four combinatorial central-value formulas.
//! * [`lfunc`]: point counts, Tate's algorithm, periods, `L(1)` and analytic Sha.
//! * [`descent`]: complete 2-descent and the Rédei-matrix fast path.
//! * [`classgrp`]: imaginary quadratic class groups, 4-ranks and genus invariants.
//! * [`distribution`]: limiting Selmer-rank distribution constants.

pub mod arith;
pub mod classgrp;
pub mod descent;
pub mod distribution;
pub mod error;
pub mod f2;
pub mod forms;
pub mod lfunc;
pub mod tunnell;

pub use error::{Error, Result};

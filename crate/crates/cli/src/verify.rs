// SPDX-License-Identifier: Apache-2.0

//! Named verification suites for `ckit verify`.

use ckit_core::arith::squarefree_sieve;
use ckit_core::classgrp::{class_group_2sylow, field_discriminant, g_invariant, redei_four_rank};
use ckit_core::descent::{monsky_parity_check, sel2, sel2_redei_fastpath};
use ckit_core::distribution::distribution_constants;
use ckit_core::lfunc::{base_period, l_value_1, real_period, TwistCurve};
use ckit_core::tunnell::{
    central_ratio_genus, central_ratio_prop_a, central_ratio_prop_b, central_ratio_tunnell, combo_theta,
    combo_theta_prime, ratio_from_count, FormulaTables,
};
use rayon::prelude::*;

use crate::commands::flpt_rows;
use crate::CliError;

pub const ANALYTIC_TOLERANCE: f64 = 1e-6;
pub const PERIOD_AGREEMENT: f64 = 1e-9;
pub const CONSTANTS_TOLERANCE: f64 = 1e-8;
pub const NONVANISHING_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    TunnellAnalytic,
    #[value(name = "propAB")]
    PropAb,
    RedeiOracle,
    Flpt,
    Monsky,
    Constants,
    Period,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: &[String], checked: usize) -> Self {
        Check {
            name: name.into(),
            passed: failures.is_empty(),
            detail: match failures.first() {
                None => format!("{checked} cases"),
                Some(f) => format!("{} of {checked} failed; first: {f}", failures.len()),
            },
        }
    }
}

fn squarefree_upto(max: u64) -> Vec<i64> {
    let sf = squarefree_sieve(max as usize);
    (1..=max as i64).filter(|&n| sf[n as usize]).collect()
}

fn default_max(suite: Suite) -> u64 {
    match suite {
        Suite::TunnellAnalytic => 130,
        Suite::PropAb => 1000,
        Suite::RedeiOracle => 3000,
        Suite::Flpt => 2000,
        Suite::Monsky => 500,
        Suite::Constants => 40,
        Suite::Period => 100,
    }
}

pub fn run(suite: Suite, max: Option<u64>) -> Result<Vec<Check>, CliError> {
    let max = max.unwrap_or_else(|| default_max(suite));
    match suite {
        Suite::TunnellAnalytic => tunnell_analytic(max),
        Suite::PropAb => prop_ab(max),
        Suite::RedeiOracle => redei_oracle(max),
        Suite::Flpt => flpt(max),
        Suite::Monsky => monsky(max),
        Suite::Constants => constants(max as u32),
        Suite::Period => period(max),
    }
}

fn tunnell_analytic(max: u64) -> Result<Vec<Check>, CliError> {
    let omega = base_period();
    let ns: Vec<i64> = squarefree_upto(max).into_iter().filter(|n| [1, 2, 3].contains(&(n % 8))).collect();
    let mut fails = Vec::new();
    for &n in &ns {
        let l = l_value_1(&TwistCurve::congruent(n)?)?;
        let lhs = l.value * (n as f64).sqrt() / omega;
        let r = central_ratio_tunnell(n)?;
        let rhs = *r.numer() as f64 / *r.denom() as f64;
        if (lhs - rhs).abs() > ANALYTIC_TOLERANCE {
            fails.push(format!("n={n}: {lhs} vs {r}"));
        }
    }
    Ok(vec![Check::new("L(1)·√n/Ω = Tunnell ratio", &fails, ns.len())])
}

fn prop_ab(max: u64) -> Result<Vec<Check>, CliError> {
    let t = FormulaTables::compute(max);
    let ns = squarefree_upto(max);
    let (mut genus, mut props) = (Vec::new(), Vec::new());
    let (mut ng, mut np) = (0, 0);
    for &n in &ns {
        if ![1, 2, 3].contains(&(n % 8)) {
            continue;
        }
        ng += 1;
        let tun = ratio_from_count(n, t.tunnell[n as usize]);
        let gen = central_ratio_genus(n)?;
        if tun != gen {
            genus.push(format!("n={n}: {tun} vs {gen}"));
        }
        if n % 8 == 1 {
            np += 1;
            let (a, b) = (central_ratio_prop_a(n)?, central_ratio_prop_b(n)?);
            if a != tun || b != tun {
                props.push(format!("n={n}: tunnell {tun}, A {a}, B {b}"));
            }
        }
    }
    let mut sign = Vec::new();
    if combo_theta(1)? != combo_theta_prime(1)? {
        sign.push("n=1: expected equal".to_string());
    }
    if combo_theta(57)? != -combo_theta_prime(57)? || combo_theta(57)? == 0 {
        sign.push(format!("n=57: {} vs {}", combo_theta(57)?, combo_theta_prime(57)?));
    }
    Ok(vec![
        Check::new("tunnell = genus", &genus, ng),
        Check::new("tunnell = propA = propB", &props, np),
        Check::new("sign at 1 and 57", &sign, 2),
    ])
}

fn redei_oracle(max: u64) -> Result<Vec<Check>, CliError> {
    let ns = squarefree_upto(max);
    let results: Vec<Result<Option<String>, CliError>> = ns
        .par_iter()
        .map(|&n| {
            let r = redei_four_rank(n)?;
            let brute = class_group_2sylow(field_discriminant(n))?.iter().filter(|&&e| e >= 2).count() as u32;
            let (_, odd) = g_invariant(n)?;
            Ok((r != brute || odd != (r == 0)).then(|| format!("n={n}: redei {r}, brute {brute}, g odd {odd}")))
        })
        .collect();
    let fails: Vec<String> = results.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect();
    let dual_max = max.min(500) as i64;
    let dual_ns: Vec<i64> = ns.iter().copied().filter(|&n| n <= dual_max && n % 2 != 0 && n % 3 != 0).collect();
    let dual: Vec<Result<Option<String>, CliError>> = dual_ns
        .par_iter()
        .map(|&n| {
            for eps in [1i32, -1] {
                let fast = sel2_redei_fastpath(n, eps)?;
                let slow = sel2(1, -3, eps as i64 * n)?;
                if fast.member_set() != slow.member_set() {
                    return Ok(Some(format!("n={n} eps={eps}")));
                }
            }
            Ok(None)
        })
        .collect();
    let dual_fails: Vec<String> = dual.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect();
    Ok(vec![
        Check::new("4-rank: Rédei = composition, g parity", &fails, ns.len()),
        Check::new("Sel₂: Rédei fast path = exhaustive", &dual_fails, 2 * dual_ns.len()),
    ])
}

fn flpt(max: u64) -> Result<Vec<Check>, CliError> {
    let ns: Vec<u64> = squarefree_upto(max)
        .into_iter()
        .filter(|n| [3, 7].contains(&(n % 24)))
        .map(|n| n as u64)
        .collect();
    let rows = flpt_rows(&ns, max.min(300))?;
    let ab: Vec<String> = rows
        .iter()
        .filter(|r| r.genus_odd != r.selmer_trivial)
        .map(|r| format!("n={} eps={}", r.n, r.epsilon))
        .collect();
    let analytic: Vec<_> = rows.iter().filter(|r| r.sha_odd.is_some()).collect();
    let ac: Vec<String> = analytic
        .iter()
        .filter(|r| r.sha_odd != Some(r.genus_odd))
        .map(|r| format!("n={} eps={}", r.n, r.epsilon))
        .collect();
    Ok(vec![
        Check::new("(a) ⟺ (b)", &ab, rows.len()),
        Check::new("(a) ⟺ (c)", &ac, analytic.len()),
    ])
}

fn monsky(max: u64) -> Result<Vec<Check>, CliError> {
    let ns = squarefree_upto(max);
    let results: Vec<Result<Option<String>, CliError>> = ns
        .par_iter()
        .map(|&n| Ok((!monsky_parity_check(&TwistCurve::congruent(n)?)?).then(|| format!("n={n}"))))
        .collect();
    let fails: Vec<String> = results.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect();
    Ok(vec![Check::new("Sel₂ parity = root number", &fails, ns.len())])
}

fn constants(d_max: u32) -> Result<Vec<Check>, CliError> {
    let c = distribution_constants(2, d_max)?;
    let mut fails = Vec::new();
    if c.defect.abs() > CONSTANTS_TOLERANCE {
        fails.push(format!("partial sum defect {}", c.defect));
    }
    for (d, &v) in c.table.iter().enumerate() {
        if !(v > 0.0 && v < 1.0) {
            fails.push(format!("C(2,{d}) = {v} outside (0,1)"));
        }
    }
    Ok(vec![Check::new("Σ C(2,d) = 1", &fails, c.table.len())])
}

fn period(max: u64) -> Result<Vec<Check>, CliError> {
    let mut fails = Vec::new();
    let mut curves = Vec::new();
    for n in squarefree_upto(max) {
        curves.push(TwistCurve::congruent(n)?);
        curves.push(TwistCurve::tiling(n)?);
        curves.push(TwistCurve::tiling(-n)?);
    }
    for c in &curves {
        match real_period(c) {
            Ok(p) if (p.identity_component - p.quadrature).abs() <= PERIOD_AGREEMENT => {}
            Ok(p) => fails.push(format!("{c}: {} vs {}", p.identity_component, p.quadrature)),
            Err(e) => fails.push(format!("{c}: {e}")),
        }
    }
    Ok(vec![Check::new("AGM = quadrature", &fails, curves.len())])
}

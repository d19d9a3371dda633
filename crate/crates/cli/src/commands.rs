// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use ckit_core::classgrp::{class_group_2sylow, class_group_data, genus_invariant_flpt, ClassGroupData};
use ckit_core::descent::{congruent_root_number, sel2, sel2_redei_fastpath, SelmerResult};
use ckit_core::distribution::{distribution_constants, parity_constrained};
use ckit_core::lfunc::{analytic_sha, base_period, l_value_1_with, real_period, ShaEstimate, TwistCurve};
use ckit_core::tunnell::{ratio_from_count, tunnell_table};
use ckit_core::Error;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::ScanConfig;
use crate::output::{lock_baseline, round_sig, write_rows, BaselineOutcome, Summary};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Congruent,
    Tiling,
}

impl Family {
    pub fn curve(self, m: i64) -> Result<TwistCurve, CliError> {
        Ok(match self {
            Family::Congruent => TwistCurve::congruent(m)?,
            Family::Tiling => TwistCurve::tiling(m)?,
        })
    }

    pub fn params(self) -> (i64, i64) {
        match self {
            Family::Congruent => (1, -1),
            Family::Tiling => (1, -3),
        }
    }
}

fn finish_summary(summary: &Summary, cfg: &ScanConfig) -> Result<(), CliError> {
    summary.print(cfg.out.is_none())?;
    if let Some(path) = &cfg.baseline {
        match lock_baseline(summary, path)? {
            BaselineOutcome::Written(p) => eprintln!("baseline written to {}", p.display()),
            BaselineOutcome::Matched => eprintln!("baseline matched"),
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct TunnellRow {
    pub n: u64,
    pub class_mod8: u64,
    #[serde(rename = "tunnell_L")]
    pub tunnell_l: i64,
    pub ratio: String,
    pub certified_noncongruent: bool,
    pub predicted_congruent: bool,
}

pub fn tunnell_rows(cfg: &ScanConfig) -> Vec<TunnellRow> {
    let table = tunnell_table(cfg.range_max);
    cfg.squarefree_range()
        .into_iter()
        .map(|n| {
            let l = table[n as usize];
            TunnellRow {
                n,
                class_mod8: n % 8,
                tunnell_l: l,
                ratio: ratio_from_count(n as i64, l).to_string(),
                certified_noncongruent: l != 0,
                predicted_congruent: l == 0,
            }
        })
        .collect()
}

/// Nonvanishing counts and exact fractions per class mod 8 and overall.
pub fn tunnell_summary(cfg: &ScanConfig, rows: &[TunnellRow]) -> Summary {
    let mut s = Summary::new("tunnell-scan");
    s.exact("range_max", cfg.range_max);
    for (m, rs) in &cfg.residues {
        let list: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
        s.exact(format!("residues_mod_{m}"), list.join(","));
    }
    let mut per: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for r in rows {
        let e = per.entry(r.class_mod8).or_default();
        e.0 += 1;
        e.1 += r.certified_noncongruent as u64;
    }
    let (mut total, mut nonzero) = (0, 0);
    for (c, (t, nz)) in &per {
        s.exact(format!("class_{c}.total"), t);
        s.exact(format!("class_{c}.nonvanishing"), nz);
        s.exact(format!("class_{c}.fraction"), Ratio::new(*nz, *t));
        total += t;
        nonzero += nz;
    }
    if total > 0 {
        s.exact("all.total", total);
        s.exact("all.nonvanishing", nonzero);
        s.exact("all.fraction", Ratio::new(nonzero, total));
    }
    s
}

pub fn cmd_tunnell_scan(cfg: &ScanConfig) -> Result<(), CliError> {
    let rows = tunnell_rows(cfg);
    write_rows(&rows, cfg.format, cfg.out.as_deref())?;
    finish_summary(&tunnell_summary(cfg, &rows), cfg)
}

#[derive(Debug, Serialize)]
struct LValueReport {
    family: Family,
    m: i64,
    conductor: u128,
    epsilon: i32,
    l_value: f64,
    abs_error_bound: f64,
    truncation: usize,
    neron_period: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic_sha: Option<ShaEstimate>,
}

pub fn cmd_lvalue(family: Family, n: i64, sign: i64, digits: u32) -> Result<(), CliError> {
    let m = sign * n;
    let curve = family.curve(m)?;
    let l = l_value_1_with(&curve, digits, ckit_core::lfunc::series::DEFAULT_T2)?;
    let period = real_period(&curve)?;
    let normalized = (family == Family::Congruent).then(|| round_sig(l.value * (n as f64).sqrt() / base_period()));
    let sha = match analytic_sha(&curve) {
        Ok(s) => Some(s),
        Err(Error::NotRankZero { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    crate::output::print_json(&LValueReport {
        family,
        m,
        conductor: l.conductor,
        epsilon: l.epsilon,
        l_value: round_sig(l.value),
        abs_error_bound: l.abs_error_bound,
        truncation: l.truncation,
        neron_period: round_sig(period.neron),
        normalized,
        analytic_sha: sha,
    })
}

#[derive(Debug, Serialize)]
struct SelmerReport {
    family: Family,
    m: i64,
    method: &'static str,
    #[serde(flatten)]
    result: SelmerResult,
}

pub fn cmd_selmer(family: Family, n: i64, sign: i64, fastpath: bool) -> Result<(), CliError> {
    let m = sign * n;
    let (e1, e2) = family.params();
    let result = if fastpath {
        if family != Family::Tiling {
            return Err(CliError::Usage("--fastpath applies to the tiling family only".into()));
        }
        sel2_redei_fastpath(n, sign as i32)?
    } else {
        family.curve(m)?;
        sel2(e1, e2, m)?
    };
    crate::output::print_json(&SelmerReport {
        family,
        m,
        method: if fastpath { "redei" } else { "exhaustive" },
        result,
    })
}

#[derive(Debug, Serialize)]
struct ClassGroupReport {
    #[serde(flatten)]
    data: ClassGroupData,
    /// Exponents `k` of the cyclic factors `ℤ/2^k` of the 2-Sylow subgroup.
    two_sylow: Vec<u32>,
}

pub fn cmd_classgroup(n: i64) -> Result<(), CliError> {
    let data = class_group_data(n)?;
    let two_sylow = class_group_2sylow(data.d)?;
    crate::output::print_json(&ClassGroupReport { data, two_sylow })
}

#[derive(Debug, Clone, Serialize)]
pub struct FlptRow {
    pub n: u64,
    pub epsilon: i32,
    pub genus_odd: bool,
    pub selmer_trivial: bool,
    /// Empty when outside the analytic range.
    pub sha_odd: Option<bool>,
    pub agree: bool,
}

/// `L(1) ≠ 0` (above the threshold) with odd analytic Sha.
pub fn flpt_analytic(m: i64) -> Result<bool, CliError> {
    match analytic_sha(&TwistCurve::tiling(m)?) {
        Ok(s) => Ok(s.odd && s.l_value.value.abs() > crate::verify::NONVANISHING_THRESHOLD),
        Err(Error::NotRankZero { .. }) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

pub fn flpt_rows(ns: &[u64], analytic_max: u64) -> Result<Vec<FlptRow>, CliError> {
    let per_n: Vec<Result<Vec<FlptRow>, CliError>> = ns
        .par_iter()
        .map(|&n| {
            let mut out = Vec::with_capacity(2);
            for eps in [1i32, -1] {
                let m = eps as i64 * n as i64;
                let a = genus_invariant_flpt(n as i64, eps)?;
                let b = sel2(1, -3, m)?.quotient_dim == 0;
                let c = if n <= analytic_max { Some(flpt_analytic(m)?) } else { None };
                out.push(FlptRow {
                    n,
                    epsilon: eps,
                    genus_odd: a,
                    selmer_trivial: b,
                    sha_odd: c,
                    agree: a == b && c.is_none_or(|c| c == a),
                });
            }
            Ok(out)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_n {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn flpt_summary(rows: &[FlptRow]) -> Summary {
    let mut s = Summary::new("flpt");
    let failures = rows.iter().filter(|r| !r.agree).count();
    s.exact("pairs", rows.len());
    s.exact("analytic_pairs", rows.iter().filter(|r| r.sha_odd.is_some()).count());
    s.exact("failures", failures);
    // both signs trivial, per residue class mod 24
    for (class, theory) in [(7u64, 0.5 * ckit_core::distribution::euler_product_half()), (3, ckit_core::distribution::euler_product_half())] {
        let ns: Vec<u64> = rows.iter().filter(|r| r.n % 24 == class && r.epsilon == 1).map(|r| r.n).collect();
        let hits = ns
            .iter()
            .filter(|&&n| rows.iter().filter(|r| r.n == n).all(|r| r.selmer_trivial))
            .count();
        if !ns.is_empty() {
            s.exact(format!("class_{class}.both_signs_trivial"), Ratio::new(hits, ns.len()));
            s.analytic(format!("class_{class}.theoretical_density"), theory);
        }
    }
    s
}

pub fn cmd_flpt(cfg: &ScanConfig, analytic_max: u64) -> Result<(), CliError> {
    let ns = cfg.squarefree_range();
    let rows = flpt_rows(&ns, analytic_max)?;
    write_rows(&rows, cfg.format, cfg.out.as_deref())?;
    let summary = flpt_summary(&rows);
    finish_summary(&summary, cfg)?;
    if let Some(bad) = rows.iter().find(|r| !r.agree) {
        return Err(CliError::Failure(format!("inequivalence at n={} epsilon={}: {bad:?}", bad.n, bad.epsilon)));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantRow {
    pub d: u32,
    pub c: String,
    pub parity_even: String,
    pub parity_odd: String,
}

pub fn cmd_constants(p: u64, d_max: u32, cfg: &ScanConfig) -> Result<(), CliError> {
    use crate::output::fmt_sig;
    let c = distribution_constants(p, d_max)?;
    let rows: Vec<ConstantRow> = c
        .table
        .iter()
        .enumerate()
        .map(|(d, &v)| ConstantRow {
            d: d as u32,
            c: fmt_sig(v),
            parity_even: fmt_sig(parity_constrained(p, d as u32, 0)),
            parity_odd: fmt_sig(parity_constrained(p, d as u32, 1)),
        })
        .collect();
    write_rows(&rows, cfg.format, cfg.out.as_deref())?;
    let mut s = Summary::new("constants");
    s.exact("p", p);
    s.exact("d_max", d_max);
    s.analytic("defect", c.defect);
    finish_summary(&s, cfg)
}

#[derive(Debug, Clone, Serialize)]
pub struct DistRow {
    /// Root number class: `+1` or `−1`.
    pub class: i32,
    pub d: u32,
    pub count: u64,
    pub empirical: String,
    pub theoretical: String,
}

pub fn cmd_selmer_dist(family: Family, sign: i64, cfg: &ScanConfig) -> Result<(), CliError> {
    use crate::output::fmt_sig;
    let (e1, e2) = family.params();
    let ns = cfg.squarefree_range();
    let dims: Vec<Result<(u64, u32), CliError>> = ns
        .par_iter()
        .map(|&n| Ok((n, sel2(e1, e2, sign * n as i64)?.quotient_dim)))
        .collect();
    // class[ε][d] = count
    let mut hist: BTreeMap<i32, BTreeMap<u32, u64>> = BTreeMap::new();
    let mut parity_violations = 0u64;
    for r in dims {
        let (n, d) = r?;
        let class = match family {
            Family::Congruent => congruent_root_number(n as i64),
            Family::Tiling => 1 - 2 * (d % 2) as i32,
        };
        parity_violations += ((d % 2 == 0) != (class == 1)) as u64;
        *hist.entry(class).or_default().entry(d).or_default() += 1;
    }
    let mut rows = Vec::new();
    for (&class, counts) in &hist {
        let total: u64 = counts.values().sum();
        let d_top = counts.keys().max().copied().unwrap_or(0).max(4);
        let d0 = if class == 1 { 0 } else { 1 };
        for d in 0..=d_top {
            let count = counts.get(&d).copied().unwrap_or(0);
            rows.push(DistRow {
                class,
                d,
                count,
                empirical: fmt_sig(count as f64 / total as f64),
                theoretical: fmt_sig(parity_constrained(2, d, d0)),
            });
        }
    }
    write_rows(&rows, cfg.format, cfg.out.as_deref())?;
    let mut s = Summary::new("selmer-dist");
    s.exact("family", format!("{family:?}").to_lowercase());
    s.exact("sample", ns.len());
    s.exact("parity_violations", parity_violations);
    finish_summary(&s, cfg)
}

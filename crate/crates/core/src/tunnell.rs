// SPDX-License-Identifier: Apache-2.0

//! The Tunnell count `𝓛(n)` and the combinatorial central-value formulas.
//!
//! Four independent routes give the normalized central value
//! `L(1, E⁽ⁿ⁾)·√n / Ω` of the congruent-number curve:
//!
//! * the count on `2a·x² + y² + 8z² = n/a` split by the parity of `z`;
//! * a genus pair of lattices in the trace-zero quaternions, at `n` for
//!   `n ≡ 1, 3 (mod 8)` and a second pair for `n ≡ 2 (mod 8)`;
//! * a signed two-lattice combination at `n` (`n ≡ 1 mod 8`);
//! * a signed four-lattice combination at `2n` (`n ≡ 1 mod 8`).
//!
//! The lattice Gram matrices are committed in `data/lattices.json` together
//! with the quaternion bases they were derived from.

use std::sync::OnceLock;

use num_rational::Ratio;
use serde::Deserialize;

use crate::arith::isqrt;
use crate::error::{require_residue, require_squarefree, Result};
use crate::forms::{gram_from_basis, parse_quaternion, TernaryForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TunnellCount {
    pub n: i64,
    pub evens: u64,
    pub odds: u64,
    pub l: i64,
}

/// A named lattice with its printed basis and the derived form.
#[derive(Debug, Clone, Deserialize)]
pub struct Lattice {
    pub name: String,
    pub basis: Vec<String>,
    #[serde(rename = "gram", deserialize_with = "form_from_matrix")]
    pub form: TernaryForm,
}

fn form_from_matrix<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<TernaryForm, D::Error> {
    let gram = <[[i64; 3]; 3]>::deserialize(d)?;
    TernaryForm::from_gram(gram).map_err(serde::de::Error::custom)
}

impl Lattice {
    /// Re-derives the form from the basis strings.
    pub fn derive_form(&self) -> Result<TernaryForm> {
        let b: Vec<_> = self
            .basis
            .iter()
            .map(|s| parse_quaternion(s))
            .collect::<Result<_>>()?;
        gram_from_basis(b[0], b[1], b[2])
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct LatticeData {
    pub genus_odd: Vec<Lattice>,
    pub genus_even: Vec<Lattice>,
    pub prop_a: Vec<Lattice>,
    pub prop_b: Vec<Lattice>,
}

pub const LATTICES_JSON: &str = include_str!("../data/lattices.json");

pub fn lattices() -> &'static LatticeData {
    static DATA: OnceLock<LatticeData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(LATTICES_JSON).expect("committed lattice data parses"))
}

/// Integer combination `Σ cᵢ · #{v ∈ Lᵢ : nrd(v) = s·n}`.
#[derive(Debug, Clone)]
pub struct SignedCombo {
    pub terms: Vec<(TernaryForm, i64)>,
    pub index_scale: u64,
}

impl SignedCombo {
    pub fn new(terms: Vec<(TernaryForm, i64)>, index_scale: u64) -> Self {
        assert!(!terms.is_empty() && terms.iter().all(|&(_, c)| c != 0));
        assert!(index_scale >= 1);
        Self { terms, index_scale }
    }

    pub fn evaluate(&self, n: u64) -> i64 {
        self.terms
            .iter()
            .map(|(f, c)| c * f.count_reps(self.index_scale * n) as i64)
            .sum()
    }

    /// `table[n]` for `0 ≤ n ≤ max`, one ellipsoid sweep per form.
    pub fn table(&self, max: u64) -> Vec<i64> {
        let mut out = vec![0i64; max as usize + 1];
        for (f, c) in &self.terms {
            let hist = f.reps_histogram(self.index_scale * max);
            for (n, slot) in out.iter_mut().enumerate() {
                *slot += c * hist[n * self.index_scale as usize] as i64;
            }
        }
        out
    }
}

fn pair(lats: &[Lattice], coefs: &[i64], scale: u64) -> SignedCombo {
    SignedCombo::new(
        lats.iter().zip(coefs).map(|(l, &c)| (l.form.clone(), c)).collect(),
        scale,
    )
}

pub fn genus_odd_combo() -> SignedCombo {
    pair(&lattices().genus_odd, &[1, -1], 1)
}

pub fn genus_even_combo() -> SignedCombo {
    pair(&lattices().genus_even, &[1, -1], 1)
}

/// `#L₁ − #L₂` at `n`.
pub fn theta_combo() -> SignedCombo {
    pair(&lattices().prop_a[..2], &[1, -1], 1)
}

/// `#L₁′ + #L₂′ − #L₃′ − #L₄′` at `2n`.
pub fn theta_prime_combo() -> SignedCombo {
    pair(&lattices().prop_b, &[1, 1, -1, -1], 2)
}

/// The form `2a·x² + y² + 8z²` and target `n/a`.
fn tunnell_equation(n: i64) -> (i64, i64) {
    let a = if n % 2 == 1 { 1 } else { 2 };
    (2 * a, n / a)
}

pub fn tunnell_count(n: i64) -> Result<TunnellCount> {
    require_squarefree(n)?;
    let (cx, target) = tunnell_equation(n);
    let (mut evens, mut odds) = (0u64, 0u64);
    let zmax = isqrt((target / 8) as u128) as i64;
    for z in -zmax..=zmax {
        let rz = target - 8 * z * z;
        let xmax = isqrt((rz / cx) as u128) as i64;
        for x in -xmax..=xmax {
            let r = rz - cx * x * x;
            let y = isqrt(r as u128) as i64;
            if y * y == r {
                let sols = if y == 0 { 1 } else { 2 };
                if z % 2 == 0 {
                    evens += sols;
                } else {
                    odds += sols;
                }
            }
        }
    }
    Ok(TunnellCount {
        n,
        evens,
        odds,
        l: evens as i64 - odds as i64,
    })
}

/// `𝓛(n)` for every `0 ≤ n ≤ max` via two weighted ellipsoid sweeps.
/// Entries at non-square-free `n` are filled but meaningless.
pub fn tunnell_table(max: u64) -> Vec<i64> {
    let parity_weight = |v: [i64; 3]| if v[2] % 2 == 0 { 1 } else { -1 };
    let odd_form = TernaryForm::diagonal(2, 1, 8).expect("definite");
    let even_form = TernaryForm::diagonal(4, 1, 8).expect("definite");
    let odd = odd_form.weighted_histogram(max, parity_weight);
    let even = even_form.weighted_histogram(max / 2, parity_weight);
    (0..=max as usize)
        .map(|n| if n % 2 == 1 { odd[n] } else { even[n / 2] })
        .collect()
}

/// `𝓛(n) ≠ 0` proves `n` is not congruent.
pub fn certify_noncongruent(n: i64) -> Result<bool> {
    Ok(tunnell_count(n)?.l != 0)
}

/// Conjectural: `𝓛(n) = 0` predicts `n` is congruent.
pub fn cn_predicted_congruent(n: i64) -> Result<bool> {
    Ok(tunnell_count(n)?.l == 0)
}

/// `𝓛(n)²/16` for odd `n`, `𝓛(n)²/8` for even `n`.
pub fn ratio_from_count(n: i64, l: i64) -> Ratio<i64> {
    Ratio::new(l * l, if n % 2 == 1 { 16 } else { 8 })
}

pub fn central_ratio_tunnell(n: i64) -> Result<Ratio<i64>> {
    let l = tunnell_count(n)?.l;
    Ok(ratio_from_count(n, l))
}

pub fn genus_ratio_from_combo(n: i64, c: i64) -> Ratio<i64> {
    if n % 8 == 2 {
        Ratio::new(2 * c * c, 16)
    } else {
        Ratio::new(c * c, 16)
    }
}

pub fn central_ratio_genus(n: i64) -> Result<Ratio<i64>> {
    require_squarefree(n)?;
    require_residue(n, 8, &[1, 2, 3])?;
    let combo = if n % 8 == 2 {
        genus_even_combo()
    } else {
        genus_odd_combo()
    };
    Ok(genus_ratio_from_combo(n, combo.evaluate(n as u64)))
}

fn require_prop_domain(n: i64) -> Result<()> {
    require_squarefree(n)?;
    require_residue(n, 8, &[1])
}

pub fn combo_theta(n: i64) -> Result<i64> {
    require_prop_domain(n)?;
    Ok(theta_combo().evaluate(n as u64))
}

pub fn combo_theta_prime(n: i64) -> Result<i64> {
    require_prop_domain(n)?;
    Ok(theta_prime_combo().evaluate(n as u64))
}

pub fn central_ratio_prop_a(n: i64) -> Result<Ratio<i64>> {
    let c = combo_theta(n)?;
    Ok(Ratio::new(c * c, 16))
}

pub fn central_ratio_prop_b(n: i64) -> Result<Ratio<i64>> {
    let c = combo_theta_prime(n)?;
    Ok(Ratio::new(c * c, 16))
}

/// Per-n values of every formula up to `max`, computed by sweeps.
#[derive(Debug, Clone)]
pub struct FormulaTables {
    pub max: u64,
    pub tunnell: Vec<i64>,
    pub genus_odd: Vec<i64>,
    pub genus_even: Vec<i64>,
    pub theta: Vec<i64>,
    pub theta_prime: Vec<i64>,
}

impl FormulaTables {
    pub fn compute(max: u64) -> Self {
        Self {
            max,
            tunnell: tunnell_table(max),
            genus_odd: genus_odd_combo().table(max),
            genus_even: genus_even_combo().table(max),
            theta: theta_combo().table(max),
            theta_prime: theta_prime_combo().table(max),
        }
    }
}

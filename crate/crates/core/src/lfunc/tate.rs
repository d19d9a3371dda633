// SPDX-License-Identifier: Apache-2.0

//! Tate's algorithm over ℚ: Kodaira type, conductor exponent, Tamagawa number
//! and a model minimal at `p`.
//!
//! Coordinate changes are chosen by search in the residue field, which keeps a
//! single code path for `p = 2`, `p = 3` and larger primes.

use serde::Serialize;

use super::curve::Weierstrass;
use crate::arith::{mod_pos, val_or_inf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive(Kodaira),
}

impl Reduction {
    /// The Euler factor coefficient `a_p` at a bad prime.
    pub fn bad_ap(&self) -> Option<i64> {
        match self {
            Reduction::Good => None,
            Reduction::SplitMultiplicative => Some(1),
            Reduction::NonsplitMultiplicative => Some(-1),
            Reduction::Additive(_) => Some(0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub p: u64,
    pub conductor_exponent: u32,
    pub tamagawa: u32,
    pub kodaira: Kodaira,
    pub reduction: Reduction,
}

/// `x_original = u²·x_current + r` accumulated across coordinate changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XChange {
    pub u: i128,
    pub r: i128,
}

impl XChange {
    pub const IDENTITY: XChange = XChange { u: 1, r: 0 };

    fn shift(&mut self, r: i128) {
        self.r += self.u * self.u * r;
    }

    fn scale(&mut self, u: i128) {
        self.u *= u;
    }
}

#[derive(Debug, Clone)]
pub struct TateResult {
    pub local: LocalData,
    pub minimal: Weierstrass,
    pub change: XChange,
}

fn v(n: i128, p: i128) -> u32 {
    val_or_inf(n, p)
}

/// Roots in F_p of a polynomial (coefficients low to high), with
/// multiplicity, found by search and synthetic division.
fn roots_mod_p(coeffs: &[i128], p: i128) -> Vec<i128> {
    let mut poly: Vec<i128> = coeffs.iter().map(|&c| mod_pos(c, p)).collect();
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
    let mut roots = Vec::new();
    'outer: while poly.len() > 1 {
        for r in 0..p {
            let val = poly.iter().rev().fold(0, |acc, &c| mod_pos(acc * r + c, p));
            if val == 0 {
                let deg = poly.len() - 1;
                let mut q = vec![0i128; deg];
                let mut carry = 0;
                for i in (0..deg).rev() {
                    carry = mod_pos(poly[i + 1] + carry * r, p);
                    q[i] = carry;
                }
                poly = q;
                roots.push(r);
                continue 'outer;
            }
        }
        break;
    }
    roots
}

fn has_root_mod_p(coeffs: &[i128], p: i128) -> bool {
    !roots_mod_p(coeffs, p).is_empty()
}

/// A root of multiplicity at least `k`, if one exists.
fn multiple_root(coeffs: &[i128], p: i128, k: usize) -> Option<i128> {
    let roots = roots_mod_p(coeffs, p);
    roots
        .iter()
        .copied()
        .find(|r| roots.iter().filter(|&&s| s == *r).count() >= k)
}

/// Translate a singular point of the reduction to `(0, 0)`.
fn move_singular_point(e: &Weierstrass, p: i128) -> (i128, i128) {
    if p == 2 {
        for x in 0..2 {
            for y in 0..2 {
                let fx = e.a1 * y - 3 * x * x - 2 * e.a2 * x - e.a4;
                let fy = 2 * y + e.a1 * x + e.a3;
                if e.on_curve_mod(x, y, 2) && mod_pos(fx, 2) == 0 && mod_pos(fy, 2) == 0 {
                    return (x, y);
                }
            }
        }
        unreachable!("reduction is singular");
    }
    let (b2, b4) = (e.b2(), e.b4());
    for x in 0..p {
        let g = e.two_division(x);
        let dg = (12 * x + 2 * b2) * x + 2 * b4;
        if mod_pos(g, p) == 0 && mod_pos(dg, p) == 0 {
            let inv2 = (p + 1) / 2;
            let y = mod_pos(-(e.a1 * x + e.a3) * inv2, p);
            return (x, y);
        }
    }
    unreachable!("reduction is singular");
}

/// Runs Tate's algorithm at `p` on an integral model.
pub fn tate(model: &Weierstrass, p: u64) -> TateResult {
    let pi = p as i128;
    let mut e = *model;
    let mut change = XChange::IDENTITY;
    loop {
        let disc = e.discriminant();
        let vd = v(disc, pi);
        if vd == 0 {
            return done(p, 0, 1, Kodaira::I0, Reduction::Good, e, change);
        }
        let (x0, y0) = move_singular_point(&e, pi);
        e = e.shift(x0, 0, y0);
        change.shift(x0);

        if v(e.c4(), pi) == 0 {
            let split = has_root_mod_p(&[-e.a2, e.a1, 1], pi);
            let (c, red) = if split {
                (vd, Reduction::SplitMultiplicative)
            } else {
                (if vd.is_multiple_of(2) { 2 } else { 1 }, Reduction::NonsplitMultiplicative)
            };
            return done(p, 1, c, Kodaira::I(vd), red, e, change);
        }
        let additive = |k| Reduction::Additive(k);
        if v(e.a6, pi) < 2 {
            return done(p, vd, 1, Kodaira::II, additive(Kodaira::II), e, change);
        }
        if v(e.b8(), pi) < 3 {
            return done(p, vd - 1, 2, Kodaira::III, additive(Kodaira::III), e, change);
        }
        if v(e.b6(), pi) < 3 {
            let c = if has_root_mod_p(&[-e.a6 / (pi * pi), e.a3 / pi, 1], pi) {
                3
            } else {
                1
            };
            return done(p, vd - 2, c, Kodaira::IV, additive(Kodaira::IV), e, change);
        }

        // Arrange p | a1, a2; p² | a3, a4; p³ | a6.
        let (s, t) = if p == 2 {
            (0..2)
                .flat_map(|s| (0..4).map(move |t| (s, t)))
                .find(|&(s, t)| {
                    let f = e.shift(0, s, t);
                    v(f.a1, 2) >= 1 && v(f.a2, 2) >= 1 && v(f.a3, 2) >= 2
                        && v(f.a4, 2) >= 2 && v(f.a6, 2) >= 3
                })
                .expect("additive reduction admits the normalization")
        } else {
            let inv2 = (pi + 1) / 2;
            (
                mod_pos(-e.a1 * inv2, pi),
                mod_pos(-e.a3 * inv2, pi * pi),
            )
        };
        e = e.shift(0, s, t);
        // Repeated roots of the cubics and quadratics below are F_p-rational,
        // so searching the residue field finds them.
        let p2 = pi * pi;
        let p3 = p2 * pi;
        debug_assert!(v(e.a3, pi) >= 2 && v(e.a4, pi) >= 2 && v(e.a6, pi) >= 3);

        let cubic = [e.a6 / p3, e.a4 / p2, e.a2 / pi, 1];
        let roots = roots_mod_p(&cubic, pi);
        if multiple_root(&cubic, pi, 2).is_none() {
            let c = 1 + roots.len() as u32;
            return done(p, vd - 4, c, Kodaira::I0Star, additive(Kodaira::I0Star), e, change);
        }

        if let Some(r) = multiple_root(&cubic, pi, 3) {
            e = e.shift(r * pi, 0, 0);
            change.shift(r * pi);
            let quad = [-e.a6 / (p2 * p2), e.a3 / p2, 1];
            if multiple_root(&quad, pi, 2).is_none() {
                let c = if has_root_mod_p(&quad, pi) { 3 } else { 1 };
                return done(p, vd - 6, c, Kodaira::IVStar, additive(Kodaira::IVStar), e, change);
            }
            let t = multiple_root(&quad, pi, 2).unwrap() * p2;
            e = e.shift(0, 0, t);
            if v(e.a4, pi) < 4 {
                return done(p, vd - 7, 2, Kodaira::IIIStar, additive(Kodaira::IIIStar), e, change);
            }
            if v(e.a6, pi) < 6 {
                return done(p, vd - 8, 1, Kodaira::IIStar, additive(Kodaira::IIStar), e, change);
            }
            e = e.unscale(pi);
            change.scale(pi);
            continue;
        }

        // Double root: type I_m*.
        let r = multiple_root(&cubic, pi, 2).expect("double root");
        e = e.shift(r * pi, 0, 0);
        change.shift(r * pi);
        let (mut ix, mut iy) = (3u32, 3u32);
        let (mut mx, mut my) = (p2, p2);
        let c = loop {
            let xa3 = e.a3 / my;
            let xa6 = e.a6 / (mx * my);
            let quad = [-xa6, xa3, 1];
            if multiple_root(&quad, pi, 2).is_none() {
                break if has_root_mod_p(&quad, pi) { 4 } else { 2 };
            }
            let t = multiple_root(&quad, pi, 2).unwrap() * my;
            e = e.shift(0, 0, t);
            my *= pi;
            iy += 1;
            let xa2 = e.a2 / pi;
            let xa4 = e.a4 / (pi * mx);
            let xa6 = e.a6 / (mx * my);
            let quad = [xa6, xa4, xa2];
            if multiple_root(&quad, pi, 2).is_none() {
                break if has_root_mod_p(&quad, pi) { 4 } else { 2 };
            }
            let r = multiple_root(&quad, pi, 2).unwrap() * mx;
            e = e.shift(r, 0, 0);
            change.shift(r);
            mx *= pi;
            ix += 1;
        };
        let m = ix + iy - 5;
        return done(p, vd - m - 4, c, Kodaira::IStar(m), additive(Kodaira::IStar(m)), e, change);
    }
}

fn done(
    p: u64,
    f: u32,
    c: u32,
    kodaira: Kodaira,
    reduction: Reduction,
    minimal: Weierstrass,
    change: XChange,
) -> TateResult {
    TateResult {
        local: LocalData {
            p,
            conductor_exponent: f,
            tamagawa: c,
            kodaira,
            reduction,
        },
        minimal,
        change,
    }
}

/// A globally minimal model and the local data at every bad prime.
#[derive(Debug, Clone)]
pub struct GlobalData {
    pub minimal: Weierstrass,
    pub change: XChange,
    pub locals: Vec<LocalData>,
}

impl GlobalData {
    pub fn conductor(&self) -> u128 {
        self.locals
            .iter()
            .map(|l| (l.p as u128).pow(l.conductor_exponent))
            .product()
    }

    pub fn tamagawa_product(&self) -> u64 {
        self.locals.iter().map(|l| l.tamagawa as u64).product()
    }

    pub fn local(&self, p: u64) -> Option<&LocalData> {
        self.locals.iter().find(|l| l.p == p)
    }
}

pub fn global_data(model: &Weierstrass) -> GlobalData {
    let mut e = *model;
    let mut change = XChange::IDENTITY;
    let mut locals = Vec::new();
    for p in crate::arith::prime_divisors(model.discriminant()) {
        let res = tate(&e, p as u64);
        change = XChange {
            u: change.u * res.change.u,
            r: change.r + change.u * change.u * res.change.r,
        };
        e = res.minimal;
        if res.local.reduction != Reduction::Good {
            locals.push(res.local);
        }
    }
    GlobalData {
        minimal: e,
        change,
        locals,
    }
}

// SPDX-License-Identifier: Apache-2.0

use ckit_core::arith::is_squarefree;
use ckit_core::descent::sel2;
use ckit_core::lfunc::{analytic_sha, TwistCurve};
use ckit_core::Error;

// Twists by −n with n ≡ 1 (mod 12) have a large Selmer quotient and even analytic Sha.
#[test]
fn minus_twists_one_mod_twelve() {
    let mut rank_zero = 0;
    for n in (13..=400i64).step_by(12).filter(|&n| is_squarefree(n)) {
        assert!(sel2(1, -3, -n).unwrap().quotient_dim >= 2, "n={n}");
        match analytic_sha(&TwistCurve::tiling(-n).unwrap()) {
            Ok(s) => {
                rank_zero += 1;
                assert!(!s.odd, "n={n}: {}", s.rounded);
            }
            Err(Error::NotRankZero { .. }) => {}
            Err(e) => panic!("n={n}: {e}"),
        }
    }
    assert!(rank_zero > 5);
}

#[test]
fn minus_thirteen_sha_is_four() {
    let s = analytic_sha(&TwistCurve::tiling(-13).unwrap()).unwrap();
    assert_eq!(s.rounded, 4.into());
}

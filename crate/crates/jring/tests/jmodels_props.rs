use std::sync::Arc;

use jring::exact::{rat, Cyclotomic, TorusChar};
use jring::jmodels::{closure_test, fiber_image_rank, BlockAlgebraModel, BlockTag, FIXTURES};
use proptest::prelude::*;

#[test]
fn closure_for_a_thousand_pairs() {
    for name in FIXTURES {
        let m = Arc::new(BlockAlgebraModel::fixture(name).unwrap());
        let r = closure_test(&m, 1000, 17).unwrap();
        assert_eq!((r.trials, r.passed), (1000, 1000), "{name}");
    }
}

/// Away from z² = −1 the SL₂ model is the full 2×2 matrix algebra.
#[test]
fn sl2_fibers_are_full_off_the_locus() {
    let m = BlockAlgebraModel::fixture("sl2-j0").unwrap();
    let mut points: Vec<Cyclotomic> = Vec::new();
    for n in 1..=12u32 {
        for k in 0..n as i64 {
            points.push(Cyclotomic::zeta_pow(n, k));
        }
    }
    for q in [rat(2, 1), rat(-3, 1), rat(1, 2), rat(-2, 5)] {
        points.push(Cyclotomic::from_rational(q));
    }
    let minus_one = Cyclotomic::from_int(-1);
    let mut checked = 0;
    for z in points {
        let r = fiber_image_rank(&m, &z).unwrap();
        if z.mul_ref(&z) == minus_one {
            assert_eq!(r.dimension, 2, "{z}");
        } else {
            assert_eq!(r.dimension, 4, "{z}");
            checked += 1;
        }
    }
    assert!(checked >= 20);
}

/// a_0 + Σ a_j (z^j + z^-j).
fn symmetric() -> impl Strategy<Value = (Vec<(i32, i64)>, TorusChar)> {
    prop::collection::vec((0i32..6, -3i64..=3), 1..4).prop_map(|t| {
        let mut terms: Vec<(i32, i64)> = Vec::new();
        for (j, a) in t {
            if j == 0 {
                terms.push((0, a));
            } else {
                terms.push((2 * j, a));
                terms.push((-2 * j, a));
            }
        }
        let c = TorusChar::rank1(&terms);
        (terms, c)
    })
}

proptest! {
    /// ODD membership is antisymmetry under z ↦ −z: every surviving term has
    /// odd weight. FULL is the even-weight counterpart.
    #[test]
    fn tag_predicates_match_weight_parity((_, c) in symmetric()) {
        let weights: Vec<i32> = c.terms().map(|(e, _)| e[0] / 2).collect();
        let odd = weights.iter().all(|w| w % 2 != 0);
        let even = weights.iter().all(|w| w % 2 == 0);
        prop_assert_eq!(BlockTag::Odd.admits(&c).unwrap(), odd);
        prop_assert_eq!(BlockTag::Full.admits(&c).unwrap(), even);
    }
}

use jring::exact::{int, Cyclotomic, HalfLaurent, TorusChar};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 0..5)
        .prop_map(|t| HalfLaurent::from_terms(t.into_iter().map(|(e, c)| (e, int(c)))))
}

fn torus2() -> impl Strategy<Value = TorusChar> {
    prop::collection::vec((-3i32..=3, -3i32..=3, -3i64..=3), 0..4).prop_map(|t| {
        t.into_iter().fold(TorusChar::zero(2), |acc, (a, b, c)| {
            &acc + &TorusChar::monomial(vec![2 * a, b], c)
        })
    })
}

fn cyclotomic(order: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-3i64..=3, 1..6)
        .prop_map(move |c| Cyclotomic::from_poly(order, c.into_iter().map(int).collect()))
}

/// Points where v may be evaluated: roots of unity of order up to 12 and a
/// few nonzero rationals.
fn point() -> impl Strategy<Value = Cyclotomic> {
    prop_oneof![
        (1u32..=12, 0i64..12).prop_map(|(n, k)| Cyclotomic::zeta_pow(n, k)),
        prop::sample::select(vec![2i64, -1, 3, -2]).prop_map(Cyclotomic::from_int),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a + &b) - &b) == a);
    }

    #[test]
    fn torus_ring_axioms(a in torus2(), b in torus2(), c in torus2()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in laurent(), b in laurent(), v in point()) {
        let ea = a.eval(&v).unwrap();
        let eb = b.eval(&v).unwrap();
        prop_assert_eq!((&a * &b).eval(&v).unwrap(), ea.mul_ref(&eb));
        prop_assert_eq!((&a + &b).eval(&v).unwrap(), ea.add_ref(&eb));
    }

    #[test]
    fn lifting_commutes_with_arithmetic(x in cyclotomic(6), y in cyclotomic(6), m in 1u32..=4) {
        let (lx, ly) = (x.lift(6 * m).unwrap(), y.lift(6 * m).unwrap());
        prop_assert_eq!(lx.order(), 6 * m);
        prop_assert_eq!(&lx, &x);
        prop_assert_eq!(lx.mul_ref(&ly), x.mul_ref(&y));
        prop_assert_eq!(lx.add_ref(&ly).simplify(), x.add_ref(&y).simplify());
    }

    #[test]
    fn evaluation_at_a_lifted_root(a in laurent(), n in 1u32..=8, k in 0i64..8, m in 2u32..=3) {
        // ζ_N^k and ζ_{MN}^{Mk} are the same number.
        let direct = a.eval(&Cyclotomic::zeta_pow(n, k)).unwrap();
        let lifted = a.eval(&Cyclotomic::zeta_pow(n * m, k * m as i64)).unwrap();
        prop_assert_eq!(direct, lifted);
    }
}

use super::*;
use crate::exact::linalg::mat_mul;
use crate::exact::{rat, Cyclotomic};
use crate::fingroup::{Cocycle2, FinGroup, GAction};

fn q(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_rational(rat(n, d))
}

fn natural_s3() -> GAction {
    GAction::from_generators(FinGroup::s3(), 3, &[vec![1, 0, 2], vec![0, 2, 1]]).unwrap()
}

fn s3_on_two() -> GAction {
    GAction::from_generators(FinGroup::s3(), 2, &[vec![1, 0], vec![1, 0]]).unwrap()
}

/// Orthogonal, idempotent, summing to O_Δ.
fn assert_family(fam: &[(String, KClass)]) {
    let sq = fam[0].1.square().clone();
    let mut sum = KClass::zero(&sq);
    for (i, (ni, a)) in fam.iter().enumerate() {
        sum = sum.add(a).unwrap();
        for (j, (nj, b)) in fam.iter().enumerate() {
            let p = a.convolve(b).unwrap();
            if i == j {
                assert_eq!(p, *a, "{ni} is not idempotent");
            } else {
                assert!(p.is_zero(), "{ni}·{nj} ≠ 0");
            }
        }
    }
    assert_eq!(sum, KClass::diagonal(&sq));
}

/// Every member acts with module rank 0 or 1 on every E_{s,ρ₁}, and each
/// E_{s,ρ₁} is hit with total rank equal to its dimension.
fn assert_rank_one(fam: &[(String, KClass)]) {
    let sq = fam[0].1.square().clone();
    let g = sq.action().group();
    for s in 0..g.order() {
        let Ok(module) = build_module(&sq, s, None) else {
            continue;
        };
        for (pi, part) in module.parts.iter().enumerate() {
            let ranks: Vec<usize> = fam.iter().map(|(_, t)| module.rank_on(t, pi)).collect();
            assert!(
                ranks.iter().all(|&r| r <= 1),
                "s={s} ρ₁={} ranks {ranks:?}",
                part.rho1
            );
            assert_eq!(ranks.iter().sum::<usize>(), part.multiplicity);
        }
    }
}

#[test]
fn abelian_composition_rule() {
    let z4 = FinGroup::cyclic(4);
    let sq = Square::new(GAction::regular(z4.clone()));
    for a in 0..4 {
        for b in 0..4 {
            let lhs = KClass::orbit_class(&sq, 0, a)
                .convolve(&KClass::orbit_class(&sq, 0, b))
                .unwrap();
            assert_eq!(lhs, KClass::orbit_class(&sq, 0, z4.mul(a, b)));
        }
    }
}

#[test]
fn diagonal_is_the_unit() {
    let sq = Square::new(natural_s3());
    let a = KClass::orbit_class(&sq, 0, 1)
        .scale(&q(3, 2))
        .add(&KClass::diagonal(&sq))
        .unwrap();
    assert_eq!(KClass::diagonal(&sq).convolve(&a).unwrap(), a);
    assert_eq!(a.convolve(&KClass::diagonal(&sq)).unwrap(), a);
    for s in 0..6 {
        assert!(KClass::diagonal(&sq).specialize_at(s).is_identity());
    }
}

#[test]
fn regular_triv_and_sgn_are_orthogonal() {
    let g = FinGroup::s3();
    let sq = Square::new(GAction::regular(g.clone()));
    let fam = s3_idempotents(&sq).unwrap();
    let prod = fam[0].1.convolve(&fam[1].1).unwrap();
    assert!(prod.is_zero());
    // Independent check: right multiplication matrices in ℚ[𝔖₃].
    let right = |sigma: usize| -> Vec<Vec<Cyclotomic>> {
        (0..6)
            .map(|x| {
                (0..6)
                    .map(|y| Cyclotomic::from_int((g.mul(x, sigma) == y) as i64))
                    .collect()
            })
            .collect()
    };
    let mut triv = vec![vec![Cyclotomic::zero(); 6]; 6];
    let mut sgn = triv.clone();
    for sigma in 0..6 {
        let sign = if g.element_order(sigma) == 2 { -1 } else { 1 };
        let r = right(sigma);
        for i in 0..6 {
            for j in 0..6 {
                triv[i][j] = triv[i][j].add_ref(&r[i][j].mul_ref(&q(1, 6)));
                sgn[i][j] = sgn[i][j].add_ref(&r[i][j].mul_ref(&q(sign, 6)));
            }
        }
    }
    assert_eq!(fam[0].1.specialize_at(0).entries, triv);
    assert_eq!(fam[1].1.specialize_at(0).entries, sgn);
    assert!(mat_mul(&triv, &sgn)
        .iter()
        .flatten()
        .all(Cyclotomic::is_zero));
}

#[test]
fn off_diagonal_orbit_on_three_points() {
    let sq = Square::new(natural_s3());
    let off = KClass::orbit_class(&sq, 0, 1).specialize_at(0);
    let mu_triv = vec![Cyclotomic::one(); 3];
    let mu_std = vec![
        Cyclotomic::one(),
        Cyclotomic::from_int(-1),
        Cyclotomic::zero(),
    ];
    let apply = |v: &[Cyclotomic]| -> Vec<Cyclotomic> {
        off.entries
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Cyclotomic::zero(), |a, (x, y)| a.add_ref(&x.mul_ref(y)))
            })
            .collect()
    };
    assert_eq!(apply(&mu_triv), vec![Cyclotomic::from_int(2); 3]);
    assert_eq!(
        apply(&mu_std),
        mu_std.iter().map(|v| v.neg_ref()).collect::<Vec<_>>()
    );
}

#[test]
fn empty_fixed_set_gives_empty_matrix() {
    let g = FinGroup::s3();
    let sq = Square::new(GAction::regular(g.clone()));
    let r = g.mul(g.generators()[0], g.generators()[1]);
    let m = KClass::diagonal(&sq).specialize_at(r);
    assert_eq!(m.size(), 0);
    assert!(build_module(&sq, r, None).is_err());
}

#[test]
fn abelian_examples() {
    let z2 = FinGroup::cyclic(2);
    let sq = Square::new(GAction::regular(z2));
    let fam = abelian_idempotents(&sq, 0).unwrap();
    let d = KClass::diagonal(&sq);
    let o = KClass::orbit_class(&sq, 0, 1);
    assert_eq!(
        fam[0],
        ("triv".to_string(), d.add(&o).unwrap().scale(&q(1, 2)))
    );
    assert_eq!(
        fam[1],
        ("sgn".to_string(), d.sub(&o).unwrap().scale(&q(1, 2)))
    );
    assert_family(&fam);

    let one = Square::new(GAction::trivial(FinGroup::trivial(), 1));
    let fam = abelian_idempotents(&one, 0).unwrap();
    assert_eq!(fam.len(), 1);
    assert_eq!(fam[0].1, KClass::diagonal(&one));

    let klein = FinGroup::standard("Z2xZ2").unwrap();
    let sq = Square::new(GAction::regular(klein));
    let fam = abelian_idempotents(&sq, 0).unwrap();
    assert_eq!(fam.len(), 4);
    assert_family(&fam);
    for (_, t) in &fam {
        assert_eq!(t.specialize_at(0).rank(), 1);
    }
}

#[test]
fn abelian_preconditions() {
    let sq = Square::new(natural_s3());
    assert!(abelian_idempotents(&sq, 0).is_err());
    let two = Square::new(GAction::trivial(FinGroup::cyclic(2), 2));
    assert!(abelian_idempotents(&two, 0).is_err());
}

#[test]
fn s3_families() {
    let g = FinGroup::s3();
    let actions = [
        GAction::trivial(g.clone(), 1),
        s3_on_two(),
        natural_s3(),
        GAction::regular(g.clone()),
    ];
    for a in actions {
        let sq = Square::new(a);
        let fam = s3_idempotents(&sq).unwrap();
        assert_family(&fam);
        assert_rank_one(&fam);
    }
    let bad = Square::new(GAction::trivial(g, 2));
    assert!(matches!(
        s3_idempotents(&bad),
        Err(crate::Error::Unclassified(_))
    ));
}

#[test]
fn three_point_classes_without_twist() {
    let sq = Square::new(natural_s3());
    let (a, b) = s3_three_point_untwisted(&sq).unwrap();
    let fam = s3_idempotents(&sq).unwrap();
    // Same projectors at s = 1 ...
    assert_eq!(a.specialize_at(0), fam[0].1.specialize_at(0));
    assert_eq!(b.specialize_at(0), fam[1].1.specialize_at(0));
    // ... but at a transposition they specialize to 1/3 and 2/3.
    let tau = FinGroup::s3().generators()[0];
    assert_eq!(a.specialize_at(tau).entries, vec![vec![q(1, 3)]]);
    assert_eq!(b.specialize_at(tau).entries, vec![vec![q(2, 3)]]);
    assert_ne!(a.convolve(&a).unwrap(), a);
}

#[test]
fn two_trivial_lines() {
    let case = s3_two_triv_case().unwrap();
    let z = Cyclotomic::zero;
    assert_eq!(
        case.triv_matrix,
        vec![vec![q(1, 1), q(2, 3)], vec![z(), z()]]
    );
    assert_eq!(
        case.std_matrix,
        vec![vec![z(), q(-2, 3)], vec![z(), q(1, 1)]]
    );
    // With 1/2 in the corner the pair is neither orthogonal nor sums to 1.
    let half = vec![vec![q(1, 1), q(1, 2)], vec![z(), z()]];
    assert!(!mat_mul(&half, &case.std_matrix)
        .iter()
        .flatten()
        .all(Cyclotomic::is_zero));
    assert_ne!(half[0][1].add_ref(&case.std_matrix[0][1]), z());
    let tau = case.square.action().group().generators()[0];
    assert_eq!(case.triv.specialize_at(tau).entries, vec![vec![q(1, 1)]]);
    assert_eq!(case.std.specialize_at(tau).entries, vec![vec![z()]]);
    let fam = vec![
        ("triv".to_string(), case.triv),
        ("std".to_string(), case.std),
    ];
    assert_family(&fam);
    assert_rank_one(&fam);
}

#[test]
fn trivial_cubed_lines() {
    let case = s3_triv_cubed_case().unwrap();
    assert_family(&case.classes);
    for (_, t) in &case.classes {
        assert_eq!(t.specialize_at(0).rank(), 1);
    }
    // t_std·t_triv vanishes, so a multiple of it cannot supply the third line.
    assert!(case.s3_std.convolve(&case.s3_triv).unwrap().is_zero());
}

#[test]
fn modules_for_abelian_actions() {
    // Klein four acting regularly, with Γ₁ the first ℤ/2 factor.
    let klein = FinGroup::standard("Z2xZ2").unwrap();
    let sq = Square::new(GAction::regular(klein.clone()));
    let fam = abelian_idempotents(&sq, 0).unwrap();
    let gamma1 = klein.closure(&[klein.generators()[0]]);
    let module = build_module(&sq, 0, Some(&gamma1)).unwrap();
    assert_eq!(module.parts.len(), 2);
    let table = crate::fingroup::irreducible_characters(&klein).unwrap();
    let g1 = klein.generators()[0];
    for (pi, part) in module.parts.iter().enumerate() {
        let sign1 = if part.rho1 == "triv" { 1 } else { -1 };
        for (name, t) in &fam {
            let chi = &table.chars[table.index_of(name).unwrap()];
            let restricts = *chi.value(&klein, g1) == Cyclotomic::from_int(sign1);
            assert_eq!(
                module.rank_on(t, pi) == 1,
                restricts,
                "{name} on {}",
                part.rho1
            );
            assert!(module.rank_on(t, pi) <= 1);
        }
    }

    let sq = Square::new(GAction::regular(FinGroup::cyclic(2)));
    let fam = abelian_idempotents(&sq, 0).unwrap();
    let module = build_module(&sq, 0, None).unwrap();
    assert_eq!(module.parts.len(), 2);
    for pi in 0..2 {
        let hits = fam
            .iter()
            .filter(|(_, t)| module.rank_on(t, pi) > 0)
            .count();
        assert_eq!(hits, 1);
    }
}

#[test]
fn rigid_uniqueness() {
    let sq = Square::new(GAction::regular(FinGroup::cyclic(2)));
    let fam = abelian_idempotents(&sq, 0).unwrap();
    assert_eq!(rigid_unique(&sq, "sgn").unwrap(), fam[1].1);
    let one = Square::new(GAction::trivial(FinGroup::trivial(), 1));
    assert_eq!(rigid_unique(&one, "triv").unwrap(), KClass::diagonal(&one));
    let klein = Square::new(GAction::regular(FinGroup::standard("Z2xZ2").unwrap()));
    for (name, t) in abelian_idempotents(&klein, 0).unwrap() {
        assert_eq!(rigid_unique(&klein, &name).unwrap(), t);
    }
}

#[test]
fn idempotent_coefficients_have_denominators_dividing_y() {
    let sq = Square::new(GAction::regular(FinGroup::cyclic(6)));
    for (_, t) in abelian_idempotents(&sq, 0).unwrap() {
        for (_, terms) in t.coefficients().unwrap() {
            for (_, c) in terms {
                for x in c.coords() {
                    let d = x.denom().clone();
                    assert_eq!(num_integer::Integer::gcd(&d, &6.into()), d);
                }
            }
        }
    }
}

#[test]
fn json_shape() {
    let sq = Square::new(GAction::regular(FinGroup::cyclic(2)));
    let fam = abelian_idempotents(&sq, 0).unwrap();
    let v = fam[1].1.to_json().unwrap();
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
    assert_eq!(v["orbits"][1]["terms"][0][1], "-1/2");
}

fn bilinear_klein_cocycle() -> Cocycle2 {
    let klein = FinGroup::standard("Z2xZ2").unwrap();
    Cocycle2::new(
        klein,
        2,
        (0..4)
            .map(|a| (0..4).map(|b| ((a >> 1) & b & 1) as u64).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn opp_squares() {
    // Γ = ℤ/2³ on two points through the last factor; stabilizer ℤ/2².
    let g = FinGroup::standard("Z2^3").unwrap();
    let action = GAction::from_fn(g.clone(), 2, |x, y| if x & 4 != 0 { 1 - y } else { y }).unwrap();
    let (stab, _) = g.subgroup(&action.stabilizer(0), "Stab").unwrap();
    // The stabilizer {0,1,2,3} has the same table as Z2xZ2.
    let c = Cocycle2::new(
        stab.clone(),
        2,
        bilinear_klein_cocycle()
            .pullback(&stab, &[0, 1, 2, 3])
            .unwrap()
            .values_table(),
    )
    .unwrap();
    let zero = Cocycle2::zero(stab.clone(), 2).unwrap();

    let trivial = CEOrbitData::new(action.clone(), 0, zero.clone()).unwrap();
    assert!(trivial.opp_product_is_split(0, 1).unwrap().split);

    let ce = CEOrbitData::new(action.clone(), 0, c.clone()).unwrap();
    for (a, b) in [(0, 0), (0, 1), (1, 0)] {
        let r = ce.opp_product_is_split(a, b).unwrap();
        assert!(r.split && r.split_mod_n);
        assert!(r.witness.is_some());
    }
    // Inconsistent data: the two points carry non-cohomologous extensions.
    assert!(CEOrbitData::from_points(action, vec![c, zero]).is_err());
}

#[test]
fn opp_square_needs_cstar_coefficients() {
    // 𝔖₃ on two points, point stabilizer 𝔄₃ ≅ ℤ/3 with the ℤ/9 extension.
    let g = FinGroup::s3();
    let action = s3_on_two();
    let (a3, emb) = g.subgroup(&action.stabilizer(0), "A3").unwrap();
    let r = emb[1];
    // Identify 𝔄₃ with ℤ/3 via r ↦ 1.
    let log: Vec<usize> = (0..3)
        .map(|i| emb.iter().position(|&x| x == g.pow(r, i as i64)).unwrap())
        .collect();
    let mut vals = vec![vec![0u64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            vals[log[i]][log[j]] = u64::from(i + j >= 3);
        }
    }
    let carry = Cocycle2::new(a3, 3, vals).unwrap();
    assert!(!carry.is_coboundary());
    let ce = CEOrbitData::new(action, 0, carry).unwrap();
    let check = ce.opp_product_is_split(0, 1).unwrap();
    assert!(check.split);
    assert!(!check.split_mod_n);
}

#[test]
fn opp_square_requires_transitivity() {
    let g = FinGroup::cyclic(2);
    let action = GAction::trivial(g.clone(), 2);
    let c = Cocycle2::zero(g, 2).unwrap();
    assert!(CEOrbitData::new(action, 0, c).is_err());
}

#[test]
fn family_checker_agrees_with_direct_assertions() {
    let g = FinGroup::s3();
    for a in [s3_on_two(), natural_s3(), GAction::regular(g.clone())] {
        let fam = idempotent_family(&Square::new(a)).unwrap();
        let r = check_family(&fam).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
    }
    let sq = Square::new(natural_s3());
    let (a, b) = s3_three_point_untwisted(&sq).unwrap();
    let r = check_family(&[("a".into(), a), ("b".into(), b)]).unwrap();
    assert!(!r.ok());
    assert!(matches!(
        idempotent_family(&Square::new(GAction::trivial(g, 2))),
        Err(crate::Error::Unclassified(_))
    ));
}

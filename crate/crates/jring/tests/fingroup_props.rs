mod common;

use jring::exact::Cyclotomic;
use jring::fingroup::{irreducible_characters, FinGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn orbit_stabilizer() {
    let mut actions = common::abelian_suite();
    actions.extend(common::s3_transitive());
    let z2s3 = FinGroup::standard("Z2xS3").unwrap();
    for s in common::subgroups(&z2s3) {
        actions.push(("Z2xS3".into(), common::coset_action(&z2s3, &s)));
    }
    for (name, a) in &actions {
        for y in 0..a.points() {
            assert_eq!(
                a.orbit(y).len() * a.stabilizer(y).len(),
                a.group().order(),
                "{name}, point {y}"
            );
        }
    }
}

/// Row and column orthogonality, computed here from the raw values.
#[test]
fn character_tables_are_orthogonal() {
    for name in [
        "1", "Z2", "Z3", "Z4", "Z2xZ2", "Z6", "Z8", "Z2xZ4", "Z2^3", "S3", "Z2xS3", "Z3xS3",
    ] {
        let g = FinGroup::standard(name).unwrap();
        let t = irreducible_characters(&g).unwrap();
        let n = g.order() as i64;
        let total: usize = t.chars.iter().map(|c| c.dim() * c.dim()).sum();
        assert_eq!(total, g.order(), "{name}: Σ dim² ≠ |G|");
        for (i, a) in t.chars.iter().enumerate() {
            for (j, b) in t.chars.iter().enumerate() {
                let s = (0..g.order()).fold(Cyclotomic::zero(), |acc, x| {
                    acc.add_ref(&a.value(&g, x).mul_ref(&b.value(&g, x).conj()))
                });
                assert_eq!(
                    s,
                    Cyclotomic::from_int(if i == j { n } else { 0 }),
                    "{name}: rows {i},{j}"
                );
            }
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                let s = t.chars.iter().fold(Cyclotomic::zero(), |acc, c| {
                    acc.add_ref(&c.value(&g, x).mul_ref(&c.value(&g, y).conj()))
                });
                let expect = if g.class_of(x) == g.class_of(y) {
                    g.centralizer(x).len() as i64
                } else {
                    0
                };
                assert_eq!(s, Cyclotomic::from_int(expect), "{name}: columns {x},{y}");
            }
        }
    }
}

#[test]
fn accepted_cocycles_satisfy_the_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["Z2", "Z4", "Z2xZ2", "Z2^3", "Z2xZ4", "S3", "Z6"] {
        let g = FinGroup::standard(name).unwrap();
        for n in [2u64, 3, 4] {
            for _ in 0..5 {
                let c = common::random_cocycle(&g, n, &mut rng);
                let v = c.values_table();
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        for d in 0..g.order() {
                            let lhs = v[a][b] + v[g.mul(a, b)][d];
                            let rhs = v[b][d] + v[a][g.mul(b, d)];
                            assert_eq!(lhs % n, rhs % n, "{name} mod {n}");
                        }
                    }
                }
            }
        }
    }
}

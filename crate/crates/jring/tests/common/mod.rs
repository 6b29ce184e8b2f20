//! Shared generators for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use jring::exact::Cyclotomic;
use jring::fingroup::{Cocycle2, FinGroup, GAction};
use jring::ksquare::{KClass, Square};
use rand::seq::SliceRandom;
use rand::Rng;

/// Abelian groups of order at most 8, one per isomorphism class.
pub const ABELIAN_UP_TO_8: [&str; 11] = [
    "1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2^3",
];

/// All subgroups, found as closures of triples of elements. Three
/// generators suffice for every group of order at most 8.
pub fn subgroups(g: &FinGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let mut h = g.closure(&[a, b, c]);
                h.sort_unstable();
                out.insert(h);
            }
        }
    }
    out.into_iter().collect()
}

/// Γ acting on the left cosets Γ/S.
pub fn coset_action(g: &FinGroup, sub: &[usize]) -> GAction {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        let mut c: Vec<usize> = sub.iter().map(|&s| g.mul(x, s)).collect();
        c.sort_unstable();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let index = |x: usize| cosets.iter().position(|c| c.contains(&x)).unwrap();
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    GAction::from_fn(g.clone(), cosets.len(), |h, y| index(g.mul(h, reps[y]))).unwrap()
}

/// Every transitive action of every abelian group of order at most 8, up to
/// isomorphism: one per subgroup.
pub fn abelian_suite() -> Vec<(String, GAction)> {
    let mut out = Vec::new();
    for name in ABELIAN_UP_TO_8 {
        let g = FinGroup::standard(name).unwrap();
        for s in subgroups(&g) {
            out.push((format!("{name}/|S|={}", s.len()), coset_action(&g, &s)));
        }
    }
    out
}

/// The transitive 𝔖₃-sets of sizes 1, 2, 3, 6.
pub fn s3_transitive() -> Vec<(String, GAction)> {
    let g = FinGroup::s3();
    vec![
        ("S3 on 1".into(), GAction::trivial(g.clone(), 1)),
        (
            "S3 on 2".into(),
            GAction::from_generators(g.clone(), 2, &[vec![1, 0], vec![1, 0]]).unwrap(),
        ),
        (
            "S3 on 3".into(),
            GAction::from_generators(g.clone(), 3, &[vec![1, 0, 2], vec![0, 2, 1]]).unwrap(),
        ),
        ("S3 regular".into(), GAction::regular(g)),
    ]
}

/// A random combination of orbit classes with small integer coefficients
/// and fibres twisted by homomorphisms to ±1 where available.
pub fn random_class<R: Rng>(sq: &Arc<Square>, rng: &mut R) -> KClass {
    let mut c = KClass::zero(sq);
    let g = sq.action().group();
    for orb in sq.orbits() {
        let k = rng.gen_range(-2i64..=2);
        if k == 0 {
            continue;
        }
        let stab = &orb.stabilizer;
        let values: Vec<Cyclotomic> = if rng.gen_bool(0.5) {
            vec![Cyclotomic::from_int(k); stab.len()]
        } else {
            // A class function: k times the number of fixed points of h on Y,
            // plus the order of h.
            stab.iter()
                .map(|&h| {
                    let fixed = sq.action().fixed_points(h).len() as i64;
                    Cyclotomic::from_int(k * fixed + g.element_order(h) as i64)
                })
                .collect()
        };
        let term = KClass::orbit_class_with(sq, orb.base.0, orb.base.1, &values).unwrap();
        c = c.add(&term).unwrap();
    }
    c
}

/// Homomorphisms H → ℤ/n, by brute force over images of the generators.
pub fn homs_to_cyclic(h: &FinGroup, n: u64) -> Vec<Vec<u64>> {
    let gens = h.generators().to_vec();
    let mut out = Vec::new();
    let total = (n as usize).pow(gens.len() as u32);
    'next: for code in 0..total {
        let mut img = vec![None; h.order()];
        img[h.identity()] = Some(0u64);
        let mut rest = code;
        let gen_vals: Vec<u64> = gens
            .iter()
            .map(|_| {
                let v = (rest % n as usize) as u64;
                rest /= n as usize;
                v
            })
            .collect();
        let mut queue = vec![h.identity()];
        while let Some(x) = queue.pop() {
            for (gi, &s) in gens.iter().enumerate() {
                let y = h.mul(x, s);
                let v = (img[x].unwrap() + gen_vals[gi]) % n;
                match img[y] {
                    Some(w) if w != v => continue 'next,
                    Some(_) => {}
                    None => {
                        img[y] = Some(v);
                        queue.push(y);
                    }
                }
            }
        }
        let f: Vec<u64> = img.into_iter().map(Option::unwrap).collect();
        let hom =
            (0..h.order()).all(|a| (0..h.order()).all(|b| f[h.mul(a, b)] == (f[a] + f[b]) % n));
        if hom {
            out.push(f);
        }
    }
    out
}

/// χ₁(g)·χ₂(h) summed over random pairs of homomorphisms, plus a random
/// coboundary.
pub fn random_cocycle<R: Rng>(h: &FinGroup, n: u64, rng: &mut R) -> Cocycle2 {
    let homs = homs_to_cyclic(h, n);
    let m = h.order();
    let mut values = vec![vec![0u64; m]; m];
    for _ in 0..rng.gen_range(0..=2) {
        let a = &homs[rng.gen_range(0..homs.len())];
        let b = &homs[rng.gen_range(0..homs.len())];
        for x in 0..m {
            for y in 0..m {
                values[x][y] = (values[x][y] + a[x] * b[y]) % n;
            }
        }
    }
    let mut b: Vec<u64> = (0..m).map(|_| rng.gen_range(0..n)).collect();
    b[h.identity()] = 0;
    let cob = Cocycle2::coboundary(h.clone(), n, &b).unwrap();
    Cocycle2::new(h.clone(), n, values)
        .unwrap()
        .add(&cob)
        .unwrap()
}

pub type M = Vec<Vec<i64>>;

fn mul(a: &M, b: &M) -> M {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn ident(n: usize) -> M {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// U·P·U⁻¹ with P a signed permutation and U a product of elementary
/// matrices, so that U⁻¹ is known exactly.
pub fn random_finite_order<R: Rng>(n: usize, rng: &mut R) -> M {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = vec![vec![0; n]; n];
    for (i, &j) in perm.iter().enumerate() {
        p[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    let (mut u, mut u_inv) = (ident(n), ident(n));
    if n > 1 {
        for _ in 0..rng.gen_range(0..4) {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let c = rng.gen_range(-2..=2);
            let mut e = ident(n);
            e[i][j] = c;
            let mut e_inv = ident(n);
            e_inv[i][j] = -c;
            u = mul(&u, &e);
            u_inv = mul(&e_inv, &u_inv);
        }
    }
    mul(&mul(&u, &p), &u_inv)
}

/// |coker(M) ⊗ ℤ/m|, by listing the column span of M inside (ℤ/m)ⁿ.
pub fn cokernel_size_mod(m: &M, modulus: i64) -> u64 {
    let n = m.len();
    let mut span: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    span.insert(vec![0; n]);
    let mut frontier = vec![vec![0; n]];
    while let Some(v) = frontier.pop() {
        for j in 0..n {
            let w: Vec<i64> = (0..n)
                .map(|i| (v[i] + m[i][j]).rem_euclid(modulus))
                .collect();
            if span.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    (modulus as u64).pow(n as u32) / span.len() as u64
}

/// A transitive Γ-set with a transported ℤ/N cocycle on the stabilizers.
pub struct OppConfig {
    pub group: FinGroup,
    pub modulus: u64,
    pub data: jring::ksquare::CEOrbitData,
}

/// Random consistent configurations: Γ from a fixed list, a coset action
/// with stabilizer of order 2..=8, and a random cocycle on the stabilizer.
/// Draws that fail the transport consistency check are skipped.
pub fn random_opp_config<R: Rng>(rng: &mut R) -> OppConfig {
    let groups = [
        "Z2xZ2", "Z2^3", "Z2xZ4", "Z4xZ4", "S3", "Z2xS3", "Z2xZ2xS3", "Z3xS3",
    ];
    loop {
        let g = FinGroup::standard(groups[rng.gen_range(0..groups.len())]).unwrap();
        let subs: Vec<Vec<usize>> = subgroups(&g)
            .into_iter()
            .filter(|s| (2..=8).contains(&s.len()))
            .collect();
        let s = &subs[rng.gen_range(0..subs.len())];
        let action = coset_action(&g, s);
        let (stab, _) = g.subgroup(&action.stabilizer(0), "Stab").unwrap();
        let n = [2u64, 3, 4][rng.gen_range(0..3)];
        let c = random_cocycle(&stab, n, rng);
        if let Ok(data) = jring::ksquare::CEOrbitData::new(action, 0, c) {
            return OppConfig {
                group: g,
                modulus: n,
                data,
            };
        }
    }
}

/// Checks the split verdict at (y₁,y₂) and that the witness φ satisfies
/// dφ = c₁ − c₂ on the pair stabilizer, recomputing c₁ − c₂ here.
pub fn opp_witness_holds(cfg: &OppConfig, y1: usize, y2: usize) -> bool {
    let g = &cfg.group;
    let action = cfg.data.action();
    let r = cfg.data.opp_product_is_split(y1, y2).unwrap();
    let Some(w) = r.witness.as_ref() else {
        return false;
    };
    let (h, emb) = g.subgroup(&r.pair_stabilizer, "H").unwrap();
    let restrict = |y: usize| {
        let (_, ey) = g.subgroup(&action.stabilizer(y), "S").unwrap();
        let phi: Vec<usize> = emb.iter().map(|x| ey.binary_search(x).unwrap()).collect();
        cfg.data.cocycle(y).pullback(&h, &phi).unwrap()
    };
    let prod = restrict(y1).add(&restrict(y2).neg()).unwrap();
    let lifted = prod.inflate(r.witness_modulus / cfg.modulus).unwrap();
    let d = Cocycle2::coboundary(h, r.witness_modulus, w).unwrap();
    r.split && d.values_table() == lifted.values_table()
}

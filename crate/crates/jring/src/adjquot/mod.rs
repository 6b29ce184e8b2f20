//! Adjoint-quotient combinatorics for torus-by-finite groups: coinvariant
//! tori T_γ = T/H from Smith forms of Id − γ, one quotient component per
//! conjugacy class, and the central-character splitting of Rep(Pin₂ₙ).

mod snf;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use snf::{smith_normal_form, smith_normal_form_i64, SmithForm};

use crate::error::{Error, Result};
use crate::exact::linalg::{nullspace, rank, solve};
use crate::exact::{int, Rational, TorusChar, WeightParity};
use crate::fingroup::FinGroup;
use crate::jmodels::BlockTag;
use crate::repring::{fundamental_character, ClassFunctionElt, Fundamental, RingFamily, RingSpec};

/// Orders above this are treated as infinite.
pub const ORDER_BOUND: usize = 240;

type IMat = Vec<Vec<i64>>;

fn imul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn ident(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// A finite-order automorphism of the cocharacter lattice Zⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAuto {
    matrix: IMat,
    order: usize,
}

impl LatticeAuto {
    pub fn new(matrix: IMat) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("lattice automorphism must be square"));
        }
        let id = ident(n);
        let mut p = matrix.clone();
        for k in 1..=ORDER_BOUND {
            if p == id {
                return Ok(LatticeAuto { matrix, order: k });
            }
            if p.iter().flatten().any(|x| x.abs() > 1 << 20) {
                break;
            }
            p = imul(&p, &matrix);
        }
        Err(Error::invalid(format!(
            "matrix has infinite order (none of its first {ORDER_BOUND} powers is 1)"
        )))
    }

    pub fn identity(n: usize) -> Self {
        LatticeAuto {
            matrix: ident(n),
            order: 1,
        }
    }

    /// Parses "0,1;1,0" (rows separated by semicolons).
    pub fn parse(s: &str) -> Result<Self> {
        let rows: Result<IMat> = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::Parse(format!("{x:?}: {e}")))
                    })
                    .collect()
            })
            .collect();
        Self::new(rows?)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantReport {
    /// d(γ): dimension of the coinvariant torus.
    pub free_rank: usize,
    /// Elementary divisors > 1 of the finite group H.
    pub torsion: Vec<BigInt>,
    /// Rank of the γ-fixed sublattice.
    pub fixed_rank: usize,
}

fn to_q(m: &IMat) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect()
}

/// Cokernel of Id − γ via its Smith form. The fixed rank is computed
/// independently, as the rank of the averaging operator Σ γᵏ.
pub fn coinvariants(a: &LatticeAuto) -> CoinvariantReport {
    let n = a.rank();
    let diff: IMat = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j) - a.matrix[i][j]).collect())
        .collect();
    let s = smith_normal_form_i64(&diff);
    let mut avg = vec![vec![0i64; n]; n];
    let mut p = ident(n);
    for _ in 0..a.order {
        for i in 0..n {
            for j in 0..n {
                avg[i][j] += p[i][j];
            }
        }
        p = imul(&p, &a.matrix);
    }
    CoinvariantReport {
        free_rank: s.cokernel_free_rank(),
        torsion: s.cokernel_torsion(),
        fixed_rank: rank(&to_q(&avg)),
    }
}

/// One component of the quotient, for the conjugacy class of γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComponent {
    pub class_rep: usize,
    pub class_label: String,
    pub class_size: usize,
    pub d: usize,
    pub torsion: Vec<BigInt>,
    /// |Γ(γ)|, the centralizer used in the second quotient step.
    pub centralizer_order: usize,
    /// Order of the image of Γ(γ) acting on the fixed space of γ.
    pub residual_order: usize,
}

/// Extends generator matrices to an action indexed by group elements,
/// rejecting inconsistent data.
pub fn actions_from_generators(g: &FinGroup, gen_mats: &[IMat]) -> Result<Vec<LatticeAuto>> {
    if gen_mats.len() != g.generators().len() {
        return Err(Error::Mismatch("one matrix per generator expected".into()));
    }
    let n = gen_mats.first().map_or(0, |m| m.len());
    let mut mats: Vec<Option<IMat>> = vec![None; g.order()];
    mats[g.identity()] = Some(ident(n));
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        let mx = mats[x].clone().expect("visited");
        for (s, ms) in g.generators().iter().zip(gen_mats) {
            let y = g.mul(x, *s);
            let my = imul(&mx, ms);
            match &mats[y] {
                Some(m) if *m != my => {
                    return Err(Error::invalid("generator matrices do not define an action"))
                }
                Some(_) => {}
                None => {
                    mats[y] = Some(my);
                    queue.push(y);
                }
            }
        }
    }
    mats.into_iter()
        .map(|m| LatticeAuto::new(m.ok_or_else(|| Error::invalid("generators do not generate"))?))
        .collect()
}

pub fn component_quotient(g: &FinGroup, actions: &[LatticeAuto]) -> Result<Vec<QuotientComponent>> {
    if actions.len() != g.order() {
        return Err(Error::Mismatch(
            "one lattice automorphism per group element expected".into(),
        ));
    }
    let n = actions.first().map_or(0, |a| a.rank());
    if actions.iter().any(|a| a.rank() != n) {
        return Err(Error::Mismatch("automorphisms of different ranks".into()));
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if actions[g.mul(x, y)].matrix != imul(&actions[x].matrix, &actions[y].matrix) {
                return Err(Error::invalid(format!(
                    "action is not a homomorphism at ({}, {})",
                    g.label(x),
                    g.label(y)
                )));
            }
        }
    }
    let mut out = Vec::new();
    for class in g.classes() {
        let rep = class[0];
        let report = coinvariants(&actions[rep]);
        let cent = g.centralizer(rep);
        let diff: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| int(i64::from(i == j) - actions[rep].matrix[i][j]))
                    .collect()
            })
            .collect();
        // Columns of `basis` span the fixed space of γ over Q.
        let kernel = nullspace(&diff, n);
        let basis: Vec<Vec<Rational>> = (0..n)
            .map(|i| kernel.iter().map(|v| v[i].clone()).collect())
            .collect();
        let mut images: BTreeSet<Vec<Vec<Rational>>> = BTreeSet::new();
        for &c in &cent {
            let ac = to_q(&actions[c].matrix);
            let restricted: Vec<Vec<Rational>> = kernel
                .iter()
                .map(|k| {
                    let image: Vec<Rational> = (0..n)
                        .map(|i| (0..n).map(|j| &ac[i][j] * &k[j]).sum())
                        .collect();
                    solve(&basis, &image)
                        .ok_or_else(|| Error::math("centralizer does not preserve the fixed space"))
                })
                .collect::<Result<_>>()?;
            images.insert(restricted);
        }
        out.push(QuotientComponent {
            class_rep: rep,
            class_label: g.label(rep).to_string(),
            class_size: class.len(),
            d: report.free_rank,
            torsion: report.torsion,
            centralizer_order: cent.len(),
            residual_order: images.len().max(1),
        });
    }
    Ok(out)
}

/// O₂ as rank-1 torus by ℤ/2 acting by inversion.
pub fn o2_model() -> (FinGroup, Vec<LatticeAuto>) {
    let g = FinGroup::cyclic(2);
    let acts = actions_from_generators(&g, &[vec![vec![-1]]]).expect("inversion is an action");
    (g, acts)
}

/// 𝔖₃ on the root lattice of SL₃ in the basis of simple roots.
pub fn s3_root_lattice() -> (FinGroup, Vec<LatticeAuto>) {
    let g = FinGroup::s3();
    let s1 = vec![vec![-1, 1], vec![0, 1]];
    let s2 = vec![vec![1, 0], vec![1, -1]];
    let acts = actions_from_generators(&g, &[s1, s2]).expect("simple reflections define an action");
    (g, acts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    /// Central character of the kernel of the cover: 0 or 1.
    pub alpha: u8,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSplitReport {
    pub spec: RingSpec,
    pub summands: Vec<Summand>,
    pub products_checked: usize,
    pub failures: Vec<String>,
}

impl RepSplitReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Central character of a class function: integral weights on the torus
/// of the identity component give 0, half-integral give 1.
fn grading(c: &ClassFunctionElt) -> Option<u8> {
    let t = c.component(0);
    if t.is_zero() {
        return None;
    }
    match t.parity() {
        WeightParity::Integral => Some(0),
        WeightParity::Half => Some(1),
        WeightParity::Mixed => None,
    }
}

/// In rank 1, read the torus character in w = z^{1/2} and compare with the
/// FULL/ODD predicates of the block models.
fn rank1_tag_matches(c: &ClassFunctionElt, alpha: u8) -> Result<bool> {
    let terms: Vec<(i32, i64)> = c.component(0).terms().map(|(e, k)| (e[0], k)).collect();
    let w = TorusChar::rank1(&terms);
    let tag = if alpha == 0 {
        BlockTag::Full
    } else {
        BlockTag::Odd
    };
    tag.admits(&w)
}

/// Rep(G̃) = ⊕_α Rep^α(G̃) for the cover Pin₂ₙ → O₂ₙ (or the trivial cover
/// when `spec` is O₂ₙ itself), checked on generators and on `trials` random
/// products.
pub fn rep_decomposition_check(spec: RingSpec, trials: usize, seed: u64) -> Result<RepSplitReport> {
    if spec.rank > 2 {
        return Err(Error::Bound(format!(
            "rank {} exceeds the budget 2",
            spec.rank
        )));
    }
    let n = spec.rank;
    let mut gens: Vec<(String, u8, ClassFunctionElt)> =
        vec![("1".into(), 0, ClassFunctionElt::constant(spec, 1))];
    for i in 1..=n {
        gens.push((
            format!("V{i}"),
            0,
            fundamental_character(spec, Fundamental::V(i))?,
        ));
    }
    gens.push((
        "det".into(),
        0,
        fundamental_character(spec, Fundamental::Det)?,
    ));
    match spec.family {
        RingFamily::OEven => {}
        RingFamily::Pin => gens.push((
            "Pi".into(),
            1,
            fundamental_character(spec, Fundamental::Pi)?,
        )),
        _ => {
            return Err(Error::Unsupported(format!(
                "no cover decomposition for {}",
                spec.group_name()
            )))
        }
    }
    let mut failures = Vec::new();
    for (name, alpha, c) in &gens {
        if grading(c) != Some(*alpha) {
            failures.push(format!("{name} is not in summand {alpha}"));
        }
        if n == 1 && !rank1_tag_matches(c, *alpha)? {
            failures.push(format!(
                "{name} does not match the {} predicate",
                if *alpha == 0 { "FULL" } else { "ODD" }
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let k = rng.gen_range(2..=3);
        let mut prod = ClassFunctionElt::constant(spec, 1);
        let mut alpha = 0;
        let mut names = Vec::new();
        for _ in 0..k {
            let (name, a, c) = &gens[rng.gen_range(0..gens.len())];
            prod = prod.mul(c)?;
            alpha ^= a;
            names.push(name.as_str());
        }
        let g = grading(&prod);
        if g.is_some_and(|x| x != alpha) {
            failures.push(format!("{} leaves summand {alpha}", names.join("*")));
        }
    }
    let mut summands: Vec<Summand> = Vec::new();
    for (name, alpha, _) in &gens {
        match summands.iter_mut().find(|s| s.alpha == *alpha) {
            Some(s) => s.generators.push(name.clone()),
            None => summands.push(Summand {
                alpha: *alpha,
                generators: vec![name.clone()],
            }),
        }
    }
    Ok(RepSplitReport {
        spec,
        summands,
        products_checked: trials,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn auto(m: &[&[i64]]) -> LatticeAuto {
        LatticeAuto::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn coinvariant_examples() {
        let r = coinvariants(&auto(&[&[-1]]));
        assert_eq!(
            (r.free_rank, r.torsion.clone(), r.fixed_rank),
            (0, vec![BigInt::from(2)], 0)
        );
        let r = coinvariants(&auto(&[&[0, 1], &[1, 0]]));
        assert_eq!((r.free_rank, r.torsion.len(), r.fixed_rank), (1, 0, 1));
        let r = coinvariants(&LatticeAuto::identity(3));
        assert_eq!((r.free_rank, r.torsion.len()), (3, 0));
        assert!(LatticeAuto::new(vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(LatticeAuto::new(vec![vec![2]]).is_err());
        assert_eq!(LatticeAuto::parse("0,1;1,0").unwrap().order(), 2);
    }

    #[test]
    fn quotient_examples() {
        let (g, acts) = o2_model();
        let c = component_quotient(&g, &acts).unwrap();
        let summary: Vec<(usize, usize)> = c.iter().map(|x| (x.d, x.residual_order)).collect();
        assert_eq!(summary, vec![(1, 2), (0, 1)]);

        let (g, acts) = s3_root_lattice();
        let c = component_quotient(&g, &acts).unwrap();
        let mut dims: Vec<(usize, usize)> = c.iter().map(|x| (x.class_size, x.d)).collect();
        dims.sort();
        assert_eq!(dims, vec![(1, 2), (2, 0), (3, 1)]);
        let coxeter = c.iter().find(|x| x.class_size == 2).unwrap();
        assert_eq!(coxeter.torsion, vec![BigInt::from(3)]);
        assert_eq!(
            c.iter()
                .map(|x| x.class_size * x.centralizer_order)
                .collect::<Vec<_>>(),
            vec![6, 6, 6]
        );
        assert_eq!(c.iter().map(|x| x.class_size).sum::<usize>(), 6);
        let id = c.iter().find(|x| x.class_size == 1).unwrap();
        assert_eq!(id.residual_order, 6);

        let t = FinGroup::trivial();
        let c = component_quotient(&t, &[LatticeAuto::identity(2)]).unwrap();
        assert_eq!((c.len(), c[0].d), (1, 2));
    }

    #[test]
    fn non_homomorphisms_are_rejected() {
        let g = FinGroup::cyclic(2);
        let bad = vec![
            LatticeAuto::new(vec![vec![-1]]).unwrap(),
            LatticeAuto::identity(1),
        ];
        assert!(component_quotient(&g, &bad).is_err());
        // Z/3 cannot act through an order-2 matrix.
        assert!(actions_from_generators(&FinGroup::cyclic(3), &[vec![vec![-1]]]).is_err());
    }

    #[test]
    fn pin_splitting() {
        let pin2 = RingSpec::new(RingFamily::Pin, 1).unwrap();
        let r = rep_decomposition_check(pin2, 50, 3).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.summands.len(), 2);
        assert_eq!(r.summands[0].generators, vec!["1", "V1", "det"]);
        assert_eq!(r.summands[1].generators, vec!["Pi"]);
        let o2 = RingSpec::new(RingFamily::OEven, 1).unwrap();
        let r = rep_decomposition_check(o2, 20, 3).unwrap();
        assert!(r.ok());
        assert_eq!(r.summands.len(), 1);
        let pin4 = RingSpec::new(RingFamily::Pin, 2).unwrap();
        assert!(rep_decomposition_check(pin4, 200, 5).unwrap().ok());
        assert!(rep_decomposition_check(RingSpec::new(RingFamily::Pin, 3).unwrap(), 1, 0).is_err());
    }
}

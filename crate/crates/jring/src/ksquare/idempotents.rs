//! Rank-one idempotents in K_Γ(Y×Y).

use std::sync::Arc;

use super::module::build_module;
use super::square::{KClass, SpecMatrix, Square};
use crate::error::{Error, Result};
use crate::exact::linalg::{mat_mul, nullspace, solve};
use crate::exact::{rat, Cyclotomic};
use crate::fingroup::{irreducible_characters, FinGroup, GAction};

fn scalar(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_rational(rat(n, d))
}

/// t_ρ = (1/#Y)·Σ_{γ ∈ Γ/S} ρ(γ⁻¹)[O_{Γ·(y₁,γy₁)}] for every character ρ
/// occurring in ℂ[Y], where S is the stabilizer of `base`.
pub fn abelian_idempotents(square: &Arc<Square>, base: usize) -> Result<Vec<(String, KClass)>> {
    let a = square.action();
    if !a.is_transitive() {
        return Err(Error::invalid("action is not transitive"));
    }
    if !a.image_is_abelian() {
        return Err(Error::invalid(
            "image of the group in Sym(Y) is not abelian",
        ));
    }
    let g = a.group();
    let (table, mult) = a.decompose_permutation_character()?;
    let m = a.points() as i64;
    let mut out = Vec::new();
    for (i, chi) in table.chars.iter().enumerate() {
        if mult[i] == 0 {
            continue;
        }
        let mut t = KClass::zero(square);
        for y in 0..a.points() {
            let gamma = a.transporter(base, y).expect("transitive");
            let coeff = chi.value(g, g.inv(gamma)).mul_ref(&scalar(1, m));
            t = t.add(&KClass::orbit_class(square, base, y).scale(&coeff))?;
        }
        out.push((table.names[i].clone(), t));
    }
    Ok(out)
}

fn is_s3(g: &FinGroup) -> bool {
    g.order() == 6 && !g.is_abelian()
}

/// Element of the group algebra ℚ[Γ] as coefficients per element.
type GroupAlgebra = Vec<Cyclotomic>;

fn ga_mul(g: &FinGroup, x: &GroupAlgebra, y: &GroupAlgebra) -> GroupAlgebra {
    let mut out = vec![Cyclotomic::zero(); g.order()];
    for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let ab = g.mul(a, b);
            out[ab] = out[ab].add_ref(&ca.mul_ref(cb));
        }
    }
    out
}

/// For a regular action, Σ c_σ σ ↦ Σ c_σ [O_{Γ·(y₁,σy₁)}]. This is an
/// algebra map from the group algebra, since at s = 1 the orbit of
/// (y₁,σy₁) is the matrix of right multiplication by σ.
fn regular_class(square: &Arc<Square>, base: usize, x: &GroupAlgebra) -> Result<KClass> {
    let a = square.action();
    let mut t = KClass::zero(square);
    for (sigma, c) in x.iter().enumerate() {
        if !c.is_zero() {
            t = t.add(&KClass::orbit_class(square, base, a.act(sigma, base)).scale(c))?;
        }
    }
    Ok(t)
}

/// The orthogonal idempotents for a transitive action of 𝔖₃.
///
/// * one point: [O_Δ];
/// * two points: (O_Δ ± O)/2;
/// * three points: classes specializing at 1 to the projectors onto triv
///   and std, and at a transposition to 1 and 0 on its fixed point;
/// * the regular action: (1/6)Σσ, (1/6)Σ sgn(σ)σ, the Young symmetrizer
///   (1/3)(1+(0 1))(1−(0 2)), and the complement.
pub fn s3_idempotents(square: &Arc<Square>) -> Result<Vec<(String, KClass)>> {
    let a = square.action();
    let g = a.group();
    if !is_s3(g) {
        return Err(Error::invalid(format!("{} is not 𝔖₃", g.name())));
    }
    if !a.is_transitive() {
        return Err(Error::Unclassified("non-transitive 𝔖₃-set".into()));
    }
    match a.points() {
        1 => Ok(vec![("triv".into(), KClass::diagonal(square))]),
        2 => abelian_idempotents(square, 0),
        3 => {
            let delta = KClass::diagonal(square);
            let off = KClass::orbit_class(square, 0, 1);
            // Δ twisted by the sign character of the point stabilizers; the
            // diagonal is a single orbit, so one base pair carries it.
            let sgn: Vec<Cyclotomic> = a
                .pair_stabilizer(0, 0)
                .iter()
                .map(|&h| Cyclotomic::from_int(if h == g.identity() { 1 } else { -1 }))
                .collect();
            let delta_sgn = KClass::orbit_class_with(square, 0, 0, &sgn)?;
            let f_triv = delta
                .scale(&scalar(2, 3))
                .sub(&delta_sgn.scale(&scalar(1, 3)))?
                .add(&off.scale(&scalar(1, 3)))?;
            let f_std = delta.sub(&f_triv)?;
            Ok(vec![("triv".into(), f_triv), ("std".into(), f_std)])
        }
        6 => {
            let n = g.order();
            let unit = |x: usize| -> GroupAlgebra {
                let mut v = vec![Cyclotomic::zero(); n];
                v[x] = Cyclotomic::one();
                v
            };
            let avg = |sign: bool| -> GroupAlgebra {
                (0..n)
                    .map(|x| {
                        let odd = g.element_order(x) == 2;
                        scalar(if sign && odd { -1 } else { 1 }, 6)
                    })
                    .collect()
            };
            let tr = g.generators()[0];
            // The other transposition moving 0: (0 2) = (1 2)(0 1)(1 2).
            let other = g.conj(g.generators()[1], tr);
            let e = g.identity();
            let plus: GroupAlgebra = unit(e)
                .iter()
                .zip(unit(tr))
                .map(|(x, y)| x.add_ref(&y))
                .collect();
            let minus: GroupAlgebra = unit(e)
                .iter()
                .zip(unit(other))
                .map(|(x, y)| x.sub_ref(&y))
                .collect();
            let young: GroupAlgebra = ga_mul(g, &plus, &minus)
                .into_iter()
                .map(|c| c.mul_ref(&scalar(1, 3)))
                .collect();
            let t_triv = regular_class(square, 0, &avg(false))?;
            let t_sgn = regular_class(square, 0, &avg(true))?;
            let t_std = regular_class(square, 0, &young)?;
            let t_std2 = KClass::diagonal(square)
                .sub(&t_triv)?
                .sub(&t_sgn)?
                .sub(&t_std)?;
            Ok(vec![
                ("triv".into(), t_triv),
                ("sgn".into(), t_sgn),
                ("std".into(), t_std),
                ("std'".into(), t_std2),
            ])
        }
        k => Err(Error::Unclassified(format!(
            "transitive 𝔖₃-set of size {k}"
        ))),
    }
}

/// The classified family for a transitive action: abelian image first,
/// then the 𝔖₃ casework.
pub fn idempotent_family(square: &Arc<Square>) -> Result<Vec<(String, KClass)>> {
    let a = square.action();
    if a.is_transitive() && a.image_is_abelian() {
        abelian_idempotents(square, 0)
    } else if is_s3(a.group()) {
        s3_idempotents(square)
    } else {
        Err(Error::Unclassified(format!(
            "{} acting on {} points",
            a.group().name(),
            a.points()
        )))
    }
}

/// Outcome of checking a family of classes against the idempotent contract.
#[derive(Clone, Debug, Default)]
pub struct FamilyReport {
    pub members: usize,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Orthogonal idempotents summing to O_Δ; at every s each member has module
/// rank 0 or 1 on every E_{s,ρ₁}, the ranks add up to dim E_{s,ρ₁}, and the
/// nonzero specializations sum to the identity of ℂ[Y^s].
pub fn check_family(fam: &[(String, KClass)]) -> Result<FamilyReport> {
    let mut report = FamilyReport {
        members: fam.len(),
        failures: Vec::new(),
    };
    let Some((_, first)) = fam.first() else {
        report.failures.push("empty family".into());
        return Ok(report);
    };
    let sq = first.square().clone();
    let mut sum = KClass::zero(&sq);
    for (i, (ni, a)) in fam.iter().enumerate() {
        sum = sum.add(a)?;
        for (j, (nj, b)) in fam.iter().enumerate() {
            let p = a.convolve(b)?;
            if i == j && p != *a {
                report.failures.push(format!("{ni} is not idempotent"));
            } else if i != j && !p.is_zero() {
                report.failures.push(format!("{ni}*{nj} is not zero"));
            }
        }
    }
    if sum != KClass::diagonal(&sq) {
        report
            .failures
            .push("members do not sum to the diagonal".into());
    }
    let g = sq.action().group();
    for s in 0..g.order() {
        if sq.action().fixed_points(s).is_empty() {
            continue;
        }
        let module = build_module(&sq, s, None)?;
        for (pi, part) in module.parts.iter().enumerate() {
            let ranks: Vec<usize> = fam.iter().map(|(_, t)| module.rank_on(t, pi)).collect();
            if ranks.iter().any(|&r| r > 1) {
                report.failures.push(format!(
                    "rank above 1 at s = {} on {}",
                    g.label(s),
                    part.rho1
                ));
            }
            if ranks.iter().sum::<usize>() != part.multiplicity {
                report.failures.push(format!(
                    "ranks do not add up at s = {} on {}",
                    g.label(s),
                    part.rho1
                ));
            }
        }
        let mut total: Option<SpecMatrix> = None;
        for (_, t) in fam {
            let m = t.specialize_at(s);
            if m.is_zero() {
                continue;
            }
            total = Some(match total {
                None => m,
                Some(acc) => SpecMatrix {
                    s,
                    points: acc.points.clone(),
                    entries: acc
                        .entries
                        .iter()
                        .zip(&m.entries)
                        .map(|(r, q)| r.iter().zip(q).map(|(x, y)| x.add_ref(y)).collect())
                        .collect(),
                },
            });
        }
        if !total.is_some_and(|m| m.is_identity()) {
            report.failures.push(format!(
                "nonzero members do not sum to the identity at s = {}",
                g.label(s)
            ));
        }
    }
    Ok(report)
}

/// The classes (1/3)(O_Δ + O_O) and (2/3)O_Δ − (1/3)O_O on three points,
/// with trivial fibres. They give the right projectors at s = 1 but are not
/// idempotent at a transposition.
pub fn s3_three_point_untwisted(square: &Arc<Square>) -> Result<(KClass, KClass)> {
    let delta = KClass::diagonal(square);
    let off = KClass::orbit_class(square, 0, 1);
    let a = delta.add(&off)?.scale(&scalar(1, 3));
    let b = delta.scale(&scalar(2, 3)).sub(&off.scale(&scalar(1, 3)))?;
    Ok((a, b))
}

/// The two-trivial case: Γ₁ = ℤ/2 generated by the transposition fixing
/// point 0 of the natural 𝔖₃-set, so ℂ[Y] = triv ⊕ triv ⊕ sgn under Γ₁.
pub struct TwoTrivCase {
    pub square: Arc<Square>,
    /// The 𝔖₃ idempotents pulled back to ℤ/2.
    pub triv: KClass,
    pub std: KClass,
    /// Their specializations at 1 on the triv-isotypic part, in the basis
    /// (constant function, indicator of the two-point orbit); column j is
    /// the image of basis vector j.
    pub triv_matrix: Vec<Vec<Cyclotomic>>,
    pub std_matrix: Vec<Vec<Cyclotomic>>,
}

/// Matrix of `m` on the span of `basis`, or None if the span is not stable.
pub fn matrix_on_basis(
    m: &[Vec<Cyclotomic>],
    basis: &[Vec<Cyclotomic>],
) -> Option<Vec<Vec<Cyclotomic>>> {
    let n = m.len();
    let k = basis.len();
    // Columns of B.
    let b: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| (0..k).map(|j| basis[j][i].clone()).collect())
        .collect();
    let mut cols = Vec::with_capacity(k);
    for v in basis {
        let image: Vec<Cyclotomic> = m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Cyclotomic::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
            })
            .collect();
        cols.push(solve(&b, &image)?);
    }
    Some(
        (0..k)
            .map(|i| (0..k).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

fn natural_s3() -> Result<GAction> {
    GAction::from_generators(FinGroup::s3(), 3, &[vec![1, 0, 2], vec![0, 2, 1]])
}

pub fn s3_two_triv_case() -> Result<TwoTrivCase> {
    let nat = natural_s3()?;
    let g = nat.group().clone();
    let big = Square::new(nat.clone());
    let fam = s3_idempotents(&big)?;
    // Generator (1 2) fixes point 0.
    let tau = g.generators()[1];
    let (z2, emb) = g.subgroup(&g.closure(&[tau]), "Z2")?;
    let small = Square::new(nat.restrict(z2, &emb));
    let triv = fam[0].1.restrict(&small, &emb)?;
    let std = fam[1].1.restrict(&small, &emb)?;
    let one = Cyclotomic::one;
    let basis = vec![
        vec![one(), one(), one()],
        vec![Cyclotomic::zero(), one(), one()],
    ];
    let id = small.action().group().identity();
    let triv_matrix = matrix_on_basis(&triv.specialize_at(id).entries, &basis)
        .ok_or_else(|| Error::math("triv-isotypic part is not stable"))?;
    let std_matrix = matrix_on_basis(&std.specialize_at(id).entries, &basis)
        .ok_or_else(|| Error::math("triv-isotypic part is not stable"))?;
    Ok(TwoTrivCase {
        square: small,
        triv,
        std,
        triv_matrix,
        std_matrix,
    })
}

/// The triv^{⊕3} case: Γ₁ trivial on the three points {p, a, b}. In the
/// basis χ_Y (constant), χ_ab (indicator of {a,b}), χ_a, the family is
/// B: χ_Y ↦ 0, χ_ab ↦ χ_ab − (2/3)χ_Y, χ_a ↦ 0;
/// C: projection onto χ_a along span(χ_Y, χ_ab);
/// A = O_Δ − B − C.
pub struct TrivCubedCase {
    pub square: Arc<Square>,
    pub classes: Vec<(String, KClass)>,
    /// The restrictions of the two 𝔖₃ idempotents, for comparison.
    pub s3_triv: KClass,
    pub s3_std: KClass,
}

pub fn s3_triv_cubed_case() -> Result<TrivCubedCase> {
    let nat = natural_s3()?;
    let g = nat.group().clone();
    let fam = s3_idempotents(&Square::new(nat.clone()))?;
    let (triv_grp, emb) = g.subgroup(&[g.identity()], "1")?;
    let sq = Square::new(nat.restrict(triv_grp, &emb));
    let s3_triv = fam[0].1.restrict(&sq, &emb)?;
    let s3_std = fam[1].1.restrict(&sq, &emb)?;

    let (z, o) = (Cyclotomic::zero(), Cyclotomic::one());
    // P has the basis vectors as columns; P⁻¹ by hand.
    let p = vec![
        vec![o.clone(), z.clone(), z.clone()],
        vec![o.clone(), o.clone(), o.clone()],
        vec![o.clone(), o.clone(), z.clone()],
    ];
    let m1 = Cyclotomic::from_int(-1);
    let p_inv = vec![
        vec![o.clone(), z.clone(), z.clone()],
        vec![m1.clone(), z.clone(), o.clone()],
        vec![z.clone(), o.clone(), m1.clone()],
    ];
    let in_basis_b = vec![
        vec![z.clone(), scalar(-2, 3), z.clone()],
        vec![z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone()],
    ];
    let in_basis_c = vec![
        vec![z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone()],
    ];
    let to_std = |d: &Vec<Vec<Cyclotomic>>| mat_mul(&mat_mul(&p, d), &p_inv);
    let (mb, mc) = (to_std(&in_basis_b), to_std(&in_basis_c));
    let b = KClass::from_specializations(&sq, |_| mb.clone())?;
    let c = KClass::from_specializations(&sq, |_| mc.clone())?;
    let a = KClass::diagonal(&sq).sub(&b)?.sub(&c)?;
    Ok(TrivCubedCase {
        square: sq,
        classes: vec![("A".into(), a), ("B".into(), b), ("C".into(), c)],
        s3_triv,
        s3_std,
    })
}

/// Solves for the class j with j·μ_ρ = δ_{ρ,ρ′}·μ_ρ′ at every s with
/// Y^s ≠ ∅, for a transitive action with abelian image, and checks that the
/// unique solution is t_ρ′.
pub fn rigid_unique(square: &Arc<Square>, target: &str) -> Result<KClass> {
    let a = square.action();
    let g = a.group();
    let fam = abelian_idempotents(square, 0)?;
    let expected = fam
        .iter()
        .find(|(n, _)| n == target)
        .map(|(_, t)| t.clone())
        .ok_or_else(|| Error::invalid(format!("{target} does not occur in ℂ[Y]")))?;
    // Unknowns: one value per (orbit, stabilizer element).
    let mut offsets = Vec::new();
    let mut total = 0;
    for orb in square.orbits() {
        offsets.push(total);
        total += orb.stabilizer.len();
    }
    let table = irreducible_characters(g)?;
    let names: Vec<&String> = fam.iter().map(|(n, _)| n).collect();
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut rhs: Vec<Cyclotomic> = Vec::new();
    for s in 0..g.order() {
        let pts = a.fixed_points(s);
        if pts.is_empty() {
            continue;
        }
        // μ_ρ(γ·y₁) = ρ(γ) spans the ρ-line; the required matrix sends it to
        // δ·μ_ρ′, so the equations are Σ_z j(x,z)(s)·μ_ρ(z) = δ·μ_ρ(x).
        for name in &names {
            let idx = table.index_of(name).expect("name from table");
            let chi = &table.chars[idx];
            let mu: Vec<Cyclotomic> = (0..a.points())
                .map(|y| chi.value(g, a.transporter(0, y).unwrap()).clone())
                .collect();
            for &x in &pts {
                let mut row = vec![Cyclotomic::zero(); total];
                for &z in &pts {
                    let (o, k) = square.locate(x, z);
                    let h = g.mul(g.mul(g.inv(k), s), k);
                    let pos = square.orbits()[o].stabilizer.binary_search(&h).unwrap();
                    row[offsets[o] + pos] = row[offsets[o] + pos].add_ref(&mu[z]);
                }
                rows.push(row);
                rhs.push(if *name == target {
                    mu[x].clone()
                } else {
                    Cyclotomic::zero()
                });
            }
        }
    }
    let sol = solve(&rows, &rhs).ok_or_else(|| Error::math("constraints are inconsistent"))?;
    if !nullspace(&rows, total).is_empty() {
        return Err(Error::math("constraints do not determine the class"));
    }
    let data = square
        .orbits()
        .iter()
        .zip(&offsets)
        .map(|(orb, &off)| sol[off..off + orb.stabilizer.len()].to_vec())
        .collect();
    let j = KClass::zero(square).with_data(data);
    if j != expected {
        return Err(Error::math(format!("solution differs from t_{target}")));
    }
    Ok(j)
}

//! The specialization of K_Γ(Y×Y) at s acting on ℂ[Y^s], split into
//! isotypic parts for the centralizer image Γ₁.

use std::sync::Arc;

use super::square::{KClass, Square};
use crate::error::{Error, Result};
use crate::exact::linalg::{mat_mul, rank};
use crate::exact::{rat, Cyclotomic};
use crate::fingroup::irreducible_characters;

#[derive(Clone, Debug)]
pub struct IsotypicPart {
    pub rho1: String,
    pub dim: usize,
    /// Number of copies of ρ₁, i.e. the dimension of E_{s,ρ₁}.
    pub multiplicity: usize,
    /// Projector onto the ρ₁-isotypic part of ℂ[Y^s].
    pub projector: Vec<Vec<Cyclotomic>>,
}

#[derive(Clone, Debug)]
pub struct SpecModule {
    pub s: usize,
    pub points: Vec<usize>,
    pub gamma1: Vec<usize>,
    pub parts: Vec<IsotypicPart>,
}

/// Decomposes ℂ[Y^s] under Γ₁, by default the centralizer of s.
pub fn build_module(
    square: &Arc<Square>,
    s: usize,
    gamma1: Option<&[usize]>,
) -> Result<SpecModule> {
    let a = square.action();
    let g = a.group();
    let points = a.fixed_points(s);
    if points.is_empty() {
        return Err(Error::invalid("Y^s is empty"));
    }
    let centralizer = g.centralizer(s);
    let elems: Vec<usize> = match gamma1 {
        Some(e) => {
            if e.iter().any(|x| !centralizer.contains(x)) {
                return Err(Error::invalid("Γ₁ must lie in the centralizer of s"));
            }
            e.to_vec()
        }
        None => centralizer,
    };
    let (sub, emb) = g.subgroup(&elems, "Gamma1")?;
    let table = irreducible_characters(&sub)?;
    let n = points.len();
    let pos = |y: usize| {
        points
            .iter()
            .position(|&p| p == y)
            .expect("Γ₁ preserves Y^s")
    };
    let mut parts = Vec::new();
    for (chi, name) in table.chars.iter().zip(&table.names) {
        let dim = chi.dim();
        let mut proj = vec![vec![Cyclotomic::zero(); n]; n];
        for (h, &gh) in emb.iter().enumerate() {
            let c = chi.value(&sub, h).conj();
            for (j, &z) in points.iter().enumerate() {
                let i = pos(a.act(gh, z));
                proj[i][j] = proj[i][j].add_ref(&c);
            }
        }
        let scale = Cyclotomic::from_rational(rat(dim as i64, sub.order() as i64));
        let proj: Vec<Vec<Cyclotomic>> = proj
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.mul_ref(&scale)).collect())
            .collect();
        let r = rank(&proj);
        if r > 0 {
            parts.push(IsotypicPart {
                rho1: name.clone(),
                dim,
                multiplicity: r / dim,
                projector: proj,
            });
        }
    }
    Ok(SpecModule {
        s,
        points,
        gamma1: emb,
        parts,
    })
}

impl SpecModule {
    /// Rank of a class on E_{s,ρ₁}: the matrix rank on the ρ₁-isotypic part
    /// divided by dim ρ₁.
    pub fn rank_on(&self, class: &KClass, part: usize) -> usize {
        let m = class.specialize_at(self.s);
        let p = &self.parts[part];
        rank(&mat_mul(&m.entries, &p.projector)) / p.dim
    }

    pub fn part_index(&self, rho1: &str) -> Option<usize> {
        self.parts.iter().position(|p| p.rho1 == rho1)
    }

    /// (idempotent, ρ₁, rank) for every member of a family and every part.
    pub fn rank_table(&self, family: &[(String, KClass)]) -> Vec<(String, String, usize)> {
        let mut out = Vec::new();
        for (name, t) in family {
            for (i, p) in self.parts.iter().enumerate() {
                out.push((name.clone(), p.rho1.clone(), self.rank_on(t, i)));
            }
        }
        out
    }
}

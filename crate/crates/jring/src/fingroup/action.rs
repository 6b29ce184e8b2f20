//! Finite G-sets.

use std::collections::VecDeque;

use super::character::{irreducible_characters, CharacterTable};
use super::group::FinGroup;
use crate::error::{Error, Result};
use crate::exact::Cyclotomic;

/// An action of a finite group on the points `0..m`, stored as one
/// permutation per group element.
#[derive(Clone, Debug)]
pub struct GAction {
    group: FinGroup,
    points: usize,
    perm: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    p.len() == m
        && p.iter()
            .all(|&i| i < m && !std::mem::replace(&mut seen[i], true))
}

impl GAction {
    /// Extends permutations given on the generators to the whole group,
    /// rejecting assignments that do not define a homomorphism.
    pub fn from_generators(
        group: FinGroup,
        points: usize,
        gen_perms: &[Vec<usize>],
    ) -> Result<Self> {
        let gens = group.generators().to_vec();
        if gen_perms.len() != gens.len() {
            return Err(Error::invalid(format!(
                "expected {} generator permutations, got {}",
                gens.len(),
                gen_perms.len()
            )));
        }
        if let Some(p) = gen_perms.iter().find(|p| !is_permutation(p, points)) {
            return Err(Error::invalid(format!(
                "{p:?} is not a permutation of {points} points"
            )));
        }
        let n = group.order();
        let mut perm: Vec<Option<Vec<usize>>> = vec![None; n];
        perm[group.identity()] = Some((0..points).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let px = perm[x].clone().unwrap();
            for (s, ps) in gens.iter().zip(gen_perms) {
                let y = group.mul(x, *s);
                let py: Vec<usize> = (0..points).map(|i| px[ps[i]]).collect();
                match &perm[y] {
                    Some(q) if *q != py => {
                        return Err(Error::invalid(
                            "generator permutations violate a group relation",
                        ))
                    }
                    Some(_) => {}
                    None => {
                        perm[y] = Some(py);
                        queue.push_back(y);
                    }
                }
            }
        }
        let perm: Vec<Vec<usize>> = perm
            .into_iter()
            .map(|p| p.expect("generators generate"))
            .collect();
        let a = GAction {
            group,
            points,
            perm,
        };
        a.check_homomorphism()?;
        Ok(a)
    }

    pub fn from_fn(
        group: FinGroup,
        points: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let perm = (0..group.order())
            .map(|g| (0..points).map(|y| f(g, y)).collect())
            .collect();
        let a = GAction {
            group,
            points,
            perm,
        };
        if a.perm.iter().any(|p| !is_permutation(p, points)) {
            return Err(Error::invalid("action map is not a permutation"));
        }
        a.check_homomorphism()?;
        Ok(a)
    }

    pub fn trivial(group: FinGroup, points: usize) -> Self {
        let perm = vec![(0..points).collect(); group.order()];
        GAction {
            group,
            points,
            perm,
        }
    }

    /// Left multiplication of the group on itself.
    pub fn regular(group: FinGroup) -> Self {
        let n = group.order();
        let perm = (0..n)
            .map(|g| (0..n).map(|y| group.mul(g, y)).collect())
            .collect();
        GAction {
            group,
            points: n,
            perm,
        }
    }

    fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if (0..self.points).any(|y| self.perm[ab][y] != self.perm[a][self.perm[b][y]]) {
                    return Err(Error::invalid("action is not a homomorphism"));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: usize, y: usize) -> usize {
        self.perm[g][y]
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perm[g]
    }

    pub fn fixed_points(&self, s: usize) -> Vec<usize> {
        (0..self.points).filter(|&y| self.perm[s][y] == y).collect()
    }

    pub fn orbit(&self, y: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.perm.iter().map(|p| p[y]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Orbits, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for y in 0..self.points {
            if !seen[y] {
                let o = self.orbit(y);
                for &z in &o {
                    seen[z] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.points > 0 && self.orbit(0).len() == self.points
    }

    pub fn stabilizer(&self, y: usize) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.perm[g][y] == y)
            .collect()
    }

    pub fn pair_stabilizer(&self, y: usize, z: usize) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.perm[g][y] == y && self.perm[g][z] == z)
            .collect()
    }

    /// Some g with g·from = to.
    pub fn transporter(&self, from: usize, to: usize) -> Option<usize> {
        (0..self.group.order()).find(|&g| self.perm[g][from] == to)
    }

    /// Elements acting trivially.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.perm[g].iter().enumerate().all(|(i, &j)| i == j))
            .collect()
    }

    /// Whether the permutation image of the group is abelian.
    pub fn image_is_abelian(&self) -> bool {
        let gens = self.group.generators();
        gens.iter().all(|&a| {
            gens.iter().all(|&b| {
                let ab = self.group.mul(a, b);
                let ba = self.group.mul(b, a);
                self.perm[ab] == self.perm[ba]
            })
        })
    }

    /// Restriction to a subgroup given by its embedding into this group.
    pub fn restrict(&self, sub: FinGroup, emb: &[usize]) -> Self {
        let perm = emb.iter().map(|&g| self.perm[g].clone()).collect();
        GAction {
            group: sub,
            points: self.points,
            perm,
        }
    }

    /// Action of the same group on a subset of points stable under it,
    /// reindexed as `0..subset.len()`.
    pub fn on_subset(&self, subset: &[usize]) -> Result<Self> {
        let pos = |y: usize| subset.iter().position(|&z| z == y);
        let mut perm = Vec::with_capacity(self.group.order());
        for p in &self.perm {
            let q: Option<Vec<usize>> = subset.iter().map(|&y| pos(p[y])).collect();
            perm.push(q.ok_or_else(|| Error::invalid("subset is not stable"))?);
        }
        Ok(GAction {
            group: self.group.clone(),
            points: subset.len(),
            perm,
        })
    }

    /// Number of fixed points, per conjugacy class.
    pub fn permutation_character(&self) -> Vec<Cyclotomic> {
        self.group
            .classes()
            .iter()
            .map(|c| Cyclotomic::from_int(self.fixed_points(c[0]).len() as i64))
            .collect()
    }

    /// Multiplicity of each irreducible character in ℂ[points].
    pub fn decompose_permutation_character(
        &self,
    ) -> Result<(std::sync::Arc<CharacterTable>, Vec<usize>)> {
        let table = irreducible_characters(&self.group)?;
        let pc = self.permutation_character();
        let mult = table
            .decompose(&pc)
            .into_iter()
            .map(|m| {
                let r = m
                    .as_rational()
                    .ok_or_else(|| Error::math("non-rational multiplicity"))?;
                usize::try_from(r.numer())
                    .ok()
                    .filter(|_| r.is_integer())
                    .ok_or_else(|| Error::math("non-integral multiplicity"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((table, mult))
    }
}

/// Human-readable form of a decomposition, e.g. "triv + std" or "triv^3".
pub fn format_decomposition(table: &CharacterTable, mult: &[usize]) -> String {
    let parts: Vec<String> = table
        .names
        .iter()
        .zip(mult)
        .filter(|(_, &m)| m > 0)
        .map(|(n, &m)| {
            if m == 1 {
                n.clone()
            } else {
                format!("{n}^{m}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        let z2 = FinGroup::cyclic(2);
        let swap = GAction::from_generators(z2, 2, &[vec![1, 0]]).unwrap();
        let (t, m) = swap.decompose_permutation_character().unwrap();
        assert_eq!(format_decomposition(&t, &m), "triv + sgn");

        let s3 = FinGroup::s3();
        let nat = GAction::from_generators(s3.clone(), 3, &[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        let (t, m) = nat.decompose_permutation_character().unwrap();
        assert_eq!(format_decomposition(&t, &m), "triv + std");

        let triv = GAction::trivial(s3, 3);
        let (t, m) = triv.decompose_permutation_character().unwrap();
        assert_eq!(format_decomposition(&t, &m), "triv^3");
    }

    #[test]
    fn rejects_non_homomorphism() {
        // A 3-cycle cannot be the image of an involution.
        let z2 = FinGroup::cyclic(2);
        assert!(GAction::from_generators(z2, 3, &[vec![1, 2, 0]]).is_err());
    }

    #[test]
    fn orbit_stabilizer() {
        let s3 = FinGroup::s3();
        let reg = GAction::regular(s3.clone());
        let nat = GAction::from_generators(s3.clone(), 3, &[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        for a in [reg, nat] {
            for y in 0..a.points() {
                assert_eq!(a.orbit(y).len() * a.stabilizer(y).len(), s3.order());
            }
        }
    }
}

//! Standard Levi subgroups M whose discrete series have u in their
//! parameter: u = (GL-blocks with even multiplicities m′) + tail u″ with
//! m″ ∈ {0,1,2}, where u″ is distinguished in a semisimple centralizer of
//! the classical factor.

use super::{needs_even_multiplicity, validate_partition, Family, LieType, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviCandidate {
    /// (a, number of GL_a factors), i.e. m′_a / 2 copies of GL_a.
    pub gl_blocks: Vec<(u32, u32)>,
    /// The tail u″, if nonempty.
    pub tail: Option<Partition>,
    /// Classical group containing the tail on the side of u.
    pub tail_group: String,
    /// Classical factor G₁ of the Levi on the p-adic side.
    pub classical_factor: String,
    /// Ways of writing u″ as a pair of partitions with distinct parts in
    /// the two factors of a semisimple centralizer.
    pub splits: Vec<(Vec<u32>, Vec<u32>)>,
}

impl LeviCandidate {
    pub fn multiple_splits(&self) -> bool {
        self.splits.len() > 1
    }

    pub fn is_torus(&self) -> bool {
        self.tail.is_none() && self.gl_blocks.iter().all(|&(a, _)| a == 1)
    }

    pub fn is_discrete(&self) -> bool {
        self.gl_blocks.is_empty()
    }

    pub fn levi_text(&self) -> String {
        let mut parts: Vec<String> = self
            .gl_blocks
            .iter()
            .map(|&(a, c)| {
                if c == 1 {
                    format!("GL{a}")
                } else {
                    format!("GL{a}^{c}")
                }
            })
            .collect();
        if !["SO1", "SO0", "Sp0"].contains(&self.classical_factor.as_str()) {
            parts.push(self.classical_factor.clone());
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }
}

/// Splits of a multiset with multiplicities ≤ 2 into two partitions with
/// distinct parts whose sizes have the required parities.
fn splits(t: LieType, tail: &[(u32, u32)]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let singles: Vec<u32> = tail
        .iter()
        .filter(|&&(_, m)| m == 1)
        .map(|&(a, _)| a)
        .collect();
    let doubles: Vec<u32> = tail
        .iter()
        .filter(|&&(_, m)| m == 2)
        .map(|&(a, _)| a)
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << singles.len()) {
        let mut left: Vec<u32> = doubles.clone();
        let mut right: Vec<u32> = doubles.clone();
        for (i, &a) in singles.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(a);
            } else {
                right.push(a);
            }
        }
        left.sort_unstable_by(|a, b| b.cmp(a));
        right.sort_unstable_by(|a, b| b.cmp(a));
        let (sl, sr): (u32, u32) = (left.iter().sum(), right.iter().sum());
        let ok = match t.family {
            // Sp × Sp and SO_even × SO_even: both sizes even, unordered.
            Family::C | Family::D => sl % 2 == 0 && sr % 2 == 0 && left >= right,
            // SO_odd × SO_even, ordered.
            Family::B => sl % 2 == 1 && sr % 2 == 0,
            Family::A => false,
        };
        if ok && !out.contains(&(left.clone(), right.clone())) {
            out.push((left, right));
        }
    }
    out
}

pub fn levi_candidates(t: LieType, u: &Partition) -> Result<Vec<LeviCandidate>> {
    if t.family == Family::A {
        return Err(Error::Unsupported(
            "Levi candidates are implemented for B, C, D".into(),
        ));
    }
    if !validate_partition(t, u) {
        return Err(Error::invalid(format!(
            "{u} is not a unipotent class of {}",
            t.group_name()
        )));
    }
    let mults = u.multiplicities();
    // Allowed m″ per distinct part: 0 for parts needing even multiplicity,
    // otherwise 0, 1 or 2 with m − m″ even.
    let choices: Vec<Vec<u32>> = mults
        .iter()
        .map(|&(a, m)| {
            if needs_even_multiplicity(t, a) {
                vec![0]
            } else {
                (0..=2).filter(|&k| k <= m && (m - k) % 2 == 0).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; mults.len()];
    loop {
        let tail: Vec<(u32, u32)> = mults
            .iter()
            .zip(&pick)
            .enumerate()
            .map(|(i, (&(a, _), &c))| (a, choices[i][c]))
            .filter(|&(_, k)| k > 0)
            .collect();
        let size: u32 = tail.iter().map(|&(a, k)| a * k).sum();
        let sp = splits(t, &tail);
        if !sp.is_empty() {
            let gl_blocks: Vec<(u32, u32)> = mults
                .iter()
                .zip(&pick)
                .enumerate()
                .map(|(i, (&(a, m), &c))| (a, (m - choices[i][c]) / 2))
                .filter(|&(_, c)| c > 0)
                .collect();
            let tail_parts: Vec<u32> = tail
                .iter()
                .flat_map(|&(a, k)| std::iter::repeat(a).take(k as usize))
                .collect();
            let (tail_group, classical_factor) = match t.family {
                Family::C => (format!("Sp{size}"), format!("SO{}", size + 1)),
                Family::B => (format!("SO{size}"), format!("Sp{}", size - 1)),
                _ => (format!("SO{size}"), format!("SO{size}")),
            };
            out.push(LeviCandidate {
                gl_blocks,
                tail: Partition::new(tail_parts).ok(),
                tail_group,
                classical_factor,
                splits: sp,
            });
        }
        // Next choice vector.
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(out);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

//! Unipotent classes of classical groups: partitions, centralizers,
//! component groups, a-values, Levi subgroups whose discrete series see a
//! given class, and Weyl-group Poincaré polynomials.

mod centralizer;
mod levi;
mod weyl;

use std::fmt;
use std::str::FromStr;

pub use centralizer::{
    a_value, centralizer, centralizer_dim, CentralizerDescriptor, Factor, FactorKind,
};
pub use levi::{levi_candidates, LeviCandidate};
pub use weyl::{cartan_matrix, degrees, poincare_by_enumeration, poincare_polynomial, WeylType};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

/// A classical group by Cartan type: A_n ↔ SL_{n+1}, B_n ↔ SO_{2n+1},
/// C_n ↔ Sp_{2n}, D_n ↔ SO_{2n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LieType {
    pub family: Family,
    pub rank: u32,
}

impl LieType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::invalid("rank must be at least 1"));
        }
        if family == Family::D && rank < 2 {
            return Err(Error::invalid("type D needs rank at least 2"));
        }
        Ok(LieType { family, rank })
    }

    /// Dimension of the natural representation.
    pub fn natural_dim(&self) -> u32 {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    pub fn lie_dim(&self) -> u32 {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
        }
    }

    pub fn group_name(&self) -> String {
        match self.family {
            Family::A => format!("SL{}", self.natural_dim()),
            Family::B | Family::D => format!("SO{}", self.natural_dim()),
            Family::C => format!("Sp{}", self.natural_dim()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown classical family {other:?}"))),
        }
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Accepts "C3" as well as group names "Sp6", "SO7", "SO8", "SL4".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |r: &str| {
            r.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad Lie type {s:?}")))
        };
        if let Some(r) = s.strip_prefix("Sp") {
            let d = num(r)?;
            if d % 2 == 1 {
                return Err(Error::Parse(format!("Sp needs even dimension: {s:?}")));
            }
            return LieType::new(Family::C, d / 2);
        }
        if let Some(r) = s.strip_prefix("SO") {
            let d = num(r)?;
            let f = if d % 2 == 1 { Family::B } else { Family::D };
            return LieType::new(f, d / 2);
        }
        if let Some(r) = s.strip_prefix("SL") {
            return LieType::new(Family::A, num(r)?.saturating_sub(1));
        }
        let (f, r) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        LieType::new(f.parse()?, num(r)?)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// A partition, stored weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.is_empty() {
            return Err(Error::invalid("empty partition"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// (part, multiplicity), largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn dual(&self) -> Vec<u32> {
        let largest = self.0[0];
        (1..=largest)
            .map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32)
            .collect()
    }

    /// λ ≤ μ in dominance order (same size assumed).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        for i in 0..self.0.len().max(other.0.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// All partitions of n, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "2,2,2", "2 2 2", "(2,2,2)" and exponent shorthand "2^3,1".
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in body.split([',', ' ']).filter(|t| !t.is_empty()) {
            let (p, m) = match tok.split_once('^') {
                Some((p, m)) => (
                    p,
                    m.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("{tok}: {e}")))?,
                ),
                None => (tok, 1),
            };
            let p: u32 = p.parse().map_err(|e| Error::Parse(format!("{tok}: {e}")))?;
            parts.extend(std::iter::repeat(p).take(m as usize));
        }
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parts whose multiplicity must be even: odd parts for C, even parts for B
/// and D.
pub(crate) fn needs_even_multiplicity(t: LieType, part: u32) -> bool {
    match t.family {
        Family::A => false,
        Family::C => part % 2 == 1,
        Family::B | Family::D => part % 2 == 0,
    }
}

/// Size check plus the parity rule on multiplicities.
pub fn validate_partition(t: LieType, u: &Partition) -> bool {
    u.size() == t.natural_dim()
        && u.multiplicities()
            .iter()
            .all(|&(a, m)| !needs_even_multiplicity(t, a) || m % 2 == 0)
}

/// Type D partitions with only even parts label two classes.
pub fn is_very_even(t: LieType, u: &Partition) -> bool {
    t.family == Family::D && u.parts().iter().all(|p| p % 2 == 0)
}

pub fn valid_partitions(t: LieType) -> Vec<Partition> {
    Partition::all(t.natural_dim())
        .into_iter()
        .filter(|u| validate_partition(t, u))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, n: u32) -> LieType {
        LieType::new(f, n).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_partition(
            ty(Family::C, 3),
            &"2,2,2".parse().unwrap()
        ));
        assert!(!validate_partition(
            ty(Family::C, 2),
            &"3,1".parse().unwrap()
        ));
        // Each even part of (4,2,1) has multiplicity one.
        assert!(!validate_partition(
            ty(Family::B, 3),
            &"4,2,1".parse().unwrap()
        ));
        assert!(validate_partition(
            ty(Family::B, 3),
            &"3,3,1".parse().unwrap()
        ));
        assert!(!validate_partition(
            ty(Family::C, 3),
            &"2,2".parse().unwrap()
        ));
    }

    /// Oracle: the parity rule applied part by part over all partitions.
    #[test]
    fn counts_of_classes() {
        // Numbers of orthogonal/symplectic partitions: Sp4 4, Sp6 8, SO7 7,
        // SO8 10 (12 classes once the two very even ones are doubled).
        assert_eq!(valid_partitions(ty(Family::C, 2)).len(), 4);
        assert_eq!(valid_partitions(ty(Family::C, 3)).len(), 8);
        assert_eq!(valid_partitions(ty(Family::B, 3)).len(), 7);
        assert_eq!(valid_partitions(ty(Family::D, 4)).len(), 10);
    }

    #[test]
    fn parsing_and_dual() {
        let p: Partition = "2^3".parse().unwrap();
        assert_eq!(p.parts(), &[2, 2, 2]);
        assert_eq!(p.dual(), vec![3, 3]);
        assert_eq!(p.to_string(), "(2,2,2)");
        assert_eq!("Sp6".parse::<LieType>().unwrap(), ty(Family::C, 3));
        assert_eq!("SO7".parse::<LieType>().unwrap(), ty(Family::B, 3));
        assert_eq!("D4".parse::<LieType>().unwrap(), ty(Family::D, 4));
        assert!("SO3x".parse::<LieType>().is_err());
        assert!("1,x".parse::<Partition>().is_err());
        assert!(Partition::new(vec![]).is_err());
    }
}

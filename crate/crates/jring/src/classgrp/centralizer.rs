use std::fmt;

use super::{needs_even_multiplicity, validate_partition, Family, LieType, Partition};
use crate::error::{Error, Result};
use crate::fingroup::FinGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Sp,
    O,
    SO,
    Z2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub size: u32,
    /// The part a whose multiplicity this factor comes from.
    pub part: u32,
    /// Whether the factor sits inside the determinant-one constraint S(·).
    pub in_s: bool,
}

impl Factor {
    pub fn dim(&self) -> u32 {
        let m = self.size;
        match self.kind {
            FactorKind::Sp => m * (m + 1) / 2,
            FactorKind::O | FactorKind::SO => m * m.saturating_sub(1) / 2,
            FactorKind::Z2 => 0,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Z2 => write!(f, "Z/2"),
            k => write!(f, "{k:?}{}", self.size),
        }
    }
}

/// Reductive part of the centralizer of a unipotent class.
#[derive(Clone, Debug)]
pub struct CentralizerDescriptor {
    pub lie_type: LieType,
    pub partition: Partition,
    pub factors: Vec<Factor>,
    /// Whether the S(·) condition on determinants applies.
    pub det_condition: bool,
    pub very_even: bool,
    pub component_group: FinGroup,
    pub dim: u32,
}

impl CentralizerDescriptor {
    pub fn component_group_order(&self) -> usize {
        self.component_group.order()
    }

    pub fn reductive_dim(&self) -> u32 {
        self.factors.iter().map(Factor::dim).sum()
    }

    pub fn text(&self) -> String {
        let plain: Vec<String> = self
            .factors
            .iter()
            .filter(|f| !f.in_s)
            .map(|f| f.to_string())
            .collect();
        let inside: Vec<String> = self
            .factors
            .iter()
            .filter(|f| f.in_s)
            .map(|f| f.to_string())
            .collect();
        let mut parts = plain;
        if !inside.is_empty() {
            if self.det_condition {
                parts.push(format!("S({})", inside.join(" x ")));
            } else {
                parts.extend(inside);
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }
}

/// Springer–Steinberg description of Z(u)^red for B, C, D:
/// Sp_{2n}: Π_{a odd} Sp_m × Π_{a even} O_m;
/// SO_N: Π_{a even} Sp_m × Π_{a odd, m odd} SO_m × S(Π_{a odd, m odd} ℤ/2 × Π_{a odd, m even} O_m).
pub fn centralizer(t: LieType, u: &Partition) -> Result<CentralizerDescriptor> {
    if !validate_partition(t, u) {
        return Err(Error::invalid(format!(
            "{u} is not a unipotent class of {}",
            t.group_name()
        )));
    }
    let mut factors = Vec::new();
    let mut det_condition = false;
    let mut components = 0u32;
    match t.family {
        Family::A => {
            return Err(Error::Unsupported(
                "centralizers are implemented for B, C, D".into(),
            ))
        }
        Family::C => {
            for (a, m) in u.multiplicities() {
                if a % 2 == 1 {
                    factors.push(Factor {
                        kind: FactorKind::Sp,
                        size: m,
                        part: a,
                        in_s: false,
                    });
                } else {
                    factors.push(Factor {
                        kind: FactorKind::O,
                        size: m,
                        part: a,
                        in_s: false,
                    });
                    components += 1;
                }
            }
        }
        Family::B | Family::D => {
            let mults = u.multiplicities();
            for &(a, m) in &mults {
                if a % 2 == 0 {
                    factors.push(Factor {
                        kind: FactorKind::Sp,
                        size: m,
                        part: a,
                        in_s: false,
                    });
                } else if m % 2 == 1 {
                    factors.push(Factor {
                        kind: FactorKind::SO,
                        size: m,
                        part: a,
                        in_s: false,
                    });
                }
            }
            let mut inside: u32 = 0;
            for &(a, m) in &mults {
                if a % 2 == 1 {
                    let kind = if m % 2 == 1 {
                        FactorKind::Z2
                    } else {
                        FactorKind::O
                    };
                    factors.push(Factor {
                        kind,
                        size: if m % 2 == 1 { 1 } else { m },
                        part: a,
                        in_s: true,
                    });
                    inside += 1;
                }
            }
            det_condition = inside > 0;
            components = inside.saturating_sub(1);
        }
    }
    debug_assert!(u
        .multiplicities()
        .iter()
        .all(|&(a, m)| !needs_even_multiplicity(t, a) || m % 2 == 0));
    Ok(CentralizerDescriptor {
        lie_type: t,
        partition: u.clone(),
        factors,
        det_condition,
        very_even: super::is_very_even(t, u),
        component_group: FinGroup::elementary_abelian2(components),
        dim: centralizer_dim(t, u)?,
    })
}

/// dim Z_G(u) from the dual partition λ*:
/// gl: Σλ*²; sl: Σλ*² − 1; sp: ½Σλ*² + ½#{odd parts}; so: ½Σλ*² − ½#{odd parts}.
pub fn centralizer_dim(t: LieType, u: &Partition) -> Result<u32> {
    if !validate_partition(t, u) {
        return Err(Error::invalid(format!(
            "{u} is not a unipotent class of {}",
            t.group_name()
        )));
    }
    let sq: u32 = u.dual().iter().map(|d| d * d).sum();
    let odd = u.parts().iter().filter(|p| *p % 2 == 1).count() as u32;
    Ok(match t.family {
        Family::A => sq - 1,
        Family::C => (sq + odd) / 2,
        Family::B | Family::D => (sq - odd) / 2,
    })
}

/// a = dim of the Springer fibre = (dim Z(u) − rank)/2.
pub fn a_value(t: LieType, u: &Partition) -> Result<u32> {
    Ok((centralizer_dim(t, u)? - t.rank) / 2)
}

//! Rigid-pairing Gram matrices B_β and change-of-basis matrices φ̄, loaded
//! from versioned JSON fixtures, with structure checks and determinants.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use crate::classgrp::{poincare_polynomial, WeylType};
use crate::error::{Error, Result};
use crate::exact::linalg::det_bareiss;
use crate::exact::{poly_divides_power, HalfLaurent};

pub const EXAMPLES: [&str; 3] = ["sl2", "pgl2", "so7"];

const FIXTURE_VERSION: u32 = 1;

/// A two-sided cell: consecutive indices of both bases, with its a-value.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Cell {
    pub label: String,
    pub a: u32,
    pub size: usize,
}

#[derive(Deserialize)]
struct FixtureFile {
    version: u32,
    name: String,
    group: String,
    weyl: String,
    alpha: Vec<String>,
    beta: Vec<String>,
    cells: Vec<Cell>,
    phi: Option<Vec<Vec<String>>>,
    b: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidExample {
    pub name: String,
    pub group: String,
    /// Finite Weyl group of the example, e.g. "B3".
    pub weyl: String,
    /// Representation labels (columns of B).
    pub alpha_labels: Vec<String>,
    /// Cocentre element labels (rows of B).
    pub beta_labels: Vec<String>,
    pub b: Vec<Vec<i64>>,
    pub phi: Option<Vec<Vec<HalfLaurent>>>,
    pub cells: Vec<Cell>,
}

impl RigidExample {
    pub fn new(
        name: &str,
        weyl: &str,
        b: Vec<Vec<i64>>,
        phi: Option<Vec<Vec<HalfLaurent>>>,
        cells: Vec<Cell>,
    ) -> Result<Self> {
        let n = b.len();
        let e = RigidExample {
            name: name.into(),
            group: String::new(),
            weyl: weyl.into(),
            alpha_labels: (0..n).map(|i| format!("alpha{i}")).collect(),
            beta_labels: (0..n).map(|i| format!("beta{i}")).collect(),
            b,
            phi,
            cells,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: FixtureFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.version != FIXTURE_VERSION {
            return Err(Error::Unsupported(format!("fixture version {}", f.version)));
        }
        let phi = match f.phi {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(|s| HalfLaurent::parse(s))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let e = RigidExample {
            name: f.name,
            group: f.group,
            weyl: f.weyl,
            alpha_labels: f.alpha,
            beta_labels: f.beta,
            b: f.b,
            phi,
            cells: f.cells,
        };
        e.validate()?;
        Ok(e)
    }

    fn validate(&self) -> Result<()> {
        let n = self.b.len();
        if self.b.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("B must be square"));
        }
        if self.alpha_labels.len() != n || self.beta_labels.len() != n {
            return Err(Error::invalid("label count does not match B"));
        }
        if self.cells.iter().map(|c| c.size).sum::<usize>() != n
            || self.cells.iter().any(|c| c.size == 0)
        {
            return Err(Error::invalid("cell sizes do not partition the indices"));
        }
        if let Some(p) = &self.phi {
            if p.len() != n || p.iter().any(|r| r.len() != n) {
                return Err(Error::invalid("Phi must be square of the size of B"));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.b.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.size).collect()
    }

    /// Cell index of every row/column.
    pub fn cell_of(&self) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(k, c)| std::iter::repeat(k).take(c.size))
            .collect()
    }

    pub fn weyl_factors(&self) -> Result<Vec<WeylType>> {
        WeylType::parse_product(&self.weyl)
    }
}

pub fn load_example(name: &str) -> Result<RigidExample> {
    let text = match name {
        "sl2" => include_str!("../../fixtures/sl2.json"),
        "pgl2" => include_str!("../../fixtures/pgl2.json"),
        "so7" => include_str!("../../fixtures/so7.json"),
        _ => {
            return Err(Error::invalid(format!(
                "unknown example {name:?}; known: {}",
                EXAMPLES.join(", ")
            )))
        }
    };
    RigidExample::from_json(text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub det_b: BigInt,
    pub block_sizes: Vec<usize>,
    /// Failed assertions, each naming the offending entry.
    pub failures: Vec<String>,
    /// Whether Phi is upper-triangular; `None` when Phi is absent.
    pub phi_upper_triangular: Option<bool>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// B block-diagonal under the cells with det B ≠ 0, a-values weakly
/// decreasing along the basis, Phi upper-triangular.
pub fn check_structure(e: &RigidExample) -> StructureReport {
    let mut failures = Vec::new();
    let cell = e.cell_of();
    for (i, row) in e.b.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != 0 && cell[i] != cell[j] {
                failures.push(format!(
                    "B[{i}][{j}] = {x} ({} vs {}) lies outside the cell blocks",
                    e.beta_labels[i], e.alpha_labels[j]
                ));
            }
        }
    }
    let big: Vec<Vec<BigInt>> =
        e.b.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
    let det_b = det_bareiss(&big);
    if det_b.is_zero() {
        failures.push("det B = 0".into());
    }
    for w in e.cells.windows(2) {
        if w[0].a < w[1].a {
            failures.push(format!(
                "a-values increase from cell {} to {}",
                w[0].label, w[1].label
            ));
        }
    }
    let phi_upper_triangular = e.phi.as_ref().map(|p| {
        let mut ok = true;
        for (i, row) in p.iter().enumerate() {
            for (j, x) in row.iter().enumerate().take(i) {
                if !x.is_zero() {
                    failures.push(format!("Phi[{i}][{j}] = {x} below the diagonal"));
                    ok = false;
                }
            }
        }
        ok
    });
    StructureReport {
        det_b,
        block_sizes: e.block_sizes(),
        failures,
        phi_upper_triangular,
    }
}

fn phi_of(e: &RigidExample) -> Result<&Vec<Vec<HalfLaurent>>> {
    e.phi
        .as_ref()
        .ok_or_else(|| Error::invalid(format!("example {} has no Phi matrix", e.name)))
}

/// det(Phiᵀ·B) as an exact Laurent polynomial in q^{1/2}.
pub fn rigid_determinant(e: &RigidExample) -> Result<HalfLaurent> {
    let phi = phi_of(e)?;
    let n = e.size();
    let prod: Vec<Vec<HalfLaurent>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(HalfLaurent::zero(), |acc, k| {
                        &acc + &phi[k][i].scale(&crate::exact::int(e.b[k][j]))
                    })
                })
                .collect()
        })
        .collect();
    Ok(det_bareiss(&prod))
}

/// Product of the diagonal entries of Phi (its determinant when Phi is
/// upper-triangular).
pub fn phi_diagonal_product(e: &RigidExample) -> Result<HalfLaurent> {
    let phi = phi_of(e)?;
    Ok((0..e.size()).fold(HalfLaurent::one(), |acc, i| &acc * &phi[i][i]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub determinant: HalfLaurent,
    pub poincare: HalfLaurent,
    /// Factor of the determinant sharing no root with P_W(q); a unit iff
    /// the check passes.
    pub residual: HalfLaurent,
    /// Smallest k with det | P_W(q)^k, when it exists.
    pub power: Option<u32>,
}

impl VanishingReport {
    pub fn holds(&self) -> bool {
        self.residual.is_unit()
    }
}

/// Every root of the rigid determinant in v = q^{1/2} is a root of P_W(v²).
pub fn vanishing_vs_poincare(e: &RigidExample, factors: &[WeylType]) -> Result<VanishingReport> {
    let determinant = rigid_determinant(e)?;
    if determinant.is_zero() {
        return Err(Error::math(format!(
            "rigid determinant of {} is zero",
            e.name
        )));
    }
    let poincare = poincare_polynomial(factors);
    let residual = determinant.residual_factor(&poincare);
    let bound = determinant.max_exp().unwrap_or(0) - determinant.min_exp().unwrap_or(0);
    let power = poly_divides_power(&determinant, &poincare, bound.max(1) as u32)?;
    Ok(VanishingReport {
        determinant,
        poincare,
        residual,
        power,
    })
}

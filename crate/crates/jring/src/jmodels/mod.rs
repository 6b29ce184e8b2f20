//! Block matrix models of J_u over rank-one character rings: diagonal
//! blocks range over R(PGL₂), off-diagonal blocks over the odd submodule
//! R(SL₂)_odd = V(1)·R(PGL₂).

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::linalg::EchelonSpan;
use crate::exact::{Cyclotomic, TorusChar};
use crate::repring::{decompose_sl2, in_odd_module, sl2_irrep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockTag {
    /// Entries in R(PGL₂): symmetric with even highest weights only.
    Full,
    /// Entries in R(SL₂)_odd.
    Odd,
}

impl BlockTag {
    /// Membership predicate for an entry.
    pub fn admits(self, c: &TorusChar) -> Result<bool> {
        Ok(match self {
            BlockTag::Odd => in_odd_module(c)?,
            BlockTag::Full => {
                let even = decompose_sl2(c)?.keys().all(|k| k % 2 == 0);
                if even != (c.negate_coord(0)? == *c) {
                    return Err(Error::math(format!("even-module criteria disagree on {c}")));
                }
                even
            }
        })
    }

    /// Tag of a product of entries with these tags.
    pub fn times(self, o: BlockTag) -> BlockTag {
        if self == o {
            BlockTag::Full
        } else {
            BlockTag::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAlgebraModel {
    name: String,
    block_sizes: Vec<usize>,
    tags: Vec<Vec<BlockTag>>,
    /// Block index of every row/column.
    block_of: Vec<usize>,
}

pub const FIXTURES: [&str; 3] = ["sl2-j0", "bdd-sp6", "full-2"];

impl BlockAlgebraModel {
    pub fn new(name: &str, block_sizes: Vec<usize>, tags: Vec<Vec<BlockTag>>) -> Result<Self> {
        let k = block_sizes.len();
        if k == 0 || block_sizes.contains(&0) {
            return Err(Error::invalid("block sizes must be positive"));
        }
        if tags.len() != k || tags.iter().any(|r| r.len() != k) {
            return Err(Error::Mismatch(
                "tag matrix does not match the blocks".into(),
            ));
        }
        // Products must land in the tagged block: tag(i,j)·tag(j,l) = tag(i,l).
        for i in 0..k {
            if tags[i][i] != BlockTag::Full {
                return Err(Error::invalid("diagonal blocks must be FULL"));
            }
            for j in 0..k {
                if tags[i][j] != tags[j][i] {
                    return Err(Error::invalid("tag pattern must be symmetric"));
                }
                for l in 0..k {
                    if tags[i][j].times(tags[j][l]) != tags[i][l] {
                        return Err(Error::invalid("tag pattern is not closed under products"));
                    }
                }
            }
        }
        let block_of = block_sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat(b).take(s))
            .collect();
        Ok(BlockAlgebraModel {
            name: name.into(),
            block_sizes,
            tags,
            block_of,
        })
    }

    /// The shipped models: "sl2-j0" (blocks 1,1), "bdd-sp6" (blocks 3,9)
    /// and "full-2" (one 2×2 FULL block, no odd part).
    pub fn fixture(name: &str) -> Result<Self> {
        use BlockTag::*;
        match name {
            "sl2-j0" => Self::new(name, vec![1, 1], vec![vec![Full, Odd], vec![Odd, Full]]),
            "bdd-sp6" => Self::new(name, vec![3, 9], vec![vec![Full, Odd], vec![Odd, Full]]),
            "full-2" => Self::new(name, vec![2], vec![vec![Full]]),
            _ => Err(Error::invalid(format!(
                "unknown model {name:?}; known: {}",
                FIXTURES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn tag_at(&self, i: usize, j: usize) -> BlockTag {
        self.tags[self.block_of[i]][self.block_of[j]]
    }

    pub fn has_odd_blocks(&self) -> bool {
        self.tags.iter().flatten().any(|&t| t == BlockTag::Odd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockElement {
    model: Arc<BlockAlgebraModel>,
    entries: Vec<Vec<TorusChar>>,
}

impl BlockElement {
    pub fn new(model: Arc<BlockAlgebraModel>, entries: Vec<Vec<TorusChar>>) -> Result<Self> {
        let n = model.size();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatch(format!("expected a {n}×{n} matrix")));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !model.tag_at(i, j).admits(c)? {
                    return Err(Error::invalid(format!(
                        "entry ({i},{j}) = {c} violates {:?}",
                        model.tag_at(i, j)
                    )));
                }
            }
        }
        Ok(BlockElement { model, entries })
    }

    pub fn zero(model: Arc<BlockAlgebraModel>) -> Self {
        let n = model.size();
        BlockElement {
            model,
            entries: vec![vec![TorusChar::zero(1); n]; n],
        }
    }

    pub fn identity(model: Arc<BlockAlgebraModel>) -> Self {
        let mut e = Self::zero(model);
        for i in 0..e.entries.len() {
            e.entries[i][i] = TorusChar::one(1);
        }
        e
    }

    /// c placed at (i, j), zero elsewhere.
    pub fn unit(model: Arc<BlockAlgebraModel>, i: usize, j: usize, c: TorusChar) -> Result<Self> {
        let mut entries = Self::zero(model.clone()).entries;
        entries[i][j] = c;
        Self::new(model, entries)
    }

    pub fn model(&self) -> &BlockAlgebraModel {
        &self.model
    }

    pub fn entries(&self) -> &[Vec<TorusChar>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &TorusChar {
        &self.entries[i][j]
    }
}

impl fmt::Display for BlockElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix product, with closure of the membership predicates asserted.
pub fn model_multiply(a: &BlockElement, b: &BlockElement) -> Result<BlockElement> {
    if a.model != b.model {
        return Err(Error::Mismatch("elements of different models".into()));
    }
    let n = a.model.size();
    let mut entries = vec![vec![TorusChar::zero(1); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (l, cell) in row.iter_mut().enumerate() {
            for j in 0..n {
                if !a.entries[i][j].is_zero() && !b.entries[j][l].is_zero() {
                    *cell = &*cell + &(&a.entries[i][j] * &b.entries[j][l]);
                }
            }
        }
    }
    for (i, row) in entries.iter().enumerate() {
        for (l, c) in row.iter().enumerate() {
            if !a.model.tag_at(i, l).admits(c)? {
                return Err(Error::math(format!(
                    "product entry ({i},{l}) = {c} leaves its block"
                )));
            }
        }
    }
    Ok(BlockElement {
        model: a.model.clone(),
        entries,
    })
}

/// Random element with entries Σ c_k V(k) over admissible k ≤ max_weight.
pub fn random_element<R: Rng>(
    model: &Arc<BlockAlgebraModel>,
    rng: &mut R,
    max_weight: u32,
) -> BlockElement {
    let n = model.size();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let start = if model.tag_at(i, j) == BlockTag::Odd {
                        1
                    } else {
                        0
                    };
                    let mut c = TorusChar::zero(1);
                    for k in (start..=max_weight).step_by(2) {
                        c = &c + &sl2_irrep(k).scale(rng.gen_range(-2..=2));
                    }
                    c
                })
                .collect()
        })
        .collect();
    BlockElement {
        model: model.clone(),
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub model: String,
    pub trials: usize,
    pub passed: usize,
}

/// Multiplies `trials` random pairs (seeded) and counts closed products.
pub fn closure_test(
    model: &Arc<BlockAlgebraModel>,
    trials: usize,
    seed: u64,
) -> Result<ClosureReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..trials {
        let a = random_element(model, &mut rng, 3);
        let b = random_element(model, &mut rng, 3);
        match model_multiply(&a, &b) {
            Ok(_) => passed += 1,
            Err(e) if e.is_math() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(ClosureReport {
        model: model.name.clone(),
        trials,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub point: Cyclotomic,
    /// Dimension of the image of the fiber in the full matrix space.
    pub dimension: usize,
    /// Dimension of the full matrix space.
    pub ambient: usize,
    /// Whether every evaluated element vanishes off the diagonal blocks.
    pub block_diagonal: bool,
    /// Number of evaluated spanning elements.
    pub family_size: usize,
}

/// Image of the fiber at z = z0: the span of the evaluations of matrix
/// units times 1, V(2) (FULL) or V(1) (ODD), and of their pairwise
/// products.
pub fn fiber_image_rank(model: &BlockAlgebraModel, z0: &Cyclotomic) -> Result<FiberReport> {
    if z0.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let n = model.size();
    let at = |k: u32| sl2_irrep(k).evaluate(std::slice::from_ref(z0));
    let (one, v1, v2) = (at(0)?, at(1)?, at(2)?);
    // Generators as (row, column, value at z0).
    let mut gens: Vec<(usize, usize, Cyclotomic)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            match model.tag_at(i, j) {
                BlockTag::Full => {
                    gens.push((i, j, one.clone()));
                    gens.push((i, j, v2.clone()));
                }
                BlockTag::Odd => gens.push((i, j, v1.clone())),
            }
        }
    }
    let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (g, &(i, _, _)) in gens.iter().enumerate() {
        by_row[i].push(g);
    }
    let mut family: Vec<(usize, usize, Cyclotomic)> = gens.clone();
    for (i, j, x) in &gens {
        for &h in &by_row[*j] {
            let (_, l, y) = &gens[h];
            family.push((*i, *l, x.mul_ref(y)));
        }
    }
    let mut span = EchelonSpan::new(n * n);
    let mut block_diagonal = true;
    for (i, l, x) in &family {
        if x.is_zero() {
            continue;
        }
        if model.block_of[*i] != model.block_of[*l] {
            block_diagonal = false;
        }
        let mut v = vec![Cyclotomic::zero(); n * n];
        v[i * n + l] = x.clone();
        span.push(v);
    }
    Ok(FiberReport {
        point: z0.clone(),
        dimension: span.dim(),
        ambient: n * n,
        block_diagonal,
        family_size: family.len(),
    })
}

/// A class of evaluation points, labeled by x = z + z⁻¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusClass {
    pub x: i64,
    pub description: String,
}

impl LocusClass {
    /// A point z with z + z⁻¹ = x, for the integral x where z is a root of
    /// unity.
    pub fn representative(&self) -> Result<Cyclotomic> {
        point_with_trace(self.x)
    }
}

pub fn point_with_trace(x: i64) -> Result<Cyclotomic> {
    Ok(match x {
        2 => Cyclotomic::one(),
        1 => Cyclotomic::zeta(6),
        0 => Cyclotomic::zeta(4),
        -1 => Cyclotomic::zeta(3),
        -2 => Cyclotomic::from_int(-1),
        _ => {
            return Err(Error::Unsupported(format!(
                "z + z⁻¹ = {x} has no root-of-unity solution"
            )))
        }
    })
}

/// V(k) as an integer polynomial in x = z + z⁻¹ (coefficients low first).
fn chebyshev(k: u32) -> Vec<i64> {
    let (mut prev, mut cur) = (Vec::<i64>::new(), vec![1i64]);
    for _ in 0..k {
        let mut next = vec![0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn eval_poly(p: &[i64], x: i64) -> i64 {
    p.iter().rev().fold(0, |acc, &c| acc * x + c)
}

/// Classes where the fiber map fails to be an isomorphism: the common
/// zeros of the odd generator V(1), which are the only places where odd
/// entries can all vanish. Each class is confirmed by a fiber rank drop.
pub fn unique_nonisomorphism_locus(model: &BlockAlgebraModel) -> Result<Vec<LocusClass>> {
    if !FIXTURES.contains(&model.name.as_str()) {
        return Err(Error::Unsupported(format!(
            "model {:?} is not a shipped fixture",
            model.name
        )));
    }
    if !model.has_odd_blocks() {
        return Ok(Vec::new());
    }
    let gen = chebyshev(1);
    // Monic integer polynomial: rational roots are integers dividing the
    // lowest nonzero coefficient, plus 0 when the constant term vanishes.
    let low = gen.iter().copied().find(|&c| c != 0).unwrap_or(1).abs();
    let mut candidates: Vec<i64> = (1..=low)
        .filter(|d| low % d == 0)
        .flat_map(|d| [d, -d])
        .collect();
    candidates.push(0);
    candidates.sort_unstable();
    let mut out = Vec::new();
    for x in candidates {
        if eval_poly(&gen, x) != 0 {
            continue;
        }
        let class = LocusClass {
            x,
            description: if x == 0 {
                "z^2 = -1".into()
            } else {
                format!("z + z^-1 = {x}")
            },
        };
        let report = fiber_image_rank(model, &class.representative()?)?;
        if report.dimension == report.ambient {
            return Err(Error::math(format!(
                "fiber at {} is full although V(1) vanishes",
                class.description
            )));
        }
        out.push(class);
    }
    Ok(out)
}

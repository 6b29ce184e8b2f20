//! Centrally extended transitive sets, with extensions of stabilizers
//! recorded as ℤ/N-valued 2-cocycles.

use crate::error::{Error, Result};
use crate::fingroup::{Cocycle2, FinGroup, GAction};

/// A transitive Γ-set with a central extension of every point stabilizer,
/// compatible with transport along the chosen transversal.
#[derive(Clone, Debug)]
pub struct CEOrbitData {
    action: GAction,
    /// For each point y: (Stab(y) as a group, its embedding, transporter k_y
    /// with k_y·y₀ = y, cocycle on Stab(y)).
    points: Vec<PointData>,
}

#[derive(Clone, Debug)]
struct PointData {
    stab: FinGroup,
    emb: Vec<usize>,
    cocycle: Cocycle2,
}

/// Result of the opp-square splitting check at a pair of points.
#[derive(Clone, Debug)]
pub struct SplitCheck {
    /// Elements of Γ fixing both points.
    pub pair_stabilizer: Vec<usize>,
    /// Whether the product-with-opposite cocycle is trivial with ℂ^×
    /// coefficients, which is the question for 𝔾ₘ-extensions.
    pub split: bool,
    /// Whether it is already a coboundary with ℤ/N coefficients.
    pub split_mod_n: bool,
    /// A cochain φ with dφ equal to the product cocycle, valued in
    /// ℤ/(N·e) ⊂ ℚ/ℤ where e is the exponent of the pair stabilizer.
    pub witness: Option<Vec<u64>>,
    pub witness_modulus: u64,
}

/// Whether c becomes a coboundary after pushing ℤ/N into ℂ^× via
/// 1 ↦ exp(2πi/N). A trivialization b: H → ℂ^× of a μ_N-valued cocycle has
/// b^N a homomorphism, so b takes values in μ_{N·e} and the question is
/// decided over ℤ/(N·e).
pub fn cstar_witness(c: &Cocycle2) -> (Option<Vec<u64>>, u64) {
    let e = c.group().exponent() as u64;
    let lifted = c.inflate(e).expect("nonzero modulus");
    (lifted.coboundary_witness(), lifted.modulus())
}

/// Transport of `c` on Stab(y₀) to Stab(y) along k: c_y(h₁,h₂) = c(k⁻¹h₁k, k⁻¹h₂k).
fn transport(
    g: &FinGroup,
    c: &Cocycle2,
    base_emb: &[usize],
    target: &FinGroup,
    target_emb: &[usize],
    k: usize,
) -> Result<Cocycle2> {
    let phi: Vec<usize> = target_emb
        .iter()
        .map(|&h| {
            let back = g.mul(g.mul(g.inv(k), h), k);
            base_emb
                .binary_search(&back)
                .expect("conjugate lies in the base stabilizer")
        })
        .collect();
    c.pullback(target, &phi)
}

fn cohomologous(a: &Cocycle2, b: &Cocycle2) -> Result<bool> {
    Ok(cstar_witness(&a.add(&b.neg())?).0.is_some())
}

impl CEOrbitData {
    /// Extends a cocycle on Stab(base) to every point by transport, after
    /// checking that conjugation by the stabilizer preserves its class.
    pub fn new(action: GAction, base: usize, cocycle: Cocycle2) -> Result<Self> {
        if !action.is_transitive() {
            return Err(Error::invalid("action is not transitive"));
        }
        let g = action.group().clone();
        let (s, emb) = g.subgroup(&action.stabilizer(base), "Stab")?;
        if *cocycle.group() != s {
            return Err(Error::Mismatch(
                "cocycle is not defined on the base stabilizer".into(),
            ));
        }
        let mut cocycles = Vec::new();
        for y in 0..action.points() {
            let k = action.transporter(base, y).expect("transitive");
            let (sy, ey) = g.subgroup(&action.stabilizer(y), "Stab")?;
            cocycles.push(transport(&g, &cocycle, &emb, &sy, &ey, k)?);
        }
        Self::from_points(action, cocycles)
    }

    /// Cocycles given point by point, each on the subgroup Stab(y) with its
    /// elements in increasing order. They must be cohomologous (in ℂ^×) to
    /// the transport of one another along every group element.
    pub fn from_points(action: GAction, cocycles: Vec<Cocycle2>) -> Result<Self> {
        if !action.is_transitive() {
            return Err(Error::invalid("action is not transitive"));
        }
        if cocycles.len() != action.points() {
            return Err(Error::invalid("one cocycle per point is required"));
        }
        let g = action.group().clone();
        let mut points = Vec::new();
        for (y, c) in cocycles.into_iter().enumerate() {
            let (stab, emb) = g.subgroup(&action.stabilizer(y), "Stab")?;
            if *c.group() != stab {
                return Err(Error::Mismatch(format!(
                    "cocycle at point {y} is not on its stabilizer"
                )));
            }
            points.push(PointData {
                stab,
                emb,
                cocycle: c,
            });
        }
        let n = points[0].cocycle.modulus();
        if points.iter().any(|p| p.cocycle.modulus() != n) {
            return Err(Error::Mismatch("cocycles use different moduli".into()));
        }
        for k in 0..g.order() {
            for y in 0..action.points() {
                let z = action.act(k, y);
                let (py, pz) = (&points[y], &points[z]);
                let moved = transport(&g, &py.cocycle, &py.emb, &pz.stab, &pz.emb, k)?;
                if !cohomologous(&moved, &pz.cocycle)? {
                    return Err(Error::invalid(format!(
                        "cocycle at {z} is not the transport of the cocycle at {y}"
                    )));
                }
            }
        }
        Ok(CEOrbitData { action, points })
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn cocycle(&self, y: usize) -> &Cocycle2 {
        &self.points[y].cocycle
    }

    /// Restricts the extensions at y₁ and at y₂ to Stab(y₁,y₂) and forms the
    /// product of the first with the opposite of the second, whose cocycle
    /// is c₁ − c₂; then asks whether that extension splits.
    pub fn opp_product_is_split(&self, y1: usize, y2: usize) -> Result<SplitCheck> {
        let g = self.action.group();
        let pair = self.action.pair_stabilizer(y1, y2);
        let (h, emb) = g.subgroup(&pair, "Stab2")?;
        let restrict = |p: &PointData| -> Result<Cocycle2> {
            let phi: Vec<usize> = emb
                .iter()
                .map(|x| p.emb.binary_search(x).expect("in stabilizer"))
                .collect();
            p.cocycle.pullback(&h, &phi)
        };
        let c1 = restrict(&self.points[y1])?;
        let c2 = restrict(&self.points[y2])?;
        let prod = c1.add(&c2.neg())?;
        let split_mod_n = prod.is_coboundary();
        let (witness, witness_modulus) = cstar_witness(&prod);
        Ok(SplitCheck {
            pair_stabilizer: pair,
            split: witness.is_some(),
            split_mod_n,
            witness,
            witness_modulus,
        })
    }
}

//! Representation rings of classical groups as Weyl-invariant torus
//! characters. Disconnected groups (O, Pin) are modeled as direct products
//! over their two classes of Cartan subgroups: component 0 is the maximal
//! torus of the identity component, component 1 is the non-identity Cartan
//! subgroup, seen through its identity component (a torus of rank n − 1 for
//! O₂ₙ and Pin₂ₙ).

mod sl2;

use std::fmt;
use std::str::FromStr;

pub use sl2::{decompose_sl2, in_odd_module, odd_vanishing_locus, sl2_irrep, VanishingCertificate};

use crate::error::{Error, Result};
use crate::exact::TorusChar;

/// Largest rank for which exact expansions are attempted.
pub const RANK_BUDGET: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingFamily {
    /// Sp₂ₙ.
    Sp,
    /// SO₂ₙ₊₁.
    SOOdd,
    /// SO₂ₙ.
    SOEven,
    /// O₂ₙ.
    OEven,
    /// O₂ₙ₊₁ = SO₂ₙ₊₁ × {±1}.
    OOdd,
    /// Spin₂ₙ.
    Spin,
    /// Spin₂ₙ₊₁.
    SpinOdd,
    /// Pin₂ₙ.
    Pin,
    /// GLₙ.
    GL,
    /// SL₂ (rank 1 only).
    SL,
    /// PGL₂ (rank 1 only), seen through the SL₂ torus coordinate.
    PGL,
}

/// A group together with its rank parameter n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub family: RingFamily,
    pub rank: usize,
}

/// Generators of a Weyl group acting on torus coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeylGen {
    Swap(usize, usize),
    Invert(Vec<usize>),
}

impl WeylGen {
    pub fn apply(&self, c: &TorusChar) -> TorusChar {
        match self {
            WeylGen::Swap(i, j) => {
                let mut sigma: Vec<usize> = (0..c.rank()).collect();
                sigma.swap(*i, *j);
                c.permute(&sigma)
            }
            WeylGen::Invert(which) => c.invert_coords(which),
        }
    }
}

fn weyl_b(rank: usize) -> Vec<WeylGen> {
    let mut g: Vec<WeylGen> = (1..rank).map(|i| WeylGen::Swap(i - 1, i)).collect();
    if rank > 0 {
        g.push(WeylGen::Invert(vec![0]));
    }
    g
}

fn weyl_d(rank: usize) -> Vec<WeylGen> {
    let mut g: Vec<WeylGen> = (1..rank).map(|i| WeylGen::Swap(i - 1, i)).collect();
    if rank > 1 {
        g.push(WeylGen::Invert(vec![0, 1]));
    }
    g
}

impl RingSpec {
    pub fn new(family: RingFamily, rank: usize) -> Result<Self> {
        use RingFamily::*;
        if rank == 0 {
            return Err(Error::invalid("rank must be at least 1"));
        }
        if matches!(family, SL | PGL) && rank != 1 {
            return Err(Error::Unsupported(format!(
                "{family:?} is implemented in rank 1 only"
            )));
        }
        Ok(RingSpec { family, rank })
    }

    pub fn group_name(&self) -> String {
        use RingFamily::*;
        let n = self.rank;
        match self.family {
            Sp => format!("Sp{}", 2 * n),
            SOOdd => format!("SO{}", 2 * n + 1),
            SOEven => format!("SO{}", 2 * n),
            OEven => format!("O{}", 2 * n),
            OOdd => format!("O{}", 2 * n + 1),
            Spin => format!("Spin{}", 2 * n),
            SpinOdd => format!("Spin{}", 2 * n + 1),
            Pin => format!("Pin{}", 2 * n),
            GL => format!("GL{n}"),
            SL => "SL2".into(),
            PGL => "PGL2".into(),
        }
    }

    /// Torus rank of each direct factor.
    pub fn component_ranks(&self) -> Vec<usize> {
        use RingFamily::*;
        match self.family {
            OEven | Pin => vec![self.rank, self.rank - 1],
            OOdd => vec![self.rank, self.rank],
            _ => vec![self.rank],
        }
    }

    /// Weyl group generators for the given direct factor.
    pub fn weyl_generators(&self, component: usize) -> Vec<WeylGen> {
        use RingFamily::*;
        let r = self.component_ranks()[component];
        match self.family {
            Sp | SOOdd | SpinOdd | OOdd | OEven | Pin => weyl_b(r),
            SOEven | Spin => weyl_d(r),
            GL => (1..r).map(|i| WeylGen::Swap(i - 1, i)).collect(),
            SL | PGL => vec![WeylGen::Invert(vec![0])],
        }
    }

    /// The connected group whose torus is component 0: SO₂ₙ inside O₂ₙ,
    /// Spin₂ₙ inside Pin₂ₙ.
    pub fn identity_component(&self) -> RingSpec {
        use RingFamily::*;
        let family = match self.family {
            OEven => SOEven,
            OOdd => SOOdd,
            Pin => Spin,
            f => f,
        };
        RingSpec {
            family,
            rank: self.rank,
        }
    }
}

impl FromStr for RingFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use RingFamily::*;
        Ok(
            match s
                .trim()
                .to_ascii_lowercase()
                .replace(['_', '-'], "")
                .as_str()
            {
                "sp" => Sp,
                "soodd" => SOOdd,
                "soeven" | "so" => SOEven,
                "oeven" | "o" => OEven,
                "oodd" => OOdd,
                "spin" | "spineven" => Spin,
                "spinodd" => SpinOdd,
                "pin" => Pin,
                "gl" => GL,
                "sl" => SL,
                "pgl" => PGL,
                other => return Err(Error::Parse(format!("unknown group family {other:?}"))),
            },
        )
    }
}

/// Selector for a named character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fundamental {
    /// i-th exterior power of the defining representation.
    V(usize),
    /// The two summands of Vₙ restricted to SO₂ₙ.
    VPlus,
    VMinus,
    DeltaPlus,
    DeltaMinus,
    /// The spin representation of Spin₂ₙ₊₁.
    Delta,
    /// The pinor representation of Pin₂ₙ.
    Pi,
    Det,
    /// Irreducible SL₂-module of highest weight k.
    Sl2(u32),
}

impl FromStr for Fundamental {
    type Err = Error;

    /// Accepts "v2", "v2+", "v2-", "delta+", "delta-", "delta", "pi",
    /// "det", "V(3)".
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("unknown character selector {s:?}"));
        Ok(match t.as_str() {
            "delta+" => Fundamental::DeltaPlus,
            "delta-" => Fundamental::DeltaMinus,
            "delta" => Fundamental::Delta,
            "pi" => Fundamental::Pi,
            "det" => Fundamental::Det,
            _ => {
                if let Some(k) = t.strip_prefix("v(").and_then(|r| r.strip_suffix(')')) {
                    Fundamental::Sl2(k.parse().map_err(|_| bad())?)
                } else if let Some(r) = t.strip_prefix('v') {
                    if r.ends_with('+') {
                        Fundamental::VPlus
                    } else if r.ends_with('-') {
                        Fundamental::VMinus
                    } else {
                        Fundamental::V(r.parse().map_err(|_| bad())?)
                    }
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// A class function: one Weyl-invariant torus character per direct factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunctionElt {
    spec: RingSpec,
    components: Vec<TorusChar>,
}

impl ClassFunctionElt {
    pub fn new(spec: RingSpec, components: Vec<TorusChar>) -> Result<Self> {
        let ranks = spec.component_ranks();
        if components.len() != ranks.len()
            || components.iter().zip(&ranks).any(|(c, &r)| c.rank() != r)
        {
            return Err(Error::Mismatch(format!(
                "components do not fit {}",
                spec.group_name()
            )));
        }
        let e = ClassFunctionElt { spec, components };
        if !e.is_weyl_invariant() {
            return Err(Error::invalid(format!("not Weyl invariant: {e}")));
        }
        Ok(e)
    }

    pub fn constant(spec: RingSpec, c: i64) -> Self {
        let components = spec
            .component_ranks()
            .iter()
            .map(|&r| TorusChar::constant(r, c))
            .collect();
        ClassFunctionElt { spec, components }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn components(&self) -> &[TorusChar] {
        &self.components
    }

    /// Character on the given direct factor (0 for the identity component).
    pub fn component(&self, tag: usize) -> &TorusChar {
        &self.components[tag]
    }

    pub fn is_weyl_invariant(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| {
            self.spec
                .weyl_generators(i)
                .iter()
                .all(|g| &g.apply(c) == c)
        })
    }

    fn zip(&self, o: &Self, f: impl Fn(&TorusChar, &TorusChar) -> TorusChar) -> Result<Self> {
        if self.spec != o.spec {
            return Err(Error::Mismatch(
                "class functions of different groups".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&o.components)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(ClassFunctionElt {
            spec: self.spec,
            components,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a * b)
    }

    /// Value at the identity.
    pub fn dimension(&self) -> i64 {
        self.components[0].dimension()
    }

    /// Restriction to the identity component.
    pub fn restrict_to_identity_component(&self) -> ClassFunctionElt {
        ClassFunctionElt {
            spec: self.spec.identity_component(),
            components: vec![self.components[0].clone()],
        }
    }
}

impl fmt::Display for ClassFunctionElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.len() == 1 {
            return write!(f, "{}", self.components[0]);
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| format!("C{}: {c}", i + 1))
            .collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

/// e_k of a list of characters.
fn elementary(vars: &[TorusChar], rank: usize, k: usize) -> TorusChar {
    // e[j] after processing a prefix of vars.
    let mut e = vec![TorusChar::zero(rank); k + 1];
    e[0] = TorusChar::one(rank);
    for x in vars {
        for j in (1..=k).rev() {
            e[j] = &e[j] + &(&e[j - 1] * x);
        }
    }
    e.swap_remove(k)
}

/// z_j and z_j⁻¹ for every coordinate.
fn pm_coords(rank: usize) -> Vec<TorusChar> {
    (0..rank)
        .flat_map(|j| {
            [
                TorusChar::coord_pow(rank, j, 1),
                TorusChar::coord_pow(rank, j, -1),
            ]
        })
        .collect()
}

/// Sum over sign vectors of Π z_j^{ε_j/2}, restricted by the parity of the
/// number of minus signs when `parity` is given.
fn spinor(rank: usize, parity: Option<usize>) -> TorusChar {
    let mut out = TorusChar::zero(rank);
    for mask in 0u32..(1 << rank) {
        let minus = mask.count_ones() as usize;
        if parity.is_some_and(|p| minus % 2 != p) {
            continue;
        }
        let e: Vec<i32> = (0..rank)
            .map(|j| if mask & (1 << j) != 0 { -1 } else { 1 })
            .collect();
        out = &out + &TorusChar::monomial(e, 1);
    }
    out
}

/// Vᵢ of SO₂ₙ (or SO₂ₙ₊₁ when `odd`) on its maximal torus.
fn exterior_so(rank: usize, i: usize, odd: bool) -> TorusChar {
    let mut vars = pm_coords(rank);
    if odd {
        vars.push(TorusChar::one(rank));
    }
    elementary(&vars, rank, i)
}

/// Vᵢ of O₂ₙ on the non-identity Cartan subgroup: eigenvalues z_j^{±1}
/// (rank n − 1) together with 1 and −1, so Vᵢ = eᵢ − eᵢ₋₂.
fn exterior_o_twisted(rank: usize, i: usize) -> TorusChar {
    let vars = pm_coords(rank);
    let a = elementary(&vars, rank, i);
    if i >= 2 {
        &a - &elementary(&vars, rank, i - 2)
    } else {
        a
    }
}

/// Vₙ^± of SO₂ₙ: (Vₙ ± Π_j (z_j − z_j⁻¹)) / 2.
fn half_exterior(rank: usize, plus: bool) -> TorusChar {
    let mut prod = TorusChar::one(rank);
    for j in 0..rank {
        prod = &prod * &(&TorusChar::coord_pow(rank, j, 1) - &TorusChar::coord_pow(rank, j, -1));
    }
    let v = exterior_so(rank, rank, false);
    let num = if plus { &v + &prod } else { &v - &prod };
    num.div_int(2)
        .expect("Vₙ ± Π(z − z⁻¹) has even coefficients")
}

pub fn fundamental_character(spec: RingSpec, which: Fundamental) -> Result<ClassFunctionElt> {
    use Fundamental as F;
    use RingFamily::*;
    let n = spec.rank;
    if n > RANK_BUDGET && !matches!(spec.family, SL | PGL | GL) {
        return Err(Error::Bound(format!(
            "rank {n} exceeds the expansion budget {RANK_BUDGET}"
        )));
    }
    let bad = || {
        Error::invalid(format!(
            "{which:?} is not defined for {}",
            spec.group_name()
        ))
    };
    let comps: Vec<TorusChar> = match (spec.family, which) {
        (Sp, F::V(i)) | (SOEven, F::V(i)) | (Spin, F::V(i)) if i <= 2 * n => {
            vec![exterior_so(n, i, false)]
        }
        (SOOdd, F::V(i)) | (SpinOdd, F::V(i)) if i <= 2 * n + 1 => vec![exterior_so(n, i, true)],
        (SOEven, F::VPlus) | (Spin, F::VPlus) => vec![half_exterior(n, true)],
        (SOEven, F::VMinus) | (Spin, F::VMinus) => vec![half_exterior(n, false)],
        (Spin, F::DeltaPlus) => vec![spinor(n, Some(0))],
        (Spin, F::DeltaMinus) => vec![spinor(n, Some(1))],
        (SpinOdd, F::Delta) => vec![spinor(n, None)],
        (OEven, F::V(i)) | (Pin, F::V(i)) if i <= 2 * n => {
            vec![exterior_so(n, i, false), exterior_o_twisted(n - 1, i)]
        }
        (OEven, F::Det) | (Pin, F::Det) => vec![TorusChar::one(n), TorusChar::constant(n - 1, -1)],
        (Pin, F::Pi) => vec![spinor(n, None), TorusChar::zero(n - 1)],
        (OOdd, F::V(i)) if i <= 2 * n + 1 => {
            let v = exterior_so(n, i, true);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            vec![v.clone(), v.scale(sign)]
        }
        (OOdd, F::Det) => vec![TorusChar::one(n), TorusChar::constant(n, -1)],
        (GL, F::V(i)) if i <= n => {
            let vars: Vec<TorusChar> = (0..n).map(|j| TorusChar::coord_pow(n, j, 1)).collect();
            vec![elementary(&vars, n, i)]
        }
        (SL, F::Sl2(k)) => vec![sl2_irrep(k)],
        (SL, F::V(i)) if i <= 2 => vec![exterior_so(1, i, false)],
        (PGL, F::Sl2(k)) if k % 2 == 0 => vec![sl2_irrep(k)],
        _ => return Err(bad()),
    };
    ClassFunctionElt::new(spec, comps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub spec: RingSpec,
    pub checks: Vec<PresentationCheck>,
}

impl PresentationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// (Vₖ + Vₖ₋₂ + …) on SO₂ₙ, down to V₁ or V₀.
fn alternating_tail(n: usize, top: usize) -> TorusChar {
    let mut acc = TorusChar::zero(n);
    let mut k = top as i64;
    while k >= 0 {
        acc = &acc + &exterior_so(n, k as usize, false);
        k -= 2;
    }
    acc
}

/// (Vₙ⁺ + Vₙ₋₂ + …)(Vₙ⁻ + Vₙ₋₂ + …) = (Vₙ₋₁ + Vₙ₋₃ + …)² on SO₂ₙ.
fn so_even_relation(n: usize) -> bool {
    let tail = if n >= 2 {
        alternating_tail(n, n - 2)
    } else {
        TorusChar::zero(n)
    };
    let lhs = &(&half_exterior(n, true) + &tail) * &(&half_exterior(n, false) + &tail);
    let r = alternating_tail(n, n - 1);
    lhs == &r * &r
}

pub fn verify_presentation(spec: RingSpec) -> Result<PresentationReport> {
    use RingFamily::*;
    let n = spec.rank;
    if n > RANK_BUDGET {
        return Err(Error::Bound(format!(
            "rank {n} exceeds the expansion budget {RANK_BUDGET}"
        )));
    }
    let mut checks = Vec::new();
    let mut push = |name: &str, holds: bool| {
        checks.push(PresentationCheck {
            name: name.into(),
            holds,
        })
    };
    let gamma = WeylGen::Invert(vec![0]);
    match spec.family {
        SOEven => {
            let so = |w| fundamental_character(spec, w);
            let v = so(Fundamental::V(n))?;
            let (vp, vm) = (so(Fundamental::VPlus)?, so(Fundamental::VMinus)?);
            push("V_n = V_n^+ + V_n^-", v == vp.add(&vm)?);
            push("SO relation", so_even_relation(n));
            push(
                "gamma swaps V_n^+ and V_n^-",
                gamma.apply(vp.component(0)) == *vm.component(0),
            );
        }
        OEven => {
            let o = |w| fundamental_character(spec, w);
            let det = o(Fundamental::Det)?;
            let vn = o(Fundamental::V(n))?;
            push(
                "det^2 = 1",
                det.mul(&det)? == ClassFunctionElt::constant(spec, 1),
            );
            push("det*V_n = V_n", det.mul(&vn)? == vn);
            let so = spec.identity_component();
            let split = fundamental_character(so, Fundamental::VPlus)?
                .add(&fundamental_character(so, Fundamental::VMinus)?)?;
            push(
                "V_n|SO = V_n^+ + V_n^-",
                vn.restrict_to_identity_component() == split,
            );
            push("SO relation", so_even_relation(n));
            let simple = (1..n).all(|i| {
                let v = o(Fundamental::V(i)).expect("V_i");
                gamma.apply(v.component(0)) == *v.component(0)
            });
            push("gamma fixes V_i for i < n", simple);
        }
        Pin => {
            let p = |w| fundamental_character(spec, w);
            let det = p(Fundamental::Det)?;
            let pi = p(Fundamental::Pi)?;
            push(
                "det^2 = 1",
                det.mul(&det)? == ClassFunctionElt::constant(spec, 1),
            );
            push("Pi*det = Pi", pi.mul(&det)? == pi);
            let spin = spec.identity_component();
            let dp = fundamental_character(spin, Fundamental::DeltaPlus)?;
            let dm = fundamental_character(spin, Fundamental::DeltaMinus)?;
            push(
                "Pi|Spin = Delta^+ + Delta^-",
                pi.restrict_to_identity_component() == dp.add(&dm)?,
            );
            push(
                "gamma swaps Delta^+ and Delta^-",
                gamma.apply(dp.component(0)) == *dm.component(0),
            );
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no presentation check for {}",
                spec.group_name()
            )))
        }
    }
    Ok(PresentationReport { spec, checks })
}

//! Classes in K_Γ(Y×Y) for a finite group Γ acting on a finite set Y.
//!
//! An equivariant sheaf on Y×Y is determined by its restriction to one base
//! pair per Γ-orbit, where it is a representation of the stabilizer of that
//! pair. A class is therefore stored as one class function per orbit, on the
//! stabilizer of the base pair. The value of the class at a pair (x,z) and an
//! element g fixing both is obtained by transport: if (x,z) = k·(x₀,z₀) then
//! χ_{(x,z)}(g) = χ_{(x₀,z₀)}(k⁻¹gk).

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::linalg::{mat_mul, rank};
use crate::exact::Cyclotomic;
use crate::fingroup::{irreducible_characters, GAction};

/// Orbit of Γ on Y×Y, with its base pair and the stabilizer of that pair
/// (sorted element indices).
#[derive(Clone, Debug)]
pub struct PairOrbit {
    pub base: (usize, usize),
    pub stabilizer: Vec<usize>,
}

/// The Γ-set Y×Y with precomputed orbits and transporters.
#[derive(Debug)]
pub struct Square {
    action: GAction,
    orbits: Vec<PairOrbit>,
    /// For each pair x·m+z: (orbit index, k with k·base = (x,z)).
    locate: Vec<(usize, usize)>,
}

impl Square {
    pub fn new(action: GAction) -> Arc<Self> {
        let m = action.points();
        let g = action.group();
        let mut locate = vec![(usize::MAX, 0); m * m];
        let mut orbits = Vec::new();
        for x in 0..m {
            for z in 0..m {
                if locate[x * m + z].0 != usize::MAX {
                    continue;
                }
                let idx = orbits.len();
                for k in 0..g.order() {
                    let (a, b) = (action.act(k, x), action.act(k, z));
                    if locate[a * m + b].0 == usize::MAX {
                        locate[a * m + b] = (idx, k);
                    }
                }
                orbits.push(PairOrbit {
                    base: (x, z),
                    stabilizer: action.pair_stabilizer(x, z),
                });
            }
        }
        Arc::new(Square {
            action,
            orbits,
            locate,
        })
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn orbits(&self) -> &[PairOrbit] {
        &self.orbits
    }

    pub fn points(&self) -> usize {
        self.action.points()
    }

    /// Orbit index of a pair and a transporter from the base pair.
    pub fn locate(&self, x: usize, z: usize) -> (usize, usize) {
        self.locate[x * self.points() + z]
    }

    pub fn orbit_of(&self, x: usize, z: usize) -> usize {
        self.locate(x, z).0
    }

    fn stab_pos(&self, orbit: usize, g: usize) -> usize {
        self.orbits[orbit]
            .stabilizer
            .binary_search(&g)
            .expect("element fixes the base pair")
    }

    /// Whether two squares are built over the same action.
    fn same(&self, other: &Square) -> bool {
        std::ptr::eq(self, other)
            || (self.action.group() == other.action.group()
                && self.points() == other.points()
                && (0..self.action.group().order())
                    .all(|g| self.action.perm(g) == other.action.perm(g)))
    }
}

/// An element of K_Γ(Y×Y) ⊗ ℚ(ζ).
#[derive(Clone)]
pub struct KClass {
    square: Arc<Square>,
    /// Per orbit, values of the class function on the base-pair stabilizer.
    data: Vec<Vec<Cyclotomic>>,
}

/// The image of a class in the specialization at s: a matrix indexed by the
/// fixed points Y^s.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecMatrix {
    pub s: usize,
    pub points: Vec<usize>,
    pub entries: Vec<Vec<Cyclotomic>>,
}

impl SpecMatrix {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries)
    }

    pub fn mul(&self, other: &SpecMatrix) -> SpecMatrix {
        SpecMatrix {
            s: self.s,
            points: self.points.clone(),
            entries: mat_mul(&self.entries, &other.entries),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, r)| {
            r.iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Cyclotomic::is_zero)
    }
}

impl fmt::Display for SpecMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|c| c.chars().count())
            .max()
            .unwrap_or(0);
        writeln!(f, "points {:?}", self.points)?;
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl KClass {
    pub fn zero(square: &Arc<Square>) -> Self {
        let data = square
            .orbits
            .iter()
            .map(|o| vec![Cyclotomic::zero(); o.stabilizer.len()])
            .collect();
        KClass {
            square: square.clone(),
            data,
        }
    }

    /// [O_O] for the orbit of (x,z), with the trivial representation on fibres.
    pub fn orbit_class(square: &Arc<Square>, x: usize, z: usize) -> Self {
        let mut c = KClass::zero(square);
        let o = square.orbit_of(x, z);
        c.data[o].iter_mut().for_each(|v| *v = Cyclotomic::one());
        c
    }

    /// The orbit of (x,z) with the given class function on Stab(x,z), listed
    /// in the order of `action.pair_stabilizer(x, z)`.
    pub fn orbit_class_with(
        square: &Arc<Square>,
        x: usize,
        z: usize,
        values: &[Cyclotomic],
    ) -> Result<Self> {
        let stab = square.action.pair_stabilizer(x, z);
        if values.len() != stab.len() {
            return Err(Error::invalid("class function has the wrong length"));
        }
        let (o, k) = square.locate(x, z);
        let g = square.action.group();
        let mut c = KClass::zero(square);
        // Pull back to the base pair: χ_base(h) = χ_{(x,z)}(k h k⁻¹).
        for (i, &h) in square.orbits[o].stabilizer.iter().enumerate() {
            let kh = g.conj(k, h);
            let pos = stab.binary_search(&kh).expect("conjugate fixes the pair");
            c.data[o][i] = values[pos].clone();
        }
        c.check_class_functions()?;
        Ok(c)
    }

    /// [O_Δ], the unit of the convolution algebra.
    pub fn diagonal(square: &Arc<Square>) -> Self {
        let mut c = KClass::zero(square);
        for y in 0..square.points() {
            let o = square.orbit_of(y, y);
            c.data[o].iter_mut().for_each(|v| *v = Cyclotomic::one());
        }
        c
    }

    /// Builds a class from its specializations: `spec(g)` is the matrix on
    /// all of Y whose (x,z) entry is used when g fixes x and z. Rejects data
    /// that is not equivariant.
    pub fn from_specializations(
        square: &Arc<Square>,
        spec: impl Fn(usize) -> Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let a = &square.action;
        let g = a.group();
        let mats: Vec<Vec<Vec<Cyclotomic>>> = (0..g.order()).map(&spec).collect();
        let mut c = KClass::zero(square);
        for (o, orb) in square.orbits.iter().enumerate() {
            let (x0, z0) = orb.base;
            for (i, &h) in orb.stabilizer.iter().enumerate() {
                c.data[o][i] = mats[h][x0][z0].clone();
            }
        }
        for h in 0..g.order() {
            for x in a.fixed_points(h) {
                for z in a.fixed_points(h) {
                    if c.value(x, z, h) != mats[h][x][z] {
                        return Err(Error::invalid(format!(
                            "specialization data is not equivariant at ({x},{z})"
                        )));
                    }
                }
            }
        }
        Ok(c)
    }

    pub(crate) fn with_data(mut self, data: Vec<Vec<Cyclotomic>>) -> Self {
        debug_assert_eq!(data.len(), self.data.len());
        self.data = data;
        self
    }

    pub fn square(&self) -> &Arc<Square> {
        &self.square
    }

    pub fn data(&self) -> &[Vec<Cyclotomic>] {
        &self.data
    }

    /// Value at the pair (x,z) of the class function, at g ∈ Stab(x,z).
    pub fn value(&self, x: usize, z: usize, g: usize) -> Cyclotomic {
        let (o, k) = self.square.locate(x, z);
        let grp = self.square.action.group();
        let h = grp.mul(grp.mul(grp.inv(k), g), k);
        self.data[o][self.square.stab_pos(o, h)].clone()
    }

    fn check_same(&self, other: &KClass) -> Result<()> {
        if self.square.same(&other.square) {
            Ok(())
        } else {
            Err(Error::Mismatch(
                "classes live over different actions".into(),
            ))
        }
    }

    fn check_class_functions(&self) -> Result<()> {
        let g = self.square.action.group();
        for (o, orb) in self.square.orbits.iter().enumerate() {
            for (i, &h) in orb.stabilizer.iter().enumerate() {
                for &k in &orb.stabilizer {
                    let j = self.square.stab_pos(o, g.conj(k, h));
                    if self.data[o][i] != self.data[o][j] {
                        return Err(Error::invalid("stored data is not a class function"));
                    }
                }
            }
        }
        Ok(())
    }

    fn zip(
        &self,
        other: &KClass,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<KClass> {
        self.check_same(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(KClass {
            square: self.square.clone(),
            data,
        })
    }

    pub fn add(&self, other: &KClass) -> Result<KClass> {
        self.zip(other, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, other: &KClass) -> Result<KClass> {
        self.zip(other, |a, b| a.sub_ref(b))
    }

    pub fn scale(&self, c: &Cyclotomic) -> KClass {
        let data = self
            .data
            .iter()
            .map(|v| v.iter().map(|x| x.mul_ref(c)).collect())
            .collect();
        KClass {
            square: self.square.clone(),
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Cyclotomic::is_zero)
    }

    /// Convolution: at a base pair (x,z) and g ∈ Stab(x,z) the result is
    /// Σ_{y ∈ Y^g} a(x,y)(g)·b(y,z)(g).
    pub fn convolve(&self, other: &KClass) -> Result<KClass> {
        self.check_same(other)?;
        let sq = &self.square;
        let a = &sq.action;
        let data = sq
            .orbits
            .iter()
            .map(|orb| {
                let (x, z) = orb.base;
                orb.stabilizer
                    .iter()
                    .map(|&g| {
                        a.fixed_points(g)
                            .into_iter()
                            .fold(Cyclotomic::zero(), |acc, y| {
                                acc.add_ref(&self.value(x, y, g).mul_ref(&other.value(y, z, g)))
                            })
                    })
                    .collect()
            })
            .collect();
        Ok(KClass {
            square: sq.clone(),
            data,
        })
    }

    pub fn specialize_at(&self, s: usize) -> SpecMatrix {
        let points = self.square.action.fixed_points(s);
        let entries = points
            .iter()
            .map(|&x| points.iter().map(|&z| self.value(x, z, s)).collect())
            .collect();
        SpecMatrix { s, points, entries }
    }

    /// Pullback to a subgroup Γ' ⊂ Γ given by its embedding.
    pub fn restrict(&self, sub_square: &Arc<Square>, emb: &[usize]) -> Result<KClass> {
        let sa = &sub_square.action;
        if sa.points() != self.square.points()
            || (0..sa.group().order()).any(|h| sa.perm(h) != self.square.action.perm(emb[h]))
        {
            return Err(Error::Mismatch(
                "subgroup action is not the restricted action".into(),
            ));
        }
        let data = sub_square
            .orbits
            .iter()
            .map(|orb| {
                orb.stabilizer
                    .iter()
                    .map(|&h| self.value(orb.base.0, orb.base.1, emb[h]))
                    .collect()
            })
            .collect();
        Ok(KClass {
            square: sub_square.clone(),
            data,
        })
    }

    /// Decomposition of each orbit's class function into irreducible
    /// characters of the base-pair stabilizer: (base pair, [(name, coefficient)]).
    pub fn coefficients(&self) -> Result<Vec<((usize, usize), Vec<(String, Cyclotomic)>)>> {
        let g = self.square.action.group();
        let mut out = Vec::new();
        for (orb, vals) in self.square.orbits.iter().zip(&self.data) {
            if vals.iter().all(Cyclotomic::is_zero) {
                continue;
            }
            let (sub, emb) = g.subgroup(&orb.stabilizer, format!("Stab{:?}", orb.base))?;
            let table = irreducible_characters(&sub)?;
            // emb is sorted exactly like the stored stabilizer list.
            debug_assert_eq!(emb, orb.stabilizer);
            let per_class: Vec<Cyclotomic> =
                table.class_reps.iter().map(|&r| vals[r].clone()).collect();
            let terms = table
                .decompose(&per_class)
                .into_iter()
                .zip(&table.names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, n)| (n.clone(), c))
                .collect();
            out.push((orb.base, terms));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<Value> {
        let orbits: Vec<Value> = self
            .coefficients()?
            .into_iter()
            .map(|(base, terms)| {
                json!({
                    "base": [base.0, base.1],
                    "terms": terms.into_iter().map(|(n, c)| json!([n, c.to_string()])).collect::<Vec<_>>(),
                })
            })
            .collect();
        Ok(json!({ "orbits": orbits }))
    }
}

impl PartialEq for KClass {
    fn eq(&self, other: &Self) -> bool {
        self.square.same(&other.square) && self.data == other.data
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for (orb, vals) in self.square.orbits.iter().zip(&self.data) {
            if !vals.iter().all(Cyclotomic::is_zero) {
                d.entry(
                    &orb.base,
                    &vals.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                );
            }
        }
        d.finish()
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Ok(coeffs) = self.coefficients() else {
            return write!(f, "{self:?}");
        };
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = coeffs
            .iter()
            .flat_map(|(b, terms)| terms.iter().map(move |(n, c)| format!("({c})·O{b:?}[{n}]")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

//! Finite groups stored as multiplication tables.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Groups up to this order get a full associativity check on construction.
const FULL_CHECK_ORDER: usize = 64;

#[derive(Clone, Debug)]
pub struct FinGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    labels: Vec<String>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FinGroup {
    /// Validates `table` as a group law and precomputes inverses and
    /// conjugacy classes. `generators` must generate the group.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("empty multiplication table"));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::invalid("multiplication table is not n×n over 0..n"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::invalid("no identity element"))?;
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g][h] == identity)
                .ok_or_else(|| Error::invalid(format!("element {g} has no inverse")))?;
            if table[h][g] != identity {
                return Err(Error::invalid("left and right inverses differ"));
            }
            inverse[g] = h;
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= FULL_CHECK_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::invalid("multiplication is not associative"));
                        }
                    }
                }
            }
        } else {
            // Deterministic sample of triples for larger tables.
            let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
            for _ in 0..20_000 {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let (a, b, c) = (
                    x as usize % n,
                    (x >> 20) as usize % n,
                    (x >> 40) as usize % n,
                );
                if !assoc(a, b, c) {
                    return Err(Error::invalid("multiplication is not associative"));
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::invalid("generator out of range"));
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        let mut g = FinGroup {
            name: name.into(),
            table,
            identity,
            inverse,
            generators,
            labels,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        if g.closure(&g.generators).len() != n {
            return Err(Error::invalid("generators do not generate the group"));
        }
        g.compute_classes();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let cls: BTreeSet<usize> = (0..n).map(|h| self.conj(h, g)).collect();
            for &x in &cls {
                class_of[x] = classes.len();
            }
            classes.push(cls.into_iter().collect::<Vec<_>>());
        }
        // Identity class first: it is the class of the smallest element only
        // when the identity is 0, so sort to make it so.
        let id_class = class_of[self.identity];
        if id_class != 0 {
            classes.swap(0, id_class);
            for c in class_of.iter_mut() {
                if *c == 0 {
                    *c = id_class;
                } else if *c == id_class {
                    *c = 0;
                }
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        Self::from_table(format!("Z{n}"), table, gens, None).expect("cyclic table")
    }

    pub fn elementary_abelian2(k: u32) -> Self {
        let n = 1usize << k;
        let table = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
        let gens = (0..k).map(|i| 1usize << i).collect();
        let name = if k == 1 {
            "Z2".to_string()
        } else {
            format!("Z2^{k}")
        };
        Self::from_table(name, table, gens, None).expect("elementary abelian table")
    }

    /// Symmetric group on {0,1,2}. Elements are the permutations in
    /// lexicographic order of their image lists; (στ)(i) = σ(τ(i)).
    /// Generators: the transpositions (0 1) and (1 2).
    pub fn s3() -> Self {
        let perms = s3_perms();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| idx([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        Self::from_table(
            "S3",
            table,
            vec![idx([1, 0, 2]), idx([0, 2, 1])],
            Some(labels),
        )
        .expect("S3 table")
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * nb + b.identity).collect();
        gens.extend(b.generators.iter().map(|&h| a.identity * nb + h));
        let labels = (0..n)
            .map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb]))
            .collect();
        Self::from_table(format!("{}x{}", a.name, b.name), table, gens, Some(labels))
            .expect("product table")
    }

    /// Parses the group mini-language: factors `Zn`, `Z2^k`, `S3`, `1`,
    /// joined by `x`, e.g. `Z2xS3`.
    pub fn standard(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(Error::Unsupported("empty group spec".into()));
        }
        let mut out: Option<FinGroup> = None;
        for factor in spec.split(['x', 'X', '×']) {
            let g = parse_factor(factor.trim())?;
            out = Some(match out {
                None => g,
                Some(acc) => FinGroup::direct_product(&acc, &g),
            });
        }
        let mut g = out.unwrap();
        g.name = spec.to_string();
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// h g h⁻¹.
    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inverse[h])
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse[g] } else { g };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order())
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, the identity class first.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&h| self.mul(g, h) == self.mul(h, g))
            .collect()
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&g| seen[g]).collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// The subgroup on `elems` as a group in its own right, with the map from
    /// its element indices back into `self`.
    pub fn subgroup(
        &self,
        elems: &[usize],
        name: impl Into<String>,
    ) -> Result<(FinGroup, Vec<usize>)> {
        let mut emb: Vec<usize> = elems.to_vec();
        emb.sort_unstable();
        emb.dedup();
        if !self.is_subgroup(&emb) {
            return Err(Error::invalid("elements do not form a subgroup"));
        }
        let pos = |g: usize| emb.binary_search(&g).unwrap();
        let table = emb
            .iter()
            .map(|&a| emb.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        // Greedy generating set.
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for &g in &emb {
            if !span.contains(&g) {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        let labels = emb.iter().map(|&g| self.labels[g].clone()).collect();
        let sub = FinGroup::from_table(
            name,
            table,
            gens.iter().map(|&g| pos(g)).collect(),
            Some(labels),
        )?;
        Ok((sub, emb))
    }

    /// Hash of the multiplication table; keys the character-table memo.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.table.hash(&mut h);
        self.identity.hash(&mut h);
        h.finish()
    }
}

fn parse_factor(f: &str) -> Result<FinGroup> {
    let bad = || Error::Unsupported(format!("group factor {f:?}"));
    if f == "1" {
        return Ok(FinGroup::trivial());
    }
    if f == "S3" {
        return Ok(FinGroup::s3());
    }
    let rest = f.strip_prefix('Z').ok_or_else(bad)?;
    if let Some((base, k)) = rest.split_once('^') {
        if base != "2" {
            return Err(bad());
        }
        let k: u32 = k.parse().map_err(|_| bad())?;
        if k == 0 || k > 6 {
            return Err(bad());
        }
        return Ok(FinGroup::elementary_abelian2(k));
    }
    let n: usize = rest.parse().map_err(|_| bad())?;
    if n == 0 || n > 64 {
        return Err(bad());
    }
    Ok(FinGroup::cyclic(n))
}

/// Groups compare by multiplication table.
impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FinGroup {}

pub(crate) fn s3_perms() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

fn cycle_label(p: &[usize; 3]) -> String {
    let mut seen = [false; 3];
    let mut out = String::new();
    for s in 0..3 {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            cyc.push(x);
            seen[x] = true;
            x = p[x];
        }
        out.push_str(&format!(
            "({})",
            cyc.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_examples() {
        let k = FinGroup::standard("Z2xZ2").unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.is_abelian());
        assert_eq!(k.exponent(), 2);
        let s3 = FinGroup::standard("S3").unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.classes().len(), 3);
        assert!(!s3.is_abelian());
        assert_eq!(FinGroup::standard("Z2xS3").unwrap().order(), 12);
        assert_eq!(FinGroup::standard("Z2^3").unwrap().order(), 8);
        assert!(FinGroup::standard("A5").is_err());
        assert!(FinGroup::standard("Z3^2").is_err());
    }

    #[test]
    fn s3_conventions() {
        let g = FinGroup::s3();
        let [t01, t12] = [g.generators()[0], g.generators()[1]];
        assert_eq!(g.label(t01), "(0 1)");
        assert_eq!(g.label(t12), "(1 2)");
        // (0 1)(1 2) maps 0 ↦ 1 ↦ 2 ↦ 0.
        assert_eq!(g.label(g.mul(t01, t12)), "(0 1 2)");
        assert_eq!(g.element_order(g.mul(t01, t12)), 3);
        assert_eq!(g.classes()[0], vec![g.identity()]);
    }

    #[test]
    fn rejects_bad_tables() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(FinGroup::from_table("bad", t, vec![1], None).is_err());
        let z3 = FinGroup::cyclic(3);
        assert!(FinGroup::from_table("z3", z3.table().to_vec(), vec![], None).is_err());
    }

    #[test]
    fn subgroups() {
        let g = FinGroup::s3();
        let r = g.mul(g.generators()[0], g.generators()[1]);
        let a3 = g.closure(&[r]);
        assert_eq!(a3.len(), 3);
        let (sub, emb) = g.subgroup(&a3, "A3").unwrap();
        assert_eq!(sub.order(), 3);
        assert!(sub.is_abelian());
        assert_eq!(emb, a3);
        assert!(g.subgroup(&[g.identity(), r], "x").is_err());
    }
}

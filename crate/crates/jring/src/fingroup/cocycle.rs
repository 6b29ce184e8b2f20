//! Normalized 2-cocycles with values in ℤ/N.

use super::group::FinGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    group: FinGroup,
    modulus: u64,
    values: Vec<Vec<u64>>,
}

impl Cocycle2 {
    /// Checks normalization and the cocycle identity
    /// c(g,h) + c(gh,k) = c(h,k) + c(g,hk) on all triples.
    pub fn new(group: FinGroup, modulus: u64, values: Vec<Vec<u64>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroInput("cocycle modulus"));
        }
        let n = group.order();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("cocycle table has the wrong shape"));
        }
        let values: Vec<Vec<u64>> = values
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % modulus).collect())
            .collect();
        let e = group.identity();
        if (0..n).any(|g| values[e][g] != 0 || values[g][e] != 0) {
            return Err(Error::invalid("cocycle is not normalized"));
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for k in 0..n {
                    let lhs = values[g][h] + values[gh][k];
                    let rhs = values[h][k] + values[g][group.mul(h, k)];
                    if lhs % modulus != rhs % modulus {
                        return Err(Error::invalid("cocycle identity fails"));
                    }
                }
            }
        }
        Ok(Cocycle2 {
            group,
            modulus,
            values,
        })
    }

    pub fn zero(group: FinGroup, modulus: u64) -> Result<Self> {
        let n = group.order();
        Cocycle2::new(group, modulus, vec![vec![0; n]; n])
    }

    /// The coboundary (db)(g,h) = b(g) + b(h) − b(gh) of a normalized cochain.
    pub fn coboundary(group: FinGroup, modulus: u64, b: &[u64]) -> Result<Self> {
        let n = group.order();
        let v = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        (b[g] % modulus + b[h] % modulus + modulus - b[group.mul(g, h)] % modulus)
                            % modulus
                    })
                    .collect()
            })
            .collect();
        Cocycle2::new(group, modulus, v)
    }

    /// The cocycle of the cyclic extension ℤ/(mn) → ℤ/n with kernel ℤ/m:
    /// carries when representatives in 0..n overflow.
    pub fn cyclic_carry(n: usize, m: u64) -> Result<Self> {
        let g = FinGroup::cyclic(n);
        let v = (0..n)
            .map(|a| (0..n).map(|b| u64::from(a + b >= n)).collect())
            .collect();
        Cocycle2::new(g, m, v)
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values_table(&self) -> Vec<Vec<u64>> {
        self.values.clone()
    }

    pub fn value(&self, g: usize, h: usize) -> u64 {
        self.values[g][h]
    }

    pub fn add(&self, other: &Cocycle2) -> Result<Self> {
        if self.modulus != other.modulus || self.group != other.group {
            return Err(Error::Mismatch(
                "cocycles over different groups or moduli".into(),
            ));
        }
        let m = self.modulus;
        let v = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + y) % m).collect())
            .collect();
        Ok(Cocycle2 {
            group: self.group.clone(),
            modulus: m,
            values: v,
        })
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus;
        let v = self
            .values
            .iter()
            .map(|r| r.iter().map(|x| (m - x) % m).collect())
            .collect();
        Cocycle2 {
            group: self.group.clone(),
            modulus: m,
            values: v,
        }
    }

    /// Pullback along a subgroup embedding `emb` (subgroup index → our index).
    pub fn restrict(&self, sub: &FinGroup, emb: &[usize]) -> Result<Self> {
        let n = sub.order();
        let v = (0..n)
            .map(|a| (0..n).map(|b| self.values[emb[a]][emb[b]]).collect())
            .collect();
        Cocycle2::new(sub.clone(), self.modulus, v)
    }

    /// Pullback along an arbitrary group homomorphism `phi` from `source`.
    pub fn pullback(&self, source: &FinGroup, phi: &[usize]) -> Result<Self> {
        let n = source.order();
        let v = (0..n)
            .map(|a| (0..n).map(|b| self.values[phi[a]][phi[b]]).collect())
            .collect();
        Cocycle2::new(source.clone(), self.modulus, v)
    }

    /// Image under ℤ/N → ℤ/(N·factor), x ↦ factor·x.
    pub fn inflate(&self, factor: u64) -> Result<Self> {
        if factor == 0 {
            return Err(Error::ZeroInput("inflation factor"));
        }
        let m = self.modulus * factor;
        let v = self
            .values
            .iter()
            .map(|r| r.iter().map(|x| x * factor % m).collect())
            .collect();
        Ok(Cocycle2 {
            group: self.group.clone(),
            modulus: m,
            values: v,
        })
    }

    /// A normalized 1-cochain b with c = db, if one exists.
    pub fn coboundary_witness(&self) -> Option<Vec<u64>> {
        let g = &self.group;
        let n = g.order();
        let e = g.identity();
        let m = self.modulus as i128;
        let unknowns: Vec<usize> = (0..n).filter(|&x| x != e).collect();
        let col = |x: usize| unknowns.iter().position(|&u| u == x);
        // Rows b(g) + b(h) − b(gh) = c(g,h), as integer rows reduced mod m.
        let mut rows: Vec<Vec<i128>> = Vec::new();
        let mut rhs: Vec<i128> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut r = vec![0i128; unknowns.len()];
                for (x, s) in [(a, 1), (b, 1), (g.mul(a, b), -1)] {
                    if let Some(c) = col(x) {
                        r[c] += s;
                    }
                }
                rows.push(r.into_iter().map(|v| v.rem_euclid(m)).collect());
                rhs.push(self.values[a][b] as i128);
            }
        }
        let y = solve_mod(rows, rhs, unknowns.len(), m)?;
        let mut b = vec![0u64; n];
        for (i, &u) in unknowns.iter().enumerate() {
            b[u] = y[i] as u64;
        }
        Some(b)
    }

    pub fn is_coboundary(&self) -> bool {
        self.coboundary_witness().is_some()
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Bézout data for a pivot p and entry q. When p divides q this is plain
/// elimination, so the pivot row is left untouched.
fn combine(p: i128, q: i128) -> (i128, i128, i128) {
    if q % p == 0 {
        (p, 1, 0)
    } else {
        ext_gcd(p, q)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

/// Solves A·x ≡ r (mod m) by diagonalizing A with unimodular row and column
/// operations. Rows carry the right-hand side; columns are tracked in V.
fn solve_mod(mut a: Vec<Vec<i128>>, mut r: Vec<i128>, cols: usize, m: i128) -> Option<Vec<i128>> {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let md = |x: i128| x.rem_euclid(m);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] != 0)
        else {
            break;
        };
        a.swap(t, pi);
        r.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        v.iter_mut().for_each(|row| row.swap(t, pj));
        loop {
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let (p, q) = (a[t][t], a[i][t]);
                let (g, s, u) = combine(p, q);
                let (pg, qg) = (p / g, q / g);
                for j in t..cols {
                    let (x, y) = (a[t][j], a[i][j]);
                    a[t][j] = md(s * x + u * y);
                    a[i][j] = md(-qg * x + pg * y);
                }
                let (x, y) = (r[t], r[i]);
                r[t] = md(s * x + u * y);
                r[i] = md(-qg * x + pg * y);
            }
            let mut touched = false;
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                touched = true;
                let (p, q) = (a[t][t], a[t][j]);
                let (g, s, u) = combine(p, q);
                let (pg, qg) = (p / g, q / g);
                for row in a.iter_mut().skip(t) {
                    let (x, y) = (row[t], row[j]);
                    row[t] = md(s * x + u * y);
                    row[j] = md(-qg * x + pg * y);
                }
                for row in v.iter_mut() {
                    let (x, y) = (row[t], row[j]);
                    row[t] = md(s * x + u * y);
                    row[j] = md(-qg * x + pg * y);
                }
            }
            // The pivot only shrinks, so this settles after finitely many passes.
            if !touched || (t + 1..rows).all(|i| a[i][t] == 0) {
                break;
            }
        }
        t += 1;
    }
    let mut y = vec![0i128; cols];
    for i in 0..rows {
        let d = if i < cols { a[i][i] } else { 0 };
        let g = gcd(d, m);
        if r[i] % g != 0 {
            return None;
        }
        if i < cols && d != 0 {
            let (_, inv, _) = ext_gcd(d / g, m / g);
            y[i] = md((r[i] / g) * inv.rem_euclid(m / g));
        }
    }
    Some(
        (0..cols)
            .map(|i| md((0..cols).map(|j| v[i][j] * y[j]).sum()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_a_coboundary() {
        let c = Cocycle2::zero(FinGroup::s3(), 4).unwrap();
        assert_eq!(c.coboundary_witness(), Some(vec![0; 6]));
    }

    /// Brute force over all normalized 1-cochains.
    fn brute(c: &Cocycle2) -> bool {
        let g = c.group();
        let n = g.order();
        let m = c.modulus();
        let total = m.pow((n - 1) as u32);
        (0..total).any(|mut code| {
            let mut b = vec![0u64; n];
            for (x, slot) in b.iter_mut().enumerate() {
                if x != g.identity() {
                    *slot = code % m;
                    code /= m;
                }
            }
            Cocycle2::coboundary(g.clone(), m, &b).unwrap() == *c
        })
    }

    #[test]
    fn z4_extension_is_not_split() {
        let c = Cocycle2::cyclic_carry(2, 2).unwrap();
        assert!(!brute(&c));
        assert!(!c.is_coboundary());
    }

    #[test]
    fn solver_matches_brute_force() {
        let klein = FinGroup::standard("Z2xZ2").unwrap();
        // c(a,b) = a1·b2 over ℤ/2 is a bilinear cocycle that is not symmetric,
        // so it does not split.
        let bil = Cocycle2::new(
            klein.clone(),
            2,
            (0..4)
                .map(|a| (0..4).map(|b| ((a >> 1) & b & 1) as u64).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(bil.is_coboundary(), brute(&bil));
        assert!(!bil.is_coboundary());
        let carry4 = Cocycle2::cyclic_carry(4, 4).unwrap();
        assert_eq!(carry4.is_coboundary(), brute(&carry4));
        let carry3 = Cocycle2::cyclic_carry(3, 2).unwrap();
        assert!(carry3.is_coboundary());
        assert_eq!(carry3.is_coboundary(), brute(&carry3));
    }

    #[test]
    fn witness_reproduces_cocycle() {
        let g = FinGroup::s3();
        let b = [0, 1, 2, 3, 0, 1];
        let c = Cocycle2::coboundary(g.clone(), 4, &b).unwrap();
        let w = c.coboundary_witness().unwrap();
        assert_eq!(Cocycle2::coboundary(g, 4, &w).unwrap(), c);
    }
}

//! Irreducible characters of small groups.
//!
//! The general path is Dixon's method: split the class algebra into common
//! eigenvectors over a prime field F_p with p ≡ 1 (mod exponent), read off
//! character values mod p, and recover each value exactly as a sum of roots
//! of unity from the eigenvalue multiplicities of ρ(g). Named standard groups
//! use closed-form tables, which the tests compare against the general path.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use super::group::FinGroup;
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Rational};

pub const DEFAULT_ORDER_BOUND: usize = 64;

/// A class function, stored by conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, g: &FinGroup, x: usize) -> &Cyclotomic {
        &self.values[g.class_of(x)]
    }

    pub fn degree(&self) -> Cyclotomic {
        self.values[0].clone()
    }

    /// Degree as an integer (valid for genuine characters).
    pub fn dim(&self) -> usize {
        let r = self.values[0].as_rational().expect("degree is rational");
        usize::try_from(r.numer()).expect("degree is a small positive integer")
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub class_sizes: Vec<usize>,
    pub class_reps: Vec<usize>,
    pub chars: Vec<Character>,
    pub names: Vec<String>,
    pub group_order: usize,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// ⟨f1, f2⟩ = (1/|G|) Σ_classes |C| f1(C) conj(f2(C)).
    pub fn inner(&self, f1: &[Cyclotomic], f2: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for ((h, a), b) in self.class_sizes.iter().zip(f1).zip(f2) {
            let t = a
                .mul_ref(&b.conj())
                .mul_ref(&Cyclotomic::from_int(*h as i64));
            acc = acc.add_ref(&t);
        }
        acc.mul_ref(&Cyclotomic::from_rational(Rational::new(
            1.into(),
            (self.group_order as i64).into(),
        )))
    }

    /// Coefficients of a class function in the basis of irreducibles.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.chars
            .iter()
            .map(|c| self.inner(f, &c.values))
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Exact check of Σ χ(1)² = |G| and of both orthogonality relations.
    pub fn verify(&self) -> Result<()> {
        let r = self.chars.len();
        if r != self.class_sizes.len() {
            return Err(Error::math(
                "number of characters differs from number of classes",
            ));
        }
        let sq: usize = self.chars.iter().map(|c| c.dim() * c.dim()).sum();
        if sq != self.group_order {
            return Err(Error::math(format!(
                "sum of squared degrees {sq} ≠ {}",
                self.group_order
            )));
        }
        for i in 0..r {
            for j in 0..r {
                let ip = self.inner(&self.chars[i].values, &self.chars[j].values);
                let want = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if ip != want {
                    return Err(Error::math(format!("row orthogonality fails at ({i},{j})")));
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                let mut s = Cyclotomic::zero();
                for c in &self.chars {
                    s = s.add_ref(&c.values[a].mul_ref(&c.values[b].conj()));
                }
                let want = if a == b {
                    Cyclotomic::from_int((self.group_order / self.class_sizes[a]) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != want {
                    return Err(Error::math(format!(
                        "column orthogonality fails at ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }
}

type Memo = RwLock<HashMap<(String, u64), Arc<CharacterTable>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Complete list of irreducible characters, memoized per group.
pub fn irreducible_characters(g: &FinGroup) -> Result<Arc<CharacterTable>> {
    irreducible_characters_bounded(g, DEFAULT_ORDER_BOUND)
}

pub fn irreducible_characters_bounded(g: &FinGroup, bound: usize) -> Result<Arc<CharacterTable>> {
    if g.order() > bound {
        return Err(Error::Bound(format!(
            "group order {} exceeds {bound}",
            g.order()
        )));
    }
    let key = (g.name().to_string(), g.fingerprint());
    if let Some(t) = memo().read().expect("memo lock").get(&key) {
        return Ok(t.clone());
    }
    let table = match known_table(g) {
        Some(t) => t,
        None => dixon(g)?,
    };
    let table = Arc::new(table);
    memo()
        .write()
        .expect("memo lock")
        .entry(key)
        .or_insert_with(|| table.clone());
    Ok(table)
}

fn table_from_element_values(g: &FinGroup, rows: Vec<(String, Vec<Cyclotomic>)>) -> CharacterTable {
    let class_reps: Vec<usize> = g.classes().iter().map(|c| c[0]).collect();
    let chars = rows
        .iter()
        .map(|(_, v)| Character::new(class_reps.iter().map(|&x| v[x].clone()).collect()))
        .collect();
    CharacterTable {
        class_sizes: g.classes().iter().map(|c| c.len()).collect(),
        class_reps,
        chars,
        names: rows.into_iter().map(|(n, _)| n).collect(),
        group_order: g.order(),
    }
}

/// Per-element character values for a standard factor.
fn factor_rows(spec: &str) -> Option<Vec<(String, Vec<Cyclotomic>)>> {
    if spec == "S3" {
        let g = FinGroup::s3();
        let kinds: Vec<usize> = (0..6).map(|x| g.element_order(x)).collect();
        let row = |f: fn(usize) -> i64| kinds.iter().map(|&k| Cyclotomic::from_int(f(k))).collect();
        return Some(vec![
            ("triv".into(), row(|_| 1)),
            ("sgn".into(), row(|k| if k == 2 { -1 } else { 1 })),
            (
                "std".into(),
                row(|k| match k {
                    1 => 2,
                    2 => 0,
                    _ => -1,
                }),
            ),
        ]);
    }
    if spec == "1" {
        return Some(vec![("triv".into(), vec![Cyclotomic::one()])]);
    }
    let rest = spec.strip_prefix('Z')?;
    if let Some((_, k)) = rest.split_once('^') {
        let k: u32 = k.parse().ok()?;
        let n = 1usize << k;
        return Some(
            (0..n)
                .map(|s| {
                    let name = if s == 0 {
                        "triv".to_string()
                    } else {
                        format!("chi{s}")
                    };
                    let vals = (0..n)
                        .map(|x| {
                            Cyclotomic::from_int(if (s & x).count_ones() % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    (name, vals)
                })
                .collect(),
        );
    }
    let n: usize = rest.parse().ok()?;
    Some(
        (0..n)
            .map(|k| {
                let name = match (k, n) {
                    (0, _) => "triv".to_string(),
                    (1, 2) => "sgn".to_string(),
                    _ => format!("chi{k}"),
                };
                let vals = (0..n)
                    .map(|x| Cyclotomic::zeta_pow(n as u32, (k * x) as i64))
                    .collect();
                (name, vals)
            })
            .collect(),
    )
}

/// Closed-form table when `g` is literally a standard group of its name.
fn known_table(g: &FinGroup) -> Option<CharacterTable> {
    let std = FinGroup::standard(g.name()).ok()?;
    if std.fingerprint() != g.fingerprint() {
        return None;
    }
    let mut rows: Vec<(String, Vec<Cyclotomic>)> = vec![("triv".into(), vec![Cyclotomic::one()])];
    let mut size = 1usize;
    for factor in g.name().split(['x', 'X', '×']) {
        let f = factor_rows(factor.trim())?;
        let nf = f[0].1.len();
        let mut next = Vec::new();
        for (an, av) in &rows {
            for (bn, bv) in &f {
                let name = match (an.as_str(), bn.as_str()) {
                    ("triv", b) if size == 1 => b.to_string(),
                    ("triv", "triv") => "triv".to_string(),
                    (a, b) => format!("{a}.{b}"),
                };
                let vals = (0..size * nf)
                    .map(|x| av[x / nf].mul_ref(&bv[x % nf]))
                    .collect();
                next.push((name, vals));
            }
        }
        rows = next;
        size *= nf;
    }
    Some(table_from_element_values(g, rows))
}

// ---------------------------------------------------------------------------
// Dixon's method over F_p.

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let m = p - 1;
    let factors: Vec<u64> = (2..=m).filter(|&q| m % q == 0 && is_prime(q)).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, m / q, p) != 1))
        .unwrap()
}

/// Kernel of an r×d matrix over F_p (columns = unknowns).
fn kernel_mod(a: &[Vec<u64>], d: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..d {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..d)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; d];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

fn dixon(g: &FinGroup) -> Result<CharacterTable> {
    let n = g.order();
    let classes = g.classes();
    let r = classes.len();
    let e = g.exponent() as u64;
    let mut p = e + 1;
    while !(is_prime(p) && p > 2 * n as u64) {
        p += e;
    }
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let inv_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.inv(x))).collect();

    // a[j][k][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_k}.
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (l, &z) in reps.iter().enumerate() {
        for x in 0..n {
            let y = g.mul(g.inv(x), z);
            a[g.class_of(x)][g.class_of(y)][l] += 1;
        }
    }

    // Simultaneous eigenspaces of the matrices M_j = (a[j][k][l])_{k,l}.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()];
    for mj in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            // M_j·B as an r×d matrix.
            let mb: Vec<Vec<u64>> = (0..r)
                .map(|k| {
                    (0..d)
                        .map(|c| (0..r).map(|l| mj[k][l] * basis[c][l] % p).sum::<u64>() % p)
                        .collect()
                })
                .collect();
            let mut found = 0;
            for lam in 0..p {
                let shifted: Vec<Vec<u64>> = (0..r)
                    .map(|k| {
                        (0..d)
                            .map(|c| (mb[k][c] + p - lam * basis[c][k] % p) % p)
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod(&shifted, d, p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|cv| {
                        (0..r)
                            .map(|k| (0..d).map(|c| cv[c] * basis[c][k] % p).sum::<u64>() % p)
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::math("class algebra did not split over F_p"));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != r {
        return Err(Error::math(
            "class algebra eigenspaces are not one-dimensional",
        ));
    }

    let omega_e = pow_mod(primitive_root(p), (p - 1) / e, p);
    let nmod = n as u64 % p;
    let mut chars = Vec::new();
    for s in spaces {
        let w = &s[0];
        if w[0] == 0 {
            return Err(Error::math("central character vanishes on the identity"));
        }
        let w0 = inv_mod(w[0], p);
        let omega: Vec<u64> = w.iter().map(|x| x * w0 % p).collect();
        // χ(1)² = |G| / Σ_l ω_l ω_{l*} / h_l.
        let mut s = 0;
        for l in 0..r {
            s = (s + omega[l] * omega[inv_class[l]] % p * inv_mod(sizes[l] % p, p)) % p;
        }
        let d2 = nmod * inv_mod(s, p) % p;
        let deg = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::math("no integral degree"))?;
        let chi_p: Vec<u64> = (0..r)
            .map(|l| deg * omega[l] % p * inv_mod(sizes[l] % p, p) % p)
            .collect();
        let mut values = Vec::with_capacity(r);
        for &x in &reps {
            let m = g.element_order(x) as u64;
            let wm = pow_mod(omega_e, e / m, p);
            let mut val = Cyclotomic::zero();
            for t in 0..m {
                let mut acc = 0;
                for k in 0..m {
                    let c = g.class_of(g.pow(x, k as i64));
                    acc = (acc + chi_p[c] * pow_mod(wm, (m - (t * k) % m) % m, p)) % p;
                }
                let mu = acc * inv_mod(m % p, p) % p;
                if mu > deg {
                    return Err(Error::math("eigenvalue multiplicity out of range"));
                }
                if mu > 0 {
                    let z = Cyclotomic::zeta_pow(e as u32, (t * (e / m)) as i64);
                    val = val.add_ref(&z.mul_ref(&Cyclotomic::from_int(mu as i64)));
                }
            }
            values.push(val);
        }
        chars.push(Character::new(values));
    }
    // Trivial character first, then by degree and a fixed text key.
    chars.sort_by_cached_key(|c| {
        let triv = c.values.iter().all(|v| v.is_one());
        (
            !triv,
            c.dim(),
            c.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        )
    });
    let names = (0..chars.len())
        .map(|i| {
            if i == 0 {
                "triv".to_string()
            } else {
                format!("chi{i}")
            }
        })
        .collect();
    let table = CharacterTable {
        class_sizes: sizes.iter().map(|&s| s as usize).collect(),
        class_reps: reps,
        chars,
        names,
        group_order: n,
    };
    Ok(table)
}

/// Dixon's method without the closed-form shortcut, for cross-checks.
pub fn characters_by_dixon(g: &FinGroup) -> Result<CharacterTable> {
    dixon(g)
}

impl CharacterTable {
    /// True if the two tables agree up to reordering the characters.
    pub fn same_characters(&self, other: &CharacterTable) -> bool {
        if self.chars.len() != other.chars.len() {
            return false;
        }
        let mut used = vec![false; other.chars.len()];
        self.chars.iter().all(|c| {
            match other
                .chars
                .iter()
                .enumerate()
                .position(|(i, d)| !used[i] && d == c)
            {
                Some(i) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        })
    }

    /// Degrees as integers, in table order.
    pub fn degrees(&self) -> Vec<usize> {
        self.chars.iter().map(|c| c.dim()).collect()
    }

    /// Character values at a group element.
    pub fn column(&self, g: &FinGroup, x: usize) -> Vec<Cyclotomic> {
        self.chars.iter().map(|c| c.value(g, x).clone()).collect()
    }

    pub fn is_rational_valued(&self) -> bool {
        self.chars
            .iter()
            .all(|c| c.values.iter().all(|v| v.as_rational().is_some()))
    }

    pub fn has_zero_row(&self) -> bool {
        self.chars.iter().any(|c| {
            c.values
                .iter()
                .all(|v| v.coords().iter().all(Zero::is_zero))
        })
    }
}

//! Poincaré polynomials Σ_{w∈W} q^{ℓ(w)} of finite Weyl groups.

use std::collections::HashMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::HalfLaurent;

/// Irreducible Weyl group types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E(u32),
    F4,
    G2,
}

impl FromStr for WeylType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: u32 = tail
            .parse()
            .map_err(|_| Error::Parse(format!("bad Weyl type {s:?}")))?;
        let t = match head {
            "A" if n >= 1 => WeylType::A(n),
            "B" if n >= 2 => WeylType::B(n),
            "C" if n >= 2 => WeylType::C(n),
            "D" if n >= 3 => WeylType::D(n),
            "E" if (6..=8).contains(&n) => WeylType::E(n),
            "F" if n == 4 => WeylType::F4,
            "G" if n == 2 => WeylType::G2,
            _ => return Err(Error::Unsupported(format!("Weyl type {s}"))),
        };
        Ok(t)
    }
}

impl WeylType {
    pub fn rank(&self) -> u32 {
        match *self {
            WeylType::A(n) | WeylType::B(n) | WeylType::C(n) | WeylType::D(n) | WeylType::E(n) => n,
            WeylType::F4 => 4,
            WeylType::G2 => 2,
        }
    }

    /// Parses a product such as "A1xA1" or "B3".
    pub fn parse_product(s: &str) -> Result<Vec<WeylType>> {
        s.split(['x', '×']).map(str::parse).collect()
    }
}

/// Degrees of the basic invariants.
pub fn degrees(t: WeylType) -> Vec<u32> {
    match t {
        WeylType::A(n) => (2..=n + 1).collect(),
        WeylType::B(n) | WeylType::C(n) => (1..=n).map(|i| 2 * i).collect(),
        WeylType::D(n) => {
            let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            d
        }
        WeylType::E(6) => vec![2, 5, 6, 8, 9, 12],
        WeylType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
        WeylType::E(_) => vec![2, 8, 12, 14, 18, 20, 24, 30],
        WeylType::F4 => vec![2, 6, 8, 12],
        WeylType::G2 => vec![2, 6],
    }
}

/// Cartan matrix A with A_ij = ⟨α_i^∨, α_j⟩ (Bourbaki numbering).
pub fn cartan_matrix(t: WeylType) -> Vec<Vec<i64>> {
    let n = t.rank() as usize;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t {
        WeylType::A(_) | WeylType::B(_) | WeylType::C(_) => (0..n - 1).for_each(|i| link(i, i + 1)),
        WeylType::D(_) => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        WeylType::E(_) => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        WeylType::F4 => (0..3).for_each(|i| link(i, i + 1)),
        WeylType::G2 => link(0, 1),
    }
    match t {
        WeylType::B(_) => a[n - 1][n - 2] = -2,
        WeylType::C(_) => a[n - 2][n - 1] = -2,
        WeylType::F4 => a[2][1] = -2,
        WeylType::G2 => a[1][0] = -3,
        _ => {}
    }
    a
}

/// Π_i (1 + q + ⋯ + q^{d_i − 1}) over the degrees of every factor.
pub fn poincare_polynomial(factors: &[WeylType]) -> HalfLaurent {
    let mut p = HalfLaurent::one();
    for &t in factors {
        for d in degrees(t) {
            p = &p * &HalfLaurent::q_poly(&vec![1; d as usize]);
        }
    }
    p
}

/// Length generating function by breadth-first search over the W-orbit of
/// ρ: for a regular dominant weight the orbit is in bijection with W and the
/// BFS distance is the length. Reflections act on weights in the basis of
/// fundamental weights by s_i(λ) = λ − λ_i·α_i, where α_i has coordinates
/// ⟨α_j^∨, α_i⟩.
pub fn poincare_by_enumeration(factors: &[WeylType], max_order: usize) -> Result<HalfLaurent> {
    let mut total = HalfLaurent::one();
    for &t in factors {
        let a = cartan_matrix(t);
        let n = a.len();
        let rho = vec![1i64; n];
        let mut dist: HashMap<Vec<i64>, usize> = HashMap::from([(rho.clone(), 0)]);
        let mut frontier = vec![rho];
        let mut counts = vec![1i64];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for lam in &frontier {
                for i in 0..n {
                    let mu: Vec<i64> = (0..n).map(|j| lam[j] - lam[i] * a[j][i]).collect();
                    if !dist.contains_key(&mu) {
                        dist.insert(mu.clone(), counts.len());
                        next.push(mu);
                    }
                }
                if dist.len() > max_order {
                    return Err(Error::Bound(format!(
                        "Weyl group of {t:?} exceeds {max_order} elements"
                    )));
                }
            }
            if !next.is_empty() {
                counts.push(next.len() as i64);
            }
            frontier = next;
        }
        total = &total * &HalfLaurent::q_poly(&counts);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> HalfLaurent {
        HalfLaurent::q_poly(coeffs)
    }

    #[test]
    fn examples() {
        assert_eq!(poincare_polynomial(&[WeylType::A(1)]), q(&[1, 1]));
        assert_eq!(
            poincare_polynomial(&WeylType::parse_product("A1xA1").unwrap()),
            q(&[1, 2, 1])
        );
        let b3 = &(&q(&[1, 1]) * &q(&[1, 1, 1, 1])) * &q(&[1; 6]);
        assert_eq!(poincare_polynomial(&[WeylType::B(3)]), b3);
    }

    #[test]
    fn product_formula_matches_enumeration() {
        let mut types = vec![WeylType::G2, WeylType::F4];
        for n in 1..=4 {
            types.push(WeylType::A(n));
        }
        for n in 2..=4 {
            types.push(WeylType::B(n));
            types.push(WeylType::C(n));
        }
        types.extend([WeylType::D(3), WeylType::D(4)]);
        for t in types {
            let brute = poincare_by_enumeration(&[t], 2000).unwrap();
            assert_eq!(brute, poincare_polynomial(&[t]), "{t:?}");
        }
    }

    #[test]
    fn orders() {
        let order = |t: WeylType| degrees(t).iter().product::<u32>();
        assert_eq!(order(WeylType::B(3)), 48);
        assert_eq!(order(WeylType::D(4)), 192);
        assert_eq!(order(WeylType::E(6)), 51840);
        assert_eq!(order(WeylType::G2), 12);
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(
            poincare_by_enumeration(&[WeylType::E(8)], 1000),
            Err(Error::Bound(_))
        ));
    }
}

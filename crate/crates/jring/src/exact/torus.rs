//! Laurent polynomials in torus coordinates z₁…zₙ with integer
//! coefficients and half-integer exponents.
//!
//! Exponent vectors are stored doubled, so z^{1/2} has stored exponent 1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusChar {
    rank: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("torus character coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("torus character coefficient overflow")
}

/// Exponent parity pattern of a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightParity {
    /// Every exponent is an integer.
    Integral,
    /// Every exponent of every coordinate is a proper half-integer.
    Half,
    Mixed,
}

impl TorusChar {
    pub fn zero(rank: usize) -> Self {
        TorusChar {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: i64) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, 1)
    }

    /// c · Π z_j^{e_j/2} for the doubled exponents `e`.
    pub fn monomial(doubled: Vec<i32>, c: i64) -> Self {
        let rank = doubled.len();
        let mut out = Self::zero(rank);
        out.add_term(doubled, c);
        out
    }

    /// z_j^{k} for an integer k.
    pub fn coord_pow(rank: usize, j: usize, k: i32) -> Self {
        let mut e = vec![0; rank];
        e[j] = 2 * k;
        Self::monomial(e, 1)
    }

    /// Rank-1 character from integer-exponent terms (exponent, coefficient).
    pub fn rank1(terms: &[(i32, i64)]) -> Self {
        let mut out = Self::zero(1);
        for &(e, c) in terms {
            out.add_term(vec![2 * e], c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<i32>, c: i64) {
        debug_assert_eq!(e.len(), self.rank);
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = checked_add(*entry, c);
        if *entry == 0 {
            // Re-borrow to remove the key just zeroed.
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// (doubled exponents, coefficient) pairs in sorted order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], i64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, doubled: &[i32]) -> i64 {
        self.terms.get(doubled).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_rank(&self, o: &Self) {
        assert_eq!(self.rank, o.rank, "torus characters of different rank");
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), checked_mul(*x, c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by an integer, when every coefficient is divisible.
    pub fn div_int(&self, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.terms.values().any(|c| c % d != 0) {
            return Err(Error::math(format!(
                "coefficients of {self} not divisible by {d}"
            )));
        }
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c / d);
        }
        Ok(out)
    }

    /// Substitution z_i ↦ z_{σ(i)}.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.rank);
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.rank];
            for (i, &x) in e.iter().enumerate() {
                f[sigma[i]] = x;
            }
            out.add_term(f, *c);
        }
        out
    }

    /// Substitution z_j ↦ z_j⁻¹ for each listed j.
    pub fn invert_coords(&self, which: &[usize]) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            for &j in which {
                f[j] = -f[j];
            }
            out.add_term(f, *c);
        }
        out
    }

    /// Substitution z_j ↦ −z_j; only defined on integral exponents in z_j.
    pub fn negate_coord(&self, j: usize) -> Result<Self> {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            if e[j] % 2 != 0 {
                return Err(Error::invalid("z ↦ −z needs integral exponents"));
            }
            let sign = if (e[j] / 2) % 2 == 0 { 1 } else { -1 };
            out.add_term(e.clone(), c * sign);
        }
        Ok(out)
    }

    pub fn parity(&self) -> WeightParity {
        let all_even = self.terms.keys().all(|e| e.iter().all(|x| x % 2 == 0));
        let all_odd = self.terms.keys().all(|e| e.iter().all(|x| x % 2 != 0));
        match (all_even, all_odd) {
            (true, _) => WeightParity::Integral,
            (false, true) => WeightParity::Half,
            _ => WeightParity::Mixed,
        }
    }

    /// Value at z = point; every exponent must be integral.
    pub fn evaluate(&self, point: &[Cyclotomic]) -> Result<Cyclotomic> {
        if point.len() != self.rank {
            return Err(Error::Mismatch(format!(
                "point of length {} for rank {}",
                point.len(),
                self.rank
            )));
        }
        if self.terms.keys().any(|e| e.iter().any(|x| x % 2 != 0)) {
            return Err(Error::invalid(
                "half-integral exponents: use evaluate_sqrt with square roots",
            ));
        }
        self.eval_with(point, 2)
    }

    /// Value when the square roots w_j = z_j^{1/2} are given.
    pub fn evaluate_sqrt(&self, roots: &[Cyclotomic]) -> Result<Cyclotomic> {
        if roots.len() != self.rank {
            return Err(Error::Mismatch("wrong number of coordinates".into()));
        }
        self.eval_with(roots, 1)
    }

    fn eval_with(&self, pt: &[Cyclotomic], div: i32) -> Result<Cyclotomic> {
        let mut total = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut m = Cyclotomic::from_int(*c);
            for (j, &x) in e.iter().enumerate() {
                if x != 0 {
                    m = m.mul_ref(&pt[j].pow((x / div) as i64)?);
                }
            }
            total = total.add_ref(&m);
        }
        Ok(total)
    }

    /// Value at the identity of the torus, i.e. the dimension.
    pub fn dimension(&self) -> i64 {
        self.terms.values().fold(0, |a, &c| checked_add(a, c))
    }
}

impl fmt::Display for TorusChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = |j: usize| {
            if self.rank == 1 {
                "z".to_string()
            } else {
                format!("z{}", j + 1)
            }
        };
        let mut first = true;
        for (e, &c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| match (x % 2 == 0, x / 2) {
                    (true, 1) => var(j),
                    (true, k) => format!("{}^{k}", var(j)),
                    (false, _) => format!("{}^{x}/2", var(j)),
                })
                .collect();
            let a = c.abs();
            let body = if mono.is_empty() {
                a.to_string()
            } else if a == 1 {
                mono.join("*")
            } else {
                format!("{a}*{}", mono.join("*"))
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add<&TorusChar> for &TorusChar {
    type Output = TorusChar;
    fn add(self, o: &TorusChar) -> TorusChar {
        self.same_rank(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub<&TorusChar> for &TorusChar {
    type Output = TorusChar;
    fn sub(self, o: &TorusChar) -> TorusChar {
        self.same_rank(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul<&TorusChar> for &TorusChar {
    type Output = TorusChar;
    fn mul(self, o: &TorusChar) -> TorusChar {
        self.same_rank(o);
        let mut out = TorusChar::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, checked_mul(*c1, *c2));
            }
        }
        out
    }
}

impl Neg for &TorusChar {
    type Output = TorusChar;
    fn neg(self) -> TorusChar {
        self.scale(-1)
    }
}

impl Add for TorusChar {
    type Output = TorusChar;
    fn add(self, o: TorusChar) -> TorusChar {
        &self + &o
    }
}

impl Sub for TorusChar {
    type Output = TorusChar;
    fn sub(self, o: TorusChar) -> TorusChar {
        &self - &o
    }
}

impl Mul for TorusChar {
    type Output = TorusChar;
    fn mul(self, o: TorusChar) -> TorusChar {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let z = TorusChar::rank1(&[(1, 1), (-1, 1)]);
        let sq = &z * &z;
        assert_eq!(sq, TorusChar::rank1(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(z.to_string(), "z^-1 + z");
        let half = TorusChar::monomial(vec![1, -1], 3);
        assert_eq!(half.to_string(), "3*z1^1/2*z2^-1/2");
        assert_eq!(half.parity(), WeightParity::Half);
        assert_eq!((&z - &z), TorusChar::zero(1));
    }

    #[test]
    fn substitutions() {
        let t = TorusChar::monomial(vec![2, 4], 1);
        assert_eq!(t.permute(&[1, 0]), TorusChar::monomial(vec![4, 2], 1));
        assert_eq!(t.invert_coords(&[0]), TorusChar::monomial(vec![-2, 4], 1));
        let z = TorusChar::rank1(&[(1, 1), (-1, 1)]);
        assert_eq!(z.negate_coord(0).unwrap(), z.scale(-1));
        assert!(TorusChar::monomial(vec![1], 1).negate_coord(0).is_err());
    }

    #[test]
    fn evaluation() {
        let z = TorusChar::rank1(&[(1, 1), (-1, 1)]);
        assert!(z.evaluate(&[Cyclotomic::zeta(4)]).unwrap().is_zero());
        assert_eq!(z.dimension(), 2);
        let half = TorusChar::monomial(vec![1], 1) + TorusChar::monomial(vec![-1], 1);
        assert!(half.evaluate(&[Cyclotomic::one()]).is_err());
        assert_eq!(
            half.evaluate_sqrt(&[Cyclotomic::one()]).unwrap(),
            Cyclotomic::from_int(2)
        );
    }
}

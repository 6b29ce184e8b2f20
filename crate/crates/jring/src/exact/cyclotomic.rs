//! Elements of the cyclotomic field Q(ζ_N).
//!
//! Stored in the power basis 1, ζ, …, ζ^{φ(N)−1} modulo the N-th cyclotomic
//! polynomial. Binary operations on different orders lift both operands to
//! the least common multiple first, so equality and arithmetic are defined
//! across orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::qpoly;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_monic_div(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn exact_monic_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    modulus: Arc<Vec<i64>>,
    coords: Vec<Rational>,
}

fn reduce(mut poly: Vec<Rational>, modulus: &[i64]) -> Vec<Rational> {
    let deg = modulus.len() - 1;
    if poly.len() > deg {
        for k in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &m) in modulus[..deg].iter().enumerate() {
                if m != 0 {
                    poly[k - deg + j] -= &c * Rational::from_integer(m.into());
                }
            }
        }
    }
    poly.resize(deg, Rational::zero());
    poly
}

impl Cyclotomic {
    fn with_order(order: u32) -> (Arc<Vec<i64>>, usize) {
        let m = cyclotomic_poly(order);
        let d = m.len() - 1;
        (Arc::new(m), d)
    }

    /// Builds an element from power-basis coordinates (length φ(order)).
    pub fn new(order: u32, coords: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("cyclotomic order must be positive"));
        }
        let (modulus, d) = Self::with_order(order);
        if coords.len() != d {
            return Err(Error::invalid(format!(
                "order {order} needs {d} coordinates, got {}",
                coords.len()
            )));
        }
        Ok(Cyclotomic {
            order,
            modulus,
            coords,
        })
    }

    /// Element of Q(ζ_order) given by an arbitrary polynomial in ζ.
    pub fn from_poly(order: u32, poly: Vec<Rational>) -> Self {
        let (modulus, _) = Self::with_order(order);
        let coords = reduce(poly, &modulus);
        Cyclotomic {
            order,
            modulus,
            coords,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            modulus: Arc::new(vec![-1, 1]),
            coords: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(n, poly)
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_m); `m` must be a multiple of the order.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.order != 0 {
            return Err(Error::invalid(format!(
                "cannot lift order {} to order {m}",
                self.order
            )));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coords.len() - 1) * step + 1];
        for (k, c) in self.coords.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(Self::from_poly(m, poly))
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }

    fn scalar(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            modulus: self.modulus.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coords = self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect();
            return Cyclotomic {
                order: self.order,
                modulus: self.modulus.clone(),
                coords,
            };
        }
        if other.order == 1 {
            let mut out = self.clone();
            out.coords[0] += &other.coords[0];
            return out;
        }
        if self.order == 1 {
            return other.add_ref(self);
        }
        let (a, b) = Self::lift_pair(self, other);
        a.add_ref(&b)
    }

    pub fn neg_ref(&self) -> Self {
        Cyclotomic {
            order: self.order,
            modulus: self.modulus.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if other.scalar() {
            return self.scale(&other.coords[0]);
        }
        if self.scalar() {
            return other.scale(&self.coords[0]);
        }
        if self.order != other.order {
            let (a, b) = Self::lift_pair(self, other);
            return a.mul_ref(&b);
        }
        let prod = qpoly::mul(&self.coords, &other.coords);
        Cyclotomic {
            order: self.order,
            modulus: self.modulus.clone(),
            coords: reduce(prod, &self.modulus),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.scalar() {
            return Ok(Self::from_rational(self.coords[0].recip())
                .lift(self.order)
                .unwrap());
        }
        let m: Vec<Rational> = self
            .modulus
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        let (g, s, _) = qpoly::ext_gcd(&self.coords, &m);
        // Φ_N is irreducible, so the gcd with any nonzero residue is 1.
        debug_assert!(g.len() == 1);
        Ok(Cyclotomic {
            order: self.order,
            modulus: self.modulus.clone(),
            coords: reduce(s, &self.modulus),
        })
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inverse()?))
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut poly = vec![Rational::zero(); n];
        for (k, c) in self.coords.iter().enumerate() {
            poly[(n - k) % n] += c;
        }
        Self::from_poly(self.order, poly)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// Smallest order in which this element is expressible among divisors of
    /// the current order. Purely cosmetic.
    pub fn simplify(&self) -> Self {
        let n = self.order;
        let mut best = self.clone();
        for d in 1..n {
            if n % d != 0 {
                continue;
            }
            // Candidate coordinates: try to pull back by solving in the
            // image of Q(ζ_d) → Q(ζ_n) via a linear solve on the power basis.
            if let Some(c) = self.pull_back(d) {
                best = c;
                break;
            }
        }
        best
    }

    fn pull_back(&self, d: u32) -> Option<Self> {
        let k = euler_phi(d) as usize;
        // Columns: images of 1, ζ_d, …, ζ_d^{k−1} in Q(ζ_n).
        let cols: Vec<Vec<Rational>> = (0..k)
            .map(|i| Self::zeta_pow(d, i as i64).lift(self.order).unwrap().coords)
            .collect();
        let rows = self.coords.len();
        let a: Vec<Vec<Rational>> = (0..rows)
            .map(|r| (0..k).map(|c| cols[c][r].clone()).collect())
            .collect();
        let x = super::linalg::solve(&a, &self.coords)?;
        let cand = Cyclotomic::new(d, x).ok()?;
        (cand == *self).then_some(cand)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coords == b.coords
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$f(rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$f(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$f(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl fmt::Display for Cyclotomic {
    /// Power-basis text, e.g. `1/2 - z3^2` for 1/2 − ζ₃².
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, k),
            };
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            let body = if mono.is_empty() {
                fmt_rational(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_rational(&abs), mono)
            };
            if terms.is_empty() {
                terms.push(if neg { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{} {body}", if neg { "-" } else { "+" }));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" "))
        }
    }
}

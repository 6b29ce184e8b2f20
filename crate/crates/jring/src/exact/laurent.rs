//! Laurent polynomials in v = q^{1/2} over the rationals.
//!
//! Exponents are kept in units of v, i.e. a q-exponent e/2 is stored as the
//! integer e. Texts and JSON speak in q.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::Cyclotomic;
use super::linalg::ExactRing;
use super::qpoly::{self, QPoly};
use super::rational::{fmt_rational, parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// c·v^k.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        HalfLaurent { terms }
    }

    /// v^k = q^{k/2}.
    pub fn v_pow(k: i64) -> Self {
        Self::monomial(k, Rational::one())
    }

    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// v + v⁻¹.
    pub fn v_plus_inverse() -> Self {
        Self::v_pow(1) + Self::v_pow(-1)
    }

    /// Builds from (v-exponent, coefficient) pairs, summing repeats.
    pub fn from_terms(it: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    /// Polynomial in q given by integer coefficients, lowest degree first.
    pub fn q_poly(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (2 * i as i64, Rational::from_integer(c.into()))),
        )
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// (v-exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of the Laurent ring are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an integer power of q.
    pub fn is_q_integral(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at v = v0 (cyclotomic or rational, nonzero).
    pub fn eval(&self, v0: &Cyclotomic) -> Result<Cyclotomic> {
        if v0.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let Some(lo) = self.min_exp() else {
            return Ok(Cyclotomic::zero());
        };
        // Horner on the shifted polynomial, then multiply by v0^lo.
        let hi = self.max_exp().unwrap();
        let mut acc = Cyclotomic::zero();
        for k in (lo..=hi).rev() {
            acc = acc.mul_ref(v0);
            let c = self.coeff(k);
            if !c.is_zero() {
                acc = acc.add_ref(&Cyclotomic::from_rational(c));
            }
        }
        Ok(acc.mul_ref(&v0.pow(lo)?))
    }

    /// Splits off the monomial factor: returns (shift, polynomial in v with
    /// nonzero constant term) with self = v^shift · poly.
    fn to_poly(&self) -> (i64, QPoly) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut p = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.terms {
            p[(k - lo) as usize] = c.clone();
        }
        (lo, p)
    }

    fn from_poly(shift: i64, p: &[Rational]) -> Self {
        Self::from_terms(
            p.iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }

    /// Exact quotient in Q[v^{±1}], or `None` if `other` does not divide.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, a) = self.to_poly();
        let (sb, b) = other.to_poly();
        let (q, r) = qpoly::divrem(&a, &b);
        r.is_empty().then(|| Self::from_poly(sa - sb, &q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic polynomial part with the monomial unit removed. Two Laurent
    /// polynomials are associates iff these agree.
    pub fn normalized(&self) -> Self {
        let (_, p) = self.to_poly();
        Self::from_poly(0, &qpoly::monic(p))
    }

    /// Greatest common divisor, normalized as in [`HalfLaurent::normalized`].
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, a) = self.to_poly();
        let (_, b) = other.to_poly();
        Self::from_poly(0, &qpoly::gcd(&a, &b))
    }

    /// What is left of `self` after removing every irreducible factor it
    /// shares with `base`. Constant (a unit) iff `self` divides some power of
    /// `base`.
    pub fn residual_factor(&self, base: &Self) -> Self {
        let mut d = self.normalized();
        loop {
            let g = d.gcd(base);
            if g.is_unit() {
                return d;
            }
            d = d.exact_div(&g).expect("gcd divides").normalized();
        }
    }

    /// Exponent substitution v ↦ v^k (k ≠ 0).
    pub fn substitute_pow(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Parses text such as `"q^-1/2 + q^1/2"`, `"1 + 2q - (1/3)*q^3"`,
    /// `"v^-1 + v"`.
    pub fn parse(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }

    /// Writes `c·(q^{1/2}+q^{-1/2})^m·rest` when a power of v + v⁻¹ divides.
    pub fn factored_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = Self::v_plus_inverse();
        let mut rest = self.clone();
        let mut m = 0;
        while let Some(q) = rest.exact_div(&f) {
            rest = q;
            m += 1;
        }
        if m == 0 {
            return self.to_string();
        }
        let base = if m == 1 {
            "(q^1/2 + q^-1/2)".to_string()
        } else {
            format!("(q^1/2 + q^-1/2)^{m}")
        };
        if rest.is_one() {
            base
        } else if rest.terms.len() == 1 && rest.terms.contains_key(&0) {
            format!("{}*{base}", fmt_rational(&rest.coeff(0)))
        } else {
            format!("({rest})*{base}")
        }
    }
}

fn exp_text(k: i64) -> String {
    if k % 2 == 0 {
        match k / 2 {
            1 => "q".into(),
            e => format!("q^{e}"),
        }
    } else {
        format!("q^{k}/2")
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if k == 0 {
                fmt_rational(&a)
            } else if a.is_one() {
                exp_text(k)
            } else if a.is_integer() {
                format!("{}*{}", fmt_rational(&a), exp_text(k))
            } else {
                format!("({})*{}", fmt_rational(&a), exp_text(k))
            };
            match (first, neg) {
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

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    /// `a` or `a/b` (unsigned).
    fn rational(&mut self) -> Result<Option<Rational>> {
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        let save = self.pos;
        if self.eat('/') {
            if let Some(d) = self.digits() {
                return parse_rational(&format!("{n}/{d}")).map(Some);
            }
            self.pos = save;
        }
        parse_rational(&n).map(Some)
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let neg = self.eat('-');
        let r = self
            .rational()?
            .ok_or_else(|| self.err("expected a number"))?;
        Ok(if neg { -r } else { r })
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.eat('(') {
            let e = self.signed_rational()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            Ok(e)
        } else if self.eat('{') {
            let e = self.signed_rational()?;
            if !self.eat('}') {
                return Err(self.err("expected '}'"));
            }
            Ok(e)
        } else {
            self.signed_rational()
        }
    }

    fn term(&mut self) -> Result<(i64, Rational)> {
        let mut coeff = Rational::one();
        let mut have_coeff = false;
        if self.eat('(') {
            coeff = self.signed_rational()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            have_coeff = true;
        } else if let Some(r) = self.rational()? {
            coeff = r;
            have_coeff = true;
        }
        if have_coeff {
            self.eat('*');
        }
        let var = match self.peek() {
            Some('q') => Some(2),
            Some('v') => Some(1),
            _ => None,
        };
        let Some(unit) = var else {
            if !have_coeff {
                return Err(self.err("expected a term"));
            }
            return Ok((0, coeff));
        };
        self.pos += 1;
        let mut e = Rational::one();
        if self.eat('^') {
            e = self.exponent()?;
        }
        let scaled = e * Rational::from_integer(unit.into());
        if !scaled.is_integer() {
            return Err(self.err("exponent must be a multiple of 1/2 in q"));
        }
        let k = i64::try_from(scaled.numer()).map_err(|_| self.err("exponent too large"))?;
        Ok((k, coeff))
    }

    fn parse(mut self) -> Result<HalfLaurent> {
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut out = HalfLaurent::zero();
        let mut sign = if self.eat('-') {
            -Rational::one()
        } else {
            self.eat('+');
            Rational::one()
        };
        loop {
            let (k, c) = self.term()?;
            out.add_term(k, c * &sign);
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
        Ok(out)
    }
}

/// `laurent_eval`: exact value of `p` at `v = v0`.
pub fn laurent_eval(p: &HalfLaurent, v0: &Cyclotomic) -> Result<Cyclotomic> {
    p.eval(v0)
}

/// Smallest `k ≤ bound` with `den | base^k` in Q[v^{±1}], or `None`.
pub fn poly_divides_power(
    den: &HalfLaurent,
    base: &HalfLaurent,
    bound: u32,
) -> Result<Option<u32>> {
    if den.is_zero() {
        return Err(Error::ZeroInput("denominator"));
    }
    if base.is_zero() {
        return Err(Error::ZeroInput("base"));
    }
    let (_, d) = den.to_poly();
    if d.len() == 1 {
        return Ok(Some(0));
    }
    let (_, b) = base.to_poly();
    let r = qpoly::divrem(&b, &d).1;
    let mut acc = vec![Rational::one()];
    for k in 1..=bound {
        acc = qpoly::divrem(&qpoly::mul(&acc, &r), &d).1;
        if qpoly::is_zero(&acc) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

macro_rules! laurent_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&HalfLaurent> for &HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, rhs: &HalfLaurent) -> HalfLaurent {
                let f: fn(&HalfLaurent, &HalfLaurent) -> HalfLaurent = $body;
                f(self, rhs)
            }
        }
        impl $tr<HalfLaurent> for HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, rhs: HalfLaurent) -> HalfLaurent {
                $tr::$m(&self, &rhs)
            }
        }
    };
}

laurent_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    for (k, c) in &b.terms {
        out.add_term(*k, c.clone());
    }
    out
});
laurent_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    for (k, c) in &b.terms {
        out.add_term(*k, -c);
    }
    out
});
laurent_binop!(Mul, mul, |a, b| {
    let mut out = HalfLaurent::zero();
    for (i, x) in &a.terms {
        for (j, y) in &b.terms {
            out.add_term(i + j, x * y);
        }
    }
    out
});

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(&-Rational::one())
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(&-Rational::one())
    }
}

impl ExactRing for HalfLaurent {
    fn zero() -> Self {
        HalfLaurent::zero()
    }
    fn one() -> Self {
        HalfLaurent::one()
    }
    fn is_zero(&self) -> bool {
        HalfLaurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        HalfLaurent::exact_div(self, o)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(i64),
    Text(String),
}

impl Serialize for HalfLaurent {
    /// List of `[exponent numerator, exponent denominator, coefficient]`
    /// with the exponent in q; coefficients are integers or `"a/b"` strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<(i64, i64, JsonCoeff)> = self
            .terms
            .iter()
            .map(|(&k, c)| {
                let (num, den) = if k % 2 == 0 { (k / 2, 1) } else { (k, 2) };
                let coeff = match super::rational::to_i64(c) {
                    Some(n) => JsonCoeff::Int(n),
                    None => JsonCoeff::Text(fmt_rational(c)),
                };
                (num, den, coeff)
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<(i64, i64, JsonCoeff)> = Vec::deserialize(d)?;
        let mut out = HalfLaurent::zero();
        for (num, den, c) in rows {
            let k = match den {
                1 => 2 * num,
                2 => num,
                _ => return Err(D::Error::custom("exponent denominator must be 1 or 2")),
            };
            let c = match c {
                JsonCoeff::Int(n) => Rational::from_integer(n.into()),
                JsonCoeff::Text(t) => parse_rational(&t).map_err(D::Error::custom)?,
            };
            out.add_term(k, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn eval_examples() {
        let p = HalfLaurent::v_plus_inverse();
        assert_eq!(
            laurent_eval(&p, &Cyclotomic::one()).unwrap(),
            Cyclotomic::from_int(2)
        );
        assert!(laurent_eval(&p, &Cyclotomic::zeta(4)).unwrap().is_zero());
        let q = HalfLaurent::q();
        assert_eq!(
            laurent_eval(&q, &Cyclotomic::from_int(2)).unwrap(),
            Cyclotomic::from_int(4)
        );
        assert_eq!(laurent_eval(&p, &Cyclotomic::zero()), Err(Error::ZeroPoint));
        // Negative exponents through the inverse.
        let r = HalfLaurent::v_pow(-2);
        assert_eq!(
            laurent_eval(&r, &Cyclotomic::from_int(2)).unwrap(),
            Cyclotomic::from_rational(rat(1, 4))
        );
    }

    #[test]
    fn divides_power_examples() {
        let one_q = HalfLaurent::q_poly(&[1, 1]);
        let sq = &one_q * &one_q;
        let cyc3 = HalfLaurent::q_poly(&[1, 1, 1]);
        assert_eq!(poly_divides_power(&one_q, &one_q, 16).unwrap(), Some(1));
        assert_eq!(poly_divides_power(&sq, &one_q, 16).unwrap(), Some(2));
        assert_eq!(poly_divides_power(&cyc3, &one_q, 16).unwrap(), None);
        assert_eq!(
            poly_divides_power(&HalfLaurent::v_pow(-3), &one_q, 16).unwrap(),
            Some(0)
        );
        assert!(poly_divides_power(&HalfLaurent::zero(), &one_q, 4).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = HalfLaurent::v_plus_inverse();
        assert_eq!(p.to_string(), "q^-1/2 + q^1/2");
        assert_eq!(HalfLaurent::parse("q^-1/2 + q^1/2").unwrap(), p);
        assert_eq!(HalfLaurent::parse("q^{1/2}+q^{-1/2}").unwrap(), p);
        assert_eq!(HalfLaurent::parse("v + v^-1").unwrap(), p);
        let r = HalfLaurent::parse("1 + 2q - (1/3)*q^3").unwrap();
        assert_eq!(r.coeff(2), int(2));
        assert_eq!(r.coeff(6), rat(-1, 3));
        assert_eq!(HalfLaurent::parse(&r.to_string()).unwrap(), r);
        assert!(HalfLaurent::parse("q^1/3").is_err());
        assert!(HalfLaurent::parse("").is_err());
        assert!(HalfLaurent::parse("1 + x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = HalfLaurent::parse("q^-1/2 + 2q - (1/2)*q^3/2").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,2,1],[1,1,2],[3,2,"-1/2"]]"#);
        let back: HalfLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn factored_form() {
        let p = HalfLaurent::v_plus_inverse().pow(2);
        assert_eq!(p.factored_text(), "(q^1/2 + q^-1/2)^2");
        assert_eq!(p.scale(&int(-2)).factored_text(), "-2*(q^1/2 + q^-1/2)^2");
    }

    #[test]
    fn residual_factor_isolates_foreign_roots() {
        let base = HalfLaurent::q_poly(&[1, 1]);
        let foreign = HalfLaurent::q_poly(&[1, 1, 1]);
        let d = &(&base * &base) * &foreign;
        assert_eq!(d.residual_factor(&base), foreign.normalized());
        assert!(base.pow(3).residual_factor(&base).is_unit());
    }
}

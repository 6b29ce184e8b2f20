//! Rank-one characters: SL₂ decomposition and the odd submodule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, TorusChar};

/// Character z^k + z^{k−2} + … + z^{−k} of V(k).
pub fn sl2_irrep(k: u32) -> TorusChar {
    let k = k as i32;
    let terms: Vec<(i32, i64)> = (0..=k).map(|i| (k - 2 * i, 1)).collect();
    TorusChar::rank1(&terms)
}

fn check_symmetric(c: &TorusChar) -> Result<()> {
    if c.rank() != 1 {
        return Err(Error::Mismatch(format!(
            "rank {} character, expected rank 1",
            c.rank()
        )));
    }
    if c.terms().any(|(e, _)| e[0] % 2 != 0) {
        return Err(Error::invalid("half-integral exponent in an SL₂ character"));
    }
    if c.invert_coords(&[0]) != *c {
        return Err(Error::invalid(format!(
            "{c} is not invariant under z ↦ z⁻¹"
        )));
    }
    Ok(())
}

/// Highest weight ↦ multiplicity, by repeated removal of the top term.
pub fn decompose_sl2(c: &TorusChar) -> Result<BTreeMap<u32, i64>> {
    check_symmetric(c)?;
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while let Some((e, m)) = rest.terms().last().map(|(e, m)| (e[0], m)) {
        // Symmetry leaves a nonnegative top exponent.
        let k = (e / 2) as u32;
        out.insert(k, m);
        rest = &rest - &sl2_irrep(k).scale(m);
    }
    Ok(out)
}

/// Whether the character lies in the span of odd highest weights. Also
/// asserts agreement with the criterion c(−z) = −c(z).
pub fn in_odd_module(c: &TorusChar) -> Result<bool> {
    let odd = decompose_sl2(c)?.keys().all(|k| k % 2 == 1);
    let anti = c.negate_coord(0)? == c.scale(-1);
    if odd != anti {
        return Err(Error::math(format!("odd-module criteria disagree on {c}")));
    }
    Ok(odd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingCertificate {
    pub point: Cyclotomic,
    pub value: Cyclotomic,
}

/// Exact evaluation at z = ζ₄ of an element of the odd module; the value
/// is always 0.
pub fn odd_vanishing_locus(c: &TorusChar) -> Result<VanishingCertificate> {
    if !in_odd_module(c)? {
        return Err(Error::invalid(format!("{c} is not in the odd module")));
    }
    let point = Cyclotomic::zeta(4);
    let value = c.evaluate(std::slice::from_ref(&point))?;
    if !value.is_zero() {
        return Err(Error::math(format!("{c} does not vanish at ζ₄")));
    }
    Ok(VanishingCertificate { point, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(terms: &[(i32, i64)]) -> TorusChar {
        TorusChar::rank1(terms)
    }

    #[test]
    fn decompositions() {
        let d = decompose_sl2(&z(&[(2, 1), (0, 1), (-2, 1)])).unwrap();
        assert_eq!(d, BTreeMap::from([(2, 1)]));
        let v1 = sl2_irrep(1);
        let d = decompose_sl2(&(&v1 * &v1)).unwrap();
        assert_eq!(d, BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(decompose_sl2(&v1).unwrap(), BTreeMap::from([(1, 1)]));
        assert!(decompose_sl2(&z(&[(1, 1)])).is_err());
        assert!(decompose_sl2(&TorusChar::zero(1)).unwrap().is_empty());
    }

    #[test]
    fn odd_module() {
        assert!(in_odd_module(&sl2_irrep(1)).unwrap());
        assert!(!in_odd_module(&sl2_irrep(2)).unwrap());
        let c = z(&[(3, 1), (1, 1), (-1, 1), (-3, 1)]);
        assert!(in_odd_module(&c).unwrap());
        assert_eq!(decompose_sl2(&c).unwrap(), BTreeMap::from([(3, 1)]));
        // Mixed parity is neither.
        let mixed = &sl2_irrep(1) + &sl2_irrep(2);
        assert!(!in_odd_module(&mixed).unwrap());
    }

    #[test]
    fn vanishing_at_zeta4() {
        for k in [1, 3, 5] {
            let cert = odd_vanishing_locus(&sl2_irrep(k)).unwrap();
            assert!(cert.value.is_zero());
        }
        assert!(odd_vanishing_locus(&sl2_irrep(2)).is_err());
        let v2 = sl2_irrep(2).evaluate(&[Cyclotomic::zeta(4)]).unwrap();
        assert_eq!(v2, Cyclotomic::from_int(-1));
    }
}

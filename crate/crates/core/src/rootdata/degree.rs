//! Degree polynomials from multiplicities in the virtual characters `R_w^theta`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{RootDataError, RootDatum};
use crate::cyclotomic::Rational;
use crate::qpoly::QPoly;

/// Multiplicities keyed by (element index, character coordinates).
pub type MultiplicityTable = BTreeMap<(usize, Vec<u64>), i64>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeInvariants {
    pub polynomial: QPoly,
    /// Largest power of `q` dividing the polynomial.
    pub a: usize,
    /// Degree.
    pub big_a: usize,
    /// Smallest positive integer clearing all denominators.
    pub n: u64,
    /// `D = (q^A + ... ± q^a) / n` with integral middle coefficients.
    pub shape_ok: bool,
}

/// `(1/|W|) sum_{w,theta} (-1)^l(w) m(w,theta) q^-N |G| / |T_w|`.
pub fn degree_polynomial(mults: &MultiplicityTable, d: &RootDatum) -> Result<DegreeInvariants, RootDataError> {
    let g = d.group_order_poly();
    let qn = QPoly::monomial(d.num_positive_roots(), Rational::one());
    let mut per_w = vec![0i64; d.elements().len()];
    for ((w, _), m) in mults {
        *per_w.get_mut(*w).ok_or(RootDataError::BadElement(*w))? += m;
    }
    let mut total = QPoly::zero();
    for (w, &m) in per_w.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let sign = if d.element(w).length.is_multiple_of(2) { 1 } else { -1 };
        let term = g.divexact(&d.torus_order_poly(w))?.divexact(&qn)?;
        total = &total + &term.scale(&Rational::from_integer((sign * m).into()));
    }
    let poly = total.scale(&Rational::new(BigInt::one(), (d.elements().len() as i64).into()));
    if poly.is_zero() {
        return Err(RootDataError::ZeroDegree);
    }
    let a = poly.valuation(&QPoly::q())?;
    let big_a = poly.degree().expect("nonzero");
    let n_big = poly.denominator_clearing()?;
    let n = u64::try_from(n_big.clone()).map_err(|_| RootDataError::Inconsistent("denominator too large".into()))?;
    let scaled = poly.scale(&Rational::from_integer(n_big));
    let shape_ok = scaled.is_integral() && scaled.coeff(big_a) == Rational::one() && scaled.coeff(a).abs() == Rational::one();
    Ok(DegreeInvariants { polynomial: poly, a, big_a, n, shape_ok })
}

impl DegreeInvariants {
    /// Whether `(q - 1)^k` divides the polynomial.
    pub fn divisible_by_q_minus_one_power(&self, k: u32) -> bool {
        QPoly::q_pow_minus_one(1).pow(k).divides(&self.polynomial)
    }

    pub fn is_nonzero_constant_term(&self) -> bool {
        !self.polynomial.coeff(0).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::super::BuiltinGroup;
    use super::*;

    fn table(entries: &[(usize, u64, i64)]) -> MultiplicityTable {
        entries.iter().map(|&(w, c, m)| ((w, vec![c]), m)).collect()
    }

    #[test]
    fn sl2_examples() {
        let d = RootDatum::builtin(BuiltinGroup::SL2);
        let triv = degree_polynomial(&table(&[(0, 0, 1), (1, 0, 1)]), &d).unwrap();
        assert_eq!(triv.polynomial, QPoly::one());
        assert_eq!((triv.a, triv.big_a, triv.n), (0, 0, 1));
        let st = degree_polynomial(&table(&[(0, 0, 1), (1, 0, -1)]), &d).unwrap();
        assert_eq!(st.polynomial, QPoly::q());
        assert_eq!((st.a, st.big_a, st.n), (1, 1, 1));
        // a half-degree principal-series constituent: only in R_1^theta0 for the order-two theta0
        let half = degree_polynomial(&table(&[(0, 3, 1)]), &d).unwrap();
        assert_eq!(half.polynomial, QPoly::from_ints(&[1, 1]).scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(half.n, 2);
        assert!(half.shape_ok && st.shape_ok && triv.shape_ok);
    }

    #[test]
    fn zero_is_rejected() {
        let d = RootDatum::builtin(BuiltinGroup::SL2);
        assert!(matches!(degree_polynomial(&table(&[(0, 1, 1), (0, 2, -1)]), &d), Err(RootDataError::ZeroDegree)));
    }
}

//! Order polynomials of the group and of its maximal tori.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{RootDataError, RootDatum};
use crate::cyclotomic::Rational;
use crate::intmat::{charpoly_rational, IntMat};
use crate::qpoly::{QPoly, QRatFun};

#[derive(Clone, Debug, Serialize)]
pub struct TorusOrder {
    pub element: String,
    pub length: usize,
    pub order: QPoly,
}

/// Everything `rootdata orders` reports.
#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub group: String,
    pub cartan_type: String,
    pub lattice_rank: usize,
    pub positive_roots: usize,
    pub group_order: QPoly,
    pub tori: Vec<TorusOrder>,
    pub steinberg_identity: bool,
    pub t1_factorization: bool,
    pub valuation_equals_n: bool,
    pub tori_divide_group_order: bool,
}

impl RootDatum {
    /// `det(q - phi0^-1 w)` on `X`.
    pub fn torus_order_poly(&self, idx: usize) -> QPoly {
        self.phi0_inv.mul(&self.elements[idx].matrix).charpoly()
    }

    /// `q^N |T_1| sum_{w in W^sigma} q^l(w)`.
    pub fn group_order_poly(&self) -> QPoly {
        let fixed = self.sigma_fixed();
        let mut lengths = QPoly::zero();
        for i in fixed {
            lengths = &lengths + &QPoly::monomial(self.elements[i].length, Rational::one());
        }
        let qn = QPoly::monomial(self.num_positive_roots(), Rational::one());
        &(&qn * &self.torus_order_poly(0)) * &lengths
    }

    /// `|G| = q^{2N} ((1/|W|) sum_w 1/|T_w|)^-1` as rational functions.
    pub fn steinberg_identity_check(&self) -> bool {
        let mut sum = QRatFun::from_poly(QPoly::zero());
        for i in 0..self.elements.len() {
            let t = QRatFun::new(QPoly::one(), self.torus_order_poly(i)).expect("torus order is nonzero");
            sum = sum.add(&t);
        }
        let avg = sum.scale(&Rational::new(1.into(), (self.elements.len() as i64).into()));
        let Ok(inv) = avg.inv() else { return false };
        let q2n = QRatFun::from_poly(QPoly::monomial(2 * self.num_positive_roots(), Rational::one()));
        q2n.mul(&inv).as_poly() == Some(self.group_order_poly())
    }

    /// Characteristic polynomial of `phi0^-1` on the `W`-invariants of `X`.
    pub fn central_torus_order(&self) -> Result<QPoly, RootDataError> {
        let r = self.rank();
        // stack (s_i - 1) and take the rational kernel
        let mut rows = Vec::new();
        for s in &self.generators {
            rows.extend(s.sub(&IntMat::identity(r)).to_rows());
        }
        let basis = if rows.is_empty() {
            (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
        } else {
            IntMat::from_rows(&rows).kernel()
        };
        if basis.len() != self.centre_dim {
            return Err(RootDataError::Inconsistent(format!(
                "W-invariants of X have rank {}, expected {}",
                basis.len(),
                self.centre_dim
            )));
        }
        let k = basis.len();
        if k == 0 {
            return Ok(QPoly::one());
        }
        // matrix C with phi0^-1 B = B C, solved column by column
        let b: Vec<Vec<Rational>> = (0..r).map(|i| (0..k).map(|j| Rational::from_integer(basis[j][i].into())).collect()).collect();
        let mut c = vec![vec![Rational::zero(); k]; k];
        for j in 0..k {
            let target: Vec<Rational> = self.phi0_inv.apply(&basis[j]).into_iter().map(|x| Rational::from_integer(x.into())).collect();
            let sol = solve_full_column_rank(&b, &target)
                .ok_or_else(|| RootDataError::Inconsistent("phi0 does not preserve the W-invariants".into()))?;
            for i in 0..k {
                c[i][j] = sol[i].clone();
            }
        }
        Ok(charpoly_rational(&c))
    }

    /// `|T_1| = |Z°| prod over sigma-orbits O of (q^|O| - 1)`.
    pub fn t1_factorization_check(&self) -> bool {
        let Ok(z) = self.central_torus_order() else { return false };
        let all: Vec<usize> = (0..self.weyl.rank()).collect();
        let prod = self
            .weyl
            .sigma_orbits(&all)
            .iter()
            .fold(QPoly::one(), |acc, o| &acc * &QPoly::q_pow_minus_one(o.len()));
        &z * &prod == self.torus_order_poly(0)
    }

    pub fn order_report(&self) -> OrderReport {
        let g = self.group_order_poly();
        let tori: Vec<TorusOrder> = (0..self.elements.len())
            .map(|i| TorusOrder { element: self.element_label(i), length: self.elements[i].length, order: self.torus_order_poly(i) })
            .collect();
        let divides = tori.iter().all(|t| t.order.divides(&g));
        OrderReport {
            group: self.name.clone(),
            cartan_type: self.cartan_type().map(|t| t.to_string()).unwrap_or_default(),
            lattice_rank: self.rank(),
            positive_roots: self.num_positive_roots(),
            valuation_equals_n: g.valuation(&QPoly::q()).ok() == Some(self.num_positive_roots()),
            group_order: g,
            tori,
            steinberg_identity: self.steinberg_identity_check(),
            t1_factorization: self.t1_factorization_check(),
            tori_divide_group_order: divides,
        }
    }
}

/// Solves `B x = t` for `B` with independent columns, if a solution exists.
fn solve_full_column_rank(b: &[Vec<Rational>], t: &[Rational]) -> Option<Vec<Rational>> {
    let rows = b.len();
    let k = b.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = b.iter().zip(t).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut piv_row = 0;
    for col in 0..k {
        let p = (piv_row..rows).find(|&i| !a[i][col].is_zero())?;
        a.swap(piv_row, p);
        let inv = a[piv_row][col].recip();
        for x in a[piv_row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != piv_row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=k {
                    let d = &f * &a[piv_row][j];
                    a[i][j] -= d;
                }
            }
        }
        piv_row += 1;
    }
    if a[piv_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| a[i][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::super::BuiltinGroup;
    use super::*;

    fn d(g: BuiltinGroup) -> RootDatum {
        RootDatum::builtin(g)
    }

    #[test]
    fn sl2_orders() {
        let sl2 = d(BuiltinGroup::SL2);
        assert_eq!(sl2.torus_order_poly(0), QPoly::from_ints(&[-1, 1]));
        assert_eq!(sl2.torus_order_poly(1), QPoly::from_ints(&[1, 1]));
        assert_eq!(sl2.group_order_poly(), QPoly::from_ints(&[0, -1, 0, 1]));
    }

    #[test]
    fn gl2_and_sp4_orders() {
        let gl2 = d(BuiltinGroup::GL2);
        assert_eq!(gl2.torus_order_poly(1), QPoly::from_ints(&[-1, 0, 1]));
        let expect = &(&QPoly::q() * &QPoly::q_pow_minus_one(1)) * &QPoly::q_pow_minus_one(2);
        assert_eq!(gl2.group_order_poly(), expect);
        let sp4 = d(BuiltinGroup::Sp4);
        let expect = &(&QPoly::monomial(4, Rational::one()) * &QPoly::q_pow_minus_one(2)) * &QPoly::q_pow_minus_one(4);
        assert_eq!(sp4.group_order_poly(), expect);
    }

    #[test]
    fn su3_order() {
        let su3 = d(BuiltinGroup::SU3);
        assert_eq!(su3.torus_order_poly(0), QPoly::from_ints(&[-1, 0, 1]));
        // q^3 (q^2 - 1)(q^3 + 1)
        let expect = &(&QPoly::monomial(3, Rational::one()) * &QPoly::from_ints(&[-1, 0, 1])) * &QPoly::from_ints(&[1, 0, 0, 1]);
        assert_eq!(su3.group_order_poly(), expect);
    }

    #[test]
    fn identities_hold_for_all_builtins() {
        for g in BuiltinGroup::ALL {
            let r = d(g).order_report();
            assert!(r.steinberg_identity, "{g}");
            assert!(r.t1_factorization, "{g}");
            assert!(r.valuation_equals_n, "{g}");
            assert!(r.tori_divide_group_order, "{g}");
            assert_eq!(r.group_order.degree(), Some(2 * r.positive_roots + r.lattice_rank), "{g}");
            for t in &r.tori {
                assert_eq!(t.order.degree(), Some(r.lattice_rank));
                assert_eq!(t.order.leading(), Some(&Rational::one()));
            }
        }
    }

    #[test]
    fn central_torus() {
        assert_eq!(d(BuiltinGroup::GL3).central_torus_order().unwrap(), QPoly::from_ints(&[-1, 1]));
        assert_eq!(d(BuiltinGroup::SU3).central_torus_order().unwrap(), QPoly::one());
    }
}

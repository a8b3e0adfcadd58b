//! Finite tori `T0[w]`, their character groups `X / (F' - 1) X`, and the sets
//! `Z_{lambda,n}` linking lattice data to pairs `(w, theta)`.

use std::collections::HashSet;

use serde::Serialize;

use super::{RootDataError, RootDatum};
use crate::intmat::{smith_normal_form, unimodular_inverse, IntMat};
use crate::numtheory::prime_power;

/// The character group of `T0[w]` as a product of cyclic groups.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteTorusStructure {
    pub element: usize,
    pub label: String,
    pub q: u64,
    /// `F' = q phi0 w^-1` on `X`.
    pub frobenius: IntMat,
    /// Nontrivial invariant factors, each dividing the next.
    pub factors: Vec<u64>,
    /// Lattice vectors whose images generate the cyclic factors.
    pub generators: Vec<Vec<i64>>,
    /// Rows of the Smith transform giving coordinates modulo `factors`.
    coordinate_rows: Vec<Vec<i128>>,
}

impl FiniteTorusStructure {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Coordinates of the image of `lambda` in `X / (F' - 1) X`.
    pub fn theta_from_lambda(&self, lambda: &[i64]) -> Vec<u64> {
        self.coordinate_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, &d)| {
                let v: i128 = row.iter().zip(lambda).map(|(a, &b)| a * b as i128).sum();
                v.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    /// A lattice vector with the given coordinates.
    pub fn lambda_from_theta(&self, coords: &[u64]) -> Vec<i64> {
        let r = self.frobenius.rows();
        let mut v = vec![0i64; r];
        for (g, &c) in self.generators.iter().zip(coords) {
            for (x, y) in v.iter_mut().zip(g) {
                *x += c as i64 * y;
            }
        }
        v
    }

    /// All characters, in lexicographic coordinate order.
    pub fn characters(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &d in &self.factors {
            out = out.into_iter().flat_map(|p| (0..d).map(move |c| [p.clone(), vec![c]].concat())).collect();
        }
        out
    }

    /// Order of the character with the given coordinates.
    pub fn character_order(&self, coords: &[u64]) -> u64 {
        coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &d)| d / num_integer::gcd(c, d))
            .fold(1, num_integer::lcm)
    }
}

/// A member of `Z_{lambda,n}` with its witness `lambda_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZEntry {
    pub element: usize,
    pub label: String,
    pub witness: Vec<i64>,
}

impl RootDatum {
    pub fn finite_torus_structure(&self, idx: usize, q: u64) -> Result<FiniteTorusStructure, RootDataError> {
        if q < 2 {
            return Err(RootDataError::NotPrimePower(q));
        }
        if idx >= self.elements.len() {
            return Err(RootDataError::BadElement(idx));
        }
        let w_inv = &self.elements[self.inverse(idx)].matrix;
        let frob = self.phi0.mul(w_inv).scale(q as i64);
        let r = self.rank();
        let snf = smith_normal_form(&frob.sub(&IntMat::identity(r)));
        let u_inv = unimodular_inverse(&snf.u).expect("Smith transform is unimodular");
        let mut factors = Vec::new();
        let mut generators = Vec::new();
        let mut coordinate_rows = Vec::new();
        for (i, &d) in snf.diag.iter().enumerate() {
            if d == 0 {
                return Err(RootDataError::Inconsistent(format!("F' - 1 is singular for {}", self.element_label(idx))));
            }
            if d != 1 {
                factors.push(d as u64);
                coordinate_rows.push(snf.u[i].clone());
                generators.push(u_inv.iter().map(|row| row[i] as i64).collect());
            }
        }
        Ok(FiniteTorusStructure { element: idx, label: self.element_label(idx), q, frobenius: frob, factors, generators, coordinate_rows })
    }

    /// `w` belongs to `Z_{lambda,n}` when `q phi0(lambda) - w(lambda)` lies in `n X`.
    pub fn compute_z(&self, lambda: &[i64], n: u64, q: u64) -> Result<Vec<ZEntry>, RootDataError> {
        let (p, _) = prime_power(q).ok_or(RootDataError::NotPrimePower(q))?;
        if n == 0 || n.is_multiple_of(p) {
            return Err(RootDataError::CharacteristicDividesN { n, p });
        }
        if lambda.len() != self.rank() {
            return Err(RootDataError::BadVector { got: lambda.len(), expected: self.rank() });
        }
        let fl: Vec<i64> = self.phi0.apply(lambda).iter().map(|x| x * q as i64).collect();
        let n = n as i64;
        Ok(self
            .elements
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let v: Vec<i64> = fl.iter().zip(e.matrix.apply(lambda)).map(|(a, b)| a - b).collect();
                v.iter().all(|x| x % n == 0).then(|| ZEntry { element: i, label: self.element_label(i), witness: v.iter().map(|x| x / n).collect() })
            })
            .collect())
    }

    /// Indices of the reflections (conjugates of simple reflections).
    pub fn reflections(&self) -> Vec<usize> {
        let mut out = HashSet::new();
        for x in 0..self.elements.len() {
            for i in 0..self.weyl.rank() {
                let s = self.index_of(self.weyl.simple_reflection(i)).expect("generator");
                out.insert(self.mul(self.mul(x, s), self.inverse(x)));
            }
        }
        let mut v: Vec<usize> = out.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Whether a set of elements is `x W'` for a subgroup `W'` generated by reflections.
    pub fn is_reflection_coset(&self, set: &[usize]) -> bool {
        let Some(&x) = set.iter().min_by_key(|&&i| self.elements[i].length) else { return false };
        let xi = self.inverse(x);
        let h: HashSet<usize> = set.iter().map(|&z| self.mul(xi, z)).collect();
        let closed = h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.mul(a, b))));
        if !closed {
            return false;
        }
        let refl: Vec<usize> = self.reflections().into_iter().filter(|r| h.contains(r)).collect();
        let mut gen: HashSet<usize> = HashSet::from([0]);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &r in &refl {
                let u = self.mul(v, r);
                if gen.insert(u) {
                    stack.push(u);
                }
            }
        }
        gen == h
    }
}

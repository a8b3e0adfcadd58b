//! Root data: a character lattice `X`, the Weyl group acting on it by integer
//! matrices, and the finite-order automorphism `phi0` that, scaled by `q`,
//! gives the Frobenius action on `X`.

mod degree;
mod orders;
mod torus;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::intmat::IntMat;
use crate::weyl::{CartanType, WeylElement, WeylGroup};

pub use degree::{degree_polynomial, DegreeInvariants, MultiplicityTable};
pub use orders::{OrderReport, TorusOrder};
pub use torus::{FiniteTorusStructure, ZEntry};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unknown group {0:?}; expected one of SL2, GL2, PGL2, SL3, GL3, Sp4, SU3")]
    UnknownGroup(String),
    #[error("inconsistent root datum: {0}")]
    Inconsistent(String),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("n = {n} is divisible by the characteristic {p}")]
    CharacteristicDividesN { n: u64, p: u64 },
    #[error("lattice vector has length {got}, expected {expected}")]
    BadVector { got: usize, expected: usize },
    #[error("element index {0} out of range")]
    BadElement(usize),
    #[error("degree polynomial vanishes; the multiplicities are inconsistent")]
    ZeroDegree,
    #[error("polynomial arithmetic failed: {0}")]
    Poly(#[from] crate::qpoly::PolyError),
}

/// The groups with hardcoded root data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BuiltinGroup {
    SL2,
    GL2,
    PGL2,
    SL3,
    GL3,
    Sp4,
    SU3,
}

impl BuiltinGroup {
    pub const ALL: [BuiltinGroup; 7] = [
        BuiltinGroup::SL2,
        BuiltinGroup::GL2,
        BuiltinGroup::PGL2,
        BuiltinGroup::SL3,
        BuiltinGroup::GL3,
        BuiltinGroup::Sp4,
        BuiltinGroup::SU3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGroup::SL2 => "SL2",
            BuiltinGroup::GL2 => "GL2",
            BuiltinGroup::PGL2 => "PGL2",
            BuiltinGroup::SL3 => "SL3",
            BuiltinGroup::GL3 => "GL3",
            BuiltinGroup::Sp4 => "Sp4",
            BuiltinGroup::SU3 => "SU3",
        }
    }
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinGroup {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinGroup::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| RootDataError::UnknownGroup(s.to_string()))
    }
}

/// A Weyl group element together with its matrix on `X`.
#[derive(Clone, Debug)]
pub struct DatumElement {
    pub element: WeylElement,
    pub matrix: IntMat,
    pub length: usize,
    /// A reduced word (0-based simple reflection indices).
    pub word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    weyl: WeylGroup,
    generators: Vec<IntMat>,
    phi0: IntMat,
    phi0_inv: IntMat,
    connected_centre: bool,
    centre_dim: usize,
    elements: Vec<DatumElement>,
    index: HashMap<u64, usize>,
}

fn m(rows: &[&[i64]]) -> IntMat {
    IntMat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn transposition(n: usize, i: usize) -> IntMat {
    let mut p = IntMat::identity(n);
    p[(i, i)] = 0;
    p[(i + 1, i + 1)] = 0;
    p[(i, i + 1)] = 1;
    p[(i + 1, i)] = 1;
    p
}

impl RootDatum {
    pub fn builtin(g: BuiltinGroup) -> RootDatum {
        let t = |s: &str| s.parse::<CartanType>().expect("valid type");
        // (type, generator matrices, phi0, connected centre, dim of central torus)
        let (ct, gens, phi0, conn, zdim) = match g {
            BuiltinGroup::SL2 | BuiltinGroup::PGL2 => (t("A1"), vec![m(&[&[-1]])], IntMat::identity(1), g == BuiltinGroup::PGL2, 0),
            BuiltinGroup::GL2 => (t("A1"), vec![transposition(2, 0)], IntMat::identity(2), true, 1),
            BuiltinGroup::SL3 => {
                // weight basis; columns are images of the fundamental weights
                (t("A2"), vec![m(&[&[-1, 0], &[1, 1]]), m(&[&[1, 1], &[0, -1]])], IntMat::identity(2), false, 0)
            }
            BuiltinGroup::GL3 => (t("A2"), vec![transposition(3, 0), transposition(3, 1)], IntMat::identity(3), true, 1),
            // basis e1, e2 with simple roots e1 - e2 and 2 e2
            BuiltinGroup::Sp4 => (t("C2"), vec![transposition(2, 0), m(&[&[1, 0], &[0, -1]])], IntMat::identity(2), false, 0),
            BuiltinGroup::SU3 => (
                t("2A2"),
                vec![m(&[&[-1, 0], &[1, 1]]), m(&[&[1, 1], &[0, -1]])],
                m(&[&[0, 1], &[1, 0]]),
                false,
                0,
            ),
        };
        RootDatum::new(g.name(), WeylGroup::new(ct), gens, phi0, conn, zdim).expect("built-in data are consistent")
    }

    /// Assembles a datum, enumerating `W` alongside its matrices.
    pub fn new(
        name: &str,
        weyl: WeylGroup,
        generators: Vec<IntMat>,
        phi0: IntMat,
        connected_centre: bool,
        centre_dim: usize,
    ) -> Result<RootDatum, RootDataError> {
        let r = phi0.rows();
        let bad = |s: String| Err(RootDataError::Inconsistent(s));
        if generators.len() != weyl.rank() || generators.iter().any(|g| g.rows() != r || g.cols() != r) {
            return bad("generator count or size".into());
        }
        for (i, s) in generators.iter().enumerate() {
            if !s.mul(s).is_identity() {
                return bad(format!("generator {i} is not an involution"));
            }
        }
        let Some(phi0_inv) = phi0.finite_order_inverse() else {
            return bad("phi0 does not have finite order".into());
        };
        let sn = weyl.sigma_nodes().to_vec();
        for (i, s) in generators.iter().enumerate() {
            // w o phi0 = phi0 o sigma(w) on generators
            let lhs = s.mul(&phi0);
            if lhs != phi0.mul(&generators[sn[i]]) && lhs != phi0.mul(&generators[inverse_perm(&sn)[i]]) {
                return bad(format!("phi0 is not compatible with generator {i}"));
            }
        }
        let mut elements = vec![DatumElement { element: weyl.identity(), matrix: IntMat::identity(r), length: 0, word: vec![] }];
        let mut index = HashMap::new();
        index.insert(weyl.key(&weyl.identity()), 0);
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            for (i, s) in generators.iter().enumerate() {
                let w = cur.element.mul(weyl.simple_reflection(i));
                let mat = cur.matrix.mul(s);
                let k = weyl.key(&w);
                match index.get(&k) {
                    Some(&j) => {
                        if elements[j].matrix != mat {
                            return bad("matrices violate the Coxeter relations".into());
                        }
                    }
                    None => {
                        index.insert(k, elements.len());
                        let mut word = cur.word.clone();
                        word.push(i);
                        let length = weyl.length(&w);
                        elements.push(DatumElement { element: w, matrix: mat, length, word });
                    }
                }
            }
            head += 1;
        }
        if elements.len() as u128 != weyl.order() {
            return bad("element count differs from |W|".into());
        }
        Ok(RootDatum { name: name.to_string(), weyl, generators, phi0, phi0_inv, connected_centre, centre_dim, elements, index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.weyl.cartan_type()
    }

    /// Rank of the lattice `X`.
    pub fn rank(&self) -> usize {
        self.phi0.rows()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.weyl.num_positive_roots()
    }

    pub fn generators(&self) -> &[IntMat] {
        &self.generators
    }

    pub fn phi0(&self) -> &IntMat {
        &self.phi0
    }

    pub fn phi0_inverse(&self) -> &IntMat {
        &self.phi0_inv
    }

    pub fn has_connected_centre(&self) -> bool {
        self.connected_centre
    }

    pub fn centre_dim(&self) -> usize {
        self.centre_dim
    }

    /// All elements of `W`, identity first, in breadth-first order.
    pub fn elements(&self) -> &[DatumElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &DatumElement {
        &self.elements[idx]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&self.weyl.key(w)).copied()
    }

    /// Indices of elements fixed by the diagram automorphism.
    pub fn sigma_fixed(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.weyl.apply_sigma(&self.elements[i].element) == self.elements[i].element)
            .collect()
    }

    /// `sigma(w)` as an element index.
    pub fn sigma_of(&self, idx: usize) -> usize {
        self.index_of(&self.weyl.apply_sigma(&self.elements[idx].element)).expect("W is closed under sigma")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.elements[a].element.mul(&self.elements[b].element)).expect("closed")
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index_of(&self.elements[a].element.inverse()).expect("closed")
    }

    /// Human-readable label of an element: `1` or a word such as `s1s2`.
    pub fn element_label(&self, idx: usize) -> String {
        let w = &self.elements[idx].word;
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }
}

fn inverse_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_enumerate() {
        for (g, n) in [
            (BuiltinGroup::SL2, 2),
            (BuiltinGroup::GL2, 2),
            (BuiltinGroup::PGL2, 2),
            (BuiltinGroup::SL3, 6),
            (BuiltinGroup::GL3, 6),
            (BuiltinGroup::Sp4, 8),
            (BuiltinGroup::SU3, 6),
        ] {
            let d = RootDatum::builtin(g);
            assert_eq!(d.elements().len(), n, "{g}");
            assert!(d.element(0).matrix.is_identity());
            for e in d.elements() {
                assert_eq!(e.length, e.word.len());
            }
        }
    }

    #[test]
    fn braid_relations_spot_check() {
        let d = RootDatum::builtin(BuiltinGroup::Sp4);
        let p = d.generators()[0].mul(&d.generators()[1]);
        assert_eq!(p.order(10), Some(4));
        let d = RootDatum::builtin(BuiltinGroup::SL3);
        assert_eq!(d.generators()[0].mul(&d.generators()[1]).order(10), Some(3));
    }

    #[test]
    fn rejects_incompatible_phi0() {
        let gens = vec![m(&[&[-1, 0], &[1, 1]]), m(&[&[1, 1], &[0, -1]])];
        let swap = m(&[&[0, 1], &[1, 0]]);
        let split = WeylGroup::new("A2".parse().unwrap());
        let twisted = WeylGroup::new("2A2".parse().unwrap());
        assert!(RootDatum::new("ok", twisted, gens.clone(), swap.clone(), false, 0).is_ok());
        assert!(RootDatum::new("bad", split, gens, swap, false, 0).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!("sl2".parse::<BuiltinGroup>().unwrap(), BuiltinGroup::SL2);
        assert!("E8".parse::<BuiltinGroup>().is_err());
    }
}

//! Exact character tables of `SL2(q)` and `GL2(q)` for odd `q`, with their
//! Deligne-Lusztig virtual characters and the identities they satisfy.
//!
//! Tables are instantiated from symbolic templates. Nothing about them is
//! trusted: the checks in [`checks`] over-determine every value.

pub mod checks;
mod gl2;
pub mod projector;
pub mod restriction;
mod sl2;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cyclotomic::{CycError, CycNum, Rational};
use crate::numtheory::prime_power;
use crate::rootdata::{BuiltinGroup, FiniteTorusStructure, RootDataError, RootDatum};

pub use checks::{CheckOutcome, CheckSuite, CHECK_NAMES};

/// Largest supported field size.
pub const MAX_Q: u64 = 49;

#[derive(Debug, thiserror::Error)]
pub enum DlError {
    #[error("q = {0} must be an odd prime power")]
    BadQ(u64),
    #[error("q = {q} exceeds the supported maximum {max}")]
    QTooLarge { q: u64, max: u64 },
    #[error("unknown group {0:?}; expected SL2 or GL2")]
    UnknownGroup(String),
    #[error("class function has {got} values, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("unsupported semisimple element {0}")]
    UnsupportedElement(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("the two tables have different q")]
    MismatchedQ,
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    SL2,
    GL2,
}

impl Group {
    pub fn datum(self) -> BuiltinGroup {
        match self {
            Group::SL2 => BuiltinGroup::SL2,
            Group::GL2 => BuiltinGroup::GL2,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.datum().name())
    }
}

impl FromStr for Group {
    type Err = DlError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SL2" => Ok(Group::SL2),
            "GL2" => Ok(Group::GL2),
            _ => Err(DlError::UnknownGroup(s.to_string())),
        }
    }
}

/// Semisimple part of a class representative, by exponents of a fixed
/// generator `x` of `F_q^*` or `nu` of `F_{q^2}^*` (with `x = nu^(q+1)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Semisimple {
    /// The scalar matrix `x^c`.
    Central(u64),
    /// `diag(x^a, x^b)`.
    Split(u64, u64),
    /// Eigenvalues `nu^n`, `nu^(qn)`.
    Elliptic(u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub label: String,
    pub size: u64,
    pub unipotent: bool,
    /// Classes with equal `fusion` lie in one `F`-stable class of the algebraic group.
    pub fusion: usize,
    pub semisimple: Semisimple,
    /// Class of the unipotent part.
    pub unipotent_part: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharTable {
    pub labels: Vec<String>,
    /// `values[character][class]`; class 0 is the identity.
    pub values: Vec<Vec<CycNum>>,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.values[i][0].as_integer().and_then(|d| i64::try_from(d).ok()).expect("degrees are integers")
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// One `R_w^theta` with its decomposition into irreducibles.
#[derive(Clone, Debug, Serialize)]
pub struct DLEntry {
    pub element: usize,
    pub theta: Vec<u64>,
    pub lambda: Vec<i64>,
    pub mults: Vec<i64>,
    #[serde(skip)]
    pub values: Vec<CycNum>,
}

#[derive(Clone, Debug)]
pub struct DLTables {
    pub group: Group,
    pub q: u64,
    pub datum: RootDatum,
    pub classes: Vec<ClassInfo>,
    pub table: CharTable,
    pub family: Vec<DLEntry>,
    pub tori: Vec<FiniteTorusStructure>,
    pub order: u64,
}

fn check_q(q: u64) -> Result<(), DlError> {
    match prime_power(q) {
        Some((p, _)) if p != 2 => {}
        _ => return Err(DlError::BadQ(q)),
    }
    if q > MAX_Q {
        return Err(DlError::QTooLarge { q, max: MAX_Q });
    }
    Ok(())
}

pub(crate) fn ri(n: i64) -> CycNum {
    CycNum::from_int(n)
}

pub(crate) fn half(x: &CycNum) -> CycNum {
    x.scale(&Rational::new(1.into(), 2.into()))
}

impl DLTables {
    pub fn build(group: Group, q: u64) -> Result<DLTables, DlError> {
        check_q(q)?;
        let datum = RootDatum::builtin(group.datum());
        let (classes, table) = match group {
            Group::SL2 => (sl2::classes(q), sl2::table(q)?),
            Group::GL2 => (gl2::classes(q), gl2::table(q)),
        };
        let tori = (0..datum.elements().len()).map(|w| datum.finite_torus_structure(w, q)).collect::<Result<Vec<_>, _>>()?;
        let mut family = Vec::new();
        for (w, torus) in tori.iter().enumerate() {
            for theta in torus.characters() {
                let lambda = torus.lambda_from_theta(&theta);
                let mults = match group {
                    Group::SL2 => sl2::decompose(q, w, &lambda, table.len()),
                    Group::GL2 => gl2::decompose(q, w, &lambda, &table),
                };
                let values = combine(&table, &mults);
                family.push(DLEntry { element: w, theta, lambda, mults, values });
            }
        }
        let order = classes.iter().map(|c| c.size).sum();
        Ok(DLTables { group, q, datum, classes, table, family, tori, order })
    }

    pub fn sl2(q: u64) -> Result<DLTables, DlError> {
        DLTables::build(Group::SL2, q)
    }

    pub fn gl2(q: u64) -> Result<DLTables, DlError> {
        DLTables::build(Group::GL2, q)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn weyl_order(&self) -> usize {
        self.datum.elements().len()
    }

    /// `|G|^-1 sum_C |C| f(C) conj(g(C))`.
    pub fn inner_product(&self, f: &[CycNum], g: &[CycNum]) -> Result<CycNum, DlError> {
        for v in [f, g] {
            if v.len() != self.classes.len() {
                return Err(DlError::LengthMismatch { got: v.len(), expected: self.classes.len() });
            }
        }
        let mut acc = CycNum::zero();
        for ((a, b), c) in f.iter().zip(g).zip(&self.classes) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += &(a * &b.conj()).scale(&Rational::from_integer(c.size.into()));
        }
        Ok(acc.scale(&Rational::new(1.into(), self.order.into())))
    }

    /// Multiplicity of each irreducible in `f`.
    pub fn coordinates(&self, f: &[CycNum]) -> Result<Vec<CycNum>, DlError> {
        self.table.values.iter().map(|chi| self.inner_product(f, chi)).collect()
    }

    /// Class function with the given irreducible coordinates.
    pub fn from_coordinates(&self, c: &[CycNum]) -> Vec<CycNum> {
        (0..self.classes.len())
            .map(|k| {
                let mut acc = CycNum::zero();
                for (ci, chi) in c.iter().zip(&self.table.values) {
                    if !ci.is_zero() && !chi[k].is_zero() {
                        acc += &(ci * &chi[k]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Characteristic function of a set of classes.
    pub fn indicator(&self, classes: &[usize]) -> Vec<CycNum> {
        (0..self.classes.len()).map(|k| if classes.contains(&k) { CycNum::one() } else { CycNum::zero() }).collect()
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    /// Fusion groups: the `F`-stable classes of the algebraic group.
    pub fn fusion_groups(&self) -> Vec<Vec<usize>> {
        let n = self.classes.iter().map(|c| c.fusion).max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); n];
        for (i, c) in self.classes.iter().enumerate() {
            out[c.fusion].push(i);
        }
        out
    }

    /// Value of the torus character with lattice vector `lambda` on `T0[w]` at `s`,
    /// or `None` when `s` does not lie in that torus.
    pub fn theta_at(&self, w: usize, lambda: &[i64], s: Semisimple) -> Option<CycNum> {
        match self.group {
            Group::SL2 => sl2::theta_at(self.q, w, lambda, s),
            Group::GL2 => gl2::theta_at(self.q, w, lambda, s),
        }
    }

    /// Green function `Q_w` as the value of `R_w^1` on each class (meaningful on unipotent classes).
    pub fn green_function(&self, w: usize) -> &[CycNum] {
        let e = self.family.iter().find(|e| e.element == w && e.theta.iter().all(|&c| c == 0)).expect("trivial character present");
        &e.values
    }

    /// Connected components of the graph joining characters that share some `R_w^theta`.
    pub fn graph_components(&self) -> Vec<Vec<usize>> {
        let n = self.table.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.family {
            let support: Vec<usize> = (0..n).filter(|&i| e.mults[i] != 0).collect();
            for w in support.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            comps.entry(r).or_default().push(i);
        }
        let mut v: Vec<Vec<usize>> = comps.into_values().collect();
        v.sort();
        v
    }
}

pub(crate) fn combine(table: &CharTable, mults: &[i64]) -> Vec<CycNum> {
    let n = table.values.first().map_or(0, Vec::len);
    (0..n)
        .map(|k| {
            let mut acc = CycNum::zero();
            for (m, chi) in mults.iter().zip(&table.values) {
                if *m != 0 {
                    acc += &chi[k].scale(&Rational::from_integer((*m).into()));
                }
            }
            acc
        })
        .collect()
}


#[derive(Serialize)]
struct TableClassJson<'a> {
    label: &'a str,
    size: u64,
    unipotent: bool,
    fusion: usize,
}

#[derive(Serialize)]
struct TableCharJson<'a> {
    label: &'a str,
    degree: i64,
    values: &'a [CycNum],
}

#[derive(Serialize)]
struct TableFamilyJson {
    element: String,
    theta: Vec<u64>,
    lambda: Vec<i64>,
    decomposition: Vec<(String, i64)>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    schema: &'static str,
    group: String,
    q: u64,
    order: u64,
    classes: Vec<TableClassJson<'a>>,
    characters: Vec<TableCharJson<'a>>,
    family: Vec<TableFamilyJson>,
}

impl DLTables {
    /// JSON document for `dl table`.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = TableJson {
            schema: "lietype.dltable/1",
            group: self.group.to_string(),
            q: self.q,
            order: self.order,
            classes: self
                .classes
                .iter()
                .map(|c| TableClassJson { label: &c.label, size: c.size, unipotent: c.unipotent, fusion: c.fusion })
                .collect(),
            characters: (0..self.table.len())
                .map(|i| TableCharJson { label: &self.table.labels[i], degree: self.table.degree(i), values: &self.table.values[i] })
                .collect(),
            family: self
                .family
                .iter()
                .map(|e| TableFamilyJson {
                    element: self.datum.element_label(e.element),
                    theta: e.theta.clone(),
                    lambda: e.lambda.clone(),
                    decomposition: e
                        .mults
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| **m != 0)
                        .map(|(i, m)| (self.table.labels[i].clone(), *m))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }
}


#[cfg(test)]
mod suite_tests {
    use super::*;
    use crate::exec::Exec;

    fn assert_suite(t: &DLTables) {
        let suite = t.run_all(Exec::default()).unwrap();
        for o in &suite.outcomes {
            assert!(o.passed, "{} q={} {}: {}", t.group, t.q, o.name, o.detail);
        }
    }

    #[test]
    fn sl2_suite() {
        for q in [3u64, 5, 7] {
            assert_suite(&DLTables::sl2(q).unwrap());
        }
    }

    #[test]
    fn gl2_suite() {
        for q in [3u64, 5] {
            assert_suite(&DLTables::gl2(q).unwrap());
        }
    }

    #[test]
    fn unknown_check_is_an_error() {
        let t = DLTables::sl2(3).unwrap();
        assert!(matches!(t.run_check("nope", Exec::Sequential), Err(DlError::UnknownCheck(_))));
    }
}

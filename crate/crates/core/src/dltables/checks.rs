//! Identities that over-determine the tables.
//!
//! Each check returns a [`CheckOutcome`]; a failing identity is reported, not
//! raised, so a suite always runs to the end.

use num_traits::One;
use serde::Serialize;

use super::{ri, DLTables, DlError, Group, Semisimple};
use crate::cyclotomic::{CycNum, Rational};
use crate::exec::Exec;
use crate::qpoly::QPoly;
use crate::rootdata::{degree_polynomial, DegreeInvariants, MultiplicityTable};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub(crate) fn new(name: &str, passed: bool, detail: impl Into<String>) -> CheckOutcome {
        CheckOutcome { name: name.to_string(), passed, detail: detail.into() }
    }

    /// Passes when `failures` is empty; otherwise reports the first few.
    pub(crate) fn from_failures(name: &str, total: usize, failures: Vec<String>) -> CheckOutcome {
        if failures.is_empty() {
            CheckOutcome::new(name, true, format!("{total} identities hold"))
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            CheckOutcome::new(name, false, format!("{} of {total} failed: {}", failures.len(), shown.join("; ")))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSuite {
    pub schema: &'static str,
    pub group: String,
    pub q: u64,
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckSuite {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

/// Every check accepted by [`DLTables::run_check`], in suite order.
pub const CHECK_NAMES: &[&str] = &[
    "orthogonality",
    "dimension",
    "scalar",
    "regular",
    "degrees",
    "green",
    "uniform",
    "luconj",
    "uniform-all",
    "lemma",
    "restriction",
    "semisimple",
    "degree-poly",
];

fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn int(c: &CycNum) -> Option<i64> {
    c.as_integer().and_then(|v| i64::try_from(v).ok())
}

impl DLTables {
    pub fn run_check(&self, name: &str, exec: Exec) -> Result<CheckOutcome, DlError> {
        Ok(match name {
            "orthogonality" => self.check_orthogonality(exec),
            "dimension" => self.check_dimension(),
            "scalar" => self.check_scalar(exec),
            "regular" => self.check_regular(),
            "degrees" => self.check_degrees(exec),
            "green" => self.check_green(),
            "uniform" => self.check_uniform(),
            "luconj" => self.check_luconj(exec),
            "uniform-all" => self.check_uniform_dichotomy(),
            "lemma" => self.check_lemma(exec),
            "restriction" => {
                let (sl2, gl2) = match self.group {
                    Group::SL2 => (self.clone(), DLTables::gl2(self.q)?),
                    Group::GL2 => (DLTables::sl2(self.q)?, self.clone()),
                };
                super::restriction::check_restriction(&sl2, &gl2, exec)?
            }
            "semisimple" => self.check_semisimple(),
            "degree-poly" => self.check_degree_polynomials(),
            other => return Err(DlError::UnknownCheck(other.to_string())),
        })
    }

    pub fn run_all(&self, exec: Exec) -> Result<CheckSuite, DlError> {
        let outcomes = CHECK_NAMES.iter().map(|n| self.run_check(n, exec)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.suite(outcomes))
    }

    pub fn suite(&self, outcomes: Vec<CheckOutcome>) -> CheckSuite {
        CheckSuite { schema: "lietype.dlverify/1", group: self.group.to_string(), q: self.q, outcomes }
    }

    fn sign(&self, w: usize) -> i64 {
        if self.datum.element(w).length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `(-1)^l(w) q^-N |G| / |T_w|` evaluated at `q`.
    pub fn dimension_formula(&self, w: usize) -> Rational {
        let g = self.datum.group_order_poly().eval_at(self.q as i64);
        let t = self.datum.torus_order_poly(w).eval_at(self.q as i64);
        let qn = rational(self.q as i64).pow(self.datum.num_positive_roots() as i32);
        rational(self.sign(w)) * g / t / qn
    }

    /// Integer multiplicity of character `i` in family entry `e`; valid because
    /// the table is orthonormal (see the orthogonality check).
    fn mult(&self, e: usize, i: usize) -> i64 {
        self.family[e].mults[i]
    }

    fn check_orthogonality(&self, exec: Exec) -> CheckOutcome {
        let n = self.table.len();
        let rows: Vec<Vec<String>> = exec.map_range(n, |i| {
            let mut bad = Vec::new();
            for j in i..n {
                let ip = self.inner_product(&self.table.values[i], &self.table.values[j]).expect("lengths match");
                let want = if i == j { CycNum::one() } else { CycNum::zero() };
                if ip != want {
                    bad.push(format!("<{},{}> = {ip}", self.table.labels[i], self.table.labels[j]));
                }
            }
            bad
        });
        let mut failures: Vec<String> = rows.into_iter().flatten().collect();
        let k = self.num_classes();
        let cols: Vec<Vec<String>> = exec.map_range(k, |a| {
            let mut bad = Vec::new();
            for b in a..k {
                let mut s = CycNum::zero();
                for chi in &self.table.values {
                    if !chi[a].is_zero() && !chi[b].is_zero() {
                        s += &(&chi[a] * &chi[b].conj());
                    }
                }
                let want = if a == b { ri((self.order / self.classes[a].size) as i64) } else { CycNum::zero() };
                if s != want {
                    bad.push(format!("column {},{} gives {s}", self.classes[a].label, self.classes[b].label));
                }
            }
            bad
        });
        failures.extend(cols.into_iter().flatten());
        let sq: i64 = (0..n).map(|i| self.table.degree(i).pow(2)).sum();
        if sq as u64 != self.order {
            failures.push(format!("sum of squared degrees {sq} != |G| = {}", self.order));
        }
        CheckOutcome::from_failures("orthogonality", n * (n + 1) / 2 + k * (k + 1) / 2 + 1, failures)
    }

    fn check_dimension(&self) -> CheckOutcome {
        let failures = self
            .family
            .iter()
            .filter_map(|e| {
                let want = CycNum::from_rational(self.dimension_formula(e.element));
                (e.values[0] != want).then(|| format!("{} theta={:?}: {} != {want}", self.datum.element_label(e.element), e.theta, e.values[0]))
            })
            .collect();
        CheckOutcome::from_failures("dimension", self.family.len(), failures)
    }

    /// `<R_w^theta, R_w'^theta'>` against `#{x : x w sigma(x)^-1 = w', x.theta = theta'}`.
    fn check_scalar(&self, exec: Exec) -> CheckOutcome {
        let d = &self.datum;
        let nw = d.elements().len();
        let n = self.family.len();
        let failures: Vec<String> = exec
            .map_range(n, |a| {
                let ea = &self.family[a];
                let mut bad = Vec::new();
                for b in a..n {
                    let eb = &self.family[b];
                    let by_values: i64 = (0..self.table.len()).map(|i| self.mult(a, i) * self.mult(b, i)).sum();
                    let count = (0..nw)
                        .filter(|&x| {
                            let conj = d.mul(d.mul(x, ea.element), d.inverse(d.sigma_of(x)));
                            conj == eb.element && {
                                let image = d.element(x).matrix.apply(&ea.lambda);
                                self.tori[eb.element].theta_from_lambda(&image) == eb.theta
                            }
                        })
                        .count() as i64;
                    if by_values != count {
                        bad.push(format!("entries {a},{b}: product {by_values}, Weyl count {count}"));
                    }
                }
                bad
            })
            .into_iter()
            .flatten()
            .collect();
        CheckOutcome::from_failures("scalar", n * (n + 1) / 2, failures)
    }

    /// `reg_G = |W|^-1 sum_{w,theta} R_w^theta(1) R_w^theta`.
    fn check_regular(&self) -> CheckOutcome {
        let mut acc = vec![CycNum::zero(); self.num_classes()];
        for e in &self.family {
            for (a, v) in acc.iter_mut().zip(&e.values) {
                *a += &(&e.values[0] * v);
            }
        }
        let w = rational(self.weyl_order() as i64);
        let failures = acc
            .iter()
            .enumerate()
            .filter_map(|(k, v)| {
                let v = v.scale(&(Rational::one() / &w));
                let want = if k == 0 { ri(self.order as i64) } else { CycNum::zero() };
                (v != want).then(|| format!("class {}: {v}", self.classes[k].label))
            })
            .collect();
        CheckOutcome::from_failures("regular", self.num_classes(), failures)
    }

    /// `rho(1) = |W|^-1 sum_{w,theta} <rho, R_w^theta> R_w^theta(1)`, with the
    /// scalar products computed from values.
    fn check_degrees(&self, exec: Exec) -> CheckOutcome {
        let w = rational(self.weyl_order() as i64);
        let failures: Vec<String> = exec
            .map_range(self.table.len(), |i| {
                let mut s = CycNum::zero();
                for e in &self.family {
                    let ip = self.inner_product(&self.table.values[i], &e.values).expect("lengths match");
                    if ip != ri(e.mults[i]) {
                        return Some(format!("<{}, R> = {ip} disagrees with the decomposition", self.table.labels[i]));
                    }
                    s += &(&ip * &e.values[0]);
                }
                let s = s.scale(&(Rational::one() / &w));
                (s != ri(self.table.degree(i))).then(|| format!("{}: recovered {s}", self.table.labels[i]))
            })
            .into_iter()
            .flatten()
            .collect();
        CheckOutcome::from_failures("degrees", self.table.len(), failures)
    }

    fn regular_unipotent(&self) -> Vec<usize> {
        (1..self.num_classes()).filter(|&k| self.classes[k].unipotent).collect()
    }

    /// `sum_theta R_w^theta = |T_w| Q_w` on unipotent classes and `0` elsewhere.
    fn check_green(&self) -> CheckOutcome {
        let mut failures = Vec::new();
        let mut total = 0;
        for w in 0..self.weyl_order() {
            let green = self.green_function(w);
            let t = self.tori[w].order() as i64;
            let mut sum = vec![CycNum::zero(); self.num_classes()];
            for e in self.family.iter().filter(|e| e.element == w) {
                for (a, v) in sum.iter_mut().zip(&e.values) {
                    *a += v;
                }
            }
            let label = self.datum.element_label(w);
            for (k, c) in self.classes.iter().enumerate() {
                total += 1;
                let want = if c.unipotent { green[k].scale(&rational(t)) } else { CycNum::zero() };
                if sum[k] != want {
                    failures.push(format!("w={label} class {}: {} != {want}", c.label, sum[k]));
                }
            }
            total += 1;
            if green[0] != CycNum::from_rational(self.dimension_formula(w)) {
                failures.push(format!("Q_{label}(1) = {}", green[0]));
            }
            for k in self.regular_unipotent() {
                total += 1;
                if green[k] != CycNum::one() {
                    failures.push(format!("Q_{label}({}) = {}", self.classes[k].label, green[k]));
                }
            }
        }
        CheckOutcome::from_failures("green", total, failures)
    }

    /// For `s0` semisimple and `w` with `s0` in `T_w`:
    /// `|T_w|^-1 sum_theta theta(s0)^-1 R_w^theta(g)` is `Q_w^{C(s0)}(u)` when the
    /// semisimple part of `g` is `s0`, and `0` otherwise.
    fn check_lemma(&self, exec: Exec) -> CheckOutcome {
        let mut centres: Vec<Semisimple> = Vec::new();
        for c in &self.classes {
            if !centres.contains(&c.semisimple) {
                centres.push(c.semisimple);
            }
        }
        let results: Vec<(usize, Vec<String>)> = exec.map(&centres, |&s0| self.lemma_at(s0));
        let total = results.iter().map(|r| r.0).sum();
        CheckOutcome::from_failures("lemma", total, results.into_iter().flat_map(|r| r.1).collect())
    }

    pub fn lemma_at(&self, s0: Semisimple) -> (usize, Vec<String>) {
        let mut failures = Vec::new();
        let mut total = 0;
        let central = matches!(s0, Semisimple::Central(_));
        for w in 0..self.weyl_order() {
            let entries: Vec<_> = self.family.iter().filter(|e| e.element == w).collect();
            let Some(weights) = entries.iter().map(|e| self.theta_at(w, &e.lambda, s0)).collect::<Option<Vec<CycNum>>>() else {
                continue;
            };
            let t = rational(self.tori[w].order() as i64);
            let green = self.green_function(w);
            for (k, c) in self.classes.iter().enumerate() {
                total += 1;
                let mut s = CycNum::zero();
                for (e, th) in entries.iter().zip(&weights) {
                    if !e.values[k].is_zero() {
                        s += &(&th.conj() * &e.values[k]);
                    }
                }
                let s = s.scale(&(Rational::one() / &t));
                let want = match (c.semisimple == s0, central) {
                    (false, _) => CycNum::zero(),
                    (true, true) => green[c.unipotent_part].clone(),
                    (true, false) => CycNum::one(),
                };
                if s != want {
                    failures.push(format!("s0={s0:?} w={} class {}: {s} != {want}", self.datum.element_label(w), c.label));
                }
            }
        }
        (total, failures)
    }

    /// Multiplicity table of character `i` for the degree polynomial.
    pub fn multiplicity_table(&self, i: usize) -> MultiplicityTable {
        self.family.iter().filter(|e| e.mults[i] != 0).map(|e| ((e.element, e.theta.clone()), e.mults[i])).collect()
    }

    pub fn degree_invariants(&self, i: usize) -> Result<DegreeInvariants, DlError> {
        Ok(degree_polynomial(&self.multiplicity_table(i), &self.datum)?)
    }

    /// Number of `sigma`-orbits of simple roots.
    pub fn relative_rank(&self) -> usize {
        let w = self.datum.weyl();
        w.sigma_orbits(&(0..w.rank()).collect::<Vec<_>>()).len()
    }

    /// Characters orthogonal to every `R_1^theta`.
    pub fn is_cuspidal(&self, i: usize) -> bool {
        self.family.iter().filter(|e| e.element == 0).all(|e| e.mults[i] == 0)
    }

    fn check_degree_polynomials(&self) -> CheckOutcome {
        let g = self.datum.group_order_poly();
        let k = self.relative_rank() as u32;
        let mut failures = Vec::new();
        let mut total = 0;
        for i in 0..self.table.len() {
            let label = &self.table.labels[i];
            let inv = match self.degree_invariants(i) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("{label}: {e}"));
                    continue;
                }
            };
            let d = &inv.polynomial;
            total += 5;
            if d.eval_at(self.q as i64) != rational(self.table.degree(i)) {
                failures.push(format!("{label}: D(q) = {} != {}", d.eval_at(self.q as i64), self.table.degree(i)));
            }
            if !d.divides(&g) {
                failures.push(format!("{label}: D does not divide |G|"));
            }
            for e in self.family.iter().filter(|e| e.mults[i] != 0) {
                total += 1;
                let quotient = g.divexact(&self.datum.torus_order_poly(e.element)).expect("torus order divides");
                if !d.divides(&quotient) {
                    failures.push(format!("{label}: D does not divide |G|/|T_{}|", self.datum.element_label(e.element)));
                }
            }
            if !inv.shape_ok {
                failures.push(format!("{label}: D = {d} lacks the expected shape"));
            }
            if self.is_cuspidal(i) != inv.divisible_by_q_minus_one_power(k) {
                failures.push(format!("{label}: cuspidality and (q-1)^{k} | D disagree"));
            }
            let half_degree = self.group == Group::SL2 && label.contains("_0");
            let want_n = if half_degree { 2 } else { 1 };
            if inv.n != want_n {
                failures.push(format!("{label}: n = {} (expected {want_n})", inv.n));
            }
        }
        CheckOutcome::from_failures("degree-poly", total, failures)
    }

    /// Sum of the character over the regular unipotent classes.
    pub fn regular_unipotent_value(&self, i: usize) -> CycNum {
        self.regular_unipotent().into_iter().map(|k| self.table.values[i][k].clone()).sum()
    }

    fn check_semisimple(&self) -> CheckOutcome {
        let mut failures = Vec::new();
        let mut total = 0;
        let k = self.relative_rank();
        let q_minus_one = QPoly::q_pow_minus_one(1);
        let mut invariants = Vec::new();
        for i in 0..self.table.len() {
            let label = &self.table.labels[i];
            let inv = match self.degree_invariants(i) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("{label}: {e}"));
                    continue;
                }
            };
            total += 3;
            let av = self.regular_unipotent_value(i);
            if av.is_zero() == (inv.a == 0) {
                failures.push(format!("{label}: regular unipotent sum {av} but q-valuation {}", inv.a));
            }
            if self.is_cuspidal(i) != inv.divisible_by_q_minus_one_power(k as u32) {
                failures.push(format!("{label}: cuspidality and degree disagree"));
            }
            // Harish-Chandra Levi rank: 0 for principal series, the full relative rank when cuspidal
            let levi_rank = if self.is_cuspidal(i) { k } else { 0 };
            let d = inv.polynomial.valuation(&q_minus_one).unwrap_or(0);
            if levi_rank != d {
                failures.push(format!("{label}: depth {} from Harish-Chandra data, {} from the degree", k - levi_rank, k.saturating_sub(d)));
            }
            invariants.push(!av.is_zero());
        }
        if invariants.len() == self.table.len() {
            for comp in self.graph_components() {
                total += 1;
                let count = comp.iter().filter(|&&i| invariants[i]).count();
                let ok = if self.group == Group::GL2 { count == 1 } else { count >= 1 };
                if !ok {
                    let names: Vec<&str> = comp.iter().map(|&i| self.table.labels[i].as_str()).collect();
                    failures.push(format!("component {{{}}} has {count} semisimple characters", names.join(", ")));
                }
            }
        }
        CheckOutcome::from_failures("semisimple", total, failures)
    }

    /// Checks that the family entry values agree with their integer
    /// coordinates; used by callers that want the value-level statement.
    pub fn multiplicities_from_values(&self, e: usize) -> Result<Vec<i64>, DlError> {
        self.coordinates(&self.family[e].values)?
            .iter()
            .map(|c| int(c).ok_or(DlError::UnsupportedElement(format!("non-integral coordinate {c}"))))
            .collect()
    }
}

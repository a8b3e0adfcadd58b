//! Orthogonal projection onto uniform class functions (the span of the `R_w^theta`).
//!
//! In the orthonormal basis of irreducible characters the projection is a
//! rational matrix. It is built three independent ways and the results are
//! compared.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::checks::CheckOutcome;
use super::{DLTables, Group};
use crate::cyclotomic::{CycNum, Rational};
use crate::exec::Exec;

pub type RatMatrix = Vec<Vec<Rational>>;

fn zeros(n: usize) -> RatMatrix {
    vec![vec![Rational::zero(); n]; n]
}

fn identity(n: usize) -> RatMatrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

fn add_outer(m: &mut RatMatrix, v: &[i64], weight: &Rational) {
    for (i, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            if b != 0 {
                m[i][j] += weight * Rational::from_integer((a * b).into());
            }
        }
    }
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn transpose(a: &RatMatrix) -> RatMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

fn trace(a: &RatMatrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// The uniform projection in irreducible coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct UniformProjector {
    #[serde(skip)]
    pub matrix: RatMatrix,
    pub rank: usize,
}

impl UniformProjector {
    /// Applies the projection to a class function given by its values.
    pub fn apply(&self, t: &DLTables, f: &[CycNum]) -> Result<Vec<CycNum>, super::DlError> {
        let c = t.coordinates(f)?;
        let pc: Vec<CycNum> = self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = CycNum::zero();
                for (r, x) in row.iter().zip(&c) {
                    if !r.is_zero() && !x.is_zero() {
                        acc += &x.scale(r);
                    }
                }
                acc
            })
            .collect();
        Ok(t.from_coordinates(&pc))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity(self.matrix.len())
    }
}

impl DLTables {
    /// `|W|^-1 sum_{w,theta} m m^T`.
    pub fn projector_by_average(&self) -> RatMatrix {
        let n = self.table.len();
        let mut m = zeros(n);
        let w = Rational::new(1.into(), (self.weyl_order() as i64).into());
        for e in &self.family {
            add_outer(&mut m, &e.mults, &w);
        }
        m
    }

    /// Orthogonal projection onto the span of the distinct multiplicity vectors.
    pub fn projector_by_gram(&self) -> RatMatrix {
        let n = self.table.len();
        let distinct: BTreeSet<&Vec<i64>> = self.family.iter().map(|e| &e.mults).collect();
        let mut basis: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for v in distinct {
            let mut u: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
            for (b, norm) in &basis {
                let dot: Rational = u.iter().zip(b).map(|(x, y)| x * y).sum();
                if dot.is_zero() {
                    continue;
                }
                let c = dot / norm;
                for (x, y) in u.iter_mut().zip(b) {
                    *x -= &c * y;
                }
            }
            let norm: Rational = u.iter().map(|x| x * x).sum();
            if !norm.is_zero() {
                basis.push((u, norm));
            }
        }
        let mut m = zeros(n);
        for (u, norm) in &basis {
            for i in 0..n {
                if u[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    m[i][j] += &u[i] * &u[j] / norm;
                }
            }
        }
        m
    }

    /// Sum over twisted-class representatives `w` of `|N(w,w)|^-1 sum_theta m m^T`.
    pub fn projector_by_classes(&self) -> RatMatrix {
        let d = &self.datum;
        let nw = d.elements().len();
        let mut seen = vec![false; nw];
        let mut m = zeros(self.table.len());
        for w in 0..nw {
            if seen[w] {
                continue;
            }
            let mut centralizer = 0i64;
            for x in 0..nw {
                let y = d.mul(d.mul(x, w), d.inverse(d.sigma_of(x)));
                seen[y] = true;
                if y == w {
                    centralizer += 1;
                }
            }
            let weight = Rational::new(1.into(), centralizer.into());
            for e in self.family.iter().filter(|e| e.element == w) {
                add_outer(&mut m, &e.mults, &weight);
            }
        }
        m
    }

    pub fn uniform_projector(&self) -> UniformProjector {
        let matrix = self.projector_by_average();
        let rank = trace(&matrix).to_integer().try_into().unwrap_or(usize::MAX);
        UniformProjector { matrix, rank }
    }

    pub(crate) fn check_uniform(&self) -> CheckOutcome {
        let a = self.projector_by_average();
        let b = self.projector_by_gram();
        let c = self.projector_by_classes();
        let mut failures = Vec::new();
        if a != b {
            failures.push("average and Gram projections differ".to_string());
        }
        if a != c {
            failures.push("average and class-sum projections differ".to_string());
        }
        if mat_mul(&a, &a) != a {
            failures.push("not idempotent".to_string());
        }
        if transpose(&a) != a {
            failures.push("not self-adjoint".to_string());
        }
        let rank = trace(&a);
        let want: u64 = match self.group {
            Group::SL2 => self.q + 2,
            Group::GL2 => self.q * self.q - 1,
        };
        if rank != Rational::from_integer(want.into()) {
            failures.push(format!("rank {rank}, expected {want}"));
        }
        if failures.is_empty() {
            CheckOutcome::new("uniform", true, format!("three constructions agree; idempotent, self-adjoint, rank {rank}"))
        } else {
            CheckOutcome::from_failures("uniform", 5, failures)
        }
    }

    /// Class functions constant on fused classes are uniform; for `SL2` the
    /// indicator of `J` is not, and its non-uniform part is a multiple of the
    /// combination `psi2 = (rho_0' - rho_0'' - pi_0' + pi_0'') / 2`.
    pub(crate) fn check_luconj(&self, exec: Exec) -> CheckOutcome {
        let p = self.uniform_projector();
        let groups = self.fusion_groups();
        let mut failures: Vec<String> = exec
            .map(&groups, |g| {
                let f = self.indicator(g);
                match p.apply(self, &f) {
                    Ok(pf) if pf == f => None,
                    Ok(_) => Some(format!("fused class {} is not fixed", self.classes[g[0]].label)),
                    Err(e) => Some(e.to_string()),
                }
            })
            .into_iter()
            .flatten()
            .collect();
        let mut total = groups.len();
        let mut detail = String::new();
        if self.group == Group::SL2 {
            total += 4;
            match self.sl2_nonuniform_part(&p) {
                Ok(sign) => detail = format!("; (I-P) f_J = {sign} psi2 / (2 g)"),
                Err(msg) => failures.push(msg),
            }
        }
        let mut out = CheckOutcome::from_failures("luconj", total, failures);
        if out.passed {
            out.detail.push_str(&detail);
        }
        out
    }

    fn combo(&self, signs: [i64; 4]) -> Vec<CycNum> {
        let names = ["rho_0'", "rho_0''", "pi_0'", "pi_0''"];
        let mut mults = vec![0i64; self.table.len()];
        for (n, s) in names.iter().zip(signs) {
            mults[self.table.index_of(n).expect("SL2 label")] = s;
        }
        super::combine(&self.table, &mults).iter().map(super::half).collect()
    }

    /// Returns the sign realised in `(I - P) f_J = ± psi2 / (2g)`.
    fn sl2_nonuniform_part(&self, p: &UniformProjector) -> Result<&'static str, String> {
        let g = crate::cyclotomic::sqrt_delta_q(self.q).map_err(|e| e.to_string())?;
        let dl = crate::cyclotomic::delta(self.q);
        let psi1 = self.combo([1, -1, 1, -1]);
        let psi2 = self.combo([1, -1, -1, 1]);
        let pos = |l: &str| self.class_index(l).expect("SL2 class");
        let (j, j2, mj, mj2) = (pos("J"), pos("J'"), pos("-J"), pos("-J'"));
        let pattern = |f: &[CycNum], vals: [CycNum; 4]| {
            f.iter().enumerate().all(|(k, v)| {
                let want = [j, j2, mj, mj2].iter().position(|&x| x == k).map_or(CycNum::zero(), |i| vals[i].clone());
                *v == want
            })
        };
        let dg = g.scale(&Rational::from_integer(dl.into()));
        let z = CycNum::zero();
        if !(pattern(&psi1, [z.clone(), z.clone(), dg.clone(), -dg.clone()]) || pattern(&psi1, [z.clone(), z.clone(), -dg.clone(), dg])) {
            return Err("psi1 has an unexpected value pattern".into());
        }
        if !(pattern(&psi2, [g.clone(), -g.clone(), z.clone(), z.clone()]) || pattern(&psi2, [-g.clone(), g.clone(), z.clone(), z])) {
            return Err("psi2 has an unexpected value pattern".into());
        }
        for (name, psi) in [("psi1", &psi1), ("psi2", &psi2)] {
            let pp = p.apply(self, psi).map_err(|e| e.to_string())?;
            if pp.iter().any(|v| !v.is_zero()) {
                return Err(format!("{name} is not orthogonal to the uniform functions"));
            }
        }
        let f = self.indicator(&[j]);
        let pf = p.apply(self, &f).map_err(|e| e.to_string())?;
        if pf == f {
            return Err("the indicator of J is uniform".into());
        }
        let rest: Vec<CycNum> = f.iter().zip(&pf).map(|(a, b)| a - b).collect();
        let two_g_inv = (&g + &g).inv().map_err(|e| e.to_string())?;
        for (sign, s) in [("+", 1i64), ("-", -1)] {
            let c = two_g_inv.scale(&Rational::from_integer(s.into()));
            if rest.iter().zip(&psi2).all(|(r, p)| *r == &c * p) {
                return Ok(sign);
            }
        }
        Err("(I-P) f_J is not a multiple of psi2".into())
    }

    /// Projection is the identity exactly when the centre is connected and
    /// the root system is of type A.
    pub(crate) fn check_uniform_dichotomy(&self) -> CheckOutcome {
        let p = self.uniform_projector();
        let type_a = self
            .datum
            .cartan_type()
            .map(|t| t.series == crate::weyl::Series::A && !t.is_twisted())
            .unwrap_or(false);
        let predicted = self.datum.has_connected_centre() && type_a;
        let actual = p.is_identity();
        CheckOutcome::new(
            "uniform-all",
            predicted == actual,
            format!(
                "{}: connected centre {}, type A {}; projection {} (rank {} of {})",
                self.group,
                self.datum.has_connected_centre(),
                type_a,
                if actual { "is the identity" } else { "is proper" },
                p.rank,
                self.table.len()
            ),
        )
    }
}

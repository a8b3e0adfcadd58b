//! `GL2(q)`, `q` odd. Characters: `U_a = a o det`, `V_a = U_a St`, principal
//! series `W_{a,b}` (`a < b`) and cuspidal `X_k` (`k` not divisible by
//! `q+1`, up to `k ~ qk`). Classes: scalars `c_a`, `d_a = x^a J`, split
//! `b_{a,b}` (`a < b`) and elliptic `e_n`.

use std::collections::HashMap;

use super::{ri, CharTable, ClassInfo, Semisimple};
use crate::cyclotomic::{CycNum, Rational};

/// Representatives `n` of the elliptic pairs `{n, qn}` mod `q^2 - 1`.
fn elliptic_reps(q: u64) -> Vec<u64> {
    let m = q * q - 1;
    (1..m).filter(|&n| n % (q + 1) != 0 && n <= (q * n) % m).collect()
}

fn pairs(q: u64) -> Vec<(u64, u64)> {
    (0..q - 1).flat_map(|a| (a + 1..q - 1).map(move |b| (a, b))).collect()
}

pub(super) fn elliptic_rep(q: u64, n: u64) -> u64 {
    let m = q * q - 1;
    let n = n % m;
    n.min((q * n) % m)
}

pub(super) fn classes(q: u64) -> Vec<ClassInfo> {
    let mut v = Vec::new();
    let mut push = |label: String, size, unipotent, semisimple, unipotent_part| {
        let fusion = v.len();
        v.push(ClassInfo { label, size, unipotent, fusion, semisimple, unipotent_part });
    };
    let d0 = (q - 1) as usize;
    for a in 0..q - 1 {
        push(format!("c_{a}"), 1, a == 0, Semisimple::Central(a), 0);
    }
    for a in 0..q - 1 {
        push(format!("d_{a}"), q * q - 1, a == 0, Semisimple::Central(a), d0);
    }
    for (a, b) in pairs(q) {
        push(format!("b_{a},{b}"), q * (q + 1), false, Semisimple::Split(a, b), 0);
    }
    for n in elliptic_reps(q) {
        push(format!("e_{n}"), q * (q - 1), false, Semisimple::Elliptic(n), 0);
    }
    v
}

pub(super) fn table(q: u64) -> CharTable {
    let qm = q - 1;
    let m = q * q - 1;
    let qi = q as i64;
    let eps = |k: u64| CycNum::root_of_unity(qm, (k % qm) as i64);
    let nu = |k: u64| CycNum::root_of_unity(m, (k % m) as i64);
    let classes = classes(q);
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let scaled = |c: i64, x: CycNum| x.scale(&Rational::from_integer(c.into()));
    for a in 0..qm {
        labels.push(format!("U_{a}"));
        rows.push(
            classes
                .iter()
                .map(|c| match c.semisimple {
                    Semisimple::Central(x) => eps(2 * a * x),
                    Semisimple::Split(x, y) => eps(a * (x + y)),
                    Semisimple::Elliptic(n) => eps(a * n),
                })
                .collect(),
        );
    }
    for a in 0..qm {
        labels.push(format!("V_{a}"));
        rows.push(
            classes
                .iter()
                .map(|c| match c.semisimple {
                    Semisimple::Central(x) if c.unipotent_part == 0 => scaled(qi, eps(2 * a * x)),
                    Semisimple::Central(_) => ri(0),
                    Semisimple::Split(x, y) => eps(a * (x + y)),
                    Semisimple::Elliptic(n) => -eps(a * n),
                })
                .collect(),
        );
    }
    for (a, b) in pairs(q) {
        labels.push(format!("W_{a},{b}"));
        rows.push(
            classes
                .iter()
                .map(|c| match c.semisimple {
                    Semisimple::Central(x) if c.unipotent_part == 0 => scaled(qi + 1, eps((a + b) * x)),
                    Semisimple::Central(x) => eps((a + b) * x),
                    Semisimple::Split(x, y) => &eps(a * x + b * y) + &eps(a * y + b * x),
                    Semisimple::Elliptic(_) => ri(0),
                })
                .collect(),
        );
    }
    for k in elliptic_reps(q) {
        labels.push(format!("X_{k}"));
        rows.push(
            classes
                .iter()
                .map(|c| match c.semisimple {
                    Semisimple::Central(x) if c.unipotent_part == 0 => scaled(qi - 1, nu(k * (q + 1) * x)),
                    Semisimple::Central(x) => -nu(k * (q + 1) * x),
                    Semisimple::Split(..) => ri(0),
                    Semisimple::Elliptic(n) => -(&nu(k * n) + &nu(q * k * n)),
                })
                .collect(),
        );
    }
    CharTable { labels, values: rows }
}

/// Decomposition of `R_w^theta`, `theta` given by the lattice vector `(a, b)`.
pub(super) fn decompose(q: u64, w: usize, lambda: &[i64], table: &CharTable) -> Vec<i64> {
    let qm = (q - 1) as i64;
    let index: HashMap<&str, usize> = table.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut m = vec![0i64; table.len()];
    if w == 0 {
        let a = lambda[0].rem_euclid(qm);
        let b = lambda[1].rem_euclid(qm);
        if a == b {
            m[index[format!("U_{a}").as_str()]] = 1;
            m[index[format!("V_{a}").as_str()]] = 1;
        } else {
            m[index[format!("W_{},{}", a.min(b), a.max(b)).as_str()]] = 1;
        }
    } else {
        let n = (lambda[0] + q as i64 * lambda[1]).rem_euclid((q * q - 1) as i64) as u64;
        if n.is_multiple_of(q + 1) {
            let a = n / (q + 1);
            m[index[format!("U_{a}").as_str()]] = 1;
            m[index[format!("V_{a}").as_str()]] = -1;
        } else {
            m[index[format!("X_{}", elliptic_rep(q, n)).as_str()]] = -1;
        }
    }
    m
}

pub(super) fn theta_at(q: u64, w: usize, lambda: &[i64], s: Semisimple) -> Option<CycNum> {
    let (a, b) = (lambda[0], lambda[1]);
    let m = q * q - 1;
    match (w, s) {
        (0, Semisimple::Central(c)) => Some(CycNum::root_of_unity(q - 1, (a + b) * c as i64)),
        (0, Semisimple::Split(x, y)) => Some(CycNum::root_of_unity(q - 1, a * x as i64 + b * y as i64)),
        (1, Semisimple::Central(c)) => Some(CycNum::root_of_unity(m, (a + q as i64 * b) * ((q + 1) * c) as i64)),
        (1, Semisimple::Elliptic(n)) => Some(CycNum::root_of_unity(m, (a + q as i64 * b) * n as i64)),
        _ => None,
    }
}

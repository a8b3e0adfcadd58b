//! `SL2(q)`, `q` odd. With `h = (q-1)/2`, the characters are ordered
//! `1, St, rho_i (1 <= i < h), pi_j (1 <= j <= h), rho_0', rho_0'', pi_0', pi_0''`
//! and the classes `I, -I, J, J', -J, -J', a^l (1 <= l < h), b^m (1 <= m <= h)`.

use super::{half, ri, CharTable, ClassInfo, DlError, Semisimple};
use crate::cyclotomic::{delta, sqrt_delta_q, CycNum, Rational};

fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(super) fn classes(q: u64) -> Vec<ClassInfo> {
    let h = (q - 1) / 2;
    let reg = (q * q - 1) / 2;
    let c = |label: String, size, unipotent, fusion, semisimple, unipotent_part| ClassInfo { label, size, unipotent, fusion, semisimple, unipotent_part };
    let mut v = vec![
        c("I".into(), 1, true, 0, Semisimple::Central(0), 0),
        c("-I".into(), 1, false, 1, Semisimple::Central(h), 0),
        c("J".into(), reg, true, 2, Semisimple::Central(0), 2),
        c("J'".into(), reg, true, 2, Semisimple::Central(0), 3),
        c("-J".into(), reg, false, 3, Semisimple::Central(h), 2),
        c("-J'".into(), reg, false, 3, Semisimple::Central(h), 3),
    ];
    for l in 1..h {
        v.push(c(format!("a^{l}"), q * (q + 1), false, 3 + l as usize, Semisimple::Split(l, q - 1 - l), 0));
    }
    for m in 1..=h {
        v.push(c(format!("b^{m}"), q * (q - 1), false, 2 + h as usize + m as usize, Semisimple::Elliptic(m * (q - 1)), 0));
    }
    v
}

pub(super) fn table(q: u64) -> Result<CharTable, DlError> {
    let h = (q - 1) / 2;
    let qi = q as i64;
    let d = delta(q);
    let g = sqrt_delta_q(q)?;
    let eps = |k: u64| CycNum::root_of_unity(q - 1, k as i64);
    let eta = |k: u64| CycNum::root_of_unity(q + 1, k as i64);
    let mut labels = Vec::new();
    let mut rows: Vec<Vec<CycNum>> = Vec::new();
    // class-group layout: 6 fixed classes, then a^l, then b^m
    let row = |fixed: [CycNum; 6], split: &dyn Fn(u64) -> CycNum, ell: &dyn Fn(u64) -> CycNum| {
        let mut r: Vec<CycNum> = fixed.into_iter().collect();
        r.extend((1..h).map(split));
        r.extend((1..=h).map(ell));
        r
    };
    labels.push("1".to_string());
    rows.push(row([ri(1), ri(1), ri(1), ri(1), ri(1), ri(1)], &|_| ri(1), &|_| ri(1)));
    labels.push("St".to_string());
    rows.push(row([ri(qi), ri(qi), ri(0), ri(0), ri(0), ri(0)], &|_| ri(1), &|_| ri(-1)));
    for i in 1..h {
        let s = sign(i);
        labels.push(format!("rho_{i}"));
        rows.push(row(
            [ri(qi + 1), ri(s * (qi + 1)), ri(1), ri(1), ri(s), ri(s)],
            &|l| &eps(i * l) + &eps((q - 1) - (i * l) % (q - 1)),
            &|_| ri(0),
        ));
    }
    for j in 1..=h {
        let s = sign(j);
        labels.push(format!("pi_{j}"));
        rows.push(row(
            [ri(qi - 1), ri(s * (qi - 1)), ri(-1), ri(-1), ri(-s), ri(-s)],
            &|_| ri(0),
            &|m| -(&eta(j * m) + &eta((q + 1) - (j * m) % (q + 1))),
        ));
    }
    for (suffix, gs) in [("'", g.clone()), ("''", -g.clone())] {
        let at_j = half(&(&ri(1) + &gs));
        let at_j2 = half(&(&ri(1) - &gs));
        labels.push(format!("rho_0{suffix}"));
        rows.push(row(
            [ri((qi + 1) / 2), ri(d * (qi + 1) / 2), at_j.clone(), at_j2.clone(), at_j.scale(&Rational::from_integer(d.into())), at_j2.scale(&Rational::from_integer(d.into()))],
            &|l| ri(sign(l)),
            &|_| ri(0),
        ));
    }
    for (suffix, gs) in [("'", g.clone()), ("''", -g)] {
        let at_j = half(&(&ri(-1) - &gs));
        let at_j2 = half(&(&ri(-1) + &gs));
        labels.push(format!("pi_0{suffix}"));
        rows.push(row(
            [ri((qi - 1) / 2), ri(-d * (qi - 1) / 2), at_j.clone(), at_j2.clone(), at_j.scale(&Rational::from_integer((-d).into())), at_j2.scale(&Rational::from_integer((-d).into()))],
            &|_| ri(0),
            &|m| ri(-sign(m)),
        ));
    }
    Ok(CharTable { labels, values: rows })
}

fn rho(i: u64) -> usize {
    2 + i as usize - 1
}

fn pi(q: u64, j: u64) -> usize {
    2 + ((q - 3) / 2) as usize + j as usize - 1
}

/// Decomposition of `R_w^theta` for the torus character given by `lambda`.
pub(super) fn decompose(q: u64, w: usize, lambda: &[i64], n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n];
    let qi = q as usize;
    if w == 0 {
        let i = lambda[0].rem_euclid(q as i64 - 1) as u64;
        let i = i.min(q - 1 - i);
        if i == 0 {
            m[0] = 1;
            m[1] = 1;
        } else if i == (q - 1) / 2 {
            m[qi] = 1;
            m[qi + 1] = 1;
        } else {
            m[rho(i)] = 1;
        }
    } else {
        let j = lambda[0].rem_euclid(q as i64 + 1) as u64;
        let j = j.min(q + 1 - j);
        if j == 0 {
            m[0] = 1;
            m[1] = -1;
        } else if j == q.div_ceil(2) {
            m[qi + 2] = -1;
            m[qi + 3] = -1;
        } else {
            m[pi(q, j)] = -1;
        }
    }
    m
}

pub(super) fn theta_at(q: u64, w: usize, lambda: &[i64], s: Semisimple) -> Option<CycNum> {
    let k = lambda[0];
    match (w, s) {
        (0, Semisimple::Central(c)) | (0, Semisimple::Split(c, _)) => Some(CycNum::root_of_unity(q - 1, k * c as i64)),
        (1, Semisimple::Central(c)) => Some(CycNum::root_of_unity(q * q - 1, k * ((q + 1) * c) as i64)),
        (1, Semisimple::Elliptic(n)) => Some(CycNum::root_of_unity(q * q - 1, k * n as i64)),
        _ => None,
    }
}

//! Restriction from `GL2(q)` to `SL2(q)`.

use std::collections::{BTreeSet, HashMap};

use super::checks::CheckOutcome;
use super::{gl2, DLTables, DlError, Group};
use crate::cyclotomic::{CycNum, Rational};
use crate::exec::Exec;

/// For each `SL2` class, the `GL2` class containing it.
pub fn class_map(sl2: &DLTables, gl2: &DLTables) -> Result<Vec<usize>, DlError> {
    if sl2.group != Group::SL2 || gl2.group != Group::GL2 {
        return Err(DlError::UnknownGroup("restriction needs SL2 and GL2 tables".into()));
    }
    if sl2.q != gl2.q {
        return Err(DlError::MismatchedQ);
    }
    let q = sl2.q;
    let h = (q - 1) / 2;
    sl2.classes
        .iter()
        .map(|c| {
            let target = match c.label.as_str() {
                "I" => "c_0".to_string(),
                "-I" => format!("c_{h}"),
                "J" | "J'" => "d_0".to_string(),
                "-J" | "-J'" => format!("d_{h}"),
                l if l.starts_with("a^") => {
                    let e: u64 = l[2..].parse().expect("class label");
                    format!("b_{e},{}", q - 1 - e)
                }
                l if l.starts_with("b^") => {
                    let m: u64 = l[2..].parse().expect("class label");
                    format!("e_{}", gl2::elliptic_rep(q, m * (q - 1)))
                }
                other => return Err(DlError::UnsupportedElement(other.to_string())),
            };
            gl2.class_index(&target).ok_or(DlError::UnsupportedElement(target))
        })
        .collect()
}

/// Image of a `GL2` lattice vector in the `SL2` character lattice.
pub fn restrict_lattice(lambda: &[i64]) -> Vec<i64> {
    vec![lambda[0] - lambda[1]]
}

pub struct Restriction {
    /// `constituents[i]`: multiplicities of `SL2` characters in `Res chi_i`.
    pub constituents: Vec<Vec<i64>>,
    /// `tensor_orbit[i]`: indices `j` with `chi_j = chi_i ⊗ U_b` for some `b`.
    pub tensor_orbit: Vec<BTreeSet<usize>>,
    /// Number of linear characters `U_b` with `chi_i ⊗ U_b = chi_i`.
    pub stabilizer: Vec<usize>,
}

pub fn restrict(sl2: &DLTables, gl2: &DLTables, exec: Exec) -> Result<Restriction, DlError> {
    let map = class_map(sl2, gl2)?;
    let res = |f: &[CycNum]| map.iter().map(|&k| f[k].clone()).collect::<Vec<_>>();
    let coords: Vec<Result<Vec<i64>, DlError>> = exec.map(&gl2.table.values, |chi| {
        sl2.coordinates(&res(chi))?
            .iter()
            .map(|c| c.as_integer().and_then(|v| i64::try_from(v).ok()).ok_or(DlError::UnsupportedElement(format!("coordinate {c}"))))
            .collect()
    });
    let constituents = coords.into_iter().collect::<Result<Vec<_>, _>>()?;
    let lookup: HashMap<&[CycNum], usize> = gl2.table.values.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let linear: Vec<usize> = (0..gl2.table.len()).filter(|&i| gl2.table.labels[i].starts_with("U_")).collect();
    let mut tensor_orbit = Vec::new();
    let mut stabilizer = Vec::new();
    for (i, chi) in gl2.table.values.iter().enumerate() {
        let mut orbit = BTreeSet::new();
        let mut stab = 0;
        for &u in &linear {
            let prod: Vec<CycNum> = chi.iter().zip(&gl2.table.values[u]).map(|(a, b)| a * b).collect();
            let j = *lookup.get(prod.as_slice()).ok_or(DlError::UnsupportedElement("tensor product is not irreducible".into()))?;
            orbit.insert(j);
            if j == i {
                stab += 1;
            }
        }
        tensor_orbit.push(orbit);
        stabilizer.push(stab);
    }
    Ok(Restriction { constituents, tensor_orbit, stabilizer })
}

pub(crate) fn check_restriction(sl2: &DLTables, gl2: &DLTables, exec: Exec) -> Result<CheckOutcome, DlError> {
    const NAME: &str = "restriction";
    let map = class_map(sl2, gl2)?;
    let r = restrict(sl2, gl2, exec)?;
    let mut failures = Vec::new();
    let mut total = 0;

    // multiplicity freeness, constituent count, degrees
    for (i, c) in r.constituents.iter().enumerate() {
        total += 3;
        let label = &gl2.table.labels[i];
        let support: Vec<usize> = (0..c.len()).filter(|&k| c[k] != 0).collect();
        let count = support.len() as i64;
        if c.iter().any(|&m| m != 0 && m != 1) {
            failures.push(format!("{label}: restriction not multiplicity-free"));
        }
        if !(count == 1 || count == 2) {
            failures.push(format!("{label}: {count} constituents"));
        }
        if r.stabilizer[i] as i64 != count {
            failures.push(format!("{label}: {count} constituents but stabilizer of order {}", r.stabilizer[i]));
        }
        let big = gl2.degree_invariants(i)?.polynomial;
        for &k in &support {
            total += 1;
            let small = sl2.degree_invariants(k)?.polynomial;
            if small != big.scale(&Rational::new(1.into(), count.into())) {
                failures.push(format!("{label} -> {}: degree polynomial {small} is not {big}/{count}", sl2.table.labels[k]));
            }
        }
    }

    // restriction of R_w^theta
    for e in &gl2.family {
        total += 1;
        let target = sl2.tori[e.element].theta_from_lambda(&restrict_lattice(&e.lambda));
        let Some(f) = sl2.family.iter().find(|f| f.element == e.element && f.theta == target) else {
            failures.push(format!("no SL2 entry for theta {target:?}"));
            continue;
        };
        let res: Vec<CycNum> = map.iter().map(|&k| e.values[k].clone()).collect();
        if res != f.values {
            failures.push(format!("Res R_{}^{:?} differs from R^{target:?}", gl2.datum.element_label(e.element), e.theta));
        }
        // multiplicity transfer: <rho_i, R> = (|Stab|/r) sum over the tensor orbit of <chi', R~>
        for (i, c) in r.constituents.iter().enumerate() {
            let count: i64 = c.iter().filter(|&&m| m != 0).count() as i64;
            let orbit_sum: i64 = r.tensor_orbit[i].iter().map(|&j| e.mults[j]).sum();
            let predicted = Rational::new((r.stabilizer[i] as i64 * orbit_sum).into(), count.into());
            for k in (0..c.len()).filter(|&k| c[k] != 0) {
                total += 1;
                if predicted != Rational::from_integer(f.mults[k].into()) {
                    failures.push(format!("<{}, R> = {} but transfer gives {predicted}", sl2.table.labels[k], f.mults[k]));
                }
            }
        }
    }

    // restriction series versus the SL2 graph
    let mut series: BTreeSet<Vec<usize>> = BTreeSet::new();
    for comp in gl2.graph_components() {
        let mut s = BTreeSet::new();
        for i in comp {
            s.extend((0..sl2.table.len()).filter(|&k| r.constituents[i][k] != 0));
        }
        series.insert(s.into_iter().collect());
    }
    let graph: BTreeSet<Vec<usize>> = sl2.graph_components().into_iter().collect();
    total += 2;
    if series != graph {
        failures.push("restriction series differ from the SL2 graph components".into());
    }
    if graph.len() as u64 != sl2.q + 1 {
        failures.push(format!("SL2 graph has {} components", graph.len()));
    }
    let mut out = CheckOutcome::from_failures(NAME, total, failures);
    if out.passed {
        out.detail.push_str(&format!("; {} SL2 graph components", graph.len()));
    }
    Ok(out)
}

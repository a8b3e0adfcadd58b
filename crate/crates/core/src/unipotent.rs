//! Combinatorial parametrization of unipotent characters: cuspidal data per
//! type, the product rule over Levi components, and the full census by
//! Harish-Chandra series.

use std::fmt;

use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::weyl::{class_count_product, classify_component, components, CartanType, RelativeType, Series, WeylError, WeylGroup};
use crate::Exec;

/// `exp(2 pi i k / n)` with `k / n` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    pub order: u32,
    pub exp: u32,
}

impl RootOfUnity {
    pub fn new(order: u32, exp: i64) -> RootOfUnity {
        let k = exp.rem_euclid(order as i64) as u32;
        let g = num_integer::gcd(k, order).max(1);
        let (order, exp) = if k == 0 { (1, 0) } else { (order / g, k / g) };
        RootOfUnity { order, exp }
    }

    pub fn one() -> RootOfUnity {
        RootOfUnity::new(1, 0)
    }

    pub fn minus_one() -> RootOfUnity {
        RootOfUnity::new(2, 1)
    }

    pub fn mul(self, o: RootOfUnity) -> RootOfUnity {
        let n = num_integer::lcm(self.order, o.order);
        RootOfUnity::new(n, (self.exp * (n / self.order) + o.exp * (n / o.order)) as i64)
    }

    pub fn to_cyc(self) -> CycNum {
        CycNum::root_of_unity(self.order as u64, self.exp as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (self.order, self.exp) {
            (1, _) => "1".to_string(),
            (2, _) => "-1".to_string(),
            (3, 1) => "theta".to_string(),
            (3, 2) => "theta^2".to_string(),
            (4, 1) => "i".to_string(),
            (4, 3) => "-i".to_string(),
            (5, 1) => "zeta".to_string(),
            (5, k) => format!("zeta^{k}"),
            (6, 5) => "-theta".to_string(),
            (6, 1) => "-theta^2".to_string(),
            (n, k) => format!("z{n}^{k}"),
        };
        write!(f, "{s}")
    }
}

/// A pair `(omega, m)` labelling one cuspidal unipotent character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CuspidalDatum {
    pub omega: RootOfUnity,
    pub m: u64,
}

impl CuspidalDatum {
    fn new(order: u32, exp: i64, m: u64) -> CuspidalDatum {
        CuspidalDatum { omega: RootOfUnity::new(order, exp), m }
    }

    pub fn trivial() -> CuspidalDatum {
        CuspidalDatum::new(1, 0, 1)
    }

    /// Componentwise product `(omega omega', m m')`.
    pub fn combine(self, o: CuspidalDatum) -> CuspidalDatum {
        CuspidalDatum { omega: self.omega.mul(o.omega), m: self.m * o.m }
    }
}

impl fmt::Display for CuspidalDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.omega, self.m)
    }
}

fn sign(e: usize) -> (u32, i64) {
    if e.is_multiple_of(2) {
        (1, 0)
    } else {
        (2, 1)
    }
}

/// Cuspidal data of an irreducible (possibly twisted) type.
pub fn xcirc(t: &CartanType) -> Vec<CuspidalDatum> {
    let c = CuspidalDatum::new;
    let n = t.rank;
    match (t.twist, t.series) {
        (1, Series::A) => vec![],
        (1, Series::B | Series::C) => match (1..=n).find(|l| l * l + l == n) {
            Some(l) => {
                let (o, e) = sign(n / 2);
                vec![c(o, e, 1 << l)]
            }
            None => vec![],
        },
        (1, Series::D) => match (1..=n).find(|l| 4 * l * l == n) {
            Some(l) => {
                let (o, e) = sign(n / 4);
                vec![c(o, e, 1 << (2 * l - 1))]
            }
            None => vec![],
        },
        (1, Series::G) => vec![c(1, 0, 6), c(2, 1, 2), c(3, 1, 3), c(3, 2, 3)],
        (1, Series::F) => vec![c(1, 0, 8), c(1, 0, 24), c(2, 1, 4), c(4, 1, 4), c(4, 3, 4), c(3, 1, 3), c(3, 2, 3)],
        (1, Series::E) => match n {
            6 => vec![c(3, 1, 3), c(3, 2, 3)],
            7 => vec![c(4, 1, 2), c(4, 3, 2)],
            _ => vec![
                c(1, 0, 8),
                c(1, 0, 120),
                c(2, 1, 12),
                c(4, 1, 4),
                c(4, 3, 4),
                // theta, -theta, theta^2, -theta^2
                c(3, 1, 6),
                c(6, 5, 6),
                c(3, 2, 6),
                c(6, 1, 6),
                c(5, 1, 5),
                c(5, 2, 5),
                c(5, 3, 5),
                c(5, 4, 5),
            ],
        },
        (2, Series::A) => {
            if (1..=n + 2).any(|l| l * (l - 1) / 2 == n + 1) {
                let (o, e) = sign(n.div_ceil(2));
                vec![c(o, e, 1)]
            } else {
                vec![]
            }
        }
        (2, Series::D) => match (1..=n).find(|l| (2 * l + 1) * (2 * l + 1) == n) {
            Some(l) => vec![c(1, 0, 1 << (2 * l))],
            None => vec![],
        },
        (3, Series::D) => vec![c(1, 0, 2), c(2, 1, 2)],
        (2, Series::E) => vec![c(1, 0, 6), c(3, 1, 3), c(3, 2, 3)],
        _ => unreachable!("inadmissible types cannot be constructed"),
    }
}

/// One sigma-orbit of Levi components, with its induced twisted type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviFactor {
    pub nodes: Vec<usize>,
    pub orbit_size: usize,
    pub component_type: CartanType,
}

/// Decomposes a stable subset `J` into sigma-orbits of components.
pub fn levi_factors(g: &WeylGroup, j: &[usize]) -> Result<Vec<LeviFactor>, WeylError> {
    if let Some(&bad) = j.iter().find(|&&i| i >= g.rank()) {
        return Err(WeylError::NodeOutOfRange(bad));
    }
    if !g.is_sigma_stable(j) {
        return Err(WeylError::NotSigmaStable(j.to_vec()));
    }
    let cartan = g.roots().cartan();
    let sig = g.sigma_nodes();
    let comps = components(cartan, j);
    let mut used = vec![false; comps.len()];
    let mut out = Vec::new();
    for start in 0..comps.len() {
        if used[start] {
            continue;
        }
        // follow the orbit of this component
        let mut h = 0;
        let mut cur = start;
        let mut nodes = Vec::new();
        loop {
            used[cur] = true;
            nodes.extend(&comps[cur]);
            h += 1;
            let mut img: Vec<usize> = comps[cur].iter().map(|&i| sig[i]).collect();
            img.sort_unstable();
            cur = comps.iter().position(|c| *c == img).expect("sigma permutes components");
            if cur == start {
                break;
            }
        }
        let comp = &comps[start];
        let power = |i: usize| (0..h).fold(i, |k, _| sig[k]);
        let mut twist = 1u8;
        let mut probe: Vec<usize> = comp.clone();
        loop {
            probe = probe.iter().map(|&i| power(i)).collect();
            if probe == *comp {
                break;
            }
            twist += 1;
        }
        let base = classify_component(cartan, comp)?;
        nodes.sort_unstable();
        out.push(LeviFactor {
            nodes,
            orbit_size: h,
            component_type: CartanType::new(base.series, base.rank, twist)?,
        });
    }
    Ok(out)
}

/// Cuspidal data of the Levi subgroup `W_J`, as the product over orbits.
pub fn xcirc_levi(g: &WeylGroup, j: &[usize]) -> Result<Vec<CuspidalDatum>, WeylError> {
    let mut acc = vec![CuspidalDatum::trivial()];
    for f in levi_factors(g, j)? {
        let local = xcirc(&f.component_type);
        acc = acc.iter().flat_map(|a| local.iter().map(move |b| a.combine(*b))).collect();
        if acc.is_empty() {
            break;
        }
    }
    acc.sort();
    Ok(acc)
}

fn levi_label(factors: &[LeviFactor]) -> String {
    if factors.is_empty() {
        return "trivial".into();
    }
    factors
        .iter()
        .map(|f| {
            if f.orbit_size == 1 {
                f.component_type.to_string()
            } else {
                format!("({})^{}", f.component_type, f.orbit_size)
            }
        })
        .collect::<Vec<_>>()
        .join("x")
}

/// One Harish-Chandra series: a stable `J` with nonempty cuspidal data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesInfo {
    /// Nodes of `J`, 0-based.
    pub j: Vec<usize>,
    pub levi: String,
    pub relative: RelativeType,
    pub cuspidals: Vec<CuspidalDatum>,
    pub irr_count: u64,
}

impl SeriesInfo {
    pub fn size(&self) -> u64 {
        self.cuspidals.len() as u64 * self.irr_count
    }
}

/// A unipotent character label `(J, eps, x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct XEntry {
    pub j: Vec<usize>,
    pub eps_index: u64,
    pub relative_type: RelativeType,
    pub x: CuspidalDatum,
}

/// All stable subsets of the nodes, in lexicographic order of their sorted node lists.
pub fn stable_subsets(g: &WeylGroup) -> Vec<Vec<usize>> {
    let r = g.rank();
    let mut out: Vec<Vec<usize>> = (0u64..1 << r)
        .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect::<Vec<usize>>())
        .filter(|j| g.is_sigma_stable(j))
        .collect();
    out.sort();
    out
}

/// Series with nonempty cuspidal data, ordered by `J`.
pub fn series_breakdown(t: &CartanType, exec: Exec) -> Result<Vec<SeriesInfo>, WeylError> {
    let g = WeylGroup::new(*t);
    let subsets = stable_subsets(&g);
    let found = exec.map(&subsets, |j| -> Result<Option<SeriesInfo>, WeylError> {
        let cuspidals = xcirc_levi(&g, j)?;
        if cuspidals.is_empty() {
            return Ok(None);
        }
        let relative = g.relative_weyl_type(j)?;
        let irr_count = class_count_product(&relative)?;
        Ok(Some(SeriesInfo {
            j: j.clone(),
            levi: levi_label(&levi_factors(&g, j)?),
            relative,
            cuspidals,
            irr_count,
        }))
    });
    found.into_iter().filter_map(|r| r.transpose()).collect()
}

pub fn enumerate_x(t: &CartanType, exec: Exec) -> Result<Vec<XEntry>, WeylError> {
    let mut out = Vec::new();
    for s in series_breakdown(t, exec)? {
        for x in &s.cuspidals {
            for eps_index in 0..s.irr_count {
                out.push(XEntry { j: s.j.clone(), eps_index, relative_type: s.relative.clone(), x: *x });
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn count_unipotent(t: &CartanType, exec: Exec) -> Result<u64, WeylError> {
    Ok(series_breakdown(t, exec)?.iter().map(SeriesInfo::size).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn cuspidal_lists() {
        assert!(xcirc(&t("A5")).is_empty());
        assert_eq!(xcirc(&t("B2")), vec![CuspidalDatum::new(2, 1, 2)]);
        assert_eq!(xcirc(&t("C2")), xcirc(&t("B2")));
        assert_eq!(xcirc(&t("B6")), vec![CuspidalDatum::new(2, 1, 4)]);
        assert_eq!(xcirc(&t("C12")), vec![CuspidalDatum::new(1, 0, 8)]);
        assert!(xcirc(&t("B3")).is_empty());
        assert_eq!(xcirc(&t("D4")), vec![CuspidalDatum::new(2, 1, 2)]);
        assert_eq!(xcirc(&t("D16")), vec![CuspidalDatum::new(1, 0, 8)]);
        assert_eq!(xcirc(&t("2A2")), vec![CuspidalDatum::new(2, 1, 1)]);
        assert_eq!(xcirc(&t("2A5")), vec![CuspidalDatum::new(2, 1, 1)]);
        assert!(xcirc(&t("2A3")).is_empty());
        assert_eq!(xcirc(&t("2D9")), vec![CuspidalDatum::new(1, 0, 4)]);
        assert!(xcirc(&t("2D4")).is_empty());
        let e8 = xcirc(&t("E8"));
        assert_eq!(e8.len(), 13);
        let mut uniq = e8.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 13);
        for (s, n) in [("G2", 4), ("F4", 7), ("E6", 2), ("E7", 2), ("2E6", 3), ("3D4", 2)] {
            assert_eq!(xcirc(&t(s)).len(), n, "{s}");
        }
        for e in e8 {
            assert!([1, 2, 3, 4, 5, 6].contains(&e.omega.order));
        }
    }

    #[test]
    fn root_of_unity_labels() {
        assert_eq!(RootOfUnity::new(6, 5).to_string(), "-theta");
        assert_eq!(RootOfUnity::new(6, 3), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(3, 1).mul(RootOfUnity::new(2, 1)), RootOfUnity::new(6, 5));
        assert_eq!(RootOfUnity::new(4, 1).to_cyc().pow(2), CycNum::from_int(-1));
    }

    #[test]
    fn levi_products() {
        let g = WeylGroup::new(t("2E6"));
        assert_eq!(xcirc_levi(&g, &[]).unwrap(), vec![CuspidalDatum::trivial()]);
        // Bourbaki {1,3} and {5,6} are A2 components swapped by sigma
        assert!(xcirc_levi(&g, &[0, 2, 4, 5]).unwrap().is_empty());
        // Bourbaki {1,3,4,5,6}: A5 with the flip
        assert_eq!(xcirc_levi(&g, &[0, 2, 3, 4, 5]).unwrap(), vec![CuspidalDatum::new(2, 1, 1)]);
        assert!(xcirc_levi(&g, &[0]).is_err());
    }

    #[test]
    fn product_rule_on_reducible_ambient() {
        // G2 x B2 with trivial sigma: product of the two cuspidal sets
        let mut a = vec![vec![0i32; 4]; 4];
        a[0][0] = 2;
        a[1][1] = 2;
        a[0][1] = -3;
        a[1][0] = -1;
        a[2][2] = 2;
        a[3][3] = 2;
        a[2][3] = -1;
        a[3][2] = -2;
        let g = WeylGroup::from_cartan(a, vec![0, 1, 2, 3]).unwrap();
        let x = xcirc_levi(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(x.len(), 4);
        assert!(x.contains(&CuspidalDatum::new(2, 1, 12)));
        assert!(x.contains(&CuspidalDatum::new(6, 5, 6)));
        // A2 x A2 swapped: orbit of size 2, untwisted A2 has no cuspidals
        let mut b = vec![vec![0i32; 4]; 4];
        for i in 0..4 {
            b[i][i] = 2;
        }
        b[0][1] = -1;
        b[1][0] = -1;
        b[2][3] = -1;
        b[3][2] = -1;
        let h = WeylGroup::from_cartan(b.clone(), vec![2, 3, 0, 1]).unwrap();
        let f = levi_factors(&h, &[0, 1, 2, 3]).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].orbit_size, 2);
        assert!(xcirc_levi(&h, &[0, 1, 2, 3]).unwrap().is_empty());
        // B2 x B2 swapped: sigma^2 = id on one B2, giving its single cuspidal
        let mut c = vec![vec![0i32; 4]; 4];
        for i in 0..4 {
            c[i][i] = 2;
        }
        c[0][1] = -1;
        c[1][0] = -2;
        c[2][3] = -1;
        c[3][2] = -2;
        let k = WeylGroup::from_cartan(c, vec![2, 3, 0, 1]).unwrap();
        assert_eq!(xcirc_levi(&k, &[0, 1, 2, 3]).unwrap(), vec![CuspidalDatum::new(2, 1, 2)]);
    }

    #[test]
    fn small_censuses() {
        let ex = Exec::default();
        assert_eq!(count_unipotent(&t("A1"), ex).unwrap(), 2);
        assert_eq!(count_unipotent(&t("A4"), ex).unwrap(), 7);
        assert_eq!(count_unipotent(&t("G2"), ex).unwrap(), 10);
        assert_eq!(count_unipotent(&t("3D4"), ex).unwrap(), 8);
        assert_eq!(count_unipotent(&t("2A2"), ex).unwrap(), 3);
        // B2: 5 principal series + 1 cuspidal
        assert_eq!(count_unipotent(&t("B2"), ex).unwrap(), 6);
        let x = enumerate_x(&t("A1"), ex).unwrap();
        assert_eq!(x.len(), 2);
        assert!(x.iter().all(|e| e.j.is_empty() && e.x == CuspidalDatum::trivial()));
    }

    #[test]
    fn exceptional_totals() {
        for (s, n) in [("F4", 37), ("E6", 30), ("2E6", 30), ("E7", 76), ("E8", 166)] {
            assert_eq!(count_unipotent(&t(s), Exec::default()).unwrap(), n, "{s}");
        }
    }

    #[test]
    fn cuspidal_embedding_is_full_subset() {
        for s in ["G2", "F4", "E6", "2E6", "3D4"] {
            let tt = t(s);
            let all: Vec<usize> = (0..tt.rank).collect();
            let entries = enumerate_x(&tt, Exec::default()).unwrap();
            let mut top: Vec<CuspidalDatum> = entries.iter().filter(|e| e.j == all).map(|e| e.x).collect();
            top.sort();
            let mut expect = xcirc(&tt);
            expect.sort();
            assert_eq!(top, expect, "{s}");
        }
    }
}

//! Cartan types, Bourbaki-numbered Cartan matrices and diagram automorphisms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::WeylError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// An irreducible type, possibly twisted (`2A_n`, `2D_n`, `3D4`, `2E6`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
    pub twist: u8,
}

impl CartanType {
    pub fn new(series: Series, rank: usize, twist: u8) -> Result<CartanType, WeylError> {
        use Series::*;
        let rank_ok = match series {
            A => rank >= 1,
            B | C => rank >= 2,
            D => rank >= 4,
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        let twist_ok = match twist {
            1 => true,
            2 => matches!((series, rank), (A, r) if r >= 2) || matches!((series, rank), (D, r) if r >= 4) || (series, rank) == (E, 6),
            3 => (series, rank) == (D, 4),
            _ => false,
        };
        if !rank_ok || !twist_ok {
            return Err(WeylError::Inadmissible(format!(
                "{}{}{}",
                if twist > 1 { twist.to_string() } else { String::new() },
                series.letter(),
                rank
            )));
        }
        Ok(CartanType { series, rank, twist })
    }

    pub fn untwisted(series: Series, rank: usize) -> Result<CartanType, WeylError> {
        CartanType::new(series, rank, 1)
    }

    pub fn is_twisted(&self) -> bool {
        self.twist > 1
    }

    /// Same series and rank with trivial twist.
    pub fn base(&self) -> CartanType {
        CartanType { twist: 1, ..*self }
    }

    /// Number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => [36, 63, 120][n - 6],
            Series::F => 24,
            Series::G => 6,
        }
    }

    /// Order of the (untwisted) Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => [51_840, 2_903_040, 696_729_600][self.rank - 6],
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Bourbaki-numbered Cartan matrix with `a[i][j] = <alpha_i^vee, alpha_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Series::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Series::F => {
                for i in 0..3 {
                    link(i, i + 1);
                }
            }
            Series::G => link(0, 1),
        }
        match self.series {
            // alpha_n short
            Series::B => a[n - 1][n - 2] = -2,
            // alpha_n long
            Series::C => a[n - 2][n - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            Series::F => a[2][1] = -2,
            // alpha_1 short
            Series::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// The diagram automorphism as a permutation of the (0-based) nodes.
    pub fn sigma(&self) -> Vec<usize> {
        let n = self.rank;
        let mut s: Vec<usize> = (0..n).collect();
        match (self.twist, self.series) {
            (2, Series::A) => s = (0..n).rev().collect(),
            (2, Series::D) => s.swap(n - 2, n - 1),
            (3, Series::D) => {
                s[0] = 2;
                s[2] = 3;
                s[3] = 0;
            }
            (2, Series::E) => {
                s.swap(0, 5);
                s.swap(2, 4);
            }
            _ => {}
        }
        s
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist > 1 {
            write!(f, "{}", self.twist)?;
        }
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, WeylError> {
        let t = s.trim().to_ascii_uppercase();
        let bad = || WeylError::Parse(s.to_string());
        let (twist, rest) = match t.chars().next() {
            Some(c @ ('2' | '3')) => (c.to_digit(10).unwrap() as u8, &t[1..]),
            _ => (1, t.as_str()),
        };
        let mut chars = rest.chars();
        let series = match chars.next().ok_or_else(bad)? {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(series, rank, twist)
    }
}

impl Serialize for CartanType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits the nodes `subset` of a Cartan matrix into connected components.
pub fn components(cartan: &[Vec<i32>], subset: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; cartan.len()];
    let mut out = Vec::new();
    for &start in subset {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &u in subset {
                if !seen[u] && cartan[v][u] != 0 {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Classifies a connected set of nodes of a Cartan matrix as an untwisted type.
/// Double-bonded chains other than F4 are reported as B.
pub fn classify_component(cartan: &[Vec<i32>], nodes: &[usize]) -> Result<CartanType, WeylError> {
    let n = nodes.len();
    let unrecognized = || WeylError::Unrecognized(format!("Dynkin subdiagram on nodes {nodes:?}"));
    let bond = |a: usize, b: usize| cartan[a][b] * cartan[b][a];
    let neighbours =
        |v: usize| -> Vec<usize> { nodes.iter().copied().filter(|&u| u != v && cartan[v][u] != 0).collect() };
    let edges: Vec<(usize, usize, i32)> = nodes
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| nodes[i + 1..].iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| cartan[a][b] != 0)
        .map(|(a, b)| (a, b, bond(a, b)))
        .collect();
    if edges.len() + 1 != n {
        return Err(unrecognized());
    }
    if n == 1 {
        return CartanType::untwisted(Series::A, 1);
    }
    let max_bond = edges.iter().map(|e| e.2).max().unwrap_or(1);
    let degrees: Vec<usize> = nodes.iter().map(|&v| neighbours(v).len()).collect();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    match max_bond {
        3 if n == 2 => CartanType::untwisted(Series::G, 2),
        2 if max_deg <= 2 => {
            let (a, b, _) = *edges.iter().find(|e| e.2 == 2).unwrap();
            let end = |v: usize| neighbours(v).len() == 1;
            if end(a) || end(b) {
                CartanType::untwisted(Series::B, n)
            } else if n == 4 {
                CartanType::untwisted(Series::F, 4)
            } else {
                Err(unrecognized())
            }
        }
        1 if max_deg <= 2 => CartanType::untwisted(Series::A, n),
        1 if max_deg == 3 && degrees.iter().filter(|&&d| d == 3).count() == 1 => {
            let centre = nodes[degrees.iter().position(|&d| d == 3).unwrap()];
            let mut arms: Vec<usize> = neighbours(centre)
                .into_iter()
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (centre, start, 1);
                    loop {
                        let next: Vec<usize> = neighbours(cur).into_iter().filter(|&u| u != prev).collect();
                        match next.as_slice() {
                            [u] => {
                                prev = cur;
                                cur = *u;
                                len += 1;
                            }
                            _ => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => CartanType::untwisted(Series::D, k + 3),
                [1, 2, 2] => CartanType::untwisted(Series::E, 6),
                [1, 2, 3] => CartanType::untwisted(Series::E, 7),
                [1, 2, 4] => CartanType::untwisted(Series::E, 8),
                _ => Err(unrecognized()),
            }
        }
        _ => Err(unrecognized()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["A3", "2A5", "3D4", "2E6", "e8", "C2", "G2", "F4", "2d5"] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(t.to_string(), s.to_ascii_uppercase());
        }
        assert!("2A1".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("3D5".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
        assert!("X2".parse::<CartanType>().is_err());
    }

    #[test]
    fn rank_two_matrices() {
        let c2: CartanType = "C2".parse().unwrap();
        assert_eq!(c2.cartan_matrix(), vec![vec![2, -2], vec![-1, 2]]);
        let b2: CartanType = "B2".parse().unwrap();
        assert_eq!(b2.cartan_matrix(), vec![vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn sigma_preserves_cartan_matrix() {
        for s in ["2A2", "2A5", "2D4", "2D6", "3D4", "2E6"] {
            let t: CartanType = s.parse().unwrap();
            let a = t.cartan_matrix();
            let sg = t.sigma();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    assert_eq!(a[sg[i]][sg[j]], a[i][j], "{s}");
                }
            }
            let mut p: Vec<usize> = (0..t.rank).collect();
            for _ in 0..t.twist {
                p = p.iter().map(|&i| sg[i]).collect();
            }
            assert_eq!(p, (0..t.rank).collect::<Vec<_>>(), "{s}: sigma^twist = id");
        }
    }

    #[test]
    fn classify_subdiagrams() {
        let e8: CartanType = "E8".parse().unwrap();
        let a = e8.cartan_matrix();
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(classify_component(&a, &all).unwrap(), e8);
        // Bourbaki {2,3,4,5} is D4
        assert_eq!(classify_component(&a, &[1, 2, 3, 4]).unwrap().to_string(), "D4");
        assert_eq!(classify_component(&a, &[0, 1, 2, 3, 4, 5]).unwrap().to_string(), "E6");
        let f4: CartanType = "F4".parse().unwrap();
        let af = f4.cartan_matrix();
        assert_eq!(classify_component(&af, &[1, 2]).unwrap().to_string(), "B2");
        assert_eq!(classify_component(&af, &[0, 1, 2]).unwrap().to_string(), "B3");
        assert_eq!(classify_component(&af, &[1, 2, 3]).unwrap().to_string(), "B3");
        assert_eq!(components(&a, &[0, 4, 5, 7]).len(), 3);
    }
}

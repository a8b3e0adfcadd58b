//! Relative Weyl groups of stable parabolic subsets, Coxeter-matrix type
//! recognition and conjugacy-class counts.

use std::fmt;

use serde::Serialize;

use super::{classify_component, components, CartanType, ElementStore, Series, WeylElement, WeylError, WeylGroup};
use crate::numtheory::{partition_count, partitions};

/// A product of untwisted irreducible types; empty means the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RelativeType {
    pub components: Vec<CartanType>,
}

impl RelativeType {
    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.components.iter().map(coxeter_order).product()
    }
}

impl fmt::Display for RelativeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

pub fn coxeter_order(t: &CartanType) -> u128 {
    t.base().weyl_order()
}

/// Recognizes a finite Coxeter matrix of crystallographic type.
pub fn recognize_coxeter_matrix(m: &[Vec<usize>]) -> Result<RelativeType, WeylError> {
    let n = m.len();
    // Encode as a Cartan-like matrix so the Dynkin classifier can be reused.
    let mut fake = vec![vec![0i32; n]; n];
    for i in 0..n {
        fake[i][i] = 2;
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = match m[i][j] {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                k => return Err(WeylError::Unrecognized(format!("Coxeter label {k}"))),
            };
            if i < j {
                fake[i][j] = a;
                fake[j][i] = b;
            }
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let mut comps = Vec::new();
    for c in components(&fake, &all) {
        comps.push(classify_component(&fake, &c).map_err(|_| WeylError::Unrecognized(format!("Coxeter matrix {m:?}")))?);
    }
    Ok(RelativeType { components: comps })
}

impl WeylGroup {
    fn check_subset(&self, j: &[usize]) -> Result<Vec<usize>, WeylError> {
        let mut j = j.to_vec();
        j.sort_unstable();
        j.dedup();
        if let Some(&bad) = j.iter().find(|&&i| i >= self.rank()) {
            return Err(WeylError::NodeOutOfRange(bad));
        }
        if !self.is_sigma_stable(&j) {
            return Err(WeylError::NotSigmaStable(j));
        }
        Ok(j)
    }

    /// Canonical generators `w0(J u O) w0(J)`, one per orbit `O` of the diagram
    /// automorphism on `S \ J`.
    pub fn relative_generators(&self, j: &[usize]) -> Result<Vec<(Vec<usize>, WeylElement)>, WeylError> {
        let j = self.check_subset(j)?;
        let rest: Vec<usize> = (0..self.rank()).filter(|i| !j.contains(i)).collect();
        let w0j = self.longest_element(&j);
        let mut out = Vec::new();
        for orbit in self.sigma_orbits(&rest) {
            let mut jo = j.clone();
            jo.extend(&orbit);
            let c = self.longest_element(&jo).mul(&w0j);
            let normalizes = j.iter().all(|&k| {
                let img = c.apply(k);
                img < self.rank() && j.contains(&img)
            });
            if !normalizes {
                return Err(WeylError::NotNormalizing { orbit, j });
            }
            debug_assert_eq!(self.apply_sigma(&c), c);
            out.push((orbit, c));
        }
        Ok(out)
    }

    /// Type of the relative Weyl group of a stable subset `J`, without enumerating `W`.
    pub fn relative_weyl_type(&self, j: &[usize]) -> Result<RelativeType, WeylError> {
        let gens = self.relative_generators(j)?;
        let k = gens.len();
        let mut m = vec![vec![1usize; k]; k];
        for a in 0..k {
            for b in a + 1..k {
                let o = gens[a].1.mul(&gens[b].1).order();
                m[a][b] = o;
                m[b][a] = o;
            }
        }
        recognize_coxeter_matrix(&m)
    }

    /// Conjugacy classes (twisted by the diagram automorphism), counted by brute force.
    pub fn class_count_bruteforce(&self, store: &ElementStore) -> usize {
        let elems: Vec<WeylElement> = store.keys().iter().map(|&k| self.element_from_key(k)).collect();
        let sig_gens: Vec<WeylElement> = self.generators().iter().map(|s| self.apply_sigma(s)).collect();
        let mut seen = vec![false; elems.len()];
        let mut classes = 0;
        for start in 0..elems.len() {
            if seen[start] {
                continue;
            }
            classes += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (s, ss) in self.generators().iter().zip(&sig_gens) {
                    let u = s.mul(&elems[v]).mul(ss);
                    let idx = store.index_of(self.key(&u)).expect("closed under conjugation");
                    if !seen[idx] {
                        seen[idx] = true;
                        stack.push(idx);
                    }
                }
            }
        }
        classes
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[WeylElement]) -> usize {
        let mut seen = std::collections::HashSet::new();
        let id = self.identity();
        seen.insert(self.key(&id));
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            for g in gens {
                let u = v.mul(g);
                if seen.insert(self.key(&u)) {
                    stack.push(u);
                }
            }
        }
        seen.len()
    }
}

fn even_part_count_partitions(n: usize) -> u64 {
    partitions(n).iter().filter(|p| p.len() % 2 == 0).count() as u64
}

/// Number of conjugacy classes of an untwisted irreducible Weyl group.
pub fn class_count(t: &CartanType) -> Result<u64, WeylError> {
    if t.is_twisted() {
        return Err(WeylError::Twisted(t.to_string()));
    }
    let n = t.rank;
    Ok(match t.series {
        Series::A => partition_count(n + 1),
        Series::B | Series::C => (0..=n).map(|k| partition_count(k) * partition_count(n - k)).sum(),
        Series::D => {
            // signed cycle types with an even number of negative cycles; classes
            // with only positive cycles, all of even length, split in two
            let pairs: u64 = (0..=n).map(|k| partition_count(k) * even_part_count_partitions(n - k)).sum();
            let split = if n.is_multiple_of(2) { partition_count(n / 2) } else { 0 };
            pairs + split
        }
        Series::G => 6,
        Series::F => 25,
        Series::E => [25, 60, 112][n - 6],
    })
}

pub fn class_count_product(t: &RelativeType) -> Result<u64, WeylError> {
    t.components.iter().map(class_count).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exec;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(s.parse().unwrap())
    }

    #[test]
    fn relative_types() {
        assert_eq!(group("E6").relative_weyl_type(&[]).unwrap().to_string(), "E6");
        assert_eq!(group("2E6").relative_weyl_type(&[]).unwrap().to_string(), "F4");
        // Bourbaki {2,3,4,5} = D4 inside E6
        assert_eq!(group("E6").relative_weyl_type(&[1, 2, 3, 4]).unwrap().to_string(), "A2");
        assert_eq!(group("2A3").relative_weyl_type(&[]).unwrap().to_string(), "B2");
        assert_eq!(group("3D4").relative_weyl_type(&[]).unwrap().to_string(), "G2");
        assert_eq!(group("2A5").relative_weyl_type(&[]).unwrap().to_string(), "B3");
        // D4 inside E8 has relative type F4; E6 inside E8 has G2; E7 has A1
        let e8 = group("E8");
        assert_eq!(e8.relative_weyl_type(&[1, 2, 3, 4]).unwrap().to_string(), "F4");
        assert_eq!(e8.relative_weyl_type(&[0, 1, 2, 3, 4, 5]).unwrap().to_string(), "G2");
        assert_eq!(e8.relative_weyl_type(&[0, 1, 2, 3, 4, 5, 6]).unwrap().to_string(), "A1");
        assert!(e8.relative_weyl_type(&(0..8).collect::<Vec<_>>()).unwrap().is_trivial());
        assert!(matches!(group("2E6").relative_weyl_type(&[0]), Err(WeylError::NotSigmaStable(_))));
        assert!(matches!(group("A2").relative_weyl_type(&[5]), Err(WeylError::NodeOutOfRange(5))));
    }

    #[test]
    fn class_counts_known() {
        let c = |s: &str| class_count(&s.parse().unwrap()).unwrap();
        assert_eq!(c("A1"), 2);
        assert_eq!(c("B2"), 5);
        assert_eq!(c("D4"), 13);
        assert_eq!(c("B3"), 10);
        assert_eq!(c("E8"), 112);
        assert!(class_count(&"2A3".parse().unwrap()).is_err());
    }

    #[test]
    fn class_counts_match_bruteforce_small() {
        for s in ["A1", "A2", "A3", "B2", "C3", "B3", "D4", "G2"] {
            let g = group(s);
            let st = ElementStore::enumerate(&g, super::super::DEFAULT_CAP, Exec::default()).unwrap();
            assert_eq!(g.class_count_bruteforce(&st) as u64, class_count(&s.parse().unwrap()).unwrap(), "{s}");
        }
    }

    #[test]
    fn coxeter_recognition() {
        let m = vec![vec![1, 3, 2, 2], vec![3, 1, 4, 2], vec![2, 4, 1, 3], vec![2, 2, 3, 1]];
        assert_eq!(recognize_coxeter_matrix(&m).unwrap().to_string(), "F4");
        let h = vec![vec![1, 5], vec![5, 1]];
        assert!(recognize_coxeter_matrix(&h).is_err());
        let two = vec![vec![1, 2], vec![2, 1]];
        assert_eq!(recognize_coxeter_matrix(&two).unwrap().to_string(), "A1xA1");
    }
}

//! Root systems built by closing the simple roots under simple reflections.

use std::collections::HashMap;

/// Roots are stored positive first (by height, then lexicographically), the
/// negative of root `i` being root `i + N`. The simple roots are `0..rank`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    num_pos: usize,
    /// `reflect[r][i]` is the index of `s_i(root r)`.
    reflect: Vec<Vec<usize>>,
}

impl RootSystem {
    pub fn from_cartan(cartan: Vec<Vec<i32>>) -> RootSystem {
        let r = cartan.len();
        let simple: Vec<Vec<i32>> = (0..r)
            .map(|i| (0..r).map(|j| i32::from(i == j)).collect())
            .collect();
        let mut positive = simple.clone();
        let mut seen: std::collections::HashSet<Vec<i32>> = positive.iter().cloned().collect();
        let mut k = 0;
        while k < positive.len() {
            let beta = positive[k].clone();
            for i in 0..r {
                let img = reflect_vec(&cartan, &beta, i);
                if img.iter().all(|&c| c >= 0) && !seen.contains(&img) {
                    seen.insert(img.clone());
                    positive.push(img);
                }
            }
            k += 1;
        }
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let num_pos = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));
        let index: HashMap<Vec<i32>, usize> = roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let reflect = roots
            .iter()
            .map(|beta| (0..r).map(|i| index[&reflect_vec(&cartan, beta, i)]).collect())
            .collect();
        RootSystem { cartan, roots, index, num_pos, reflect }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Number of positive roots `N`.
    pub fn num_positive(&self) -> usize {
        self.num_pos
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[i32] {
        &self.roots[i]
    }

    pub fn index_of(&self, v: &[i32]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_pos
    }

    pub fn negate(&self, i: usize) -> usize {
        (i + self.num_pos) % (2 * self.num_pos)
    }

    pub fn reflect(&self, root: usize, simple: usize) -> usize {
        self.reflect[root][simple]
    }
}

fn reflect_vec(cartan: &[Vec<i32>], beta: &[i32], i: usize) -> Vec<i32> {
    let pairing: i32 = beta.iter().zip(&cartan[i]).map(|(b, a)| b * a).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

//! Enumeration of all Weyl group elements as compact keys.
//!
//! An element is determined by the images of the simple roots, so the key
//! packs those root indices one byte each into a `u64`. Elements are generated
//! layer by layer in length: left multiplication by a simple reflection
//! changes the length by exactly one, so the next layer is the set of all
//! `s_i w` minus the previous layer.

use num_traits::One;

use super::{WeylError, WeylGroup};
use crate::cyclotomic::Rational;
use crate::qpoly::QPoly;
use crate::Exec;

pub const DEFAULT_CAP: u128 = 3_000_000;
pub const CAP_ENV_VAR: &str = "LIETYPE_W_CAP";

/// Enumeration cap, read from `LIETYPE_W_CAP` when set to a positive integer.
pub fn default_cap() -> u128 {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

pub(crate) fn pack(images: impl Iterator<Item = usize>) -> u64 {
    images.enumerate().fold(0u64, |k, (i, r)| k | ((r as u64) << (8 * i)))
}

pub(crate) fn unpack(key: u64, rank: usize) -> impl Iterator<Item = usize> {
    (0..rank).map(move |i| ((key >> (8 * i)) & 0xff) as usize)
}

#[derive(Clone, Debug)]
pub struct ElementStore {
    rank: usize,
    keys: Vec<u64>,
    lengths: Vec<u8>,
}

impl ElementStore {
    pub fn enumerate(g: &WeylGroup, cap: u128, exec: Exec) -> Result<ElementStore, WeylError> {
        let order = g.order();
        if order > cap {
            return Err(WeylError::CapExceeded { order, cap });
        }
        let r = g.rank();
        if r > 8 || g.roots().num_roots() > 256 {
            return Err(WeylError::CapExceeded { order, cap: 0 });
        }
        let roots = g.roots();
        let mut all: Vec<(u64, u8)> = Vec::with_capacity(order as usize);
        let mut prev: Vec<u64> = Vec::new();
        let mut cur = vec![g.key(&g.identity())];
        let mut len = 0u8;
        while !cur.is_empty() {
            all.extend(cur.iter().map(|&k| (k, len)));
            let mut next = exec.flat_map(&cur, |&k| {
                (0..r)
                    .map(|i| pack(unpack(k, r).map(|img| roots.reflect(img, i))))
                    .collect::<Vec<u64>>()
            });
            exec.sort(&mut next);
            next.dedup();
            next.retain(|k| prev.binary_search(k).is_err());
            prev = cur;
            cur = next;
            len += 1;
        }
        exec.sort(&mut all);
        let (keys, lengths) = all.into_iter().unzip();
        Ok(ElementStore { rank: r, keys, lengths })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Sorted element keys.
    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn length_at(&self, idx: usize) -> usize {
        self.lengths[idx] as usize
    }

    pub fn index_of(&self, key: u64) -> Option<usize> {
        self.keys.binary_search(&key).ok()
    }

    /// Indices of the elements fixed by the diagram automorphism.
    pub fn sigma_fixed(&self, g: &WeylGroup) -> Vec<usize> {
        let r = self.rank;
        let sn = g.sigma_nodes();
        // sigma(w)(alpha_{sigma(i)}) = sigma(w(alpha_i))
        (0..self.len())
            .filter(|&idx| {
                let imgs: Vec<usize> = unpack(self.keys[idx], r).collect();
                (0..r).all(|i| imgs[sn[i]] == g.sigma_root(imgs[i]))
            })
            .collect()
    }

    /// `sum_w q^l(w)` over the given element indices (all elements if `None`).
    pub fn length_polynomial(&self, subset: Option<&[usize]>) -> QPoly {
        let max = self.lengths.iter().copied().max().unwrap_or(0) as usize;
        let mut c = vec![Rational::from_integer(0.into()); max + 1];
        let mut bump = |i: usize| c[self.lengths[i] as usize] += Rational::one();
        match subset {
            Some(s) => s.iter().for_each(|&i| bump(i)),
            None => (0..self.len()).for_each(bump),
        }
        QPoly::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::CartanType;

    fn store(s: &str) -> (WeylGroup, ElementStore) {
        let g = WeylGroup::new(s.parse::<CartanType>().unwrap());
        let st = ElementStore::enumerate(&g, DEFAULT_CAP, Exec::default()).unwrap();
        (g, st)
    }

    #[test]
    fn orders_match_formula() {
        for (s, n) in [("A1", 2), ("G2", 12), ("B3", 48), ("D4", 192), ("F4", 1152), ("E6", 51840)] {
            let (g, st) = store(s);
            assert_eq!(st.len(), n, "{s}");
            assert_eq!(st.len() as u128, g.order());
            let p = st.length_polynomial(None);
            assert_eq!(p.eval_at(1), Rational::from_integer(n.into()));
            assert!(p.is_palindromic(), "{s}");
            assert_eq!(p.degree(), Some(g.num_positive_roots()));
        }
    }

    #[test]
    fn lengths_agree_with_permutations() {
        let (g, st) = store("B3");
        for (i, &k) in st.keys().iter().enumerate() {
            let w = g.element_from_key(k);
            assert_eq!(g.length(&w), st.length_at(i));
            assert_eq!(g.key(&w), k);
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = WeylGroup::new("D5".parse().unwrap());
        let a = ElementStore::enumerate(&g, DEFAULT_CAP, Exec::Sequential).unwrap();
        let b = ElementStore::enumerate(&g, DEFAULT_CAP, Exec::Parallel).unwrap();
        assert_eq!(a.keys(), b.keys());
        assert_eq!(a.lengths, b.lengths);
    }

    #[test]
    fn sigma_fixed_counts() {
        // |W^sigma| for 2A3 is |W(B2)| = 8; for 3D4 it is |W(G2)| = 12.
        for (s, n) in [("2A3", 8), ("3D4", 12), ("2A2", 2), ("2D4", 48)] {
            let (g, st) = store(s);
            assert_eq!(st.sigma_fixed(&g).len(), n, "{s}");
        }
    }

    #[test]
    fn e8_refuses() {
        let g = WeylGroup::new("E8".parse().unwrap());
        assert!(matches!(
            ElementStore::enumerate(&g, DEFAULT_CAP, Exec::Sequential),
            Err(WeylError::CapExceeded { .. })
        ));
    }
}

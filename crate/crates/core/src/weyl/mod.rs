//! Weyl groups acting by permutations on their root systems, with an optional
//! diagram automorphism.

mod cartan;
mod coxeter;
mod roots;
mod store;

pub use cartan::{classify_component, components, CartanType, Series};
pub use coxeter::{class_count, class_count_product, coxeter_order, recognize_coxeter_matrix, RelativeType};
pub use roots::RootSystem;
pub use store::{default_cap, ElementStore, CAP_ENV_VAR, DEFAULT_CAP};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("inadmissible Cartan type {0}")]
    Inadmissible(String),
    #[error("cannot parse Cartan type {0:?}")]
    Parse(String),
    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("subset {0:?} is not stable under the diagram automorphism")]
    NotSigmaStable(Vec<usize>),
    #[error("node {0} is out of range")]
    NodeOutOfRange(usize),
    #[error("canonical generator for orbit {orbit:?} does not normalize {j:?}")]
    NotNormalizing { orbit: Vec<usize>, j: Vec<usize> },
    #[error("unrecognized {0}")]
    Unrecognized(String),
    #[error("class counts are defined for untwisted types only, got {0}")]
    Twisted(String),
}

/// A Weyl group element as a permutation of the root list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<u16>,
}

impl WeylElement {
    pub fn identity(num_roots: usize) -> WeylElement {
        WeylElement { perm: (0..num_roots as u16).collect() }
    }

    pub fn from_perm(perm: Vec<u16>) -> WeylElement {
        WeylElement { perm }
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// Image of root `r`.
    pub fn apply(&self, r: usize) -> usize {
        self.perm[r] as usize
    }

    /// `self * other`, acting as `other` first.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement { perm: other.perm.iter().map(|&r| self.perm[r as usize]).collect() }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &r) in self.perm.iter().enumerate() {
            inv[r as usize] = i as u16;
        }
        WeylElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &r)| i == r as usize)
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.mul(self);
            k += 1;
        }
        k
    }
}

/// A Weyl group with simple reflections and a diagram automorphism.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    ctype: Option<CartanType>,
    roots: RootSystem,
    gens: Vec<WeylElement>,
    sigma_nodes: Vec<usize>,
    sigma_roots: WeylElement,
    sigma_inv: WeylElement,
}

impl WeylGroup {
    pub fn new(t: CartanType) -> WeylGroup {
        let mut g = WeylGroup::from_cartan(t.cartan_matrix(), t.sigma()).expect("built-in types are consistent");
        g.ctype = Some(t);
        g
    }

    /// A (possibly reducible) Weyl group from a Cartan matrix and a node permutation preserving it.
    pub fn from_cartan(cartan: Vec<Vec<i32>>, sigma_nodes: Vec<usize>) -> Result<WeylGroup, WeylError> {
        let r = cartan.len();
        if sigma_nodes.len() != r || (0..r).any(|i| (0..r).any(|j| cartan[sigma_nodes[i]][sigma_nodes[j]] != cartan[i][j])) {
            return Err(WeylError::Unrecognized("diagram automorphism".into()));
        }
        let roots = RootSystem::from_cartan(cartan);
        let m = roots.num_roots();
        let gens = (0..r)
            .map(|i| WeylElement::from_perm((0..m).map(|x| roots.reflect(x, i) as u16).collect()))
            .collect();
        let sigma_perm: Vec<u16> = (0..m)
            .map(|x| {
                let mut v = vec![0; r];
                for (j, &c) in roots.root(x).iter().enumerate() {
                    v[sigma_nodes[j]] = c;
                }
                roots.index_of(&v).expect("sigma maps roots to roots") as u16
            })
            .collect();
        let sigma_roots = WeylElement::from_perm(sigma_perm);
        let sigma_inv = sigma_roots.inverse();
        Ok(WeylGroup { ctype: None, roots, gens, sigma_nodes, sigma_roots, sigma_inv })
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.num_positive()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.roots.num_roots())
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.gens[i]
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.gens
    }

    pub fn sigma_nodes(&self) -> &[usize] {
        &self.sigma_nodes
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity(), |w, &i| w.mul(&self.gens[i]))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        let n = self.roots.num_positive();
        w.perm[..n].iter().filter(|&&r| r as usize >= n).count()
    }

    /// Image of root `x` under the diagram automorphism.
    pub fn sigma_root(&self, x: usize) -> usize {
        self.sigma_roots.apply(x)
    }

    /// `sigma o w o sigma^-1`.
    pub fn apply_sigma(&self, w: &WeylElement) -> WeylElement {
        self.sigma_roots.mul(w).mul(&self.sigma_inv)
    }

    /// Whether `w * s_i` is longer than `w`.
    pub fn is_right_ascent(&self, w: &WeylElement, i: usize) -> bool {
        self.roots.is_positive(w.apply(i))
    }

    /// The longest element of the parabolic subgroup `W_J`, by greedy ascent.
    pub fn longest_element(&self, j: &[usize]) -> WeylElement {
        let mut w = self.identity();
        while let Some(&i) = j.iter().find(|&&i| self.is_right_ascent(&w, i)) {
            w = w.mul(&self.gens[i]);
        }
        w
    }

    /// A reduced word, built from right descents.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut w = w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| !self.is_right_ascent(&w, i)) {
            word.push(i);
            w = w.mul(&self.gens[i]);
        }
        word.reverse();
        word
    }

    /// Compact key: the images of the simple roots.
    pub fn key(&self, w: &WeylElement) -> u64 {
        store::pack((0..self.rank()).map(|i| w.apply(i)))
    }

    /// Rebuilds an element from its key by linearity.
    pub fn element_from_key(&self, key: u64) -> WeylElement {
        let r = self.rank();
        let images: Vec<&[i32]> = store::unpack(key, r).map(|k| self.roots.root(k)).collect();
        let perm = (0..self.roots.num_roots())
            .map(|x| {
                let beta = self.roots.root(x);
                let mut v = vec![0i32; r];
                for (j, &b) in beta.iter().enumerate() {
                    if b != 0 {
                        for (vk, ik) in v.iter_mut().zip(images[j]) {
                            *vk += b * ik;
                        }
                    }
                }
                self.roots.index_of(&v).expect("valid key") as u16
            })
            .collect();
        WeylElement::from_perm(perm)
    }

    /// Order of `W` computed from the component types.
    pub fn order(&self) -> u128 {
        let all: Vec<usize> = (0..self.rank()).collect();
        components(self.roots.cartan(), &all)
            .iter()
            .map(|c| classify_component(self.roots.cartan(), c).map(|t| t.weyl_order()).unwrap_or(0))
            .product()
    }

    /// Whether `J` is stable under the diagram automorphism.
    pub fn is_sigma_stable(&self, j: &[usize]) -> bool {
        j.iter().all(|&i| j.contains(&self.sigma_nodes[i]))
    }

    /// Orbits of the diagram automorphism on a stable set of nodes.
    pub fn sigma_orbits(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank()];
        let mut out = Vec::new();
        for &i in nodes {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![];
            let mut k = i;
            while !seen[k] {
                seen[k] = true;
                orbit.push(k);
                k = self.sigma_nodes[k];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// `{x in W : x w sigma(x)^-1 = w'}`, by scanning an element store.
    pub fn twisted_normalizer(&self, store: &ElementStore, w: &WeylElement, w2: &WeylElement) -> Vec<WeylElement> {
        store
            .keys()
            .iter()
            .map(|&k| self.element_from_key(k))
            .filter(|x| x.mul(w).mul(&self.apply_sigma(x).inverse()) == *w2)
            .collect()
    }

    /// Size of the twisted class `{x w sigma(x)^-1}` of `w`, by orbit closure under generators.
    pub fn twisted_class(&self, w: &WeylElement) -> Vec<WeylElement> {
        let mut seen = std::collections::HashSet::new();
        seen.insert(w.clone());
        let mut queue = vec![w.clone()];
        while let Some(v) = queue.pop() {
            for s in &self.gens {
                let u = s.mul(&v).mul(&self.apply_sigma(s));
                if seen.insert(u.clone()) {
                    queue.push(u);
                }
            }
        }
        seen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(s.parse().unwrap())
    }

    #[test]
    fn lengths_and_longest() {
        let a2 = group("A2");
        assert_eq!(a2.length(&a2.identity()), 0);
        assert_eq!(a2.length(a2.simple_reflection(0)), 1);
        assert_eq!(a2.length(&a2.longest_element(&[0, 1])), 3);
        assert!(a2.longest_element(&[]).is_identity());
        assert_eq!(a2.longest_element(&[1]), *a2.simple_reflection(1));
        let b2 = group("B2");
        assert_eq!(b2.length(&b2.longest_element(&[0, 1])), 4);
        for s in ["E6", "E7", "E8", "F4", "D5", "2E6"] {
            let g = group(s);
            let all: Vec<usize> = (0..g.rank()).collect();
            let w0 = g.longest_element(&all);
            assert_eq!(g.length(&w0), g.num_positive_roots(), "{s}");
            assert!(w0.mul(&w0).is_identity(), "{s}");
        }
    }

    #[test]
    fn twisted_normalizer_examples() {
        let a1 = group("A1");
        let store = ElementStore::enumerate(&a1, DEFAULT_CAP, crate::Exec::Sequential).unwrap();
        let one = a1.identity();
        let s = a1.simple_reflection(0).clone();
        assert_eq!(a1.twisted_normalizer(&store, &one, &one).len(), 2);
        assert!(a1.twisted_normalizer(&store, &one, &s).is_empty());
        assert_eq!(a1.twisted_normalizer(&store, &s, &s).len(), 2);
    }

    #[test]
    fn twisted_normalizer_orbit_stabilizer() {
        for t in ["A2", "2A2", "B2", "2A3", "3D4", "G2"] {
            let g = group(t);
            let store = ElementStore::enumerate(&g, DEFAULT_CAP, crate::Exec::Sequential).unwrap();
            for &k in store.keys().iter().step_by(7) {
                let w = g.element_from_key(k);
                let stab = g.twisted_normalizer(&store, &w, &w);
                assert!(stab.iter().any(|x| x.is_identity()));
                for a in &stab {
                    for b in &stab {
                        assert!(stab.contains(&a.mul(b)), "{t}: closed under products");
                    }
                }
                assert_eq!(stab.len() * g.twisted_class(&w).len(), store.len(), "{t}");
            }
        }
    }

    #[test]
    fn keys_round_trip() {
        let g = group("E6");
        let w = g.from_word(&[0, 2, 3, 1, 3, 4, 5, 4]);
        assert_eq!(g.element_from_key(g.key(&w)), w);
        let word = g.reduced_word(&w);
        assert_eq!(g.from_word(&word), w);
        assert_eq!(word.len(), g.length(&w));
    }

    proptest! {
        #[test]
        fn element_invariants(word in prop::collection::vec(0usize..4, 0..20), word2 in prop::collection::vec(0usize..4, 0..20)) {
            let g = group("F4");
            let w = g.from_word(&word);
            let v = g.from_word(&word2);
            let n = g.num_positive_roots();
            for r in 0..g.roots().num_roots() {
                prop_assert_eq!(w.apply(g.roots().negate(r)), g.roots().negate(w.apply(r)));
            }
            prop_assert!(w.mul(&w.inverse()).is_identity());
            prop_assert_eq!(g.length(&w), g.length(&w.inverse()));
            prop_assert!(g.length(&w.mul(&v)) <= g.length(&w) + g.length(&v));
            prop_assert!(g.length(&w) <= n);
            prop_assert_eq!(w.mul(&v).mul(&w), w.mul(&v.mul(&w)));
        }
    }
}

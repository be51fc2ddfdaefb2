//! Canonical forms of matroids up to isomorphism.
//!
//! The canonical family of a matroid is the least sorted family of masks over
//! all relabelings of its ground set. Comparing two sorted families of equal
//! size lexicographically is the same as reading their indicator vectors over
//! masks `0, 1, 2, …` and preferring the one that has a member first. Masks
//! below `2^k` only mention labels `0..k`, so the indicator prefix of length
//! `2^k` is fixed once labels `0..k` are assigned. The search assigns labels
//! one at a time and keeps only the partial assignments whose prefix is best,
//! which never discards a relabeling that reaches the global minimum.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::matroid::{Matroid, SubsetMask};

/// Largest ground set accepted by [`canonical_key`].
pub const MAX_CANONICAL_N: usize = 10;

/// Canonical representative of an isomorphism class of matroids.
///
/// Ordered by ground-set size, then rank, then the canonical family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoKey {
    n: usize,
    rank: usize,
    family: Vec<SubsetMask>,
}

impl IsoKey {
    /// The key of `U_{0,0}`.
    pub fn empty() -> IsoKey {
        IsoKey {
            n: 0,
            rank: 0,
            family: vec![SubsetMask::EMPTY],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn family(&self) -> &[SubsetMask] {
        &self.family
    }

    /// The canonical representative as a matroid value.
    pub fn representative(&self) -> Matroid {
        Matroid::from_trusted(self.n, self.family.clone())
    }

    /// `Some(r)` when this is the class of `U_{r,n}`.
    pub fn uniform_rank(&self) -> Option<usize> {
        let expected: usize = (0..=self.rank).map(|k| binomial(self.n, k)).sum();
        (self.family.len() == expected).then_some(self.rank)
    }

    pub fn is_empty_class(&self) -> bool {
        self.n == 0
    }
}

impl fmt::Display for IsoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.uniform_rank() {
            return write!(f, "U_{{{},{}}}", r, self.n);
        }
        write!(f, "M[{};", self.n)?;
        for (i, set) in self.family.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{set}")?;
        }
        f.write_str("]")
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

type CacheKey = (usize, Vec<SubsetMask>);

fn cache() -> &'static RwLock<HashMap<CacheKey, IsoKey>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, IsoKey>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Canonical key of the isomorphism class of `matroid`.
pub fn canonical_key(matroid: &Matroid) -> Result<IsoKey> {
    let n = matroid.n();
    if n > MAX_CANONICAL_N {
        return Err(Error::GroundSetTooLarge {
            n,
            limit: MAX_CANONICAL_N,
        });
    }
    let lookup = (n, matroid.independents().to_vec());
    if let Some(key) = cache().read().expect("canonical cache poisoned").get(&lookup) {
        return Ok(key.clone());
    }
    let key = IsoKey {
        n,
        rank: matroid.matroid_rank(),
        family: canonical_family(matroid),
    };
    cache()
        .write()
        .expect("canonical cache poisoned")
        .insert(lookup, key.clone());
    Ok(key)
}

pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> Result<bool> {
    for m in [a, b] {
        if m.n() > MAX_CANONICAL_N {
            return Err(Error::GroundSetTooLarge {
                n: m.n(),
                limit: MAX_CANONICAL_N,
            });
        }
    }
    if invariants(a) != invariants(b) {
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}

/// Relabeling-invariant summary: size, rank, loop count and the number of
/// independent sets of each cardinality.
fn invariants(m: &Matroid) -> (usize, usize, usize, Vec<usize>) {
    let mut profile = vec![0; m.n() + 1];
    for set in m.independents() {
        profile[set.len()] += 1;
    }
    (m.n(), m.matroid_rank(), m.loops().len(), profile)
}

fn canonical_family(matroid: &Matroid) -> Vec<SubsetMask> {
    let n = matroid.n();
    let mut member = vec![false; 1 << n];
    for set in matroid.independents() {
        member[set.bits() as usize] = true;
    }

    // Each entry lists the original elements given labels 0, 1, ….
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for level in 0..n {
        let mut best: Option<Vec<bool>> = None;
        let mut next: Vec<Vec<usize>> = Vec::new();
        for order in &frontier {
            let used = SubsetMask::from_elements(order.iter().copied());
            for candidate in 0..n {
                if used.contains(candidate) {
                    continue;
                }
                // Indicator bits for the masks that contain the new label.
                let block: Vec<bool> = (0..1u32 << level)
                    .map(|low| {
                        let original = SubsetMask(low)
                            .elements()
                            .fold(SubsetMask::singleton(candidate), |acc, label| acc.with(order[label]));
                        member[original.bits() as usize]
                    })
                    .collect();
                let keep = match &best {
                    None => true,
                    Some(current) => block >= *current,
                };
                if !keep {
                    continue;
                }
                if best.as_ref().is_some_and(|current| block > *current) {
                    next.clear();
                }
                if best.as_ref() != Some(&block) {
                    best = Some(block);
                }
                let mut extended = order.clone();
                extended.push(candidate);
                next.push(extended);
            }
        }
        frontier = next;
    }

    let order = &frontier[0];
    let mut perm = vec![0; n];
    for (label, &original) in order.iter().enumerate() {
        perm[original] = label;
    }
    matroid.relabel(&perm).independents().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(r: i64, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for slot in 0..n {
                let mut q = p.clone();
                q.insert(slot, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn all_permutations_family(m: &Matroid) -> Vec<SubsetMask> {
        permutations(m.n())
            .iter()
            .map(|p| m.relabel(p).independents().to_vec())
            .min()
            .unwrap()
    }

    fn set(elements: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(elements.iter().copied())
    }

    #[test]
    fn relabeled_uniform_has_same_key() {
        let m = u(1, 2);
        assert_eq!(canonical_key(&m).unwrap(), canonical_key(&m.relabel(&[1, 0])).unwrap());
    }

    #[test]
    fn graphic_example_matches_family() {
        let g = Matroid::graphic(2, &[(0, 1), (0, 1), (0, 1), (1, 1)]).unwrap();
        let m = Matroid::validate(4, [set(&[]), set(&[0]), set(&[1]), set(&[2])]).unwrap();
        assert_eq!(canonical_key(&g).unwrap(), canonical_key(&m).unwrap());
    }

    #[test]
    fn direct_sum_commutes_up_to_isomorphism() {
        let a = u(1, 1).direct_sum(&u(0, 1));
        let b = u(0, 1).direct_sum(&u(1, 1));
        assert_ne!(a, b);
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic(&u(2, 4), &u(2, 4).dual()).unwrap());
        assert!(!is_isomorphic(&u(1, 2), &u(2, 2)).unwrap());
        assert!(!is_isomorphic(&u(0, 1), &u(1, 1)).unwrap());
    }

    #[test]
    fn oversized_ground_set_is_rejected() {
        let m = u(1, 11);
        assert_eq!(
            canonical_key(&m),
            Err(Error::GroundSetTooLarge { n: 11, limit: 10 })
        );
        assert!(is_isomorphic(&m, &m).is_err());
    }

    #[test]
    fn pruned_search_matches_all_permutations() {
        let samples = [
            u(0, 0),
            u(2, 4),
            u(1, 3).direct_sum(&u(0, 1)),
            Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2), (2, 2), (0, 1)]).unwrap(),
            Matroid::graphic(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap(),
        ];
        for m in samples {
            let key = canonical_key(&m).unwrap();
            assert_eq!(key.family(), all_permutations_family(&m).as_slice(), "{m}");
        }
    }

    #[test]
    fn key_is_invariant_under_every_relabeling() {
        let m = Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2), (1, 1), (0, 1)]).unwrap();
        let key = canonical_key(&m).unwrap();
        for p in permutations(m.n()) {
            assert_eq!(canonical_key(&m.relabel(&p)).unwrap(), key);
        }
        assert_eq!(canonical_key(&key.representative()).unwrap(), key);
    }

    #[test]
    fn rendering() {
        assert_eq!(canonical_key(&u(2, 4)).unwrap().to_string(), "U_{2,4}");
        assert_eq!(IsoKey::empty().to_string(), "U_{0,0}");
        let mixed = canonical_key(&u(1, 1).direct_sum(&u(0, 1))).unwrap();
        assert_eq!(mixed.to_string(), "M[2;{},{0}]");
    }

    #[test]
    fn ordering_is_by_size_then_rank() {
        let a = canonical_key(&u(1, 1)).unwrap();
        let b = canonical_key(&u(0, 2)).unwrap();
        let c = canonical_key(&u(1, 2)).unwrap();
        assert!(a < b && b < c);
    }
}

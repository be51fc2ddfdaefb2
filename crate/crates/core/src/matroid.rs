//! Matroids stored as the complete family of their independent sets.
//!
//! The ground set of an `n`-element matroid is always `0..n`. Every minor is
//! relabeled onto `0..k` preserving the relative order of the surviving
//! elements, so two minors built from the same data compare equal as values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Axiom, Error, Result};

/// Largest ground set a `Matroid` may have. The family of independent sets is
/// stored exhaustively, so this is also a bound on memory use.
pub const MAX_GROUND_SET: usize = 16;

/// A subset of `{0, …, n-1}` encoded as a bit word.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(element: usize) -> Self {
        SubsetMask(1 << element)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |acc, e| acc | (1 << e)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        element < 32 && self.0 & (1 << element) != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn with(self, element: usize) -> Self {
        SubsetMask(self.0 | (1 << element))
    }

    pub fn without(self, element: usize) -> Self {
        SubsetMask(self.0 & !(1 << element))
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(SubsetMask(current))
        })
    }

    /// Renumbers the bits of `self` (which must lie inside `within`) onto
    /// `0..within.len()`, keeping their relative order.
    pub fn compress(self, within: SubsetMask) -> SubsetMask {
        let mut out = 0;
        for (position, e) in within.elements().enumerate() {
            if self.contains(e) {
                out |= 1 << position;
            }
        }
        SubsetMask(out)
    }

    /// Inverse of [`SubsetMask::compress`].
    pub fn expand(self, within: SubsetMask) -> SubsetMask {
        let mut out = 0;
        for (position, e) in within.elements().enumerate() {
            if self.contains(position) {
                out |= 1 << e;
            }
        }
        SubsetMask(out)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A matroid on the ground set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    independents: Vec<SubsetMask>,
}

impl Matroid {
    /// Checks the independence axioms and returns the matroid with its family
    /// sorted and deduplicated.
    pub fn validate(n: usize, family: impl IntoIterator<Item = SubsetMask>) -> Result<Matroid> {
        if n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge {
                n,
                limit: MAX_GROUND_SET,
            });
        }
        let ground = SubsetMask::full(n);
        let mut independents: Vec<SubsetMask> = family.into_iter().collect();
        if let Some(&mask) = independents.iter().find(|m| !m.is_subset_of(ground)) {
            return Err(Error::MaskOutOfRange { mask, n });
        }
        independents.sort_unstable();
        independents.dedup();

        let mut member = vec![false; 1 << n];
        for mask in &independents {
            member[mask.0 as usize] = true;
        }
        if !member[0] {
            return Err(Error::AxiomViolation {
                axiom: Axiom::I1,
                first: SubsetMask::EMPTY,
                second: SubsetMask::EMPTY,
            });
        }
        // Closure under single-element removal implies closure under subsets.
        for &set in &independents {
            let missing = set
                .elements()
                .map(|e| set.without(e))
                .filter(|sub| !member[sub.0 as usize])
                .min();
            if let Some(sub) = missing {
                return Err(Error::AxiomViolation {
                    axiom: Axiom::I2,
                    first: set,
                    second: sub,
                });
            }
        }
        for &larger in &independents {
            for &smaller in &independents {
                if larger.len() != smaller.len() + 1 {
                    continue;
                }
                let augmentable = larger
                    .difference(smaller)
                    .elements()
                    .any(|x| member[smaller.with(x).0 as usize]);
                if !augmentable {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::I3,
                        first: larger,
                        second: smaller,
                    });
                }
            }
        }
        Ok(Matroid { n, independents })
    }

    /// Builds a matroid from a family already known to satisfy the axioms.
    /// The family is sorted here; the caller vouches for validity.
    pub(crate) fn from_trusted(n: usize, mut independents: Vec<SubsetMask>) -> Matroid {
        independents.sort_unstable();
        independents.dedup();
        debug_assert!(independents.first() == Some(&SubsetMask::EMPTY));
        Matroid { n, independents }
    }

    /// The empty matroid `U_{0,0}`.
    pub fn empty() -> Matroid {
        Matroid {
            n: 0,
            independents: vec![SubsetMask::EMPTY],
        }
    }

    /// `U_{r,n}`: every subset of size at most `r` is independent.
    pub fn uniform(rank: i64, n: usize) -> Result<Matroid> {
        if rank < 0 || rank as usize > n {
            return Err(Error::InvalidRank { rank, n });
        }
        if n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge {
                n,
                limit: MAX_GROUND_SET,
            });
        }
        let rank = rank as usize;
        let independents = SubsetMask::full(n)
            .subsets()
            .filter(|s| s.len() <= rank)
            .collect();
        Ok(Matroid::from_trusted(n, independents))
    }

    /// The cycle matroid of a multigraph. Edge `i` of `edges` becomes ground
    /// element `i`; self-loops are matroid loops.
    pub fn graphic(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        for &(u, v) in edges {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(Error::BadVertexIndex {
                        vertex,
                        vertex_count,
                    });
                }
            }
        }
        let n = edges.len();
        if n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge {
                n,
                limit: MAX_GROUND_SET,
            });
        }
        let independents = SubsetMask::full(n)
            .subsets()
            .filter(|set| is_forest(vertex_count, edges, *set))
            .collect();
        Ok(Matroid::from_trusted(n, independents))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// Independent sets in increasing numeric order.
    pub fn independents(&self) -> &[SubsetMask] {
        &self.independents
    }

    pub fn is_independent(&self, set: SubsetMask) -> bool {
        self.independents.binary_search(&set).is_ok()
    }

    /// Size of a largest independent subset of `set`.
    pub fn rank(&self, set: SubsetMask) -> usize {
        self.independents
            .iter()
            .filter(|i| i.is_subset_of(set))
            .map(|i| i.len())
            .max()
            .unwrap_or(0)
    }

    /// Rank of the whole ground set.
    pub fn matroid_rank(&self) -> usize {
        self.independents.iter().map(|i| i.len()).max().unwrap_or(0)
    }

    /// Maximal independent sets.
    pub fn bases(&self) -> Vec<SubsetMask> {
        let r = self.matroid_rank();
        self.independents
            .iter()
            .copied()
            .filter(|i| i.len() == r)
            .collect()
    }

    pub fn is_loop(&self, element: usize) -> bool {
        element < self.n && !self.is_independent(SubsetMask::singleton(element))
    }

    pub fn is_coloop(&self, element: usize) -> bool {
        element < self.n && self.bases().iter().all(|b| b.contains(element))
    }

    pub fn loops(&self) -> SubsetMask {
        SubsetMask::from_elements((0..self.n).filter(|&e| self.is_loop(e)))
    }

    /// Counts `(c, l)` of elements of `set` whose singleton is independent and
    /// dependent respectively.
    pub fn element_counts(&self, set: SubsetMask) -> (usize, usize) {
        let loops = self.loops();
        let l = set.intersection(loops).len();
        (set.len() - l, l)
    }

    /// `M|T`, relabeled onto `0..|T|`.
    pub fn restriction(&self, subset: SubsetMask) -> Matroid {
        let subset = subset.intersection(self.ground());
        let independents = self
            .independents
            .iter()
            .filter(|i| i.is_subset_of(subset))
            .map(|i| i.compress(subset))
            .collect();
        Matroid::from_trusted(subset.len(), independents)
    }

    /// `M \ T`, which is `M|(E - T)`.
    pub fn deletion(&self, subset: SubsetMask) -> Matroid {
        self.restriction(self.ground().difference(subset))
    }

    /// The lexicographically least maximal independent subset of `subset`,
    /// found greedily in increasing element order.
    pub fn greedy_basis_of(&self, subset: SubsetMask) -> SubsetMask {
        subset
            .elements()
            .fold(SubsetMask::EMPTY, |acc, e| {
                let grown = acc.with(e);
                if self.is_independent(grown) {
                    grown
                } else {
                    acc
                }
            })
    }

    /// `M / T` on `E - T`, relabeled ascending.
    pub fn contraction(&self, subset: SubsetMask) -> Matroid {
        let subset = subset.intersection(self.ground());
        self.contraction_via(subset, self.greedy_basis_of(subset))
    }

    /// Contraction computed against a caller-chosen maximal independent
    /// subset `basis` of `subset`. Any choice yields the same matroid.
    pub fn contraction_via(&self, subset: SubsetMask, basis: SubsetMask) -> Matroid {
        let rest = self.ground().difference(subset);
        let independents = rest
            .subsets()
            .filter(|i| self.is_independent(i.union(basis)))
            .map(|i| i.compress(rest))
            .collect();
        Matroid::from_trusted(rest.len(), independents)
    }

    /// `M1 ⊕ M2`, with the elements of `other` shifted past those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Matroid {
        let shift = self.n;
        let mut independents = Vec::with_capacity(self.independents.len() * other.independents.len());
        for &a in &self.independents {
            for &b in &other.independents {
                independents.push(SubsetMask(a.0 | (b.0 << shift)));
            }
        }
        Matroid::from_trusted(self.n + other.n, independents)
    }

    /// The dual matroid, whose bases are complements of bases.
    pub fn dual(&self) -> Matroid {
        let ground = self.ground();
        let co_bases: Vec<SubsetMask> = self.bases().into_iter().map(|b| ground.difference(b)).collect();
        let independents = ground
            .subsets()
            .filter(|s| co_bases.iter().any(|b| s.is_subset_of(*b)))
            .collect();
        Matroid::from_trusted(self.n, independents)
    }

    /// Relabels element `e` as `perm[e]`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let independents = self
            .independents
            .iter()
            .map(|set| SubsetMask::from_elements(set.elements().map(|e| perm[e])))
            .collect();
        Matroid::from_trusted(self.n, independents)
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ", self.n)?;
        for (i, set) in self.independents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{set}")?;
        }
        f.write_str(")")
    }
}

fn is_forest(vertex_count: usize, edges: &[(usize, usize)], set: SubsetMask) -> bool {
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in set.elements() {
        let (u, v) = edges[e];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elements: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(elements.iter().copied())
    }

    fn loop_example() -> Matroid {
        Matroid::validate(4, [set(&[]), set(&[0]), set(&[1]), set(&[2])]).unwrap()
    }

    fn u(r: i64, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    #[test]
    fn validate_accepts_small_families() {
        let empty = Matroid::validate(0, [SubsetMask::EMPTY]).unwrap();
        assert_eq!(empty, Matroid::empty());
        let m = loop_example();
        assert_eq!(m.independents().len(), 4);
        assert!(m.is_loop(3));
    }

    #[test]
    fn validate_sorts_and_deduplicates() {
        let m = Matroid::validate(2, [set(&[1]), set(&[]), set(&[0]), set(&[1])]).unwrap();
        assert_eq!(m, u(1, 2));
    }

    #[test]
    fn validate_reports_downward_closure_witness() {
        let err = Matroid::validate(2, [set(&[]), set(&[0, 1])]).unwrap_err();
        assert_eq!(
            err,
            Error::AxiomViolation {
                axiom: Axiom::I2,
                first: set(&[0, 1]),
                second: set(&[0]),
            }
        );
    }

    #[test]
    fn validate_reports_missing_empty_set() {
        let err = Matroid::validate(1, [set(&[0])]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: Axiom::I1, .. }));
    }

    #[test]
    fn validate_reports_exchange_failure() {
        // {0,1} and {2} are both maximal but of different sizes.
        let family = [set(&[]), set(&[0]), set(&[1]), set(&[2]), set(&[0, 1])];
        let err = Matroid::validate(3, family).unwrap_err();
        assert_eq!(
            err,
            Error::AxiomViolation {
                axiom: Axiom::I3,
                first: set(&[0, 1]),
                second: set(&[2]),
            }
        );
    }

    #[test]
    fn validate_rejects_out_of_range_masks() {
        let err = Matroid::validate(1, [set(&[]), set(&[3])]).unwrap_err();
        assert!(matches!(err, Error::MaskOutOfRange { n: 1, .. }));
    }

    #[test]
    fn uniform_families() {
        assert_eq!(u(0, 0).independents(), &[SubsetMask::EMPTY]);
        assert_eq!(u(2, 4).independents().len(), 1 + 4 + 6);
        assert_eq!(u(1, 1).independents(), &[set(&[]), set(&[0])]);
        assert!(matches!(Matroid::uniform(3, 2), Err(Error::InvalidRank { .. })));
        assert!(matches!(Matroid::uniform(-1, 2), Err(Error::InvalidRank { .. })));
    }

    #[test]
    fn graphic_matroids() {
        let g = Matroid::graphic(2, &[(0, 1), (0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(g, loop_example());
        assert_eq!(Matroid::graphic(3, &[(0, 1), (1, 2)]).unwrap(), u(2, 2));
        assert_eq!(Matroid::graphic(1, &[(0, 0)]).unwrap(), u(0, 1));
        assert!(matches!(
            Matroid::graphic(2, &[(0, 2)]),
            Err(Error::BadVertexIndex { vertex: 2, vertex_count: 2 })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(u(2, 4).rank(set(&[0, 1, 2])), 2);
        assert_eq!(loop_example().rank(set(&[0, 1, 3])), 1);
        assert_eq!(loop_example().rank(SubsetMask::EMPTY), 0);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(u(2, 4).restriction(set(&[0, 1])), u(2, 2));
        assert_eq!(u(2, 4).restriction(SubsetMask::EMPTY), Matroid::empty());
        assert_eq!(loop_example().restriction(set(&[3])), u(0, 1));
    }

    #[test]
    fn deletion_examples() {
        let m = u(2, 4);
        assert_eq!(m.deletion(set(&[0])), u(2, 3));
        assert_eq!(m.deletion(SubsetMask::EMPTY), m);
        assert_eq!(m.deletion(m.ground()), Matroid::empty());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(u(1, 2).contraction(set(&[0])), u(0, 1));
        assert_eq!(u(2, 4).contraction(set(&[0])), u(1, 3));
        let m = loop_example();
        assert_eq!(m.contraction(SubsetMask::EMPTY), m);
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(u(1, 1).direct_sum(&u(1, 1)), u(2, 2));
        let m = loop_example();
        assert_eq!(m.direct_sum(&Matroid::empty()), m);
        let sum = u(1, 2).direct_sum(&u(1, 3));
        assert_eq!(sum.independents().len(), 12);
        assert!(sum.is_independent(set(&[0, 2])));
        assert!(!sum.is_independent(set(&[0, 1])));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(u(1, 1).dual(), u(0, 1));
        assert_eq!(u(2, 4).dual(), u(2, 4));
        let m = loop_example();
        assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn element_count_examples() {
        assert_eq!(u(2, 4).element_counts(SubsetMask::full(4)), (4, 0));
        assert_eq!(u(0, 2).element_counts(SubsetMask::full(2)), (0, 2));
        assert_eq!(loop_example().element_counts(set(&[0, 1, 3])), (2, 1));
    }

    #[test]
    fn loops_and_coloops() {
        let m = loop_example();
        assert!(m.is_loop(3));
        assert!(!m.is_coloop(0));
        let sum = u(1, 1).direct_sum(&u(1, 2));
        assert!(sum.is_coloop(0));
        assert!(!sum.is_coloop(1));
    }

    #[test]
    fn subset_iteration_and_compression() {
        let t = set(&[1, 3]);
        let subs: Vec<_> = t.subsets().collect();
        assert_eq!(subs, vec![set(&[]), set(&[1]), set(&[3]), set(&[1, 3])]);
        assert_eq!(set(&[3]).compress(t), set(&[1]));
        assert_eq!(set(&[1]).expand(t), set(&[3]));
        assert_eq!(set(&[0, 2]).to_string(), "{0,2}");
    }
}

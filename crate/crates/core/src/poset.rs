//! Partial orders on the coordinate set `[n]`.
//!
//! Elements are stored 0-indexed; everything user-facing (relation pairs,
//! display, serialized sets) is 1-indexed.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::subset::{CoordSet, MAX_N};

/// A poset on `[n]`, `1 <= n <= 64`.
///
/// `down[b]` is the principal ideal of `b` (all `a <= b`), `up[a]` the
/// principal filter of `a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    down: Vec<CoordSet>,
    up: Vec<CoordSet>,
}

impl Poset {
    /// Reflexive-transitive closure of `pairs`, each `(a, b)` meaning
    /// `a <= b` with 1-indexed labels.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_n(n)?;
        let mut succ = vec![CoordSet::EMPTY; n];
        for &(a, b) in pairs {
            for e in [a, b] {
                if e == 0 || e > n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
            }
            if a != b {
                succ[a - 1].insert(b - 1);
            }
        }
        // up[a] = everything reachable from a, by repeated expansion
        let mut up: Vec<CoordSet> = (0..n)
            .map(|a| succ[a].union(CoordSet::singleton(a)))
            .collect();
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut acc = up[a];
                for b in up[a] {
                    acc = acc.union(up[b]);
                }
                if acc != up[a] {
                    up[a] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for a in 0..n {
            for b in up[a] {
                if b != a && up[b].contains(a) {
                    return Err(Error::Cycle(find_cycle(&succ, a, b)));
                }
            }
        }
        Ok(Self::from_up(n, up))
    }

    /// Builds a poset from a closed relation matrix (`leq[a][b]` iff
    /// `a <= b`, 0-indexed), validating the order axioms.
    pub fn from_leq_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        check_n(n)?;
        let mut pairs = Vec::new();
        for (a, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (b, &r) in row.iter().enumerate() {
                if r {
                    pairs.push((a + 1, b + 1));
                }
            }
        }
        let p = Self::from_relations(n, &pairs)?;
        for (a, row) in leq.iter().enumerate() {
            for (b, &r) in row.iter().enumerate() {
                if p.leq(a, b) != (r || a == b) {
                    return Err(Error::Invariant(format!(
                        "relation matrix is not transitively closed at ({}, {})",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(p)
    }

    fn from_up(n: usize, up: Vec<CoordSet>) -> Self {
        let mut down = vec![CoordSet::EMPTY; n];
        for (a, &u) in up.iter().enumerate() {
            for b in u {
                down[b].insert(a);
            }
        }
        Poset { n, down, up }
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_relations(n, &[])
    }

    /// The chain `1 <= 2 <= ... <= n`.
    pub fn chain(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_relations(n, &pairs)
    }

    /// The hierarchical poset whose levels are `levels` in order: distinct
    /// levels are fully related, each level is an antichain.
    pub fn hierarchical_from_levels(n: usize, levels: &[CoordSet]) -> Result<Self> {
        check_n(n)?;
        let mut union = CoordSet::EMPTY;
        for &l in levels {
            if !l.is_disjoint(union) || l.is_empty() {
                return Err(Error::Invariant(
                    "levels must be nonempty and disjoint".into(),
                ));
            }
            union = union.union(l);
        }
        if union != CoordSet::full(n) {
            return Err(Error::Invariant("levels must cover the ground set".into()));
        }
        let mut up = vec![CoordSet::EMPTY; n];
        let mut above = CoordSet::full(n);
        for &l in levels {
            above = above.difference(l);
            for a in l {
                up[a] = above.union(CoordSet::singleton(a));
            }
        }
        Ok(Self::from_up(n, up))
    }

    /// A random poset: a random linear extension with each compatible pair
    /// related independently with probability `density`, then closed.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Result<Self> {
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(rng);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    pairs.push((order[i], order[j]));
                }
            }
        }
        Self::from_relations(n, &pairs)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `a <= b`, 0-indexed.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Principal ideal `{a : a <= b}`.
    pub fn down_set(&self, b: usize) -> CoordSet {
        self.down[b]
    }

    /// Principal filter `{b : a <= b}`.
    pub fn up_set(&self, a: usize) -> CoordSet {
        self.up[a]
    }

    /// Elements strictly above `a`.
    pub fn strict_up(&self, a: usize) -> CoordSet {
        let mut s = self.up[a];
        s.remove(a);
        s
    }

    /// The ideal generated by `set`: its smallest downward-closed superset.
    pub fn ideal(&self, set: CoordSet) -> CoordSet {
        set.iter()
            .fold(CoordSet::EMPTY, |acc, e| acc.union(self.down[e]))
    }

    pub fn is_ideal(&self, set: CoordSet) -> bool {
        self.ideal(set) == set
    }

    pub fn maximal_elements(&self, set: CoordSet) -> CoordSet {
        set.iter()
            .filter(|&x| self.up[x].intersection(set) == CoordSet::singleton(x))
            .collect()
    }

    /// Strict relations `(a, b)`, `a < b`, 0-indexed, row-major order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| self.strict_up(a).iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn strict_pair_count(&self) -> usize {
        self.up.iter().map(|u| u.len() - 1).sum()
    }

    /// Heights of all elements (longest chain ending at the element,
    /// counted in elements).
    pub fn heights(&self) -> Vec<usize> {
        // strict predecessors have strictly smaller principal ideals
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| self.down[a].len());
        let mut h = vec![0usize; self.n];
        for a in order {
            let below = self.down[a].iter().filter(|&b| b != a).map(|b| h[b]).max();
            h[a] = below.unwrap_or(0) + 1;
        }
        h
    }

    /// Height of element `a` (0-indexed).
    pub fn height(&self, a: usize) -> usize {
        self.heights()[a]
    }

    /// The levels `Γ¹, .., Γ^h`: elements grouped by height.
    pub fn levels(&self) -> Vec<CoordSet> {
        let h = self.heights();
        let top = h.iter().copied().max().unwrap_or(0);
        let mut levels = vec![CoordSet::EMPTY; top];
        for (a, &ha) in h.iter().enumerate() {
            levels[ha - 1].insert(a);
        }
        levels
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| self.up[a].union(self.down[a]) == CoordSet::full(self.n))
    }

    pub fn is_antichain(&self) -> bool {
        self.strict_pair_count() == 0
    }

    /// Elements at different levels are always comparable.
    pub fn is_hierarchical(&self) -> bool {
        let h = self.heights();
        (0..self.n).all(|a| (0..self.n).all(|b| h[a] >= h[b] || self.leq(a, b)))
    }

    /// Relation-set inclusion `self <= other`.
    pub fn leq_poset(&self, other: &Poset) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok((0..self.n).all(|a| self.up[a].is_subset(other.up[a])))
    }

    /// `P⁺`: the least hierarchical poset above `self`, with the same levels.
    pub fn upper_neighbor(&self) -> Poset {
        Self::hierarchical_from_levels(self.n, &self.levels())
            .expect("levels partition the ground set")
    }

    /// All complete cuts, ascending: `A` with `a < b` for every `a in A`,
    /// `b not in A`. Always contains `∅` and `[n]`.
    pub fn complete_cuts(&self) -> Vec<CoordSet> {
        let n = self.n;
        let above: Vec<usize> = (0..n).map(|a| self.strict_up(a).len()).collect();
        let mut cuts = Vec::new();
        for k in 0..=n {
            // a cut of size k consists exactly of the elements with at
            // least n-k strict successors
            let cand: CoordSet = (0..n).filter(|&a| above[a] >= n - k).collect();
            if cand.len() != k {
                continue;
            }
            let rest = CoordSet::full(n).difference(cand);
            if cand.iter().all(|a| rest.is_subset(self.up[a])) {
                cuts.push(cand);
            }
        }
        cuts
    }

    /// `P⁻`: the greatest hierarchical poset below `self`. Its levels are
    /// the differences of consecutive complete cuts.
    pub fn lower_neighbor(&self) -> Poset {
        let cuts = self.complete_cuts();
        let levels: Vec<CoordSet> = cuts.windows(2).map(|w| w[1].difference(w[0])).collect();
        Self::hierarchical_from_levels(self.n, &levels)
            .expect("cut differences partition the ground set")
    }

    /// Image of the poset under a permutation of `[n]` (0-indexed `perm[i]`):
    /// `perm(a) <= perm(b)` in the result iff `a <= b` here.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let mut up = vec![CoordSet::EMPTY; self.n];
        for a in 0..self.n {
            up[perm[a]] = self.up[a].iter().map(|b| perm[b]).collect();
        }
        Self::from_up(self.n, up)
    }

    /// Relation pairs of the covering relation, 1-indexed.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (a, b) in self.strict_pairs() {
            let between = self.strict_up(a).intersection(self.down[b]);
            if between.len() == 1 {
                pairs.push((a + 1, b + 1));
            }
        }
        pairs
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        Err(Error::GroundSetSize(n))
    } else {
        Ok(())
    }
}

/// A path `a -> .. -> b -> .. -> a` through the direct relations, 1-indexed.
fn find_cycle(succ: &[CoordSet], a: usize, b: usize) -> Vec<usize> {
    let mut cycle = path(succ, a, b);
    let back = path(succ, b, a);
    cycle.extend(back.into_iter().skip(1));
    cycle.into_iter().map(|e| e + 1).collect()
}

fn path(succ: &[CoordSet], from: usize, to: usize) -> Vec<usize> {
    let n = succ.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for y in succ[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        out.push(cur);
    }
    out.reverse();
    out
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.cover_pairs())
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poset n={}", self.n)?;
        for (a, b) in self.cover_pairs() {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[usize]) -> CoordSet {
        CoordSet::from_one_indexed(items.iter().copied())
    }

    /// `1, 2, 3 <= 4`
    fn star4() -> Poset {
        Poset::from_relations(4, &[(1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn closure_infers_transitive_pairs() {
        let p = Poset::from_relations(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(p.is_chain());
    }

    #[test]
    fn cycle_rejected_with_path() {
        let err = Poset::from_relations(2, &[(1, 2), (2, 1)]).unwrap_err();
        assert_eq!(err, Error::Cycle(vec![1, 2, 1]));
        let err = Poset::from_relations(3, &[(1, 2), (2, 3), (3, 1)]).unwrap_err();
        assert!(matches!(err, Error::Cycle(c) if c.len() == 4));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            Poset::from_relations(3, &[(1, 4)]),
            Err(Error::ElementOutOfRange { element: 4, n: 3 })
        ));
        assert!(matches!(
            Poset::from_relations(0, &[]),
            Err(Error::GroundSetSize(0))
        ));
        assert!(matches!(
            Poset::from_relations(65, &[]),
            Err(Error::GroundSetSize(65))
        ));
    }

    #[test]
    fn p1_of_canonical_example() {
        let p1 = Poset::from_relations(6, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(p1.strict_pairs(), vec![(0, 1), (2, 3)]);
        assert!(!p1.is_hierarchical());
    }

    #[test]
    fn ideal_examples() {
        assert_eq!(star4().ideal(CoordSet::EMPTY), CoordSet::EMPTY);
        assert_eq!(star4().ideal(set(&[1, 4])), set(&[1, 2, 3, 4]));
        let anti = Poset::antichain(6).unwrap();
        assert_eq!(anti.ideal(set(&[2, 5])), set(&[2, 5]));
    }

    #[test]
    fn maximal_examples() {
        let chain = Poset::chain(3).unwrap();
        assert_eq!(chain.maximal_elements(set(&[1, 3])), set(&[3]));
        let anti = Poset::antichain(4).unwrap();
        assert_eq!(anti.maximal_elements(set(&[1, 2, 4])), set(&[1, 2, 4]));
        let p = Poset::from_relations(3, &[(1, 3)]).unwrap();
        assert_eq!(p.maximal_elements(set(&[1, 2, 3])), set(&[2, 3]));
    }

    #[test]
    fn heights_and_levels() {
        let chain = Poset::chain(5).unwrap();
        assert_eq!(chain.heights(), vec![1, 2, 3, 4, 5]);
        assert!(chain.levels().iter().all(|l| l.len() == 1));
        let anti = Poset::antichain(4).unwrap();
        assert_eq!(anti.heights(), vec![1; 4]);
        assert_eq!(anti.levels(), vec![CoordSet::full(4)]);
        let p = Poset::from_relations(3, &[(1, 3)]).unwrap();
        assert_eq!(p.heights(), vec![1, 1, 2]);
        assert_eq!(p.levels(), vec![set(&[1, 2]), set(&[3])]);
        assert_eq!(p.height(2), 2);
    }

    #[test]
    fn structural_predicates() {
        let chain = Poset::chain(4).unwrap();
        assert!(chain.is_chain() && chain.is_hierarchical() && !chain.is_antichain());
        let anti = Poset::antichain(4).unwrap();
        assert!(anti.is_antichain() && anti.is_hierarchical() && !anti.is_chain());
        let p = Poset::from_relations(3, &[(1, 3)]).unwrap();
        assert!(!p.is_hierarchical());
        assert!(star4().is_hierarchical());
        let single = Poset::chain(1).unwrap();
        assert!(single.is_chain() && single.is_antichain());
    }

    #[test]
    fn poset_order_examples() {
        let p = Poset::from_relations(3, &[(1, 3)]).unwrap();
        assert!(p.leq_poset(&p).unwrap());
        assert!(Poset::antichain(3).unwrap().leq_poset(&p).unwrap());
        let chain_123 = Poset::chain(3).unwrap();
        assert!(p.leq_poset(&chain_123).unwrap());
        let chain_132 = Poset::from_relations(3, &[(1, 3), (3, 2)]).unwrap();
        assert!(p.leq_poset(&chain_132).unwrap());
        let chain_213 = Poset::from_relations(3, &[(2, 1), (1, 3)]).unwrap();
        let chain_321 = Poset::from_relations(3, &[(3, 2), (2, 1)]).unwrap();
        assert!(p.leq_poset(&chain_213).unwrap());
        assert!(!p.leq_poset(&chain_321).unwrap());
        assert!(p.leq_poset(&Poset::chain(4).unwrap()).is_err());
    }

    #[test]
    fn neighbor_examples() {
        let anti = Poset::antichain(3).unwrap();
        assert_eq!(anti.upper_neighbor(), anti);
        assert_eq!(anti.lower_neighbor(), anti);
        let chain = Poset::chain(4).unwrap();
        assert_eq!(chain.upper_neighbor(), chain);
        assert_eq!(chain.lower_neighbor(), chain);
        let p = Poset::from_relations(3, &[(1, 3)]).unwrap();
        let expected_up = Poset::from_relations(3, &[(1, 3), (2, 3)]).unwrap();
        assert_eq!(p.upper_neighbor(), expected_up);
        assert_eq!(p.lower_neighbor(), anti);
    }

    #[test]
    fn complete_cuts_of_chain_are_prefixes() {
        let chain = Poset::chain(4).unwrap();
        let cuts = chain.complete_cuts();
        assert_eq!(cuts.len(), 5);
        for (k, c) in cuts.iter().enumerate() {
            assert_eq!(*c, CoordSet::full(k));
        }
    }

    #[test]
    fn from_leq_matrix_checks_closure() {
        let open = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(Poset::from_leq_matrix(&open).is_err());
        let closed = vec![
            vec![true, true, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(
            Poset::from_leq_matrix(&closed).unwrap(),
            Poset::chain(3).unwrap()
        );
    }

    #[test]
    fn relabel_preserves_structure() {
        let p = star4();
        let q = p.relabel(&[3, 0, 1, 2]);
        assert!(q.lt(3, 2) && q.lt(0, 2) && q.lt(1, 2));
        assert_eq!(q.strict_pair_count(), 3);
    }
}

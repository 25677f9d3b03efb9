//! Finite posets with bit-set relations, covering relations and heights.

use serde::Serialize;

use crate::error::{Error, Result};

/// Fixed-capacity bit set over `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> BitSet {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// A validated finite poset on labels `L`; elements are addressed by index.
#[derive(Clone, Debug)]
pub struct FinitePoset<L> {
    labels: Vec<L>,
    /// `up[x]` = `{y : x ≤ y}` (including `x`).
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    heights: Vec<usize>,
}

/// A pair lacking a join or a meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeWitness {
    pub x: usize,
    pub y: usize,
    pub missing: &'static str,
}

impl<L> FinitePoset<L> {
    /// Validates `leq` (reflexive, antisymmetric, transitive) on all pairs.
    pub fn build(labels: Vec<L>, leq: impl Fn(&L, &L) -> bool) -> Result<FinitePoset<L>> {
        let count = labels.len();
        let mut up = vec![BitSet::new(count); count];
        for (x, ux) in up.iter_mut().enumerate() {
            for y in 0..count {
                if leq(&labels[x], &labels[y]) {
                    ux.insert(y);
                }
            }
        }
        Self::from_up_sets(labels, up)
    }

    /// Builds from explicit up-sets (`up[x]` contains `y` iff `x ≤ y`).
    pub fn from_up_sets(labels: Vec<L>, up: Vec<BitSet>) -> Result<FinitePoset<L>> {
        let count = labels.len();
        for (x, ux) in up.iter().enumerate() {
            if !ux.contains(x) {
                return Err(Error::NotReflexive(x));
            }
        }
        for x in 0..count {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAntisymmetric(x.min(y), x.max(y)));
                }
                if !up[y].is_subset(&up[x]) {
                    let z = up[y].iter().find(|&z| !up[x].contains(z)).unwrap();
                    return Err(Error::NotTransitive(x, y, z));
                }
            }
        }
        let mut down = vec![BitSet::new(count); count];
        for (x, ups) in up.iter().enumerate() {
            for y in ups.iter() {
                down[y].insert(x);
            }
        }
        // y covers x iff x < y and nothing lies strictly between.
        let mut upper_covers = vec![Vec::new(); count];
        let mut lower_covers = vec![Vec::new(); count];
        for x in 0..count {
            for y in up[x].iter() {
                if y == x {
                    continue;
                }
                let between = up[x].intersection(&down[y]).count();
                if between == 2 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        // Longest chain from a minimal element, in a linear extension order.
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&x| down[x].count());
        let mut heights = vec![0; count];
        for &x in &order {
            heights[x] = lower_covers[x].iter().map(|&y| heights[y] + 1).max().unwrap_or(0);
        }
        Ok(FinitePoset {
            labels,
            up,
            down,
            upper_covers,
            lower_covers,
            heights,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &L {
        &self.labels[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// All covering pairs `(x, y)` with `y` covering `x`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn height(&self, x: usize) -> usize {
        self.heights[x]
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Every maximal chain has the same length.
    pub fn is_graded(&self) -> bool {
        (0..self.len()).all(|x| {
            self.lower_covers[x]
                .iter()
                .all(|&y| self.heights[y] + 1 == self.heights[x])
        }) && {
            let maxima = self.maximal_elements();
            maxima.iter().all(|&m| self.heights[m] == self.heights[maxima[0]])
        }
    }

    fn unique_least(&self, set: &BitSet, up: &[BitSet]) -> bool {
        let mut candidates = set.iter().filter(|&z| set.is_subset(&up[z]));
        candidates.next().is_some() && candidates.next().is_none()
    }

    /// `None` when every pair has a join and a meet.
    pub fn lattice_witness(&self) -> Option<LatticeWitness> {
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                let upper = self.up[x].intersection(&self.up[y]);
                if !self.unique_least(&upper, &self.up) {
                    return Some(LatticeWitness { x, y, missing: "join" });
                }
                let lower = self.down[x].intersection(&self.down[y]);
                if !self.unique_least(&lower, &self.down) {
                    return Some(LatticeWitness { x, y, missing: "meet" });
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_witness().is_none()
    }

    /// Calls `visit` on every nonempty chain, each listed in increasing order.
    pub fn for_each_chain(&self, mut visit: impl FnMut(&[usize])) {
        let mut chain = Vec::new();
        for x in 0..self.len() {
            chain.push(x);
            self.extend_chains(&mut chain, &mut visit);
            chain.pop();
        }
    }

    fn extend_chains(&self, chain: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        visit(chain);
        let last = *chain.last().unwrap();
        for y in self.up[last].iter() {
            if y != last {
                chain.push(y);
                self.extend_chains(chain, visit);
                chain.pop();
            }
        }
    }

    /// Maximal chains, each from a minimal to a maximal element.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut chain = Vec::new();
        for x in self.minimal_elements() {
            chain.push(x);
            self.extend_maximal(&mut chain, &mut out);
            chain.pop();
        }
        out
    }

    fn extend_maximal(&self, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().unwrap();
        if self.upper_covers[last].is_empty() {
            out.push(chain.clone());
            return;
        }
        for &y in &self.upper_covers[last] {
            chain.push(y);
            self.extend_maximal(chain, out);
            chain.pop();
        }
    }

    /// The opposite order on the same labels.
    pub fn dual(&self) -> FinitePoset<L>
    where
        L: Clone,
    {
        FinitePoset::from_up_sets(self.labels.clone(), self.down.clone()).expect("dual of a valid poset is valid")
    }
}

pub fn build_poset<L>(labels: Vec<L>, leq: impl Fn(&L, &L) -> bool) -> Result<FinitePoset<L>> {
    FinitePoset::build(labels, leq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::{sv, SignVector};

    #[test]
    fn chain_of_three() {
        let p = build_poset(vec![0, 1, 2], |a, b| a <= b).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.heights(), &[0, 1, 2]);
        assert!(p.is_graded());
        assert_eq!(p.maximal_chains(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn rank_one_covectors() {
        let labels: Vec<SignVector> = vec![sv("0"), sv("+"), sv("-")];
        let p = build_poset(labels, |a, b| a.conforms(b).unwrap()).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (0, 2)]);
        assert_eq!(p.bottom(), Some(0));
    }

    #[test]
    fn order_axiom_failures() {
        let err = build_poset(vec![0, 1], |_, _| true).unwrap_err();
        assert_eq!(err, Error::NotAntisymmetric(0, 1));
        // 0 <= 1 <= 2 without 0 <= 2.
        let err = build_poset(vec![0, 1, 2], |a, b| a == b || b - a == 1).unwrap_err();
        assert_eq!(err, Error::NotTransitive(0, 1, 2));
        let err = build_poset(vec![0], |_, _| false).unwrap_err();
        assert_eq!(err, Error::NotReflexive(0));
    }

    #[test]
    fn lattices() {
        // Boolean lattice on two atoms as subsets of {0,1}.
        let b = build_poset(vec![0u8, 1, 2, 3], |a, b| a & !b == 0).unwrap();
        assert!(b.is_lattice());
        // Bowtie: 0,1 below 2,3.
        let bowtie = build_poset(vec![0, 1, 2, 3], |a, b| a == b || (*a < 2 && *b >= 2)).unwrap();
        let w = bowtie.lattice_witness().unwrap();
        assert_eq!((w.x, w.y, w.missing), (0, 1, "join"));
    }

    #[test]
    fn chains_enumerated() {
        let b = build_poset(vec![0u8, 1, 2, 3], |a, b| a & !b == 0).unwrap();
        let mut count = 0;
        b.for_each_chain(|_| count += 1);
        // 4 vertices, 5 comparable pairs, 2 full chains.
        assert_eq!(count, 11);
        assert_eq!(b.dual().bottom(), Some(3));
    }
}

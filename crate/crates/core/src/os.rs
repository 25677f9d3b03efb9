//! The underlying matroid, no-broken-circuit sets and the comparison of
//! Salvetti homology with Orlik–Solomon ranks.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::complex::{homology, HomologyGroup};
use crate::error::{Error, Result};
use crate::om::OrientedMatroid;
use crate::poset::FinitePoset;
use crate::salvetti::build_salvetti_poset;
use crate::sign::{elements, format_set, ElementSet};

/// Matroid given by its lattice of flats (zero sets of covectors).
#[derive(Debug, Clone)]
pub struct UnderlyingMatroid {
    n: usize,
    /// Sorted by (rank, set).
    flats: Vec<ElementSet>,
    ranks: Vec<usize>,
    rank: usize,
}

impl UnderlyingMatroid {
    pub fn from_covectors(om: &OrientedMatroid) -> Result<UnderlyingMatroid> {
        let mut flats: BTreeSet<ElementSet> = BTreeSet::new();
        for x in om.covectors() {
            flats.insert(x.zero_set());
        }
        let labels: Vec<ElementSet> = flats.into_iter().collect();
        let lattice = FinitePoset::build(labels.clone(), |a, b| a & !b == 0)?;
        if !lattice.is_graded() {
            return Err(Error::ConsistencyFailure("flat lattice is not graded".into()));
        }
        let set: HashSet<ElementSet> = labels.iter().copied().collect();
        for (a, b) in labels.iter().tuple_combinations() {
            if !set.contains(&(a & b)) {
                return Err(Error::ConsistencyFailure(format!(
                    "flats {} and {} meet outside the lattice",
                    format_set(*a),
                    format_set(*b)
                )));
            }
        }
        let ground = if om.n() == 64 { u64::MAX } else { (1u64 << om.n()) - 1 };
        if !set.contains(&ground) {
            return Err(Error::ConsistencyFailure("ground set is not a flat".into()));
        }
        let mut paired: Vec<(usize, ElementSet)> = (0..labels.len()).map(|i| (lattice.height(i), labels[i])).collect();
        paired.sort();
        let rank = paired.last().map_or(0, |p| p.0);
        if rank != om.rank() {
            return Err(Error::ConsistencyFailure(format!(
                "flat lattice has rank {rank}, oriented matroid has rank {}",
                om.rank()
            )));
        }
        Ok(UnderlyingMatroid {
            n: om.n(),
            ranks: paired.iter().map(|p| p.0).collect(),
            flats: paired.into_iter().map(|p| p.1).collect(),
            rank,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Flats with their ranks, by increasing rank.
    pub fn flats(&self) -> impl Iterator<Item = (ElementSet, usize)> + '_ {
        self.flats.iter().copied().zip(self.ranks.iter().copied())
    }

    /// Smallest flat containing `s`, with its rank.
    fn closure_and_rank(&self, s: ElementSet) -> (ElementSet, usize) {
        // Flats are sorted by rank, so the first flat containing `s` is the closure.
        self.flats
            .iter()
            .zip(&self.ranks)
            .find(|(f, _)| s & !**f == 0)
            .map(|(f, r)| (*f, *r))
            .expect("the ground set is a flat")
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        self.closure_and_rank(s).0
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.closure_and_rank(s).1
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_of(s) == s.count_ones() as usize
    }

    /// Inclusion-minimal dependent sets, sorted by size then value.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let mut out = Vec::new();
        for size in 1..=(self.rank + 1).min(self.n) {
            for combo in (0..self.n).combinations(size) {
                let s = combo.iter().fold(0u64, |acc, e| acc | 1 << e);
                if !self.is_independent(s) && elements(s).all(|e| self.is_independent(s & !(1 << e))) {
                    out.push(s);
                }
            }
        }
        out
    }
}

pub fn flats_from_covectors(om: &OrientedMatroid) -> Result<UnderlyingMatroid> {
    UnderlyingMatroid::from_covectors(om)
}

pub fn circuits(u: &UnderlyingMatroid) -> Vec<ElementSet> {
    u.circuits()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NbcTable {
    /// Zero-based elements, earliest first.
    pub order: Vec<usize>,
    pub circuits: Vec<ElementSet>,
    pub broken_circuits: Vec<ElementSet>,
    /// `by_size[k]` = nbc sets with `k` elements.
    pub by_size: Vec<Vec<ElementSet>>,
}

impl NbcTable {
    pub fn counts(&self) -> Vec<usize> {
        self.by_size.iter().map(Vec::len).collect()
    }
}

/// The natural order `1 < 2 < … < n`.
pub fn natural_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn nbc_sets(u: &UnderlyingMatroid, order: &[usize]) -> Result<NbcTable> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != natural_order(u.n) {
        return Err(Error::ConsistencyFailure(format!(
            "{:?} is not an ordering of the ground set",
            order.iter().map(|e| e + 1).collect::<Vec<_>>()
        )));
    }
    let position: Vec<usize> = {
        let mut p = vec![0; u.n];
        for (i, &e) in order.iter().enumerate() {
            p[e] = i;
        }
        p
    };
    let circuits = u.circuits();
    let mut broken: Vec<ElementSet> = circuits
        .iter()
        .map(|&c| {
            let first = elements(c).min_by_key(|&e| position[e]).expect("circuits are nonempty");
            c & !(1 << first)
        })
        .collect();
    broken.sort_by_key(|b| (b.count_ones(), *b));
    broken.dedup();
    let mut by_size = vec![Vec::new(); u.rank + 1];
    for (size, bucket) in by_size.iter_mut().enumerate() {
        for combo in (0..u.n).combinations(size) {
            let s = combo.iter().fold(0u64, |acc, e| acc | 1 << e);
            if u.is_independent(s) && broken.iter().all(|&b| b & !s != 0) {
                bucket.push(s);
            }
        }
    }
    Ok(NbcTable {
        order: order.to_vec(),
        circuits,
        broken_circuits: broken,
        by_size,
    })
}

/// Ranks of the Orlik–Solomon algebra by degree, checked against the
/// reversed element order.
pub fn os_betti(u: &UnderlyingMatroid) -> Result<Vec<usize>> {
    if u.n == 0 {
        return Ok(vec![1]);
    }
    let forward = nbc_sets(u, &natural_order(u.n))?.counts();
    let reversed: Vec<usize> = (0..u.n).rev().collect();
    let backward = nbc_sets(u, &reversed)?.counts();
    if forward != backward {
        return Err(Error::ConsistencyFailure(format!(
            "nbc counts depend on the order: {forward:?} vs {backward:?}"
        )));
    }
    Ok(forward)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrReport {
    pub homology: Vec<HomologyGroup>,
    pub nbc: Vec<usize>,
    pub alternating_sum: i64,
}

impl GrReport {
    /// Rows `(degree, rank H_k, torsion, b_k)`.
    pub fn table(&self) -> Vec<(usize, usize, String, usize)> {
        let len = self.homology.len().max(self.nbc.len());
        (0..len)
            .map(|k| {
                let h = self.homology.get(k);
                (
                    k,
                    h.map_or(0, |g| g.betti),
                    h.map_or(String::new(), |g| g.torsion.join(",")),
                    self.nbc.get(k).copied().unwrap_or(0),
                )
            })
            .collect()
    }
}

impl GrReport {
    /// The first failed assertion: a rank or torsion mismatch in some
    /// degree, or a nonzero alternating sum.
    pub fn first_failure(&self, n: usize) -> Option<Error> {
        for (k, rank, torsion, b) in self.table() {
            if rank != b || !torsion.is_empty() {
                let h = if torsion.is_empty() {
                    rank.to_string()
                } else {
                    format!("{rank} + torsion {torsion}")
                };
                return Some(Error::ComparisonFailure {
                    degree: k,
                    homology: h,
                    nbc: b.to_string(),
                });
            }
        }
        (n > 0 && self.alternating_sum != 0)
            .then(|| Error::ConsistencyFailure(format!("alternating sum of nbc counts is {}", self.alternating_sum)))
    }
}

/// Homology of the Salvetti order complex next to nbc counts, unchecked.
pub fn gr_table(om: &OrientedMatroid) -> Result<GrReport> {
    let sal = build_salvetti_poset(om)?;
    let groups = homology(&sal.order_complex());
    let nbc = os_betti(&flats_from_covectors(om)?)?;
    Ok(GrReport {
        alternating_sum: nbc
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum(),
        homology: groups,
        nbc,
    })
}

/// Homology of the Salvetti order complex against nbc counts.
pub fn gr_comparison(om: &OrientedMatroid) -> Result<GrReport> {
    let report = gr_table(om)?;
    match report.first_failure(om.n()) {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

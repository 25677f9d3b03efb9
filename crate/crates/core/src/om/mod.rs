//! Oriented matroids given by their covector sets.
//!
//! Covectors are validated against the axioms (V0) zero membership,
//! (V1) negation closure, (V2) composition closure and (V3) elimination,
//! and the resulting poset `(L, ≤)` is checked to be graded.

mod arrangement;
mod chirotope;
mod iso;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

pub use arrangement::{from_arrangement, Rational, RationalArrangement};
pub use chirotope::{cocircuits_from_chirotope, colex_subsets, Chirotope};
pub use iso::{are_isomorphic, Isomorphism, ISOMORPHISM_MAX_N};

use crate::error::{Error, Result};
use crate::sign::{elements, format_set, ElementSet, SignVector, MAX_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    V0,
    V1,
    V2,
    V3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A failed axiom with its witness. `element` is zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub x: Option<SignVector>,
    pub y: Option<SignVector>,
    pub element: Option<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        match self.axiom {
            Axiom::V0 => write!(f, " (zero vector missing)"),
            Axiom::V1 => write!(f, " (X={}, -X missing)", self.x.unwrap()),
            Axiom::V2 => write!(f, " (X={}, Y={}, X∘Y missing)", self.x.unwrap(), self.y.unwrap()),
            Axiom::V3 => write!(
                f,
                " (X={}, Y={}, e={}: no eliminating Z)",
                self.x.unwrap(),
                self.y.unwrap(),
                self.element.unwrap() + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Outcome per axiom in the order V0, V1, V2, V3.
    pub results: Vec<(Axiom, Option<AxiomViolation>)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, v)| v.is_none())
    }

    pub fn first_failure(&self) -> Option<&AxiomViolation> {
        self.results.iter().find_map(|(_, v)| v.as_ref())
    }
}

fn common_length(candidate: &[SignVector]) -> Result<usize> {
    let first = candidate.first().ok_or(Error::EmptyInput)?;
    for v in candidate {
        if v.len() != first.len() {
            return Err(Error::LengthMismatch(first.len(), v.len()));
        }
    }
    Ok(first.len())
}

/// Checks V0–V3 exhaustively. Witnesses are the first violation in the
/// canonical order of the (deduplicated, sorted) candidate set.
pub fn verify_axioms(candidate: &[SignVector]) -> Result<AxiomReport> {
    let n = common_length(candidate)?;
    let mut vectors: Vec<SignVector> = candidate.to_vec();
    vectors.sort();
    vectors.dedup();
    let set: HashSet<SignVector> = vectors.iter().copied().collect();

    let v0 = (!set.contains(&SignVector::zero(n))).then_some(AxiomViolation {
        axiom: Axiom::V0,
        x: None,
        y: None,
        element: None,
    });

    let v1 = vectors.iter().find(|x| !set.contains(&-**x)).map(|x| AxiomViolation {
        axiom: Axiom::V1,
        x: Some(*x),
        y: None,
        element: None,
    });

    let v2 = vectors
        .iter()
        .find_map(|x| {
            vectors
                .iter()
                .find(|y| !set.contains(&x.compose_unchecked(y)))
                .map(|y| (*x, *y))
        })
        .map(|(x, y)| AxiomViolation {
            axiom: Axiom::V2,
            x: Some(x),
            y: Some(y),
            element: None,
        });

    let v3 = find_elimination_failure(&vectors, n).map(|(x, y, e)| AxiomViolation {
        axiom: Axiom::V3,
        x: Some(x),
        y: Some(y),
        element: Some(e),
    });

    Ok(AxiomReport {
        results: vec![(Axiom::V0, v0), (Axiom::V1, v1), (Axiom::V2, v2), (Axiom::V3, v3)],
    })
}

fn find_elimination_failure(vectors: &[SignVector], n: usize) -> Option<(SignVector, SignVector, usize)> {
    // Candidates for Z grouped by a zero at e.
    let zero_at: Vec<Vec<SignVector>> = (0..n)
        .map(|e| {
            vectors
                .iter()
                .copied()
                .filter(|z| z.zero_set() & (1 << e) != 0)
                .collect()
        })
        .collect();
    for x in vectors {
        for y in vectors {
            let sep = x.separation_unchecked(y);
            if sep == 0 {
                continue;
            }
            let target = x.compose_unchecked(y).mask(!sep);
            for e in elements(sep) {
                let found = zero_at[e].iter().any(|z| z.mask(!sep) == target);
                if !found {
                    return Some((*x, *y, e));
                }
            }
        }
    }
    None
}

/// Loops and (anti)parallel pairs; elements are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub loops: Vec<usize>,
    /// `(e, f, antiparallel)` with `e < f`.
    pub parallel: Vec<(usize, usize, bool)>,
}

#[derive(Debug, Clone)]
pub struct OrientedMatroid {
    n: usize,
    covectors: Vec<SignVector>,
    heights: Vec<usize>,
    index: HashMap<SignVector, usize>,
    rank: usize,
    topes: Vec<usize>,
}

impl OrientedMatroid {
    /// Validates the covector axioms and gradedness.
    pub fn new(covectors: &[SignVector]) -> Result<OrientedMatroid> {
        let n = common_length(covectors)?;
        if n > MAX_LEN {
            return Err(Error::GroundSetTooLarge(n, MAX_LEN));
        }
        let report = verify_axioms(covectors)?;
        if let Some(v) = report.first_failure() {
            return Err(Error::AxiomFailure(v.clone()));
        }
        let mut vectors: Vec<SignVector> = covectors.to_vec();
        vectors.sort_by_key(|v| (v.support_size(), *v));
        vectors.dedup();

        let count = vectors.len();
        // Strict lower covers; vectors are sorted by support size so every
        // Y < X appears before X.
        let mut longest = vec![0usize; count];
        let mut shortest = vec![0usize; count];
        for i in 0..count {
            let below: Vec<usize> = (0..i)
                .filter(|&j| vectors[j] != vectors[i] && vectors[j].conforms_unchecked(&vectors[i]))
                .collect();
            if below.is_empty() {
                continue;
            }
            let covers: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&j| {
                    !below
                        .iter()
                        .any(|&k| k != j && vectors[j].conforms_unchecked(&vectors[k]))
                })
                .collect();
            longest[i] = 1 + covers.iter().map(|&j| longest[j]).max().unwrap();
            shortest[i] = 1 + covers.iter().map(|&j| shortest[j]).min().unwrap();
        }
        if let Some(i) = (0..count).find(|&i| longest[i] != shortest[i]) {
            return Err(Error::NotGraded(format!(
                "maximal chains below {} have lengths {} and {}",
                vectors[i], shortest[i], longest[i]
            )));
        }
        let maximal: Vec<usize> = (0..count)
            .filter(|&i| {
                !vectors
                    .iter()
                    .any(|w| *w != vectors[i] && vectors[i].conforms_unchecked(w))
            })
            .collect();
        let rank = longest[maximal[0]];
        if let Some(&i) = maximal.iter().find(|&&i| longest[i] != rank) {
            return Err(Error::NotGraded(format!(
                "tope {} has height {} but rank is {}",
                vectors[i], longest[i], rank
            )));
        }

        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&i| (longest[i], vectors[i]));
        let covectors: Vec<SignVector> = order.iter().map(|&i| vectors[i]).collect();
        let heights: Vec<usize> = order.iter().map(|&i| longest[i]).collect();
        let index: HashMap<SignVector, usize> = covectors.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let topes = (0..count).filter(|&i| heights[i] == rank).collect();
        Ok(OrientedMatroid {
            n,
            covectors,
            heights,
            index,
            rank,
            topes,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Covectors ordered by `(height, sign string)`; index 0 is the zero vector.
    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn index_of(&self, x: &SignVector) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &SignVector) -> bool {
        self.index.contains_key(x)
    }

    pub fn height(&self, x: &SignVector) -> Option<usize> {
        self.index_of(x).map(|i| self.heights[i])
    }

    pub fn height_at(&self, i: usize) -> usize {
        self.heights[i]
    }

    /// Number of covectors at each height `0..=rank`.
    pub fn height_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.rank + 1];
        for &h in &self.heights {
            profile[h] += 1;
        }
        profile
    }

    pub fn tope_indices(&self) -> &[usize] {
        &self.topes
    }

    pub fn topes(&self) -> Vec<SignVector> {
        self.topes.iter().map(|&i| self.covectors[i]).collect()
    }

    pub fn is_tope(&self, x: &SignVector) -> bool {
        self.height(x) == Some(self.rank)
    }

    pub fn cocircuits(&self) -> Vec<SignVector> {
        self.covectors_at_height(1)
    }

    pub fn covectors_at_height(&self, h: usize) -> Vec<SignVector> {
        self.covectors
            .iter()
            .zip(&self.heights)
            .filter(|(_, &k)| k == h)
            .map(|(v, _)| *v)
            .collect()
    }

    /// `(rank, height of every covector)` in covector order.
    pub fn rank_and_height(&self) -> (usize, &[usize]) {
        (self.rank, &self.heights)
    }

    /// Canonical cocircuit representatives: the lexicographically smaller of each ± pair.
    pub fn cocircuit_representatives(&self) -> Vec<SignVector> {
        let mut reps: Vec<SignVector> = self.cocircuits().into_iter().map(|c| std::cmp::min(c, -c)).collect();
        reps.sort();
        reps.dedup();
        reps
    }

    pub fn simplicity(&self) -> SimplicityReport {
        let mut loops = Vec::new();
        let mut parallel = Vec::new();
        let all_support: ElementSet = self.covectors.iter().fold(0, |acc, v| acc | v.support());
        for e in 0..self.n {
            if all_support & (1 << e) == 0 {
                loops.push(e);
            }
        }
        for e in 0..self.n {
            for f in e + 1..self.n {
                if loops.contains(&e) || loops.contains(&f) {
                    continue;
                }
                if self.covectors.iter().all(|x| x.get(e) == x.get(f)) {
                    parallel.push((e, f, false));
                } else if self.covectors.iter().all(|x| x.get(e) == -x.get(f)) {
                    parallel.push((e, f, true));
                }
            }
        }
        SimplicityReport {
            simple: loops.is_empty() && parallel.is_empty(),
            loops,
            parallel,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity().simple
    }

    pub(crate) fn require_simple(&self) -> Result<()> {
        let report = self.simplicity();
        if report.simple {
            return Ok(());
        }
        let loops: ElementSet = report.loops.iter().fold(0, |acc, e| acc | 1 << e);
        let pairs: Vec<String> = report
            .parallel
            .iter()
            .map(|(e, f, anti)| format!("{}{}{}", e + 1, if *anti { "~-" } else { "~" }, f + 1))
            .collect();
        Err(Error::NotSimple(format!(
            "loops {} parallel [{}]",
            format_set(loops),
            pairs.join(", ")
        )))
    }

    pub fn require_tope(&self, t: &SignVector) -> Result<usize> {
        match self.index_of(t) {
            Some(i) if self.heights[i] == self.rank => Ok(i),
            _ => Err(Error::NotATope(t.to_string())),
        }
    }
}

impl PartialEq for OrientedMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.covectors == other.covectors
    }
}

impl Eq for OrientedMatroid {}

/// Composition closure of a set of cocircuits together with the zero vector.
pub fn span_from_cocircuits(cocircuits: &[SignVector]) -> Result<OrientedMatroid> {
    let n = common_length(cocircuits)?;
    let mut generators: Vec<SignVector> = cocircuits.iter().copied().filter(|c| !c.is_zero()).collect();
    generators.sort();
    generators.dedup();
    let mut seen: HashSet<SignVector> = HashSet::new();
    seen.insert(SignVector::zero(n));
    let mut frontier: Vec<SignVector> = vec![SignVector::zero(n)];
    while let Some(x) = frontier.pop() {
        for c in &generators {
            let y = x.compose_unchecked(c);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    let all: Vec<SignVector> = seen.into_iter().collect();
    OrientedMatroid::new(&all)
}

//! Tope distances, tope posets, simpliciality and minimal positive paths.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mh::{dual_complex, salvetti_cw, vertex_distances};
use crate::om::OrientedMatroid;
use crate::poset::{FinitePoset, LatticeWitness};
use crate::salvetti::{build_salvetti_poset, oriented_one_skeleton, DirectedEdge};
use crate::sign::{format_set, SignVector};

/// Number of elements separating two topes.
pub fn tope_distance(om: &OrientedMatroid, t: &SignVector, s: &SignVector) -> Result<usize> {
    om.require_tope(t)?;
    om.require_tope(s)?;
    Ok(t.separation_unchecked(s).count_ones() as usize)
}

/// All topes ordered by inclusion of their separation sets from `base`.
#[derive(Debug, Clone)]
pub struct TopePoset {
    pub base: SignVector,
    pub poset: FinitePoset<SignVector>,
}

impl TopePoset {
    /// Covering pairs as labels, sorted.
    pub fn hasse_edges(&self) -> Vec<(SignVector, SignVector)> {
        let mut out: Vec<(SignVector, SignVector)> = self
            .poset
            .covers()
            .into_iter()
            .map(|(a, b)| (*self.poset.label(a), *self.poset.label(b)))
            .collect();
        out.sort();
        out
    }

    /// Number of topes at each distance from the base.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &h in self.poset.heights() {
            if out.len() <= h {
                out.resize(h + 1, 0);
            }
            out[h] += 1;
        }
        out
    }

    pub fn lattice_witness(&self) -> Option<(SignVector, SignVector, &'static str)> {
        self.poset
            .lattice_witness()
            .map(|LatticeWitness { x, y, missing }| (*self.poset.label(x), *self.poset.label(y), missing))
    }

    /// Bottom is the base, top its negation, and heights equal distances.
    pub fn check_structure(&self) -> bool {
        let bottom = self.poset.bottom().map(|b| *self.poset.label(b));
        let top = self.poset.top().map(|t| *self.poset.label(t));
        bottom == Some(self.base)
            && top == Some(-self.base)
            && (0..self.poset.len()).all(|i| {
                self.poset.height(i) == self.base.separation_unchecked(self.poset.label(i)).count_ones() as usize
            })
    }

    /// `S ↦ −S` has complementary separation set and reverses the order.
    pub fn complement_map_reverses_order(&self) -> bool {
        let index: HashMap<SignVector, usize> = self.poset.labels().iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let full = self.base.separation_unchecked(&-self.base);
        let image: Option<Vec<usize>> = self.poset.labels().iter().map(|s| index.get(&-*s).copied()).collect();
        let Some(image) = image else {
            return false;
        };
        let n = self.poset.len();
        (0..n).all(|a| {
            let sa = self.base.separation_unchecked(self.poset.label(a));
            let sb = self.base.separation_unchecked(self.poset.label(image[a]));
            sa ^ sb == full && sa & sb == 0
        }) && (0..n).all(|a| (0..n).all(|b| self.poset.leq(a, b) == self.poset.leq(image[b], image[a])))
    }
}

fn topes_sorted(om: &OrientedMatroid) -> Vec<SignVector> {
    let mut topes = om.topes();
    topes.sort();
    topes
}

pub fn tope_poset(om: &OrientedMatroid, base: &SignVector) -> Result<TopePoset> {
    om.require_tope(base)?;
    let poset = FinitePoset::build(topes_sorted(om), |a, b| {
        let (sa, sb) = (base.separation_unchecked(a), base.separation_unchecked(b));
        sa & !sb == 0
    })?;
    Ok(TopePoset { base: *base, poset })
}

/// The literal distance preorder: topes grouped into levels by distance
/// from `base`; every tope of level `i` precedes every tope of level `j > i`.
pub fn distance_preorder(om: &OrientedMatroid, base: &SignVector) -> Result<Vec<Vec<SignVector>>> {
    om.require_tope(base)?;
    let mut levels: Vec<Vec<SignVector>> = vec![Vec::new(); om.n() + 1];
    for t in topes_sorted(om) {
        levels[base.separation_unchecked(&t).count_ones() as usize].push(t);
    }
    while levels.last().is_some_and(Vec::is_empty) {
        levels.pop();
    }
    Ok(levels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialReport {
    pub simplicial: bool,
    /// First tope whose lower interval is not Boolean.
    pub witness: Option<SignVector>,
}

/// Every interval `[0, T]` is a Boolean lattice on `rank` atoms.
pub fn is_simplicial(om: &OrientedMatroid) -> Result<SimplicialReport> {
    om.require_simple()?;
    let rank = om.rank();
    let atoms_all = om.cocircuits();
    for t in topes_sorted(om) {
        let below: Vec<SignVector> = om
            .covectors()
            .iter()
            .copied()
            .filter(|x| x.conforms_unchecked(&t))
            .collect();
        let atoms: Vec<SignVector> = atoms_all.iter().copied().filter(|a| a.conforms_unchecked(&t)).collect();
        if !boolean_interval(&below, &atoms, rank) {
            return Ok(SimplicialReport {
                simplicial: false,
                witness: Some(t),
            });
        }
    }
    Ok(SimplicialReport {
        simplicial: true,
        witness: None,
    })
}

/// `X ↦ {atoms ≤ X}` must be an order isomorphism onto all subsets.
fn boolean_interval(below: &[SignVector], atoms: &[SignVector], rank: usize) -> bool {
    if atoms.len() != rank || below.len() != 1usize << rank {
        return false;
    }
    let codes: Vec<u64> = below
        .iter()
        .map(|x| {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, a)| a.conforms_unchecked(x))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut seen = codes.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != below.len() {
        return false;
    }
    (0..below.len())
        .all(|i| (0..below.len()).all(|j| below[i].conforms_unchecked(&below[j]) == (codes[i] & !codes[j] == 0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopeLatticeVerdict {
    pub base: SignVector,
    pub lattice: bool,
    /// Pair lacking a join or meet, with which one is missing.
    pub witness: Option<(SignVector, SignVector, &'static str)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeEquivalenceReport {
    pub simplicial: SimplicialReport,
    pub topes: Vec<TopeLatticeVerdict>,
    pub all_lattices: bool,
    /// Metadata only: set when the oriented matroid is simplicial.
    pub k_pi_1_predicted: bool,
}

/// Simplicial iff every tope poset is a lattice; disagreement is an error.
pub fn lattice_equivalence_check(om: &OrientedMatroid) -> Result<LatticeEquivalenceReport> {
    let simplicial = is_simplicial(om)?;
    let mut verdicts = Vec::new();
    for t in topes_sorted(om) {
        let tp = tope_poset(om, &t)?;
        let witness = tp.lattice_witness();
        verdicts.push(TopeLatticeVerdict {
            base: t,
            lattice: witness.is_none(),
            witness,
        });
    }
    let all_lattices = verdicts.iter().all(|v| v.lattice);
    if all_lattices != simplicial.simplicial {
        let detail = match (&simplicial.witness, verdicts.iter().find(|v| !v.lattice)) {
            (Some(t), _) => format!("tope {t} has a non-Boolean interval but every tope poset is a lattice"),
            (None, Some(v)) => format!("simplicial, but the tope poset at {} is not a lattice", v.base),
            (None, None) => unreachable!("verdicts disagree"),
        };
        return Err(Error::EquivalenceViolation(detail));
    }
    Ok(LatticeEquivalenceReport {
        k_pi_1_predicted: simplicial.simplicial,
        simplicial,
        topes: verdicts,
        all_lattices,
    })
}

/// A directed path in the oriented 1-skeleton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivePath {
    pub source: SignVector,
    pub target: SignVector,
    pub edges: Vec<DirectedEdge>,
    /// Element crossed by each edge, 1-based.
    pub crossed: Vec<usize>,
}

impl PositivePath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Topes with their outgoing directed edges, each labelled by the element it crosses.
#[derive(Debug, Clone)]
pub struct TopeGraph {
    topes: Vec<SignVector>,
    index: HashMap<SignVector, usize>,
    edges: Vec<DirectedEdge>,
    /// `(element, target, edge)` sorted by element.
    out: Vec<Vec<(usize, usize, usize)>>,
}

impl TopeGraph {
    pub fn new(om: &OrientedMatroid) -> Result<TopeGraph> {
        om.require_simple()?;
        let skeleton = oriented_one_skeleton(om)?;
        let topes = topes_sorted(om);
        let index: HashMap<SignVector, usize> = topes.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut out = vec![Vec::new(); topes.len()];
        for (k, e) in skeleton.edges.iter().enumerate() {
            let crossed = e.source.separation_unchecked(&e.target);
            if crossed.count_ones() != 1 {
                return Err(Error::ConsistencyFailure(format!(
                    "edge {} crosses {}",
                    e.cell,
                    format_set(crossed)
                )));
            }
            out[index[&e.source]].push((crossed.trailing_zeros() as usize, index[&e.target], k));
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Ok(TopeGraph {
            topes,
            index,
            edges: skeleton.edges,
            out,
        })
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    fn require(&self, t: &SignVector) -> Result<usize> {
        self.index.get(t).copied().ok_or_else(|| Error::NotATope(t.to_string()))
    }

    /// Visits every minimal positive path from `t` to `s` as a list of edge
    /// indices, in lexicographic order of crossed elements.
    pub fn for_each_minimal_path(&self, t: &SignVector, s: &SignVector, mut visit: impl FnMut(&[usize])) -> Result<()> {
        let from = self.require(t)?;
        self.require(s)?;
        let mut path = Vec::new();
        self.extend(from, s, &mut path, &mut visit);
        Ok(())
    }

    fn extend(&self, at: usize, s: &SignVector, path: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        let remaining = self.topes[at].separation_unchecked(s);
        if remaining == 0 {
            visit(path);
            return;
        }
        for &(element, target, edge) in &self.out[at] {
            if remaining & (1 << element) != 0 {
                path.push(edge);
                self.extend(target, s, path, visit);
                path.pop();
            }
        }
    }

    fn to_path(&self, t: &SignVector, s: &SignVector, edges: &[usize]) -> PositivePath {
        let edges: Vec<DirectedEdge> = edges.iter().map(|&k| self.edges[k].clone()).collect();
        let crossed = edges
            .iter()
            .map(|e| e.source.separation_unchecked(&e.target).trailing_zeros() as usize + 1)
            .collect();
        PositivePath {
            source: *t,
            target: *s,
            edges,
            crossed,
        }
    }

    /// Edge sequence is consecutive, starts at `t`, ends at `s`, and crosses
    /// each separating element exactly once and nothing else.
    pub fn check_path(&self, path: &PositivePath) -> bool {
        let mut at = path.source;
        let mut crossed = 0u64;
        for e in &path.edges {
            if e.source != at {
                return false;
            }
            let step = e.source.separation_unchecked(&e.target);
            if crossed & step != 0 {
                return false;
            }
            crossed |= step;
            at = e.target;
        }
        at == path.target && crossed == path.source.separation_unchecked(&path.target)
    }

    /// Extends the endpoint of a path to `−source` by always crossing the
    /// smallest available element still to be crossed.
    pub fn greedy_antipodal_completion(&self, path: &PositivePath) -> Option<PositivePath> {
        let goal = -path.source;
        let mut at = self.index[&path.target];
        let mut edges: Vec<usize> = Vec::new();
        loop {
            let remaining = self.topes[at].separation_unchecked(&goal);
            if remaining == 0 {
                break;
            }
            let &(_, target, edge) = self.out[at].iter().find(|(e, _, _)| remaining & (1 << e) != 0)?;
            edges.push(edge);
            at = target;
        }
        let mut full = path.clone();
        let tail = self.to_path(&path.target, &goal, &edges);
        full.target = goal;
        full.edges.extend(tail.edges);
        full.crossed.extend(tail.crossed);
        Some(full)
    }
}

/// All minimal positive paths from `[t,t]` to `[s,s]`, canonically ordered.
pub fn minimal_positive_paths(om: &OrientedMatroid, t: &SignVector, s: &SignVector) -> Result<Vec<PositivePath>> {
    let graph = TopeGraph::new(om)?;
    minimal_paths_in(&graph, t, s)
}

pub fn minimal_paths_in(graph: &TopeGraph, t: &SignVector, s: &SignVector) -> Result<Vec<PositivePath>> {
    let mut out = Vec::new();
    graph.for_each_minimal_path(t, s, |edges| out.push(graph.to_path(t, s, edges)))?;
    for p in &out {
        if !graph.check_path(p) {
            return Err(Error::ConsistencyFailure(format!(
                "path {:?} from {t} to {s} is not minimal",
                p.crossed
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSurvey {
    pub pairs: usize,
    pub paths: usize,
    /// Every path crossed each separating element once.
    pub crossings_ok: bool,
    /// Every path extended to a minimal positive path to the antipode.
    pub extensions_ok: bool,
    /// Path count per ordered tope pair.
    pub counts: BTreeMap<(SignVector, SignVector), usize>,
    pub witness: Option<String>,
}

/// Enumerates minimal positive paths for every ordered tope pair, checking
/// crossings and antipodal extensions along the way.
pub fn survey_paths(om: &OrientedMatroid) -> Result<PathSurvey> {
    let graph = TopeGraph::new(om)?;
    let mut survey = PathSurvey {
        pairs: 0,
        paths: 0,
        crossings_ok: true,
        extensions_ok: true,
        counts: BTreeMap::new(),
        witness: None,
    };
    for t in graph.topes() {
        for s in graph.topes() {
            let mut count = 0;
            let mut crossings_ok = true;
            let mut extensions_ok = true;
            graph.for_each_minimal_path(t, s, |edges| {
                count += 1;
                let path = graph.to_path(t, s, edges);
                crossings_ok &= graph.check_path(&path);
                extensions_ok &= graph
                    .greedy_antipodal_completion(&path)
                    .is_some_and(|full| graph.check_path(&full));
            })?;
            survey.pairs += 1;
            survey.paths += count;
            survey.counts.insert((*t, *s), count);
            if survey.witness.is_none() && !(crossings_ok && extensions_ok) {
                survey.witness = Some(format!("{t} -> {s}"));
            }
            survey.crossings_ok &= crossings_ok;
            survey.extensions_ok &= extensions_ok;
        }
    }
    Ok(survey)
}

/// Every minimal positive path between every tope pair extends to `−T`.
pub fn antipodal_extension_check(om: &OrientedMatroid) -> Result<bool> {
    let topes = om.topes();
    if topes.iter().any(|t| !om.is_tope(&-*t)) {
        return Err(Error::ConsistencyFailure(
            "tope set is not closed under negation".into(),
        ));
    }
    Ok(survey_paths(om)?.extensions_ok)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceAgreement {
    pub pairs: usize,
    pub agrees: bool,
    /// `(T, S, separation, Salvetti distance, dual distance)` of the first mismatch.
    pub witness: Option<(SignVector, SignVector, usize, u32, u32)>,
}

/// Separation count versus graph distance in the Salvetti and dual 1-skeleta.
pub fn distance_agreement(om: &OrientedMatroid) -> Result<DistanceAgreement> {
    let sal = salvetti_cw(&build_salvetti_poset(om)?)?;
    let dual = dual_complex(om)?;
    let (ds, dd) = (vertex_distances(&sal)?, vertex_distances(&dual)?);
    let topes = topes_sorted(om);
    let sal_vertex = |t: &SignVector| {
        let id = format!("[{t},{t}]");
        sal.vertex_by_id(&id).expect("every tope is a Salvetti vertex")
    };
    let dual_vertex = |t: &SignVector| dual.vertex_by_id(&t.to_string()).expect("every tope is a dual vertex");
    let mut report = DistanceAgreement {
        pairs: 0,
        agrees: true,
        witness: None,
    };
    for t in &topes {
        for s in &topes {
            let sep = t.separation_unchecked(s).count_ones() as usize;
            let a = ds.get(sal_vertex(t), sal_vertex(s));
            let b = dd.get(dual_vertex(t), dual_vertex(s));
            report.pairs += 1;
            if a as usize != sep || b as usize != sep {
                report.agrees = false;
                report.witness.get_or_insert((*t, *s, sep, a, b));
            }
        }
    }
    Ok(report)
}

/// Elements crossed, 1-based, as `{…}` text.
pub fn describe_crossings(path: &PositivePath) -> String {
    format_set(path.crossed.iter().fold(0u64, |acc, e| acc | 1 << (e - 1)))
}

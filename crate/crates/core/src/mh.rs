//! Quasi-, local- and full metrical-hemisphere (QMH/LMH/MH) checks for
//! regular CW complexes presented by their face posets.
//!
//! For a vertex `v` and a cell `e` with vertex set `V(e)`, the nearest map
//! `ω̲(v, e)` picks a vertex of `V(e)` closest to `v`, and the farthest map
//! `ω̄(v, e)` a vertex `w` with `d(v, w) = d(v, u) + d(u, w)` for every
//! `u ∈ V(e)`. The local variants use distances in the 1-skeleton `G(e)` of
//! the closed cell. `ω̄` is unique whenever it exists; `ω̲` need not be, so
//! compatibility is decided per `(v, e)` by intersecting the admissible
//! minimizer sets and taking the smallest survivor.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::om::OrientedMatroid;
use crate::poset::{BitSet, FinitePoset};
use crate::salvetti::SalvettiComplex;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CwCell {
    pub id: String,
    pub dim: usize,
}

/// A regular CW complex given by its face poset.
#[derive(Debug, Clone)]
pub struct CWPoset {
    poset: FinitePoset<CwCell>,
    /// Cell indices of the 0-cells; position in this list is the vertex number.
    vertices: Vec<usize>,
    /// `(cell index, endpoint vertex numbers)` for every 1-cell.
    edges: Vec<(usize, [usize; 2])>,
    /// `V(e)` for every cell, increasing.
    cell_vertices: Vec<Vec<usize>>,
}

impl CWPoset {
    /// Validates dimensions against covers and the edge/vertex incidences.
    pub fn new(poset: FinitePoset<CwCell>) -> Result<CWPoset> {
        for (lo, hi) in poset.covers() {
            let (a, b) = (poset.label(lo), poset.label(hi));
            if b.dim != a.dim + 1 {
                return Err(Error::InvalidComplex(format!(
                    "cover {} < {} jumps from dimension {} to {}",
                    a.id, b.id, a.dim, b.dim
                )));
            }
        }
        let vertices: Vec<usize> = (0..poset.len()).filter(|&i| poset.label(i).dim == 0).collect();
        let vertex_number: HashMap<usize, usize> = vertices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut edges = Vec::new();
        for i in 0..poset.len() {
            if poset.label(i).dim != 1 {
                continue;
            }
            let ends: Vec<usize> = poset.lower_covers(i).iter().map(|j| vertex_number[j]).collect();
            if ends.len() != 2 {
                return Err(Error::InvalidComplex(format!(
                    "1-cell {} has {} endpoints",
                    poset.label(i).id,
                    ends.len()
                )));
            }
            edges.push((i, [ends[0], ends[1]]));
        }
        let cell_vertices = (0..poset.len())
            .map(|c| {
                let mut vs: Vec<usize> = poset
                    .down_set(c)
                    .iter()
                    .filter_map(|i| vertex_number.get(&i).copied())
                    .collect();
                vs.sort_unstable();
                vs
            })
            .collect();
        Ok(CWPoset {
            poset,
            vertices,
            edges,
            cell_vertices,
        })
    }

    /// From cell ids with dimensions and covering pairs `(lower, upper)`.
    pub fn from_covers(cells: &[(&str, usize)], covers: &[(&str, &str)]) -> Result<CWPoset> {
        let labels: Vec<CwCell> = cells
            .iter()
            .map(|(id, dim)| CwCell {
                id: id.to_string(),
                dim: *dim,
            })
            .collect();
        let position: HashMap<&str, usize> = cells.iter().enumerate().map(|(i, (id, _))| (*id, i)).collect();
        if position.len() != cells.len() {
            return Err(Error::InvalidComplex("duplicate cell id".into()));
        }
        let mut pairs = Vec::new();
        for (lo, hi) in covers {
            let a = *position
                .get(lo)
                .ok_or_else(|| Error::InvalidComplex(format!("unknown cell {lo}")))?;
            let b = *position
                .get(hi)
                .ok_or_else(|| Error::InvalidComplex(format!("unknown cell {hi}")))?;
            pairs.push((a, b));
        }
        let poset = poset_from_covers(labels, &pairs)?;
        CWPoset::new(poset)
    }

    pub fn poset(&self) -> &FinitePoset<CwCell> {
        &self.poset
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cell_count(&self) -> usize {
        self.poset.len()
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in self.poset.labels() {
            if out.len() <= c.dim {
                out.resize(c.dim + 1, 0);
            }
            out[c.dim] += 1;
        }
        out
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.poset.label(self.vertices[v]).id
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|&i| self.poset.label(i).id == id)
    }

    pub fn cell_by_id(&self, id: &str) -> Option<usize> {
        (0..self.poset.len()).find(|&i| self.poset.label(i).id == id)
    }

    /// Vertex numbers of `V(e)`, increasing.
    pub fn cell_vertices(&self, cell: usize) -> &[usize] {
        &self.cell_vertices[cell]
    }

    fn cell_edges(&self, cell: usize) -> Vec<[usize; 2]> {
        let down = self.poset.down_set(cell);
        self.edges
            .iter()
            .filter(|(i, _)| down.contains(*i))
            .map(|(_, ends)| *ends)
            .collect()
    }

    /// Textual `.cw` form: `cell <id> dim <d>` lines then `cover <lower> <upper>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in self.poset.labels() {
            out.push_str(&format!("cell {} dim {}\n", c.id, c.dim));
        }
        for (lo, hi) in self.poset.covers() {
            out.push_str(&format!(
                "cover {} {}\n",
                self.poset.label(lo).id,
                self.poset.label(hi).id
            ));
        }
        out
    }
}

/// Reflexive-transitive closure of covering pairs.
pub(crate) fn poset_from_covers<L>(labels: Vec<L>, covers: &[(usize, usize)]) -> Result<FinitePoset<L>> {
    let count = labels.len();
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); count];
    for &(a, b) in covers {
        upper[a].push(b);
    }
    let mut up = vec![BitSet::new(count); count];
    for (start, up_start) in up.iter_mut().enumerate() {
        let mut stack = vec![start];
        up_start.insert(start);
        while let Some(x) = stack.pop() {
            for &y in &upper[x] {
                if !up_start.contains(y) {
                    up_start.insert(y);
                    stack.push(y);
                }
            }
        }
    }
    FinitePoset::from_up_sets(labels, up)
}

fn bfs(adjacency: &[Vec<usize>], source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adjacency.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &y in &adjacency[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// All-pairs shortest-path distances on a vertex subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    /// Vertex numbers covered, increasing.
    pub vertices: Vec<usize>,
    /// Position of each vertex number in `vertices`, `usize::MAX` if absent.
    slot: Vec<usize>,
    table: Vec<u32>,
}

impl DistanceTable {
    fn build(vertices: Vec<usize>, edges: &[[usize; 2]]) -> std::result::Result<DistanceTable, (usize, usize)> {
        let mut slot = vec![usize::MAX; vertices.iter().max().map_or(0, |m| m + 1)];
        for (k, &v) in vertices.iter().enumerate() {
            slot[v] = k;
        }
        let size = vertices.len();
        let mut adjacency = vec![Vec::new(); size];
        for &[a, b] in edges {
            let (a, b) = (slot[a], slot[b]);
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut table = vec![0u32; size * size];
        for s in 0..size {
            let dist = bfs(&adjacency, s);
            for (t, d) in dist.iter().enumerate() {
                match d {
                    Some(d) => table[s * size + t] = *d,
                    None => return Err((vertices[s], vertices[t])),
                }
            }
        }
        Ok(DistanceTable { vertices, slot, table })
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        let n = self.vertices.len();
        self.table[self.slot[a] * n + self.slot[b]]
    }
}

/// Global distances on `G(Q)` and local distances on every `G(e)`.
#[derive(Debug, Clone)]
pub struct SkeletonDistances {
    pub global: DistanceTable,
    /// Indexed by cell.
    pub local: Vec<DistanceTable>,
}

pub fn skeleton_distances(q: &CWPoset) -> Result<SkeletonDistances> {
    let global = vertex_distances(q)?;
    let local = (0..q.cell_count())
        .map(|c| local_distances(q, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(SkeletonDistances { global, local })
}

/// Distances on `G(Q)` only.
pub fn vertex_distances(q: &CWPoset) -> Result<DistanceTable> {
    let all_edges: Vec<[usize; 2]> = q.edges.iter().map(|(_, e)| *e).collect();
    DistanceTable::build((0..q.vertex_count()).collect(), &all_edges).map_err(disconnected(q))
}

fn local_distances(q: &CWPoset, cell: usize) -> Result<DistanceTable> {
    DistanceTable::build(q.cell_vertices(cell).to_vec(), &q.cell_edges(cell)).map_err(disconnected(q))
}

fn disconnected(q: &CWPoset) -> impl Fn((usize, usize)) -> Error + '_ {
    move |(a, b)| Error::Disconnected(q.vertices[a], q.vertices[b])
}

/// Is the 1-skeleton bipartite (every circuit even)?
pub fn skeleton_is_bipartite(q: &CWPoset) -> bool {
    let mut colour: Vec<Option<bool>> = vec![None; q.vertex_count()];
    let mut adjacency = vec![Vec::new(); q.vertex_count()];
    for (_, [a, b]) in &q.edges {
        adjacency[*a].push(*b);
        adjacency[*b].push(*a);
    }
    for s in 0..q.vertex_count() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adjacency[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(!colour[x].unwrap());
                        queue.push_back(y);
                    }
                    Some(c) if c == colour[x].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MhWitness {
    pub vertex: String,
    pub cell: String,
    /// The closed cell whose local metric was in use, if any.
    pub within: Option<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witness: Option<MhWitness>,
}

impl CheckOutcome {
    fn pass() -> CheckOutcome {
        CheckOutcome {
            passed: true,
            witness: None,
        }
    }

    fn fail(w: MhWitness) -> CheckOutcome {
        CheckOutcome {
            passed: false,
            witness: Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaEntry {
    pub vertex: String,
    pub cell: String,
    pub nearest: String,
    pub farthest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MHReport {
    pub qmh: CheckOutcome,
    pub lmh: CheckOutcome,
    pub mh: CheckOutcome,
    /// Every circuit of the 1-skeleton has even length.
    pub bipartite: bool,
    /// Local distance equals global distance for all vertex pairs of all cells.
    pub local_equals_global: bool,
    /// Chosen `ω̲`, `ω̄` for every `(vertex, cell)` when MH passes.
    pub omega: Option<Vec<OmegaEntry>>,
}

/// Nearest set and additive farthest vertex of `v` relative to `members`.
fn hemisphere(v: usize, members: &[usize], dist: impl Fn(usize, usize) -> u32) -> (Vec<usize>, Option<usize>) {
    let dv: Vec<u32> = members.iter().map(|&u| dist(v, u)).collect();
    let lo = *dv.iter().min().unwrap();
    let hi = *dv.iter().max().unwrap();
    let nearest = members
        .iter()
        .zip(&dv)
        .filter(|(_, &d)| d == lo)
        .map(|(&u, _)| u)
        .collect();
    let farthest = members
        .iter()
        .zip(&dv)
        .filter(|(_, &d)| d == hi)
        .map(|(&w, _)| w)
        .find(|&w| members.iter().zip(&dv).all(|(&u, &du)| hi == du + dist(u, w)));
    (nearest, farthest)
}

struct GlobalQmh {
    nearest: HashMap<(usize, usize), Vec<usize>>,
    farthest: HashMap<(usize, usize), usize>,
    outcome: CheckOutcome,
}

fn global_qmh(q: &CWPoset, dist: &DistanceTable) -> GlobalQmh {
    let mut nearest = HashMap::new();
    let mut farthest = HashMap::new();
    let mut outcome = CheckOutcome::pass();
    for v in 0..q.vertex_count() {
        for (e, members) in q.cell_vertices.iter().enumerate() {
            let (near, far) = hemisphere(v, members, |a, b| dist.get(a, b));
            nearest.insert((v, e), near);
            match far {
                Some(w) => {
                    farthest.insert((v, e), w);
                }
                None if outcome.passed => {
                    outcome = CheckOutcome::fail(MhWitness {
                        vertex: q.vertex_label(v).to_string(),
                        cell: q.poset.label(e).id.clone(),
                        within: None,
                        reason: "no farthest vertex satisfies distance additivity".into(),
                    });
                }
                None => {}
            }
        }
    }
    GlobalQmh {
        nearest,
        farthest,
        outcome,
    }
}

/// QMH alone.
pub fn qmh_check(q: &CWPoset) -> Result<CheckOutcome> {
    Ok(global_qmh(q, &vertex_distances(q)?).outcome)
}

/// Accumulated local constraints on one `(v, e)` key.
struct LocalKey {
    /// Increasing.
    nearest: Vec<usize>,
    /// Distinct local farthest vertices with the first cell giving each.
    farthest: Vec<(usize, usize)>,
    first_cell: usize,
}

/// LMH outcome, the per-`(vertex, cell)` constraints and whether local
/// distances equal global ones.
type LocalStructure = (CheckOutcome, HashMap<(usize, usize), LocalKey>, bool);

fn local_structure(q: &CWPoset) -> Result<LocalStructure> {
    let global = vertex_distances(q)?;
    let mut outcome = CheckOutcome::pass();
    let mut keys: HashMap<(usize, usize), LocalKey> = HashMap::new();
    let mut local_equals_global = true;
    for cell in 0..q.cell_count() {
        let local = local_distances(q, cell)?;
        for &a in &local.vertices {
            for &b in &local.vertices {
                if local.get(a, b) != global.get(a, b) {
                    local_equals_global = false;
                }
            }
        }
        let subcells: Vec<usize> = q.poset.down_set(cell).iter().collect();
        for &v in &local.vertices {
            for &e in &subcells {
                let (near, far) = hemisphere(v, q.cell_vertices(e), |a, b| local.get(a, b));
                let Some(far) = far else {
                    if outcome.passed {
                        outcome = CheckOutcome::fail(MhWitness {
                            vertex: q.vertex_label(v).to_string(),
                            cell: q.poset.label(e).id.clone(),
                            within: Some(q.poset.label(cell).id.clone()),
                            reason: "closed cell is not QMH in its own metric".into(),
                        });
                    }
                    continue;
                };
                match keys.get_mut(&(v, e)) {
                    None => {
                        keys.insert(
                            (v, e),
                            LocalKey {
                                nearest: near,
                                farthest: vec![(far, cell)],
                                first_cell: cell,
                            },
                        );
                    }
                    Some(entry) => {
                        let kept: Vec<usize> = entry
                            .nearest
                            .iter()
                            .copied()
                            .filter(|u| near.binary_search(u).is_ok())
                            .collect();
                        let before = std::mem::replace(&mut entry.nearest, kept);
                        if entry.farthest.iter().all(|&(w, _)| w != far) {
                            entry.farthest.push((far, cell));
                        }
                        if outcome.passed && (entry.nearest.is_empty() || entry.farthest.len() > 1) {
                            let what = if entry.nearest.is_empty() {
                                format!(
                                    "nearest vertex {{{}}} in {} but {{{}}} in {}",
                                    names(q, &before),
                                    q.poset.label(entry.first_cell).id,
                                    names(q, &near),
                                    q.poset.label(cell).id
                                )
                            } else {
                                "farthest vertices disagree between cells".to_string()
                            };
                            outcome = CheckOutcome::fail(MhWitness {
                                vertex: q.vertex_label(v).to_string(),
                                cell: q.poset.label(e).id.clone(),
                                within: Some(q.poset.label(cell).id.clone()),
                                reason: what,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok((outcome, keys, local_equals_global))
}

fn names<'a>(q: &CWPoset, set: impl IntoIterator<Item = &'a usize>) -> String {
    set.into_iter()
        .map(|&v| q.vertex_label(v))
        .collect::<Vec<_>>()
        .join(",")
}

/// LMH alone: every closed cell QMH in its own metric, plus compatibility.
pub fn lmh_check(q: &CWPoset) -> Result<CheckOutcome> {
    Ok(local_structure(q)?.0)
}

/// Full report: QMH, LMH, and agreement of global with local maps.
pub fn mh_check(q: &CWPoset) -> Result<MHReport> {
    let bipartite = skeleton_is_bipartite(q);
    let global = global_qmh(q, &vertex_distances(q)?);
    let (lmh, keys, local_equals_global) = local_structure(q)?;
    let mut mh = if !global.outcome.passed {
        global.outcome.clone()
    } else if !lmh.passed {
        lmh.clone()
    } else {
        CheckOutcome::pass()
    };
    let mut omega = Vec::new();
    if mh.passed {
        for v in 0..q.vertex_count() {
            for e in 0..q.cell_count() {
                let g_near = &global.nearest[&(v, e)];
                let g_far = global.farthest[&(v, e)];
                let (near, far) = match keys.get(&(v, e)) {
                    None => (g_near[0], g_far),
                    Some(k) => {
                        let common = k.nearest.iter().copied().find(|u| g_near.contains(u));
                        let local_far = k.farthest[0].0;
                        match common {
                            Some(u) if local_far == g_far => (u, g_far),
                            _ => {
                                if mh.passed {
                                    let reason = if common.is_none() {
                                        format!(
                                            "globally nearest {{{}}} but nearest in {} is {{{}}}",
                                            names(q, g_near),
                                            q.poset.label(k.first_cell).id,
                                            names(q, &k.nearest)
                                        )
                                    } else {
                                        "global and local farthest vertices differ".into()
                                    };
                                    mh = CheckOutcome::fail(MhWitness {
                                        vertex: q.vertex_label(v).to_string(),
                                        cell: q.poset.label(e).id.clone(),
                                        within: Some(q.poset.label(k.first_cell).id.clone()),
                                        reason,
                                    });
                                }
                                continue;
                            }
                        }
                    }
                };
                omega.push(OmegaEntry {
                    vertex: q.vertex_label(v).to_string(),
                    cell: q.poset.label(e).id.clone(),
                    nearest: q.vertex_label(near).to_string(),
                    farthest: q.vertex_label(far).to_string(),
                });
            }
        }
    }
    Ok(MHReport {
        qmh: global.outcome,
        lmh,
        omega: mh.passed.then_some(omega),
        mh,
        bipartite,
        local_equals_global,
    })
}

/// The complex dual to the stratification: covector `X` becomes a cell of
/// dimension `rank − height(X)`, with the order reversed.
pub fn dual_complex(om: &OrientedMatroid) -> Result<CWPoset> {
    om.require_simple()?;
    let labels: Vec<CwCell> = om
        .covectors()
        .iter()
        .enumerate()
        .map(|(i, x)| CwCell {
            id: x.to_string(),
            dim: om.rank() - om.height_at(i),
        })
        .collect();
    let covectors = om.covectors().to_vec();
    let poset = FinitePoset::build((0..labels.len()).collect::<Vec<usize>>(), |&a, &b| {
        covectors[b].conforms_unchecked(&covectors[a])
    })?;
    let up: Vec<BitSet> = (0..poset.len()).map(|i| poset.up_set(i).clone()).collect();
    CWPoset::new(FinitePoset::from_up_sets(labels, up)?)
}

/// The Salvetti complex as a CW poset with cell ids `[X,T]`.
pub fn salvetti_cw(sal: &SalvettiComplex) -> Result<CWPoset> {
    let labels: Vec<CwCell> = sal
        .cells()
        .iter()
        .map(|c| CwCell {
            id: c.to_string(),
            dim: c.dim,
        })
        .collect();
    let up: Vec<BitSet> = (0..sal.poset().len()).map(|i| sal.poset().up_set(i).clone()).collect();
    CWPoset::new(FinitePoset::from_up_sets(labels, up)?)
}

/// Small hand-built complexes.
pub mod examples {
    use super::*;

    fn polygon(k: usize) -> CWPoset {
        let vs: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
        let es: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
        let mut cells: Vec<(&str, usize)> = vs.iter().map(|v| (v.as_str(), 0)).collect();
        cells.extend(es.iter().map(|e| (e.as_str(), 1)));
        cells.push(("f", 2));
        let mut covers = Vec::new();
        for i in 0..k {
            covers.push((vs[i].as_str(), es[i].as_str()));
            covers.push((vs[(i + 1) % k].as_str(), es[i].as_str()));
            covers.push((es[i].as_str(), "f"));
        }
        CWPoset::from_covers(&cells, &covers).expect("polygon is a valid complex")
    }

    /// A closed square 2-cell.
    pub fn square() -> CWPoset {
        polygon(4)
    }

    /// A closed triangular 2-cell.
    pub fn triangle() -> CWPoset {
        polygon(3)
    }

    pub fn single_edge() -> CWPoset {
        CWPoset::from_covers(&[("a", 0), ("b", 0), ("e", 1)], &[("a", "e"), ("b", "e")])
            .expect("edge is a valid complex")
    }

    /// Octagonal 2-cell on the cube graph: vertices `v0..v7` follow a
    /// Hamiltonian cycle of the 3-cube, `o0..o7` are its edges and
    /// `c03, c16, c25, c47` the four remaining cube edges. With
    /// `trapezoid` a further 2-cell bounded by `o0, o1, o2, c03` is added.
    pub fn octagon(trapezoid: bool) -> CWPoset {
        let vs: Vec<String> = (0..8).map(|i| format!("v{i}")).collect();
        let os: Vec<String> = (0..8).map(|i| format!("o{i}")).collect();
        let chords = [(0, 3), (1, 6), (2, 5), (4, 7)];
        let cs: Vec<String> = chords.iter().map(|(a, b)| format!("c{a}{b}")).collect();
        let mut cells: Vec<(&str, usize)> = vs.iter().map(|v| (v.as_str(), 0)).collect();
        cells.extend(os.iter().map(|e| (e.as_str(), 1)));
        cells.extend(cs.iter().map(|e| (e.as_str(), 1)));
        cells.push(("octagon", 2));
        let mut covers = Vec::new();
        for i in 0..8 {
            covers.push((vs[i].as_str(), os[i].as_str()));
            covers.push((vs[(i + 1) % 8].as_str(), os[i].as_str()));
            covers.push((os[i].as_str(), "octagon"));
        }
        for (k, (a, b)) in chords.iter().enumerate() {
            covers.push((vs[*a].as_str(), cs[k].as_str()));
            covers.push((vs[*b].as_str(), cs[k].as_str()));
        }
        if trapezoid {
            cells.push(("trapezoid", 2));
            for e in ["o0", "o1", "o2", "c03"] {
                covers.push((e, "trapezoid"));
            }
        }
        CWPoset::from_covers(&cells, &covers).expect("octagon complex is valid")
    }
}

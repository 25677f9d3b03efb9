//! The Salvetti complex of an oriented matroid as a poset of cells `[X, T]`.
//!
//! A cell pairs a covector `X` with a tope `T ≥ X`; its dimension is
//! `rank − height(X)`, so `[T, T]` are vertices and `[0, T]` are top cells.
//! Cells are stored smaller-below-larger: `[Y, S] ≤ [X, T]` iff `X ≤ Y` and
//! `Y ∘ T = S`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::complex::{order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::om::OrientedMatroid;
use crate::poset::FinitePoset;
use crate::sign::SignVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SalvettiCell {
    pub dim: usize,
    pub covector: SignVector,
    pub tope: SignVector,
}

impl fmt::Display for SalvettiCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.covector, self.tope)
    }
}

/// `[Y, S] ≤ [X, T]` in the smaller-below-larger convention.
pub fn salvetti_leq(lower: &SalvettiCell, upper: &SalvettiCell) -> bool {
    upper.covector.conforms_unchecked(&lower.covector) && lower.covector.compose_unchecked(&upper.tope) == lower.tope
}

#[derive(Debug, Clone)]
pub struct SalvettiComplex {
    rank: usize,
    topes: Vec<SignVector>,
    poset: FinitePoset<SalvettiCell>,
    index: HashMap<SalvettiCell, usize>,
}

impl SalvettiComplex {
    pub fn poset(&self) -> &FinitePoset<SalvettiCell> {
        &self.poset
    }

    pub fn cells(&self) -> &[SalvettiCell] {
        self.poset.labels()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn index_of(&self, cell: &SalvettiCell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn vertex_of(&self, tope: &SignVector) -> Option<usize> {
        self.index_of(&SalvettiCell {
            dim: 0,
            covector: *tope,
            tope: *tope,
        })
    }

    pub fn order_complex(&self) -> SimplicialComplex {
        order_complex(&self.poset)
    }
}

/// Cells in canonical order `(dim, covector, tope)` with the Salvetti order.
pub fn build_salvetti_poset(om: &OrientedMatroid) -> Result<SalvettiComplex> {
    om.require_simple()?;
    let rank = om.rank();
    let topes = om.topes();
    let mut cells = Vec::new();
    for (i, x) in om.covectors().iter().enumerate() {
        let dim = rank - om.height_at(i);
        for t in &topes {
            if x.conforms_unchecked(t) {
                cells.push(SalvettiCell {
                    dim,
                    covector: *x,
                    tope: *t,
                });
            }
        }
    }
    cells.sort();
    let poset = FinitePoset::build(cells, salvetti_leq)?;
    let index = poset.labels().iter().enumerate().map(|(i, c)| (*c, i)).collect();
    Ok(SalvettiComplex {
        rank,
        topes,
        poset,
        index,
    })
}

fn validate_cell(cell: &SalvettiCell, om: &OrientedMatroid) -> Result<()> {
    let height = om
        .height(&cell.covector)
        .ok_or_else(|| Error::InvalidCell(format!("{cell}: {} is not a covector", cell.covector)))?;
    if !om.is_tope(&cell.tope) {
        return Err(Error::InvalidCell(format!("{cell}: {} is not a tope", cell.tope)));
    }
    if !cell.covector.conforms_unchecked(&cell.tope) {
        return Err(Error::InvalidCell(format!("{cell}: covector does not conform to tope")));
    }
    if cell.dim != om.rank() - height {
        return Err(Error::InvalidCell(format!(
            "{cell}: dimension {} should be {}",
            cell.dim,
            om.rank() - height
        )));
    }
    Ok(())
}

pub fn cell(om: &OrientedMatroid, covector: SignVector, tope: SignVector) -> Result<SalvettiCell> {
    let height = om
        .height(&covector)
        .ok_or_else(|| Error::InvalidCell(format!("{covector} is not a covector")))?;
    let c = SalvettiCell {
        dim: om.rank() - height,
        covector,
        tope,
    };
    validate_cell(&c, om)?;
    Ok(c)
}

/// `∂[X, T] = { [Y, Y ∘ T] : X < Y }`, sorted canonically.
pub fn boundary_cells(c: &SalvettiCell, om: &OrientedMatroid) -> Result<Vec<SalvettiCell>> {
    validate_cell(c, om)?;
    let mut out: Vec<SalvettiCell> = om
        .covectors()
        .iter()
        .enumerate()
        .filter(|(_, y)| **y != c.covector && c.covector.conforms_unchecked(y))
        .map(|(i, y)| SalvettiCell {
            dim: om.rank() - om.height_at(i),
            covector: *y,
            tope: y.compose_unchecked(&c.tope),
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVectorReport {
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub topes: usize,
}

/// f-vector and Euler characteristic, asserting `f_0 = f_rank = #topes` and `χ = 0`.
pub fn f_vector_and_euler(sal: &SalvettiComplex) -> Result<FVectorReport> {
    let mut f = vec![0usize; sal.rank + 1];
    for c in sal.cells() {
        f[c.dim] += 1;
    }
    let euler: i64 = f
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum();
    let topes = sal.topes.len();
    if f[0] != topes || f[sal.rank] != topes {
        return Err(Error::ConsistencyFailure(format!(
            "f-vector {f:?} does not start and end with #topes = {topes}"
        )));
    }
    if euler != 0 {
        return Err(Error::ConsistencyFailure(format!("Euler characteristic {euler} != 0")));
    }
    Ok(FVectorReport {
        f_vector: f,
        euler,
        topes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedEdge {
    pub cell: SalvettiCell,
    pub source: SignVector,
    pub target: SignVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedSkeleton {
    pub vertices: Vec<SignVector>,
    /// Sorted by cell.
    pub edges: Vec<DirectedEdge>,
}

impl OrientedSkeleton {
    pub fn out_edges<'a>(&'a self, from: &'a SignVector) -> impl Iterator<Item = &'a DirectedEdge> + 'a {
        self.edges.iter().filter(move |e| e.source == *from)
    }

    pub fn in_degree(&self, v: &SignVector) -> usize {
        self.edges.iter().filter(|e| e.target == *v).count()
    }

    pub fn out_degree(&self, v: &SignVector) -> usize {
        self.edges.iter().filter(|e| e.source == *v).count()
    }
}

/// Each 1-cell `[X, T]` is directed from `[T, T]` to `[T', T']`, where `T'`
/// is the other tope above `X`.
pub fn oriented_one_skeleton(om: &OrientedMatroid) -> Result<OrientedSkeleton> {
    if om.rank() == 0 {
        return Ok(OrientedSkeleton {
            vertices: om.topes(),
            edges: Vec::new(),
        });
    }
    let topes = om.topes();
    let mut edges = Vec::new();
    for x in om.covectors_at_height(om.rank() - 1) {
        let above: Vec<SignVector> = topes.iter().copied().filter(|t| x.conforms_unchecked(t)).collect();
        if above.len() != 2 {
            return Err(Error::ConsistencyFailure(format!(
                "subtope {x} lies below {} topes",
                above.len()
            )));
        }
        for (s, t) in [(above[0], above[1]), (above[1], above[0])] {
            edges.push(DirectedEdge {
                cell: SalvettiCell {
                    dim: 1,
                    covector: x,
                    tope: s,
                },
                source: s,
                target: t,
            });
        }
    }
    edges.sort_by_key(|e| e.cell);
    Ok(OrientedSkeleton { vertices: topes, edges })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NerveReport {
    pub agrees: bool,
    pub vertices: usize,
    pub faces: Vec<usize>,
    pub facets: usize,
    /// A face present in exactly one of the two complexes.
    pub witness: Option<Vec<SalvettiCell>>,
}

/// Nonempty-intersection criterion for the open sets `W(F, T)`:
/// `F1 ≤ F2` and `T2 = F2 ∘ T1`.
fn intersect_criterion(a: &SalvettiCell, b: &SalvettiCell) -> bool {
    a.covector.conforms_unchecked(&b.covector) && b.tope == b.covector.compose_unchecked(&a.tope)
}

/// Builds the nerve of the covering `{W(F, T)}` from the pairwise criterion
/// and compares it face by face with the order complex of the Salvetti poset.
pub fn nerve_check(om: &OrientedMatroid) -> Result<NerveReport> {
    let sal = build_salvetti_poset(om)?;
    // Vertices are all pairs (F, T) with F ≤ T, enumerated independently.
    let topes = om.topes();
    let mut pairs: Vec<SalvettiCell> = Vec::new();
    for (i, f) in om.covectors().iter().enumerate() {
        for t in &topes {
            if f.conforms_unchecked(t) {
                pairs.push(SalvettiCell {
                    dim: om.rank() - om.height_at(i),
                    covector: *f,
                    tope: *t,
                });
            }
        }
    }
    pairs.sort();
    let count = pairs.len();
    let adjacent: Vec<Vec<usize>> = (0..count)
        .map(|i| {
            (i + 1..count)
                .filter(|&j| intersect_criterion(&pairs[i], &pairs[j]) || intersect_criterion(&pairs[j], &pairs[i]))
                .collect()
        })
        .collect();
    let adj_set: Vec<HashSet<usize>> = adjacent.iter().map(|v| v.iter().copied().collect()).collect();

    // Cliques with increasing vertex indices.
    let mut nerve_faces: HashSet<Vec<SalvettiCell>> = HashSet::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..count).map(|i| (vec![i], adjacent[i].clone())).collect();
    while let Some((clique, candidates)) = stack.pop() {
        nerve_faces.insert(clique.iter().map(|&i| pairs[i]).collect());
        for (k, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|w| adj_set[v].contains(w))
                .collect();
            let mut grown = clique.clone();
            grown.push(v);
            stack.push((grown, next));
        }
    }

    let oc = sal.order_complex();
    let cells = sal.cells();
    let mut order_faces: HashSet<Vec<SalvettiCell>> = HashSet::new();
    for k in 0..=oc.dimension().unwrap_or(0) {
        for face in oc.faces(k) {
            let mut labels: Vec<SalvettiCell> = face.iter().map(|&i| cells[i]).collect();
            labels.sort();
            order_faces.insert(labels);
        }
    }
    let same_vertices = pairs.as_slice() == cells;
    let mut witness = nerve_faces.symmetric_difference(&order_faces).min().cloned();
    if !same_vertices && witness.is_none() {
        witness = pairs.iter().find(|p| sal.index_of(p).is_none()).map(|p| vec![*p]);
    }
    Ok(NerveReport {
        agrees: same_vertices && witness.is_none(),
        vertices: count,
        faces: oc.f_vector(),
        facets: oc.facets().len(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetractionReport {
    pub order_reversing_inclusion: bool,
    pub order_reversing_retraction: bool,
    pub composite_identity: bool,
}

impl RetractionReport {
    pub fn passed(&self) -> bool {
        self.order_reversing_inclusion && self.order_reversing_retraction && self.composite_identity
    }
}

/// Checks `X ↦ [X, X∘T]` and `[X, T'] ↦ X` against the two orders.
pub fn retraction_check(om: &OrientedMatroid, sal: &SalvettiComplex, tope: &SignVector) -> Result<RetractionReport> {
    om.require_tope(tope)?;
    let covectors = om.covectors();
    let include = |x: &SignVector| SalvettiCell {
        dim: om.rank() - om.height(x).unwrap(),
        covector: *x,
        tope: x.compose_unchecked(tope),
    };
    let mut inclusion_ok = true;
    let mut composite_ok = true;
    for x in covectors {
        let cx = include(x);
        if sal.index_of(&cx).is_none() || cx.covector != *x {
            composite_ok = false;
        }
        for y in covectors {
            // X ≤ Y in L exactly when the image of Y lies below the image of X.
            if x.conforms_unchecked(y) != salvetti_leq(&include(y), &cx) {
                inclusion_ok = false;
            }
        }
    }
    let cells = sal.cells();
    let mut retraction_ok = true;
    for (i, a) in cells.iter().enumerate() {
        for b in sal.poset().up_set(i).iter() {
            // a ≤ b among cells forces b's covector ≤ a's covector.
            if !cells[b].covector.conforms_unchecked(&a.covector) {
                retraction_ok = false;
            }
        }
    }
    Ok(RetractionReport {
        order_reversing_inclusion: inclusion_ok,
        order_reversing_retraction: retraction_ok,
        composite_identity: composite_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDeterminationReport {
    pub chains: usize,
    pub passed: bool,
    pub witness: Option<Vec<SalvettiCell>>,
}

/// Every chain is `[X_i, X_i ∘ T_1]` for its covector chain and the tope
/// `T_1` of its largest cell, and distinct chains have distinct data.
pub fn chain_determination_check(sal: &SalvettiComplex) -> ChainDeterminationReport {
    let cells = sal.cells();
    let mut seen: HashSet<(Vec<SignVector>, SignVector)> = HashSet::new();
    let mut chains = 0;
    let mut witness = None;
    sal.poset().for_each_chain(|chain| {
        chains += 1;
        let top = cells[*chain.last().unwrap()];
        let determined = chain
            .iter()
            .all(|&i| cells[i].tope == cells[i].covector.compose_unchecked(&top.tope));
        let key = (chain.iter().map(|&i| cells[i].covector).collect(), top.tope);
        if (!determined || !seen.insert(key)) && witness.is_none() {
            witness = Some(chain.iter().map(|&i| cells[i]).collect());
        }
    });
    ChainDeterminationReport {
        chains,
        passed: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::FixtureSpec;
    use crate::sign::sv;

    fn fixture(s: &str) -> OrientedMatroid {
        s.parse::<FixtureSpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn rank_one_complex() {
        let om = fixture("boolean:1");
        let sal = build_salvetti_poset(&om).unwrap();
        let names: Vec<String> = sal.cells().iter().map(|c| c.to_string()).collect();
        assert_eq!(names, ["[+,+]", "[-,-]", "[0,+]", "[0,-]"]);
        // Both vertices lie below both edges.
        assert_eq!(sal.poset().covers(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let f = f_vector_and_euler(&sal).unwrap();
        assert_eq!((f.f_vector, f.euler), (vec![2, 2], 0));
    }

    #[test]
    fn cell_counts() {
        let sal = build_salvetti_poset(&fixture("boolean:2")).unwrap();
        assert_eq!(f_vector_and_euler(&sal).unwrap().f_vector, vec![4, 8, 4]);
        let sal = build_salvetti_poset(&fixture("generic:3:2")).unwrap();
        assert_eq!(f_vector_and_euler(&sal).unwrap().f_vector, vec![6, 12, 6]);
    }

    #[test]
    fn boundary_examples() {
        let om = fixture("boolean:1");
        let top = cell(&om, sv("0"), sv("+")).unwrap();
        let b: Vec<String> = boundary_cells(&top, &om)
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(b, ["[+,+]", "[-,-]"]);
        let vertex = cell(&om, sv("+"), sv("+")).unwrap();
        assert!(boundary_cells(&vertex, &om).unwrap().is_empty());

        let om = fixture("boolean:2");
        let top = cell(&om, sv("00"), sv("++")).unwrap();
        let b = boundary_cells(&top, &om).unwrap();
        assert_eq!(b.len(), 8);
        for c in &b {
            assert_eq!(c.tope, c.covector.compose(&sv("++")).unwrap());
        }
    }

    #[test]
    fn invalid_cells() {
        let om = fixture("boolean:2");
        assert!(matches!(cell(&om, sv("+0"), sv("-+")), Err(Error::InvalidCell(_))));
        assert!(matches!(cell(&om, sv("+0"), sv("+0")), Err(Error::InvalidCell(_))));
        let bogus = SalvettiCell {
            dim: 1,
            covector: sv("00"),
            tope: sv("++"),
        };
        assert!(boundary_cells(&bogus, &om).is_err());
    }

    #[test]
    fn skeleton_examples() {
        let sk = oriented_one_skeleton(&fixture("boolean:1")).unwrap();
        let edges: Vec<(String, String, String)> = sk
            .edges
            .iter()
            .map(|e| (e.cell.to_string(), e.source.to_string(), e.target.to_string()))
            .collect();
        assert_eq!(
            edges,
            [
                ("[0,+]".into(), "+".into(), "-".into()),
                ("[0,-]".into(), "-".into(), "+".into())
            ]
        );
        let sk = oriented_one_skeleton(&fixture("boolean:2")).unwrap();
        assert_eq!((sk.vertices.len(), sk.edges.len()), (4, 8));
        for v in &sk.vertices {
            assert_eq!(sk.in_degree(v), 2);
            assert_eq!(sk.out_degree(v), 2);
        }
    }

    #[test]
    fn nerve_small() {
        let r = nerve_check(&fixture("boolean:1")).unwrap();
        assert!(r.agrees);
        assert_eq!(r.faces, vec![4, 4]);
        let r = nerve_check(&fixture("boolean:2")).unwrap();
        assert!(r.agrees);
        assert_eq!(r.vertices, 16);
    }

    #[test]
    fn retraction_and_chains() {
        let om = fixture("boolean:2");
        let sal = build_salvetti_poset(&om).unwrap();
        for t in om.topes() {
            assert!(retraction_check(&om, &sal, &t).unwrap().passed());
        }
        assert!(retraction_check(&om, &sal, &sv("+0")).is_err());
        assert!(chain_determination_check(&sal).passed);
    }

    #[test]
    fn requires_simple() {
        let om = OrientedMatroid::new(&[sv("00"), sv("++"), sv("--")]).unwrap();
        assert!(matches!(build_salvetti_poset(&om), Err(Error::NotSimple(_))));
    }
}

//! Simplicial complexes, order complexes, chain complexes and integral homology.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::snf::SparseMatrix;

/// A simplicial complex on vertices `0..vertex_count`, stored with every face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `faces[k]` = sorted list of `k`-simplices, each a sorted vertex list.
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&v| v >= vertex_count) {
                return Err(Error::InvalidComplex(format!("facet {facet:?} has unknown vertex")));
            }
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        // Isolated vertices.
        if by_dim.is_empty() && vertex_count > 0 {
            by_dim.push(BTreeSet::new());
        }
        for v in 0..vertex_count {
            by_dim[0].insert(vec![v]);
        }
        Ok(SimplicialComplex {
            vertex_count,
            faces: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// From a complete, downward-closed face list.
    fn from_all_faces(vertex_count: usize, mut faces: Vec<Vec<Vec<usize>>>) -> SimplicialComplex {
        for level in &mut faces {
            level.sort();
        }
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        SimplicialComplex { vertex_count, faces }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Inclusion-maximal faces, sorted.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut covered: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for k in (0..self.faces.len()).rev() {
            for face in &self.faces[k] {
                if !covered.contains(face) {
                    out.push(face.clone());
                }
                for skip in 0..face.len() {
                    if face.len() > 1 {
                        let mut sub = face.clone();
                        sub.remove(skip);
                        covered.insert(sub);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Simplicial chain complex with the standard alternating boundary.
    pub fn chain_complex(&self) -> IntegerChainComplex {
        let dims = self.f_vector();
        let mut boundaries = Vec::new();
        for k in 1..self.faces.len() {
            let index: HashMap<&[usize], usize> = self.faces[k - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            let mut m = SparseMatrix::new(dims[k - 1], dims[k]);
            for (j, face) in self.faces[k].iter().enumerate() {
                let mut sub = Vec::with_capacity(face.len() - 1);
                for skip in 0..face.len() {
                    sub.clear();
                    sub.extend(face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let row = index[sub.as_slice()];
                    m.push(row, j, if skip % 2 == 0 { 1 } else { -1 });
                }
            }
            m.normalize();
            boundaries.push(m);
        }
        IntegerChainComplex { dims, boundaries }
    }
}

/// Faces are the chains of the poset; vertices are its elements.
pub fn order_complex<L>(poset: &FinitePoset<L>) -> SimplicialComplex {
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
    poset.for_each_chain(|chain| {
        let d = chain.len() - 1;
        if faces.len() <= d {
            faces.resize(d + 1, Vec::new());
        }
        // Chains are increasing in the order, not in index; store sorted.
        let mut face = chain.to_vec();
        face.sort_unstable();
        faces[d].push(face);
    });
    SimplicialComplex::from_all_faces(poset.len(), faces)
}

/// Free chain groups `Z^{dims[k]}` with boundaries `boundaries[k-1]: C_k → C_{k-1}`.
#[derive(Debug, Clone)]
pub struct IntegerChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<String>,
}

impl IntegerChainComplex {
    /// `∂_k ∘ ∂_{k+1} = 0` for every `k`; returns the first failing degree.
    pub fn check_boundary_squared(&self) -> std::result::Result<(), usize> {
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].is_zero_product(&self.boundaries[k]) {
                return Err(k);
            }
        }
        Ok(())
    }

    /// Unreduced homology in each degree `0..dims.len()`.
    pub fn homology(&self) -> Vec<HomologyGroup> {
        let forms: Vec<_> = self.boundaries.iter().map(|b| b.invariant_factors()).collect();
        let rank = |k: usize| -> usize {
            if k == 0 || k > forms.len() {
                0
            } else {
                forms[k - 1].rank
            }
        };
        (0..self.dims.len())
            .map(|k| {
                let betti = self.dims[k] - rank(k) - rank(k + 1);
                let torsion: Vec<BigInt> = if k < forms.len() {
                    forms[k].torsion()
                } else {
                    Vec::new()
                };
                HomologyGroup {
                    betti,
                    torsion: torsion.iter().map(|d| d.to_string()).collect(),
                }
            })
            .collect()
    }
}

/// Unreduced integral homology; the empty complex has none.
pub fn homology(complex: &SimplicialComplex) -> Vec<HomologyGroup> {
    complex.chain_complex().homology()
}

pub fn betti_numbers(groups: &[HomologyGroup]) -> Vec<usize> {
    groups.iter().map(|g| g.betti).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    #[test]
    fn two_simplex_is_contractible() {
        let k = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(betti_numbers(&homology(&k)), vec![1, 0, 0]);
    }

    #[test]
    fn four_cycle_is_a_circle() {
        let k = SimplicialComplex::from_facets(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let h = homology(&k);
        assert_eq!(betti_numbers(&h), vec![1, 1]);
        assert!(h.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn degenerate_complexes() {
        let empty = SimplicialComplex::from_facets(0, &[]).unwrap();
        assert!(homology(&empty).is_empty());
        let point = SimplicialComplex::from_facets(1, &[]).unwrap();
        assert_eq!(betti_numbers(&homology(&point)), vec![1]);
        assert!(SimplicialComplex::from_facets(2, &[vec![]]).is_err());
    }

    #[test]
    fn real_projective_plane_has_torsion() {
        // Minimal 6-vertex triangulation of RP^2.
        let facets: Vec<Vec<usize>> = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [1, 3, 5],
            [2, 4, 5],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect();
        let k = SimplicialComplex::from_facets(6, &facets).unwrap();
        let h = homology(&k);
        assert_eq!(betti_numbers(&h), vec![1, 0, 0]);
        assert_eq!(h[1].torsion, vec!["2".to_string()]);
        assert_eq!(k.chain_complex().check_boundary_squared(), Ok(()));
    }

    #[test]
    fn order_complex_examples() {
        let chain = build_poset(vec![0, 1, 2], |a, b| a <= b).unwrap();
        let k = order_complex(&chain);
        assert_eq!(k.facets(), vec![vec![0, 1, 2]]);
        let antichain = build_poset(vec![0, 1, 2], |a, b| a == b).unwrap();
        let k = order_complex(&antichain);
        assert_eq!(k.f_vector(), vec![3]);
        assert_eq!(betti_numbers(&homology(&k)), vec![3]);
    }

    #[test]
    fn cone_is_acyclic() {
        // Boolean lattice has a bottom: its order complex is a cone.
        let b = build_poset((0u8..8).collect(), |a, b| a & !b == 0).unwrap();
        let k = order_complex(&b);
        assert_eq!(betti_numbers(&homology(&k)), vec![1, 0, 0, 0]);
        assert_eq!(k.euler_characteristic(), 1);
    }
}

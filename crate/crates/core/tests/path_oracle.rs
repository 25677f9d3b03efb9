//! Minimal positive path counts against walk counting in the tope graph.
//!
//! The oracle builds the tope graph straight from the covector set (two
//! topes are adjacent when they differ in one element and the vector with
//! that element zeroed is a covector) and counts walks of length
//! `|S(T, S)|` by repeated adjacency-matrix multiplication. Walks of that
//! length between topes at that graph distance are exactly the shortest paths.

use std::collections::HashSet;

use salvetti_core::fixtures::FixtureSpec;
use salvetti_core::sign::{Sign, SignVector};
use salvetti_core::topes::{distance_agreement, minimal_positive_paths, survey_paths};
use salvetti_core::OrientedMatroid;

fn fixture(s: &str) -> OrientedMatroid {
    s.parse::<FixtureSpec>().unwrap().generate().unwrap()
}

fn adjacency(om: &OrientedMatroid, topes: &[SignVector]) -> Vec<Vec<u64>> {
    let covectors: HashSet<SignVector> = om.covectors().iter().copied().collect();
    let mut m = vec![vec![0u64; topes.len()]; topes.len()];
    for (i, t) in topes.iter().enumerate() {
        for (j, s) in topes.iter().enumerate() {
            let differing: Vec<usize> = (0..om.n()).filter(|&e| t.get(e) != s.get(e)).collect();
            if differing.len() == 1 {
                let mut x = *t;
                x.set(differing[0], Sign::Zero);
                if covectors.contains(&x) {
                    m[i][j] = 1;
                }
            }
        }
    }
    m
}

fn multiply(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

/// `walks[d][i][j]` = number of walks of length `d` from `i` to `j`.
fn walk_counts(adj: &[Vec<u64>], max_len: usize) -> Vec<Vec<Vec<u64>>> {
    let n = adj.len();
    let identity: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
    let mut out = vec![identity];
    for d in 1..=max_len {
        let next = multiply(&out[d - 1], adj);
        out.push(next);
    }
    out
}

fn distance(t: &SignVector, s: &SignVector) -> usize {
    (0..t.len())
        .filter(|&e| t.get(e) == -s.get(e) && !t.get(e).is_zero())
        .count()
}

fn compare(spec: &str) -> usize {
    let om = fixture(spec);
    let mut topes = om.topes();
    topes.sort();
    let walks = walk_counts(&adjacency(&om, &topes), om.n());
    let survey = survey_paths(&om).unwrap();
    assert!(survey.crossings_ok, "{spec}");
    assert!(survey.extensions_ok, "{spec}");
    for (i, t) in topes.iter().enumerate() {
        for (j, s) in topes.iter().enumerate() {
            let expected = walks[distance(t, s)][i][j];
            assert_eq!(survey.counts[&(*t, *s)] as u64, expected, "{spec}: {t} -> {s}");
        }
    }
    survey.paths
}

#[test]
fn rank_one_and_two() {
    compare("boolean:1");
    compare("boolean:2");
    compare("generic:3:2");
    compare("braid:3");
}

#[test]
fn rank_three() {
    compare("boolean:3");
    compare("generic:4:3");
    compare("generic:5:3");
}

#[test]
fn non_pappus() {
    assert!(compare("nonpappus") > 0);
}

#[test]
fn antipodal_counts_in_the_hexagon() {
    // Between antipodal topes of three lines there are two geodesics,
    // one around each side of the hexagon.
    let om = fixture("generic:3:2");
    for t in om.topes() {
        let paths = minimal_positive_paths(&om, &t, &-t).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.len() == 3));
        let mut crossed: Vec<Vec<usize>> = paths.iter().map(|p| p.crossed.clone()).collect();
        let sorted = crossed.clone();
        crossed.sort();
        assert_eq!(crossed, sorted, "paths are listed lexicographically");
    }
}

#[test]
fn skeleton_distances_match_separation() {
    for spec in ["boolean:3", "braid:3", "generic:5:3", "nonpappus"] {
        let r = distance_agreement(&fixture(spec)).unwrap();
        assert!(r.agrees, "{spec}: {:?}", r.witness);
    }
}

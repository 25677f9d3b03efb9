use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{span_from_cocircuits, OrientedMatroid};
use crate::error::{Error, Result};
use crate::sign::{Sign, SignVector, MAX_LEN};

pub type Rational = BigRational;

/// A central arrangement in `Q^dim`, one row per hyperplane normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalArrangement {
    pub dim: usize,
    pub normals: Vec<Vec<Rational>>,
}

impl RationalArrangement {
    pub fn new(dim: usize, normals: Vec<Vec<Rational>>) -> Result<RationalArrangement> {
        for (i, row) in normals.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::LengthMismatch(dim, row.len()));
            }
            if row.iter().all(Zero::is_zero) {
                return Err(Error::ZeroNormal(i + 1));
            }
        }
        Ok(RationalArrangement { dim, normals })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<RationalArrangement> {
        let dim = rows.first().map_or(0, |r| r.len());
        let normals = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
            .collect();
        RationalArrangement::new(dim, normals)
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.normals)
    }

    /// Sign vector of a point: sign of `<normal_i, x>` for every `i`.
    pub fn sign_of(&self, point: &[Rational]) -> SignVector {
        let signs: Vec<Sign> = self.normals.iter().map(|row| Sign::of(&dot(row, point))).collect();
        SignVector::from_signs(&signs).expect("arrangement size checked")
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Row echelon form; returns the reduced rows and pivot columns.
fn echelon(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub(crate) fn matrix_rank(rows: &[Vec<Rational>]) -> usize {
    echelon(rows).1.len()
}

/// A nonzero vector orthogonal to every row, assuming the rows have corank one.
fn kernel_vector(rows: &[Vec<Rational>], dim: usize) -> Vec<Rational> {
    let (reduced, pivots) = echelon(rows);
    let free = (0..dim)
        .find(|c| !pivots.contains(c))
        .expect("corank-one system has a free column");
    let mut x = vec![Rational::zero(); dim];
    x[free] = Rational::one();
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = -row[free].clone();
    }
    x
}

/// Covectors of a realizable arrangement.
///
/// Cocircuits come from the kernel line of each corank-one subset of
/// normals; all covectors are their composition closure.
pub fn from_arrangement(arrangement: &RationalArrangement) -> Result<OrientedMatroid> {
    let n = arrangement.len();
    let dim = arrangement.dim;
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > MAX_LEN {
        return Err(Error::GroundSetTooLarge(n, MAX_LEN));
    }
    let rank = arrangement.rank();
    if rank < dim {
        return Err(Error::NotEssential { rank, dim });
    }
    let mut cocircuits = BTreeSet::new();
    for subset in (0..n).combinations(dim - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| arrangement.normals[i].clone()).collect();
        if matrix_rank(&rows) != dim - 1 {
            continue;
        }
        let x = kernel_vector(&rows, dim);
        let c = arrangement.sign_of(&x);
        cocircuits.insert(c);
        cocircuits.insert(-c);
    }
    let cocircuits: Vec<SignVector> = cocircuits.into_iter().collect();
    span_from_cocircuits(&cocircuits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::sv;

    #[test]
    fn single_normal() {
        let om = from_arrangement(&RationalArrangement::from_integers(&[&[1]]).unwrap()).unwrap();
        assert_eq!(om.covectors(), &[sv("0"), sv("+"), sv("-")]);
    }

    #[test]
    fn coordinate_arrangement_is_full_cube() {
        let a = RationalArrangement::from_integers(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(from_arrangement(&a).unwrap().len(), 9);
    }

    #[test]
    fn three_lines() {
        let a = RationalArrangement::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let om = from_arrangement(&a).unwrap();
        assert_eq!(om.len(), 13);
        let mut cc = om.cocircuits();
        cc.sort();
        let mut expected: Vec<SignVector> = ["0++", "0--", "+0+", "-0-", "+-0", "-+0"]
            .iter()
            .map(|s| sv(s))
            .collect();
        expected.sort();
        assert_eq!(cc, expected);
        assert_eq!(om.topes().len(), 6);
        assert_eq!(om.rank(), 2);
    }

    #[test]
    fn rejects_zero_and_non_essential() {
        assert_eq!(
            RationalArrangement::from_integers(&[&[0, 0]]).unwrap_err(),
            Error::ZeroNormal(1)
        );
        let a = RationalArrangement::from_integers(&[&[1, 0], &[2, 0]]).unwrap();
        assert_eq!(
            from_arrangement(&a).unwrap_err(),
            Error::NotEssential { rank: 1, dim: 2 }
        );
    }

    #[test]
    fn parallel_normals_are_not_simple() {
        let a = RationalArrangement::from_integers(&[&[1, 0], &[2, 0], &[0, 1]]).unwrap();
        let om = from_arrangement(&a).unwrap();
        assert_eq!(om.simplicity().parallel, vec![(0, 1, false)]);
        let a = RationalArrangement::from_integers(&[&[1, 0], &[-3, 0], &[0, 1]]).unwrap();
        let om = from_arrangement(&a).unwrap();
        assert_eq!(om.simplicity().parallel, vec![(0, 1, true)]);
    }
}

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};

use super::arrangement::{Rational, RationalArrangement};
use crate::error::{Error, Result};
use crate::sign::{Sign, SignVector, MAX_LEN};

/// Basis orientations of a rank-`r` oriented matroid on `n` elements.
///
/// Values are stored per sorted `r`-subset in colexicographic order; the
/// value of an ordered tuple is the sorted value times the permutation sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chirotope {
    r: usize,
    n: usize,
    subsets: Vec<Vec<usize>>,
    position: HashMap<u64, usize>,
    values: Vec<Sign>,
}

/// All `r`-subsets of `0..n` in colex order.
pub fn colex_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0..n).combinations(r).collect();
    subsets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    subsets
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &e| acc | 1 << e)
}

/// Sign of the permutation sorting `tuple`, or `None` if it has repeats.
fn sort_sign(tuple: &[usize]) -> Option<Sign> {
    let mut inversions = 0;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            match tuple[i].cmp(&tuple[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(if inversions % 2 == 0 { Sign::Pos } else { Sign::Neg })
}

impl Chirotope {
    /// `values[k]` is the sign of the `k`-th subset in colex order.
    pub fn new(r: usize, n: usize, values: Vec<Sign>) -> Result<Chirotope> {
        if n > MAX_LEN {
            return Err(Error::GroundSetTooLarge(n, MAX_LEN));
        }
        if r > n {
            return Err(Error::NotAlternating(format!("rank {r} exceeds n = {n}")));
        }
        let subsets = colex_subsets(n, r);
        if values.len() != subsets.len() {
            return Err(Error::LengthMismatch(subsets.len(), values.len()));
        }
        if values.iter().all(|s| s.is_zero()) {
            return Err(Error::DegenerateChirotope);
        }
        let position = subsets.iter().enumerate().map(|(i, s)| (mask_of(s), i)).collect();
        Ok(Chirotope {
            r,
            n,
            subsets,
            position,
            values,
        })
    }

    /// Builds a chirotope from values on ordered tuples (zero-based elements),
    /// rejecting assignments that are not alternating.
    pub fn from_tuples(r: usize, n: usize, tuples: &[(Vec<usize>, Sign)]) -> Result<Chirotope> {
        let subsets = colex_subsets(n, r);
        let mut assigned: HashMap<Vec<usize>, Sign> = HashMap::new();
        for (tuple, value) in tuples {
            if tuple.len() != r || tuple.iter().any(|&e| e >= n) {
                return Err(Error::NotAlternating(format!("bad tuple {tuple:?}")));
            }
            let Some(parity) = sort_sign(tuple) else {
                if !value.is_zero() {
                    return Err(Error::NotAlternating(format!(
                        "tuple {tuple:?} has a repeated element but nonzero value"
                    )));
                }
                continue;
            };
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            let normalized = *value * parity;
            if let Some(prev) = assigned.insert(sorted.clone(), normalized) {
                if prev != normalized {
                    return Err(Error::NotAlternating(format!(
                        "inconsistent values on permutations of {sorted:?}"
                    )));
                }
            }
        }
        let values = subsets
            .iter()
            .map(|s| assigned.get(s).copied().unwrap_or(Sign::Zero))
            .collect();
        Chirotope::new(r, n, values)
    }

    /// Signs of maximal minors of the normal vectors.
    pub fn from_arrangement(arrangement: &RationalArrangement) -> Result<Chirotope> {
        let r = arrangement.dim;
        let n = arrangement.len();
        let values = colex_subsets(n, r)
            .iter()
            .map(|s| {
                let rows: Vec<Vec<Rational>> = s.iter().map(|&i| arrangement.normals[i].clone()).collect();
                Sign::of(&determinant(rows))
            })
            .collect();
        Chirotope::new(r, n, values)
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Value on a sorted subset.
    pub fn get_sorted(&self, subset: &[usize]) -> Sign {
        self.values[self.position[&mask_of(subset)]]
    }

    pub fn set_sorted(&mut self, subset: &[usize], value: Sign) {
        let i = self.position[&mask_of(subset)];
        self.values[i] = value;
    }

    /// Value on an ordered tuple, extended alternatingly.
    pub fn eval(&self, tuple: &[usize]) -> Sign {
        match sort_sign(tuple) {
            None => Sign::Zero,
            Some(parity) => {
                let mut sorted = tuple.to_vec();
                sorted.sort_unstable();
                parity * self.get_sorted(&sorted)
            }
        }
    }
}

pub(crate) fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let size = m.len();
    let mut det = Rational::one();
    for c in 0..size {
        let Some(p) = (c..size).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot[c];
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// Cocircuits of the oriented matroid of a chirotope.
///
/// Every `(r-1)`-subset `A` spanning a hyperplane contributes the pair
/// `±C` with `C_f = χ(a_1, …, a_{r-1}, f)`.
pub fn cocircuits_from_chirotope(chi: &Chirotope) -> Result<Vec<SignVector>> {
    if chi.values.iter().all(|s| s.is_zero()) {
        return Err(Error::DegenerateChirotope);
    }
    let n = chi.n;
    let mut out = BTreeSet::new();
    for a in (0..n).combinations(chi.r.saturating_sub(1)) {
        let mut tuple = a.clone();
        tuple.push(0);
        let mut c = SignVector::zero(n);
        for f in 0..n {
            *tuple.last_mut().unwrap() = f;
            c.set(f, chi.eval(&tuple));
        }
        if c.is_zero() {
            continue;
        }
        out.insert(c);
        out.insert(-c);
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::om::{from_arrangement, span_from_cocircuits};
    use crate::sign::sv;

    #[test]
    fn colex_order() {
        assert_eq!(colex_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(colex_subsets(4, 3)[3], vec![1, 2, 3]);
    }

    #[test]
    fn three_lines_chirotope_matches_determinants() {
        let a = RationalArrangement::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let chi = Chirotope::from_arrangement(&a).unwrap();
        assert_eq!(chi.values(), &[Sign::Pos, Sign::Pos, Sign::Neg]);
        let mut cc = cocircuits_from_chirotope(&chi).unwrap();
        let mut expected = from_arrangement(&a).unwrap().cocircuits();
        cc.sort();
        expected.sort();
        assert_eq!(cc, expected);
    }

    #[test]
    fn uniform_rank_two_on_two() {
        let chi = Chirotope::new(2, 2, vec![Sign::Pos]).unwrap();
        let cc = cocircuits_from_chirotope(&chi).unwrap();
        assert_eq!(cc, vec![sv("+0"), sv("-0"), sv("0+"), sv("0-")]);
        assert_eq!(span_from_cocircuits(&cc).unwrap().len(), 9);
    }

    #[test]
    fn degenerate_and_non_alternating() {
        assert_eq!(
            Chirotope::new(2, 3, vec![Sign::Zero; 3]).unwrap_err(),
            Error::DegenerateChirotope
        );
        let err = Chirotope::from_tuples(2, 2, &[(vec![0, 1], Sign::Pos), (vec![1, 0], Sign::Pos)]).unwrap_err();
        assert!(matches!(err, Error::NotAlternating(_)));
        let ok = Chirotope::from_tuples(2, 2, &[(vec![0, 1], Sign::Pos), (vec![1, 0], Sign::Neg)]).unwrap();
        assert_eq!(ok.eval(&[1, 0]), Sign::Neg);
        assert_eq!(ok.eval(&[1, 1]), Sign::Zero);
    }
}

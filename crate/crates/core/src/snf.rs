//! Smith normal form over the integers.
//!
//! [`smith_normal_form`] works on dense arbitrary-precision matrices and
//! picks the pivot of minimal absolute value at every step.
//! [`SparseMatrix::invariant_factors`] first eliminates unit pivots on a
//! sparse `i64` representation and hands whatever is left to the dense
//! routine, which is what makes order complexes with tens of thousands of
//! simplices tractable.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | …`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors greater than one (the torsion they produce).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(size: usize) -> IntMatrix {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Unimodular `left`, `right` with `left · m · right = diagonal`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    pub form: SmithForm,
}

struct Reducer {
    m: IntMatrix,
    rows: usize,
    cols: usize,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        if let Some(l) = &mut self.left {
            l.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.m {
            row.swap(a, b);
        }
        if let Some(r) = &mut self.right {
            for row in r.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn add_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * &self.m[source][j];
            self.m[target][j] -= delta;
        }
        if let Some(l) = &mut self.left {
            for j in 0..l[0].len() {
                let delta = q * &l[source][j];
                l[target][j] -= delta;
            }
        }
    }

    /// col[target] -= q * col[source]
    fn add_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * &self.m[i][source];
            self.m[i][target] -= delta;
        }
        if let Some(r) = &mut self.right {
            for row in r.iter_mut() {
                let delta = q * &row[source];
                row[target] -= delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.m[i] {
            *x = -&*x;
        }
        if let Some(l) = &mut self.left {
            for x in &mut l[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.m[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.m[bi][bj].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Vec<BigInt> {
        let mut factors = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.m[i][t].is_zero() {
                        continue;
                    }
                    let q = self.m[i][t].div_floor(&self.m[t][t]);
                    self.add_row(i, t, &q);
                    if !self.m[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.m[t][j].is_zero() {
                        continue;
                    }
                    let q = self.m[t][j].div_floor(&self.m[t][t]);
                    self.add_col(j, t, &q);
                    if !self.m[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // A smaller remainder appeared in row or column t.
                    let (pi, pj) = self.min_in_cross(t);
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // Divisibility: fold a non-divisible row into row t and retry.
                let pivot = self.m[t][t].clone();
                let bad =
                    (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.m[i][j].is_multiple_of(&pivot)));
                match bad {
                    Some(i) => {
                        self.add_row(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.m[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.m[t][t].clone());
            t += 1;
        }
        factors
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        for i in t..self.rows {
            let v = &self.m[i][t];
            if !v.is_zero() && (self.m[best.0][best.1].is_zero() || v.abs() < self.m[best.0][best.1].abs()) {
                best = (i, t);
            }
        }
        for j in t..self.cols {
            let v = &self.m[t][j];
            if !v.is_zero() && (self.m[best.0][best.1].is_zero() || v.abs() < self.m[best.0][best.1].abs()) {
                best = (t, j);
            }
        }
        best
    }
}

fn shape(m: &IntMatrix) -> (usize, usize) {
    (m.len(), m.first().map_or(0, |r| r.len()))
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = shape(m);
    let mut r = Reducer {
        m: m.clone(),
        rows,
        cols,
        left: None,
        right: None,
    };
    let factors = r.reduce();
    SmithForm {
        rank: factors.len(),
        factors,
    }
}

/// Smith form together with the unimodular transforms.
pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = shape(m);
    let mut r = Reducer {
        m: m.clone(),
        rows,
        cols,
        left: Some(identity(rows)),
        right: Some(identity(cols)),
    };
    let factors = r.reduce();
    SmithDecomposition {
        left: r.left.unwrap(),
        diagonal: r.m,
        right: r.right.unwrap(),
        form: SmithForm {
            rank: factors.len(),
            factors,
        },
    }
}

/// Sparse integer matrix, stored by rows with sorted column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    /// Adds `value` at `(row, col)`; rows must be finalized with [`Self::normalize`].
    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        self.entries[row].push((col, value));
    }

    pub fn normalize(&mut self) {
        for row in &mut self.entries {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *row = merged;
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, v) in row {
                m[i][j] = BigInt::from(v);
            }
        }
        m
    }

    /// `self · other`, exact.
    pub fn mul(&self, other: &SparseMatrix) -> Vec<Vec<(usize, BigInt)>> {
        assert_eq!(self.cols, other.rows);
        self.entries
            .iter()
            .map(|row| {
                let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
                for &(k, a) in row {
                    for &(j, b) in &other.entries[k] {
                        *acc.entry(j).or_insert_with(BigInt::zero) += BigInt::from(a) * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect()
    }

    pub fn is_zero_product(&self, other: &SparseMatrix) -> bool {
        self.mul(other).iter().all(Vec::is_empty)
    }

    /// Row-major text dump: header `rows cols` then one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for row in self.entries.iter() {
            let mut dense = vec![0i64; self.cols];
            for &(j, v) in row {
                dense[j] = v;
            }
            let line: Vec<String> = dense.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Invariant factors via unit-pivot elimination followed by a dense
    /// Smith form of the residual block.
    pub fn invariant_factors(&self) -> SmithForm {
        if let Some(rank) = self.unit_column_reduction() {
            return SmithForm {
                factors: vec![BigInt::one(); rank],
                rank,
            };
        }
        self.eliminate()
    }

    /// Left-to-right column reduction on lowest entries. When every lowest
    /// entry met is a unit, the reduced matrix is column-echelon with unit
    /// pivots, so all invariant factors are 1 and the rank is the number of
    /// surviving columns. `None` on a non-unit pivot or `i64` overflow.
    fn unit_column_reduction(&self) -> Option<usize> {
        let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, v) in row {
                columns[j].push((i, v));
            }
        }
        let mut owner: Vec<Option<usize>> = vec![None; self.rows];
        let mut rank = 0;
        for j in 0..self.cols {
            while let Some(&(low, v)) = columns[j].last() {
                if v.abs() != 1 {
                    return None;
                }
                match owner[low] {
                    None => {
                        owner[low] = Some(j);
                        rank += 1;
                        break;
                    }
                    Some(k) => {
                        let w = columns[k].last().unwrap().1;
                        // col_j -= (v / w) col_k, with 1/w = w for units.
                        let reduced = axpy(&columns[j], &columns[k], v * w)?;
                        columns[j] = reduced;
                    }
                }
            }
        }
        Some(rank)
    }

    /// Unit-pivot elimination followed by dense Smith form of the residual.
    /// Each pivot is the better (by Markowitz cost `(row − 1)(column − 1)`)
    /// of the best unit in the shortest row and in the lowest-degree column.
    fn eliminate(&self) -> SmithForm {
        let mut rows: Vec<Vec<(usize, i64)>> = self.entries.clone();
        // Unordered row lists per column.
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); self.cols];
        for (i, row) in rows.iter().enumerate() {
            for &(j, _) in row {
                col_rows[j].push(i);
            }
        }
        let mut row_heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.rows)
            .filter(|&i| !rows[i].is_empty())
            .map(|i| Reverse((rows[i].len(), i)))
            .collect();
        let mut col_heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.cols)
            .filter(|&j| !col_rows[j].is_empty())
            .map(|j| Reverse((col_rows[j].len(), j)))
            .collect();
        let mut unit_pivots = 0usize;
        let cost = |row_len: usize, col_len: usize| (row_len - 1) * (col_len - 1);
        let remove = |list: &mut Vec<usize>, x: usize| {
            let k = list.iter().position(|&y| y == x).expect("row listed in column");
            list.swap_remove(k);
        };

        'outer: loop {
            // Best unit of the shortest usable row; rows without units wait
            // in the heap until they change.
            let mut from_row = None;
            while let Some(&Reverse((len, r))) = row_heap.peek() {
                if rows[r].len() != len || len == 0 {
                    row_heap.pop();
                    continue;
                }
                let best = rows[r]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .map(|&(j, _)| (col_rows[j].len(), j))
                    .min();
                match best {
                    Some((deg, c)) => {
                        from_row = Some((cost(len, deg), r, c));
                        break;
                    }
                    None => {
                        row_heap.pop();
                    }
                }
            }
            let mut from_col = None;
            while let Some(&Reverse((deg, c))) = col_heap.peek() {
                if col_rows[c].len() != deg || deg == 0 {
                    col_heap.pop();
                    continue;
                }
                let best = col_rows[c]
                    .iter()
                    .copied()
                    .filter(|&r| entry(&rows[r], c).map(i64::abs) == Some(1))
                    .map(|r| (rows[r].len(), r))
                    .min();
                match best {
                    Some((len, r)) => {
                        from_col = Some((cost(len, deg), r, c));
                        break;
                    }
                    None => {
                        col_heap.pop();
                    }
                }
            }
            let (_, r, c) = match (from_row, from_col) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => break,
            };

            let a = entry(&rows[r], c).unwrap();
            let mut others: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
            others.sort_unstable();
            let pivot_row = std::mem::take(&mut rows[r]);
            for &i in &others {
                let b = entry(&rows[i], c).unwrap();
                // row_i -= (b / a) * row_r, and 1/a = a for units.
                let Some(new_row) = axpy(&rows[i], &pivot_row, b * a) else {
                    // Overflow: hand the current (equivalent) matrix to the dense routine.
                    rows[r] = pivot_row;
                    break 'outer;
                };
                // Only columns of the pivot row can gain or lose row i.
                for &(j, _) in &pivot_row {
                    let before = entry(&rows[i], j).is_some();
                    let after = entry(&new_row, j).is_some();
                    if before && !after {
                        remove(&mut col_rows[j], i);
                    } else if after && !before {
                        col_rows[j].push(i);
                    }
                }
                rows[i] = new_row;
                if !rows[i].is_empty() {
                    row_heap.push(Reverse((rows[i].len(), i)));
                }
            }
            // Column c now only meets row r; column operations clear row r.
            for &(j, _) in &pivot_row {
                remove(&mut col_rows[j], r);
                if !col_rows[j].is_empty() {
                    col_heap.push(Reverse((col_rows[j].len(), j)));
                }
            }
            unit_pivots += 1;
        }

        let live_rows: Vec<usize> = (0..self.rows).filter(|&i| !rows[i].is_empty()).collect();
        let live_cols: Vec<usize> = (0..self.cols).filter(|&j| !col_rows[j].is_empty()).collect();
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut residual = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (k, &i) in live_rows.iter().enumerate() {
            for &(j, v) in &rows[i] {
                residual[k][col_pos[&j]] = BigInt::from(v);
            }
        }
        let rest = smith_normal_form(&residual);
        let mut factors = vec![BigInt::one(); unit_pivots];
        factors.extend(rest.factors);
        factors.sort();
        SmithForm {
            rank: factors.len(),
            factors,
        }
    }
}

fn entry(row: &[(usize, i64)], c: usize) -> Option<i64> {
    row.binary_search_by_key(&c, |&(j, _)| j).ok().map(|k| row[k].1)
}

/// `x - q * y` on sorted sparse rows; `None` on `i64` overflow.
fn axpy(x: &[(usize, i64)], y: &[(usize, i64)], q: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let take_x = b >= y.len() || (a < x.len() && x[a].0 < y[b].0);
        let take_y = a >= x.len() || (b < y.len() && y[b].0 < x[a].0);
        if take_x {
            out.push(x[a]);
            a += 1;
        } else if take_y {
            out.push((y[b].0, q.checked_mul(y[b].1)?.checked_neg()?));
            b += 1;
        } else {
            let v = x[a].1.checked_sub(q.checked_mul(y[b].1)?)?;
            if v != 0 {
                out.push((x[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(m: &[&[i64]]) -> Vec<i64> {
        smith_normal_form(&int_matrix(m))
            .factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_two_three() {
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
    }

    #[test]
    fn zero_and_rank_one() {
        let z = smith_normal_form(&int_matrix(&[&[0, 0], &[0, 0]]));
        assert_eq!(z.rank, 0);
        assert!(z.factors.is_empty());
        assert_eq!(factors(&[&[1, 1], &[1, 1]]), vec![1]);
        assert_eq!(smith_normal_form(&Vec::new()).rank, 0);
    }

    #[test]
    fn classic_example() {
        assert_eq!(factors(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
    }

    fn sparse_of(m: &[Vec<i64>]) -> SparseMatrix {
        let cols = m.first().map_or(0, |r| r.len());
        let mut s = SparseMatrix::new(m.len(), cols);
        for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    s.push(i, j, v);
                }
            }
        }
        s.normalize();
        s
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decomposition_reconstructs(
            rows in 1usize..7,
            cols in 1usize..7,
            seed in proptest::collection::vec(-6i64..7, 49),
        ) {
            let m: IntMatrix = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from(seed[i * 7 + j])).collect())
                .collect();
            let d = smith_decomposition(&m);
            prop_assert_eq!(mat_mul(&mat_mul(&d.left, &m), &d.right), d.diagonal.clone());
            for i in 0..rows {
                for j in 0..cols {
                    if i != j {
                        prop_assert!(d.diagonal[i][j].is_zero());
                    }
                }
            }
            for w in d.form.factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for f in &d.form.factors {
                prop_assert!(f.is_positive());
            }
        }

        #[test]
        fn sparse_matches_dense(
            rows in 1usize..8,
            cols in 1usize..8,
            seed in proptest::collection::vec(-3i64..4, 64),
        ) {
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[i * 8 + j]).collect())
                .collect();
            let sparse = sparse_of(&m).invariant_factors();
            let dense = smith_normal_form(&sparse_of(&m).to_dense());
            prop_assert_eq!(sparse, dense);
        }
    }

    #[test]
    fn fifty_by_fifty_reconstruction() {
        let mut state = 7u64;
        let m: IntMatrix = (0..50)
            .map(|_| {
                (0..50)
                    .map(|_| {
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        let v = ((state >> 33) % 5) as i64 - 2;
                        BigInt::from(if (state >> 20).is_multiple_of(3) { v } else { 0 })
                    })
                    .collect()
            })
            .collect();
        let d = smith_decomposition(&m);
        assert_eq!(mat_mul(&mat_mul(&d.left, &m), &d.right), d.diagonal);
    }
}

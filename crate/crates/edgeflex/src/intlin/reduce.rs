//! Constructive reduction of {0,1,2} "type matrices" to `diag(1,..,1,2,..,2)`.
//!
//! A type matrix is a square integer matrix whose every row has last entry 1,
//! entries in {0,1,2}, and first-part sum at most 2. Each row is therefore one
//! of four shapes:
//!
//! * two 1s in the first part        (a "pair" row),
//! * a single 1 in the first part    (a "unit" row),
//! * a single 2 in the first part    (a "double" row),
//! * all zeros in the first part.
//!
//! When such a matrix is nonsingular it reduces, by unimodular elementary row
//! and column operations, to a diagonal of `s` ones followed by `d - s` twos;
//! consequently `|det| = 2^(d-s)` and twice the inverse is integral. The
//! reduction below peels one unit pivot per step, dispatching on which row
//! shapes are present, and records every operation so the caller can replay
//! the trace.

use super::IntegerMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("row {row} violates the type-matrix shape")]
    RowShape { row: usize },
    #[error("matrix is singular")]
    Singular,
}

/// An elementary integer row/column operation. Every variant preserves the
/// determinant up to sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// `row[dst] += factor * row[src]`
    AddRowMultiple {
        src: usize,
        dst: usize,
        factor: BigInt,
    },
    /// `col[dst] += factor * col[src]`
    AddColMultiple {
        src: usize,
        dst: usize,
        factor: BigInt,
    },
    NegateRow(usize),
    NegateCol(usize),
}

impl ElementaryOp {
    pub fn apply(&self, m: &mut IntegerMatrix) {
        match self {
            ElementaryOp::SwapRows(a, b) => {
                for j in 0..m.cols() {
                    let x = m.get(*a, j).clone();
                    let y = m.get(*b, j).clone();
                    m.set(*a, j, y);
                    m.set(*b, j, x);
                }
            }
            ElementaryOp::SwapCols(a, b) => {
                for i in 0..m.rows() {
                    let x = m.get(i, *a).clone();
                    let y = m.get(i, *b).clone();
                    m.set(i, *a, y);
                    m.set(i, *b, x);
                }
            }
            ElementaryOp::AddRowMultiple { src, dst, factor } => {
                for j in 0..m.cols() {
                    let v = m.get(*dst, j) + factor * m.get(*src, j);
                    m.set(*dst, j, v);
                }
            }
            ElementaryOp::AddColMultiple { src, dst, factor } => {
                for i in 0..m.rows() {
                    let v = m.get(i, *dst) + factor * m.get(i, *src);
                    m.set(i, *dst, v);
                }
            }
            ElementaryOp::NegateRow(i) => {
                for j in 0..m.cols() {
                    let v = -m.get(*i, j).clone();
                    m.set(*i, j, v);
                }
            }
            ElementaryOp::NegateCol(j) => {
                for i in 0..m.rows() {
                    let v = -m.get(i, *j).clone();
                    m.set(i, *j, v);
                }
            }
        }
    }
}

/// Outcome of [`reduce_type_matrix`]: the count `s` of unit diagonal entries
/// and the replayable trace of elementary operations.
#[derive(Debug, Clone)]
pub struct ReductionResult {
    dim: usize,
    ones: usize,
    trace: Vec<ElementaryOp>,
}

impl ReductionResult {
    /// Number of 1s on the final diagonal (the integer `s`).
    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> &[ElementaryOp] {
        &self.trace
    }

    /// Replays the trace on `input` and returns the transformed matrix.
    pub fn replay_on(&self, input: &IntegerMatrix) -> IntegerMatrix {
        let mut m = input.clone();
        for op in &self.trace {
            op.apply(&mut m);
        }
        m
    }

    /// The diagonal matrix `diag(1^s, 2^(d-s))` the trace must reproduce.
    pub fn expected_form(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            let v = if i < self.ones { 1 } else { 2 };
            m.set(i, i, BigInt::from(v));
        }
        m
    }

    /// True iff replaying the trace on `input` yields the expected diagonal.
    pub fn verify(&self, input: &IntegerMatrix) -> bool {
        self.replay_on(input) == self.expected_form()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowKind {
    /// 1s at the two given first-part columns.
    PairOnes(usize, usize),
    /// single 1 at the given first-part column.
    SingleOne(usize),
    /// single 2 at the given first-part column.
    SingleTwo(usize),
    /// first part all zero.
    AllZero,
}

struct Reducer {
    m: IntegerMatrix,
    trace: Vec<ElementaryOp>,
    d: usize,
}

impl Reducer {
    fn op(&mut self, op: ElementaryOp) {
        op.apply(&mut self.m);
        self.trace.push(op);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            self.op(ElementaryOp::SwapRows(a, b));
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            self.op(ElementaryOp::SwapCols(a, b));
        }
    }

    fn add_row(&mut self, src: usize, dst: usize, factor: i64) {
        if factor != 0 {
            self.op(ElementaryOp::AddRowMultiple {
                src,
                dst,
                factor: BigInt::from(factor),
            });
        }
    }

    fn add_col(&mut self, src: usize, dst: usize, factor: i64) {
        if factor != 0 {
            self.op(ElementaryOp::AddColMultiple {
                src,
                dst,
                factor: BigInt::from(factor),
            });
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.op(ElementaryOp::NegateRow(i));
    }

    /// Classifies an active row over columns `t..d-1` (the last column is the
    /// all-ones column throughout). Returns None if the block invariant is
    /// broken, which cannot happen for nonsingular inputs.
    fn classify(&self, row: usize, t: usize) -> Option<RowKind> {
        let last = self.d - 1;
        if !self.m.get(row, last).is_one() {
            return None;
        }
        let mut ones = Vec::new();
        let mut twos = Vec::new();
        for j in t..last {
            let e = self.m.get(row, j);
            if e.is_zero() {
                continue;
            } else if e.is_one() {
                ones.push(j);
            } else if *e == BigInt::from(2) {
                twos.push(j);
            } else {
                return None;
            }
        }
        match (ones.as_slice(), twos.as_slice()) {
            ([], []) => Some(RowKind::AllZero),
            ([j], []) => Some(RowKind::SingleOne(*j)),
            ([j1, j2], []) => Some(RowKind::PairOnes(*j1, *j2)),
            ([], [j]) => Some(RowKind::SingleTwo(*j)),
            _ => None,
        }
    }

    fn kinds(&self, t: usize) -> Result<Vec<RowKind>, ReduceError> {
        (t..self.d)
            .map(|i| self.classify(i, t).ok_or(ReduceError::Singular))
            .collect()
    }

    /// Terminal case: every active row is a double row or an all-zero row.
    /// Produces `diag(1, 2, .., 2)` on the active block.
    fn finish_doubles(&mut self, t: usize) -> Result<(), ReduceError> {
        let last = self.d - 1;
        let kinds = self.kinds(t)?;
        let fours: Vec<usize> = kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == RowKind::AllZero)
            .map(|(i, _)| t + i)
            .collect();
        // a nonsingular block has exactly one all-zero row
        if fours.len() != 1 {
            return Err(ReduceError::Singular);
        }
        self.swap_rows(fours[0], last);
        // place each double row's 2 on the diagonal
        for i in t..last {
            let j = (i..last).find(|&j| *self.m.get(i, j) == BigInt::from(2));
            let Some(j) = j else {
                return Err(ReduceError::Singular);
            };
            self.swap_cols(i, j);
        }
        // clear the ones column using the bottom row
        for i in t..last {
            self.add_row(last, i, -1);
        }
        // rotate the unit pivot to the front of the block
        if last > t {
            self.swap_rows(t, last);
            self.swap_cols(t, last);
        }
        Ok(())
    }

    /// Case with unit rows but no pair rows: peel one unit pivot.
    fn peel_unit_row(&mut self, t: usize) -> Result<(), ReduceError> {
        let last = self.d - 1;
        // gather unit rows at the top, smallest index first
        let mut r = 0;
        loop {
            let mut found = None;
            for i in t + r..self.d {
                if matches!(self.classify(i, t), Some(RowKind::SingleOne(_))) {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    self.swap_rows(t + r, i);
                    r += 1;
                }
                None => break,
            }
        }
        debug_assert!(r >= 1);
        if t + r == self.d {
            // unit rows alone cannot fill the block without duplicates
            return Err(ReduceError::Singular);
        }
        // move each unit entry onto the diagonal
        for k in 0..r {
            let row = t + k;
            let j = (row..last).find(|&j| self.m.get(row, j).is_one());
            let Some(j) = j else {
                return Err(ReduceError::Singular);
            };
            self.swap_cols(row, j);
        }
        // rows below the unit block are double/zero rows; at most one can
        // carry a 2 in the pivot column
        let c_top = t + r;
        let twos: Vec<usize> = (c_top..self.d)
            .filter(|&i| *self.m.get(i, t) == BigInt::from(2))
            .collect();
        if twos.len() > 1 {
            return Err(ReduceError::Singular);
        }
        if let Some(&w) = twos.first() {
            self.swap_rows(c_top, w);
            self.add_row(t, c_top, -2);
            self.add_col(t, last, -1);
            self.negate_row(c_top);
        } else {
            self.add_col(t, last, -1);
        }
        Ok(())
    }

    /// Case with at least one pair row: peel one unit pivot.
    fn peel_pair_row(&mut self, t: usize) -> Result<(), ReduceError> {
        let last = self.d - 1;
        // bring the smallest-index pair row to the top of the block
        let pivot = (t..self.d)
            .find(|&i| matches!(self.classify(i, t), Some(RowKind::PairOnes(_, _))))
            .ok_or(ReduceError::Singular)?;
        self.swap_rows(t, pivot);
        // move its two 1s into the first two active columns
        let j1 = (t..last)
            .find(|&j| self.m.get(t, j).is_one())
            .ok_or(ReduceError::Singular)?;
        self.swap_cols(t, j1);
        let j2 = (t + 1..last)
            .find(|&j| self.m.get(t, j).is_one())
            .ok_or(ReduceError::Singular)?;
        self.swap_cols(t + 1, j2);

        // stable partition: pair/unit rows first, then double/zero rows
        let mut b_count = 0;
        loop {
            let mut found = None;
            for i in t + 1 + b_count..self.d {
                if matches!(
                    self.classify(i, t),
                    Some(RowKind::PairOnes(_, _)) | Some(RowKind::SingleOne(_))
                ) {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    self.swap_rows(t + 1 + b_count, i);
                    b_count += 1;
                }
                None => break,
            }
        }
        let c_start = t + 1 + b_count;
        self.normalize_double_block(t, c_start)?;

        // classify the first two columns of the pair/unit block
        let two = BigInt::from(2);
        let mut has01 = false;
        let mut has10 = false;
        for i in t + 1..c_start {
            let a = self.m.get(i, t).is_one();
            let b = self.m.get(i, t + 1).is_one();
            if a && b {
                // duplicate of the pivot row
                return Err(ReduceError::Singular);
            }
            has01 |= !a && b;
            has10 |= a && !b;
        }

        if !has01 && !has10 {
            // first two columns of the block are zero below the pivot
            let c0_is_two = c_start < self.d && *self.m.get(c_start, t) == two;
            if c0_is_two {
                self.add_row(t, c_start, -2);
                self.add_col(t, t + 1, -1);
                self.add_col(t, last, -1);
                self.negate_row(c_start);
            } else {
                self.add_col(t, t + 1, -1);
                self.add_col(t, last, -1);
            }
            return Ok(());
        }

        if !has01 {
            // only (1,0) rows: swap the two columns, then re-normalize the
            // double/zero block whose 2s may have moved into the pivot column
            self.swap_cols(t, t + 1);
            self.normalize_double_block(t, c_start)?;
        }
        // sort the block: (0,1) rows, then (1,0) rows, then (0,0) rows
        let class_of = |m: &IntegerMatrix, i: usize| -> u8 {
            let a = m.get(i, t).is_one();
            let b = m.get(i, t + 1).is_one();
            match (a, b) {
                (false, true) => 0,
                (true, false) => 1,
                _ => 2,
            }
        };
        let mut placed = 0;
        for class in 0u8..2 {
            for _ in 0..b_count {
                let mut found = None;
                for i in t + 1 + placed..c_start {
                    if class_of(&self.m, i) == class {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        self.swap_rows(t + 1 + placed, i);
                        placed += 1;
                    }
                    None => break,
                }
            }
        }
        let p_end = (t + 1..c_start)
            .take_while(|&i| class_of(&self.m, i) == 0)
            .count()
            + t
            + 1;
        let q_end = (p_end..c_start)
            .take_while(|&i| class_of(&self.m, i) == 1)
            .count()
            + p_end;

        // the second block row is a (0,1) row, a pair or a unit row
        match self.classify(t + 1, t).ok_or(ReduceError::Singular)? {
            RowKind::SingleOne(_) => {
                self.add_row(t + 1, t, -1);
            }
            RowKind::PairOnes(_, j) => {
                // bring the second 1 next to the first two columns
                self.swap_cols(t + 2, j);
                self.add_row(t + 1, t, -1);
                self.add_col(t, t + 2, 1);
            }
            _ => return Err(ReduceError::Singular),
        }
        // clear the pivot column below
        for i in p_end..q_end {
            self.add_row(t, i, -1);
        }
        if c_start < self.d && *self.m.get(c_start, t) == two {
            self.add_row(t, c_start, -2);
        }
        Ok(())
    }

    /// Moves the unique double row with a 2 in the pivot column (if any) to
    /// the top of the double/zero block.
    fn normalize_double_block(&mut self, t: usize, c_start: usize) -> Result<(), ReduceError> {
        let two = BigInt::from(2);
        let twos: Vec<usize> = (c_start..self.d)
            .filter(|&i| *self.m.get(i, t) == two)
            .collect();
        if twos.len() > 1 {
            return Err(ReduceError::Singular);
        }
        if let Some(&w) = twos.first() {
            self.swap_rows(c_start, w);
        }
        Ok(())
    }
}

/// Reduces a nonsingular type matrix to `diag(1^s, 2^(d-s))` by recorded
/// unimodular row/column operations and returns `s` with the trace.
pub fn reduce_type_matrix(a: &IntegerMatrix) -> Result<ReductionResult, ReduceError> {
    if !a.is_square() {
        return Err(ReduceError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let d = a.rows();
    if d == 0 {
        return Err(ReduceError::NonSquare { rows: 0, cols: 0 });
    }
    let two = BigInt::from(2);
    for i in 0..d {
        let row = a.row(i);
        let shape_ok = row.iter().all(|e| e.is_zero() || e.is_one() || *e == two)
            && row[d - 1].is_one()
            && row[..d - 1].iter().sum::<BigInt>().abs() <= two;
        if !shape_ok {
            return Err(ReduceError::RowShape { row: i });
        }
    }
    if a.determinant().expect("square").is_zero() {
        return Err(ReduceError::Singular);
    }

    let mut red = Reducer {
        m: a.clone(),
        trace: Vec::new(),
        d,
    };
    let mut t = 0;
    let ones;
    loop {
        let kinds = red.kinds(t)?;
        let has_pair = kinds.iter().any(|k| matches!(k, RowKind::PairOnes(_, _)));
        let has_unit = kinds.iter().any(|k| matches!(k, RowKind::SingleOne(_)));
        if has_pair {
            red.peel_pair_row(t)?;
        } else if has_unit {
            red.peel_unit_row(t)?;
        } else {
            red.finish_doubles(t)?;
            ones = t + 1;
            break;
        }
        t += 1;
        if t == d {
            ones = d;
            break;
        }
    }

    let result = ReductionResult {
        dim: d,
        ones,
        trace: red.trace,
    };
    debug_assert_eq!(red.m, result.expected_form());
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows)
    }

    #[test]
    fn single_entry() {
        let r = reduce_type_matrix(&m(&[vec![1]])).unwrap();
        assert_eq!(r.ones(), 1);
        assert!(r.verify(&m(&[vec![1]])));
    }

    #[test]
    fn two_by_two_double() {
        let a = m(&[vec![2, 1], vec![0, 1]]);
        let r = reduce_type_matrix(&a).unwrap();
        assert_eq!(r.ones(), 1);
        assert!(r.verify(&a));
        assert_eq!(a.determinant().unwrap().abs(), BigInt::from(2));
    }

    #[test]
    fn two_by_two_unit() {
        let a = m(&[vec![1, 1], vec![0, 1]]);
        let r = reduce_type_matrix(&a).unwrap();
        assert_eq!(r.ones(), 2);
        assert!(r.verify(&a));
    }

    #[test]
    fn rejects_bad_row_shape() {
        // leading sum 3
        let a = m(&[vec![1, 1, 1, 1], vec![0, 0, 0, 1], vec![2, 0, 0, 1], vec![0, 2, 0, 1]]);
        assert!(matches!(
            reduce_type_matrix(&a),
            Err(ReduceError::RowShape { row: 0 })
        ));
        // last entry not 1
        let b = m(&[vec![1, 1], vec![1, 2]]);
        assert!(matches!(
            reduce_type_matrix(&b),
            Err(ReduceError::RowShape { row: 1 })
        ));
    }

    #[test]
    fn rejects_singular() {
        let a = m(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(
            reduce_type_matrix(&a).unwrap_err(),
            ReduceError::Singular
        );
    }

    #[test]
    fn rejects_non_square() {
        let a = m(&[vec![1, 1, 1]]);
        assert!(matches!(
            reduce_type_matrix(&a),
            Err(ReduceError::NonSquare { .. })
        ));
    }

    /// Random type-matrix generator shared with the acceptance suite.
    pub fn random_type_matrix(rng: &mut impl Rng, d: usize) -> IntegerMatrix {
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            let mut row = vec![0i64; d];
            row[d - 1] = 1;
            if d > 1 {
                match rng.gen_range(0..4) {
                    0 => {
                        if d > 2 {
                            let j1 = rng.gen_range(0..d - 1);
                            let mut j2 = rng.gen_range(0..d - 1);
                            while j2 == j1 {
                                j2 = rng.gen_range(0..d - 1);
                            }
                            row[j1] = 1;
                            row[j2] = 1;
                        } else {
                            row[0] = 1;
                        }
                    }
                    1 => row[rng.gen_range(0..d - 1)] = 1,
                    2 => row[rng.gen_range(0..d - 1)] = 2,
                    _ => {}
                }
            }
            rows.push(row);
        }
        m(&rows)
    }

    #[test]
    fn random_matrices_reduce_and_replay() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 60 {
            let d = rng.gen_range(1..=6);
            let a = random_type_matrix(&mut rng, d);
            let det = a.determinant().unwrap();
            if det.is_zero() {
                continue;
            }
            let r = reduce_type_matrix(&a).unwrap();
            assert!(r.verify(&a), "trace replay failed for {a:?}");
            let expect = BigInt::from(2).pow((d - r.ones()) as u32);
            assert_eq!(det.abs(), expect, "determinant mismatch for {a:?}");
            assert!(a.half_inverse_is_integral().unwrap());
            done += 1;
        }
    }
}

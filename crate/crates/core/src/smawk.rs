//! Row maxima of convex totally monotone staircase matrices (SMAWK) with a
//! compact breakpoint output, and the (max,+) routines built on it.
//!
//! Matrices are reverse falling staircases: in every row the finite entries
//! form a prefix of the columns, in every column a suffix of the rows. Among
//! equal maxima the leftmost column wins; bottom loses every comparison and
//! two bottoms tie.

use crate::concave::ConcaveProfitFn;
use crate::dp::DpTable;
use crate::profit::Profit;

/// An implicitly given `rows × cols` matrix with constant-time access.
pub trait MatrixOracle {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn eval(&self, row: usize, col: usize) -> Profit;
}

/// A matrix backed by a closure.
pub struct FnMatrix<F> {
    rows: usize,
    cols: usize,
    f: F,
}

impl<F: Fn(usize, usize) -> Profit> FnMatrix<F> {
    pub fn new(rows: usize, cols: usize, f: F) -> Self {
        FnMatrix { rows, cols, f }
    }
}

impl<F: Fn(usize, usize) -> Profit> MatrixOracle for FnMatrix<F> {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn eval(&self, row: usize, col: usize) -> Profit {
        (self.f)(row, col)
    }
}

/// Leftmost row maxima as `cols + 1` nondecreasing row indices
/// `0 = r₀ ≤ r₁ ≤ … ≤ r_cols = rows`: rows `r_j ≤ i < r_{j+1}` have their
/// leftmost maximum in column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowMaximaBreakpoints {
    pub breakpoints: Vec<usize>,
}

impl RowMaximaBreakpoints {
    /// Rows whose leftmost maximum sits in `col`.
    pub fn rows_of(&self, col: usize) -> std::ops::Range<usize> {
        self.breakpoints[col]..self.breakpoints[col + 1]
    }

    /// Leftmost maximizing column of `row`.
    pub fn column_of(&self, row: usize) -> usize {
        self.breakpoints.partition_point(|&r| r <= row) - 1
    }

    /// Expands to one column index per row.
    pub fn to_columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(*self.breakpoints.last().unwrap_or(&0));
        for col in 0..self.breakpoints.len().saturating_sub(1) {
            out.extend(self.rows_of(col).map(|_| col));
        }
        out
    }
}

/// Finds all leftmost row maxima using `O(cols·(1 + log⌈rows/cols⌉))`
/// oracle evaluations.
///
/// A sample of at most `cols` evenly spaced rows is solved with SMAWK; the
/// rows between two sampled rows are then split by bisection inside the
/// column window their neighbours leave open.
pub fn row_maxima<M: MatrixOracle + ?Sized>(matrix: &M) -> RowMaximaBreakpoints {
    let m = matrix.rows();
    let n = matrix.cols();
    if m == 0 {
        return RowMaximaBreakpoints {
            breakpoints: vec![0; n + 1],
        };
    }
    assert!(n > 0, "a matrix with rows needs at least one column");

    let stride = m.div_ceil(n);
    let sampled: Vec<usize> = (1..=m / stride).map(|k| k * stride - 1).collect();
    let cols: Vec<usize> = (0..n).collect();
    let mut sampled_arg = vec![0usize; sampled.len()];
    smawk(matrix, &sampled, &cols, &mut sampled_arg);

    // Runs of (first row, column) in increasing row order.
    let mut runs: Vec<(usize, usize)> = Vec::with_capacity(2 * n + 2);
    let mut prev_row: Option<usize> = None;
    let mut prev_col = 0usize;
    for (k, &row) in sampled.iter().enumerate() {
        let first = prev_row.map_or(0, |r| r + 1);
        if first < row {
            bisect(matrix, first, row - 1, prev_col, sampled_arg[k], &mut runs);
        }
        runs.push((row, sampled_arg[k]));
        prev_row = Some(row);
        prev_col = sampled_arg[k];
    }
    let first = prev_row.map_or(0, |r| r + 1);
    if first < m {
        bisect(matrix, first, m - 1, prev_col, n - 1, &mut runs);
    }

    let mut breakpoints = vec![0usize; n + 1];
    breakpoints[n] = m;
    // breakpoints[j] = first row whose column is ≥ j.
    let mut next_col = 1;
    for &(row, col) in &runs {
        while next_col <= col {
            breakpoints[next_col] = row;
            next_col += 1;
        }
    }
    while next_col < n {
        breakpoints[next_col] = m;
        next_col += 1;
    }
    RowMaximaBreakpoints { breakpoints }
}

/// Leftmost maximum of `row` among columns `lo..=hi`.
#[inline]
fn scan_row<M: MatrixOracle + ?Sized>(matrix: &M, row: usize, lo: usize, hi: usize) -> usize {
    let mut best = lo;
    let mut best_val = matrix.eval(row, lo);
    for col in lo + 1..=hi {
        let v = matrix.eval(row, col);
        if v > best_val {
            best = col;
            best_val = v;
        }
    }
    best
}

fn bisect<M: MatrixOracle + ?Sized>(
    matrix: &M,
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
    runs: &mut Vec<(usize, usize)>,
) {
    if c0 == c1 {
        runs.push((r0, c0));
        return;
    }
    let mid = r0 + (r1 - r0) / 2;
    let cm = scan_row(matrix, mid, c0, c1);
    if mid > r0 {
        bisect(matrix, r0, mid - 1, c0, cm, runs);
    }
    runs.push((mid, cm));
    if mid < r1 {
        bisect(matrix, mid + 1, r1, cm, c1, runs);
    }
}

/// Classic SMAWK on the submatrix `rows × cols` (both increasing). Writes the
/// leftmost maximizing column of `rows[k]` into `out[k]`.
fn smawk<M: MatrixOracle + ?Sized>(matrix: &M, rows: &[usize], cols: &[usize], out: &mut [usize]) {
    if rows.is_empty() {
        return;
    }
    // Reduce: keep at most |rows| candidate columns.
    let mut kept: Vec<usize> = Vec::with_capacity(rows.len().min(cols.len()));
    for &c in cols {
        while let Some(&top) = kept.last() {
            let r = rows[kept.len() - 1];
            if matrix.eval(r, top) < matrix.eval(r, c) {
                kept.pop();
            } else {
                break;
            }
        }
        if kept.len() < rows.len() {
            kept.push(c);
        }
    }

    if rows.len() == 1 {
        out[0] = kept[scan_positions(matrix, rows[0], &kept, 0, kept.len() - 1)];
        return;
    }

    let odd_rows: Vec<usize> = rows.iter().skip(1).step_by(2).copied().collect();
    let mut odd_out = vec![0usize; odd_rows.len()];
    smawk(matrix, &odd_rows, &kept, &mut odd_out);

    // Interpolate the even rows between their odd neighbours.
    let mut pos = 0usize;
    for k in (0..rows.len()).step_by(2) {
        let hi_col = if k + 1 < rows.len() {
            odd_out[k / 2]
        } else {
            *kept.last().unwrap()
        };
        let mut hi = pos;
        while kept[hi] != hi_col {
            hi += 1;
        }
        let best = scan_positions(matrix, rows[k], &kept, pos, hi);
        out[k] = kept[best];
        if k + 1 < rows.len() {
            out[k + 1] = hi_col;
        }
        pos = hi;
    }
}

fn scan_positions<M: MatrixOracle + ?Sized>(matrix: &M, row: usize, cols: &[usize], lo: usize, hi: usize) -> usize {
    let mut best = lo;
    let mut best_val = matrix.eval(row, cols[lo]);
    for (p, &c) in cols.iter().enumerate().take(hi + 1).skip(lo + 1) {
        let v = matrix.eval(row, c);
        if v > best_val {
            best = p;
            best_val = v;
        }
    }
    best
}

/// Penalty slope that makes any entry past the end of a concave array lose
/// against every in-range entry: exceeds the combined spread of the finite
/// values involved.
pub(crate) fn overflow_penalty(spreads: &[i128]) -> i128 {
    spreads.iter().sum::<i128>() + 1
}

pub(crate) fn spread(values: impl Iterator<Item = Profit>) -> i128 {
    let mut lo = i128::MAX;
    let mut hi = i128::MIN;
    for v in values.filter_map(Profit::value) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        0
    } else {
        hi - lo
    }
}

/// `c[i] = max_{0≤j≤i} a[j] + b[i−j]` for a concave, finite `b`.
pub fn concave_maxplus_conv(a: &[Profit], b: &[Profit]) -> Vec<Profit> {
    assert!(!a.is_empty() && !b.is_empty(), "arrays must be nonempty");
    debug_assert!(b.iter().all(|v| v.is_finite()), "b must be finite");
    debug_assert!(
        b.windows(3)
            .all(|w| w[1].finite() - w[0].finite() >= w[2].finite() - w[1].finite()),
        "b must be concave"
    );
    let out_len = a.len() + b.len() - 1;
    let cols: Vec<usize> = (0..a.len()).filter(|&j| a[j].is_finite()).collect();
    if cols.is_empty() {
        return vec![Profit::BOTTOM; out_len];
    }
    let last = b.len() - 1;
    let penalty = overflow_penalty(&[spread(cols.iter().map(|&j| a[j])), spread(b.iter().copied())]);
    let entry = |i: usize, jj: usize| -> (Profit, bool) {
        let j = cols[jj];
        if i < j {
            return (Profit::BOTTOM, false);
        }
        let x = i - j;
        if x <= last {
            (a[j] + b[x], true)
        } else {
            (a[j] + b[last] + (-(penalty * (x - last) as i128)), false)
        }
    };
    let matrix = FnMatrix::new(out_len, cols.len(), |i, jj| entry(i, jj).0);
    let maxima = row_maxima(&matrix);
    let mut out = vec![Profit::BOTTOM; out_len];
    for jj in 0..cols.len() {
        for i in maxima.rows_of(jj) {
            let (v, valid) = entry(i, jj);
            if valid {
                out[i] = v;
            }
        }
    }
    out
}

/// Which way a batch of same-weight items moves the offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Items outside the greedy set are added: `z' = z + x·w`.
    Positive,
    /// Items of the greedy set are removed: `z' = z − x·w`.
    Negative,
}

/// `q'[z'] = max_{x≥0} q[z' ∓ x·w] + Q(x)` on `[−L', L']`, restricted to
/// `x·w ≤ L + L'`, solved per residue class mod `w` by concave convolution.
///
/// For [`Direction::Negative`], `profits` must already hold the negated
/// profits of the removed items (see [`ConcaveProfitFn::losses`]).
pub fn batch_update_weight_class(
    q: &DpTable,
    weight: u64,
    profits: &ConcaveProfitFn,
    new_half: usize,
    direction: Direction,
) -> DpTable {
    match direction {
        Direction::Positive => batch_update_positive(q, weight, profits, new_half),
        Direction::Negative => batch_update_positive(&q.mirrored(), weight, profits, new_half).mirrored(),
    }
}

fn batch_update_positive(q: &DpTable, weight: u64, profits: &ConcaveProfitFn, new_half: usize) -> DpTable {
    assert!(weight >= 1);
    let half = q.half();
    let w = weight as usize;
    let x_max = profits.cap().min((half + new_half) / w);
    if x_max == 0 {
        return q.resize(new_half);
    }
    let b = &profits.prefix()[..=x_max];
    let mut out = DpTable::bottom(new_half);
    let src = q.values();
    let len = src.len();
    let mut a: Vec<Profit> = Vec::with_capacity(len / w + 1);
    for first in 0..w.min(len) {
        a.clear();
        a.extend(src[first..].iter().step_by(w).copied());
        if a.iter().all(|v| v.is_bottom()) {
            continue;
        }
        let c = concave_maxplus_conv(&a, b);
        let z0 = first as i64 - half as i64;
        for (p, &v) in c.iter().enumerate() {
            let z = z0 + (p * w) as i64;
            if z > new_half as i64 {
                break;
            }
            if z >= -(new_half as i64) && v.is_finite() {
                out.set(z, v);
            }
        }
    }
    out
}

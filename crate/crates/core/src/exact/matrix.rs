//! Dense integer matrices and the classical normal-form algorithms:
//! Hermite form with transform, Smith form with transforms, saturated
//! kernels, and fraction-free (Bareiss) determinant and rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::min;
use std::fmt;

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Result of [`IntMatrix::snf_with_transforms`]: `p * m * q = d` with `p`, `q`
/// unimodular and `d` diagonal with the divisibility chain. `qinv` is the
/// inverse of `q`, kept alongside because callers use both directions.
pub struct SnfTransforms {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub qinv: IntMatrix,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from machine integers, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// A matrix with zero rows but a definite column count.
    pub fn empty(cols: usize) -> Self {
        IntMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.at(i, j) + a * rhs.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn row_vec_mul(v: &[BigInt], m: &IntMatrix) -> Vec<BigInt> {
        assert_eq!(v.len(), m.rows, "dimension mismatch");
        let mut out = vec![BigInt::zero(); m.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                out[j] += a * m.at(k, j);
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_col_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row count mismatch");
        let mut out = IntMatrix::zero(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.at(r, c).clone());
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.cols, "column count mismatch");
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rows.extend((0..rhs.rows).map(|r| rhs.row(r).to_vec()));
        IntMatrix::from_rows_with_cols(rows, self.cols)
    }

    fn from_rows_with_cols(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        IntMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// `row[target] += f * row[source]`.
    fn add_row_multiple(&mut self, target: usize, source: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(target, c) + f * self.at(source, c);
            self.set(target, c, v);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `col[target] += f * col[source]`.
    fn add_col_multiple(&mut self, target: usize, source: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, target) + f * self.at(r, source);
            self.set(r, target, v);
        }
    }

    /// Row Hermite normal form.
    ///
    /// Returns `(h, u)` with `u` unimodular and `u * self = h`: pivots are
    /// positive, each strictly to the right of the one above, entries above a
    /// pivot are reduced into `[0, pivot)`, and zero rows sit at the bottom.
    /// This is the canonical form: matrices with equal row lattices get equal
    /// `h`.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // Euclidean descent: repeatedly move the least nonzero entry of
            // the column (at or below pivot_row) into pivot position and
            // reduce the rest modulo it.
            loop {
                let best = (pivot_row..self.rows)
                    .filter(|&r| !h.at(r, col).is_zero())
                    .min_by_key(|&r| h.at(r, col).abs());
                let Some(b) = best else { break };
                h.swap_rows(b, pivot_row);
                u.swap_rows(b, pivot_row);
                let p = h.at(pivot_row, col).clone();
                let mut remainder_left = false;
                for r in pivot_row + 1..self.rows {
                    if h.at(r, col).is_zero() {
                        continue;
                    }
                    let q = -(h.at(r, col) / &p);
                    h.add_row_multiple(r, pivot_row, &q);
                    u.add_row_multiple(r, pivot_row, &q);
                    if !h.at(r, col).is_zero() {
                        remainder_left = true;
                    }
                }
                if !remainder_left {
                    break;
                }
            }
            if h.at(pivot_row, col).is_zero() {
                continue;
            }
            if h.at(pivot_row, col).is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let p = h.at(pivot_row, col).clone();
            for r in 0..pivot_row {
                let q = -h.at(r, col).div_floor(&p);
                h.add_row_multiple(r, pivot_row, &q);
                u.add_row_multiple(r, pivot_row, &q);
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Basis of the integer kernel `{ w : self * w^T = 0 }`, returned as the
    /// rows of a matrix in Hermite normal form. The kernel of an integer
    /// matrix acting on the ambient lattice is automatically saturated:
    /// primitive vectors stay primitive in the basis.
    pub fn kernel_saturated(&self) -> IntMatrix {
        let (h, u) = self.transpose().hnf();
        let mut rows = Vec::new();
        for r in 0..h.rows() {
            if h.row_is_zero(r) {
                rows.push(u.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return IntMatrix::empty(self.cols);
        }
        let k = IntMatrix::from_rows_with_cols(rows, self.cols);
        // Canonicalize: the rows are independent, so the Hermite form keeps
        // them all and fixes signs and reduction deterministically.
        k.hnf().0
    }

    /// Determinant by fraction-free (Bareiss) elimination. The determinant of
    /// the empty 0x0 matrix is 1.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a.at(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        let d = a.at(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rank by fraction-free elimination with column pivoting. Exact: the
    /// skipped columns are zero below the current row, so the Bareiss
    /// divisions stay exact.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut r = 0;
        let mut prev = BigInt::one();
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            if a.at(r, c).is_zero() {
                let Some(p) = (r + 1..self.rows).find(|&i| !a.at(i, c).is_zero()) else {
                    continue;
                };
                a.swap_rows(r, p);
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (a.at(i, j) * a.at(r, c) - a.at(i, c) * a.at(r, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, c, BigInt::zero());
            }
            prev = a.at(r, c).clone();
            r += 1;
        }
        r
    }

    /// Smith normal form: the nonzero invariant factors `d_1 | d_2 | ...`
    /// (including any equal to 1; zeros are dropped).
    pub fn snf(&self) -> Vec<BigInt> {
        let t = self.snf_with_transforms();
        (0..min(t.d.rows, t.d.cols))
            .map(|i| t.d.at(i, i).clone())
            .filter(|v| !v.is_zero())
            .collect()
    }

    /// Smith normal form with unimodular transforms: `p * self * q = d`.
    pub fn snf_with_transforms(&self) -> SnfTransforms {
        let mut d = self.clone();
        let mut p = IntMatrix::identity(self.rows);
        let mut q = IntMatrix::identity(self.cols);
        let mut qinv = IntMatrix::identity(self.cols);
        let steps = min(self.rows, self.cols);
        for t in 0..steps {
            // Pick the least nonzero entry of the trailing block as pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !d.at(i, j).is_zero()
                        && best.map_or(true, |(bi, bj)| d.at(i, j).abs() < d.at(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            p.swap_rows(t, bi);
            d.swap_cols(t, bj);
            q.swap_cols(t, bj);
            qinv.swap_rows(t, bj);

            loop {
                // Clear the pivot column and pivot row, repeating until both
                // are clean (a column swap can re-dirty the column).
                loop {
                    loop {
                        let Some(i) = (t + 1..self.rows).find(|&i| !d.at(i, t).is_zero())
                        else {
                            break;
                        };
                        let f = -(d.at(i, t) / d.at(t, t));
                        d.add_row_multiple(i, t, &f);
                        p.add_row_multiple(i, t, &f);
                        if !d.at(i, t).is_zero() {
                            d.swap_rows(t, i);
                            p.swap_rows(t, i);
                        }
                    }
                    // Column operations mirror their inverses onto qinv.
                    let mut column_dirtied = false;
                    loop {
                        let Some(j) = (t + 1..self.cols).find(|&j| !d.at(t, j).is_zero())
                        else {
                            break;
                        };
                        let f = -(d.at(t, j) / d.at(t, t));
                        d.add_col_multiple(j, t, &f);
                        q.add_col_multiple(j, t, &f);
                        qinv.add_row_multiple(t, j, &-f);
                        if !d.at(t, j).is_zero() {
                            d.swap_cols(t, j);
                            q.swap_cols(t, j);
                            qinv.swap_rows(t, j);
                            column_dirtied = true;
                        }
                    }
                    if !column_dirtied && (t + 1..self.rows).all(|i| d.at(i, t).is_zero()) {
                        break;
                    }
                }

                // Enforce the divisibility chain: fold a row with a
                // non-divisible entry into the pivot row and re-reduce the
                // whole cross. The pivot strictly shrinks, so this ends.
                let violation = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !(d.at(i, j) % d.at(t, t)).is_zero())
                });
                match violation {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        p.add_row_multiple(t, i, &one);
                    }
                    None => break,
                }
            }

            if d.at(t, t).is_negative() {
                d.negate_row(t);
                p.negate_row(t);
            }
        }
        SnfTransforms { d, p, q, qinv }
    }

    /// Expresses `v` as an integer combination of the rows of `self`, or
    /// `None` if `v` lies outside the integer row space. Returns the
    /// coefficient vector (one entry per row of `self`).
    pub fn solve_in_rowspace(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let (h, u) = self.hnf();
        let mut w = v.to_vec();
        let mut y = vec![BigInt::zero(); h.rows()];
        for r in 0..h.rows() {
            let Some(c) = (0..h.cols()).find(|&c| !h.at(r, c).is_zero()) else {
                break;
            };
            let (quot, rem) = w[c].div_rem(h.at(r, c));
            if !rem.is_zero() {
                return None;
            }
            if !quot.is_zero() {
                for j in 0..h.cols() {
                    let delta = &quot * h.at(r, j);
                    w[j] -= delta;
                }
            }
            y[r] = quot;
        }
        if w.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(IntMatrix::row_vec_mul(&y, &u))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

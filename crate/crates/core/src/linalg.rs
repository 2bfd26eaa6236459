//! Exact integer linear algebra: Hermite and Smith normal forms with
//! transformation matrices, integer kernels, and solving over a row lattice.
//!
//! Everything is generic over a signed exact integer scalar (`i64`, `i128`,
//! `BigInt`, ...).  Floating point types do not implement [`Scalar`] on
//! purpose: all consumers in this crate need exact arithmetic.

use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Exact signed integer scalar.  Blanket-implemented for anything with the
/// right num-traits bounds, in particular `i64` and `num_bigint::BigInt`.
pub trait Scalar: Clone + std::fmt::Debug + Integer + Signed {}
impl<T> Scalar for T where T: Clone + std::fmt::Debug + Integer + Signed {}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows: expected width {c}"
        );
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_slice(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_col_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_col_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn row_vec_mul(v: &[T], m: &Self) -> Vec<T> {
        assert_eq!(v.len(), m.rows, "dimension mismatch in row_vec_mul");
        (0..m.cols)
            .map(|j| {
                let mut acc = T::zero();
                for k in 0..m.rows {
                    acc = acc + v[k].clone() * m[(k, j)].clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row_slice(i).iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = std::mem::replace(&mut self[(i, c)], T::zero());
            self[(i, c)] = -v;
        }
    }

    /// `row_i -= q * row_j`.
    fn sub_scaled_row(&mut self, i: usize, j: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q.clone() * self[(j, c)].clone();
            let v = std::mem::replace(&mut self[(i, c)], T::zero());
            self[(i, c)] = v - delta;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `col_i -= q * col_j`.
    fn sub_scaled_col(&mut self, i: usize, j: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = q.clone() * self[(r, j)].clone();
            let v = std::mem::replace(&mut self[(r, i)], T::zero());
            self[(r, i)] = v - delta;
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Row Hermite form `h` together with the unimodular `u` with `u * m = h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfDecomposition<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
}

/// Row-style Hermite normal form.
///
/// The result satisfies `u * m = h` with `u` unimodular, pivots positive with
/// strictly increasing column indices, entries above each pivot reduced into
/// `[0, pivot)`, and zero rows at the bottom.
pub fn hnf<T: Scalar>(m: &Matrix<T>) -> HnfDecomposition<T> {
    let mut h = m.clone();
    let mut u = Matrix::identity(m.rows());
    let (nrows, ncols) = (h.rows(), h.cols());
    let mut row = 0;

    for col in 0..ncols {
        if row == nrows {
            break;
        }
        // Euclid on the column: repeatedly pull the smallest nonzero entry up
        // to `row` and reduce the rest below it.  Each round strictly shrinks
        // the pivot, so this terminates.
        loop {
            let pivot = (row..nrows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by_key(|&r| (h[(r, col)].abs(), r));
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            u.swap_rows(row, p);
            if h[(row, col)].is_negative() {
                h.negate_row(row);
                u.negate_row(row);
            }
            let mut dirty = false;
            for r in row + 1..nrows {
                let q = h[(r, col)].div_floor(&h[(row, col)]);
                h.sub_scaled_row(r, row, &q);
                u.sub_scaled_row(r, row, &q);
                dirty |= !h[(r, col)].is_zero();
            }
            if !dirty {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        for r in 0..row {
            let q = h[(r, col)].div_floor(&h[(row, col)]);
            h.sub_scaled_row(r, row, &q);
            u.sub_scaled_row(r, row, &q);
        }
        row += 1;
    }
    HnfDecomposition { h, u }
}

/// Rank over Q: number of nonzero rows of the Hermite form.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let h = hnf(m).h;
    (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count()
}

/// A square integer matrix is unimodular iff its Hermite form is the
/// identity.
pub fn is_unimodular<T: Scalar>(m: &Matrix<T>) -> bool {
    m.rows() == m.cols() && hnf(m).h == Matrix::identity(m.rows())
}

/// Smith form `s` with unimodular transforms: `u * m * v = s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition<T> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

/// Smith normal form with transforms.  The diagonal is nonnegative and each
/// invariant factor divides the next.
pub fn snf<T: Scalar>(m: &Matrix<T>) -> SnfDecomposition<T> {
    let mut s = m.clone();
    let mut u = Matrix::identity(m.rows());
    let mut v = Matrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    for t in 0..n {
        'pivot: loop {
            let entry = (t..s.rows())
                .flat_map(|i| (t..s.cols()).map(move |j| (i, j)))
                .filter(|&(i, j)| !s[(i, j)].is_zero())
                .min_by_key(|&(i, j)| (s[(i, j)].abs(), i, j));
            let Some((pi, pj)) = entry else { break };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            if s[(t, t)].is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
            let mut dirty = false;
            for i in t + 1..s.rows() {
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.sub_scaled_row(i, t, &q);
                u.sub_scaled_row(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..s.cols() {
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.sub_scaled_col(j, t, &q);
                v.sub_scaled_col(j, t, &q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; force divisibility of the remaining
            // block.  Folding an offending row into row t reopens the
            // elimination with a strictly smaller eventual pivot.
            for i in t + 1..s.rows() {
                for j in t + 1..s.cols() {
                    if !s[(i, j)].mod_floor(&s[(t, t)]).is_zero() {
                        let minus_one = -T::one();
                        s.sub_scaled_row(t, i, &minus_one);
                        u.sub_scaled_row(t, i, &minus_one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    SnfDecomposition { s, u, v }
}

/// Nonzero diagonal of the Smith form, as a divisibility chain
/// `d_1 | d_2 | ...`.
pub fn snf_invariant_factors<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let s = snf(m).s;
    (0..m.rows().min(m.cols()))
        .map(|i| s[(i, i)].clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// Basis of the integer kernel `{ x : m * x = 0 }`, one vector per row.
///
/// Computed from the row Hermite form of the transpose: the transform rows
/// that map onto zero rows span the kernel, and because the transform is
/// unimodular the resulting lattice is saturated (it is the full kernel, not
/// a finite-index sublattice).
pub fn integer_kernel<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let mt = m.transpose();
    let HnfDecomposition { h, u } = hnf(&mt);
    let rows: Vec<Vec<T>> = (0..h.rows())
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row_slice(i).to_vec())
        .collect();
    if rows.is_empty() {
        Matrix::zeros(0, m.cols())
    } else {
        Matrix::from_rows(rows)
    }
}

/// Solves `x * basis = v` exactly over the integers.
///
/// Returns `None` when `v` is not in the row lattice of `basis`.  Free
/// coordinates (from dependent basis rows) are set to zero.
pub fn solve_in_lattice<T: Scalar>(basis: &Matrix<T>, v: &[T]) -> Option<Vec<T>> {
    assert_eq!(v.len(), basis.cols(), "target length mismatch");
    let HnfDecomposition { h, u } = hnf(basis);
    let mut residual: Vec<T> = v.to_vec();
    let mut y = vec![T::zero(); h.rows()];
    for i in 0..h.rows() {
        let Some(col) = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) else {
            break; // zero rows are at the bottom
        };
        let (q, r) = residual[col].div_rem(&h[(i, col)]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..h.cols() {
            let delta = q.clone() * h[(i, j)].clone();
            let cur = std::mem::replace(&mut residual[j], T::zero());
            residual[j] = cur - delta;
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(Matrix::row_vec_mul(&y, &u))
}

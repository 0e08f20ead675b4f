//! Small dense matrices over exact rings.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::unipoly::UniPoly;

/// The ring operations the matrix routines need.
pub trait RingElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for Scalar {
    fn zero() -> Self {
        <Scalar as Zero>::zero()
    }
    fn one() -> Self {
        <Scalar as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingElem for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Square-or-rectangular row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ScalarMatrix = Mat<Scalar>;
pub type PolyMatrix = Mat<UniPoly>;

impl<T: RingElem> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// `I + v·e_{ij}` (0-based indices, `i ≠ j`).
    pub fn elementary(n: usize, i: usize, j: usize, v: T) -> Self {
        let mut m = Mat::identity(n);
        m[(i, j)] = v;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| ((k / self.cols, k % self.cols), v))
    }

    pub fn map<U: RingElem>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &o[(k, j)];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        })
    }

    pub fn sub(&self, o: &Mat<T>) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].sub(&o[(i, j)]))
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Columns `from..to` as a new matrix.
    pub fn column_block(&self, from: usize, to: usize) -> Mat<T> {
        Mat::from_fn(self.rows, to - from, |i, j| self[(i, from + j)].clone())
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Mat<T> {
        Mat::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let ii = if i >= skip_r { i + 1 } else { i };
            let jj = if j >= skip_c { j + 1 } else { j };
            self[(ii, jj)].clone()
        })
    }

    /// Determinant by cofactor expansion; division-free, so it works over
    /// any commutative ring. Intended for the small sizes used here.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => T::one(),
            1 => self.data[0].clone(),
            2 => self[(0, 0)]
                .mul(&self[(1, 1)])
                .sub(&self[(0, 1)].mul(&self[(1, 0)])),
            n => {
                // expand along the row with most zeros
                let row = (0..n)
                    .max_by_key(|&i| (self.row(i).iter().filter(|v| v.is_zero()).count(), n - i))
                    .unwrap_or(0);
                let mut acc = T::zero();
                for j in 0..n {
                    let a = &self[(row, j)];
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.mul(&self.minor(row, j).det());
                    acc = if (row + j) % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                acc
            }
        }
    }

    /// Classical adjugate: `adj(M)·M = M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> Mat<T> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Mat::identity(1);
        }
        Mat::from_fn(n, n, |i, j| {
            let c = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                c
            } else {
                c.neg()
            }
        })
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl Mat<Scalar> {
    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Option<Mat<Scalar>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::<Scalar>::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !Zero::is_zero(&a[(r, col)]))?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].inv()?;
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &p;
                inv[(col, j)] = &inv[(col, j)] * &p;
            }
            for r in 0..n {
                if r == col || Zero::is_zero(&a[(r, col)]) {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let x = &a[(col, j)] * &f;
                    a[(r, j)] -= &x;
                    let y = &inv[(col, j)] * &f;
                    inv[(r, j)] -= &y;
                }
            }
        }
        Some(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| !Zero::is_zero(&a[(r, col)])) else {
                continue;
            };
            for j in 0..self.cols {
                a.data.swap(piv * self.cols + j, rank * self.cols + j);
            }
            let p = a[(rank, col)].inv().expect("nonzero pivot");
            for r in rank + 1..self.rows {
                if Zero::is_zero(&a[(r, col)]) {
                    continue;
                }
                let f = &a[(r, col)] * &p;
                for j in col..self.cols {
                    let x = &a[(rank, j)] * &f;
                    a[(r, j)] -= &x;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(<Scalar as Zero>::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

impl Mat<UniPoly> {
    pub fn eval(&self, x: &Scalar) -> Mat<Scalar> {
        self.map(|p| p.eval(x))
    }

    pub fn derivative(&self) -> Mat<UniPoly> {
        self.map(UniPoly::derivative)
    }

    pub fn max_degree(&self) -> usize {
        self.data.iter().map(UniPoly::deg0).max().unwrap_or(0)
    }

    /// Lifts a constant matrix.
    pub fn from_scalars(m: &Mat<Scalar>) -> Mat<UniPoly> {
        m.map(|c| UniPoly::constant(c.clone()))
    }

    /// Substitutes `inner` for the variable in every entry.
    pub fn compose(&self, inner: &UniPoly) -> Mat<UniPoly> {
        self.map(|p| p.compose(inner))
    }
}

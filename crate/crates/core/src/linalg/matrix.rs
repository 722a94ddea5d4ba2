use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg};

use num::{BigInt, One, Signed, Zero};

use super::rational::{common_denominator, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Exact rational matrix.
pub type QMatrix = Matrix<Rational>;
/// Exact integer matrix.
pub type IntMatrix = Matrix<BigInt>;
/// Exact rational column vector.
pub type QVector = Vec<Rational>;
pub type IntVector = Vec<BigInt>;

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a non-empty square matrix.
    pub fn dim(&self) -> Result<usize> {
        if self.rows == 0 || !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(columns: &[Vec<T>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: bad.len(),
            });
        }
        Ok(Matrix::from_fn(rows, cols, |i, j| columns[j][i].clone()))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Sub-matrix of the leading `rows x cols` block.
    pub fn leading_block(&self, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self[(i, j)].clone())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                T::zero()
            }
        })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn mul_mat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| &acc + &(&self[(i, k)] * &other[(k, j)]))
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|x| x * factor)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
fn bareiss_det(mut m: IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = value / &prev;
            }
        }
        prev = m[(k, k)].clone();
    }
    let det = m[(n - 1, n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl QMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        m.map(|x| Rational::from_integer(x.clone()))
    }

    /// Integer matrix with the same entries, if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.entries().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|x| x.is_integer())
    }

    /// Exact determinant. Each row is scaled to integers, the integer
    /// determinant is taken fraction-free, and the scaling undone.
    pub fn det(&self) -> Result<Rational> {
        let n = self.dim()?;
        let scales: Vec<BigInt> = (0..n).map(|i| common_denominator(self.row(i))).collect();
        let scaled = Matrix::from_fn(n, n, |i, j| {
            let x = &self[(i, j)];
            x.numer() * (&scales[i] / x.denom())
        });
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Rational::new(bareiss_det(scaled), denom))
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<QMatrix> {
        let n = self.dim()?;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)].recip();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &p;
                inv[(col, j)] = &inv[(col, j)] * &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let t = &factor * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - &t;
                    let t = &factor * &inv[(col, j)];
                    inv[(r, j)] = &inv[(r, j)] - &t;
                }
            }
        }
        Ok(inv)
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => self[(i, j)].is_one(),
                    std::cmp::Ordering::Greater => self[(i, j)].is_zero(),
                    std::cmp::Ordering::Less => true,
                })
            })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.transpose().is_lower_unitriangular()
    }

    pub fn neg(&self) -> QMatrix {
        self.map(|x| x.neg())
    }
}

impl IntMatrix {
    pub fn det(&self) -> Result<BigInt> {
        self.dim()?;
        Ok(bareiss_det(self.clone()))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_ok_and(|d| d.abs().is_one())
    }
}

/// Free-standing vector helpers.
pub fn vec_sub(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_neg(a: &[Rational]) -> QVector {
    a.iter().map(|x| -x).collect()
}

pub fn int_to_q(v: &[BigInt]) -> QVector {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

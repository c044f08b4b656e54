//! Dense exact linear algebra over the rationals and the integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rational>;
pub type ZMatrix = Matrix<BigInt>;

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cell = &mut out[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl ZMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn to_rational(&self) -> QMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| Rational::from_integer(v.clone())).collect(),
        }
    }

    /// Exact determinant, computed over the rationals.
    pub fn determinant(&self) -> BigInt {
        let d = self.to_rational().determinant();
        assert!(d.is_integer());
        d.to_integer()
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl QMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &piv;
                for j in c..n {
                    let v = &f * &m[(c, j)];
                    m[(r, j)] -= v;
                }
            }
        }
        det
    }
}

/// Output of [`q_echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEchelon {
    /// Reduced row-echelon form.
    pub echelon: QMatrix,
    /// Pivot columns, 0-based and strictly increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
    /// Invertible matrix with `transform * A == echelon`.
    pub transform: QMatrix,
}

/// Reduced row-echelon form over the rationals.
///
/// Columns are scanned left to right and the first row with a nonzero entry
/// becomes the pivot row.
pub fn q_echelon(a: &QMatrix) -> QEchelon {
    let (m, n) = (a.rows(), a.cols());
    let mut e = a.clone();
    let mut t = QMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !e[(i, c)].is_zero()) else {
            continue;
        };
        e.swap_rows(p, r);
        t.swap_rows(p, r);
        let inv = e[(r, c)].recip();
        for j in 0..n {
            e[(r, j)] *= &inv;
        }
        for j in 0..m {
            t[(r, j)] *= &inv;
        }
        for i in 0..m {
            if i == r || e[(i, c)].is_zero() {
                continue;
            }
            let f = e[(i, c)].clone();
            for j in 0..n {
                let v = &f * &e[(r, j)];
                e[(i, j)] -= v;
            }
            for j in 0..m {
                let v = &f * &t[(r, j)];
                t[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    QEchelon { rank: pivots.len(), echelon: e, pivots, transform: t }
}

/// Output of [`z_unimodular_echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZEchelon {
    /// Hermite-style staircase form.
    pub reduced: ZMatrix,
    /// Unimodular matrix with `transform * A == reduced`.
    pub transform: ZMatrix,
    /// Pivot columns, 0-based; equal in number to the nonzero rows.
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form over the integers, tracking the unimodular transform.
///
/// Nonzero rows come first, pivot columns strictly increase, pivots are
/// positive and the entries above each pivot lie in `[0, pivot)`.
pub fn z_unimodular_echelon(a: &ZMatrix) -> ZEchelon {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = ZMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..m
        loop {
            let nonzero: Vec<usize> = (r..m).filter(|&i| !h[(i, c)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| (h[(i, c)].abs(), i)).unwrap();
            h.swap_rows(p, r);
            t.swap_rows(p, r);
            if nonzero.len() == 1 {
                break;
            }
            let piv = h[(r, c)].clone();
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&piv);
                h.add_row_multiple(i, r, &q);
                t.add_row_multiple(i, r, &q);
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            t.negate_row(r);
        }
        let piv = h[(r, c)].clone();
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&piv);
            h.add_row_multiple(i, r, &q);
            t.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    ZEchelon { reduced: h, transform: t, pivots }
}

/// Rank over the rationals.
pub fn rank(a: &QMatrix) -> usize {
    q_echelon(a).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn echelon6() -> Vec<Vec<i64>> {
        vec![
            vec![2, 1, 3, 5, 0, 0],
            vec![0, 0, 2, -2, 0, 4],
            vec![0, 0, 0, 3, -2, 3],
            vec![0, 0, 0, 0, 0, 0],
        ]
    }

    #[test]
    fn q_echelon_of_displayed_jacobian() {
        let a = QMatrix::from_i64(&echelon6());
        let e = q_echelon(&a);
        assert_eq!(e.rank, 3);
        assert_eq!(e.pivots, vec![0, 2, 3]);
        assert_eq!(e.transform.mul(&a), e.echelon);
    }

    #[test]
    fn q_echelon_trivial_cases() {
        let id = QMatrix::identity(3);
        let e = q_echelon(&id);
        assert_eq!(e.echelon, id);
        assert_eq!(e.rank, 3);
        let z = QMatrix::zeros(2, 3);
        let e = q_echelon(&z);
        assert_eq!(e.rank, 0);
        assert!(e.pivots.is_empty());
    }

    #[test]
    fn z_echelon_small() {
        let a = ZMatrix::from_i64(&[vec![2, 4], vec![1, 3]]);
        let e = z_unimodular_echelon(&a);
        assert_eq!(e.transform.mul(&a), e.reduced);
        assert_eq!(e.transform.determinant().abs(), BigInt::one());
        assert_eq!(e.reduced, ZMatrix::from_i64(&[vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn z_echelon_trivial_cases() {
        let id = ZMatrix::identity(3);
        let e = z_unimodular_echelon(&id);
        assert_eq!(e.reduced, id);
        assert_eq!(e.transform, id);
        let z = ZMatrix::zeros(2, 2);
        let e = z_unimodular_echelon(&z);
        assert_eq!(e.reduced, z);
        assert_eq!(e.transform, ZMatrix::identity(2));
    }

    #[test]
    fn z_echelon_keeps_zero_row_of_displayed_jacobian() {
        let a = ZMatrix::from_i64(&echelon6());
        let e = z_unimodular_echelon(&a);
        assert_eq!(e.pivots, vec![0, 2, 3]);
        assert!(e.reduced.is_zero_row(3));
        assert_eq!(e.transform.row(3), ZMatrix::identity(4).row(3));
    }

    #[test]
    fn determinant_known() {
        let a = QMatrix::from_i64(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(a.determinant(), Rational::one());
    }
}

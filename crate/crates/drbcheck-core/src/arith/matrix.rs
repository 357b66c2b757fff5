//! Dense matrices over an exact coefficient ring.
//!
//! Elimination always pivots on the leftmost column with a nonzero entry and,
//! within it, on the smallest row index, so kernel bases are reproducible.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{int, ArithError, FieldElement, GaloisElement, MultiQuadField, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

pub type QMatrix = Matrix<Rational>;
pub type ExactMatrix = Matrix<FieldElement>;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<T> {
    Solution(Vec<T>),
    NoSolution,
}

impl<T> Solution<T> {
    pub fn into_option(self) -> Option<Vec<T>> {
        match self {
            Solution::Solution(v) => Some(v),
            Solution::NoSolution => None,
        }
    }
}

/// Reduced row echelon form together with pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<T: Scalar> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, template: &T) -> Self {
        let zero = template.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn identity(n: usize, template: &T) -> Self {
        let mut m = Self::zeros(n, n, template);
        for i in 0..n {
            m.set(i, i, template.one_like());
        }
        m
    }

    /// Builds a matrix from rows; `template` fixes the ring when there are none.
    pub fn from_rows(rows: Vec<Vec<T>>, template: &T) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
            zero: template.zero_like(),
        }
    }

    pub fn from_cols(cols: &[Vec<T>], template: &T) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, template);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U, template: &U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: template.zero_like(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
            zero: self.zero.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
            zero: self.zero.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
            zero: self.zero.clone(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        let data = self
            .data
            .iter()
            .map(|a| if a.is_zero() { a.clone() } else { a.mul(s) })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
            zero: self.zero.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `AB − BA`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product, indexing `(i, j) ↦ i·dim(other) + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = self.zero.clone();
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            zero: self.zero.clone(),
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot is invertible");
            for j in c..m.cols {
                let v = m.get(r, j);
                if !v.is_zero() {
                    let nv = v.mul(&inv);
                    m.set(r, j, nv);
                }
            }
            let pivot_row = m.row(r);
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = &pivot_row[j];
                    if pv.is_zero() {
                        continue;
                    }
                    let nv = m.get(i, j).sub(&f.mul(pv));
                    m.set(i, j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let Rref { matrix: r, pivots } = self.rref();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![self.zero.clone(); self.cols];
            v[f] = self.zero.one_like();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Solution<T>, ArithError> {
        if rhs.len() != self.rows {
            return Err(ArithError::DimensionMismatch("right-hand side length"));
        }
        let aug = self.hstack(&Matrix::from_cols(&[rhs.to_vec()], &self.zero));
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::NoSolution);
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Ok(Solution::Solution(x))
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch("inverse of non-square matrix"));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n, &self.zero));
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ArithError::Singular);
        }
        let mut inv = Self::zeros(n, n, &self.zero);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.zero.one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.zero.clone();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let nv = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, nv);
                }
            }
        }
        det
    }

    /// Rank of a list of vectors.
    pub fn rank_of(vectors: &[Vec<T>], template: &T) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        Matrix::from_rows(vectors.to_vec(), template).rank()
    }
}

impl QMatrix {
    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Matrix::from_rows(rows, &int(0))
    }

    pub fn q_zeros(rows: usize, cols: usize) -> Self {
        Matrix::zeros(rows, cols, &int(0))
    }

    pub fn q_identity(n: usize) -> Self {
        Matrix::identity(n, &int(0))
    }

    pub fn to_field(&self, field: &MultiQuadField) -> ExactMatrix {
        self.map(|q| field.from_rational(q.clone()), &field.zero())
    }
}

impl ExactMatrix {
    pub fn field_zeros(rows: usize, cols: usize, field: &MultiQuadField) -> Self {
        Matrix::zeros(rows, cols, &field.zero())
    }

    pub fn field_identity(n: usize, field: &MultiQuadField) -> Self {
        Matrix::identity(n, &field.zero())
    }

    pub fn apply_galois(&self, g: &GaloisElement) -> Self {
        self.map(|x| g.apply(x), &self.zero)
    }

    /// Returns the matrix as rationals when every entry is rational.
    pub fn to_rational(&self) -> Option<QMatrix> {
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).to_rational()?);
            }
            rows.push(row);
        }
        Some(Matrix::from_rows(rows, &int(0)))
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

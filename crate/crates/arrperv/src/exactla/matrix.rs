use super::{ExactError, Rat};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: &[Vec<Rat>], cols: usize) -> Result<Self, ExactError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(ExactError::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix { rows, cols, data: entries.iter().map(|&x| super::rat(x)).collect() }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(cols: &[Vec<Rat>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|i| super::dot(self.row(i), v)).collect()
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Copies `block` into `self` with top-left corner at (r, c).
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    pub fn block_diag(&self, other: &Matrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set_block(i * other.rows, j * other.cols, &other.scale(&self[(i, j)]));
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let x = &m[(r, j)] * &f;
                    m[(i, j)] -= x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        let (r, p) = self.rref();
        r.submatrix(0..p.len(), 0..self.cols)
    }

    /// Canonical basis of the column space, returned as columns.
    pub fn column_space(&self) -> Matrix {
        self.transpose().row_space().transpose()
    }

    /// Kernel basis as rows of a matrix in reduced echelon form.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            k[(row, f)] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(row, p)] = -r[(i, f)].clone();
            }
        }
        k.row_space()
    }

    /// Some X with self * X = b, if one exists.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn determinant(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else { return Rat::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for j in c..n {
                    let x = &m[(c, j)] * &f;
                    m[(i, j)] -= x;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn max_abs_entry(&self) -> Rat {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
    }
}

/// Rank and reduced-echelon kernel basis.
pub fn rank_kernel(m: &Matrix) -> (usize, Vec<Vec<Rat>>) {
    (m.rank(), m.kernel().row_vecs())
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for Matrix {
    /// `[a b; c d]`, with `[]` for matrices without entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rank_kernel(&Matrix::identity(2));
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_kernel_is_standard_basis() {
        let (r, k) = rank_kernel(&Matrix::zeros(2, 2));
        assert_eq!(r, 0);
        assert_eq!(k, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
    }

    #[test]
    fn all_ones_kernel() {
        let (r, k) = rank_kernel(&Matrix::from_i64(2, 2, &[1, 1, 1, 1]));
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![rat(1), rat(-1)]]);
    }

    #[test]
    fn kernel_is_echelon_and_annihilated() {
        let m = Matrix::from_i64(2, 4, &[1, 2, 0, 3, 0, 0, 1, -1]);
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        assert!((&m * &k.transpose()).is_zero());
        assert_eq!(k.rref().0, k);
    }

    #[test]
    fn solve_and_inverse() {
        let a = Matrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.determinant(), rat(1));
        let singular = Matrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse().is_none());
        let b = Matrix::from_vec(2, 1, vec![rat(1), ratio(1, 2)]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
    }

    #[test]
    fn display_round_shape() {
        let a = Matrix::from_vec(1, 2, vec![ratio(1, 2), rat(-3)]).unwrap();
        assert_eq!(a.to_string(), "[1/2 -3]");
        assert_eq!(Matrix::zeros(0, 3).to_string(), "[]");
    }
}

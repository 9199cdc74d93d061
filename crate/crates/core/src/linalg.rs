//! Dense exact linear algebra over the scalar field (Gaussian elimination
//! with exact division; pivots are decided by exact zero tests).

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diag(entries: Vec<Scalar>) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zero(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| {
            if i == j {
                self.get(i, j).is_one()
            } else {
                self.get(i, j).is_zero()
            }
        }))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
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
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let pr = match pivot_row {
                Some(pr) => pr,
                None => continue,
            };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.get(row, col).inverse().unwrap();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(r, j) - &(&factor * m.get(row, j));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for col in 0..self.cols {
            if pivots.contains(&col) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[col] = Scalar::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.get(prow, col);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// One solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.get(prow, self.cols).clone();
        }
        Some(x)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose().neg()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let mut m = Matrix::identity(3);
        m.set(0, 1, Scalar::from_int(2));
        m.set(1, 2, Scalar::var(0));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let mut m = Matrix::zero(2, 2);
        m.set(0, 0, Scalar::one());
        m.set(1, 0, Scalar::one());
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_spans_kernel() {
        let mut m = Matrix::zero(2, 3);
        m.set(0, 0, Scalar::one());
        m.set(0, 1, Scalar::one());
        m.set(1, 2, Scalar::one());
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in ns {
            for i in 0..2 {
                let mut acc = Scalar::zero();
                for j in 0..3 {
                    acc = &acc + &(m.get(i, j) * &v[j]);
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut m = Matrix::zero(2, 2);
        m.set(0, 0, Scalar::one());
        m.set(1, 0, Scalar::one());
        let sol = m.solve(&[Scalar::from_int(3), Scalar::from_int(3)]).unwrap();
        assert_eq!(sol[0], Scalar::from_int(3));
        assert!(m.solve(&[Scalar::from_int(1), Scalar::from_int(2)]).is_none());
    }
}

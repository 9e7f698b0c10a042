//! Dense exact linear algebra over `Q`.

use num_traits::Zero;

use crate::scalar::{one, Q};
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Q>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Q::zero(); cols]; rows] }
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, c) in v.iter() {
                m.data[i][j] = c.clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| (i, self.data[i][j].clone())).collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = one() / self.data[r][c].clone();
            for x in self.data[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for k in c..self.cols {
                        let t = &self.data[r][k] * &f;
                        self.data[i][k] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the kernel.
    pub fn nullspace(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::basis(f);
                for (r, &p) in pivots.iter().enumerate() {
                    v.add_term(p, -m.data[r][f].clone());
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &Vector) -> Option<Vector> {
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i][..self.cols].clone_from_slice(&self.data[i]);
            aug.data[i][self.cols] = b.get(i);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        Some(
            pivots
                .iter()
                .enumerate()
                .map(|(r, &p)| (p, aug.data[r][self.cols].clone()))
                .collect(),
        )
    }
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = one();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j][i] = self.data[i][j].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self.data[i][k] * &other.data[k][j];
                    m.data[i][j] += t;
                }
            }
        }
        m
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols || self.rank() < self.rows {
            return None;
        }
        let cols: Vec<Vector> = (0..self.rows).map(|i| self.solve(&Vector::basis(i)).unwrap()).collect();
        Some(Matrix::from_columns(self.rows, &cols))
    }

    /// Coefficients of `det(x − M)`, constant term first, by
    /// Faddeev–LeVerrier.
    pub fn characteristic_polynomial(&self) -> Vec<Q> {
        let n = self.rows;
        assert_eq!(n, self.cols, "characteristic polynomial of a non-square matrix");
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            for i in 0..n {
                m.data[i][i] += coeffs[n - k + 1].clone();
            }
            m = self.mul(&m);
            let trace: Q = (0..n).map(|i| m.data[i][i].clone()).sum();
            coeffs[n - k] = -trace / Q::from_integer((k as i64).into());
        }
        coeffs
    }
}

/// Incrementally maintained echelon basis of a subspace, for membership tests
/// and reduction modulo the span.
#[derive(Clone, Debug, Default)]
pub struct Span {
    /// `(pivot, vector)` with the vector normalised to 1 at its pivot and
    /// zero at every other stored pivot.
    rows: Vec<(usize, Vector)>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            let c = v.get(*p);
            if !c.is_zero() {
                v.add_scaled(row, &-c);
            }
        }
        v
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.iter().next().map(|(p, c)| (p, c.clone())) else {
            return false;
        };
        let r = r.scaled(&(one() / c));
        for (_, row) in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                row.add_scaled(&r, &-c);
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn characteristic_polynomial_of_a_companion() {
        // companion matrix of x³ − 2x² + 3x − 4
        let m = mat(&[&[0, 0, 4], &[1, 0, -3], &[0, 1, 2]]);
        assert_eq!(m.characteristic_polynomial(), vec![q(-4), q(3), q(-2), q(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(m.transpose().transpose(), m);
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        let data: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Matrix { rows: data.len(), cols: data[0].len(), data }
    }

    fn apply(m: &Matrix, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for i in 0..m.rows {
            let mut s = Q::zero();
            for (j, c) in v.iter() {
                s += &m.data[i][j] * c;
            }
            out.add_term(i, s);
        }
        out
    }

    #[test]
    fn kernel_and_solve() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(apply(&m, &ker[0]).is_zero());
        let b: Vector = [(0, q(1)), (1, q(2)), (2, q(5))].into_iter().collect();
        let x = m.solve(&b).unwrap();
        assert_eq!(apply(&m, &x), b);
        assert!(m.solve(&Vector::basis(1)).is_none());
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        let a: Vector = [(0, q(1)), (1, q(1))].into_iter().collect();
        let b: Vector = [(1, q(1)), (2, q(1))].into_iter().collect();
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        let c: Vector = [(0, q(1)), (2, q(-1))].into_iter().collect();
        assert!(s.contains(&c));
        assert!(!s.insert(&c));
        assert!(!s.contains(&Vector::basis(0)));
    }
}

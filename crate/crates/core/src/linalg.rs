//! Dense exact linear algebra: matrices, echelon forms, nullspaces.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
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
                        let t = a.mul_ref(b);
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = F::zero();
                for (i, vi) in v.iter().enumerate() {
                    if !vi.is_zero() && !self[(i, j)].is_zero() {
                        acc += &vi.mul_ref(&self[(i, j)]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        if self.rows != self.cols {
            return Err(Error::BadShape { rows: self.rows, cols: self.cols, expected: self.rows });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv().expect("nonzero pivot");
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let factor = a[(r, col)].clone();
                    a.axpy_row(r, col, &factor);
                    inv.axpy_row(r, col, &factor);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, i: usize, s: &F) {
        for c in 0..self.cols {
            let v = self[(i, c)].mul_ref(s);
            self[(i, c)] = v;
        }
    }

    /// row[target] -= factor * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, factor: &F) {
        for c in 0..self.cols {
            if !self[(source, c)].is_zero() {
                let t = self[(source, c)].mul_ref(factor);
                self[(target, c)] -= &t;
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, col)].is_zero()) else { continue };
            a.swap_rows(r, p);
            let inv = a[(r, col)].inv().expect("nonzero pivot");
            a.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !a[(i, col)].is_zero() {
                    let factor = a[(i, col)].clone();
                    a.axpy_row(i, r, &factor);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of `{ v : A v = 0 }`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Coefficients `c_0..c_n` of `det(t·I − A)`, lowest degree first (Faddeev–LeVerrier).
    pub fn charpoly(&self) -> Vec<F> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut c = vec![F::zero(); n + 1];
        c[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &c[n - k + 1];
            }
            let am = self.mul(&next);
            let mut tr = F::zero();
            for i in 0..n {
                tr += &am[(i, i)];
            }
            c[n - k] = -(tr.checked_div(&F::from_integer(k as i64)).expect("k > 0"));
            m = next;
        }
        c
    }

    pub fn determinant(&self) -> F {
        let c = self.charpoly();
        if self.rows.is_multiple_of(2) {
            c[0].clone()
        } else {
            -c[0].clone()
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// Incrementally built row-echelon basis of a subspace of `F^cols`.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    cols: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the basis, returning the residue.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &r.mul_ref(&factor);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<F>) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &[F]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Fully reduced basis ordered by pivot column.
    pub fn reduced_basis(&self) -> Vec<Vec<F>> {
        if self.rows.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_rows(self.rows.iter().map(|(_, r)| r.clone()).collect());
        let (r, pivots) = m.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let prod = a.mul(&Matrix::from_rows(ns.to_vec()).transpose_for_test());
        assert!(prod.to_rows().iter().flatten().all(|x| *x == q(0)));
    }

    #[test]
    fn charpoly_and_det() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.charpoly(), vec![q(-1), q(0), q(1)]);
        assert_eq!(a.determinant(), q(-1));
        let b = m(&[&[2, 0, 0], &[0, 3, 0], &[1, 0, 5]]);
        assert_eq!(b.determinant(), q(30));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![q(1), q(1), q(0)]));
        assert!(e.insert(vec![q(0), q(1), q(1)]));
        assert!(!e.insert(vec![q(1), q(2), q(1)]));
        assert!(e.contains(vec![q(2), q(0), q(-2)]));
        assert!(!e.contains(vec![q(0), q(0), q(1)]));
        assert_eq!(e.reduced_basis().len(), 2);
    }

    impl<F: Field> Matrix<F> {
        fn transpose_for_test(&self) -> Matrix<F> {
            let mut t = Matrix::zeros(self.cols, self.rows);
            for i in 0..self.rows {
                for j in 0..self.cols {
                    t[(j, i)] = self[(i, j)].clone();
                }
            }
            t
        }
    }
}

//! Dense matrices and univariate polynomials over a generic scalar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Conjugate, Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// Returns `Some(s)` when the matrix equals `s * Id`.
    pub fn as_scalar(&self) -> Option<T> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0).clone();
        (*self == Matrix::identity(self.rows).scale(&s)).then_some(s)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        &(self * other) == &(other * self)
    }

    pub fn trace(&self) -> T {
        (0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Characteristic polynomial `det(x Id - M)` by the division-free
    /// Berkowitz algorithm.
    pub fn charpoly(&self) -> Poly<T> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        // coefficients, highest degree first
        let mut c: Vec<T> = vec![T::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            let a = self.get(r, r).clone();
            let row: Vec<T> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut col: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(T::one());
            toeplitz.push(-a);
            for _ in 0..r {
                let rc = row.iter().zip(&col).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                toeplitz.push(-rc);
                col = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * col[j].clone()))
                    .collect();
            }
            let mut next = vec![T::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j {
                        *slot = slot.clone() + toeplitz[i - j].clone() * cj.clone();
                    }
                }
            }
            c = next;
        }
        c.reverse();
        Poly::new(c)
    }
}

impl<T: Field> Matrix<T> {
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let pinv = a.get(col, col).inv()?;
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    a.add_row_multiple(r, col, &factor);
                    inv.add_row_multiple(r, col, &factor);
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return T::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a.get(col, col).clone();
            let pinv = p.inv().expect("nonzero pivot is invertible");
            det = det * p;
            for r in col + 1..n {
                if !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone() * pinv.clone();
                    a.add_row_multiple(r, col, &factor);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &T) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.data[i] = s.clone() * self.data[i].clone();
        }
    }

    /// row[target] -= factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for c in 0..self.cols {
            let s = self.data[source * self.cols + c].clone();
            if s.is_zero() {
                continue;
            }
            let i = target * self.cols + c;
            self.data[i] = self.data[i].clone() - factor.clone() * s;
        }
    }
}

impl<T: Ring + Conjugate> Matrix<T> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let i = r * rhs.cols + c;
                    out.data[i] = out.data[i].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

/// Dense univariate polynomial, coefficients in increasing degree, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    /// `x - root`
    pub fn linear(root: T) -> Self {
        Poly::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead_inv = divisor.leading()?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Poly::new(quot), Poly::new(rem)))
    }
}

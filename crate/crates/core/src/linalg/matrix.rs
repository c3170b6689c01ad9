//! Dense exact matrices over the integers and the rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Entry type for [`Matrix`].
pub trait Scalar: Clone + Num + Neg<Output = Self> + fmt::Debug + fmt::Display {}

impl Scalar for BigInt {}
impl Scalar for BigRational {}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows; every row must have the same positive length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Shape("matrix must have at least one row".into()));
        }
        let c = rows[0].len();
        if c == 0 {
            return Err(Error::Shape("matrix must have at least one column".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
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

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc = acc + a.clone() * rhs[(k, j)].clone();
                }
            }
            acc
        }))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone()))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone()))
    }

    /// `self · m · selfᵗ`, the congruence action used throughout.
    pub fn congruence(&self, m: &Self) -> Result<Self> {
        self.checked_mul(m)?.checked_mul(&self.transpose())
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
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

    /// row[dst] += k · row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * k.clone();
            let e = &mut self[(dst, j)];
            *e = e.clone() + v;
        }
    }

    /// col[dst] += k · col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * k.clone();
            let e = &mut self[(i, dst)];
            *e = e.clone() + v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self[(i, j)];
            *e = -e.clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let e = &mut self[(i, j)];
            *e = -e.clone();
        }
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

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Mathematical remainder in `[0, m)` for positive `m`.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
            .expect("well-formed literal matrix")
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::InvalidArgument("matrix is not unimodular".into()));
        }
        let inv = self.to_rat().inverse().ok_or_else(|| Error::Internal("singular unimodular".into()))?;
        inv.to_int().ok_or_else(|| Error::Internal("inverse of unimodular is not integral".into()))
    }

    /// Entrywise remainder in `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> IntMatrix {
        self.map(|x| x.mod_floor(m))
    }

    pub fn all_divisible_by(&self, q: &BigInt) -> bool {
        self.data.iter().all(|x| x.is_multiple_of(q))
    }
}

impl RatMatrix {
    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(self.map(|x| x.to_integer()))
    }

    /// `k · self` as an integer matrix; `None` if the product is not integral.
    pub fn scaled_to_int(&self, k: &BigInt) -> Option<IntMatrix> {
        self.scale(&BigRational::from_integer(k.clone())).to_int()
    }

    /// Entrywise fractional part in `[0, 1)`.
    pub fn frac(&self) -> RatMatrix {
        self.map(frac)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&r| !a[(r, k)].is_zero())?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let pivot = a[(k, k)].recip();
            for j in 0..n {
                a[(k, j)] = &a[(k, j)] * &pivot;
                inv[(k, j)] = &inv[(k, j)] * &pivot;
            }
            for i in 0..n {
                if i != k && !a[(i, k)].is_zero() {
                    let f = -a[(i, k)].clone();
                    a.add_row_multiple(i, k, &f);
                    inv.add_row_multiple(i, k, &f);
                }
            }
        }
        Some(inv)
    }
}

/// Skew-symmetric rational matrix, the deformation parameter of a rational
/// noncommutative torus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewRatForm {
    mat: RatMatrix,
}

impl SkewRatForm {
    pub fn new(mat: RatMatrix) -> Result<Self> {
        if !mat.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(Self { mat })
    }

    pub fn zero(n: usize) -> Self {
        Self { mat: RatMatrix::zeros(n, n) }
    }

    /// The n = 2 form with `θ₁₂ = x`.
    pub fn planar(x: BigRational) -> Self {
        let mut mat = RatMatrix::zeros(2, 2);
        mat[(0, 1)] = x.clone();
        mat[(1, 0)] = -x;
        Self { mat }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.mat
    }

    /// `T θ Tᵗ` for an integer matrix `T`.
    pub fn transform(&self, t: &IntMatrix) -> Result<SkewRatForm> {
        let m = t.to_rat().congruence(&self.mat)?;
        Ok(Self { mat: m })
    }

    pub fn shift(&self, k: &IntMatrix) -> Result<SkewRatForm> {
        SkewRatForm::new(self.mat.checked_add(&k.to_rat())?)
    }
}

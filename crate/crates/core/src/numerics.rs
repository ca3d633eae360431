//! Small dense real and complex matrices, the tolerance policy, and the 2×2
//! helper maps used when passing between Pauli matrices and their duals.
//!
//! Storage is row-major and the index convention is `(upper, lower) =
//! (row, column)`, so `m[(i, j)]` is the component `M^i_j`.

use std::fmt::Debug;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Shorthand for a complex literal.
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Scalar types a [`Matrix`] can hold.
pub trait Entry: Copy + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn modulus(self) -> f64;
    fn conjugate(self) -> Self;
    fn to_complex(self) -> C64;
    fn is_finite_entry(self) -> bool;
    /// Builds an entry from a `[re, im]` pair; `None` if the pair does not
    /// fit the scalar type.
    fn from_pair(re: f64, im: f64) -> Option<Self>;
}

impl Entry for f64 {
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn conjugate(self) -> Self {
        self
    }
    fn to_complex(self) -> C64 {
        C64::new(self, 0.0)
    }
    fn is_finite_entry(self) -> bool {
        self.is_finite()
    }
    fn from_pair(re: f64, im: f64) -> Option<Self> {
        (im == 0.0).then_some(re)
    }
}

impl Entry for C64 {
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn conjugate(self) -> Self {
        self.conj()
    }
    fn to_complex(self) -> C64 {
        self
    }
    fn is_finite_entry(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn from_pair(re: f64, im: f64) -> Option<Self> {
        Some(C64::new(re, im))
    }
}

/// Square `N×N` matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<T, const N: usize> {
    rows: [[T; N]; N],
}

pub type Mat2C = Matrix<C64, 2>;
pub type Mat4C = Matrix<C64, 4>;
pub type Mat4R = Matrix<f64, 4>;
pub type Vec4C = [C64; 4];

impl<T: Entry, const N: usize> Matrix<T, N> {
    pub const fn from_rows(rows: [[T; N]; N]) -> Self {
        Self { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut rows = [[T::zero(); N]; N];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = f(i, j);
            }
        }
        Self { rows }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: [T; N]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { T::zero() })
    }

    pub fn rows(&self) -> &[[T; N]; N] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].conjugate())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].conjugate())
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_fn(|i, j| k * self.rows[i][j])
    }

    pub fn map<U: Entry>(&self, mut f: impl FnMut(T) -> U) -> Matrix<U, N> {
        Matrix::from_fn(|i, j| f(self.rows[i][j]))
    }

    pub fn trace(&self) -> T {
        (0..N).fold(T::zero(), |acc, i| acc + self.rows[i][i])
    }

    pub fn apply(&self, v: &[T; N]) -> [T; N] {
        let mut out = [T::zero(); N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).fold(T::zero(), |acc, j| acc + self.rows[i][j] * v[j]);
        }
        out
    }

    pub fn to_complex(&self) -> Matrix<C64, N> {
        self.map(Entry::to_complex)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().fold(0.0, |acc: f64, x| acc.max(x.modulus()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_finite_entry())
    }

    /// `A·B + B·A`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> T {
        let mut a = self.rows;
        let mut det = T::one();
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&r, &s| a[r][col].modulus().total_cmp(&a[s][col].modulus()))
                .unwrap_or(col);
            if a[pivot][col].modulus() == 0.0 {
                return T::zero();
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det = det * a[col][col];
            for r in col + 1..N {
                let f = a[r][col] / a[col][col];
                for k in col..N {
                    let v = a[col][k];
                    a[r][k] = a[r][k] - f * v;
                }
            }
        }
        det
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: N,
            cols: N,
            data: self
                .rows
                .iter()
                .flatten()
                .map(|x| {
                    let z = x.to_complex();
                    [z.re, z.im]
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        if json.rows != N || json.cols != N {
            return Err(Error::format(format!(
                "expected a {N}x{N} matrix, got {}x{}",
                json.rows, json.cols
            )));
        }
        if json.data.len() != N * N {
            return Err(Error::format(format!(
                "expected {} entries, got {}",
                N * N,
                json.data.len()
            )));
        }
        let mut out = Self::zero();
        for (k, &[re, im]) in json.data.iter().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::format(format!("entry {k} is not finite")));
            }
            out.rows[k / N][k % N] =
                T::from_pair(re, im).ok_or_else(|| Error::format(format!("entry {k} has a nonzero imaginary part")))?;
        }
        Ok(out)
    }
}

impl Mat4C {
    /// Assembles `[[a, b], [c, d]]` from 2×2 blocks.
    pub fn from_blocks(a: &Mat2C, b: &Mat2C, c: &Mat2C, d: &Mat2C) -> Self {
        Self::from_fn(|i, j| {
            let blk = match (i / 2, j / 2) {
                (0, 0) => a,
                (0, 1) => b,
                (1, 0) => c,
                _ => d,
            };
            blk[(i % 2, j % 2)]
        })
    }

    pub fn block(&self, bi: usize, bj: usize) -> Mat2C {
        Mat2C::from_fn(|i, j| self[(2 * bi + i, 2 * bj + j)])
    }

    /// Real part, provided every imaginary part is within `tol`.
    pub fn to_real(&self, tol: f64) -> Result<Mat4R> {
        let worst = self.rows.iter().flatten().fold(0.0f64, |a, z| a.max(z.im.abs()));
        if worst > tol {
            return Err(Error::domain(format!(
                "matrix has imaginary residue {worst:e} above {tol:e}"
            )));
        }
        Ok(Mat4R::from_fn(|i, j| self[(i, j)].re))
    }
}

impl<T, const N: usize> Index<(usize, usize)> for Matrix<T, N> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.rows[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for Matrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.rows[i][j]
    }
}

impl<T: Entry, const N: usize> Add for Matrix<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] + rhs.rows[i][j])
    }
}

impl<T: Entry, const N: usize> Sub for Matrix<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] - rhs.rows[i][j])
    }
}

impl<T: Entry, const N: usize> Neg for Matrix<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.rows[i][j])
    }
}

impl<T: Entry, const N: usize> Mul for Matrix<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| (0..N).fold(T::zero(), |acc, k| acc + self.rows[i][k] * rhs.rows[k][j]))
    }
}

impl<T: Entry, const N: usize> Zero for Matrix<T, N> {
    fn zero() -> Self {
        Matrix::zero()
    }
    fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_zero())
    }
}

impl<T: Entry, const N: usize> One for Matrix<T, N> {
    fn one() -> Self {
        Matrix::identity()
    }
}

/// Wire form of a matrix: `{"rows": N, "cols": N, "data": [[re, im], ...]}`,
/// row-major. Real matrices carry `[re, 0]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

/// Comparison thresholds.
///
/// `eps_exact` applies to identities among matrices whose entries are small
/// Gaussian integers (exactly representable, so it is zero); `eps_float` to
/// identities involving sampled group elements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps_exact: f64,
    pub eps_float: f64,
}

impl Tolerance {
    pub const DEFAULT_FLOAT: f64 = 1e-9;

    pub fn new(eps_exact: f64, eps_float: f64) -> Result<Self> {
        if !(0.0 <= eps_exact && eps_exact <= eps_float && eps_float.is_finite()) {
            return Err(Error::contract(format!(
                "tolerances must satisfy 0 <= eps_exact <= eps_float (got {eps_exact}, {eps_float})"
            )));
        }
        Ok(Self { eps_exact, eps_float })
    }

    pub fn with_float(eps_float: f64) -> Result<Self> {
        Self::new(0.0, eps_float)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_exact: 0.0,
            eps_float: Self::DEFAULT_FLOAT,
        }
    }
}

/// True iff the largest entrywise difference is at most `tol`.
pub fn approx_eq<T: Entry, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

pub fn det2(a: &Mat2C) -> C64 {
    a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]
}

/// The adjugate map `[[a, b], [c, d]] ↦ [[d, -b], [-c, a]]`. Linear; for
/// `det A = ±1` it gives `A⁻¹ = det(A)·L(A)`.
pub fn l_map(a: &Mat2C) -> Mat2C {
    Mat2C::from_rows([[a[(1, 1)], -a[(0, 1)]], [-a[(1, 0)], a[(0, 0)]]])
}

/// Inverse of a unit-determinant 2×2 matrix.
pub fn inv2_unit_det(a: &Mat2C, tol: Tolerance) -> Result<Mat2C> {
    let d = det2(a);
    if (d - ONE).norm() > tol.eps_float {
        return Err(Error::domain(format!("not unit determinant (det = {d})")));
    }
    Ok(l_map(a))
}

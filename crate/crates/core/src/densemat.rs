//! Dense complex matrices.
//!
//! [`ComplexMatrix`] is the numeric carrier for everything else in the crate: block
//! operators, Choi matrices and inequality residuals are all built from it. Besides the
//! usual arithmetic it provides an LU determinant and a cyclic complex Jacobi solver for
//! Hermitian spectra, which is what every positivity decision ultimately rests on.
//!
//! Indices are 0-based and storage is row-major.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default tolerance for PSD decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

const HERMITIAN_TOL: f64 = 1e-10;
const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Spectrum of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Off-diagonal Frobenius mass left after the final sweep.
    pub offdiag_residual: f64,
}

impl EigenResult {
    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::Validation(format!(
                "non-finite entry at row {}, column {}",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix unit with a single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            values.iter().map(|&v| C64::new(v, 0.0)).collect(),
        )
    }

    pub fn from_diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    fn require_square(&self, what: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Shape(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Result<C64> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| self[(i, i)]).sum())
    }

    /// Kronecker product: block `(i, j)` of the result is `self[(i, j)] * other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = ComplexMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self[(i, j)];
                for r in 0..p {
                    for s in 0..q {
                        out[(i * p + r, j * q + s)] = x * other[(r, s)];
                    }
                }
            }
        }
        out
    }

    /// Determinant by LU factorisation with partial pivoting. The 0x0 matrix has determinant 1.
    pub fn determinant(&self) -> Result<C64> {
        let n = self.require_square("determinant")?;
        let mut lu = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let (piv, piv_abs) =
                (k..n)
                    .map(|r| (r, lu[r * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if piv_abs == 0.0 {
                return Ok(C64::new(0.0, 0.0));
            }
            if piv != k {
                for c in 0..n {
                    lu.swap(k * n + c, piv * n + c);
                }
                det = -det;
            }
            let pivot = lu[k * n + k];
            det *= pivot;
            for r in k + 1..n {
                let factor = lu[r * n + k] / pivot;
                if factor == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in k + 1..n {
                    let v = lu[k * n + c];
                    lu[r * n + c] -= factor * v;
                }
            }
        }
        Ok(det)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: C64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> ComplexMatrix {
        self.scale(C64::new(c, 0.0))
    }

    /// Largest entrywise modulus of `self - other`; infinite if the shapes differ.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `(X + X*) / 2`.
    pub fn hermitian_part(&self) -> ComplexMatrix {
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            out[(i, i)] = C64::new(self[(i, i)].re, 0.0);
            for j in i + 1..n {
                let v = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// Real spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.
    ///
    /// The input is symmetrised as `(X + X*) / 2` first. Inputs further than
    /// `1e-10 * max(1, ||X||_F)` from Hermitian are rejected.
    pub fn hermitian_eigenvalues(&self) -> Result<EigenResult> {
        let n = self.require_square("hermitian_eigenvalues")?;
        let scale = self.frobenius().max(1.0);
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::Domain(format!(
                "matrix is not Hermitian (defect {defect:e})"
            )));
        }
        let mut a = self.hermitian_part();
        let threshold = JACOBI_TOL * scale;

        let mut off = offdiag_mass(&a);
        let mut sweeps = 0;
        while off >= threshold && sweeps < JACOBI_MAX_SWEEPS {
            for p in 0..n {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, p, q);
                }
            }
            sweeps += 1;
            off = offdiag_mass(&a);
        }
        if off >= threshold {
            return Err(Error::Convergence {
                offdiag_residual: off,
            });
        }
        let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        values.sort_by(f64::total_cmp);
        Ok(EigenResult {
            values,
            offdiag_residual: off,
        })
    }

    /// `X >= 0` test: true iff the smallest eigenvalue is at least `-tol * max(1, ||X||_F)`.
    /// Returns the smallest eigenvalue alongside (`+inf` for the empty matrix).
    pub fn is_psd(&self, tol: f64) -> Result<(bool, f64)> {
        let eig = self.hermitian_eigenvalues()?;
        let min = eig.min().unwrap_or(f64::INFINITY);
        Ok((min >= -tol * self.frobenius().max(1.0), min))
    }

    /// Principal-style selection of rows and columns (0-based index lists).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub(crate) fn set_block(&mut self, r0: usize, c0: usize, block: &ComplexMatrix) {
        for i in 0..block.rows {
            let src = &block.data[i * block.cols..(i + 1) * block.cols];
            let start = (r0 + i) * self.cols + c0;
            self.data[start..start + block.cols].copy_from_slice(src);
        }
    }

    pub(crate) fn sub_block(
        &self,
        r0: usize,
        c0: usize,
        rows: usize,
        cols: usize,
    ) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    fn assert_same_shape(&self, other: &ComplexMatrix, op: &str) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "{op} of {}x{} and {}x{} matrices",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }
}

fn offdiag_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[(p, q)]` with the unitary `U = diag(1, e^{-i phi}) * J`, where `J` is a real
/// plane rotation and `phi` the phase of `a[(p, q)]`. Applies `a <- U* a U`.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let beta = apq.norm();
    if beta == 0.0 {
        return;
    }
    let w = apq.conj() / beta;
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let theta = (gamma - alpha) / (2.0 * beta);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = w * -s;
    let u_qq = w * c;

    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.assert_same_shape(rhs, "sum");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.assert_same_shape(rhs, "difference");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: C64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

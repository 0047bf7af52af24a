//! Block structure on `M_m(M_n)`: partial transpose, partial traces and realignment.
//!
//! Block `(i, j)` (0-based) of a [`BlockMatrix`] with shape `(m, n)` occupies rows
//! `i*n .. (i+1)*n` and columns `j*n .. (j+1)*n`, the same layout [`ComplexMatrix::kron`]
//! produces, so `X ⊗ Y` has block `(i, j)` equal to `X[i, j] * Y`.

use crate::densemat::{ComplexMatrix, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    m: usize,
    n: usize,
    mat: ComplexMatrix,
}

/// Outcome of [`BlockMatrix::is_ppt`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptVerdict {
    pub ppt: bool,
    pub min_eig: f64,
    pub min_eig_transposed: f64,
}

impl BlockMatrix {
    /// Tags an `mn x mn` matrix with the block shape `(m, n)`.
    pub fn new(m: usize, n: usize, mat: ComplexMatrix) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Shape(format!(
                "block shape ({m}, {n}) must be positive"
            )));
        }
        if mat.rows() != m * n || mat.cols() != m * n {
            return Err(Error::Shape(format!(
                "a ({m}, {n}) block matrix must be {0}x{0}, got {1}x{2}",
                m * n,
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(Self { m, n, mat })
    }

    /// Assembles a block matrix from an `m x m` grid of `n x n` blocks, given row by row.
    pub fn from_blocks(m: usize, n: usize, blocks: &[ComplexMatrix]) -> Result<Self> {
        if blocks.len() != m * m {
            return Err(Error::Shape(format!(
                "{} blocks supplied for an {m}x{m} grid",
                blocks.len()
            )));
        }
        if let Some(b) = blocks.iter().find(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::Shape(format!(
                "block of shape {}x{} where {n}x{n} was expected",
                b.rows(),
                b.cols()
            )));
        }
        let mut mat = ComplexMatrix::zeros(m * n, m * n);
        for (idx, b) in blocks.iter().enumerate() {
            mat.set_block((idx / m) * n, (idx % m) * n, b);
        }
        Self::new(m, n, mat)
    }

    pub fn identity(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            mat: ComplexMatrix::identity(m * n),
        }
    }

    /// `X ⊗ Y` with block shape `(X.rows, Y.rows)`.
    pub fn kron(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<Self> {
        if !x.is_square() || !y.is_square() {
            return Err(Error::Shape("Kronecker factors must be square".into()));
        }
        Self::new(x.rows(), y.rows(), x.kron(y))
    }

    /// Reinterprets the same entries under a different factorisation of the side length.
    pub fn reshape(&self, m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, self.mat.clone())
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMatrix {
        self.mat
    }

    /// The `n x n` block at `(i, j)`.
    pub fn block(&self, i: usize, j: usize) -> Result<ComplexMatrix> {
        if i >= self.m || j >= self.m {
            return Err(Error::Index(format!(
                "block ({i}, {j}) outside a {0}x{0} block grid",
                self.m
            )));
        }
        Ok(self.block_unchecked(i, j))
    }

    fn block_unchecked(&self, i: usize, j: usize) -> ComplexMatrix {
        self.mat.sub_block(i * self.n, j * self.n, self.n, self.n)
    }

    /// `A^τ`: block `(i, j)` of the result is block `(j, i)` of `self`. Blocks are moved, not
    /// transposed internally.
    pub fn partial_transpose(&self) -> BlockMatrix {
        let (m, n) = (self.m, self.n);
        let mat = ComplexMatrix::from_fn(m * n, m * n, |row, col| {
            let (i, r) = (row / n, row % n);
            let (j, s) = (col / n, col % n);
            self.mat[(j * n + r, i * n + s)]
        });
        BlockMatrix { m, n, mat }
    }

    /// `tr_1 A`: sum of the diagonal blocks (`n x n`).
    pub fn partial_trace_1(&self) -> ComplexMatrix {
        let n = self.n;
        ComplexMatrix::from_fn(n, n, |r, s| {
            (0..self.m).map(|i| self.mat[(i * n + r, i * n + s)]).sum()
        })
    }

    /// `tr_2 A`: the `m x m` matrix of blockwise traces.
    pub fn partial_trace_2(&self) -> ComplexMatrix {
        let n = self.n;
        ComplexMatrix::from_fn(self.m, self.m, |i, j| {
            (0..n).map(|r| self.mat[(i * n + r, j * n + r)]).sum()
        })
    }

    /// Realignment `Ã ∈ M_n(M_m)`: block `(r, s)` of the result has entry `(i, j)` equal to
    /// entry `(r, s)` of block `(i, j)` of `self`. Sends `X ⊗ Y` to `Y ⊗ X`.
    pub fn realign(&self) -> BlockMatrix {
        let (m, n) = (self.m, self.n);
        let mat = ComplexMatrix::from_fn(m * n, m * n, |row, col| {
            let (r, i) = (row / m, row % m);
            let (s, j) = (col / m, col % m);
            self.mat[(i * n + r, j * n + s)]
        });
        BlockMatrix { m: n, n: m, mat }
    }

    /// Full transpose (no conjugation), keeping the block shape.
    pub fn transpose(&self) -> BlockMatrix {
        BlockMatrix {
            m: self.m,
            n: self.n,
            mat: self.mat.transpose(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.m * self.n).map(|i| self.mat[(i, i)]).sum()
    }

    /// PPT test: both `A` and `A^τ` PSD within `tol`.
    pub fn is_ppt(&self, tol: f64) -> Result<PptVerdict> {
        let (a_ok, min_eig) = self.mat.is_psd(tol)?;
        let (t_ok, min_eig_transposed) = self.partial_transpose().mat.is_psd(tol)?;
        Ok(PptVerdict {
            ppt: a_ok && t_ok,
            min_eig,
            min_eig_transposed,
        })
    }

    pub fn scale_real(&self, c: f64) -> BlockMatrix {
        BlockMatrix {
            m: self.m,
            n: self.n,
            mat: self.mat.scale_real(c),
        }
    }
}

/// The unnormalised maximally entangled projector on `C^2 ⊗ C^2`: PSD but not PPT.
pub fn maximally_entangled_projector() -> BlockMatrix {
    let blocks = [
        ComplexMatrix::from_diag(&[1.0, 0.0]),
        ComplexMatrix::unit(2, 2, 0, 1),
        ComplexMatrix::unit(2, 2, 1, 0),
        ComplexMatrix::from_diag(&[0.0, 1.0]),
    ];
    BlockMatrix::from_blocks(2, 2, &blocks).expect("2x2 grid of 2x2 blocks")
}

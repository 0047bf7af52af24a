#![allow(dead_code)]

use blockineq::{BlockMatrix, ComplexMatrix, C64};
use proptest::prelude::*;

/// Determinant by Laplace expansion along the first row.
pub fn det_cofactor(a: &ComplexMatrix) -> C64 {
    let n = a.rows();
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    let mut total = C64::new(0.0, 0.0);
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = a.select(&rows, &cols);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += a[(0, j)] * det_cofactor(&minor) * sign;
    }
    total
}

pub fn kron_naive(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let (p, q, r, s) = (x.rows(), x.cols(), y.rows(), y.cols());
    let mut out = ComplexMatrix::zeros(p * r, q * s);
    for i in 0..p {
        for j in 0..q {
            for k in 0..r {
                for l in 0..s {
                    out[(i * r + k, j * s + l)] = x[(i, j)] * y[(k, l)];
                }
            }
        }
    }
    out
}

/// Entrywise definitions of the block operators on an m x m grid of n x n blocks.
pub fn partial_transpose_naive(a: &BlockMatrix) -> ComplexMatrix {
    let (m, n) = a.shape();
    ComplexMatrix::from_fn(m * n, m * n, |r, c| {
        let (i, k, j, l) = (r / n, r % n, c / n, c % n);
        a.mat()[(j * n + k, i * n + l)]
    })
}

pub fn partial_trace_1_naive(a: &BlockMatrix) -> ComplexMatrix {
    let (m, n) = a.shape();
    ComplexMatrix::from_fn(n, n, |k, l| {
        (0..m).map(|i| a.mat()[(i * n + k, i * n + l)]).sum()
    })
}

pub fn partial_trace_2_naive(a: &BlockMatrix) -> ComplexMatrix {
    let (m, n) = a.shape();
    ComplexMatrix::from_fn(m, m, |i, j| {
        (0..n).map(|k| a.mat()[(i * n + k, j * n + k)]).sum()
    })
}

pub fn realign_naive(a: &BlockMatrix) -> ComplexMatrix {
    let (m, n) = a.shape();
    ComplexMatrix::from_fn(m * n, m * n, |row, col| {
        let (r, i, s, j) = (row / m, row % m, col / m, col % m);
        a.mat()[(i * n + r, j * n + s)]
    })
}

pub fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    let scale = a.frobenius().max(b.frobenius()).max(1.0);
    a.max_abs_diff(b) <= tol * scale
}

pub fn entry() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| C64::new(re, im))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(entry(), rows * cols)
        .prop_map(move |d| ComplexMatrix::new(rows, cols, d).unwrap())
}

pub fn square(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

pub fn hermitian(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    square(max).prop_map(|x| x.hermitian_part())
}

pub fn block(max_m: usize, max_n: usize) -> impl Strategy<Value = BlockMatrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        matrix(m * n, m * n).prop_map(move |x| BlockMatrix::new(m, n, x).unwrap())
    })
}

/// Same-shape pair of block matrices.
pub fn block_pair(max_m: usize, max_n: usize) -> impl Strategy<Value = (BlockMatrix, BlockMatrix)> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        (matrix(m * n, m * n), matrix(m * n, m * n)).prop_map(move |(x, y)| {
            (
                BlockMatrix::new(m, n, x).unwrap(),
                BlockMatrix::new(m, n, y).unwrap(),
            )
        })
    })
}

/// Shape in the ranges used by the randomized suites.
pub fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=3)
}

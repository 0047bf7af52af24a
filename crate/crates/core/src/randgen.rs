//! Seed-addressable generators of PSD, separable and PPT block matrices.
//!
//! Every generator is a pure function of its arguments. Randomness comes from a ChaCha8
//! keystream keyed by `(seed, stream)` and read from position 0, so a draw depends only on
//! its own key and never on how many other draws happened before it or on which thread.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::blockops::BlockMatrix;
use crate::densemat::{ComplexMatrix, C64, DEFAULT_TOL};
use crate::error::{Error, Result};

pub const DEFAULT_PPT_ATTEMPTS: usize = 50;
const SEPARABLE_FALLBACK_TERMS: usize = 3;

/// SplitMix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from `seed` and a label.
pub fn sub_seed(seed: u64, label: u64) -> u64 {
    mix64(seed ^ mix64(label ^ 0x5851_F42D_4C95_7F2D))
}

/// Standard complex Gaussians (`E|z|^2 = 1`) via Box–Muller on a counter-based uniform stream.
pub struct GaussianStream {
    rng: ChaCha8Rng,
}

impl GaussianStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Uniform on the open interval (0, 1).
    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn complex_gaussian(&mut self) -> C64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt() * std::f64::consts::FRAC_1_SQRT_2;
        let theta = std::f64::consts::TAU * u2;
        C64::new(r * theta.cos(), r * theta.sin())
    }

    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_gaussian())
    }
}

/// `G* G` for a `rank x dim` complex Gaussian `G`; exactly Hermitian, PSD up to rounding.
pub fn random_psd(dim: usize, rank: usize, seed: u64) -> Result<ComplexMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::Usage(format!(
            "rank {rank} outside 1..={dim} for a {dim}x{dim} PSD draw"
        )));
    }
    let g = GaussianStream::new(seed, 0).gaussian_matrix(rank, dim);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v: C64 = (0..rank).map(|k| g[(k, i)].conj() * g[(k, j)]).sum();
            if i == j {
                out[(i, i)] = C64::new(v.re, 0.0);
            } else {
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
    }
    debug_assert!(out.is_psd(DEFAULT_TOL).map(|r| r.0).unwrap_or(false));
    Ok(out)
}

/// `random_psd` reinterpreted with block shape `(m, n)`.
pub fn random_block_psd(m: usize, n: usize, rank: usize, seed: u64) -> Result<BlockMatrix> {
    BlockMatrix::new(m, n, random_psd(m * n, rank, seed)?)
}

/// `Σ_t P_t ⊗ Q_t` with independent full-rank PSD factors; PPT by construction.
pub fn random_separable(m: usize, n: usize, terms: usize, seed: u64) -> Result<BlockMatrix> {
    if terms == 0 {
        return Err(Error::Usage(
            "a separable draw needs at least one term".into(),
        ));
    }
    let mut acc = ComplexMatrix::zeros(m * n, m * n);
    for t in 0..terms as u64 {
        let p = random_psd(m, m, sub_seed(seed, 2 * t))?;
        let q = random_psd(n, n, sub_seed(seed, 2 * t + 1))?;
        acc = &acc + &p.kron(&q);
    }
    let out = BlockMatrix::new(m, n, acc)?;
    debug_assert!(out.is_ppt(DEFAULT_TOL).map(|v| v.ppt).unwrap_or(false));
    Ok(out)
}

/// Which path produced a [`random_ppt`] output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "path")]
pub enum PptSource {
    /// Accepted full-rank draw, 0-based attempt index.
    Rejection {
        attempt: usize,
    },
    SeparableFallback,
}

/// Rejection-samples full-rank PSD draws until one is PPT, falling back to a separable draw
/// after `max_attempts` rejections.
pub fn random_ppt(
    m: usize,
    n: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<(BlockMatrix, PptSource)> {
    if max_attempts == 0 {
        return Err(Error::Usage("max_attempts must be at least 1".into()));
    }
    for attempt in 0..max_attempts {
        let a = random_block_psd(m, n, m * n, sub_seed(seed, attempt as u64))?;
        if a.is_ppt(DEFAULT_TOL)?.ppt {
            return Ok((a, PptSource::Rejection { attempt }));
        }
    }
    let a = random_separable(m, n, SEPARABLE_FALLBACK_TERMS, sub_seed(seed, u64::MAX))?;
    Ok((a, PptSource::SeparableFallback))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    /// Full-rank Gram matrix; `rank_or_terms` is ignored.
    GramPsd,
    /// Separable sum with `rank_or_terms` product terms.
    Separable,
    /// Rejection-sampled PPT matrix; `rank_or_terms` is the attempt budget.
    PptRejection,
    /// Gram matrix of rank `rank_or_terms`.
    LowRank,
}

impl std::str::FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gram_psd" => Ok(GenKind::GramPsd),
            "separable" => Ok(GenKind::Separable),
            "ppt_rejection" | "ppt" => Ok(GenKind::PptRejection),
            "low_rank" => Ok(GenKind::LowRank),
            other => Err(Error::Usage(format!("unknown generator kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub m: usize,
    pub n: usize,
    pub rank_or_terms: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<(BlockMatrix, Option<PptSource>)> {
        let (m, n) = (self.m, self.n);
        match self.kind {
            GenKind::GramPsd => Ok((random_block_psd(m, n, m * n, self.seed)?, None)),
            GenKind::LowRank => Ok((random_block_psd(m, n, self.rank_or_terms, self.seed)?, None)),
            GenKind::Separable => {
                Ok((random_separable(m, n, self.rank_or_terms, self.seed)?, None))
            }
            GenKind::PptRejection => {
                let (a, src) = random_ppt(m, n, self.seed, self.rank_or_terms)?;
                Ok((a, Some(src)))
            }
        }
    }
}

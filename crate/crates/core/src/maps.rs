//! Linear maps `M_n -> M_k` stored by their images of the matrix units, with Choi and
//! co-Choi matrices and certification of complete positivity / copositivity.
//!
//! A map is completely positive iff its Choi matrix `[Φ(E_ij)]` is PSD and completely
//! copositive iff its co-Choi matrix `[Φ(E_ji)]` is PSD. Intermediate `m`-copositivity can only
//! be falsified here, by sampling ([`LinearMapRep::random_cocopositivity_witness`]).

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blockops::BlockMatrix;
use crate::densemat::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::randgen::{random_block_psd, sub_seed};

pub const DEFAULT_WITNESS_TRIALS: usize = 500;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearMapRep {
    n: usize,
    k: usize,
    /// `Φ(E_ij)` at index `i * n + j`.
    basis_images: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinMap {
    /// `X ↦ (tr X) I + X`
    Phi,
    /// `X ↦ (tr X) I - X`
    Psi,
    Identity,
    Transpose,
    /// `X ↦ [tr X]`, codomain `M_1`.
    TraceMap,
}

impl BuiltinMap {
    pub const ALL: [BuiltinMap; 5] = [
        BuiltinMap::Phi,
        BuiltinMap::Psi,
        BuiltinMap::Identity,
        BuiltinMap::Transpose,
        BuiltinMap::TraceMap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinMap::Phi => "phi",
            BuiltinMap::Psi => "psi",
            BuiltinMap::Identity => "identity",
            BuiltinMap::Transpose => "transpose",
            BuiltinMap::TraceMap => "trace_map",
        }
    }
}

impl FromStr for BuiltinMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinMap::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown map '{s}'")))
    }
}

/// A random PSD input whose co-image `[Φ(A_ji)]` is not PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct CopositivityWitness {
    pub trial: usize,
    pub seed: u64,
    pub input: BlockMatrix,
    pub image_min_eig: f64,
}

impl LinearMapRep {
    pub fn new(n: usize, k: usize, basis_images: Vec<ComplexMatrix>) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::Shape(format!(
                "map dimensions ({n}, {k}) must be positive"
            )));
        }
        if basis_images.len() != n * n {
            return Err(Error::Shape(format!(
                "{} basis images supplied, {} expected",
                basis_images.len(),
                n * n
            )));
        }
        if let Some(pos) = basis_images
            .iter()
            .position(|b| b.rows() != k || b.cols() != k)
        {
            return Err(Error::Shape(format!("basis image {pos} is not {k}x{k}")));
        }
        Ok(Self { n, k, basis_images })
    }

    pub fn builtin(which: BuiltinMap, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("map dimension must be at least 1".into()));
        }
        let mut images = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = ComplexMatrix::unit(n, n, i, j);
                let delta = if i == j { 1.0 } else { 0.0 };
                let img = match which {
                    BuiltinMap::Phi => &ComplexMatrix::identity(n).scale_real(delta) + &e,
                    BuiltinMap::Psi => &ComplexMatrix::identity(n).scale_real(delta) - &e,
                    BuiltinMap::Identity => e,
                    BuiltinMap::Transpose => e.transpose(),
                    BuiltinMap::TraceMap => ComplexMatrix::from_diag(&[delta]),
                };
                images.push(img);
            }
        }
        let k = if which == BuiltinMap::TraceMap { 1 } else { n };
        Self::new(n, k, images)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis_images(&self) -> &[ComplexMatrix] {
        &self.basis_images
    }

    /// `Φ(E_ij)`.
    pub fn basis_image(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.basis_images[i * self.n + j]
    }

    /// `Φ(X) = Σ X[i, j] Φ(E_ij)`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::Shape(format!(
                "map on M_{} applied to a {}x{} matrix",
                self.n,
                x.rows(),
                x.cols()
            )));
        }
        let mut acc = ComplexMatrix::zeros(self.k, self.k);
        for i in 0..self.n {
            for j in 0..self.n {
                let c = x[(i, j)];
                if c != C64::new(0.0, 0.0) {
                    acc = &acc + &self.basis_image(i, j).scale(c);
                }
            }
        }
        Ok(acc)
    }

    /// Choi matrix `[Φ(E_ij)]`, block shape `(n, k)`. Only `m = n` is meaningful here.
    pub fn choi_matrix(&self, m: usize) -> Result<BlockMatrix> {
        if m != self.n {
            return Err(Error::Usage(format!(
                "Choi matrix of a map on M_{} requested with m = {m}",
                self.n
            )));
        }
        let blocks: Vec<ComplexMatrix> = (0..self.n * self.n)
            .map(|idx| self.basis_images[idx].clone())
            .collect();
        BlockMatrix::from_blocks(self.n, self.k, &blocks)
    }

    /// Co-Choi matrix `[Φ(E_ji)]`, the partial transpose of the Choi matrix.
    pub fn co_choi_matrix(&self) -> BlockMatrix {
        let n = self.n;
        let blocks: Vec<ComplexMatrix> = (0..n * n)
            .map(|idx| self.basis_image(idx % n, idx / n).clone())
            .collect();
        BlockMatrix::from_blocks(n, self.k, &blocks).expect("basis images validated")
    }

    pub fn certify_completely_positive(&self, tol: f64) -> Result<(bool, f64)> {
        self.choi_matrix(self.n)?.mat().is_psd(tol)
    }

    pub fn certify_completely_copositive(&self, tol: f64) -> Result<(bool, f64)> {
        self.co_choi_matrix().mat().is_psd(tol)
    }

    /// `[Φ(A_ji)]` for a block input `A ∈ M_m(M_n)`.
    pub fn co_image(&self, a: &BlockMatrix) -> Result<BlockMatrix> {
        if a.n() != self.n {
            return Err(Error::Shape(format!(
                "map on M_{} applied to blocks of size {}",
                self.n,
                a.n()
            )));
        }
        let m = a.m();
        let mut blocks = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                blocks.push(self.apply(&a.block(j, i)?)?);
            }
        }
        BlockMatrix::from_blocks(m, self.k, &blocks)
    }

    /// Searches seeded random PSD inputs in `M_m(M_n)` for one whose co-image fails the PSD
    /// test. Trial `t` draws a Gram matrix of rank `1 + t mod (mn)` from `sub_seed(seed, t)`.
    /// Returns the witness with the smallest trial index, re-verified. `None` certifies nothing.
    pub fn random_cocopositivity_witness(
        &self,
        m: usize,
        trials: usize,
        seed: u64,
        tol: f64,
        exec: Exec,
    ) -> Result<Option<CopositivityWitness>> {
        if m == 0 {
            return Err(Error::Usage("block count m must be at least 1".into()));
        }
        let dim = m * self.n;
        let attempt = |t: usize| -> Result<Option<CopositivityWitness>> {
            let s = sub_seed(seed, t as u64);
            let input = random_block_psd(m, self.n, 1 + t % dim, s)?;
            let (ok, min) = self.co_image(&input)?.mat().is_psd(tol)?;
            Ok((!ok).then_some(CopositivityWitness {
                trial: t,
                seed: s,
                input,
                image_min_eig: min,
            }))
        };
        // Errors are surfaced as hits so the first failing trial wins either way.
        let hit = exec.find_map_first(trials, |t| attempt(t).transpose());
        match hit {
            None => Ok(None),
            Some(Err(e)) => Err(e),
            Some(Ok(w)) => {
                let (input_psd, _) = w.input.mat().is_psd(tol)?;
                let (image_psd, _) = self.co_image(&w.input)?.mat().is_psd(tol)?;
                if input_psd && !image_psd {
                    Ok(Some(w))
                } else {
                    Err(Error::Domain(format!(
                        "witness from trial {} failed re-verification",
                        w.trial
                    )))
                }
            }
        }
    }
}

/// Row diagonal dominance with a nonnegative diagonal: `Re a_ii >= Σ_{j≠i} |a_ij|` and
/// `a_ii` real and nonnegative. Exact for small-integer entries.
pub fn is_diagonally_dominant(mat: &ComplexMatrix) -> bool {
    if !mat.is_square() {
        return false;
    }
    (0..mat.rows()).all(|i| {
        let d = mat[(i, i)];
        let off: f64 = (0..mat.cols())
            .filter(|&j| j != i)
            .map(|j| mat[(i, j)].norm())
            .sum();
        d.im == 0.0 && d.re >= 0.0 && d.re >= off
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemat::DEFAULT_TOL;

    #[test]
    fn construction_validates() {
        assert!(LinearMapRep::new(2, 2, vec![ComplexMatrix::identity(2); 3]).is_err());
        assert!(LinearMapRep::new(1, 2, vec![ComplexMatrix::identity(3)]).is_err());
        assert!(matches!(
            "bogus".parse::<BuiltinMap>(),
            Err(Error::Usage(_))
        ));
        assert_eq!(
            "trace_map".parse::<BuiltinMap>().unwrap(),
            BuiltinMap::TraceMap
        );
        assert!(LinearMapRep::builtin(BuiltinMap::Phi, 0).is_err());
    }

    #[test]
    fn apply_cases() {
        let id = LinearMapRep::builtin(BuiltinMap::Identity, 2).unwrap();
        let e12 = ComplexMatrix::unit(2, 2, 0, 1);
        assert_eq!(id.apply(&e12).unwrap(), e12);

        let psi = LinearMapRep::builtin(BuiltinMap::Psi, 2).unwrap();
        assert_eq!(
            psi.apply(&ComplexMatrix::identity(2)).unwrap(),
            ComplexMatrix::identity(2)
        );
        assert!(psi.apply(&ComplexMatrix::identity(3)).is_err());

        let tr = LinearMapRep::builtin(BuiltinMap::TraceMap, 3).unwrap();
        let x = ComplexMatrix::from_diag(&[1.0, 2.0, 4.0]);
        assert_eq!(tr.apply(&x).unwrap(), ComplexMatrix::from_diag(&[7.0]));
    }

    #[test]
    fn basis_images_of_builtins() {
        let psi = LinearMapRep::builtin(BuiltinMap::Psi, 2).unwrap();
        assert_eq!(
            psi.basis_image(0, 0),
            &ComplexMatrix::from_diag(&[0.0, 1.0])
        );
        let phi = LinearMapRep::builtin(BuiltinMap::Phi, 2).unwrap();
        assert_eq!(phi.basis_image(0, 1), &ComplexMatrix::unit(2, 2, 0, 1));
    }

    #[test]
    fn choi_cases() {
        let id = LinearMapRep::builtin(BuiltinMap::Identity, 2).unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        for &(r, c) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            expected[(r, c)] = C64::new(1.0, 0.0);
        }
        assert_eq!(id.choi_matrix(2).unwrap().mat(), &expected);
        assert!(matches!(id.choi_matrix(3), Err(Error::Usage(_))));

        let tr = LinearMapRep::builtin(BuiltinMap::TraceMap, 2).unwrap();
        assert_eq!(
            tr.choi_matrix(2).unwrap().mat(),
            &ComplexMatrix::identity(2)
        );
    }

    #[test]
    fn identity_co_choi_is_swap() {
        let id = LinearMapRep::builtin(BuiltinMap::Identity, 2).unwrap();
        let co = id.co_choi_matrix();
        let swap = ComplexMatrix::from_fn(4, 4, |r, c| {
            let (i, j) = (r / 2, r % 2);
            C64::new(if c == j * 2 + i { 1.0 } else { 0.0 }, 0.0)
        });
        assert_eq!(co.mat(), &swap);
        let (ok, min) = id.certify_completely_copositive(DEFAULT_TOL).unwrap();
        assert!(!ok);
        assert!((min + 1.0).abs() < 1e-12);
    }

    #[test]
    fn certifications() {
        for n in 1..=4 {
            let tr = LinearMapRep::builtin(BuiltinMap::TraceMap, n).unwrap();
            assert!(tr.certify_completely_positive(DEFAULT_TOL).unwrap().0);
            let t = LinearMapRep::builtin(BuiltinMap::Transpose, n).unwrap();
            assert!(t.certify_completely_copositive(DEFAULT_TOL).unwrap().0);
        }
        let t = LinearMapRep::builtin(BuiltinMap::Transpose, 2).unwrap();
        assert!(!t.certify_completely_positive(DEFAULT_TOL).unwrap().0);
    }

    #[test]
    fn diagonal_dominance_helper() {
        assert!(is_diagonally_dominant(&ComplexMatrix::identity(3)));
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(!is_diagonally_dominant(&m));
        let neg = ComplexMatrix::from_diag(&[-1.0]);
        assert!(!is_diagonally_dominant(&neg));
    }

    #[test]
    fn witness_search() {
        let psi = LinearMapRep::builtin(BuiltinMap::Psi, 2).unwrap();
        assert!(psi
            .random_cocopositivity_witness(2, 200, 1, DEFAULT_TOL, Exec::Parallel)
            .unwrap()
            .is_none());
        let id = LinearMapRep::builtin(BuiltinMap::Identity, 2).unwrap();
        let w = id
            .random_cocopositivity_witness(2, 200, 1, DEFAULT_TOL, Exec::Parallel)
            .unwrap()
            .expect("identity is not 2-copositive");
        let seq = id
            .random_cocopositivity_witness(2, 200, 1, DEFAULT_TOL, Exec::Sequential)
            .unwrap()
            .unwrap();
        assert_eq!(w, seq);
        assert!(w.image_min_eig < 0.0);
        assert!(id
            .random_cocopositivity_witness(2, 0, 1, DEFAULT_TOL, Exec::Parallel)
            .unwrap()
            .is_none());
    }
}

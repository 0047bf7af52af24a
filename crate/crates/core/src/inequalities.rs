//! Verifiers for the partial-trace, block and submatrix inequalities.
//!
//! Each checker builds the residual matrices (or scalar gaps) whose nonnegativity is the
//! inequality, tests them, and returns a [`CheckReport`]. A failed inequality is reported, not
//! raised; only violated preconditions (input not PSD / not PPT, bad index sets) are errors.
//!
//! Tolerance model: a residual `X - Y` passes when its smallest eigenvalue is at least
//! `-tol * max(1, ||X||_F, ||Y||_F)`; a scalar inequality `lhs <= rhs` passes when
//! `rhs - lhs >= -tol * max(1, |lhs|, |rhs|)`.

use serde::{Deserialize, Serialize};

use crate::blockops::BlockMatrix;
use crate::densemat::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Sorted, duplicate-free subset of `{0, .., universe - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet {
    universe: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(universe: usize, members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Usage(format!(
                "index set {members:?} is not strictly increasing"
            )));
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= universe) {
            return Err(Error::Index(format!(
                "index {bad} outside a universe of size {universe}"
            )));
        }
        Ok(Self { universe, members })
    }

    pub fn full(universe: usize) -> Self {
        Self {
            universe,
            members: (0..universe).collect(),
        }
    }

    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            members: Vec::new(),
        }
    }

    /// Subset whose members are the set bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self {
            universe,
            members: (0..universe).filter(|&i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut members: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        members.sort_unstable();
        members.dedup();
        IndexSet {
            universe: self.universe,
            members,
        }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            universe: self.universe,
            members: self
                .members
                .iter()
                .copied()
                .filter(|i| other.members.binary_search(i).is_ok())
                .collect(),
        }
    }

    /// `|self \ other|`.
    pub fn difference_len(&self, other: &IndexSet) -> usize {
        self.len() - self.intersection(other).len()
    }
}

/// All ordered pairs `(α, β)` of subsets of `{0..n-1}` with `|α| = |β| >= 1`.
pub fn equal_cardinality_pairs(n: usize) -> Vec<(IndexSet, IndexSet)> {
    assert!(n < 64);
    let masks: Vec<u64> = (1..1u64 << n).collect();
    let mut pairs = Vec::new();
    for &a in &masks {
        for &b in &masks {
            if a.count_ones() == b.count_ones() {
                pairs.push((IndexSet::from_mask(n, a), IndexSet::from_mask(n, b)));
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportShape {
    Block { m: usize, n: usize },
    Square { dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    ResidualMinEig,
    ScalarGap,
}

/// One tested quantity of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
    pub value: f64,
    pub scale: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub passed: bool,
    /// Smallest eigenvalue over all residual matrices.
    pub residual_min_eig: Option<f64>,
    /// Smallest scalar gap `rhs - lhs`.
    pub scalar_gap: Option<f64>,
    pub tolerance: f64,
    pub shape: ReportShape,
    pub seed_info: Option<String>,
    pub note: Option<String>,
    pub components: Vec<Component>,
}

impl CheckReport {
    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn with_seed_info(mut self, info: impl Into<String>) -> Self {
        self.seed_info = Some(info.into());
        self
    }

    /// How far the worst component is from its threshold, in units of its scale; negative
    /// values beyond `-tolerance` mean failure. A report without components scores
    /// `-inf` when failed and `+inf` when passed.
    pub fn margin(&self) -> f64 {
        if self.components.is_empty() {
            return if self.passed {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        self.components
            .iter()
            .map(|c| c.value / c.scale)
            .fold(f64::INFINITY, f64::min)
    }
}

struct ReportBuilder {
    name: &'static str,
    tol: f64,
    shape: ReportShape,
    note: Option<String>,
    components: Vec<Component>,
}

impl ReportBuilder {
    fn new(name: &'static str, tol: f64, shape: ReportShape) -> Self {
        Self {
            name,
            tol,
            shape,
            note: None,
            components: Vec::new(),
        }
    }

    /// Tests `plus - minus >= 0`.
    fn residual(
        &mut self,
        name: &str,
        plus: &ComplexMatrix,
        minus: &ComplexMatrix,
    ) -> Result<&mut Self> {
        let r = plus - minus;
        let min = r.hermitian_eigenvalues()?.min().unwrap_or(f64::INFINITY);
        let scale = plus.frobenius().max(minus.frobenius()).max(1.0);
        self.components.push(Component {
            name: name.to_string(),
            kind: ComponentKind::ResidualMinEig,
            value: min,
            scale,
            passed: min >= -self.tol * scale,
        });
        Ok(self)
    }

    /// Tests `lhs <= rhs`.
    fn gap(&mut self, name: &str, lhs: f64, rhs: f64) -> &mut Self {
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let value = rhs - lhs;
        self.components.push(Component {
            name: name.to_string(),
            kind: ComponentKind::ScalarGap,
            value,
            scale,
            passed: value >= -self.tol * scale,
        });
        self
    }

    fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.note = Some(note.into());
        self
    }

    fn finish(&mut self) -> CheckReport {
        let min_of = |kind| {
            self.components
                .iter()
                .filter(|c| c.kind == kind)
                .map(|c| c.value)
                .reduce(f64::min)
        };
        CheckReport {
            check_name: self.name.to_string(),
            passed: self.components.iter().all(|c| c.passed),
            residual_min_eig: min_of(ComponentKind::ResidualMinEig),
            scalar_gap: min_of(ComponentKind::ScalarGap),
            tolerance: self.tol,
            shape: self.shape,
            seed_info: None,
            note: self.note.take(),
            components: std::mem::take(&mut self.components),
        }
    }
}

fn block_shape(a: &BlockMatrix) -> ReportShape {
    ReportShape::Block { m: a.m(), n: a.n() }
}

fn require_psd(mat: &ComplexMatrix, tol: f64, what: &str) -> Result<()> {
    let (ok, min) = mat.is_psd(tol)?;
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{what} is not positive semidefinite (min eigenvalue {min:e})"
        )))
    }
}

fn require_ppt(a: &BlockMatrix, tol: f64) -> Result<()> {
    let v = a.is_ppt(tol)?;
    if v.ppt {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "input is not PPT (min eigenvalue {:e}, partial transpose min eigenvalue {:e})",
            v.min_eig, v.min_eig_transposed
        )))
    }
}

fn re_trace(x: &ComplexMatrix) -> f64 {
    x.trace().expect("square").re
}

fn trace_of_product(x: &ComplexMatrix, y: &ComplexMatrix) -> C64 {
    x.matmul(y)
        .and_then(|p| p.trace())
        .expect("conformable square factors")
}

/// `(tr_2 A^τ) ⊗ I_n >= A^τ` and `I_m ⊗ tr_1 A^τ >= A^τ`, for any PSD `A`.
pub fn check_copositive_partial_trace(a: &BlockMatrix, tol: f64) -> Result<CheckReport> {
    require_psd(a.mat(), tol, "input")?;
    let at = a.partial_transpose();
    let (im, in_) = (
        ComplexMatrix::identity(a.m()),
        ComplexMatrix::identity(a.n()),
    );
    Ok(
        ReportBuilder::new("copositive_partial_trace", tol, block_shape(a))
            .residual("tr2_side", &at.partial_trace_2().kron(&in_), at.mat())?
            .residual("tr1_side", &im.kron(&at.partial_trace_1()), at.mat())?
            .finish(),
    )
}

/// Residuals `I_m ⊗ tr_1 A - A` and `(tr_2 A) ⊗ I_n - A`.
pub fn ppt_reduction_residuals(a: &BlockMatrix) -> [ComplexMatrix; 2] {
    let (im, in_) = (
        ComplexMatrix::identity(a.m()),
        ComplexMatrix::identity(a.n()),
    );
    [
        &im.kron(&a.partial_trace_1()) - a.mat(),
        &a.partial_trace_2().kron(&in_) - a.mat(),
    ]
}

/// `I_m ⊗ tr_1 A >= A` and `(tr_2 A) ⊗ I_n >= A`, for PPT `A`.
pub fn check_ppt_reduction(a: &BlockMatrix, tol: f64) -> Result<CheckReport> {
    require_ppt(a, tol)?;
    let (im, in_) = (
        ComplexMatrix::identity(a.m()),
        ComplexMatrix::identity(a.n()),
    );
    Ok(ReportBuilder::new("ppt_reduction", tol, block_shape(a))
        .residual("tr1_side", &im.kron(&a.partial_trace_1()), a.mat())?
        .residual("tr2_side", &a.partial_trace_2().kron(&in_), a.mat())?
        .finish())
}

fn combined_sides(a: &BlockMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (im, in_) = (
        ComplexMatrix::identity(a.m()),
        ComplexMatrix::identity(a.n()),
    );
    let sum = &im.kron(&a.partial_trace_1()) + &a.partial_trace_2().kron(&in_);
    (sum, a.mat().scale_real(2.0))
}

/// Residual `I_m ⊗ tr_1 A + (tr_2 A) ⊗ I_n - 2A`.
pub fn combined_residual(a: &BlockMatrix) -> ComplexMatrix {
    let (plus, minus) = combined_sides(a);
    &plus - &minus
}

/// `I_m ⊗ tr_1 A + (tr_2 A) ⊗ I_n >= 2A`, and the same for `A^τ`, for PPT `A`.
pub fn check_combined_reduction(a: &BlockMatrix, tol: f64) -> Result<CheckReport> {
    require_ppt(a, tol)?;
    let (p, q) = combined_sides(a);
    let (pt, qt) = combined_sides(&a.partial_transpose());
    Ok(
        ReportBuilder::new("combined_reduction", tol, block_shape(a))
            .residual("direct", &p, &q)?
            .residual("partial_transpose", &pt, &qt)?
            .finish(),
    )
}

/// `I_m ⊗ tr_1 A + (tr_2 A) ⊗ I_n <= A + (tr A) I`, for PSD `A`. Proved for `m = 2`; the
/// general case is Ando's.
pub fn check_upper_bound(a: &BlockMatrix, tol: f64) -> Result<CheckReport> {
    require_psd(a.mat(), tol, "input")?;
    let (m, n) = a.shape();
    let upper = a.mat() + &ComplexMatrix::identity(m * n).scale(a.trace());
    let lower = &ComplexMatrix::identity(m).kron(&a.partial_trace_1())
        + &a.partial_trace_2().kron(&ComplexMatrix::identity(n));
    let note = match m {
        2 => "m = 2 (direct block proof)",
        1 => "m = 1 (degenerate)",
        _ => "m > 2 (general block count, Ando)",
    };
    Ok(ReportBuilder::new("upper_bound", tol, block_shape(a))
        .residual("upper_minus_lower", &upper, &lower)?
        .note(note)
        .finish())
}

/// `(tr_2 A^τ) ⊗ I_n >= -A^τ` and `I_m ⊗ tr_1 A^τ >= -A^τ`, for PSD `A`.
pub fn check_phi_lower(a: &BlockMatrix, tol: f64) -> Result<CheckReport> {
    require_psd(a.mat(), tol, "input")?;
    let at = a.partial_transpose();
    let neg = -at.mat();
    let (im, in_) = (
        ComplexMatrix::identity(a.m()),
        ComplexMatrix::identity(a.n()),
    );
    Ok(ReportBuilder::new("phi_lower", tol, block_shape(a))
        .residual("tr2_side", &at.partial_trace_2().kron(&in_), &neg)?
        .residual("tr1_side", &im.kron(&at.partial_trace_1()), &neg)?
        .finish())
}

/// The two halves `X`, `Y` of `G = X - Y` for a 2-block PSD `[[A, B], [B*, C]]`:
/// `G = [[(tr C)A - BB*, (tr B*)B - AC], [(tr B)B* - CA, (tr A)C - B*B]]`.
fn block2_sides(a2: &BlockMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a2.n();
    let a = a2.block(0, 0).expect("2x2 grid");
    let b = a2.block(0, 1).expect("2x2 grid");
    let c = a2.block(1, 1).expect("2x2 grid");
    let bs = b.conj_transpose();
    let tr_b = b.trace().expect("square");
    let mm = |x: &ComplexMatrix, y: &ComplexMatrix| x.matmul(y).expect("n x n");

    let mut plus = ComplexMatrix::zeros(2 * n, 2 * n);
    plus.set_block(0, 0, &a.scale(c.trace().expect("square")));
    plus.set_block(0, n, &b.scale(tr_b.conj()));
    plus.set_block(n, 0, &bs.scale(tr_b));
    plus.set_block(n, n, &c.scale(a.trace().expect("square")));

    let mut minus = ComplexMatrix::zeros(2 * n, 2 * n);
    minus.set_block(0, 0, &mm(&b, &bs));
    minus.set_block(0, n, &mm(&a, &c));
    minus.set_block(n, 0, &mm(&c, &a));
    minus.set_block(n, n, &mm(&bs, &b));
    (plus, minus)
}

/// The matrix `G` of the 2-block trace inequality.
pub fn block2_matrix(a2: &BlockMatrix) -> Result<ComplexMatrix> {
    if a2.m() != 2 {
        return Err(Error::Usage(format!(
            "expected 2 blocks per side, got {}",
            a2.m()
        )));
    }
    let (plus, minus) = block2_sides(a2);
    Ok(&plus - &minus)
}

/// Scalar sides shared by the 2-block trace inequalities.
struct TraceTerms {
    tr_ac: f64,
    tr_bsb: f64,
    tra_trc: f64,
    abs_tr_b_sq: f64,
}

impl TraceTerms {
    fn new(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Self {
        Self {
            tr_ac: trace_of_product(a, c).re,
            tr_bsb: trace_of_product(&b.conj_transpose(), b).re,
            tra_trc: re_trace(a) * re_trace(c),
            abs_tr_b_sq: b.trace().expect("square").norm_sqr(),
        }
    }

    /// `tr(AC) + tr(B*B) <= trA trC + |tr B|^2`
    fn sum_form(&self) -> (f64, f64) {
        (self.tr_ac + self.tr_bsb, self.tra_trc + self.abs_tr_b_sq)
    }

    /// `tr(B*B) - tr(AC) <= trA trC - |tr B|^2`
    fn difference_form(&self) -> (f64, f64) {
        (self.tr_bsb - self.tr_ac, self.tra_trc - self.abs_tr_b_sq)
    }

    /// `tr(AC) - tr(B*B) <= trA trC - |tr B|^2`
    fn reverse_difference_form(&self) -> (f64, f64) {
        (self.tr_ac - self.tr_bsb, self.tra_trc - self.abs_tr_b_sq)
    }
}

/// For PSD `[[A, B], [B*, C]]`: the block matrix `G` is PSD, and
/// `tr(AC) + tr(B*B) <= trA trC + |trB|^2` (`eq8`),
/// `tr(B*B) - tr(AC) <= trA trC - |trB|^2` (`eq9`).
/// Also records the companion `tr(AC) - tr(B*B) <= trA trC - |trB|^2` (`eq9_reverse`),
/// which together with `eq9` gives the absolute-value form.
pub fn check_block2(a2: &BlockMatrix, tol: f64) -> Result<CheckReport> {
    if a2.m() != 2 {
        return Err(Error::Usage(format!(
            "expected 2 blocks per side, got {}",
            a2.m()
        )));
    }
    require_psd(a2.mat(), tol, "input")?;
    let (plus, minus) = block2_sides(a2);
    let terms = TraceTerms::new(&a2.block(0, 0)?, &a2.block(0, 1)?, &a2.block(1, 1)?);
    let (l8, r8) = terms.sum_form();
    let (l9, r9) = terms.difference_form();
    let (l9r, r9r) = terms.reverse_difference_form();
    Ok(ReportBuilder::new("block2", tol, block_shape(a2))
        .residual("g_matrix", &plus, &minus)?
        .gap("eq8", l8, r8)
        .gap("eq9", l9, r9)
        .gap("eq9_reverse", l9r, r9r)
        .finish())
}

fn check_universe(a: &ComplexMatrix, sets: &[&IndexSet]) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Shape(
            "submatrix selection needs a square matrix".into(),
        ));
    }
    if let Some(s) = sets.iter().find(|s| s.universe() != a.rows()) {
        return Err(Error::Shape(format!(
            "index set over {} elements used on a {}x{} matrix",
            s.universe(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// `A[α, β]`: rows in `α`, columns in `β`, both in ascending order.
pub fn submatrix(a: &ComplexMatrix, alpha: &IndexSet, beta: &IndexSet) -> Result<ComplexMatrix> {
    check_universe(a, &[alpha, beta])?;
    Ok(a.select(alpha.members(), beta.members()))
}

fn require_same_cardinality(alpha: &IndexSet, beta: &IndexSet) -> Result<usize> {
    if alpha.len() != beta.len() {
        return Err(Error::Usage(format!(
            "|α| = {} but |β| = {}",
            alpha.len(),
            beta.len()
        )));
    }
    Ok(alpha.len())
}

/// `[[A[α], A[α,β]], [A[α,β]*, A[β]]]` as a 2-block matrix; PSD whenever `A` is.
pub fn overlap_embedding(
    a: &ComplexMatrix,
    alpha: &IndexSet,
    beta: &IndexSet,
) -> Result<BlockMatrix> {
    let k = require_same_cardinality(alpha, beta)?;
    if k == 0 {
        return Err(Error::Usage("index sets must be nonempty".into()));
    }
    check_universe(a, &[alpha, beta])?;
    let ab = a.select(alpha.members(), beta.members());
    let blocks = [
        a.select(alpha.members(), alpha.members()),
        ab.conj_transpose(),
        a.select(beta.members(), beta.members()),
    ];
    BlockMatrix::from_blocks(
        2,
        k,
        &[blocks[0].clone(), ab, blocks[1].clone(), blocks[2].clone()],
    )
}

/// For PSD `A` and `|α| = |β| >= 1`:
/// `tr(A[α]A[β]) + tr(A[α,β]* A[α,β]) <= tr A[α] tr A[β] + |tr A[α,β]|^2` (`theorem8`) and
/// `|tr(A[α]A[β]) - tr(A[α,β]* A[α,β])| <= tr A[α] tr A[β] - |tr A[α,β]|^2` (`theorem9`).
pub fn check_trace_submatrix(
    a: &ComplexMatrix,
    alpha: &IndexSet,
    beta: &IndexSet,
    tol: f64,
) -> Result<CheckReport> {
    let k = require_same_cardinality(alpha, beta)?;
    if k == 0 {
        return Err(Error::Usage("index sets must be nonempty".into()));
    }
    check_universe(a, &[alpha, beta])?;
    require_psd(a, tol, "input")?;
    let terms = TraceTerms::new(
        &a.select(alpha.members(), alpha.members()),
        &a.select(alpha.members(), beta.members()),
        &a.select(beta.members(), beta.members()),
    );
    let (l8, r8) = terms.sum_form();
    let rhs9 = terms.tra_trc - terms.abs_tr_b_sq;
    let lhs9 = (terms.tr_ac - terms.tr_bsb).abs();
    Ok(ReportBuilder::new(
        "trace_submatrix",
        tol,
        ReportShape::Square { dim: a.rows() },
    )
    .gap("theorem8", l8, r8)
    .gap("theorem9", lhs9, rhs9)
    .note(format!(
        "alpha={:?} beta={:?}",
        alpha.members(),
        beta.members()
    ))
    .finish())
}

/// `det A[α∪β] det A[α∩β] <= det A[α] det A[β] - |det A[α,β]|^2` for PSD `A`, `|α| = |β|`,
/// `α ≠ β`. The determinant of an empty selection is 1.
pub fn check_det_submatrix(
    a: &ComplexMatrix,
    alpha: &IndexSet,
    beta: &IndexSet,
    tol: f64,
) -> Result<CheckReport> {
    require_same_cardinality(alpha, beta)?;
    if alpha == beta {
        return Err(Error::Usage(
            "determinantal inequality requires α ≠ β (it fails trivially for α = β)".into(),
        ));
    }
    check_universe(a, &[alpha, beta])?;
    require_psd(a, tol, "input")?;
    let det = |r: &IndexSet, c: &IndexSet| a.select(r.members(), c.members()).determinant();
    let union = alpha.union(beta);
    let inter = alpha.intersection(beta);
    let lhs = (det(&union, &union)? * det(&inter, &inter)?).re;
    let rhs = (det(alpha, alpha)? * det(beta, beta)?).re - det(alpha, beta)?.norm_sqr();
    Ok(
        ReportBuilder::new("det_submatrix", tol, ReportShape::Square { dim: a.rows() })
            .gap("eqlin", lhs, rhs)
            .note(format!(
                "alpha={:?} beta={:?} |alpha\\beta|={}",
                alpha.members(),
                beta.members(),
                alpha.difference_len(beta)
            ))
            .finish(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockops::maximally_entangled_projector;
    use crate::densemat::DEFAULT_TOL;

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(3, vec![1, 1]).is_err());
        assert!(IndexSet::new(3, vec![2, 1]).is_err());
        assert!(matches!(IndexSet::new(3, vec![3]), Err(Error::Index(_))));
        let a = set(5, &[0, 2, 4]);
        let b = set(5, &[1, 2]);
        assert_eq!(a.union(&b).members(), &[0, 1, 2, 4]);
        assert_eq!(a.intersection(&b).members(), &[2]);
        assert_eq!(a.difference_len(&b), 2);
        assert_eq!(IndexSet::from_mask(4, 0b1010).members(), &[1, 3]);
    }

    #[test]
    fn pair_enumeration_counts() {
        // Σ_{k>=1} C(n,k)^2 = C(2n,n) - 1
        assert_eq!(equal_cardinality_pairs(4).len(), 69);
        assert_eq!(equal_cardinality_pairs(5).len(), 251);
    }

    #[test]
    fn submatrix_cases() {
        let a = ComplexMatrix::from_fn(4, 4, |i, j| C64::new((i * 4 + j) as f64, 0.0));
        assert_eq!(
            submatrix(&a, &IndexSet::full(4), &IndexSet::full(4)).unwrap(),
            a
        );
        let e = submatrix(&a, &IndexSet::empty(4), &IndexSet::empty(4)).unwrap();
        assert_eq!((e.rows(), e.cols()), (0, 0));
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(
            submatrix(&i4, &set(4, &[0, 2]), &set(4, &[1, 3])).unwrap(),
            ComplexMatrix::zeros(2, 2)
        );
        assert!(matches!(
            submatrix(&i4, &set(3, &[0]), &set(4, &[0])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn identity_inputs_pass_everything() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let a = BlockMatrix::identity(m, n);
            for r in [
                check_copositive_partial_trace(&a, DEFAULT_TOL).unwrap(),
                check_ppt_reduction(&a, DEFAULT_TOL).unwrap(),
                check_combined_reduction(&a, DEFAULT_TOL).unwrap(),
                check_upper_bound(&a, DEFAULT_TOL).unwrap(),
                check_phi_lower(&a, DEFAULT_TOL).unwrap(),
            ] {
                assert!(r.passed, "{} failed on identity", r.check_name);
                assert!(r.residual_min_eig.unwrap() >= 0.0);
            }
            let combined = combined_residual(&a);
            assert_eq!(
                combined,
                ComplexMatrix::identity(m * n).scale_real((m + n - 2) as f64)
            );
        }
    }

    #[test]
    fn upper_bound_identity_value() {
        for n in 1..=4 {
            let r = check_upper_bound(&BlockMatrix::identity(2, n), DEFAULT_TOL).unwrap();
            assert!((r.residual_min_eig.unwrap() - (n as f64 - 1.0)).abs() < 1e-12);
        }
        let r = check_upper_bound(&BlockMatrix::identity(3, 2), DEFAULT_TOL).unwrap();
        assert!(r.note.unwrap().contains("Ando"));
    }

    #[test]
    fn precondition_errors() {
        let not_psd = BlockMatrix::new(
            2,
            1,
            ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            check_copositive_partial_trace(&not_psd, DEFAULT_TOL),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_upper_bound(&not_psd, DEFAULT_TOL),
            Err(Error::Precondition(_))
        ));
        let ent = maximally_entangled_projector();
        assert!(matches!(
            check_ppt_reduction(&ent, DEFAULT_TOL),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_combined_reduction(&ent, DEFAULT_TOL),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_block2(&BlockMatrix::identity(3, 2), DEFAULT_TOL),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn entangled_input_passes_copositive_checks() {
        let ent = maximally_entangled_projector();
        assert!(
            check_copositive_partial_trace(&ent, DEFAULT_TOL)
                .unwrap()
                .passed
        );
        let r = check_phi_lower(&ent, DEFAULT_TOL).unwrap();
        assert!(r.passed);
        assert!(r.residual_min_eig.unwrap().abs() < 1e-12);
    }

    #[test]
    fn block2_identity_blocks() {
        for n in 1..=4 {
            let i = ComplexMatrix::identity(n);
            let a2 = BlockMatrix::from_blocks(2, n, &[i.clone(), i.clone(), i.clone(), i.clone()])
                .unwrap();
            let r = check_block2(&a2, DEFAULT_TOL).unwrap();
            assert!(r.passed);
            let nf = n as f64;
            assert!((r.component("eq8").unwrap().value - (2.0 * nf * nf - 2.0 * nf)).abs() < 1e-12);
            // tr(B*B) - tr(AC) = 0 and trA trC - |trB|^2 = 0: equality
            assert!(r.component("eq9").unwrap().value.abs() < 1e-12);
            let g = block2_matrix(&a2).unwrap();
            let expected = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0])
                .unwrap()
                .kron(&i)
                .scale_real(nf - 1.0);
            assert!(g.max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn block2_decoupled() {
        let a = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 3.0]).unwrap();
        let c = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 4.0]).unwrap();
        let z = ComplexMatrix::zeros(2, 2);
        let a2 =
            BlockMatrix::from_blocks(2, 2, &[a.clone(), z.clone(), z.clone(), c.clone()]).unwrap();
        let g = block2_matrix(&a2).unwrap();
        // off-diagonal blocks are -AC and -CA; diagonal blocks (tr C)A and (tr A)C
        assert!(g.sub_block(0, 0, 2, 2).max_abs_diff(&a.scale_real(5.0)) < 1e-14);
        assert!(g.sub_block(2, 2, 2, 2).max_abs_diff(&c.scale_real(5.0)) < 1e-14);
        assert!(check_block2(&a2, DEFAULT_TOL).unwrap().passed);
    }

    #[test]
    fn det_hand_cases() {
        let a = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let r = check_det_submatrix(&a, &set(2, &[0]), &set(2, &[1]), DEFAULT_TOL).unwrap();
        assert!(r.passed);
        assert!(r.scalar_gap.unwrap().abs() < 1e-12);

        let a =
            ComplexMatrix::from_real(3, 3, &[2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 2.0]).unwrap();
        let r = check_det_submatrix(&a, &set(3, &[0, 1]), &set(3, &[1, 2]), DEFAULT_TOL).unwrap();
        assert!(r.passed);
        assert!(r.scalar_gap.unwrap().abs() < 1e-12);

        assert!(matches!(
            check_det_submatrix(&a, &set(3, &[0]), &set(3, &[0]), DEFAULT_TOL),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            check_det_submatrix(&a, &set(3, &[0]), &set(3, &[0, 1]), DEFAULT_TOL),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn trace_submatrix_hand_cases() {
        let i5 = ComplexMatrix::identity(5);
        let r =
            check_trace_submatrix(&i5, &set(5, &[0, 1]), &set(5, &[2, 3]), DEFAULT_TOL).unwrap();
        assert!(r.passed);
        // LHS tr(I·I) + 0 = |α|, RHS |α|^2
        assert!((r.component("theorem8").unwrap().value - 2.0).abs() < 1e-14);
        assert!(matches!(
            check_trace_submatrix(&i5, &set(5, &[0]), &set(5, &[1, 2]), DEFAULT_TOL),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn overlap_embedding_cases() {
        let a =
            ComplexMatrix::from_real(3, 3, &[2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 2.0]).unwrap();
        let full = IndexSet::full(3);
        let e = overlap_embedding(&a, &full, &full).unwrap();
        let ones = ComplexMatrix::from_real(2, 2, &[1.0; 4]).unwrap();
        assert_eq!(e.mat(), &ones.kron(&a));
        assert!(matches!(
            overlap_embedding(&a, &set(3, &[0]), &set(3, &[0, 1])),
            Err(Error::Usage(_))
        ));
    }
}

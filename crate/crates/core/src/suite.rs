//! Randomized verification suites and the run report the CLI prints.
//!
//! Every trial draws its input from a sub-seed derived from `(seed, suite, group, trial)`, so
//! a run is a pure function of its [`SuiteConfig`] regardless of thread count. Trials may
//! execute concurrently; results are merged in trial order.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::blockops::{maximally_entangled_projector, BlockMatrix};
use crate::densemat::{ComplexMatrix, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::inequalities::{
    check_block2, check_combined_reduction, check_copositive_partial_trace, check_det_submatrix,
    check_phi_lower, check_ppt_reduction, check_trace_submatrix, check_upper_bound,
    equal_cardinality_pairs, CheckReport, Component, ComponentKind, IndexSet, ReportShape,
};
use crate::io::{BlockDoc, MatrixDoc};
use crate::maps::{is_diagonally_dominant, BuiltinMap, LinearMapRep, DEFAULT_WITNESS_TRIALS};
use crate::randgen::{
    random_block_psd, random_ppt, random_psd, random_separable, sub_seed, DEFAULT_PPT_ATTEMPTS,
};

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_SHAPES: [(usize, usize); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];
pub const DEFAULT_DIMS: [usize; 2] = [4, 5];
pub const DEFAULT_SEED: u64 = 42;
/// Exhaustive pair enumeration is exponential in the dimension.
pub const MAX_SUBMATRIX_DIM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Theorem2,
    Corollary3,
    Combined,
    UpperBound,
    Corollary6,
    Block2,
    #[serde(rename = "thm8_9")]
    Thm8And9,
    Eqlin,
    ChoiCerts,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Theorem2,
        Suite::Corollary3,
        Suite::Combined,
        Suite::UpperBound,
        Suite::Corollary6,
        Suite::Block2,
        Suite::Thm8And9,
        Suite::Eqlin,
        Suite::ChoiCerts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem2 => "theorem2",
            Suite::Corollary3 => "corollary3",
            Suite::Combined => "combined",
            Suite::UpperBound => "upper_bound",
            Suite::Corollary6 => "corollary6",
            Suite::Block2 => "block2",
            Suite::Thm8And9 => "thm8_9",
            Suite::Eqlin => "eqlin",
            Suite::ChoiCerts => "choi_certs",
        }
    }

    fn index(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64
    }

    fn uses_shapes(self) -> bool {
        matches!(
            self,
            Suite::Theorem2
                | Suite::Corollary3
                | Suite::Combined
                | Suite::UpperBound
                | Suite::Corollary6
                | Suite::Block2
        )
    }

    fn uses_dims(self) -> bool {
        matches!(self, Suite::Thm8And9 | Suite::Eqlin | Suite::ChoiCerts)
    }

    /// Parses a list of suite names; `all` expands to every suite. Order is preserved and
    /// duplicates are dropped.
    pub fn parse_list<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for name in names {
            let parsed: Vec<Suite> = match name.as_ref() {
                "all" => Suite::ALL.to_vec(),
                other => vec![other.parse()?],
            };
            for s in parsed {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Usage(format!("unknown output format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub trials: usize,
    pub shapes: Vec<(usize, usize)>,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub tol: f64,
    pub output_format: OutputFormat,
    /// Execution strategy; results do not depend on it.
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            trials: DEFAULT_TRIALS,
            shapes: DEFAULT_SHAPES.to_vec(),
            dims: DEFAULT_DIMS.to_vec(),
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
            output_format: OutputFormat::Text,
            exec: Exec::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Usage("no suites selected".into()));
        }
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Usage(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.suites.iter().any(|s| s.uses_shapes()) {
            if self.shapes.is_empty() {
                return Err(Error::Usage(
                    "selected suites need at least one shape".into(),
                ));
            }
            if let Some(&(m, n)) = self.shapes.iter().find(|&&(m, n)| m == 0 || n == 0) {
                return Err(Error::Usage(format!("invalid shape {m}x{n}")));
            }
        }
        if self.suites.iter().any(|s| s.uses_dims()) {
            if self.dims.is_empty() {
                return Err(Error::Usage(
                    "selected suites need at least one dimension".into(),
                ));
            }
            if let Some(&d) = self.dims.iter().find(|&&d| d == 0 || d > MAX_SUBMATRIX_DIM) {
                return Err(Error::Usage(format!(
                    "dimension {d} outside 1..={MAX_SUBMATRIX_DIM}"
                )));
            }
        }
        Ok(())
    }
}

/// Results for one shape or dimension of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupResult {
    pub label: String,
    pub checks: usize,
    pub failures: usize,
    /// The check closest to (or furthest past) its threshold; earliest trial wins ties.
    pub worst: Option<CheckReport>,
    pub failing: Vec<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: usize,
    pub failures: usize,
    pub groups: Vec<GroupResult>,
}

/// Input that made a check fail, in the matrix file format, with the sub-seed that drew it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: Suite,
    pub group: String,
    pub trial: Option<usize>,
    pub sub_seed: Option<u64>,
    pub check_name: String,
    pub file_name: String,
    pub matrix: serde_json::Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub failures: usize,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteResult>,
    pub counterexamples: Vec<Counterexample>,
    pub summary: Summary,
    /// Wall-clock time; the only field that differs between identical runs.
    pub duration_seconds: f64,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.summary.all_passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.suite == suite)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            for g in &s.groups {
                let margin = g
                    .worst
                    .as_ref()
                    .map(|w| format!("{:+.3e}", w.margin()))
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    out,
                    "{:<4} {:<12} {:<26} checks={:<7} failures={:<5} worst_margin={}",
                    if g.failures == 0 { "PASS" } else { "FAIL" },
                    s.suite.name(),
                    g.label,
                    g.checks,
                    g.failures,
                    margin
                );
            }
        }
        for c in &self.counterexamples {
            let _ = writeln!(
                out,
                "counterexample: {} {} trial={} sub_seed={} -> {}",
                c.suite.name(),
                c.group,
                c.trial.map_or("-".into(), |t| t.to_string()),
                c.sub_seed.map_or("-".into(), |s| s.to_string()),
                c.file_name
            );
        }
        let _ = writeln!(
            out,
            "{}: {} checks, {} failures ({:.2}s)",
            if self.summary.all_passed {
                "ALL PASSED"
            } else {
                "FAILED"
            },
            self.summary.checks,
            self.summary.failures,
            self.duration_seconds
        );
        out
    }
}

/// Input of one trial, kept only when something failed.
#[derive(Debug, Clone)]
enum Input {
    Block(BlockMatrix),
    Square(ComplexMatrix),
}

impl Input {
    fn to_value(&self) -> serde_json::Value {
        match self {
            Input::Block(b) => serde_json::to_value(BlockDoc::from(b)),
            Input::Square(m) => serde_json::to_value(MatrixDoc::from(m)),
        }
        .expect("matrix serialises")
    }
}

/// Aggregate of the checks run on one input.
struct TrialOutcome {
    checks: usize,
    worst: Option<CheckReport>,
    failing: Vec<CheckReport>,
    input: Input,
    trial: Option<usize>,
    sub_seed: Option<u64>,
}

impl TrialOutcome {
    fn new(input: Input, trial: Option<usize>, sub_seed: Option<u64>) -> Self {
        Self {
            checks: 0,
            worst: None,
            failing: Vec::new(),
            input,
            trial,
            sub_seed,
        }
    }

    fn push(&mut self, report: CheckReport) {
        self.checks += 1;
        if !report.passed {
            self.failing.push(report.clone());
        }
        if self
            .worst
            .as_ref()
            .is_none_or(|w| report.margin() < w.margin())
        {
            self.worst = Some(report);
        }
    }
}

/// Turns a checker result into a report. Precondition and other non-numerical errors become
/// failing reports; eigensolver non-convergence aborts the run.
fn settle(
    result: Result<CheckReport>,
    name: &str,
    shape: ReportShape,
    tol: f64,
    seed_info: &str,
) -> Result<CheckReport> {
    match result {
        Ok(r) => Ok(r.with_seed_info(seed_info)),
        Err(e @ Error::Convergence { .. }) => Err(e),
        Err(e) => Ok(CheckReport {
            check_name: name.to_string(),
            passed: false,
            residual_min_eig: None,
            scalar_gap: None,
            tolerance: tol,
            shape,
            seed_info: Some(seed_info.to_string()),
            note: Some(e.to_string()),
            components: Vec::new(),
        }),
    }
}

fn trial_seed(seed: u64, suite: Suite, group: usize, trial: usize) -> u64 {
    sub_seed(
        sub_seed(sub_seed(seed, suite.index()), group as u64),
        trial as u64,
    )
}

fn seed_info(suite: Suite, group: &str, trial: usize, s: u64) -> String {
    format!(
        "suite={} group={group} trial={trial} sub_seed={s}",
        suite.name()
    )
}

/// Gram PSD input for trial `t`: rank cycles through full, half and 1.
fn gram_input(m: usize, n: usize, t: usize, s: u64) -> Result<BlockMatrix> {
    let dim = m * n;
    let rank = match t % 3 {
        0 => dim,
        1 => dim.div_ceil(2),
        _ => 1,
    };
    random_block_psd(m, n, rank, s)
}

/// PPT input for trial `t`: separable sums on even trials, rejection-sampled on odd ones.
fn ppt_input(m: usize, n: usize, t: usize, s: u64) -> Result<BlockMatrix> {
    if t.is_multiple_of(2) {
        random_separable(m, n, 1 + (t / 2) % 3, s)
    } else {
        Ok(random_ppt(m, n, s, DEFAULT_PPT_ATTEMPTS)?.0)
    }
}

type BlockCheck = fn(&BlockMatrix, f64) -> Result<CheckReport>;

fn block_checks(suite: Suite) -> &'static [(&'static str, BlockCheck)] {
    match suite {
        Suite::Theorem2 => &[("copositive_partial_trace", check_copositive_partial_trace)],
        Suite::Corollary3 => &[("ppt_reduction", check_ppt_reduction)],
        Suite::Combined => &[("combined_reduction", check_combined_reduction)],
        Suite::UpperBound => &[("upper_bound", check_upper_bound)],
        Suite::Corollary6 => &[("phi_lower", check_phi_lower)],
        Suite::Block2 => &[("block2", check_block2)],
        _ => &[],
    }
}

fn run_block_checks(
    suite: Suite,
    a: BlockMatrix,
    tol: f64,
    info: &str,
    trial: Option<usize>,
    s: Option<u64>,
) -> Result<TrialOutcome> {
    let shape = ReportShape::Block { m: a.m(), n: a.n() };
    let mut out = TrialOutcome::new(Input::Block(a), trial, s);
    let Input::Block(a) = &out.input else {
        unreachable!()
    };
    let reports = block_checks(suite)
        .iter()
        .map(|(name, f)| settle(f(a, tol), name, shape, tol, info))
        .collect::<Result<Vec<_>>>()?;
    for r in reports {
        out.push(r);
    }
    Ok(out)
}

fn run_submatrix_checks(
    suite: Suite,
    a: ComplexMatrix,
    pairs: &[(IndexSet, IndexSet)],
    tol: f64,
    info: &str,
    trial: Option<usize>,
    s: Option<u64>,
) -> Result<TrialOutcome> {
    let shape = ReportShape::Square { dim: a.rows() };
    let mut out = TrialOutcome::new(Input::Square(a), trial, s);
    let Input::Square(a) = &out.input else {
        unreachable!()
    };
    let mut reports = Vec::with_capacity(pairs.len());
    for (alpha, beta) in pairs {
        let r = match suite {
            Suite::Thm8And9 => settle(
                check_trace_submatrix(a, alpha, beta, tol),
                "trace_submatrix",
                shape,
                tol,
                info,
            )?,
            Suite::Eqlin if alpha != beta => settle(
                check_det_submatrix(a, alpha, beta, tol),
                "det_submatrix",
                shape,
                tol,
                info,
            )?,
            _ => continue,
        };
        reports.push(r);
    }
    for r in reports {
        out.push(r);
    }
    Ok(out)
}

struct GroupAgg {
    result: GroupResult,
    counterexamples: Vec<Counterexample>,
}

fn aggregate(suite: Suite, label: String, outcomes: Vec<TrialOutcome>) -> GroupAgg {
    let mut result = GroupResult {
        label: label.clone(),
        checks: 0,
        failures: 0,
        worst: None,
        failing: Vec::new(),
    };
    let mut counterexamples = Vec::new();
    for o in outcomes {
        result.checks += o.checks;
        result.failures += o.failing.len();
        if let Some(w) = o.worst {
            if result
                .worst
                .as_ref()
                .is_none_or(|cur| w.margin() < cur.margin())
            {
                result.worst = Some(w);
            }
        }
        if let Some(first) = o.failing.first() {
            let file_name = format!(
                "{}-{}-{}.json",
                suite.name(),
                label.replace(|c: char| !c.is_ascii_alphanumeric(), "_"),
                o.trial
                    .map_or_else(|| "input".to_string(), |t| format!("trial{t}"))
            );
            counterexamples.push(Counterexample {
                suite,
                group: label.clone(),
                trial: o.trial,
                sub_seed: o.sub_seed,
                check_name: first.check_name.clone(),
                file_name,
                matrix: o.input.to_value(),
            });
        }
        result.failing.extend(o.failing);
    }
    GroupAgg {
        result,
        counterexamples,
    }
}

fn collect<T>(results: Vec<Result<T>>) -> Result<Vec<T>> {
    results.into_iter().collect()
}

/// Shapes a block suite runs over; the 2-block suite uses m = 2 with each distinct inner size.
fn group_shapes(suite: Suite, shapes: &[(usize, usize)]) -> Vec<(usize, usize)> {
    if suite != Suite::Block2 {
        return shapes.to_vec();
    }
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &(_, n) in shapes {
        if !out.contains(&(2, n)) {
            out.push((2, n));
        }
    }
    out
}

fn run_random_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<GroupAgg>> {
    let mut groups = Vec::new();
    match suite {
        Suite::Thm8And9 | Suite::Eqlin => {
            for (gi, &dim) in cfg.dims.iter().enumerate() {
                let label = format!("dim={dim}");
                let pairs = equal_cardinality_pairs(dim);
                let outcomes = collect(cfg.exec.map(cfg.trials, |t| {
                    let s = trial_seed(cfg.seed, suite, gi, t);
                    let rank = match t % 3 {
                        0 => dim,
                        1 => dim.div_ceil(2),
                        _ => 1,
                    };
                    let a = random_psd(dim, rank, s)?;
                    let info = seed_info(suite, &label, t, s);
                    run_submatrix_checks(suite, a, &pairs, cfg.tol, &info, Some(t), Some(s))
                }))?;
                groups.push(aggregate(suite, label, outcomes));
            }
        }
        Suite::ChoiCerts => {
            for &n in &cfg.dims {
                groups.push(choi_group(n, cfg)?);
            }
        }
        _ => {
            for (gi, (m, n)) in group_shapes(suite, &cfg.shapes).into_iter().enumerate() {
                let label = format!("{m}x{n}");
                let outcomes = collect(cfg.exec.map(cfg.trials, |t| {
                    let s = trial_seed(cfg.seed, suite, gi, t);
                    let a = match suite {
                        Suite::Corollary3 | Suite::Combined => ppt_input(m, n, t, s)?,
                        _ => gram_input(m, n, t, s)?,
                    };
                    let info = seed_info(suite, &label, t, s);
                    run_block_checks(suite, a, cfg.tol, &info, Some(t), Some(s))
                }))?;
                groups.push(aggregate(suite, label, outcomes));
            }
            if matches!(suite, Suite::Theorem2 | Suite::Corollary6) {
                // a PSD input that is not PPT
                let info = format!(
                    "suite={} group=fixed input=maximally_entangled",
                    suite.name()
                );
                let o = run_block_checks(
                    suite,
                    maximally_entangled_projector(),
                    cfg.tol,
                    &info,
                    None,
                    None,
                )?;
                groups.push(aggregate(
                    suite,
                    "fixed:maximally_entangled".into(),
                    vec![o],
                ));
            }
        }
    }
    Ok(groups)
}

fn certification_report(
    name: &str,
    n: usize,
    tol: f64,
    certified: (bool, f64),
    scale: f64,
    expected: bool,
) -> CheckReport {
    let (ok, min) = certified;
    let passed = ok == expected;
    CheckReport {
        check_name: name.to_string(),
        passed,
        residual_min_eig: Some(min),
        scalar_gap: None,
        tolerance: tol,
        shape: ReportShape::Block { m: n, n },
        seed_info: None,
        note: Some(format!("expected certified = {expected}, got {ok}")),
        components: vec![Component {
            name: "choi_min_eig".into(),
            kind: ComponentKind::ResidualMinEig,
            value: if expected { min } else { -min },
            scale,
            passed,
        }],
    }
}

fn boolean_report(name: &str, n: usize, tol: f64, passed: bool, note: String) -> CheckReport {
    CheckReport {
        check_name: name.to_string(),
        passed,
        residual_min_eig: None,
        scalar_gap: None,
        tolerance: tol,
        shape: ReportShape::Block { m: n, n },
        seed_info: None,
        note: Some(note),
        components: Vec::new(),
    }
}

/// Map certifications for dimension `n`: phi is completely PPT, psi completely copositive but
/// not completely positive, the trace map completely positive; both co-Choi matrices are
/// diagonally dominant; random search finds no copositivity witness for psi.
fn choi_group(n: usize, cfg: &SuiteConfig) -> Result<GroupAgg> {
    let tol = cfg.tol;
    let phi = LinearMapRep::builtin(BuiltinMap::Phi, n)?;
    let psi = LinearMapRep::builtin(BuiltinMap::Psi, n)?;
    let trace = LinearMapRep::builtin(BuiltinMap::TraceMap, n)?;
    let scale_of = |b: &BlockMatrix| b.mat().frobenius().max(1.0);

    let mut out = TrialOutcome::new(Input::Square(ComplexMatrix::zeros(0, 0)), None, None);
    let choi_phi = phi.choi_matrix(n)?;
    let co_phi = phi.co_choi_matrix();
    let choi_psi = psi.choi_matrix(n)?;
    let co_psi = psi.co_choi_matrix();
    out.push(certification_report(
        "phi_completely_positive",
        n,
        tol,
        phi.certify_completely_positive(tol)?,
        scale_of(&choi_phi),
        true,
    ));
    out.push(certification_report(
        "phi_completely_copositive",
        n,
        tol,
        phi.certify_completely_copositive(tol)?,
        scale_of(&co_phi),
        true,
    ));
    out.push(certification_report(
        "psi_completely_copositive",
        n,
        tol,
        psi.certify_completely_copositive(tol)?,
        scale_of(&co_psi),
        true,
    ));
    // psi is positive (not 2-positive) only for n >= 2
    out.push(certification_report(
        "psi_not_completely_positive",
        n,
        tol,
        psi.certify_completely_positive(tol)?,
        scale_of(&choi_psi),
        n == 1,
    ));
    out.push(certification_report(
        "trace_map_completely_positive",
        n,
        tol,
        trace.certify_completely_positive(tol)?,
        scale_of(&trace.choi_matrix(n)?),
        true,
    ));
    for (name, co) in [
        ("phi_co_choi_dominance", &co_phi),
        ("psi_co_choi_dominance", &co_psi),
    ] {
        out.push(boolean_report(
            name,
            n,
            tol,
            is_diagonally_dominant(co.mat()),
            "row diagonally dominant with nonnegative diagonal".into(),
        ));
    }
    let trials = cfg.trials.min(DEFAULT_WITNESS_TRIALS);
    let witness =
        psi.random_cocopositivity_witness(2, trials, sub_seed(cfg.seed, n as u64), tol, cfg.exec)?;
    out.push(boolean_report(
        "psi_no_copositivity_witness_m2",
        n,
        tol,
        witness.is_none(),
        match &witness {
            None => format!("no witness in {trials} trials"),
            Some(w) => format!(
                "witness at trial {} (min eigenvalue {:e})",
                w.trial, w.image_min_eig
            ),
        },
    ));
    Ok(aggregate(Suite::ChoiCerts, format!("n={n}"), vec![out]))
}

fn assemble(
    cfg: &SuiteConfig,
    per_suite: Vec<(Suite, Vec<GroupAgg>)>,
    start: Instant,
) -> RunReport {
    let mut suites = Vec::new();
    let mut counterexamples = Vec::new();
    for (suite, groups) in per_suite {
        let mut res = SuiteResult {
            suite,
            checks: 0,
            failures: 0,
            groups: Vec::new(),
        };
        for g in groups {
            res.checks += g.result.checks;
            res.failures += g.result.failures;
            res.groups.push(g.result);
            counterexamples.extend(g.counterexamples);
        }
        suites.push(res);
    }
    let checks = suites.iter().map(|s| s.checks).sum();
    let failures = suites.iter().map(|s| s.failures).sum();
    RunReport {
        config: cfg.clone(),
        suites,
        counterexamples,
        summary: Summary {
            checks,
            failures,
            all_passed: failures == 0,
        },
        duration_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs every configured suite on seeded random inputs.
pub fn run_suite(cfg: &SuiteConfig) -> Result<RunReport> {
    cfg.validate()?;
    let start = Instant::now();
    let per_suite = cfg
        .suites
        .iter()
        .map(|&s| run_random_suite(s, cfg).map(|g| (s, g)))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(cfg, per_suite, start))
}

/// An explicit input for [`run_on_inputs`].
#[derive(Debug, Clone)]
pub enum ExplicitInput {
    Block(BlockMatrix),
    Square(ComplexMatrix),
}

/// Runs the configured suites on explicit matrices (e.g. replayed counterexamples). Block
/// suites take block inputs (`block2` only those with two blocks per side); submatrix suites
/// take any square matrix and enumerate every index-set pair. Inputs a suite cannot take are
/// skipped for that suite.
pub fn run_on_inputs(cfg: &SuiteConfig, inputs: &[(String, ExplicitInput)]) -> Result<RunReport> {
    if cfg.suites.is_empty() {
        return Err(Error::Usage("no suites selected".into()));
    }
    if cfg.suites.contains(&Suite::ChoiCerts) && cfg.suites.len() == 1 {
        return Err(Error::Usage(
            "choi_certs does not take matrix inputs; use the choi subcommand".into(),
        ));
    }
    let start = Instant::now();
    let mut per_suite = Vec::new();
    for &suite in &cfg.suites {
        let mut groups = Vec::new();
        for (label, input) in inputs {
            let info = format!("suite={} input={label}", suite.name());
            let outcome = match (suite, input) {
                (Suite::ChoiCerts, _) => None,
                (Suite::Thm8And9 | Suite::Eqlin, ExplicitInput::Square(a)) => {
                    submatrix_input(suite, a.clone(), cfg, &info)?
                }
                (Suite::Thm8And9 | Suite::Eqlin, ExplicitInput::Block(b)) => {
                    submatrix_input(suite, b.mat().clone(), cfg, &info)?
                }
                (Suite::Block2, ExplicitInput::Block(b)) if b.m() != 2 => None,
                (_, ExplicitInput::Block(b)) => Some(run_block_checks(
                    suite,
                    b.clone(),
                    cfg.tol,
                    &info,
                    None,
                    None,
                )?),
                (_, ExplicitInput::Square(_)) => None,
            };
            if let Some(o) = outcome {
                groups.push(aggregate(suite, label.clone(), vec![o]));
            }
        }
        per_suite.push((suite, groups));
    }
    Ok(assemble(cfg, per_suite, start))
}

fn submatrix_input(
    suite: Suite,
    a: ComplexMatrix,
    cfg: &SuiteConfig,
    info: &str,
) -> Result<Option<TrialOutcome>> {
    if !a.is_square() || a.rows() == 0 || a.rows() > MAX_SUBMATRIX_DIM {
        return Ok(None);
    }
    let pairs = equal_cardinality_pairs(a.rows());
    run_submatrix_checks(suite, a, &pairs, cfg.tol, info, None, None).map(Some)
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use blockineq::io::{self, Document};
use blockineq::randgen::{GenKind, GenSpec, DEFAULT_PPT_ATTEMPTS};
use blockineq::suite::{
    run_on_inputs, run_suite, ExplicitInput, OutputFormat, RunReport, Suite, SuiteConfig,
    DEFAULT_SEED, DEFAULT_TRIALS,
};
use blockineq::{BlockMatrix, BuiltinMap, Error, Exec, LinearMapRep, Result, DEFAULT_TOL};

/// Partial transpose, Choi certification and PSD block-matrix inequality verifiers.
#[derive(Parser)]
#[command(name = "blockineq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run inequality suites on seeded random inputs, or on matrix files.
    Verify(VerifyArgs),
    /// Print the Choi and co-Choi matrices of a map and certify it.
    Choi(ChoiArgs),
    /// Emit a random block matrix of a named class.
    Gen(GenArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite names, comma separated or repeated; `all` selects every suite.
    #[arg(long = "suite", value_delimiter = ',', default_value = "all")]
    suites: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Block shapes as MxN, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_shape, default_value = "2x2,2x3,3x2,3x3")]
    shapes: Vec<(usize, usize)>,
    /// Matrix dimensions for the submatrix suites.
    #[arg(long, value_delimiter = ',', default_value = "4,5")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
    /// Write each counterexample as a standalone matrix file in this directory.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
    /// Matrix or block-matrix files to check instead of random inputs.
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct ChoiArgs {
    /// Builtin map: phi, psi, identity, transpose, trace_map.
    #[arg(long, default_value = "psi", conflicts_with = "file")]
    map: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Load the map from a map document instead.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct GenArgs {
    /// gram_psd, low_rank, separable or ppt.
    #[arg(long, default_value = "gram_psd")]
    class: String,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Rank (low_rank), term count (separable) or attempt budget (ppt).
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_shape(s: &str) -> std::result::Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("shape '{s}' is not of the form MxN"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("shape '{s}': {e}"))
    };
    Ok((parse(m)?, parse(n)?))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let cfg = SuiteConfig {
        suites: Suite::parse_list(&args.suites)?,
        trials: args.trials,
        shapes: args.shapes,
        dims: args.dims,
        seed: args.seed,
        tol: args.tol,
        output_format: args.format.parse()?,
        exec: if args.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
    };
    let report = if args.files.is_empty() {
        run_suite(&cfg)?
    } else {
        let inputs = args
            .files
            .iter()
            .map(|p| {
                let input = match io::read_document(p)? {
                    Document::Block(b) => ExplicitInput::Block(b),
                    Document::Matrix(m) => ExplicitInput::Square(m),
                    Document::Map(_) => {
                        return Err(Error::Usage(format!(
                            "{}: map documents go to the choi subcommand",
                            p.display()
                        )))
                    }
                };
                Ok((p.display().to_string(), input))
            })
            .collect::<Result<Vec<_>>>()?;
        run_on_inputs(&cfg, &inputs)?
    };
    if let Some(dir) = &args.dump_dir {
        dump_counterexamples(&report, dir)?;
    }
    let text = match cfg.output_format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.render_text(),
    };
    emit(&text, args.out.as_deref())?;
    Ok(report.exit_code())
}

fn dump_counterexamples(report: &RunReport, dir: &Path) -> Result<()> {
    if report.counterexamples.is_empty() {
        return Ok(());
    }
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for c in &report.counterexamples {
        let path = dir.join(&c.file_name);
        let text = serde_json::to_string(&c.matrix).expect("matrix serialises");
        std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn format_entry(z: blockineq::C64) -> String {
    let clean = |v: f64| if v.abs() < 1e-14 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else {
        format!("{re}{:+}i", im)
    }
}

fn format_block(b: &BlockMatrix) -> String {
    let mat = b.mat();
    let cells: Vec<String> = mat.data().iter().map(|&z| format_entry(z)).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for i in 0..mat.rows() {
        if i > 0 && i % b.n() == 0 {
            let _ = writeln!(out);
        }
        for j in 0..mat.cols() {
            if j > 0 && j % b.n() == 0 {
                out.push_str("  |");
            }
            let _ = write!(out, " {:>width$}", cells[i * mat.cols() + j]);
        }
        out.push('\n');
    }
    out
}

fn spectrum(b: &BlockMatrix) -> Result<Vec<f64>> {
    Ok(b.mat().hermitian_eigenvalues()?.values)
}

fn choi(args: ChoiArgs) -> Result<i32> {
    let format: OutputFormat = args.format.parse()?;
    let (name, map) = match &args.file {
        Some(p) => match io::read_document(p)? {
            Document::Map(m) => (p.display().to_string(), m),
            _ => {
                return Err(Error::Usage(format!(
                    "{} is not a map document",
                    p.display()
                )))
            }
        },
        None => {
            let which: BuiltinMap = args.map.parse()?;
            (
                which.name().to_string(),
                LinearMapRep::builtin(which, args.n)?,
            )
        }
    };
    let choi = map.choi_matrix(map.n())?;
    let co_choi = map.co_choi_matrix();
    let cp = map.certify_completely_positive(args.tol)?;
    let ccp = map.certify_completely_copositive(args.tol)?;
    let (choi_spec, co_spec) = (spectrum(&choi)?, spectrum(&co_choi)?);
    let text = match format {
        OutputFormat::Json => {
            let v = json!({
                "map": name,
                "n": map.n(),
                "k": map.k(),
                "choi": serde_json::to_value(io::BlockDoc::from(&choi)).expect("serialises"),
                "co_choi": serde_json::to_value(io::BlockDoc::from(&co_choi)).expect("serialises"),
                "choi_spectrum": choi_spec,
                "co_choi_spectrum": co_spec,
                "completely_positive": cp.0,
                "completely_copositive": ccp.0,
                "tolerance": args.tol,
            });
            serde_json::to_string_pretty(&v).expect("serialises") + "\n"
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "map {name} (n = {}, k = {})\n", map.n(), map.k());
            let _ = writeln!(s, "Choi matrix:\n{}", format_block(&choi));
            let _ = writeln!(s, "spectrum: {choi_spec:?}\n");
            let _ = writeln!(s, "co-Choi matrix:\n{}", format_block(&co_choi));
            let _ = writeln!(s, "spectrum: {co_spec:?}\n");
            let _ = writeln!(
                s,
                "completely positive:   {} (min eigenvalue {:e})",
                cp.0, cp.1
            );
            let _ = writeln!(
                s,
                "completely copositive: {} (min eigenvalue {:e})",
                ccp.0, ccp.1
            );
            s
        }
    };
    emit(&text, None)?;
    Ok(0)
}

fn gen(args: GenArgs) -> Result<i32> {
    let kind: GenKind = args.class.parse()?;
    let rank_or_terms = match (kind, args.rank) {
        (_, Some(r)) => r,
        (GenKind::PptRejection, None) => DEFAULT_PPT_ATTEMPTS,
        (GenKind::Separable, None) => 3,
        (_, None) => args.m * args.n,
    };
    let spec = GenSpec {
        kind,
        m: args.m,
        n: args.n,
        rank_or_terms,
        seed: args.seed,
    };
    let (a, source) = spec.generate()?;
    if let Some(src) = source {
        eprintln!(
            "ppt source: {}",
            serde_json::to_string(&src).expect("serialises")
        );
    }
    emit(&(io::block_to_json(&a) + "\n"), args.out.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Choi(a) => choi(a),
        Command::Gen(a) => gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("blockineq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

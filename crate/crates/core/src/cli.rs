//! Command-line front end: `build`, `eigs`, `verify`, `adjudicate`,
//! `sweep` and `oracle`.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 verification failure,
//! 3 precondition violation. Every command computes its full output in
//! memory before touching `--out`, so failures never leave partial files.

use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{
    format_f64, read_matrix_market, utc_timestamp, write_matrix_market, write_report, AdjudicationDocument, Report,
    ReportDocument, ReportFormat, SpectrumDocument, SCHEMA_VERSION,
};
use crate::spectra::{FormulaVariant, Instance, SetId};
use crate::verify::{
    adjudicate, oracle_roots, random_instance, relative_residual, DrawRule, OracleConfig, DEFAULT_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "specmat",
    version,
    about = "Closed-form spectra of structured Toeplitz-plus-Hankel and alternating band matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write A (and B for generalised problems) as Matrix Market files.
    Build {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the closed-form eigenvalues and eigenvectors.
    Eigs {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate the spectrum and certify it against the assembled matrices.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the printed and re-derived formulas of set 4 or 2m on seeded draws.
    Adjudicate {
        #[arg(long)]
        set: SetId,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, env = "SPECMAT_SEED", default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify across a range of sizes, e.g. `--n 4:64:x2` or `--n 2:12:+2`.
    Sweep {
        #[arg(long)]
        set: SetId,
        #[arg(long = "n")]
        range: String,
        #[arg(long)]
        m: Option<usize>,
        /// Fixed coefficients; random admissible draws when omitted.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        alpha: Option<Coeffs>,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        beta: Option<Coeffs>,
        #[arg(long = "alpha-hat", value_parser = parse_list, allow_hyphen_values = true)]
        alpha_hat: Option<Coeffs>,
        #[arg(long, value_enum, default_value_t = VariantArg::Rederived)]
        variant: VariantArg,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, env = "SPECMAT_SEED", default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brute-force eigenvalues of Matrix Market input by determinant sign scan.
    Oracle {
        /// Matrix A.
        a: PathBuf,
        /// Optional matrix B of the generalised problem.
        b: Option<PathBuf>,
        #[arg(long, default_value_t = 4096)]
        scan_points: usize,
        #[arg(long, default_value_t = 1e-12)]
        bisect_tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct ProblemArgs {
    #[arg(long)]
    set: SetId,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated coefficients, e.g. `2,-1`.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    alpha: Coeffs,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    beta: Option<Coeffs>,
    /// Odd-offset coefficients on even rows (set 6 only).
    #[arg(long = "alpha-hat", value_parser = parse_list, allow_hyphen_values = true)]
    alpha_hat: Option<Coeffs>,
    #[arg(long, value_enum, default_value_t = VariantArg::Rederived)]
    variant: VariantArg,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Omit timestamps so identical inputs give byte-identical output.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Published,
    Rederived,
}

impl From<VariantArg> for FormulaVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Published => FormulaVariant::Published,
            VariantArg::Rederived => FormulaVariant::Rederived,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Mtx,
}

/// Comma-separated coefficient list.
#[derive(Debug, Clone, PartialEq)]
struct Coeffs(Vec<f64>);

fn coeffs(c: &Option<Coeffs>) -> Option<Vec<f64>> {
    c.as_ref().map(|c| c.0.clone())
}

fn parse_list(s: &str) -> std::result::Result<Coeffs, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let v: f64 = t.parse().map_err(|_| format!("'{t}' is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("'{t}' is not finite"))
            }
        })
        .collect::<std::result::Result<Vec<f64>, String>>()
        .map(Coeffs)
}

impl ProblemArgs {
    fn instance(&self) -> Instance {
        Instance {
            set: self.set,
            n: self.n,
            m: self.m,
            alpha: self.alpha.0.clone(),
            beta: coeffs(&self.beta),
            alpha_hat: coeffs(&self.alpha_hat),
            variant: self.variant.into(),
        }
    }
}

impl OutputArgs {
    fn timestamp(&self) -> Option<String> {
        (!self.no_timestamp).then(utc_timestamp)
    }

    fn report_format(&self) -> Result<ReportFormat> {
        match self.format {
            None | Some(FormatArg::Json) => Ok(ReportFormat::Json),
            Some(FormatArg::Csv) => Ok(ReportFormat::Csv),
            Some(FormatArg::Mtx) => Err(Error::Usage("--format mtx only applies to build".into())),
        }
    }
}

/// Failure of one command, tagged with the set it concerned.
struct Failure {
    set: Option<SetId>,
    error: Error,
}

impl Failure {
    fn code(&self) -> i32 {
        if self.error.is_precondition() {
            EXIT_PRECONDITION
        } else {
            EXIT_USAGE
        }
    }

    fn message(&self) -> String {
        match self.set {
            Some(set) => format!("set {set}: {}", self.error),
            None => self.error.to_string(),
        }
    }
}

fn tag(set: SetId) -> impl FnOnce(Error) -> Failure {
    move |error| Failure { set: Some(set), error }
}

/// Finished output of a command: bytes per destination and the exit code.
struct Outcome {
    files: Vec<(Option<PathBuf>, Vec<u8>)>,
    notes: Vec<String>,
    code: i32,
}

impl Outcome {
    fn single(dest: Option<PathBuf>, bytes: Vec<u8>, code: i32) -> Self {
        Self { files: vec![(dest, bytes)], notes: Vec::new(), code }
    }
}

fn render(r: Report<'_>, format: ReportFormat) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_report(r, format, &mut buf)?;
    Ok(buf)
}

fn sibling_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}{suffix}"),
    };
    out.with_file_name(name)
}

fn describe(inst: &Instance) -> String {
    let list = |v: &[f64]| v.iter().map(|x| format_f64(*x)).collect::<Vec<_>>().join(",");
    let mut s = format!("set {} n={} m={} alpha={}", inst.set, inst.n, inst.bandwidth(), list(&inst.alpha));
    if let Some(b) = &inst.beta {
        s += &format!(" beta={}", list(b));
    }
    if let Some(h) = &inst.alpha_hat {
        s += &format!(" alpha_hat={}", list(h));
    }
    s
}

fn cmd_build(problem: &ProblemArgs, output: &OutputArgs) -> std::result::Result<Outcome, Failure> {
    let set = problem.set;
    if matches!(output.format, Some(FormatArg::Json | FormatArg::Csv)) {
        return Err(Failure { set: Some(set), error: Error::Usage("build only writes --format mtx".into()) });
    }
    let inst = problem.instance();
    let (a, b) = inst.matrices().map_err(tag(set))?;
    let provenance = format!("specmat {} build: {}", env!("CARGO_PKG_VERSION"), describe(&inst));
    let mut files = Vec::new();
    let mut a_bytes = Vec::new();
    write_matrix_market(&a, &format!("{provenance}, matrix A"), &mut a_bytes).map_err(tag(set))?;
    files.push((output.out.clone(), a_bytes));
    if let Some(b) = b {
        let mut b_bytes = Vec::new();
        write_matrix_market(&b, &format!("{provenance}, matrix B"), &mut b_bytes).map_err(tag(set))?;
        files.push((output.out.as_deref().map(|p| sibling_path(p, "_B")), b_bytes));
    }
    Ok(Outcome { files, notes: Vec::new(), code: EXIT_OK })
}

fn cmd_eigs(problem: &ProblemArgs, output: &OutputArgs) -> std::result::Result<Outcome, Failure> {
    let set = problem.set;
    let format = output.report_format().map_err(tag(set))?;
    let s = problem.instance().spectrum().map_err(tag(set))?;
    let doc = SpectrumDocument::new(&s, output.timestamp());
    let bytes = render(Report::Spectrum(&doc), format).map_err(tag(set))?;
    let mut outcome = Outcome::single(output.out.clone(), bytes, EXIT_OK);
    outcome.notes = s.warnings.iter().map(|w| format!("set {set}: warning: {w}")).collect();
    Ok(outcome)
}

fn cmd_verify(problem: &ProblemArgs, tol: f64, output: &OutputArgs) -> std::result::Result<Outcome, Failure> {
    let set = problem.set;
    let format = output.report_format().map_err(tag(set))?;
    let inst = problem.instance();
    let (a, b) = inst.matrices().map_err(tag(set))?;
    let s = inst.spectrum().map_err(tag(set))?;
    let report = relative_residual(&a, b.as_ref(), &s, tol).map_err(tag(set))?;
    let doc = ReportDocument::new(&inst, &s, &report, output.timestamp());
    let bytes = render(Report::Verification(&doc), format).map_err(tag(set))?;
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    let code = if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let mut outcome = Outcome::single(output.out.clone(), bytes, code);
    outcome.notes.push(format!(
        "set {set} ({}) n={}: max relative residual {:e}, eigenvector rank {}/{}: {verdict}",
        report.variant, report.n, report.max_rel_residual, report.eigvec_rank, report.n
    ));
    outcome.notes.extend(report.warnings.iter().map(|w| format!("set {set}: warning: {w}")));
    Ok(outcome)
}

fn cmd_adjudicate(set: SetId, trials: usize, seed: u64, output: &OutputArgs) -> std::result::Result<Outcome, Failure> {
    let format = output.report_format().map_err(tag(set))?;
    let result = adjudicate(set, trials, seed).map_err(tag(set))?;
    let doc = AdjudicationDocument::new(&result, output.timestamp());
    let bytes = render(Report::Adjudication(&doc), format).map_err(tag(set))?;
    let mut outcome = Outcome::single(output.out.clone(), bytes, EXIT_OK);
    outcome.notes.push(format!(
        "set {set}: published max residual {:e}, rederived max residual {:e}, winner {:?}",
        result.published_max_residual, result.rederived_max_residual, result.winner
    ));
    Ok(outcome)
}

/// Sizes described by `start:stop:x<factor>`, `start:stop:+<step>`,
/// `start:stop` (step 1) or a single size; `stop` is inclusive.
pub fn parse_range(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::Usage(format!("invalid size range '{spec}' (expected start:stop:x2 or start:stop:+k)"));
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (start, stop) = match parts.len() {
        1 => (num(parts[0])?, num(parts[0])?),
        2 | 3 => (num(parts[0])?, num(parts[1])?),
        _ => return Err(bad()),
    };
    if start == 0 || stop < start {
        return Err(bad());
    }
    let step = parts.get(2).map(|s| s.trim()).unwrap_or("+1");
    let mut sizes = Vec::new();
    if let Some(f) = step.strip_prefix('x') {
        let f = num(f)?;
        if f < 2 {
            return Err(bad());
        }
        let mut n = start;
        while n <= stop {
            sizes.push(n);
            n = n.checked_mul(f).ok_or_else(bad)?;
        }
    } else if let Some(k) = step.strip_prefix('+') {
        let k = num(k)?;
        if k == 0 {
            return Err(bad());
        }
        sizes.extend((start..=stop).step_by(k));
    } else {
        return Err(bad());
    }
    Ok(sizes)
}

#[derive(Debug, Serialize)]
struct SweepRow {
    n_requested: usize,
    n: usize,
    trial: usize,
    m: usize,
    #[serde(with = "crate::io::lenient_f64")]
    max_rel_residual: f64,
    eigvec_rank: usize,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct SweepDocument {
    schema_version: &'static str,
    set: SetId,
    variant: FormulaVariant,
    seed: u64,
    tolerance_used: f64,
    rows: Vec<SweepRow>,
    all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
}

struct SweepArgs<'a> {
    set: SetId,
    range: &'a str,
    m: Option<usize>,
    alpha: &'a Option<Coeffs>,
    beta: &'a Option<Coeffs>,
    alpha_hat: &'a Option<Coeffs>,
    variant: FormulaVariant,
    tol: f64,
    trials: usize,
    seed: u64,
}

fn cmd_sweep(args: SweepArgs<'_>, output: &OutputArgs) -> std::result::Result<Outcome, Failure> {
    let set = args.set;
    let format = output.report_format().map_err(tag(set))?;
    if args.trials == 0 {
        return Err(Failure { set: Some(set), error: Error::Usage("--trials must be at least 1".into()) });
    }
    let requested = parse_range(args.range).map_err(tag(set))?;
    let mut notes = Vec::new();
    let mut sizes: Vec<(usize, usize)> = Vec::new();
    for &n in &requested {
        let actual = if set.requires_even_n() && n % 2 == 1 { n + 1 } else { n };
        if actual != n {
            notes.push(format!("set {set}: n={n} rounded to even n={actual}"));
        }
        if !sizes.iter().any(|&(_, a)| a == actual) {
            sizes.push((n, actual));
        }
    }
    let trials = if args.alpha.is_some() { 1 } else { args.trials };
    let mut cases = Vec::new();
    for &(n_requested, n) in &sizes {
        for trial in 0..trials {
            let inst = match args.alpha {
                Some(alpha) => Instance {
                    set,
                    n,
                    m: args.m,
                    alpha: alpha.0.clone(),
                    beta: coeffs(args.beta),
                    alpha_hat: coeffs(args.alpha_hat),
                    variant: args.variant,
                },
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                    rng.set_stream(((n as u64) << 32) | trial as u64);
                    let m = match set {
                        SetId::Set6 => args.m.unwrap_or(2),
                        _ => args.m.unwrap_or(2.min(n.saturating_sub(1)).max(1)),
                    };
                    random_instance(&mut rng, set, n, m, DrawRule::Generic).with_variant(args.variant)
                }
            };
            cases.push((n_requested, trial, inst));
        }
    }
    // validate and generate everything before any verification or output
    let prepared = cases
        .into_iter()
        .map(|(n_requested, trial, inst)| {
            let (a, b) = inst.matrices()?;
            let s = inst.spectrum()?;
            Ok((n_requested, trial, a, b, s))
        })
        .collect::<Result<Vec<_>>>()
        .map_err(tag(set))?;
    let rows = prepared
        .par_iter()
        .map(|(n_requested, trial, a, b, s)| {
            let r = relative_residual(a, b.as_ref(), s, args.tol)?;
            Ok(SweepRow {
                n_requested: *n_requested,
                n: s.n,
                trial: *trial,
                m: s.m,
                max_rel_residual: r.max_rel_residual,
                eigvec_rank: r.eigvec_rank,
                pass: r.pass,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map_err(tag(set))?;
    let all_pass = rows.iter().all(|r| r.pass);
    let bytes = match format {
        ReportFormat::Json => {
            let doc = SweepDocument {
                schema_version: SCHEMA_VERSION,
                set,
                variant: args.variant,
                seed: args.seed,
                tolerance_used: args.tol,
                rows,
                all_pass,
                timestamp: output.timestamp(),
            };
            let mut buf = serde_json::to_vec_pretty(&doc).map_err(|e| Failure { set: Some(set), error: e.into() })?;
            buf.push(b'\n');
            buf
        }
        ReportFormat::Csv => {
            let mut text = String::from("n_requested,n,trial,m,max_rel_residual,eigvec_rank,pass\n");
            for r in &rows {
                text += &format!(
                    "{},{},{},{},{},{},{}\n",
                    r.n_requested,
                    r.n,
                    r.trial,
                    r.m,
                    format_f64(r.max_rel_residual),
                    r.eigvec_rank,
                    r.pass
                );
            }
            text.into_bytes()
        }
    };
    let code = if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Outcome { files: vec![(output.out.clone(), bytes)], notes, code })
}

#[derive(Debug, Serialize)]
struct OracleDocument {
    schema_version: &'static str,
    n: usize,
    generalized: bool,
    roots: Vec<f64>,
    complete: bool,
}

fn read_mtx(path: &Path) -> Result<crate::linalg::DenseMatrix> {
    read_matrix_market(BufReader::new(fs::File::open(path)?))
}

fn cmd_oracle(
    a: &Path,
    b: Option<&Path>,
    cfg: OracleConfig,
    output: &OutputArgs,
) -> std::result::Result<Outcome, Failure> {
    let untagged = |error| Failure { set: None, error };
    let format = output.report_format().map_err(untagged)?;
    let a = read_mtx(a).map_err(untagged)?;
    let b = b.map(read_mtx).transpose().map_err(untagged)?;
    let roots = oracle_roots(&a, b.as_ref(), cfg).map_err(untagged)?;
    let complete = roots.len() == a.n();
    let doc = OracleDocument { schema_version: SCHEMA_VERSION, n: a.n(), generalized: b.is_some(), roots, complete };
    let bytes = match format {
        ReportFormat::Json => {
            let mut buf = serde_json::to_vec_pretty(&doc).map_err(|e| untagged(e.into()))?;
            buf.push(b'\n');
            buf
        }
        ReportFormat::Csv => {
            let mut text = String::from("k,lambda\n");
            for (k, r) in doc.roots.iter().enumerate() {
                text += &format!("{},{}\n", k + 1, format_f64(*r));
            }
            text.into_bytes()
        }
    };
    let mut outcome = Outcome::single(output.out.clone(), bytes, EXIT_OK);
    if !complete {
        outcome.notes.push(
            Error::OracleIncomplete { found: doc.roots.len(), expected: doc.n }.to_string()
                + " (multiple, clustered or complex eigenvalues)",
        );
    }
    Ok(outcome)
}

fn dispatch(cli: &Cli) -> std::result::Result<Outcome, Failure> {
    match &cli.command {
        Command::Build { problem, output } => cmd_build(problem, output),
        Command::Eigs { problem, output } => cmd_eigs(problem, output),
        Command::Verify { problem, tol, output } => cmd_verify(problem, *tol, output),
        Command::Adjudicate { set, trials, seed, output } => cmd_adjudicate(*set, *trials, *seed, output),
        Command::Sweep { set, range, m, alpha, beta, alpha_hat, variant, tol, trials, seed, output } => cmd_sweep(
            SweepArgs {
                set: *set,
                range,
                m: *m,
                alpha,
                beta,
                alpha_hat,
                variant: (*variant).into(),
                tol: *tol,
                trials: *trials,
                seed: *seed,
            },
            output,
        ),
        Command::Oracle { a, b, scan_points, bisect_tol, output } => {
            cmd_oracle(a, b.as_deref(), OracleConfig { scan_points: *scan_points, bisect_tol: *bisect_tol }, output)
        }
    }
}

/// Runs the CLI on `argv` (program name first), writing to the given
/// streams; returns the exit code.
pub fn run_with(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            for (dest, bytes) in &outcome.files {
                let written = match dest {
                    Some(path) => fs::write(path, bytes),
                    None => stdout.write_all(bytes),
                };
                if let Err(e) = written {
                    let _ = writeln!(stderr, "specmat: {e}");
                    return EXIT_USAGE;
                }
            }
            for note in &outcome.notes {
                let _ = writeln!(stderr, "specmat: {note}");
            }
            outcome.code
        }
        Err(failure) => {
            let _ = writeln!(stderr, "specmat: {}", failure.message());
            failure.code()
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(&argv, &mut stdout.lock(), &mut stderr.lock())
}

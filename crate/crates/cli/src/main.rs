//! `naryd` — build or load n-ary algebras, check their identities, compute
//! δ-derivation spaces, centroids and exceptional-δ scans, and run the
//! built-in claim suite. All reports are deterministic: identical arguments
//! produce byte-identical output.
//!
//! Exit codes: 0 success, 1 a check or claim failed, 2 usage or input error.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use naryd_core::algebra::{MalcevViolation, Violation};
use naryd_core::catalog::Family;
use naryd_core::dsolve;
use naryd_core::matrix::Matrix;
use naryd_core::octonion::build_octonions;
use naryd_core::rational::Rational;
use naryd_core::verify;
use naryd_core::{ClassifyReport, FamilySpec, LinearMap, NAryAlgebra, ScanReport};

#[derive(Parser)]
#[command(name = "naryd", version, about = "Exact δ-derivation computations for n-ary algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct OutputOpts {
    /// Write the report to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format; json is the stable contract, text is a rendering of
    /// the same data
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct AlgebraOpt {
    /// Family spec string (e.g. "C2:n=3,beta=3/2", "Dr:n=5,r=3", "M8") or a
    /// path to an algebra JSON file
    #[arg(long)]
    algebra: String,
    /// Supply or override the C1 parameter
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    /// Supply or override the C2 parameter
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<Rational>,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in families, the spec-string grammar and claim ids
    List {
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print an algebra's structure constants (use "octonions" for the
    /// composition-algebra multiplication table)
    Show {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the Filippov and n-ary Malcev identity checkers
    Check {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Compute and classify the δ-derivation space at a fixed δ
    Derive {
        #[command(flatten)]
        algebra: AlgebraOpt,
        /// The δ value, as "p/q" or "p"
        #[arg(long, allow_hyphen_values = true)]
        delta: Rational,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Compute the centroid
    Centroid {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Locate exceptional δ values by fraction-free parametric elimination
    Scan {
        #[command(flatten)]
        algebra: AlgebraOpt,
        /// Extra candidate δ values to probe
        #[arg(long, allow_hyphen_values = true)]
        extra: Vec<Rational>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the built-in claim suite and report PASS/FAIL per claim
    VerifyPaper {
        /// Run a single claim id (see `naryd list`)
        #[arg(long)]
        only: Option<String>,
        /// Perturb one catalog structure constant first (test hook)
        #[arg(long, hide = true)]
        corrupt_catalog: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::List { output } => {
            let report = ListReport {
                families: vec![
                    "A1:n=<arity>".into(),
                    "B1:n=<arity>".into(),
                    "B2:n=<arity>".into(),
                    "C1:n=<arity>,alpha=<p/q>".into(),
                    "C2:n=<arity>,beta=<p/q>".into(),
                    "Dr:n=<arity>,r=<3..=n+1>".into(),
                    "M8".into(),
                    "octonions (show only)".into(),
                ],
                claims: verify::CLAIM_IDS
                    .iter()
                    .map(|s| s.to_string())
                    .chain(std::iter::once("determinism".to_string()))
                    .collect(),
            };
            let text = report.render_text();
            emit(&output, &report, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Show { algebra, output } => {
            if algebra.algebra == "octonions" {
                let o = build_octonions();
                let table = o.signed_table();
                let report = OctonionReport {
                    basis: o.basis_names(),
                    table: table
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|&(k, s)| {
                                    format!("{}{}", if s > 0 { "" } else { "-" }, o.basis_names()[k])
                                })
                                .collect()
                        })
                        .collect(),
                };
                let text = o.table_markdown();
                emit(&output, &report, &text)?;
                return Ok(ExitCode::SUCCESS);
            }
            let (name, alg, _) = load_algebra(&algebra)?;
            let json = alg.to_json();
            let text = render_algebra_text(&name, &alg);
            emit(&output, &json, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { algebra, output } => {
            let (name, alg, _) = load_algebra(&algebra)?;
            let filippov = alg.check_filippov();
            let malcev = alg.check_nary_malcev();
            let report = CheckReport {
                algebra: name,
                filippov: IdentityVerdict {
                    passed: filippov.is_empty(),
                    violations: filippov.len(),
                    first_witness: filippov.first().cloned(),
                },
                malcev: MalcevVerdict {
                    passed: malcev.is_empty(),
                    violations: malcev.len(),
                    first_witness: malcev.first().cloned(),
                },
            };
            let ok = report.filippov.passed && report.malcev.passed;
            let text = report.render_text();
            emit(&output, &report, &text)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Derive {
            algebra,
            delta,
            output,
        } => {
            let (name, alg, _) = load_algebra(&algebra)?;
            let classification = dsolve::classify(&alg, &delta);
            let space = dsolve::derivation_space(&alg, &delta);
            let report = DeriveReport {
                algebra: name,
                classification,
                basis: space.basis,
            };
            let text = report.render_text();
            emit(&output, &report, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Centroid { algebra, output } => {
            let (name, alg, _) = load_algebra(&algebra)?;
            let gamma = dsolve::centroid(&alg);
            let d = alg.dim();
            let report = CentroidReport {
                algebra: name,
                dimension: gamma.dim(),
                basis: gamma
                    .vectors
                    .iter()
                    .map(|v| LinearMap::from_flat(d, v))
                    .collect(),
            };
            let text = report.render_text();
            emit(&output, &report, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            algebra,
            extra,
            output,
        } => {
            let (name, alg, spec) = load_algebra(&algebra)?;
            let mut candidates = extra.clone();
            // the r-indexed family has its own structural candidate
            if let Some(FamilySpec { family: Family::Dr { r }, .. }) = spec {
                candidates.push(Rational::new(1, r as i64 - 1).expect("r ≥ 3"));
            }
            let scan = dsolve::scan(&alg, &candidates);
            let report = ScanOutput {
                algebra: name,
                scan,
            };
            let text = report.render_text();
            emit(&output, &report, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper {
            only,
            corrupt_catalog,
            output,
        } => {
            let mut report = verify::run(only.as_deref())?;
            if corrupt_catalog {
                let corrupted = corrupted_identity_claim();
                match report.claims.iter_mut().find(|c| c.id == "identities") {
                    Some(slot) => *slot = corrupted,
                    None => report.claims.push(corrupted),
                }
                report.passed_claims = report.claims.iter().filter(|c| c.passed).count();
                report.failed_claims = report.claims.len() - report.passed_claims;
                report.all_passed = report.failed_claims == 0;
            }
            report.command = command_echo(&only, corrupt_catalog);
            let ok = report.all_passed;
            let text = colorize(&report.render_text(), output.format);
            emit(&output, &report, &text)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

/// Identity claim over a catalog with one structure constant bumped by 1;
/// exercised by the test suite to prove the checkers detect corruption.
fn corrupted_identity_claim() -> naryd_core::verify::ClaimResult {
    let grid = verify::identity_grid();
    let mut algebras: Vec<(String, NAryAlgebra)> = grid
        .iter()
        .map(|s| (s.to_string(), s.build().expect("valid spec")))
        .collect();
    let target = algebras
        .iter_mut()
        .find(|(name, _)| name.starts_with("Dr:n=3"))
        .expect("grid contains a ternary family");
    let mut products = target.1.products().clone();
    let key = products.keys().next().unwrap().clone();
    products.get_mut(&key).unwrap()[0] += &Rational::one();
    target.1 = NAryAlgebra::new(
        target.1.arity(),
        target.1.dim(),
        target.1.basis_names().to_vec(),
        products,
    )
    .expect("perturbed constants stay valid");
    verify::identities_claim_over(&algebras)
}

fn command_echo(only: &Option<String>, corrupt: bool) -> String {
    let mut s = String::from("naryd verify-paper");
    if let Some(id) = only {
        s.push_str(&format!(" --only {id}"));
    }
    if corrupt {
        s.push_str(" --corrupt-catalog");
    }
    s
}

/// Resolves `--algebra` to a built algebra: an existing file is loaded as
/// algebra JSON, anything else is parsed as a family spec string, with
/// `--alpha`/`--beta` supplying or overriding the C-family parameters.
fn load_algebra(
    opt: &AlgebraOpt,
) -> Result<(String, NAryAlgebra, Option<FamilySpec>), Box<dyn std::error::Error>> {
    let source = opt.algebra.trim();
    if Path::new(source).is_file() {
        if opt.alpha.is_some() || opt.beta.is_some() {
            return Err("--alpha/--beta do not apply to algebra files".into());
        }
        let raw = std::fs::read_to_string(source)?;
        let value: serde_json::Value = serde_json::from_str(&raw)?;
        let alg = NAryAlgebra::from_json(&value)?;
        return Ok((source.to_string(), alg, None));
    }
    let spec = resolve_spec(source, &opt.alpha, &opt.beta)?;
    let alg = spec.build()?;
    Ok((spec.to_string(), alg, Some(spec)))
}

fn resolve_spec(
    source: &str,
    alpha: &Option<Rational>,
    beta: &Option<Rational>,
) -> Result<FamilySpec, Box<dyn std::error::Error>> {
    if alpha.is_none() && beta.is_none() {
        return Ok(source.parse()?);
    }
    let (tag, rest) = match source.split_once(':') {
        Some((t, r)) => (t.trim(), r),
        None => (source, ""),
    };
    if alpha.is_some() && tag != "C1" {
        return Err("--alpha only applies to the C1 family".into());
    }
    if beta.is_some() && tag != "C2" {
        return Err("--beta only applies to the C2 family".into());
    }
    let mut parts: Vec<String> = rest
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .filter(|p| {
            let key = p.split('=').next().unwrap_or("").trim();
            !(key == "alpha" && alpha.is_some() || key == "beta" && beta.is_some())
        })
        .map(|p| p.trim().to_string())
        .collect();
    if let Some(a) = alpha {
        parts.push(format!("alpha={a}"));
    }
    if let Some(b) = beta {
        parts.push(format!("beta={b}"));
    }
    let rebuilt = format!("{tag}:{}", parts.join(","));
    Ok(rebuilt.parse()?)
}

fn emit<T: Serialize>(
    output: &OutputOpts,
    report: &T,
    text: &str,
) -> Result<(), Box<dyn std::error::Error>> {
    let body = match output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Text => text.to_string(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

/// ANSI-colors PASS/FAIL markers in text mode on a terminal, unless NO_COLOR
/// is set. JSON output is never colored.
fn colorize(text: &str, format: Format) -> String {
    if format != Format::Text
        || std::env::var_os("NO_COLOR").is_some()
        || !std::io::stdout().is_terminal()
    {
        return text.to_string();
    }
    text.replace("[PASS]", "[\u{1b}[32mPASS\u{1b}[0m]")
        .replace("[FAIL]", "[\u{1b}[31mFAIL\u{1b}[0m]")
}

// ---- report shapes ----

#[derive(Serialize)]
struct ListReport {
    families: Vec<String>,
    claims: Vec<String>,
}

impl ListReport {
    fn render_text(&self) -> String {
        let mut s = String::from("families:\n");
        for f in &self.families {
            s.push_str(&format!("  {f}\n"));
        }
        s.push_str("claims:\n");
        for c in &self.claims {
            s.push_str(&format!("  {c}\n"));
        }
        s
    }
}

#[derive(Serialize)]
struct OctonionReport {
    basis: Vec<String>,
    table: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct IdentityVerdict {
    passed: bool,
    violations: usize,
    first_witness: Option<Violation>,
}

#[derive(Serialize)]
struct MalcevVerdict {
    passed: bool,
    violations: usize,
    first_witness: Option<MalcevViolation>,
}

#[derive(Serialize)]
struct CheckReport {
    algebra: String,
    filippov: IdentityVerdict,
    malcev: MalcevVerdict,
}

impl CheckReport {
    fn render_text(&self) -> String {
        let mut s = format!("algebra: {}\n", self.algebra);
        s.push_str(&format!(
            "filippov: {} ({} violations{})\n",
            if self.filippov.passed { "pass" } else { "fail" },
            self.filippov.violations,
            match &self.filippov.first_witness {
                Some(w) => format!(", first witness xs={:?} ys={:?}", w.xs, w.ys),
                None => String::new(),
            }
        ));
        s.push_str(&format!(
            "malcev: {} ({} violations)\n",
            if self.malcev.passed { "pass" } else { "fail" },
            self.malcev.violations
        ));
        s
    }
}

#[derive(Serialize)]
struct DeriveReport {
    algebra: String,
    #[serde(flatten)]
    classification: ClassifyReport,
    basis: Vec<LinearMap>,
}

impl DeriveReport {
    fn render_text(&self) -> String {
        let c = &self.classification;
        let mut s = format!(
            "algebra: {}\ndelta: {}\ndimension: {}\ncentroid dimension: {}\nnontrivial: {}\n",
            self.algebra, c.delta, c.dimension, c.centroid_dimension, c.has_nontrivial
        );
        if let Some(w) = &c.witness {
            s.push_str("witness outside the centroid:\n");
            s.push_str(&render_matrix(&w.matrix));
        }
        s.push_str("basis:\n");
        for m in &self.basis {
            s.push_str(&render_matrix(&m.matrix));
            s.push('\n');
        }
        s
    }
}

#[derive(Serialize)]
struct CentroidReport {
    algebra: String,
    dimension: usize,
    basis: Vec<LinearMap>,
}

impl CentroidReport {
    fn render_text(&self) -> String {
        let mut s = format!("algebra: {}\ndimension: {}\nbasis:\n", self.algebra, self.dimension);
        for m in &self.basis {
            s.push_str(&render_matrix(&m.matrix));
            s.push('\n');
        }
        s
    }
}

#[derive(Serialize)]
struct ScanOutput {
    algebra: String,
    #[serde(flatten)]
    scan: ScanReport,
}

impl ScanOutput {
    fn render_text(&self) -> String {
        let r = &self.scan;
        let join = |v: &[Rational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = format!(
            "algebra: {}\ngeneric dimension: {}\ncandidates: {}\nconfirmed exceptional: {}\n",
            self.algebra,
            r.generic_dimension,
            join(&r.exceptional_candidates),
            join(&r.confirmed_exceptional)
        );
        if !r.irrational_factors.is_empty() {
            s.push_str("irrational factors:\n");
            for f in &r.irrational_factors {
                s.push_str(&format!("  {f}\n"));
            }
        }
        s.push_str(&format!(
            "generic probe: δ = {} (seed {})\n",
            r.generic_probe.delta, r.generic_probe.seed
        ));
        for c in &r.reports {
            s.push_str(&format!(
                "δ = {}: dimension {}, nontrivial {}\n",
                c.delta, c.dimension, c.has_nontrivial
            ));
        }
        s
    }
}

fn render_algebra_text(name: &str, alg: &NAryAlgebra) -> String {
    let mut s = format!(
        "algebra: {name}\narity: {}\ndimension: {}\nbasis: {}\n",
        alg.arity(),
        alg.dim(),
        alg.basis_names().join(", ")
    );
    if alg.products().is_empty() {
        s.push_str("all products are zero\n");
        return s;
    }
    for (key, value) in alg.products() {
        let args = key
            .iter()
            .map(|&i| alg.basis_names()[i].clone())
            .collect::<Vec<_>>()
            .join(", ");
        let mut terms = Vec::new();
        for (j, c) in value.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &alg.basis_names()[j];
            if c.is_one() {
                terms.push(name.clone());
            } else {
                terms.push(format!("{c}·{name}"));
            }
        }
        s.push_str(&format!("[{args}] = {}\n", terms.join(" + ")));
    }
    s
}

fn render_matrix(m: &Matrix<Rational>) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    let mut s = String::new();
    for row in &cells {
        s.push_str("  [");
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                s.push(' ');
            }
            s.push_str(&format!("{cell:>width$}"));
        }
        s.push_str("]\n");
    }
    s
}

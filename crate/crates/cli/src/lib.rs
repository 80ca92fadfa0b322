//! Command-line front end for `spectral-duality`.
//!
//! [`run`] takes the argument vector and returns the exit code and both output
//! streams, so the binary and the tests share one code path. Exit codes:
//! 0 when the command succeeded and any checked property holds, 1 when a
//! checked property fails, 2 for parse and validation errors.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use spectral_duality::algebra::{fmt_rational, parse_rational, Rational};
use spectral_duality::constructions::{beh_duality_check, build_beh, build_mqp, resultant_curve};
use spectral_duality::expr::{parse_laurent, parse_pair, parse_weyl};
use spectral_duality::modrep::ModuleStructure;
use spectral_duality::spectral::{
    duality_check_with_windows, fourier_curve_theorem_check, is_quantization, is_spectral_quantization,
    spectral_curve, SpectralCurve, WindowConfig,
};
use spectral_duality::suite::{Suite, SuiteReport};
use spectral_duality::Error;

#[derive(Debug, Parser)]
#[command(name = "specdual", version, about = "Matrix representations, spectral curves and duality checks")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Master seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ActionOp {
    /// Operator defining the module structure.
    #[arg(long, allow_hyphen_values = true)]
    action: String,
    /// Operator to represent.
    #[arg(long, allow_hyphen_values = true)]
    op: String,
    /// First basis exponent for Laurent structures.
    #[arg(long, allow_negative_numbers = true)]
    window_start: Option<i64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Matrix of --op with respect to the structure defined by --action.
    Matrix(ActionOp),
    /// Spectral curve det(y - M(x)) of --op with respect to --action.
    Curve(ActionOp),
    /// Compare the curve of Q in the P-structure with the swapped curve of P in the Q-structure.
    DualCheck {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Window start of the P-structure (Laurent only).
        #[arg(long, allow_negative_numbers = true)]
        p_window: Option<i64>,
        /// Window start of the Q-structure (Laurent only).
        #[arg(long, allow_negative_numbers = true)]
        q_window: Option<i64>,
    },
    /// Whether (p1, q1) quantizes (p0, q0).
    QuantizeCheck {
        #[arg(long, allow_hyphen_values = true)]
        p0: String,
        #[arg(long, allow_hyphen_values = true)]
        q0: String,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        q1: String,
        /// Compare spectral curves instead of matrices.
        #[arg(long)]
        spectral: bool,
    },
    /// Curve of the Fourier-transformed pair against the transformed curve.
    FourierCheck {
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        q1: String,
    },
    /// Large-N two-matrix-model instance and its duality check.
    Beh {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Comma-separated a0,a1,...
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Comma-separated b0,b1,...
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long = "N", allow_negative_numbers = true)]
        n: Option<i64>,
    },
    /// Resultant of P(L) - x and Q(L) - y.
    Resultant {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Matrix of D^q with respect to the D^p structure.
    Mqp {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Randomized invariant suites.
    PropertySuite {
        /// Cases per suite; defaults to each suite's standard size.
        #[arg(long)]
        count: Option<usize>,
        /// Restrict to the named suites.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

/// Result of one command: text and JSON renderings of the same data.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { ok: true, text, json }
    }

    fn check(ok: bool, text: String, json: Value) -> Self {
        Report { ok, text, json }
    }
}

/// Output of [`run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("serializable")
            } else {
                report.text
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: if report.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = if cli.json {
                let mut s = serde_json::to_string_pretty(&error_json(&e)).expect("serializable");
                s.push('\n');
                s
            } else {
                format!("error: {e}\n")
            };
            Outcome { code: 2, stdout: String::new(), stderr }
        }
    }
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::Parse { offset, message, expected } => json!({
            "error": "parse",
            "offset": offset,
            "message": message,
            "expected": expected,
        }),
        Error::Validation(m) => json!({ "error": "validation", "message": m }),
    }
}

fn curve_text(label: &str, c: &SpectralCurve) -> String {
    format!("{label}: {}\n{label} normal form: {}\n", c.raw, c.normal)
}

fn parse_list(text: &str) -> Result<Vec<Rational>, Error> {
    text.split(',').map(parse_rational).collect()
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Matrix(a) => {
            let (action, op) = parse_pair(&a.action, &a.op)?;
            let m = ModuleStructure::new(action, a.window_start)?.matrix_rep(&op)?;
            Ok(Report::ok(m.to_string(), m.to_json()))
        }
        Command::Curve(a) => {
            let (action, op) = parse_pair(&a.action, &a.op)?;
            let c = spectral_curve(&action, &op, a.window_start)?;
            let text = format!("{}rank: {}", curve_text("curve", &c), c.rank);
            Ok(Report::ok(text, c.to_json()))
        }
        Command::DualCheck { p, q, p_window, q_window } => {
            let (p, q) = parse_pair(p, q)?;
            let r = duality_check_with_windows(&p, &q, WindowConfig { p: *p_window, q: *q_window })?;
            let mut text = format!("duality holds: {}\n", r.holds);
            text.push_str(&curve_text("X_QP", &r.x_qp));
            text.push_str(&curve_text("X_PQ", &r.x_pq));
            let _ = write!(text, "X_PQ swapped: {}", r.x_pq.raw.swap_xy());
            Ok(Report::check(r.holds, text, r.to_json()))
        }
        Command::QuantizeCheck { p0, q0, p1, q1, spectral } => {
            let pair0 = (parse_weyl(p0)?, parse_weyl(q0)?);
            let pair1 = (parse_weyl(p1)?, parse_weyl(q1)?);
            if *spectral {
                let r = is_spectral_quantization(&pair0, &pair1)?;
                let text = format!(
                    "degrees match: {}\nstring equation: {}\nsame spectral locus: {}\nclassical pair commutes: {}\n{}{}spectral quantization: {}",
                    r.degrees_ok,
                    r.string_eq_ok,
                    r.spectral_eq_ok,
                    r.classical_commutes,
                    curve_text("X classical", &r.classical_curve),
                    curve_text("X quantum", &r.quantum_curve),
                    r.verdict
                );
                Ok(Report::check(r.verdict, text, r.to_json()))
            } else {
                let r = is_quantization(&pair0, &pair1)?;
                let text = format!(
                    "degrees match: {}\nstring equation: {}\nmatrices equal: {}\nclassical pair commutes: {}\nM classical:\n{}\nM quantum:\n{}\nquantization: {}",
                    r.degrees_ok,
                    r.string_eq_ok,
                    r.matrix_eq_ok,
                    r.classical_commutes,
                    r.classical_matrix,
                    r.quantum_matrix,
                    r.verdict
                );
                Ok(Report::check(r.verdict, text, r.to_json()))
            }
        }
        Command::FourierCheck { p1, q1 } => {
            let pair = (parse_weyl(p1)?, parse_weyl(q1)?);
            let r = fourier_curve_theorem_check(&pair)?;
            let text = format!(
                "Fourier identity holds: {}\n{}{}",
                r.holds,
                curve_text("X of F(P1,Q1)", &r.transformed_pair_curve),
                curve_text("F(X)", &r.transformed_curve)
            );
            Ok(Report::check(r.holds, text, r.to_json()))
        }
        Command::Beh { gamma, a, b, n } => {
            let inst = build_beh(parse_rational(gamma)?, parse_list(a)?, parse_list(b)?, *n)?;
            let r = beh_duality_check(&inst)?;
            let scalar = r.scalar.as_ref().map(fmt_rational).unwrap_or_else(|| "none".into());
            let text = format!(
                "P = {}\nQ = {}\nN = {}\nA(x):\n{}\nB(y):\n{}\nD1(x):\n{}\nD2(y):\n{}\ndet(y - D1(x)) = {}\ndet(x - D2(y)) = {}\nratio: {}\nD1 matches matrix representation: {}\nD2 matches matrix representation: {}\nduality holds: {}",
                inst.p, inst.q, inst.n, inst.a_mat, inst.b_mat, inst.d1, inst.d2, r.lhs.raw, r.rhs.raw, scalar,
                r.d1_matches_matrix_rep, r.d2_matches_matrix_rep, r.holds
            );
            Ok(Report::check(r.all_ok(), text, json!({ "instance": inst.to_json(), "report": r.to_json() })))
        }
        Command::Resultant { p, q } => {
            let r = resultant_curve(&parse_laurent(p)?, &parse_laurent(q)?)?;
            let text = format!(
                "resultant: {}\nnormal form: {}\nremoved factor: x^{} y^{}",
                r.curve, r.normal, r.stripped.0, r.stripped.1
            );
            Ok(Report::ok(text, r.to_json()))
        }
        Command::Mqp { p, q } => {
            let m = build_mqp(*p, *q)?;
            Ok(Report::ok(m.to_string(), m.to_json()))
        }
        Command::PropertySuite { count, suites } => property_suite(cli.seed, *count, suites),
    }
}

fn property_suite(seed: u64, count: Option<usize>, names: &[String]) -> Result<Report, Error> {
    let selected: Vec<Suite> = if names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse().map_err(Error::Validation)).collect::<Result<_, _>>()?
    };
    let reports: Vec<SuiteReport> = selected
        .iter()
        .map(|&s| {
            let n = count.unwrap_or_else(|| s.default_count()) as u64;
            let cases = (0..n).into_par_iter().map(|i| s.run_case(seed, i)).collect();
            SuiteReport::from_cases(s, seed, cases)
        })
        .collect();
    let ok = reports.iter().all(SuiteReport::all_passed);
    let mut text = format!("seed {seed}\n");
    for r in &reports {
        let _ = writeln!(text, "{}: {}/{} passed", r.suite.name(), r.passed(), r.cases.len());
        for f in r.failures() {
            let _ = writeln!(
                text,
                "  case {} failed: {}\n    inputs: {}",
                f.index,
                f.failure.as_deref().unwrap_or(""),
                f.witness
            );
        }
    }
    text.push_str(if ok { "all suites passed" } else { "some suites failed" });
    let json = json!({
        "seed": seed,
        "ok": ok,
        "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
    });
    Ok(Report::check(ok, text, json))
}

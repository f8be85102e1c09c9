//! Command-line front end: `table`, `eval` and `verify`.
//!
//! Exit codes: 0 success, 1 a verified identity failed, 2 invalid arguments
//! or input, 3 the family could not be constructed.

pub mod grid;
pub mod suites;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::appell::{named_family, AppellFamily, FamilyKind};
use crate::error::Error;
use crate::operators::{quasi_homog, quasi_trivar};
use crate::polyring::{MultiPoly, Var};
use crate::qcore::{QContext, Rational};
use crate::series::TruncSeries;
use grid::GridSpec;
use suites::{run_suite, Settings, Suite, SuiteResult};

#[derive(Parser, Debug)]
#[command(name = "qappell", version, about = "Exact deformed q-Appell polynomials and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficients of one polynomial.
    Table(TableArgs),
    /// Evaluate one polynomial at a rational point.
    Eval(EvalArgs),
    /// Run identity suites over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyArg {
    Bernoulli,
    Euler,
    Genocchi,
    Custom,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VarsArg {
    X,
    Xy,
    Xyz,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct FamilyOpts {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Base series for `--family custom`: a file holding a JSON array of
    /// rationals, or a comma-separated list such as `1,1/2,0,3`.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    alpha: i64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "1/2", allow_negative_numbers = true)]
    q: String,
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    u: String,
    #[arg(long, value_enum, default_value = "x")]
    vars: VarsArg,
    /// Quasi polynomial `Q_n` instead of `P_n` (needs `--vars xy` or `xyz`).
    #[arg(long)]
    quasi: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyOpts,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyOpts,
    /// Assignments such as `x=1/2,y=3`.
    #[arg(long)]
    at: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// Grid file (`{"q":[...],"u":[...]}`) or `default`.
    #[arg(long, default_value = "default")]
    grid: String,
    /// Worker threads; output does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

/// Result of one invocation: exit code, standard output, standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn err(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match cli.command {
        Command::Table(a) => cmd_table(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, Outcome> {
    s.parse().map_err(|e| Outcome::err(2, format!("--{flag}: {e}")))
}

fn read_base(spec: &str) -> Result<Vec<Rational>, Outcome> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Outcome::err(2, format!("--base: {e}")))?;
        let raw: Vec<String> = serde_json::from_str(&text).map_err(|e| Outcome::err(2, format!("--base: {e}")))?;
        raw.iter().map(|s| parse_rational("base", s)).collect()
    } else {
        spec.split(',').map(|s| parse_rational("base", s.trim())).collect()
    }
}

fn build_family(o: &FamilyOpts) -> Result<AppellFamily, Outcome> {
    let q = parse_rational("q", &o.q)?;
    let u = parse_rational("u", &o.u)?;
    let ctx = QContext::new(q, u).map_err(|e| Outcome::err(2, e))?;
    let built = match o.family {
        FamilyArg::Custom => {
            let Some(spec) = &o.base else {
                return Err(Outcome::err(2, "--family custom needs --base"));
            };
            let mut coeffs = read_base(spec)?;
            if coeffs.is_empty() {
                return Err(Outcome::err(2, "--base is empty"));
            }
            coeffs.resize(coeffs.len().max(o.n + 1), Rational::zero());
            coeffs.truncate(o.n + 1);
            AppellFamily::from_series(TruncSeries::from_scalars(ctx, &coeffs), o.alpha)
        }
        kind => {
            if o.base.is_some() {
                return Err(Outcome::err(2, "--base only applies to --family custom"));
            }
            let kind = match kind {
                FamilyArg::Bernoulli => FamilyKind::Bernoulli,
                FamilyArg::Euler => FamilyKind::Euler,
                _ => FamilyKind::Genocchi,
            };
            named_family(kind, o.alpha, o.n, ctx)
        }
    };
    built.map_err(|e| Outcome::err(3, e))
}

/// The polynomial selected by `--vars` and `--quasi`, with its variables.
fn select_poly(o: &FamilyOpts) -> Result<(MultiPoly, &'static [Var]), Outcome> {
    let f = build_family(o)?;
    let res = match (o.vars, o.quasi) {
        (VarsArg::X, false) => f.poly(o.n).map(|p| (p, &[Var::X][..])),
        (VarsArg::Xy, false) => f.bivar_default(o.n).map(|p| (p, &[Var::X, Var::Y][..])),
        (VarsArg::Xy, true) => quasi_homog(&f, o.n).map(|p| (p, &[Var::X, Var::Y][..])),
        (VarsArg::Xyz, true) => quasi_trivar(&f, o.n).map(|p| (p, &[Var::X, Var::Y, Var::Z][..])),
        (VarsArg::X, true) => return Err(Outcome::err(2, "--quasi needs --vars xy or xyz")),
        (VarsArg::Xyz, false) => return Err(Outcome::err(2, "--vars xyz needs --quasi")),
    };
    res.map_err(|e| Outcome::err(3, e))
}

#[derive(Serialize)]
struct TableOut<'a> {
    family: &'static str,
    alpha: i64,
    n: usize,
    q: String,
    u: String,
    vars: &'static str,
    quasi: bool,
    terms: &'a MultiPoly,
}

fn vars_name(v: VarsArg) -> &'static str {
    match v {
        VarsArg::X => "x",
        VarsArg::Xy => "xy",
        VarsArg::Xyz => "xyz",
    }
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Bernoulli => "bernoulli",
        FamilyArg::Euler => "euler",
        FamilyArg::Genocchi => "genocchi",
        FamilyArg::Custom => "custom",
    }
}

fn cmd_table(a: &TableArgs) -> Outcome {
    let o = &a.family;
    let (p, _) = match select_poly(o) {
        Ok(v) => v,
        Err(out) => return out,
    };
    match a.format {
        FormatArg::Json => {
            let out = TableOut {
                family: family_name(o.family),
                alpha: o.alpha,
                n: o.n,
                q: o.q.trim().parse::<Rational>().map(|r| r.to_string()).unwrap_or_default(),
                u: o.u.trim().parse::<Rational>().map(|r| r.to_string()).unwrap_or_default(),
                vars: vars_name(o.vars),
                quasi: o.quasi,
                terms: &p,
            };
            Outcome::ok(serde_json::to_string_pretty(&out).expect("serializable") + "\n")
        }
        FormatArg::Csv => {
            let mut s = String::from("ex,ey,ez,ew,ea,coeff\n");
            for (m, c) in p.terms() {
                let e = m.0;
                let _ = writeln!(s, "{},{},{},{},{},{}", e[0], e[1], e[2], e[3], e[4], c);
            }
            Outcome::ok(s)
        }
    }
}

fn parse_assignments(spec: &str) -> Result<BTreeMap<Var, Rational>, Outcome> {
    let mut out = BTreeMap::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((name, value)) = part.split_once('=') else {
            return Err(Outcome::err(2, format!("--at: expected name=value, got `{part}`")));
        };
        let var = Var::from_name(name.trim()).ok_or_else(|| Outcome::err(2, format!("--at: unknown variable `{name}`")))?;
        out.insert(var, parse_rational("at", value.trim())?);
    }
    Ok(out)
}

fn cmd_eval(a: &EvalArgs) -> Outcome {
    let point = match parse_assignments(&a.at) {
        Ok(p) => p,
        Err(out) => return out,
    };
    let (p, vars) = match select_poly(&a.family) {
        Ok(v) => v,
        Err(out) => return out,
    };
    if let Some(extra) = point.keys().find(|v| !vars.contains(v)) {
        return Outcome::err(2, format!("--at: `{extra}` is not a variable of this polynomial"));
    }
    if let Some(missing) = vars.iter().find(|v| !point.contains_key(v)) {
        return Outcome::err(2, Error::MissingAssignment(*missing));
    }
    match p.eval(&point) {
        Ok(v) => Outcome::ok(format!("{v}\n")),
        Err(e) => Outcome::err(2, e),
    }
}

#[derive(Serialize)]
struct VerifyOut {
    suites: Vec<SuiteResult>,
    pass: bool,
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::from_name(&a.suite) {
            Some(s) => vec![s],
            None => return Outcome::err(2, format!("unknown suite `{}`", a.suite)),
        }
    };
    let grid = if a.grid == "default" {
        GridSpec::default_grid()
    } else {
        let text = match std::fs::read_to_string(&a.grid) {
            Ok(t) => t,
            Err(e) => return Outcome::err(2, format!("--grid: {e}")),
        };
        match GridSpec::from_json(&text) {
            Ok(g) => g,
            Err(e) => return Outcome::err(2, e),
        }
    };
    let points = grid.points();
    let settings = Settings { max_n: a.max_n, order: a.order };
    let work = || suites.iter().map(|&s| run_suite(s, &points, settings)).collect::<Vec<_>>();
    let results = match a.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(work),
            Err(e) => return Outcome::err(2, format!("--threads: {e}")),
        },
        None => work(),
    };
    let pass = results.iter().all(|r| r.pass);
    let out = VerifyOut { suites: results, pass };
    let text = serde_json::to_string_pretty(&out).expect("serializable") + "\n";
    Outcome { code: if pass { 0 } else { 1 }, stdout: text, stderr: String::new() }
}

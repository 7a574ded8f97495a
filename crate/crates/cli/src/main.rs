//! `hyperquad`: evaluate hypergeometric series, generalized Dixon sums and
//! quadratic transformations from the command line, and run the identity
//! verification suites.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperquad::dixon::{self, DixonCase};
use hyperquad::exton::{
    self, GeneralTransformSpec, IdentityPair, LimitingCase, SpecialCase, TransformPoint,
};
use hyperquad::report::{self, Format};
use hyperquad::verify::{self, Suite, SuiteOptions};
use hyperquad::{eval_pfq, Error, PfqParams, PoleGuard, SeriesControl, SeriesStatus};

mod scalar_arg;

use scalar_arg::{parse_list, parse_scalar, ScalarList};

/// `println!` that tolerates a closed stdout, e.g. when piped into `head`.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;
const EXIT_NUMERICAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "hyperquad",
    version,
    about = "Hypergeometric series, generalized Dixon sums and quadratic transformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sum a pFq series term by term.
    EvalPfq(EvalPfqArgs),
    /// Generalized Dixon closed form next to the direct series.
    Dixon(DixonArgs),
    /// Evaluate both sides of a quadratic transformation.
    Transform(TransformArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// List the coefficient polynomials of every table cell.
    DumpTables(OutputArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Human => Format::Human,
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Args)]
struct ControlArgs {
    /// Relative stopping tolerance of the series.
    #[arg(long, value_parser = positive_scalar)]
    rel_tol: Option<f64>,
    #[arg(long, value_parser = positive_count)]
    max_terms: Option<usize>,
}

impl ControlArgs {
    fn control(&self) -> SeriesControl {
        let mut c = SeriesControl::default();
        if let Some(t) = self.rel_tol {
            c.rel_tol = t;
        }
        if let Some(m) = self.max_terms {
            c.max_terms = m;
        }
        c
    }
}

#[derive(Args)]
struct EvalPfqArgs {
    /// Numerator parameters, comma separated; rationals like -1/2 accepted.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_list, default_value = "")]
    num: ScalarList,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_list, default_value = "")]
    den: ScalarList,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    z: f64,
    #[command(flatten)]
    control: ControlArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DixonArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    b: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    c: f64,
    #[arg(long, allow_hyphen_values = true)]
    i: i32,
    #[arg(long, allow_hyphen_values = true)]
    j: i32,
    #[arg(long, value_parser = positive_scalar, default_value = "1e-9")]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TransformArgs {
    /// theorem, general, E31..E37 or E41..E44.
    #[arg(long)]
    case: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    d: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    i: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<i32>,
    /// The `(a)` list of the general transform.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_list, default_value = "")]
    a_list: ScalarList,
    /// The `(h)` list of the general transform.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_list, default_value = "")]
    h_list: ScalarList,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar, default_value = "1")]
    y: f64,
    #[arg(long, value_parser = positive_scalar, default_value = "1e-8")]
    tol: f64,
    #[command(flatten)]
    control: ControlArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Override every grid's pass tolerance.
    #[arg(long, value_parser = positive_scalar)]
    tol: Option<f64>,
    #[arg(long, value_parser = positive_count)]
    max_terms: Option<usize>,
    /// Random draws per coefficient cell in the tables suite.
    #[arg(long, value_parser = positive_count, default_value = "50")]
    samples: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

fn positive_scalar(s: &str) -> Result<f64, String> {
    let v = parse_scalar(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s} must be positive"))
    }
}

fn positive_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("{s} must be a positive integer")),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) => EXIT_DOMAIN,
        Error::UnsupportedPair { .. } => EXIT_UNSUPPORTED,
        Error::Config(_) => EXIT_USAGE,
        Error::Pole { .. }
        | Error::Indeterminate { .. }
        | Error::DivisionByZero { .. }
        | Error::NotTerminating
        | Error::CoefficientPole { .. } => EXIT_NUMERICAL,
    }
}

fn print_json(value: &serde_json::Value) {
    say!(
        "{}",
        serde_json::to_string_pretty(value).expect("json value")
    );
}

fn cmd_eval_pfq(args: &EvalPfqArgs) -> Result<u8, Error> {
    let params = PfqParams::new(args.num.0.clone(), args.den.0.clone());
    let r = eval_pfq(&params, args.z, &args.control.control())?;
    match Format::from(args.output.format) {
        Format::Json => print_json(&json!(r)),
        Format::Csv => say!(
            "value,terms_used,status\n{:e},{},{:?}",
            r.value,
            r.terms_used,
            r.status
        ),
        Format::Human => say!(
            "{}F{}({:?}; {:?}; {}) = {:.16e}\nterms used: {}\nstatus: {:?}",
            params.p(),
            params.q(),
            params.numerator,
            params.denominator,
            args.z,
            r.value,
            r.terms_used,
            r.status
        ),
    }
    Ok(if r.status == SeriesStatus::MaxTermsExceeded {
        EXIT_FAILURE
    } else {
        0
    })
}

fn cmd_dixon(args: &DixonArgs) -> Result<u8, Error> {
    let case = DixonCase::new(args.a, args.b, args.c, args.i, args.j);
    let mapped = if case.j < 0 {
        dixon::symmetry_extend(&case)?
    } else {
        dixon::table_cell(case.i, case.j)?;
        case
    };
    let pair = verify::check_dixon_case(&case, PoleGuard::default())?;
    let ok = pair.is_reliable() && pair.rel_residual <= args.tol;
    match Format::from(args.output.format) {
        Format::Json => print_json(&json!({
            "case": case,
            "evaluated_as": mapped,
            "closed_form": pair.lhs.value,
            "oracle": pair.rhs,
            "residual": pair.rel_residual,
        })),
        Format::Csv => say!(
            "closed_form,oracle,residual\n{:e},{:e},{:e}",
            pair.lhs.value,
            pair.rhs.value,
            pair.rel_residual
        ),
        Format::Human => {
            if mapped != case {
                say!(
                    "evaluated as (a, b, c, i, j) = ({}, {}, {}, {}, {})",
                    mapped.a,
                    mapped.b,
                    mapped.c,
                    mapped.i,
                    mapped.j
                );
            }
            say!("closed form: {:.16e}", pair.lhs.value);
            say!(
                "series:      {:.16e} ({:?}, {} terms)",
                pair.rhs.value,
                pair.rhs.status,
                pair.rhs.terms_used
            );
            say!("residual:    {:.3e}", pair.rel_residual);
            if !pair.rhs.is_reliable() {
                say!(
                    "series did not converge (validity margin {:.3})",
                    case.validity_margin()
                );
            }
        }
    }
    Ok(if ok { 0 } else { EXIT_FAILURE })
}

fn transform_pair(args: &TransformArgs) -> Result<IdentityPair, Error> {
    let control = args.control.control();
    let need_b = || {
        args.b
            .ok_or_else(|| Error::Config(format!("--b is required for case {}", args.case)))
    };
    let case = args.case.as_str();
    if case.eq_ignore_ascii_case("theorem") {
        let (Some(i), Some(j)) = (args.i, args.j) else {
            return Err(Error::Config(
                "--i and --j are required for case theorem".into(),
            ));
        };
        let pt = TransformPoint::new(need_b()?, args.d, i, j, args.x);
        return exton::theorem_identity(&pt, &control, PoleGuard::default());
    }
    if case.eq_ignore_ascii_case("general") {
        let spec = GeneralTransformSpec {
            a_list: args.a_list.0.clone(),
            h_list: args.h_list.0.clone(),
            d: args.d,
            x: args.x,
            y: args.y,
        };
        return Ok(IdentityPair::new(
            exton::exton_general_lhs(&spec, &control)?,
            exton::exton_general_rhs(&spec, &control)?,
        ));
    }
    if let Some(c) = SpecialCase::parse(case) {
        return exton::special_case(c, need_b()?, args.d, args.x, &control);
    }
    if let Some(c) = LimitingCase::parse(case) {
        return exton::limiting_case(c, args.d, args.x, &control);
    }
    Err(Error::Config(format!("unknown case {case:?}")))
}

fn cmd_transform(args: &TransformArgs) -> Result<u8, Error> {
    let pair = transform_pair(args)?;
    let ok = pair.is_reliable() && pair.rel_residual <= args.tol;
    match Format::from(args.output.format) {
        Format::Json => print_json(&json!(pair)),
        Format::Csv => say!(
            "lhs,rhs,residual\n{:e},{:e},{:e}",
            pair.lhs.value,
            pair.rhs.value,
            pair.rel_residual
        ),
        Format::Human => {
            say!("lhs:      {:.16e} ({:?})", pair.lhs.value, pair.lhs.status);
            say!("rhs:      {:.16e} ({:?})", pair.rhs.value, pair.rhs.status);
            say!("residual: {:.3e}", pair.rel_residual);
        }
    }
    Ok(if ok { 0 } else { EXIT_FAILURE })
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let suite: Suite = args.suite.parse()?;
    let opts = SuiteOptions {
        seed: args.seed,
        samples_per_cell: args.samples,
        tolerance: args.tol,
        max_terms: args.max_terms,
    };
    let rep = verify::run_suite(suite, &opts)?;
    let text = report::render(&rep, args.output.format.into())?;
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?,
        None => {
            use std::io::Write as _;
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    Ok(if rep.passed() { 0 } else { EXIT_FAILURE })
}

fn cmd_dump_tables(args: &OutputArgs) -> Result<u8, Error> {
    let mut cells = Vec::new();
    for i in (-3..=3).rev() {
        for j in 0..=3 {
            cells.push(match dixon::table_cell(i, j) {
                Ok(c) => json!({
                    "cell": format!("({i},{j})"),
                    "supported": true,
                    "A": c.a_text,
                    "B": c.b_text,
                    "correction": c.correction,
                }),
                Err(_) => json!({
                    "cell": format!("({i},{j})"),
                    "supported": false,
                    "A": "unsupported",
                    "B": "unsupported",
                    "correction": null,
                }),
            });
        }
    }
    match Format::from(args.format) {
        Format::Json => print_json(&json!(cells)),
        Format::Csv => {
            say!("cell,supported,A,B,correction");
            for c in &cells {
                say!(
                    "\"{}\",{},\"{}\",\"{}\",\"{}\"",
                    c["cell"].as_str().unwrap_or_default(),
                    c["supported"],
                    c["A"].as_str().unwrap_or_default(),
                    c["B"].as_str().unwrap_or_default(),
                    c["correction"]
                        .as_str()
                        .unwrap_or_default()
                        .replace('"', "\"\"")
                );
            }
        }
        Format::Human => {
            for c in &cells {
                say!("{}", c["cell"].as_str().unwrap_or_default());
                say!("  A = {}", c["A"].as_str().unwrap_or_default());
                say!("  B = {}", c["B"].as_str().unwrap_or_default());
                if let Some(note) = c["correction"].as_str() {
                    say!("  correction: {note}");
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::EvalPfq(a) => cmd_eval_pfq(a),
        Command::Dixon(a) => cmd_dixon(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Verify(a) => cmd_verify(a),
        Command::DumpTables(a) => cmd_dump_tables(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

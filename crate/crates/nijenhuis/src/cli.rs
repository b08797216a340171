//! Command-line front end. Exit codes are scriptable: 0 = all checks pass,
//! 1 = a mathematical check failed, 2 = usage or parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::fman::{frame_fields, multiplication_on_frame};
use crate::forms::{
    companion_dnd_form, complex_block_form, complex_toeplitz_form, dim2_case1, dim2_case2,
    dim2_case3, dim2_case4, dim3_cor1_form, dim3_cor2_form, dim3_thm4_form, jordan_unity_form,
    jordan_unity_form_flipped, toeplitz_form, BuiltForm, Sign,
};
use crate::model::{
    load_model_file, save_model_file, to_doc, Model, ModelMeta, ModeDoc, DEFAULT_SERIES_ORDER,
};
use crate::parser::parse_expression;
use crate::ring::{Mode, Rat};
use crate::tensor::VectorField;
use crate::verify::{
    check_2d_criterion, check_nijenhuis, check_trace_and_sigma, check_unity, Report, ReportDoc,
};

pub const SERIES_ORDER_ENV: &str = "NIJ_SERIES_ORDER";

#[derive(Parser)]
#[command(
    name = "nij",
    version,
    about = "Exact verification of Nijenhuis operators with a unity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run identity checks against a model file.
    Verify {
        file: PathBuf,
        /// Comma-separated subset of: nijenhuis, unity, sigma, criterion-2d,
        /// frame, axioms. Default: everything the model's fields allow.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Override the series truncation order declared in the file.
        #[arg(long)]
        series_order: Option<u32>,
    },
    /// Emit a built-in operator family as a model file.
    Generate(GenerateArgs),
    /// Derived objects computed from a model file.
    #[command(subcommand)]
    Derive(DeriveCommand),
    /// Run the compiled-in regression matrix and randomized suites.
    Selftest {
        #[arg(long)]
        series_order: Option<u32>,
    },
}

#[derive(Subcommand)]
pub enum DeriveCommand {
    /// Derive the frame multiplication X_i ∘ X_j = X_{i+j} of a model with
    /// `L` and `e`, emitting a model with `circ` and `E` blocks.
    StructureConstants {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        series_order: Option<u32>,
    },
}

#[derive(Args)]
pub struct GenerateArgs {
    /// One of: jordan, jordan-flipped, toeplitz, companion, complex-block,
    /// complex-toeplitz, dim2-case1..dim2-case4, dim3-thm4, dim3-cor1,
    /// dim3-cor2.
    #[arg(long)]
    pub family: String,
    /// Dimension (block count for the complex families).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Rational eigenvalue shift, e.g. "1/2".
    #[arg(long, default_value = "0")]
    pub lambda0: String,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// "+" or "-".
    #[arg(long, default_value = "+")]
    pub sign: String,
    /// Shift parameter of dim2-case2.
    #[arg(long, default_value = "0")]
    pub d: String,
    /// Expression for f: in (x, y) for dim2-case4, in (x2, x3) for dim3-thm4.
    #[arg(long)]
    pub f: Option<String>,
    /// Expression for g in (x2, x3), dim3-thm4 only.
    #[arg(long)]
    pub g: Option<String>,
    /// Univariate expression in z: the F parameter of dim3-cor1.
    #[arg(long)]
    pub f_param: Option<String>,
    /// Real part of the complex-family eigenvalue shift.
    #[arg(long, default_value = "0")]
    pub a0: String,
    /// Imaginary part of the complex-family eigenvalue shift (nonzero).
    #[arg(long, default_value = "1")]
    pub b0: String,
    #[arg(long)]
    pub series_order: Option<u32>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Everything a `verify` run emits, JSON-serializable as one document.
#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    pub mode: ModeDoc,
    pub reports: Vec<ReportDoc>,
}

const EXIT_MATH: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Print to stdout, ignoring a closed pipe (e.g. `nij … | head`).
fn out(text: std::fmt::Arguments) {
    use std::io::Write;
    let _ = std::io::stdout().write_fmt(text);
}

macro_rules! outln {
    ($($arg:tt)*) => { out(format_args!("{}\n", format_args!($($arg)*))) };
}
macro_rules! outp {
    ($($arg:tt)*) => { out(format_args!($($arg)*)) };
}

pub fn run(cli: Cli) -> ExitCode {
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_MATH)
        }
    }
}

enum CliError {
    Usage(String),
    Math(String),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn resolve_order(flag: Option<u32>) -> Result<Option<u32>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(SERIES_ORDER_ENV) {
        Ok(v) => v
            .parse::<u32>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{SERIES_ORDER_ENV} must be an integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify { file, checks, format, series_order } => {
            run_verify(&file, &checks, format, resolve_order(series_order)?)
        }
        Command::Generate(args) => run_generate(args),
        Command::Derive(DeriveCommand::StructureConstants { file, output, series_order }) => {
            run_derive(&file, output.as_deref(), resolve_order(series_order)?)
        }
        Command::Selftest { series_order } => {
            let order = resolve_order(series_order)?.unwrap_or(DEFAULT_SERIES_ORDER);
            let outcome = crate::selftest::run_selftest(order);
            for item in &outcome.items {
                let verdict = if item.pass { "PASS" } else { "FAIL" };
                match &item.detail {
                    Some(d) => outln!("{verdict} {} ({d})", item.name),
                    None => outln!("{verdict} {}", item.name),
                }
            }
            outln!(
                "selftest: {}/{} passed",
                outcome.items.iter().filter(|i| i.pass).count(),
                outcome.items.len()
            );
            Ok(if outcome.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MATH) })
        }
    }
}

const CHECK_NAMES: &[&str] = &["nijenhuis", "unity", "sigma", "criterion-2d", "frame", "axioms"];

fn run_verify(
    file: &Path,
    checks: &[String],
    format: Format,
    order: Option<u32>,
) -> Result<ExitCode, CliError> {
    for c in checks {
        if !CHECK_NAMES.contains(&c.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown check {c:?}; available: {}",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    let model = load_model_file(file, order).map_err(usage)?;
    let requested = |name: &str| checks.is_empty() || checks.iter().any(|c| c == name);
    let mut reports: Vec<Report> = Vec::new();
    let mut missing: Vec<&str> = Vec::new();
    let mut want = |name: &'static str, available: bool| -> bool {
        match (requested(name), available) {
            (true, true) => true,
            (true, false) => {
                // only a hard error when the user asked for it by name
                if !checks.is_empty() {
                    missing.push(name);
                }
                false
            }
            _ => false,
        }
    };
    if want("nijenhuis", model.l.is_some()) {
        reports.push(check_nijenhuis(model.l.as_ref().unwrap()));
    }
    if want("criterion-2d", model.l.as_ref().is_some_and(|l| l.dim() == 2)) {
        reports.push(check_2d_criterion(model.l.as_ref().unwrap()).expect("dimension 2"));
    }
    let has_pair = model.l.is_some() && model.e.is_some();
    if want("unity", has_pair) {
        reports.push(check_unity(model.l.as_ref().unwrap(), model.e.as_ref().unwrap()));
    }
    if want("sigma", has_pair) {
        reports.push(check_trace_and_sigma(model.l.as_ref().unwrap(), model.e.as_ref().unwrap()));
    }
    if want("frame", has_pair) {
        let l = model.l.as_ref().unwrap();
        reports.push(crate::fman::check_frame_relations(l, model.e.as_ref().unwrap(), l.dim() - 1));
    }
    if want("axioms", model.circ.is_some() && model.e.is_some() && model.euler.is_some()) {
        let fm = crate::fman::FManifoldModel {
            circ: model.circ.clone().unwrap(),
            e: model.e.clone().unwrap(),
            euler: model.euler.clone().unwrap(),
        };
        reports.push(crate::fman::check_fmanifold_axioms(&fm));
    }
    if !missing.is_empty() {
        return Err(CliError::Usage(format!(
            "model lacks the fields for requested checks: {}",
            missing.join(", ")
        )));
    }
    if reports.is_empty() {
        return Err(CliError::Usage("no applicable checks for this model".into()));
    }
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    let all_pass = reports.iter().all(Report::pass);
    let doc = VerifyDoc {
        model: model.meta.name.clone(),
        mode: ModeDoc::from_mode(model.mode),
        reports: reports.iter().map(|r| r.to_doc(&model.variables)).collect(),
    };
    match format {
        Format::Json => {
            outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Text => {
            match model.mode {
                Mode::Poly => outln!("mode: poly"),
                Mode::Series(n) => outln!("mode: series, order N={n}"),
            }
            for r in &doc.reports {
                outp!("{}", r.render_text());
            }
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MATH) })
}

fn parse_rat(s: &str, what: &str) -> Result<Rat, CliError> {
    s.parse::<Rat>().map_err(|e| CliError::Usage(format!("bad {what} {s:?}: {e}")))
}

fn run_generate(args: GenerateArgs) -> Result<ExitCode, CliError> {
    let lambda0 = parse_rat(&args.lambda0, "--lambda0")?;
    let sign: Sign = args.sign.parse().map_err(usage)?;
    let order = resolve_order(args.series_order)?.unwrap_or(DEFAULT_SERIES_ORDER);
    let expr2 = |src: &Option<String>, what: &str, names: [&str; 2]| -> Result<_, CliError> {
        let src = src
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("--family {} requires {what}", args.family)))?;
        let vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        parse_expression(src, &vars, Mode::Poly).map_err(usage)
    };
    let form: BuiltForm = match args.family.as_str() {
        "jordan" => jordan_unity_form(args.n, &lambda0).map_err(usage)?,
        "jordan-flipped" => jordan_unity_form_flipped(args.n, &lambda0).map_err(usage)?,
        "toeplitz" => toeplitz_form(args.n, &lambda0).map_err(usage)?,
        "companion" => companion_dnd_form(args.n).map_err(usage)?,
        "complex-block" => {
            complex_block_form(args.n, &parse_rat(&args.a0, "--a0")?, &parse_rat(&args.b0, "--b0")?)
                .map_err(usage)?
        }
        "complex-toeplitz" => complex_toeplitz_form(
            args.n,
            &parse_rat(&args.a0, "--a0")?,
            &parse_rat(&args.b0, "--b0")?,
        )
        .map_err(usage)?,
        "dim2-case1" => dim2_case1(&lambda0),
        "dim2-case2" => dim2_case2(&lambda0, &parse_rat(&args.d, "--d")?),
        "dim2-case3" => dim2_case3(&lambda0, args.k, sign).map_err(usage)?,
        "dim2-case4" => {
            let f = expr2(&args.f, "--f", ["x", "y"])?;
            dim2_case4(&lambda0, &f).map_err(usage)?
        }
        "dim3-thm4" => {
            let f = expr2(&args.f, "--f", ["x2", "x3"])?;
            let g = expr2(&args.g, "--g", ["x2", "x3"])?;
            dim3_thm4_form(args.k, &lambda0, sign, &f, &g).map_err(usage)?
        }
        "dim3-cor1" => {
            let src = args.f_param.as_ref().ok_or_else(|| {
                CliError::Usage("--family dim3-cor1 requires --f-param".into())
            })?;
            let fp = parse_expression(src, &["z".to_string()], Mode::Poly).map_err(usage)?;
            dim3_cor1_form(args.k, &lambda0, sign, &fp, order).map_err(usage)?
        }
        "dim3-cor2" => dim3_cor2_form(args.k, &lambda0, sign).map_err(usage)?,
        other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
    };
    let model = Model {
        meta: ModelMeta { name: Some(form.name.clone()), expected_checks: None },
        variables: form.vars.clone(),
        mode: form.l.mode(),
        l: Some(form.l),
        e: Some(form.e),
        euler: None,
        circ: None,
    };
    emit_model(&model, args.output.as_deref())
}

fn run_derive(
    file: &Path,
    output: Option<&Path>,
    order: Option<u32>,
) -> Result<ExitCode, CliError> {
    let model = load_model_file(file, order).map_err(usage)?;
    let (l, e) = match (&model.l, &model.e) {
        (Some(l), Some(e)) => (l, e),
        _ => return Err(CliError::Usage("model needs both L and e to derive structure constants".into())),
    };
    let circ = multiplication_on_frame(l, e).map_err(|err| CliError::Math(err.to_string()))?;
    let euler = frame_fields(l, e, 1).pop().expect("m+1 fields");
    let derived = Model {
        meta: model.meta.clone(),
        variables: model.variables.clone(),
        mode: model.mode,
        l: model.l.clone(),
        e: Some(e.clone()),
        euler: Some(VectorField::new(euler.components).expect("coherent")),
        circ: Some(circ),
    };
    emit_model(&derived, output)
}

fn emit_model(model: &Model, output: Option<&Path>) -> Result<ExitCode, CliError> {
    match output {
        Some(path) => save_model_file(path, model).map_err(usage)?,
        None => {
            let doc = to_doc(model);
            outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

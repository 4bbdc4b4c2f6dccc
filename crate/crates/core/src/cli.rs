//! The `renhance` command line. [`run`] does all the work so tests can drive it
//! in-process; the binary only forwards `std::env::args`.
//!
//! Exit codes: 0 success, 1 a mathematical negative (not enhanceable, an axiom
//! fails), 2 bad input, 3 a resource cap was hit.

use std::collections::{BTreeMap, HashMap};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{self, CatalogError, Verdict};
use crate::invariant::{self, BraidWord, InvariantError, InvariantInput, Limits, TangleWord};
use crate::io::{IoError, MatrixFile};
use crate::rmatrix::{self, EnhancementReport, RMatrixError};
use crate::scalar::{
    parse_exact, Backend, CFloat, FieldTag, RatFunc, Scalar, ScalarError, Tolerance,
};
use crate::tensor::{Mat, Tensor4};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "renhance",
    version,
    about = "Decide, build and verify enhanced R-matrices and evaluate their invariants"
)]
pub struct Cli {
    /// Relative tolerance for the float backend (overrides the file's).
    #[arg(long, global = true, value_name = "TOL")]
    pub tolerance: Option<f64>,
    /// Largest strand count a braid representation may use.
    #[arg(long, global = true, value_name = "M")]
    pub max_strands: Option<usize>,
    /// Evaluate in complex floating point even for exact files.
    #[arg(long, global = true)]
    pub numeric: bool,
    /// Bind an indeterminate before computing, e.g. `--at q=3/2`.
    #[arg(long = "at", global = true, value_name = "NAME=VALUE")]
    pub at: Vec<String>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check YB, biinvertibility and whether VU is scalar.
    Check { file: PathBuf },
    /// Build the enhanced pairs and quadruples of an R-matrix.
    Enhance {
        file: PathBuf,
        /// Use this square root of the VU scalar.
        #[arg(long)]
        alpha: Option<String>,
        /// Write the pair built from PR to this matrix file.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Write the quadruple built from PR instead of the pair.
        #[arg(long, requires = "output")]
        quadruple: bool,
    },
    /// Verify the enhancement axioms of a supplied S and mu.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Evaluate the Markov-trace invariant of a braid closure.
    Invariant {
        file: PathBuf,
        /// e.g. `strands=3 s1 s2' s1`
        #[arg(long)]
        braid: String,
        /// For a bare R-matrix, use the quadruple from PR instead of the pair.
        #[arg(long)]
        quadruple: bool,
    },
    /// Evaluate a layered tangle word.
    Tangle {
        file: PathBuf,
        /// File with one layer per line, bottom first.
        #[arg(long)]
        word: PathBuf,
    },
    /// The built-in families of R-matrices.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Quadruple axioms when the file has alpha or beta, pair axioms otherwise.
    Auto,
    Pair,
    Quadruple,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// List every family with its parameters and verdict.
    List,
    /// Print a family as a matrix file.
    Get {
        id: String,
        /// Bind a parameter, e.g. `--bind q=3/2`.
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        bind: Vec<String>,
        /// Emit the enhanced pair from PR instead of R.
        #[arg(long)]
        pair: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Negative(String),
    #[error("{0}")]
    Cap(String),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Output(_) => EXIT_INPUT,
            CliError::Negative(_) => EXIT_NEGATIVE,
            CliError::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RMatrixError> for CliError {
    fn from(e: RMatrixError) -> Self {
        CliError::Negative(e.to_string())
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::ResourceCap { .. } => CliError::Cap(e.to_string()),
            InvariantError::Singular | InvariantError::RMatrix(_) => {
                CliError::Negative(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

/// Options shared by every command, resolved against a file.
struct Ctx {
    tol: Tolerance,
    limits: Limits,
    at: HashMap<String, RatFunc>,
    json: bool,
}

fn binding_tag() -> FieldTag {
    FieldTag::exact(&[]).with_imaginary(true)
}

fn parse_bindings(items: &[String], flag: &str) -> Result<Vec<(String, RatFunc)>, CliError> {
    items
        .iter()
        .map(|item| {
            let (name, value) = item.split_once('=').ok_or_else(|| {
                CliError::Input(format!("--{flag} expects NAME=VALUE, got '{item}'"))
            })?;
            let v = parse_exact(value.trim(), &binding_tag())
                .map_err(|e| CliError::Input(format!("--{flag} {name}: {e}")))?;
            Ok((name.trim().to_string(), v))
        })
        .collect()
}

fn ctx_for(cli: &Cli, file: &MatrixFile) -> Result<Ctx, CliError> {
    let tol = match cli.tolerance {
        Some(t) if t > 0.0 => Tolerance(t),
        Some(t) => {
            return Err(CliError::Input(format!(
                "--tolerance must be positive, got {t}"
            )))
        }
        None => file.field.tolerance,
    };
    let mut at = HashMap::new();
    for (name, v) in parse_bindings(&cli.at, "at")? {
        if !file.field.indeterminates.contains(&name) {
            return Err(CliError::Input(format!(
                "--at {name}: the file has no indeterminate '{name}'"
            )));
        }
        at.insert(name, v);
    }
    Ok(Ctx {
        tol,
        limits: Limits {
            max_strands: cli.max_strands,
        },
        at,
        json: cli.json,
    })
}

fn float_backend(cli: &Cli, file: &MatrixFile) -> bool {
    cli.numeric || file.field.backend == Backend::Float
}

/// The field written for values computed under `ctx`.
fn output_field<S: Scalar>(file: &MatrixFile, ctx: &Ctx) -> FieldTag {
    if S::EXACT {
        let mut tag = file.field.clone();
        tag.indeterminates.retain(|s| !ctx.at.contains_key(s));
        if ctx.at.values().any(|v| v.to_string().contains('i')) {
            tag.imaginary = true;
        }
        tag
    } else {
        FieldTag::float(ctx.tol)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    macro_rules! dispatch {
        ($f:ident, $path:expr $(, $arg:expr)*) => {{
            let file = MatrixFile::read($path)?;
            let ctx = ctx_for(cli, &file)?;
            if float_backend(cli, &file) {
                $f::<CFloat>(&file, &ctx, out $(, $arg)*)
            } else {
                $f::<RatFunc>(&file, &ctx, out $(, $arg)*)
            }
        }};
    }
    match &cli.command {
        Command::Check { file } => dispatch!(check, file),
        Command::Enhance {
            file,
            alpha,
            output,
            quadruple,
        } => {
            dispatch!(
                enhance,
                file,
                alpha.as_deref(),
                output.as_deref(),
                *quadruple
            )
        }
        Command::Verify { file, mode } => dispatch!(verify, file, *mode),
        Command::Invariant {
            file,
            braid,
            quadruple,
        } => {
            let xi: BraidWord = braid.parse()?;
            dispatch!(invariant, file, &xi, *quadruple)
        }
        Command::Tangle { file, word } => {
            let text = std::fs::read_to_string(word)
                .map_err(|e| CliError::Input(format!("{}: {e}", word.display())))?;
            let w: TangleWord = text.parse()?;
            dispatch!(tangle, file, &w)
        }
        Command::Catalog {
            command: CatalogCommand::List,
        } => catalog_list(out, cli.json),
        Command::Catalog {
            command:
                CatalogCommand::Get {
                    id,
                    bind,
                    pair,
                    output,
                },
        } => {
            let tol = Tolerance(cli.tolerance.unwrap_or(Tolerance::default().0));
            let bindings = parse_bindings(bind, "bind")?;
            if cli.numeric {
                catalog_get::<CFloat>(id, &bindings, *pair, output.as_deref(), tol, out)
            } else {
                catalog_get::<RatFunc>(id, &bindings, *pair, output.as_deref(), tol, out)
            }
        }
    }
}

fn mat_json<S: Scalar>(m: &Mat<S>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| json!(x.to_string())).collect()))
            .collect(),
    )
}

fn report_json(rep: &EnhancementReport) -> Value {
    let axioms: serde_json::Map<String, Value> = rep
        .outcomes
        .iter()
        .map(|(a, o)| {
            let v = json!({
                "passed": o.passed,
                "witness": o.evidence.witness,
                "residual": o.evidence.residual,
                "note": o.evidence.note,
            });
            (a.name().to_string(), v)
        })
        .collect();
    json!({
        "axioms": axioms,
        "enh2_enh3_agree": rep.enh2_enh3_agree,
        "enh4_enh5_agree": rep.enh4_enh5_agree,
        "all_passed": rep.all_passed(),
    })
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("json values serialize")
    )?;
    Ok(())
}

fn section<S: Scalar>(out: &mut dyn Write, title: &str, m: &Mat<S>) -> Result<(), CliError> {
    writeln!(out, "{title}:")?;
    write!(out, "{m}")?;
    Ok(())
}

/// The verdict a check reaches, matching [`Verdict`] wording.
pub fn check_verdict<S: Scalar>(
    test: &rmatrix::EnhancementTest<S>,
    tol: Tolerance,
) -> (String, bool) {
    if !test.biinvertible {
        return ("not biinvertible".into(), false);
    }
    match (&test.alpha_sq, &test.alpha) {
        (None, _) => ("not enhanceable (VU is not scalar)".into(), false),
        (Some(a2), _) if a2.close(&S::one(), tol) => ("enhanced as is (alpha = 1)".into(), true),
        (Some(_), Some(a)) => (format!("enhanced with scaling alpha = {a}"), true),
        (Some(a2), None) => (
            format!("enhanceable with alpha^2 = {a2}; pass --alpha to choose a root"),
            true,
        ),
    }
}

fn check<S: Scalar>(file: &MatrixFile, ctx: &Ctx, out: &mut dyn Write) -> Result<i32, CliError> {
    let r: Tensor4<S> = file.tensor(&ctx.at)?;
    let (rep, test) = rmatrix::check_r_matrix(&r, ctx.tol);
    let (verdict, positive) = check_verdict(&test, ctx.tol);
    let yb = rep.passed(rmatrix::Axiom::Yb).unwrap_or(false);
    let code = if positive && yb {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    if ctx.json {
        let opt = |m: &Option<Mat<S>>| m.as_ref().map(mat_json).unwrap_or(Value::Null);
        emit(
            out,
            &json!({
                "verdict": verdict,
                "report": report_json(&rep),
                "u": opt(&test.u),
                "v": opt(&test.v),
                "vu": opt(&test.vu),
                "uv_equals_vu": test.uv_equals_vu,
                "alpha_sq": test.alpha_sq.as_ref().map(ToString::to_string),
                "alpha": test.alpha.as_ref().map(ToString::to_string),
            }),
        )?;
        return Ok(code);
    }
    write!(out, "{rep}")?;
    if let (Some(u), Some(v), Some(vu)) = (&test.u, &test.v, &test.vu) {
        section(out, "U", u)?;
        section(out, "V", v)?;
        section(out, "VU", vu)?;
        writeln!(
            out,
            "UV = VU: {}",
            if test.uv_equals_vu { "yes" } else { "no" }
        )?;
    }
    if let Some(a2) = &test.alpha_sq {
        writeln!(out, "alpha^2 = {a2}")?;
    }
    if let Some(a) = &test.alpha {
        writeln!(out, "alpha = {a}")?;
    }
    writeln!(out, "verdict: {verdict}")?;
    Ok(code)
}

fn read_scalar<S: Scalar>(
    text: &str,
    file: &MatrixFile,
    ctx: &Ctx,
    what: &str,
) -> Result<S, CliError> {
    let mut tag = file.field.clone();
    tag.imaginary |= file.field.backend == Backend::Float;
    let wrap = |e: ScalarError| CliError::Input(format!("{what}: {e}"));
    let v = parse_exact(text, &tag).map_err(wrap)?;
    let v = if ctx.at.is_empty() {
        v
    } else {
        v.subs(&ctx.at).map_err(wrap)?
    };
    S::from_exact(&v).map_err(wrap)
}

fn enhance<S: Scalar>(
    file: &MatrixFile,
    ctx: &Ctx,
    out: &mut dyn Write,
    alpha: Option<&str>,
    output: Option<&Path>,
    quadruple: bool,
) -> Result<i32, CliError> {
    let r: Tensor4<S> = file.tensor(&ctx.at)?;
    let result = match alpha {
        Some(text) => {
            rmatrix::enhance_with_alpha(&r, read_scalar(text, file, ctx, "--alpha")?, ctx.tol)
        }
        None => rmatrix::enhance(&r, ctx.tol),
    };
    let enh = match result {
        Ok(e) => e,
        Err(RMatrixError::NoMonomialRoot(a2)) => {
            return Err(CliError::Negative(format!(
                "VU = ({a2}) I has no monomial square root; pass --alpha with a chosen root"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = output {
        let field = output_field::<S>(file, ctx);
        let mf = if quadruple {
            let q = &enh.quadruples[0];
            MatrixFile::from_values(field, &q.s, Some(&q.mu), Some(&q.alpha), Some(&q.beta))
        } else {
            let p = &enh.pairs[0];
            MatrixFile::from_values(field, &p.s, Some(&p.mu), None, None)
        };
        mf.write(path)?;
    }
    let a = &enh.alpha;
    if ctx.json {
        let pairs: Vec<Value> = enh
            .pairs
            .iter()
            .map(|p| json!({"from": p.provenance.to_string(), "s": mat_json(p.s.mat()), "mu": mat_json(&p.mu)}))
            .collect();
        let quads: Vec<Value> = enh
            .quadruples
            .iter()
            .map(|q| {
                json!({
                    "from": q.provenance.to_string(),
                    "s": mat_json(q.s.mat()),
                    "mu": mat_json(&q.mu),
                    "alpha": q.alpha.to_string(),
                    "beta": q.beta.to_string(),
                })
            })
            .collect();
        emit(
            out,
            &json!({"alpha": a.to_string(), "pairs": pairs, "quadruples": quads}),
        )?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "alpha = {a}")?;
    let ainv = a.inv()?;
    for (p, m) in enh.pairs.iter().zip(["U", "V"]) {
        let from = p.provenance;
        writeln!(out, "pair from {from}: ({a}*{from}, {ainv}*{m})")?;
        section(out, "S", p.s.mat())?;
        section(out, "mu", &p.mu)?;
    }
    for (q, m) in enh.quadruples.iter().zip(["U", "V"]) {
        writeln!(
            out,
            "quadruple from {}: ({}, {m}, {}, {})",
            q.provenance, q.provenance, q.alpha, q.beta
        )?;
        section(out, "S", q.s.mat())?;
        section(out, "mu", &q.mu)?;
    }
    Ok(EXIT_OK)
}

fn verify<S: Scalar>(
    file: &MatrixFile,
    ctx: &Ctx,
    out: &mut dyn Write,
    mode: Mode,
) -> Result<i32, CliError> {
    let s: Tensor4<S> = file.tensor(&ctx.at)?;
    let mu: Mat<S> = file
        .mu(&ctx.at)?
        .ok_or_else(|| CliError::Input("verify needs a 'mu' matrix".into()))?;
    let quad = match mode {
        Mode::Auto => file.alpha.is_some() || file.beta.is_some(),
        Mode::Pair => false,
        Mode::Quadruple => true,
    };
    let rep = if quad {
        let alpha = file.alpha(&ctx.at)?.unwrap_or_else(S::one);
        let beta = file.beta(&ctx.at)?.unwrap_or_else(S::one);
        rmatrix::verify_quadruple(&s, &mu, &alpha, &beta, ctx.tol)?
    } else {
        rmatrix::verify_pair(&s, &mu, ctx.tol)?
    };
    let kind = if quad { "quadruple" } else { "pair" };
    if ctx.json {
        emit(out, &json!({"kind": kind, "report": report_json(&rep)}))?;
    } else {
        write!(out, "{rep}")?;
        writeln!(
            out,
            "{kind}: {}",
            if rep.all_passed() {
                "all axioms pass"
            } else {
                "axioms fail"
            }
        )?;
    }
    Ok(if rep.all_passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

/// `(S, μ, α, β)` from a file with `mu`, otherwise enhanced from `R`.
fn invariant_input<S: Scalar>(
    file: &MatrixFile,
    ctx: &Ctx,
    quadruple: bool,
) -> Result<InvariantInput<S>, CliError> {
    let s: Tensor4<S> = file.tensor(&ctx.at)?;
    if let Some(mu) = file.mu(&ctx.at)? {
        let alpha = file.alpha(&ctx.at)?.unwrap_or_else(S::one);
        let beta = file.beta(&ctx.at)?.unwrap_or_else(S::one);
        return Ok(InvariantInput::new(s, mu, alpha, beta)?);
    }
    let mut enh = rmatrix::enhance(&s, ctx.tol)?;
    Ok(if quadruple {
        enh.quadruples.swap_remove(0).into()
    } else {
        enh.pairs.swap_remove(0).into()
    })
}

fn invariant<S: Scalar>(
    file: &MatrixFile,
    ctx: &Ctx,
    out: &mut dyn Write,
    xi: &BraidWord,
    quadruple: bool,
) -> Result<i32, CliError> {
    let input = invariant_input::<S>(file, ctx, quadruple)?;
    let value = invariant::turaev(&input, xi, ctx.limits)?;
    let w = invariant::writhe(xi);
    if ctx.json {
        emit(
            out,
            &json!({"braid": xi.to_string(), "writhe": w, "strands": xi.strands(), "value": value.to_string()}),
        )?;
    } else {
        writeln!(out, "braid: {xi}")?;
        writeln!(out, "writhe: {w}")?;
        writeln!(out, "T = {value}")?;
    }
    Ok(EXIT_OK)
}

fn tangle<S: Scalar>(
    file: &MatrixFile,
    ctx: &Ctx,
    out: &mut dyn Write,
    word: &TangleWord,
) -> Result<i32, CliError> {
    let input = invariant_input::<S>(file, ctx, false)?;
    let m = invariant::tangle_eval(word, &input)?;
    if ctx.json {
        emit(
            out,
            &json!({"rows": m.rows(), "cols": m.cols(), "matrix": mat_json(&m)}),
        )?;
    } else {
        writeln!(out, "{}x{}", m.rows(), m.cols())?;
        write!(out, "{m}")?;
    }
    Ok(EXIT_OK)
}

fn catalog_list(out: &mut dyn Write, as_json: bool) -> Result<i32, CliError> {
    let fams = catalog::families();
    if as_json {
        let v: Vec<Value> = fams
            .iter()
            .map(|f| json!({"family": f.family, "ids": f.ids, "params": f.params, "verdict": f.verdict.to_string()}))
            .collect();
        emit(out, &Value::Array(v))?;
        return Ok(EXIT_OK);
    }
    for f in &fams {
        let params = if f.params.is_empty() {
            "-".to_string()
        } else {
            f.params.join(",")
        };
        writeln!(out, "{:<8} {:<8} {}", f.ids.join(","), params, f.verdict)?;
    }
    Ok(EXIT_OK)
}

fn catalog_get<S: Scalar>(
    id: &str,
    bindings: &[(String, RatFunc)],
    pair: bool,
    output: Option<&Path>,
    tol: Tolerance,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut bound: BTreeMap<String, S> = BTreeMap::new();
    for (name, v) in bindings {
        bound.insert(name.clone(), S::from_exact(v)?);
    }
    let fx = catalog::fixture::<S>(id, &bound)?;
    let field = if S::EXACT {
        let free: Vec<&str> = fx
            .params
            .iter()
            .copied()
            .filter(|p| !bound.contains_key(*p))
            .collect();
        let imaginary = bindings.iter().any(|(_, v)| v.to_string().contains('i'));
        FieldTag::exact(&free).with_imaginary(imaginary)
    } else {
        FieldTag::float(tol)
    };
    let mf = if pair {
        if let Verdict::NotBiinvertible = fx.verdict {
            return Err(CliError::Negative(format!(
                "family {id} is not biinvertible"
            )));
        }
        let enh = rmatrix::enhance(&fx.r, tol)?;
        let p = &enh.pairs[0];
        MatrixFile::from_values(field, &p.s, Some(&p.mu), None, None)
    } else {
        MatrixFile::from_values(field, &fx.r, None, None, None)
    };
    match output {
        Some(path) => mf.write(path)?,
        None => out.write_all(mf.to_json_string().as_bytes())?,
    }
    Ok(EXIT_OK)
}

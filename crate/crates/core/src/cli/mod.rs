//! Command-line front end: reads JSON input files, dispatches to the
//! computation modules and emits one JSON document per invocation.

pub mod io;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::frobenius::{
    fine_frobenius, normalize, verify_fine_for, verify_normalized, FineFrobenius,
    LinearCovariant, NormalizedFineFrobenius, NormalizedQuad, QuadCovariant,
};
use crate::jordan_chevalley::{complete_jc, jc_decompose_newton, verify_additive_jc, verify_complete_jc};
use crate::matrix::{eval_poly_at_matrix, GroundMatrix};
use crate::poly::{Polynomial, DEFAULT_SEED};
use crate::report::Report;
use crate::scalar::{padic_valuation, AbsValue, Field};
use crate::series::{
    apply_named_closed_form, apply_series, complete_jc_of_image, eigen_abs_data, in_omega_hat,
    max_abs, max_deviation, padic_partial_sum, radius_of_convergence, taylor_oracle, AbsNum, Radius,
    SeriesKind, SeriesMatrix, SeriesOptions, SeriesSpec,
};

/// Tolerance for float comparisons in `apply` and `check` reports.
pub const TOLERANCE: f64 = 1e-12;
pub const ORACLE_TERMS: usize = 60;

#[derive(Parser, Debug)]
#[command(name = "jcfrob", version, about = "Exact Jordan–Chevalley and fine Frobenius decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Input JSON file.
    pub input: PathBuf,
    /// Field for polynomial inputs given as a bare coefficient array.
    #[arg(long)]
    pub field: Option<String>,
    /// Seed for randomized factorization steps.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    /// exp, sin, cos, sinh, cosh, or custom:<file>.
    #[arg(long = "fn", default_value = "exp")]
    pub function: String,
    /// arch, trivial, or padic:<p>.
    #[arg(long = "abs", default_value = "arch")]
    pub abs: String,
    /// Working precision in bits (archimedean).
    #[arg(long, default_value_t = 128)]
    pub prec: u32,
    /// Series cutoff; chosen automatically when absent.
    #[arg(long)]
    pub terms: Option<usize>,
    /// Required valuation bound (p-adic).
    #[arg(long, default_value_t = 10)]
    pub valuation: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal polynomial of a matrix.
    Minpoly(InputArgs),
    /// Factorization of a polynomial, or of a matrix's minimal polynomial.
    Factor(InputArgs),
    /// Additive decomposition M = S + N.
    Jc(InputArgs),
    /// Complete decomposition M = H + V + N.
    Cjc(InputArgs),
    /// Fine Frobenius covariants.
    Fine(InputArgs),
    /// Normalized fine Frobenius covariants (over Q).
    Normalize(InputArgs),
    /// Power series evaluated at a matrix.
    Apply {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Convergence-domain verdict with per-eigenvalue data.
    Domain {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Re-verify a result document against its input.
    Check {
        input: PathBuf,
        result: PathBuf,
        /// Cutoff of the Taylor oracle used for `apply` results.
        #[arg(long, default_value_t = ORACLE_TERMS)]
        terms: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Minpoly,
    Factor,
    Jc,
    Cjc,
    Fine,
    Normalize,
    Apply,
    Domain,
    Check,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Minpoly => "minpoly",
            CommandKind::Factor => "factor",
            CommandKind::Jc => "jc",
            CommandKind::Cjc => "cjc",
            CommandKind::Fine => "fine",
            CommandKind::Normalize => "normalize",
            CommandKind::Apply => "apply",
            CommandKind::Domain => "domain",
            CommandKind::Check => "check",
        }
    }
}

/// Validated options of one invocation.
#[derive(Clone, Debug)]
pub struct Options {
    pub field: Option<Field>,
    pub seed: u64,
    pub abs: AbsValue,
    pub series: Option<SeriesSpec>,
    pub prec: u32,
    pub terms: Option<usize>,
    pub valuation: i64,
    pub oracle_terms: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            field: None,
            seed: DEFAULT_SEED,
            abs: AbsValue::Archimedean,
            series: None,
            prec: 128,
            terms: None,
            valuation: 10,
            oracle_terms: ORACLE_TERMS,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: CommandKind,
    pub inputs: Vec<PathBuf>,
    pub options: Options,
}

/// Exit status and the document written to standard output.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn parse_json(bytes: &[u8]) -> Result<Value> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

/// Custom series file: `{"coefficients": [...], "radius": "inf" | "<rational>"}`,
/// or a bare coefficient array with no declared radius.
pub fn parse_custom_series(v: &Value) -> Result<SeriesSpec> {
    let list = match v {
        Value::Array(a) => a,
        _ => io::get_array(v, "coefficients")?,
    };
    let coeffs = list
        .iter()
        .map(|c| match c {
            Value::String(s) => crate::scalar::parse_rational(s),
            Value::Number(n) => crate::scalar::parse_rational(&n.to_string()),
            _ => Err(Error::SchemaMismatch("coefficients must be strings".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    let radius = match v.get("radius") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s == "inf" => Some(Radius::Infinite),
        Some(r) => {
            let s = r
                .as_str()
                .map(str::to_string)
                .unwrap_or_else(|| r.to_string());
            let q = crate::scalar::parse_rational(&s)?;
            if !q.is_positive() {
                return Err(Error::SchemaMismatch("radius must be positive".into()));
            }
            Some(Radius::Value(q))
        }
    };
    Ok(SeriesSpec::custom(coeffs, radius))
}

fn series_from_flag(flag: &str) -> Result<SeriesSpec> {
    match flag.strip_prefix("custom:") {
        Some(path) => parse_custom_series(&parse_json(&read(Path::new(path))?)?),
        None => SeriesSpec::parse_name(flag),
    }
}

impl Job {
    pub fn from_cli(cli: Cli) -> Result<Job> {
        let mut options = Options::default();
        let with_input = |a: &InputArgs, o: &mut Options| -> Result<Vec<PathBuf>> {
            o.field = a.field.as_deref().map(Field::parse).transpose()?;
            o.seed = a.seed;
            Ok(vec![a.input.clone()])
        };
        let with_series = |s: &SeriesArgs, o: &mut Options| -> Result<()> {
            o.abs = AbsValue::parse(&s.abs)?;
            o.series = Some(series_from_flag(&s.function)?);
            if s.prec < 16 {
                return Err(Error::Parse("precision must be at least 16 bits".into()));
            }
            o.prec = s.prec;
            o.terms = s.terms;
            o.valuation = s.valuation;
            Ok(())
        };
        let (command, inputs) = match &cli.command {
            Command::Minpoly(a) => (CommandKind::Minpoly, with_input(a, &mut options)?),
            Command::Factor(a) => (CommandKind::Factor, with_input(a, &mut options)?),
            Command::Jc(a) => (CommandKind::Jc, with_input(a, &mut options)?),
            Command::Cjc(a) => (CommandKind::Cjc, with_input(a, &mut options)?),
            Command::Fine(a) => (CommandKind::Fine, with_input(a, &mut options)?),
            Command::Normalize(a) => (CommandKind::Normalize, with_input(a, &mut options)?),
            Command::Apply { input, series } => {
                let inputs = with_input(input, &mut options)?;
                with_series(series, &mut options)?;
                (CommandKind::Apply, inputs)
            }
            Command::Domain { input, series } => {
                let inputs = with_input(input, &mut options)?;
                with_series(series, &mut options)?;
                (CommandKind::Domain, inputs)
            }
            Command::Check { input, result, terms } => {
                options.oracle_terms = *terms;
                (CommandKind::Check, vec![input.clone(), result.clone()])
            }
        };
        Ok(Job {
            command,
            inputs,
            options,
        })
    }
}

fn error_object(e: &Error) -> Value {
    json!({"code": e.code(), "message": e.to_string()})
}

/// Runs a job to completion. Never panics on bad input; failures become
/// error documents with exit code 1 (malformed input) or 2 (precondition).
pub fn run(job: &Job) -> Outcome {
    let bytes = match job.inputs.first().map(|p| read(p)) {
        Some(Ok(b)) => b,
        Some(Err(e)) => return failure(job, None, e),
        None => return failure(job, None, Error::Parse("no input file".into())),
    };
    let hash = hex::encode(Sha256::digest(&bytes));
    let result = parse_json(&bytes).and_then(|input| dispatch(job, &input));
    match result {
        Ok((result, report)) => {
            let code = 0;
            Outcome {
                code,
                document: json!({
                    "command": job.command.name(),
                    "input_hash": hash,
                    "result": result,
                    "report": report,
                }),
            }
        }
        Err(e) => failure(job, Some(hash), e),
    }
}

fn failure(job: &Job, hash: Option<String>, e: Error) -> Outcome {
    Outcome {
        code: if e.is_precondition() { 2 } else { 1 },
        document: json!({
            "command": job.command.name(),
            "input_hash": hash,
            "error": error_object(&e),
        }),
    }
}

fn dispatch(job: &Job, input: &Value) -> Result<(Value, Report)> {
    let o = &job.options;
    match job.command {
        CommandKind::Minpoly => cmd_minpoly(&io::parse_matrix(input)?),
        CommandKind::Factor => cmd_factor(input, o),
        CommandKind::Jc => cmd_jc(&io::parse_matrix(input)?),
        CommandKind::Cjc => cmd_cjc(&io::parse_matrix(input)?),
        CommandKind::Fine => cmd_fine(&io::parse_matrix(input)?),
        CommandKind::Normalize => cmd_normalize(&io::parse_matrix(input)?),
        CommandKind::Apply => cmd_apply(&io::parse_matrix(input)?, o),
        CommandKind::Domain => cmd_domain(&io::parse_matrix(input)?, o),
        CommandKind::Check => {
            let path = job
                .inputs
                .get(1)
                .ok_or_else(|| Error::Parse("check needs a result document".into()))?;
            let doc = parse_json(&read(path)?)?;
            cmd_check(input, &doc, o)
        }
    }
}

fn cmd_minpoly(m: &GroundMatrix) -> Result<(Value, Report)> {
    let mp = m.minimal_polynomial();
    let report = check_minpoly(m, &mp);
    Ok((json!({"minimal_polynomial": io::poly(&mp), "display": mp.to_string()}), report))
}

fn check_minpoly(m: &GroundMatrix, mp: &Polynomial) -> Report {
    let mut r = Report::new();
    r.push("monic", mp.is_monic());
    r.push(
        "annihilates",
        eval_poly_at_matrix(mp, m).map(|x| x.is_zero()).unwrap_or(false),
    );
    r.push("matches_recomputed", &m.minimal_polynomial() == mp);
    r
}

/// A polynomial document, or a matrix whose minimal polynomial is meant.
fn factor_target(input: &Value, o: &Options) -> Result<Polynomial> {
    if input.get("entries").is_some() {
        return Ok(io::parse_matrix(input)?.minimal_polynomial());
    }
    if let Some(coeffs) = input.get("coeffs") {
        let field = io::parse_field(input)?;
        return io::parse_poly(coeffs, field);
    }
    io::parse_poly(input, o.field.unwrap_or(Field::Rational))
}

pub fn factorization_json(fac: &crate::poly::Factorization) -> Value {
    let factors: Vec<Value> = fac
        .factors
        .iter()
        .map(|(f, k)| json!({"factor": io::poly(f), "multiplicity": k, "display": f.to_string()}))
        .collect();
    json!({"unit": io::scalar(&fac.unit), "factors": factors})
}

fn cmd_factor(input: &Value, o: &Options) -> Result<(Value, Report)> {
    let f = factor_target(input, o)?;
    let fac = f.factor_with_seed(o.seed)?;
    let report = check_factorization(&f, &fac);
    let mut result = factorization_json(&fac);
    result["polynomial"] = io::poly(&f);
    result["field"] = json!(f.field().tag());
    Ok((result, report))
}

fn check_factorization(f: &Polynomial, fac: &crate::poly::Factorization) -> Report {
    let mut r = Report::new();
    r.push("product", &fac.expand() == f);
    r.push(
        "irreducible_monic",
        fac.factors
            .iter()
            .all(|(g, k)| *k >= 1 && g.is_monic() && g.is_irreducible().unwrap_or(false)),
    );
    r.push(
        "sorted_distinct",
        fac.factors.windows(2).all(|w| {
            crate::poly::canonical_order(&w[0].0, &w[1].0) == std::cmp::Ordering::Less
        }),
    );
    r
}

fn cmd_jc(m: &GroundMatrix) -> Result<(Value, Report)> {
    let jc = jc_decompose_newton(m)?;
    let mut report = verify_additive_jc(m, &jc.semisimple, &jc.nilpotent);
    report.push("certificate", eval_poly_at_matrix(&jc.semisimple_poly, m)? == jc.semisimple);
    Ok((
        json!({
            "S": io::matrix(&jc.semisimple),
            "N": io::matrix(&jc.nilpotent),
            "semisimple_poly": io::poly(&jc.semisimple_poly),
            "newton_iterations": jc.iterations,
        }),
        report,
    ))
}

fn cmd_cjc(m: &GroundMatrix) -> Result<(Value, Report)> {
    let dec = complete_jc(m)?;
    let report = verify_complete_jc(m, &dec.h, &dec.v, &dec.n);
    let factors: Vec<Value> = dec
        .factors
        .iter()
        .map(|f| {
            json!({
                "factor": io::poly(&f.factor),
                "multiplicity": f.multiplicity,
                "alpha": io::scalar(&f.alpha),
                "projector": io::matrix(&f.projector),
            })
        })
        .collect();
    Ok((
        json!({
            "H": io::matrix(&dec.h),
            "V": io::matrix(&dec.v),
            "N": io::matrix(&dec.n),
            "factors": factors,
        }),
        report,
    ))
}

pub fn fine_json(dec: &FineFrobenius) -> Value {
    let linear: Vec<Value> = dec
        .linear_part
        .iter()
        .map(|l| json!({"gamma": io::scalar(&l.gamma), "A": io::matrix(&l.a)}))
        .collect();
    let quad: Vec<Value> = dec
        .quad_part
        .iter()
        .map(|q| {
            json!({
                "alpha": io::scalar(&q.alpha),
                "n": io::scalar(&q.n),
                "B": io::matrix(&q.b),
                "P": io::matrix(&q.p),
            })
        })
        .collect();
    json!({"n": dec.dim, "field": dec.field.tag(), "linear": linear, "quadratic": quad, "A0": io::matrix(&dec.a0)})
}

fn parse_fine(v: &Value) -> Result<FineFrobenius> {
    let field = io::parse_field(v)?;
    let linear = io::get_array(v, "linear")?
        .iter()
        .map(|l| {
            Ok(LinearCovariant {
                gamma: io::parse_scalar(io::get(l, "gamma")?, field)?,
                a: io::parse_matrix(io::get(l, "A")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let quad = io::get_array(v, "quadratic")?
        .iter()
        .map(|q| {
            Ok(QuadCovariant {
                alpha: io::parse_scalar(io::get(q, "alpha")?, field)?,
                n: io::parse_scalar(io::get(q, "n")?, field)?,
                b: io::parse_matrix(io::get(q, "B")?)?,
                p: io::parse_matrix(io::get(q, "P")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let a0 = io::parse_matrix(io::get(v, "A0")?)?;
    Ok(FineFrobenius {
        dim: a0.n(),
        field,
        linear_part: linear,
        quad_part: quad,
        a0,
    })
}

fn cmd_fine(m: &GroundMatrix) -> Result<(Value, Report)> {
    let dec = fine_frobenius(m)?;
    let report = verify_fine_for(m, &dec);
    Ok((fine_json(&dec), report))
}

pub fn normalized_json(dec: &NormalizedFineFrobenius) -> Value {
    let linear: Vec<Value> = dec
        .linear_part
        .iter()
        .map(|l| json!({"gamma": io::scalar(&l.gamma), "A": io::matrix(&l.a)}))
        .collect();
    let quad: Vec<Value> = dec
        .quad_part
        .iter()
        .map(|q| {
            json!({
                "re": io::scalar(&q.re),
                "n": io::scalar(&q.n),
                "im": io::square_root(&q.im),
                "B": io::ext_matrix(&q.b),
                "P": io::matrix(&q.p),
            })
        })
        .collect();
    json!({"n": dec.dim, "field": dec.field.tag(), "linear": linear, "quadratic": quad, "A0": io::matrix(&dec.a0)})
}

fn parse_normalized(v: &Value) -> Result<NormalizedFineFrobenius> {
    let field = io::parse_field(v)?;
    let linear = io::get_array(v, "linear")?
        .iter()
        .map(|l| {
            Ok(LinearCovariant {
                gamma: io::parse_scalar(io::get(l, "gamma")?, field)?,
                a: io::parse_matrix(io::get(l, "A")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let quad = io::get_array(v, "quadratic")?
        .iter()
        .map(|q| {
            Ok(NormalizedQuad {
                re: io::parse_scalar(io::get(q, "re")?, field)?,
                n: io::parse_scalar(io::get(q, "n")?, field)?,
                im: io::parse_square_root(io::get(q, "im")?, field)?,
                b: io::parse_ext_matrix(io::get(q, "B")?)?,
                p: io::parse_matrix(io::get(q, "P")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let a0 = io::parse_matrix(io::get(v, "A0")?)?;
    Ok(NormalizedFineFrobenius {
        dim: a0.n(),
        field,
        linear_part: linear,
        quad_part: quad,
        a0,
    })
}

fn cmd_normalize(m: &GroundMatrix) -> Result<(Value, Report)> {
    let dec = normalize(&fine_frobenius(m)?)?;
    let report = verify_normalized(m, &dec);
    Ok((normalized_json(&dec), report))
}

pub fn series_json(spec: &SeriesSpec) -> Value {
    let mut v = json!({"name": spec.kind.name()});
    if spec.kind == SeriesKind::Custom {
        v["coefficients"] = Value::Array(spec.coeffs.iter().map(|c| json!(c.to_string())).collect());
        v["radius"] = json!(spec.declared_radius.as_ref().map(|r| r.describe()));
    }
    v
}

fn parse_series_json(v: &Value) -> Result<SeriesSpec> {
    let name = io::get_str(v, "name")?;
    if name == "custom" {
        parse_custom_series(v)
    } else {
        SeriesSpec::parse_name(name)
    }
}

fn oracle_terms(spec: &SeriesSpec, default: usize) -> usize {
    if spec.kind == SeriesKind::Custom {
        spec.coeffs.len().saturating_sub(1)
    } else {
        default
    }
}

fn float_trace(m: &crate::matrix::Matrix<crate::series::BigFloat>) -> crate::series::BigFloat {
    m.trace()
}

fn cmd_apply(m: &GroundMatrix, o: &Options) -> Result<(Value, Report)> {
    let spec = o.series.clone().unwrap_or_else(SeriesSpec::exp);
    let opts = SeriesOptions {
        prec: o.prec,
        terms: o.terms,
        padic_target: o.valuation,
    };
    let value = apply_series(m, &spec, o.abs, opts)?;
    let parts = complete_jc_of_image(m, &spec, o.abs, opts)?;
    let mut report = Report::new();
    match &value {
        SeriesMatrix::Archimedean(f) => {
            let terms = oracle_terms(&spec, o.oracle_terms);
            let oracle = taylor_oracle(m, &spec, terms, o.prec)?;
            report.extend(oracle_report(f, &oracle, terms));
            if let SeriesMatrix::Archimedean(vf) = &parts.vf {
                let t = float_trace(vf).abs_upper().to_f64();
                report.push_detail("vf_trace_zero", t <= TOLERANCE, format!("{t:.3e}"));
            }
            if matches!(spec.kind, SeriesKind::Exp | SeriesKind::Cos) {
                match apply_named_closed_form(m, spec.kind, o.prec) {
                    Ok(closed) => {
                        let d = max_deviation(f, &closed);
                        report.push_detail("closed_form_agreement", d <= TOLERANCE, format!("{d:.3e}"));
                    }
                    Err(Error::NegativeNormComponent(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        SeriesMatrix::Padic(p) => report.extend(padic_report(m, &spec, p)?),
    }
    Ok((
        json!({
            "series": series_json(&spec),
            "abs": o.abs.to_string(),
            "value": crate::cli::io::series_matrix(&value),
            "Hf": crate::cli::io::series_matrix(&parts.hf),
            "Vf": crate::cli::io::series_matrix(&parts.vf),
        }),
        report,
    ))
}

fn oracle_report(
    f: &crate::matrix::Matrix<crate::series::BigFloat>,
    oracle: &crate::matrix::Matrix<crate::series::BigFloat>,
    terms: usize,
) -> Report {
    let mut r = Report::new();
    let dim_ok = f.n() == oracle.n();
    let d = if dim_ok { max_deviation(f, oracle) } else { f64::INFINITY };
    r.push_detail(
        "oracle_agreement",
        dim_ok && d <= TOLERANCE,
        format!("max deviation {d:.3e} against {terms}-term Taylor sum (scale {:.3e})", max_abs(oracle)),
    );
    r
}

fn matrix_valuation(m: &GroundMatrix, p: u64) -> Option<i64> {
    m.entries()
        .filter_map(|x| padic_valuation(&x.to_rational(), p))
        .min()
}

fn padic_report(m: &GroundMatrix, spec: &SeriesSpec, p: &crate::series::PadicMatrix) -> Result<Report> {
    let mut r = Report::new();
    let twice = padic_partial_sum(m, spec, p.p, 2 * p.cutoff.max(1))?;
    let diff = &twice.value - &p.value;
    let ok = match (p.valuation_bound, matrix_valuation(&diff, p.p)) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(e), Some(v)) => v >= e,
    };
    r.push_detail(
        "doubled_cutoff",
        ok,
        format!("cutoff {} vs {}", p.cutoff, 2 * p.cutoff.max(1)),
    );
    Ok(r)
}

fn abs_json(a: &AbsNum) -> Value {
    match a {
        AbsNum::Real(x) => io::ball(x),
        AbsNum::Padic { p, valuation } => json!({
            "p": p,
            "valuation": valuation.as_ref().map_or("inf".to_string(), |v| v.to_string()),
            "value": format!("{:.6e}", a.to_f64()),
        }),
    }
}

fn cmd_domain(m: &GroundMatrix, o: &Options) -> Result<(Value, Report)> {
    let spec = o.series.clone().unwrap_or_else(SeriesSpec::exp);
    let verdict = in_omega_hat(m, &spec, o.abs)?;
    let radius = radius_of_convergence(&spec, o.abs)?;
    let eigen = match eigen_abs_data(m, o.abs, o.prec) {
        Ok(data) => data
            .iter()
            .map(|e| {
                json!({
                    "factor": io::poly(&e.factor),
                    "abs_lambda": abs_json(&e.lambda),
                    "abs_alpha": abs_json(&e.alpha),
                    "abs_beta": abs_json(&e.beta),
                })
            })
            .collect(),
        Err(Error::TrivialKindUnsupported) => Vec::new(),
        Err(e) => return Err(e),
    };
    Ok((
        json!({
            "series": series_json(&spec),
            "abs": o.abs.to_string(),
            "radius": radius.describe(),
            "in_omega_hat": verdict,
            "eigenvalues": eigen,
        }),
        Report::new(),
    ))
}

fn same_dim(m: &GroundMatrix, other: &GroundMatrix) -> Result<()> {
    if m.n() != other.n() || m.field() != other.field() {
        return Err(Error::SchemaMismatch(format!(
            "result is {}×{} over {}, input is {}×{} over {}",
            other.n(),
            other.n(),
            other.field(),
            m.n(),
            m.n(),
            m.field()
        )));
    }
    Ok(())
}

fn cmd_check(input: &Value, doc: &Value, o: &Options) -> Result<(Value, Report)> {
    let command = io::get_str(doc, "command")?;
    let body = io::get(doc, "result")?;
    if command == "factor" {
        let report = check_factor_doc(input, body)?;
        return Ok((json!({"checked": command, "all_passed": report.all_passed()}), report));
    }
    let m = &io::parse_matrix(input)?;
    let report = match command {
        "minpoly" => {
            let mp = io::parse_poly(io::get(body, "minimal_polynomial")?, m.field())?;
            check_minpoly(m, &mp)
        }
        "jc" => {
            let s = io::parse_matrix(io::get(body, "S")?)?;
            let n = io::parse_matrix(io::get(body, "N")?)?;
            same_dim(m, &s)?;
            verify_additive_jc(m, &s, &n)
        }
        "cjc" => {
            let h = io::parse_matrix(io::get(body, "H")?)?;
            let v = io::parse_matrix(io::get(body, "V")?)?;
            let n = io::parse_matrix(io::get(body, "N")?)?;
            same_dim(m, &h)?;
            verify_complete_jc(m, &h, &v, &n)
        }
        "fine" => {
            let dec = parse_fine(body)?;
            same_dim(m, &dec.a0)?;
            verify_fine_for(m, &dec)
        }
        "normalize" => {
            let dec = parse_normalized(body)?;
            same_dim(m, &dec.a0)?;
            verify_normalized(m, &dec)
        }
        "apply" => check_apply(m, body, o)?,
        "domain" => {
            let spec = parse_series_json(io::get(body, "series")?)?;
            let av = AbsValue::parse(io::get_str(body, "abs")?)?;
            let claimed = io::get(body, "in_omega_hat")?
                .as_bool()
                .ok_or_else(|| Error::SchemaMismatch("in_omega_hat must be a boolean".into()))?;
            let mut r = Report::new();
            r.push("verdict", in_omega_hat(m, &spec, av)? == claimed);
            r
        }
        other => return Err(Error::SchemaMismatch(format!("cannot check {other:?} documents"))),
    };
    Ok((json!({"checked": command, "all_passed": report.all_passed()}), report))
}

/// The input is the polynomial or matrix document that was factored.
fn check_factor_doc(input: &Value, body: &Value) -> Result<Report> {
    let field = Field::parse(io::get_str(body, "field")?)?;
    let f = io::parse_poly(io::get(body, "polynomial")?, field)?;
    let unit = io::parse_scalar(io::get(body, "unit")?, field)?;
    let factors = io::get_array(body, "factors")?
        .iter()
        .map(|x| {
            let g = io::parse_poly(io::get(x, "factor")?, field)?;
            let k = io::get(x, "multiplicity")?
                .as_u64()
                .ok_or_else(|| Error::SchemaMismatch("multiplicity must be an integer".into()))?;
            Ok((g, k as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    let fac = crate::poly::Factorization { unit, factors };
    let mut r = check_factorization(&f, &fac);
    let opts = Options {
        field: Some(field),
        ..Options::default()
    };
    r.push("matches_input", factor_target(input, &opts)? == f);
    Ok(r)
}

fn check_apply(m: &GroundMatrix, body: &Value, o: &Options) -> Result<Report> {
    let spec = parse_series_json(io::get(body, "series")?)?;
    let value = io::get(body, "value")?;
    let matrix = io::get(value, "matrix")?;
    match io::get_str(value, "backend")? {
        "archimedean" => {
            let f = io::parse_float_matrix(matrix)?;
            let terms = oracle_terms(&spec, o.oracle_terms);
            let oracle = taylor_oracle(m, &spec, terms, f.ctx().max(&128).to_owned())?;
            Ok(oracle_report(&f, &oracle, terms))
        }
        "padic" => {
            let p = io::get(matrix, "p")?
                .as_u64()
                .ok_or_else(|| Error::SchemaMismatch("p must be an integer".into()))?;
            let cutoff = io::get(matrix, "cutoff")?
                .as_u64()
                .ok_or_else(|| Error::SchemaMismatch("cutoff must be an integer".into()))?
                as usize;
            let bound = match io::get(matrix, "valuation_bound")? {
                Value::String(s) if s == "inf" => None,
                v => Some(
                    v.as_i64()
                        .ok_or_else(|| Error::SchemaMismatch("valuation_bound must be an integer".into()))?,
                ),
            };
            let value = io::parse_matrix(io::get(matrix, "value")?)?;
            same_dim(m, &value)?;
            let mut r = Report::new();
            let recomputed = padic_partial_sum(m, &spec, p, cutoff)?;
            r.push("partial_sum", recomputed.value == value);
            r.extend(padic_report(
                m,
                &spec,
                &crate::series::PadicMatrix {
                    p,
                    value,
                    valuation_bound: bound,
                    cutoff,
                },
            )?);
            Ok(r)
        }
        other => Err(Error::SchemaMismatch(format!("unknown backend {other:?}"))),
    }
}

/// Entry point used by the binary: parses arguments, runs the job, prints
/// the document and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let name = command_name(&cli.command);
    let outcome = match Job::from_cli(cli) {
        Ok(job) => run(&job),
        Err(e) => Outcome {
            code: if e.is_precondition() { 2 } else { 1 },
            document: json!({"command": name, "input_hash": null, "error": error_object(&e)}),
        },
    };
    let text = serde_json::to_string_pretty(&outcome.document).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    outcome.code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Minpoly(_) => "minpoly",
        Command::Factor(_) => "factor",
        Command::Jc(_) => "jc",
        Command::Cjc(_) => "cjc",
        Command::Fine(_) => "fine",
        Command::Normalize(_) => "normalize",
        Command::Apply { .. } => "apply",
        Command::Domain { .. } => "domain",
        Command::Check { .. } => "check",
    }
}


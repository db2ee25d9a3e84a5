//! The `anglekit` command line.
//!
//! Exit codes: 0 when everything checked passes, 1 when a check fails, 2 on
//! usage or input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anglekit_core::angles::{angle, angle_triple, check_triangle_inequalities, AngleKind};
use anglekit_core::constructors::{abs_trace_gram, det_gram, trace_gram, DensityFactor, PartialIsometry};
use anglekit_core::corr_ineq::{completion_interval, delta_bounds, rk_sup_closed_form, rk_sup_grid};
use anglekit_core::linalg::is_psd;
use anglekit_core::metric_fn::{
    check_function, concavity_implies_monotone_check, GridSpec, Implication, Property, Spacing,
};
use anglekit_core::{Certificate, Field, HermitianMatrix, CERT_TOL, PSD_TOL};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::io;
use crate::report::{emit, num, Format, Output, Summary, Table, SCHEMA};
use crate::sweep::{self, KLists, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "anglekit", version, about = "Angle metrics and correlation-matrix inequality checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed of the randomized sweeps.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Samples per sweep family.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,
    /// Certificate tolerance. Defaults to 1e-10 (relative) for positivity
    /// tests and 1e-9 otherwise.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Comma-separated exponents.
    #[arg(long, global = true, value_delimiter = ',')]
    pub k: Option<Vec<f64>>,
    /// Comma-separated vector dimensions for the unit-vector families.
    #[arg(long, global = true, value_delimiter = ',', default_value = "3")]
    pub dims: Vec<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Theta,
    Cap,
    Both,
}

impl KindArg {
    fn kinds(self) -> &'static [AngleKind] {
        match self {
            KindArg::Theta => &[AngleKind::Theta],
            KindArg::Cap => &[AngleKind::CapTheta],
            KindArg::Both => &AngleKind::ALL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    /// `tr(H_i* H_j)` of density-matrix factors.
    Trace,
    /// `|tr(H_i* H_j)|` of three density-matrix factors.
    #[value(name = "abs_trace")]
    AbsTrace,
    /// `det(H_i* H_j)` of partial isometries.
    Det,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Uniform,
    Chebyshev,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral positivity test of a Hermitian matrix.
    CheckPsd { file: PathBuf },
    /// Pairwise angles and triangle certificates for a list of vectors.
    Angles {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
    /// Completion interval of the third entry given `a` and `b`.
    Complete {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
    },
    /// Supremum of R_k: closed form against a grid search.
    Rk {
        /// Grid points per axis.
        #[arg(long, default_value_t = 2000)]
        grid: usize,
    },
    /// Randomized sweep over every certificate suite plus fixed regressions.
    Verify,
    /// Correlation matrix from density-matrix factors or partial isometries.
    Construct {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: ConstructKind,
    },
    /// Grid check of a catalog function.
    CheckFn {
        /// Function JSON such as '{"fn": "p_k", "k": 3}', or a path to it.
        #[arg(long = "fn")]
        function: String,
        /// A property name, `concave_implies_nondecreasing` or `all`.
        #[arg(long, default_value = "all")]
        property: String,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = SpacingArg::Uniform)]
        spacing: SpacingArg,
        /// `lo,hi`; required for functions on unbounded domains.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        window: Option<Vec<f64>>,
    },
}

/// A finished command: its report and whether every check passed.
pub struct Run {
    pub output: Output,
    pub pass: bool,
}

fn tol_or(g: &Global, default: f64) -> Result<f64> {
    let t = g.tol.unwrap_or(default);
    if t.is_nan() || t <= 0.0 || !t.is_finite() {
        bail!("--tol must be positive and finite, got {t}");
    }
    Ok(t)
}

fn matrix_json(m: &HermitianMatrix) -> Value {
    let n = m.n();
    let entries: Vec<Value> = (0..n * n)
        .map(|i| {
            let z = m.get(i / n, i % n);
            match m.field() {
                Field::Real => json!(z.re),
                Field::Complex => json!([z.re, z.im]),
            }
        })
        .collect();
    json!({"n": n, "field": m.field(), "entries": entries})
}

fn certificate_report(command: &str, extra: Value, certs: &[Certificate]) -> Run {
    let summary = Summary::of(certs);
    let pass = summary.failed == 0;
    let mut json = json!({"schema": SCHEMA, "command": command});
    if let (Value::Object(dst), Value::Object(src)) = (&mut json, extra) {
        dst.extend(src);
    }
    json["certificates"] = json!(certs);
    json["summary"] = json!(summary);
    Run { output: Output { json, table: Table::certificates(certs) }, pass }
}

fn check_psd(g: &Global, file: &Path) -> Result<Run> {
    let tol = tol_or(g, PSD_TOL)?;
    let m = io::parse_hermitian(&io::read_text(file)?)?;
    let cert = is_psd(&m, tol)?;
    let eig = m.eigenvalues()?;
    Ok(certificate_report("check-psd", json!({"matrix": matrix_json(&m), "eigenvalues": eig}), &[cert]))
}

fn angles(g: &Global, file: &Path, kind: KindArg) -> Result<Run> {
    let tol = tol_or(g, CERT_TOL)?;
    let vs = io::parse_vectors(&io::read_text(file)?)?;
    if vs.len() < 2 {
        bail!("need at least two vectors, got {}", vs.len());
    }
    let mut tables = serde_json::Map::new();
    let mut certs = Vec::new();
    let mut table = Table { header: vec!["kind", "i", "j", "k", "angle", "slack", "pass"], rows: Vec::new() };
    for &kd in kind.kinds() {
        let mut pairs = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let a = angle(&vs[i], &vs[j], kd).with_context(|| format!("vectors {i} and {j}"))?;
                pairs.push(json!({"i": i, "j": j, "angle": a}));
                table.rows.push(vec![
                    kd.name().into(),
                    i.to_string(),
                    j.to_string(),
                    String::new(),
                    num(a),
                    String::new(),
                    String::new(),
                ]);
            }
        }
        let mut tri = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                for k in j + 1..vs.len() {
                    let t = angle_triple(&vs[i], &vs[j], &vs[k], kd)?;
                    let c = check_triangle_inequalities(&t, tol).with("i", i).with("j", j).with("k", k);
                    table.rows.push(vec![
                        kd.name().into(),
                        i.to_string(),
                        j.to_string(),
                        k.to_string(),
                        String::new(),
                        num(c.slack),
                        c.pass.to_string(),
                    ]);
                    tri.push(c);
                }
            }
        }
        tables.insert(kd.name().into(), json!({"pairs": pairs, "triangles": tri}));
        certs.extend(tri);
    }
    let mut run = certificate_report("angles", json!({"tables": tables}), &certs);
    if let Value::Object(m) = &mut run.output.json {
        m.remove("certificates");
    }
    run.output.table = table;
    Ok(run)
}

fn complete(a: f64, b: f64) -> Result<Run> {
    let ci = completion_interval(a, b)?;
    let d = delta_bounds(a, b)?;
    let json = json!({
        "schema": SCHEMA,
        "command": "complete",
        "a": a,
        "b": b,
        "c_minus": ci.c_minus,
        "c_plus": ci.c_plus,
        "big_delta": d.big_delta,
        "small_delta": d.small_delta,
    });
    let table = Table {
        header: vec!["a", "b", "c_minus", "c_plus", "big_delta", "small_delta"],
        rows: vec![vec![num(a), num(b), num(ci.c_minus), num(ci.c_plus), num(d.big_delta), num(d.small_delta)]],
    };
    Ok(Run { output: Output { json, table }, pass: true })
}

fn integer_ks(ks: &[f64]) -> Result<Vec<u32>> {
    ks.iter()
        .map(|&k| {
            if k.fract() != 0.0 || !(2.0..=u32::MAX as f64).contains(&k) {
                bail!("k must be an integer >= 2, got {k}");
            }
            Ok(k as u32)
        })
        .collect()
}

fn rk(g: &Global, grid: usize) -> Result<Run> {
    let ks = integer_ks(g.k.as_deref().unwrap_or(&[2.0, 10.0, 100.0, 1000.0]))?;
    let mut rows = Vec::new();
    let mut table = Table { header: vec!["k", "closed_form", "grid_max", "sqrt_k_over_e", "ratio"], rows: Vec::new() };
    for k in ks {
        let closed = rk_sup_closed_form(k)?;
        let gr = rk_sup_grid(k, grid)?;
        let asym = (k as f64 / std::f64::consts::E).sqrt();
        let ratio = closed / asym;
        table.rows.push(vec![k.to_string(), num(closed), num(gr.max), num(asym), num(ratio)]);
        rows.push(json!({
            "k": k,
            "closed_form": closed,
            "grid_max": gr.max,
            "grid_argmax": gr.argmax,
            "diagonal_argmax": gr.diagonal_argmax,
            "sqrt_k_over_e": asym,
            "ratio": ratio,
        }));
    }
    let json = json!({"schema": SCHEMA, "command": "rk", "grid": grid, "rows": rows});
    Ok(Run { output: Output { json, table }, pass: true })
}

fn verify(g: &Global) -> Result<Run> {
    let cfg = VerifyConfig {
        seed: g.seed,
        samples: g.samples,
        tol: tol_or(g, CERT_TOL)?,
        k: match &g.k {
            Some(ks) => {
                if ks.iter().any(|&k| k.is_nan() || k < 1.0 || !k.is_finite()) {
                    bail!("--k entries must be finite and >= 1");
                }
                KLists::from_override(ks)
            }
            None => KLists::defaults(),
        },
        dims: g.dims.clone(),
    };
    let v = sweep::verify(&cfg)?;
    Ok(Run { output: v.output, pass: v.ok })
}

fn construct(g: &Global, file: &Path, kind: ConstructKind) -> Result<Run> {
    let tol = tol_or(g, PSD_TOL)?;
    let text = io::read_text(file)?;
    let density = |text: &str| -> Result<Vec<DensityFactor>> {
        io::parse_factors(text)?
            .into_iter()
            .enumerate()
            .map(|(i, m)| DensityFactor::new(m).with_context(|| format!("factor {i}")))
            .collect()
    };
    let (m, cert) = match kind {
        ConstructKind::Trace => {
            let m = trace_gram(&density(&text)?)?.into_hermitian();
            let c = is_psd(&m, tol)?;
            (m, c)
        }
        ConstructKind::AbsTrace => {
            let g = abs_trace_gram(&density(&text)?, tol)?;
            (g.matrix, g.psd)
        }
        ConstructKind::Det => {
            let isos = io::parse_isometries(&text)?
                .into_iter()
                .enumerate()
                .map(|(i, m)| PartialIsometry::new(m).with_context(|| format!("isometry {i}")))
                .collect::<Result<Vec<_>>>()?;
            let m = det_gram(&isos)?.into_hermitian();
            let c = is_psd(&m, tol)?;
            (m, c)
        }
    };
    let kind_name = kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Ok(certificate_report("construct", json!({"kind": kind_name, "matrix": matrix_json(&m)}), &[cert]))
}

fn load_function(arg: &str) -> Result<anglekit_core::metric_fn::Func1D> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { io::read_text(arg.as_ref())? };
    io::parse_function(&text)
}

fn check_fn(
    g: &Global,
    function: &str,
    property: &str,
    grid: usize,
    spacing: SpacingArg,
    window: Option<&[f64]>,
) -> Result<Run> {
    let tol = tol_or(g, CERT_TOL)?;
    let f = load_function(function)?;
    let mut spec = GridSpec {
        count: grid,
        spacing: match spacing {
            SpacingArg::Uniform => Spacing::Uniform,
            SpacingArg::Chebyshev => Spacing::Chebyshev,
        },
        window: None,
    };
    if let Some(w) = window {
        let &[lo, hi] = w else { bail!("--window takes two values lo,hi, got {}", w.len()) };
        spec = spec.with_window(lo, hi);
    }
    let mut table =
        Table { header: vec!["property", "pass", "max_violation", "witness_s", "witness_t"], rows: Vec::new() };
    let mut verdicts = Vec::new();
    let mut pass = true;
    let push = |table: &mut Table, v: &anglekit_core::metric_fn::FunctionVerdict| {
        let (s, t) = v.witness.map(|(s, t)| (num(s), num(t))).unwrap_or_default();
        table.rows.push(vec![v.property.name().into(), v.pass.to_string(), num(v.max_violation), s, t]);
    };
    let mut implication = None;
    match property {
        "concave_implies_nondecreasing" => {
            let v = concavity_implies_monotone_check(&f, &spec, tol)?;
            push(&mut table, &v.concave);
            push(&mut table, &v.nondecreasing);
            pass = v.outcome != Implication::Violated;
            implication = Some(v);
        }
        _ => {
            let props = if property == "all" { Property::ALL.to_vec() } else { vec![Property::from_name(property)?] };
            for p in props {
                let v = check_function(&f, p, &spec, tol)?;
                push(&mut table, &v);
                pass &= v.pass;
                verdicts.push(v);
            }
        }
    }
    let json = json!({
        "schema": SCHEMA,
        "command": "check-fn",
        "function": f,
        "grid": spec,
        "tol": tol,
        "verdicts": verdicts,
        "implication": implication,
        "pass": pass,
    });
    Ok(Run { output: Output { json, table }, pass })
}

pub fn execute(cli: &Cli) -> Result<Run> {
    let g = &cli.global;
    match &cli.command {
        Command::CheckPsd { file } => check_psd(g, file),
        Command::Angles { file, kind } => angles(g, file, *kind),
        Command::Complete { a, b } => complete(*a, *b),
        Command::Rk { grid } => rk(g, *grid),
        Command::Verify => verify(g),
        Command::Construct { file, kind } => construct(g, file, *kind),
        Command::CheckFn { function, property, grid, spacing, window } => {
            check_fn(g, function, property, *grid, *spacing, window.as_deref())
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ANGLEKIT_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("ANGLEKIT_THREADS must be a positive integer, got '{v}'"))?;
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let result = thread_pool().and_then(|pool| pool.install(|| execute(&cli))).and_then(|run| {
        emit(&run.output, cli.global.format, cli.global.out.as_deref())?;
        Ok(run.pass)
    });
    eprintln!("wall_time: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

//! Seeded randomized sweeps over every certificate suite.
//!
//! Sample `i` of family `f` draws from its own stream keyed by
//! `(seed, f, i)`. Samples are processed in fixed-size chunks, possibly in
//! parallel, and chunk results are merged in chunk order, so the outcome
//! does not depend on the number of threads.

use std::collections::BTreeMap;

use anglekit_core::angles::{angle_triple, check_triangle_inequalities, AngleKind};
use anglekit_core::constructors::{abs_trace_gram, det_gram, random_density_factors, random_isometries, trace_gram};
use anglekit_core::corr_ineq::{
    affine_bound_certificates, entry_certificates, gram_triple_certificates, pair_bound_certificates,
    power_certificates,
};
use anglekit_core::linalg::is_psd;
use anglekit_core::metric_fn::{
    inverse_triplet, root_distance_certificates, root_triplet_certificates, unit_angle_certificates, CosineLike,
    Func1D, GridSpec, PROPERTY_TOL,
};
use anglekit_core::sampling::{random_psd_sym3, sample_correlation, stream_rng, unit_vector, ChaCha8Rng};
use anglekit_core::{Certificate, CorrelationMatrix, Field, PsdSym3, Result as CoreResult, Sym3, PSD_TOL};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::regressions;
use crate::report::{context_json, num, Output, Table, SCHEMA};

/// Samples per work unit. Part of the determinism contract only through the
/// merge order, which is by chunk index.
const CHUNK: u64 = 2048;

/// Failures and errors kept per family in the report.
pub const FAILURE_CAP: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct KLists {
    /// Root-distance forms, `k >= 2`.
    pub root: Vec<f64>,
    /// Entrywise-power forms: integers `k >= 1` and reals `k >= 2`.
    pub power: Vec<f64>,
    /// Entry inequalities on larger correlation matrices, `k >= 2`.
    pub entry: Vec<f64>,
}

impl KLists {
    pub fn defaults() -> Self {
        KLists { root: vec![2.0, 3.0, 7.0], power: vec![1.0, 2.0, 3.0, 4.0, 5.0, 5.5, 6.0], entry: vec![2.0, 3.0] }
    }

    /// The same list for every suite, filtered to each suite's valid range.
    pub fn from_override(ks: &[f64]) -> Self {
        let at_least_2 = |k: &&f64| **k >= 2.0;
        KLists {
            root: ks.iter().filter(at_least_2).copied().collect(),
            power: ks.iter().filter(|k| **k >= 2.0 || (**k >= 1.0 && k.fract() == 0.0)).copied().collect(),
            entry: ks.iter().filter(at_least_2).copied().collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: u64,
    pub tol: f64,
    pub k: KLists,
    /// Dimensions of the unit-vector families.
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    UnitTriples { field: Field, d: usize },
    Corr3 { field: Field },
    Corr6 { field: Field },
    TraceGram,
    AbsTraceGram,
    DetGram,
}

#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub kind: FamilyKind,
}

pub fn families(cfg: &VerifyConfig) -> Vec<Family> {
    let mut out = Vec::new();
    for &d in &cfg.dims {
        for (field, tag) in [(Field::Real, "real"), (Field::Complex, "complex")] {
            out.push(Family { name: format!("unit_triples.{tag}.d{d}"), kind: FamilyKind::UnitTriples { field, d } });
        }
    }
    for (field, tag) in [(Field::Real, "real"), (Field::Complex, "complex")] {
        out.push(Family { name: format!("corr3.{tag}"), kind: FamilyKind::Corr3 { field } });
    }
    for (field, tag) in [(Field::Real, "real"), (Field::Complex, "complex")] {
        out.push(Family { name: format!("corr6.{tag}"), kind: FamilyKind::Corr6 { field } });
    }
    out.push(Family { name: "constructors.trace_gram".into(), kind: FamilyKind::TraceGram });
    out.push(Family { name: "constructors.abs_trace_gram".into(), kind: FamilyKind::AbsTraceGram });
    out.push(Family { name: "constructors.det_gram".into(), kind: FamilyKind::DetGram });
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Located {
    pub sample: u64,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteStats {
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub worst: Option<Located>,
}

impl SuiteStats {
    fn see(&mut self, sample: u64, c: &Certificate) {
        self.total += 1;
        if c.pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        let worse = match &self.worst {
            None => true,
            Some(w) => c.slack < w.certificate.slack || (c.slack.is_nan() && !w.certificate.slack.is_nan()),
        };
        if worse {
            self.worst = Some(Located { sample, certificate: c.clone() });
        }
    }

    /// `other` covers later samples; ties keep the earlier worst.
    fn merge(&mut self, other: SuiteStats) {
        self.total += other.total;
        self.passed += other.passed;
        self.failed += other.failed;
        if let Some(o) = other.worst {
            let worse = match &self.worst {
                None => true,
                Some(w) => {
                    o.certificate.slack < w.certificate.slack
                        || (o.certificate.slack.is_nan() && !w.certificate.slack.is_nan())
                }
            };
            if worse {
                self.worst = Some(o);
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleError {
    pub sample: u64,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct FamilyResult {
    pub suites: BTreeMap<&'static str, SuiteStats>,
    pub failures: Vec<Located>,
    pub errors: Vec<SampleError>,
    pub error_count: u64,
}

impl FamilyResult {
    fn record(&mut self, sample: u64, certs: &[Certificate]) {
        for c in certs {
            self.suites.entry(c.id).or_default().see(sample, c);
            if !c.pass && self.failures.len() < FAILURE_CAP {
                self.failures.push(Located { sample, certificate: c.clone() });
            }
        }
    }

    fn error(&mut self, sample: u64, e: anglekit_core::Error) {
        self.error_count += 1;
        if self.errors.len() < FAILURE_CAP {
            self.errors.push(SampleError { sample, message: e.to_string() });
        }
    }

    fn merge(&mut self, other: FamilyResult) {
        for (id, s) in other.suites {
            self.suites.entry(id).or_default().merge(s);
        }
        let room = FAILURE_CAP - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
        let room = FAILURE_CAP - self.errors.len();
        self.errors.extend(other.errors.into_iter().take(room));
        self.error_count += other.error_count;
    }

    pub fn failed(&self) -> u64 {
        self.suites.values().map(|s| s.failed).sum()
    }

    pub fn total(&self) -> u64 {
        self.suites.values().map(|s| s.total).sum()
    }
}

struct Ctx<'a> {
    cfg: &'a VerifyConfig,
    arccos: CosineLike,
}

fn unit_triples(rng: &mut ChaCha8Rng, ctx: &Ctx, field: Field, d: usize) -> CoreResult<Vec<Certificate>> {
    let tol = ctx.cfg.tol;
    let u = unit_vector(rng, d, field)?;
    let v = unit_vector(rng, d, field)?;
    let w = unit_vector(rng, d, field)?;
    let mut out = Vec::with_capacity(32);
    for kind in AngleKind::ALL {
        out.push(check_triangle_inequalities(&angle_triple(&u, &v, &w, kind)?, tol));
        out.extend(unit_angle_certificates(&u, &v, &w, kind, tol)?);
    }
    out.extend(gram_triple_certificates(&u, &v, &w, tol)?);
    for &k in &ctx.cfg.k.root {
        out.extend(root_distance_certificates(&u, &v, &w, k, tol)?);
    }
    Ok(out)
}

fn triple_certificates(s: &PsdSym3, ctx: &Ctx, out: &mut Vec<Certificate>) -> CoreResult<()> {
    let tol = ctx.cfg.tol;
    out.extend(pair_bound_certificates(s, tol)?);
    out.extend(affine_bound_certificates(s, tol)?);
    for &k in &ctx.cfg.k.power {
        out.extend(power_certificates(s, k, tol)?);
    }
    for &k in &ctx.cfg.k.root {
        out.push(root_triplet_certificates(s, k, tol)?);
    }
    out.push(inverse_triplet(s, &ctx.arccos)?.certificate("triplet.arccos", tol));
    Ok(())
}

/// Real family: Gram triples of unit vectors in `R^3`, with every other
/// sample from `R^2` (singular, on the boundary of the PSD set). Complex
/// family: the real-part and absolute-value triples of a complex 3x3
/// correlation matrix.
fn corr3(rng: &mut ChaCha8Rng, index: u64, ctx: &Ctx, field: Field) -> CoreResult<Vec<Certificate>> {
    let mut out = Vec::with_capacity(64);
    match field {
        Field::Real if index.is_multiple_of(2) => {
            triple_certificates(&PsdSym3::new(random_psd_sym3(rng))?, ctx, &mut out)?
        }
        Field::Real => {
            let m = sample_correlation(rng, 3, 2, Field::Real)?;
            let [a, b, c] = m.triple(0, 1, 2);
            triple_certificates(&PsdSym3::new(Sym3::new(a.re, b.re, c.re))?, ctx, &mut out)?;
        }
        Field::Complex => {
            let m = sample_correlation(rng, 3, 3, Field::Complex)?;
            let [a, b, c] = m.triple(0, 1, 2);
            triple_certificates(&PsdSym3::new(Sym3::new(a.re, b.re, c.re))?, ctx, &mut out)?;
            triple_certificates(&PsdSym3::new(Sym3::new(a.norm(), b.norm(), c.norm()))?, ctx, &mut out)?;
        }
    }
    Ok(out)
}

fn entries_of(m: &CorrelationMatrix, ctx: &Ctx, out: &mut Vec<Certificate>) -> CoreResult<()> {
    for &k in &ctx.cfg.k.entry {
        out.extend(entry_certificates(m, k, ctx.cfg.tol)?);
    }
    Ok(())
}

fn field_for(index: u64) -> Field {
    if index.is_multiple_of(2) {
        Field::Complex
    } else {
        Field::Real
    }
}

fn run_sample(family: &Family, index: u64, ctx: &Ctx) -> CoreResult<Vec<Certificate>> {
    let mut rng = stream_rng(ctx.cfg.seed, &family.name, index);
    let rng = &mut rng;
    let mut out = Vec::new();
    match family.kind {
        FamilyKind::UnitTriples { field, d } => return unit_triples(rng, ctx, field, d),
        FamilyKind::Corr3 { field } => return corr3(rng, index, ctx, field),
        FamilyKind::Corr6 { field } => entries_of(&sample_correlation(rng, 6, 6, field)?, ctx, &mut out)?,
        FamilyKind::TraceGram => {
            let dim = 1 + (index / 2 % 4) as usize;
            let m = trace_gram(&random_density_factors(rng, 4, dim, field_for(index))?)?;
            out.push(is_psd(m.as_hermitian(), PSD_TOL)?);
            entries_of(&m, ctx, &mut out)?;
        }
        FamilyKind::AbsTraceGram => {
            // positivity of the trace-norm matrix is known for three factors only
            let dim = 1 + (index / 2 % 4) as usize;
            let g = abs_trace_gram(&random_density_factors(rng, 3, dim, field_for(index))?, PSD_TOL)?;
            out.push(g.psd.clone());
            if g.psd.pass {
                entries_of(&g.into_correlation(PSD_TOL)?, ctx, &mut out)?;
            }
        }
        FamilyKind::DetGram => {
            let cols = 1 + (index / 2 % 3) as usize;
            let rows = cols + (index / 6 % 2) as usize;
            let m = det_gram(&random_isometries(rng, 4, rows, cols, field_for(index))?)?;
            out.push(is_psd(m.as_hermitian(), PSD_TOL)?);
            entries_of(&m, ctx, &mut out)?;
        }
    }
    Ok(out)
}

fn run_chunk(family: &Family, chunk: u64, ctx: &Ctx) -> FamilyResult {
    let mut res = FamilyResult::default();
    let start = chunk * CHUNK;
    let end = (start + CHUNK).min(ctx.cfg.samples);
    for i in start..end {
        match run_sample(family, i, ctx) {
            Ok(certs) => res.record(i, &certs),
            Err(e) => res.error(i, e),
        }
    }
    res
}

pub fn run_family(family: &Family, cfg: &VerifyConfig) -> FamilyResult {
    let arccos = CosineLike::certify(Func1D::CosR { r: 1.0 }, &GridSpec::uniform(200), PROPERTY_TOL)
        .expect("cos is a certified cosine-like function");
    let ctx = Ctx { cfg, arccos };
    let chunks = cfg.samples.div_ceil(CHUNK);
    let parts: Vec<FamilyResult> = (0..chunks).into_par_iter().map(|c| run_chunk(family, c, &ctx)).collect();
    parts.into_iter().fold(FamilyResult::default(), |mut acc, p| {
        acc.merge(p);
        acc
    })
}

/// Outcome of a full verification run.
pub struct Verified {
    pub output: Output,
    /// No failing certificate, no sample error, every regression as expected.
    pub ok: bool,
}

fn located_json(family: &str, l: &Located) -> Value {
    json!({"family": family, "sample": l.sample, "certificate": l.certificate})
}

pub fn verify(cfg: &VerifyConfig) -> anyhow::Result<Verified> {
    if cfg.samples == 0 {
        anyhow::bail!("--samples must be at least 1");
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 || !cfg.tol.is_finite() {
        anyhow::bail!("--tol must be positive and finite");
    }
    if cfg.dims.contains(&0) {
        anyhow::bail!("--dims entries must be positive");
    }
    let fams = families(cfg);
    let results: Vec<(Family, FamilyResult)> = fams
        .into_iter()
        .map(|f| {
            let r = run_family(&f, cfg);
            (f, r)
        })
        .collect();
    let regressions = regressions::all(cfg.tol)?;
    let regressions_ok = regressions.iter().all(|r| r.ok);

    let mut table = Table {
        header: vec!["section", "family", "suite", "sample", "id", "lhs", "rhs", "slack", "pass"],
        rows: Vec::new(),
    };
    let mut families_json = Map::new();
    let (mut total, mut failed, mut errors) = (0u64, 0u64, 0u64);
    let mut worst: Option<(&str, &Located)> = None;
    for (f, r) in &results {
        let mut suites = Map::new();
        for (id, st) in &r.suites {
            suites.insert((*id).into(), json!(st));
            if let Some(w) = &st.worst {
                table.rows.push(row("worst", &f.name, id, Some(w.sample), &w.certificate));
                if worst.is_none_or(|(_, b)| w.certificate.slack < b.certificate.slack) {
                    worst = Some((&f.name, w));
                }
            }
        }
        for l in &r.failures {
            table.rows.push(row("failure", &f.name, l.certificate.id, Some(l.sample), &l.certificate));
        }
        total += r.total();
        failed += r.failed();
        errors += r.error_count;
        families_json.insert(
            f.name.clone(),
            json!({
                "samples": cfg.samples,
                "certificates": r.total(),
                "failed": r.failed(),
                "errors": r.error_count,
                "suites": suites,
                "failures": r.failures.iter().map(|l| located_json(&f.name, l)).collect::<Vec<_>>(),
                "sample_errors": r.errors,
            }),
        );
    }
    for r in &regressions {
        table.rows.push(row("regression", r.name, r.certificate.id, None, &r.certificate));
    }
    let summary = json!({
        "total": total,
        "passed": total - failed,
        "failed": failed,
        "errors": errors,
        "worst_slack": worst.map(|(_, l)| l.certificate.slack),
        "worst_context": worst.map(|(f, l)| {
            let mut c = context_json(&l.certificate);
            c["family"] = json!(f);
            c["sample"] = json!(l.sample);
            c
        }),
    });
    let ok = failed == 0 && errors == 0 && regressions_ok;
    let json = json!({
        "schema": SCHEMA,
        "command": "verify",
        "config": cfg,
        "families": families_json,
        "regressions": regressions,
        "regressions_ok": regressions_ok,
        "summary": summary,
        "pass": ok,
    });
    Ok(Verified { output: Output { json, table }, ok })
}

fn row(section: &str, family: &str, suite: &str, sample: Option<u64>, c: &Certificate) -> Vec<String> {
    vec![
        section.into(),
        family.into(),
        suite.into(),
        sample.map(|s| s.to_string()).unwrap_or_default(),
        c.id.into(),
        num(c.lhs),
        num(c.rhs),
        num(c.slack),
        c.pass.to_string(),
    ]
}

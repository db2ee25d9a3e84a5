//! JSON input formats.
//!
//! A matrix is `{"n": 3, "field": "real", "entries": [...]}` with `n * n`
//! row-major entries, each either a number or a `[re, im]` pair. Rectangular
//! matrices give `"rows"` and `"cols"` instead of `"n"`. `"field"` is
//! optional and inferred from the entries when absent. A 3x3 unit-diagonal
//! matrix may also be given as `{"sym3": [a, b, c]}`.
//!
//! Vector lists are `{"field": "complex", "vectors": [[...], ...]}`, factor
//! lists `{"factors": [matrix, ...]}` and isometry lists
//! `{"isometries": [matrix, ...]}`.

use anglekit_core::dense::CMat;
use anglekit_core::metric_fn::Func1D;
use anglekit_core::{Complex64, Field, HermitianMatrix, Sym3, Vector};
use anyhow::{bail, Context, Result};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Real(f64),
    Pair([f64; 2]),
}

impl Scalar {
    fn complex(self) -> Complex64 {
        match self {
            Scalar::Real(x) => Complex64::new(x, 0.0),
            Scalar::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: Option<usize>,
    rows: Option<usize>,
    cols: Option<usize>,
    field: Option<Field>,
    entries: Vec<Scalar>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SquareJson {
    Sym3 { sym3: [f64; 3] },
    Full(MatrixJson),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorsJson {
    field: Option<Field>,
    vectors: Vec<Vec<Scalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorsJson {
    factors: Vec<MatrixJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsometriesJson {
    isometries: Vec<MatrixJson>,
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn infer_field(field: Option<Field>, zs: &[Complex64]) -> Field {
    field.unwrap_or(if zs.iter().any(|z| z.im != 0.0) { Field::Complex } else { Field::Real })
}

fn shape(m: &MatrixJson) -> Result<(usize, usize)> {
    let (rows, cols) = match (m.n, m.rows, m.cols) {
        (Some(n), None, None) => (n, n),
        (None, Some(r), Some(c)) => (r, c),
        (Some(n), Some(r), Some(c)) if r == n && c == n => (n, n),
        _ => bail!("matrix needs either \"n\" or both \"rows\" and \"cols\""),
    };
    if rows == 0 || cols == 0 {
        bail!("matrix dimensions must be positive");
    }
    if m.entries.len() != rows * cols {
        bail!("matrix is {rows}x{cols} but has {} entries", m.entries.len());
    }
    Ok((rows, cols))
}

fn to_cmat(m: &MatrixJson) -> Result<CMat> {
    let (rows, cols) = shape(m)?;
    let zs: Vec<Complex64> = m.entries.iter().map(|s| s.complex()).collect();
    if m.field == Some(Field::Real) {
        if let Some(i) = zs.iter().position(|z| z.im != 0.0) {
            bail!("entry {i} has an imaginary part in a real matrix");
        }
    }
    Ok(CMat::from_row_major(rows, cols, zs)?)
}

pub fn parse_hermitian(text: &str) -> Result<HermitianMatrix> {
    let m: SquareJson = serde_json::from_str(text).context("parsing matrix JSON")?;
    match m {
        SquareJson::Sym3 { sym3: [a, b, c] } => Ok(HermitianMatrix::from_sym3(&Sym3::new(a, b, c))?),
        SquareJson::Full(m) => {
            let (rows, cols) = shape(&m)?;
            if rows != cols {
                bail!("matrix must be square, got {rows}x{cols}");
            }
            let zs: Vec<Complex64> = m.entries.iter().map(|s| s.complex()).collect();
            let field = infer_field(m.field, &zs);
            Ok(HermitianMatrix::from_row_major(rows, field, &zs)?)
        }
    }
}

pub fn parse_vectors(text: &str) -> Result<Vec<Vector>> {
    let v: VectorsJson = serde_json::from_str(text).context("parsing vectors JSON")?;
    let all: Vec<Complex64> = v.vectors.iter().flatten().map(|s| s.complex()).collect();
    let field = infer_field(v.field, &all);
    v.vectors
        .into_iter()
        .enumerate()
        .map(|(i, xs)| {
            Vector::new(xs.into_iter().map(Scalar::complex).collect(), field).with_context(|| format!("vector {i}"))
        })
        .collect()
}

pub fn parse_factors(text: &str) -> Result<Vec<CMat>> {
    let f: FactorsJson = serde_json::from_str(text).context("parsing {\"factors\": [...]} JSON")?;
    f.factors.iter().enumerate().map(|(i, m)| to_cmat(m).with_context(|| format!("factor {i}"))).collect()
}

pub fn parse_isometries(text: &str) -> Result<Vec<CMat>> {
    let f: IsometriesJson = serde_json::from_str(text).context("parsing {\"isometries\": [...]} JSON")?;
    f.isometries.iter().enumerate().map(|(i, m)| to_cmat(m).with_context(|| format!("isometry {i}"))).collect()
}

/// A catalog function such as `{"fn": "cos_r", "r": 2}`.
pub fn parse_function(text: &str) -> Result<Func1D> {
    let f: Func1D = serde_json::from_str(text).context("parsing function JSON")?;
    f.validate()?;
    Ok(f)
}

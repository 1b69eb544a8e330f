//! TOML manifest describing a chart, its metric, an optional paracontact
//! structure, named frames and soliton data. Every expression is a string
//! in the `symexpr` grammar.
//!
//! ```toml
//! [manifold]
//! name = "PS3"
//! dim = 3
//! coords = ["x", "y", "z"]
//! params = ["p"]
//!
//! [metric]
//! g = [["(y^2-1)/4", "0", "y/4"], ["0", "1/4", "0"], ["y/4", "0", "1/4"]]
//!
//! [structure]
//! phi = [["0", "1", "0"], ["1", "0", "0"], ["0", "-y", "0"]]  # phi[i][j] = φ^i_j
//! xi = ["0", "0", "2"]
//! eta = ["y/2", "0", "1/2"]
//!
//! [frame.e]
//! vectors = [["0", "2", "0"], ["2", "0", "-2*y"], ["0", "0", "2"]]
//!
//! [soliton]
//! V = ["x", "y", "2*z"]
//! f = "x^2/2 + y^2/2 + z^2"
//! p = "p"
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::geometry::{Chart, Frame, GeometryError, Metric, TensorField};
use crate::paracontact::{ParacontactError, ParacontactStructure};
use crate::symexpr::{parse_expr, Expr, ExprError};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: expected {expected}, found {found}")]
    Shape {
        field: String,
        expected: String,
        found: String,
    },
    #[error("duplicate symbol '{0}'")]
    DuplicateSymbol(String),
    #[error("{field}: {source}")]
    Expr { field: String, source: ExprError },
    #[error("{field}: {source}")]
    Geometry {
        field: String,
        source: GeometryError,
    },
    #[error("structure: {0}")]
    Structure(#[from] ParacontactError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    manifold: RawManifold,
    metric: RawMetric,
    structure: Option<RawStructure>,
    #[serde(default)]
    frame: BTreeMap<String, RawFrame>,
    soliton: Option<RawSoliton>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    name: Option<String>,
    dim: usize,
    coords: Vec<String>,
    #[serde(default)]
    params: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    g: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    phi: Vec<Vec<String>>,
    xi: Vec<String>,
    eta: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrame {
    vectors: Vec<Vec<String>>,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSoliton {
    #[serde(rename = "V")]
    v: Option<Vec<String>>,
    f: Option<String>,
    p: Option<String>,
    lambda: Option<String>,
    mu: Option<String>,
}

/// A frame with display labels for its vectors.
#[derive(Clone, Debug)]
pub struct NamedFrame {
    pub frame: Frame,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SolitonSpec {
    pub v: Option<TensorField>,
    pub f: Option<Expr>,
    pub p: Expr,
    pub lambda: Option<Expr>,
    pub mu: Option<Expr>,
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub name: String,
    pub chart: Arc<Chart>,
    pub metric: Metric,
    pub structure: Option<ParacontactStructure>,
    pub frames: Vec<NamedFrame>,
    pub soliton: Option<SolitonSpec>,
}

impl Manifest {
    pub fn frame(&self, name: &str) -> Option<&NamedFrame> {
        self.frames.iter().find(|f| f.frame.name == name)
    }
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Manifest, ManifestError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ManifestError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_manifest(&text, &stem)
}

/// Parses manifest text. `default_name` is used when `[manifold]` has no name.
pub fn parse_manifest(text: &str, default_name: &str) -> Result<Manifest, ManifestError> {
    let raw: RawManifest = toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|span| line_column(text, span.start))
            .unwrap_or((0, 0));
        ManifestError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    build(raw, default_name)
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn build(raw: RawManifest, default_name: &str) -> Result<Manifest, ManifestError> {
    let m = &raw.manifold;
    if m.coords.len() != m.dim {
        return Err(shape("manifold.coords", m.dim, m.coords.len()));
    }
    let coords: Vec<&str> = m.coords.iter().map(String::as_str).collect();
    let params: Vec<&str> = m.params.iter().map(String::as_str).collect();
    let chart = Chart::new(&coords, &params).map_err(|e| match e {
        GeometryError::Expr(ExprError::DuplicateSymbol(s)) => ManifestError::DuplicateSymbol(s),
        source => ManifestError::Geometry {
            field: "manifold".into(),
            source,
        },
    })?;
    let dim = m.dim;

    let g = matrix(&chart, "metric.g", &raw.metric.g, dim)?;
    let metric = Metric::from_matrix(&chart, g).map_err(|source| ManifestError::Geometry {
        field: "metric.g".into(),
        source,
    })?;

    let structure = match raw.structure {
        None => None,
        Some(s) => {
            let phi = matrix(&chart, "structure.phi", &s.phi, dim)?;
            let phi = TensorField::endomorphism(&chart, phi).expect("shape checked");
            let xi = vector(&chart, "structure.xi", &s.xi, dim)?;
            let eta = vector(&chart, "structure.eta", &s.eta, dim)?;
            let xi = TensorField::vector(&chart, xi).expect("shape checked");
            let eta = TensorField::covector(&chart, eta).expect("shape checked");
            Some(ParacontactStructure::new(phi, xi, eta, metric.clone())?)
        }
    };

    let mut frames = Vec::new();
    for (name, f) in raw.frame {
        let field = format!("frame.{name}.vectors");
        if f.vectors.len() != dim {
            return Err(shape(&field, dim, f.vectors.len()));
        }
        let mut vectors = Vec::new();
        for (a, comps) in f.vectors.iter().enumerate() {
            let v = vector(&chart, &format!("{field}[{a}]"), comps, dim)?;
            vectors.push(TensorField::vector(&chart, v).expect("shape checked"));
        }
        let labels = match f.labels {
            Some(l) if l.len() != dim => {
                return Err(shape(&format!("frame.{name}.labels"), dim, l.len()))
            }
            Some(l) => l,
            None => (1..=dim).map(|a| format!("{name}{a}")).collect(),
        };
        let frame = Frame::new(&name, vectors).map_err(|source| ManifestError::Geometry {
            field: field.clone(),
            source,
        })?;
        frames.push(NamedFrame { frame, labels });
    }

    let soliton = match raw.soliton {
        None => None,
        Some(s) => {
            let v = match &s.v {
                None => None,
                Some(comps) => Some(
                    TensorField::vector(&chart, vector(&chart, "soliton.V", comps, dim)?)
                        .expect("shape checked"),
                ),
            };
            let expr =
                |field: &str, text: &Option<String>| -> Result<Option<Expr>, ManifestError> {
                    text.as_ref().map(|t| parse(&chart, field, t)).transpose()
                };
            Some(SolitonSpec {
                v,
                f: expr("soliton.f", &s.f)?,
                p: expr("soliton.p", &s.p)?.unwrap_or_else(Expr::zero),
                lambda: expr("soliton.lambda", &s.lambda)?,
                mu: expr("soliton.mu", &s.mu)?,
            })
        }
    };

    Ok(Manifest {
        name: m.name.clone().unwrap_or_else(|| default_name.to_string()),
        chart,
        metric,
        structure,
        frames,
        soliton,
    })
}

fn shape(field: &str, expected: usize, found: usize) -> ManifestError {
    ManifestError::Shape {
        field: field.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn parse(chart: &Chart, field: &str, text: &str) -> Result<Expr, ManifestError> {
    parse_expr(text, chart.table()).map_err(|source| ManifestError::Expr {
        field: field.to_string(),
        source,
    })
}

fn vector(
    chart: &Chart,
    field: &str,
    comps: &[String],
    dim: usize,
) -> Result<Vec<Expr>, ManifestError> {
    if comps.len() != dim {
        return Err(shape(field, dim, comps.len()));
    }
    comps
        .iter()
        .enumerate()
        .map(|(i, t)| parse(chart, &format!("{field}[{i}]"), t))
        .collect()
}

fn matrix(
    chart: &Chart,
    field: &str,
    rows: &[Vec<String>],
    dim: usize,
) -> Result<Vec<Vec<Expr>>, ManifestError> {
    let cols = rows.iter().map(Vec::len).find(|&c| c != dim);
    if rows.len() != dim || cols.is_some() {
        return Err(ManifestError::Shape {
            field: field.to_string(),
            expected: format!("{dim}x{dim}"),
            found: format!("{}x{}", rows.len(), cols.unwrap_or(dim)),
        });
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| vector(chart, &format!("{field}[{i}]"), row, dim))
        .collect()
}

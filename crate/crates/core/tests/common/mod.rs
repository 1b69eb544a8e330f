#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use paracontact_core::geometry::{Chart, Metric, TensorField};
use paracontact_core::paracontact::ParacontactStructure;
use paracontact_core::{load_manifest, parse_expr, Expr, Manifest};

pub fn fixture(name: &str) -> Manifest {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.toml"));
    load_manifest(path).expect("fixture loads")
}

pub fn ps3() -> Manifest {
    fixture("ps3")
}

pub fn ps3_structure() -> ParacontactStructure {
    ps3().structure.expect("PS3 has a structure")
}

pub fn e(chart: &Chart, text: &str) -> Expr {
    parse_expr(text, chart.table()).expect("test expression parses")
}

pub fn xyz() -> Arc<Chart> {
    Chart::new(&["x", "y", "z"], &["p"]).unwrap()
}

pub fn vector(chart: &Arc<Chart>, comps: &[&str]) -> TensorField {
    TensorField::vector(chart, comps.iter().map(|c| e(chart, c)).collect()).unwrap()
}

pub fn covector(chart: &Arc<Chart>, comps: &[&str]) -> TensorField {
    TensorField::covector(chart, comps.iter().map(|c| e(chart, c)).collect()).unwrap()
}

pub fn rows(chart: &Arc<Chart>, rows: &[&[&str]]) -> Vec<Vec<Expr>> {
    rows.iter()
        .map(|r| r.iter().map(|c| e(chart, c)).collect())
        .collect()
}

pub fn flat3_metric(chart: &Arc<Chart>) -> Metric {
    Metric::from_matrix(chart, TensorField::identity(chart).matrix()).unwrap()
}

/// FLAT3 with φ swapping ∂x and ∂y, ξ = ∂z, η = dz.
pub fn flat3_structure() -> ParacontactStructure {
    let c = xyz();
    let phi = TensorField::endomorphism(
        &c,
        rows(&c, &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "0"]]),
    )
    .unwrap();
    ParacontactStructure::new(
        phi,
        vector(&c, &["0", "0", "1"]),
        covector(&c, &["0", "0", "1"]),
        flat3_metric(&c),
    )
    .unwrap()
}

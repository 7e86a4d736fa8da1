//! CSV datasets and run manifests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gasket_fif::{GraphPoint, VmTable};
use serde::Serialize;

use crate::error::CliError;

pub const CSV_HEADER: &str = "x,y,value";

/// Scientific notation with 17 significant digits.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Table rows sorted by `(y, x)`.
pub fn table_rows(table: &VmTable) -> Vec<GraphPoint> {
    let mut rows: Vec<GraphPoint> = table
        .lattice()
        .vertices()
        .iter()
        .zip(table.values())
        .map(|(v, &z)| GraphPoint {
            x: v.point.x,
            y: v.point.y,
            z,
        })
        .collect();
    rows.sort_by(|a, b| a.y.total_cmp(&b.y).then(a.x.total_cmp(&b.x)));
    rows
}

pub fn write_csv(out: &mut (impl Write + ?Sized), rows: &[GraphPoint]) -> std::io::Result<()> {
    let mut text = String::with_capacity(64 * (rows.len() + 1));
    text.push_str(CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&sig17(r.x));
        text.push(',');
        text.push_str(&sig17(r.y));
        text.push(',');
        text.push_str(&sig17(r.z));
        text.push('\n');
    }
    out.write_all(text.as_bytes())
}

pub fn write_csv_file(path: &Path, rows: &[GraphPoint]) -> Result<(), CliError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).map_err(|e| CliError::io(path, e))?;
    fs::write(path, buf).map_err(|e| CliError::io(path, e))
}

/// Everything needed to re-run a command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub figure: Option<u32>,
    pub f_text: String,
    pub b_text: String,
    pub alpha: [f64; 3],
    pub compat_tol: f64,
    pub m: usize,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub burn_in: Option<usize>,
    pub tool_version: String,
    pub output_files: Vec<String>,
}

/// `dir/name.csv` -> `dir/name.manifest.json`
pub fn manifest_path(data: &Path) -> PathBuf {
    let stem = data
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".into());
    data.with_file_name(format!("{stem}.manifest.json"))
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

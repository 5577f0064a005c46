//! CSV tables, cell formatting and atomic file output.

use std::io::Write;
use std::path::Path;

use dbrk_core::real::format_rational;
use dbrk_core::scalar::GaussianRational;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

/// Shortest decimal that round-trips; exponent form outside `[1e-5, 1e16)`.
pub fn float(x: f64) -> String {
    format!("{x:?}")
}

pub fn rational(q: &BigRational) -> String {
    format_rational(q)
}

pub fn complex(z: Complex64) -> [String; 2] {
    [float(z.re), float(z.im)]
}

/// Table cells for the two number types the tasks produce.
pub trait Cells {
    fn cells(&self) -> [String; 2];
}

impl Cells for Complex64 {
    fn cells(&self) -> [String; 2] {
        complex(*self)
    }
}

impl Cells for GaussianRational {
    fn cells(&self) -> [String; 2] {
        [rational(&self.re), rational(&self.im)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> anyhow::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(w.into_inner()?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub task: String,
    pub kind: &'static str,
    pub pass: bool,
    /// `null` for report-only tasks.
    pub max_residual: Option<f64>,
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Summary {
    pub fn to_json(&self) -> anyhow::Result<Vec<u8>> {
        let mut v = serde_json::to_vec_pretty(self)?;
        v.push(b'\n');
        Ok(v)
    }
}

/// Writes through a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

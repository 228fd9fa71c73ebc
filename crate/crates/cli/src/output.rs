//! CSV and JSON writers.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliResult;

/// Version of the CSV column layouts, recorded in every summary.
pub const CSV_SCHEMA_VERSION: u32 = 1;

pub fn write_csv<T: Serialize>(dir: &Path, name: &str, rows: &[T]) -> CliResult<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut w = csv::Writer::from_path(&path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(path)
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}

/// Shortest round-trip decimal form; CSV cells must not depend on locale or
/// thread count.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:e}")
}

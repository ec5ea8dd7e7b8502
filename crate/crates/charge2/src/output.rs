//! Machine-readable output: JSON and CSV emitters with a fixed numeric
//! contract (17 significant digits in CSV, finite-guarded numbers in JSON)
//! and atomic file writes.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

/// Report schema version stamped into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// 17 significant digits, `.` decimal, no thousands separators.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        // Avoid the noisy 0.0000000000000000e0 spelling for exact zeros.
        return "0".to_string();
    }
    format!("{x:.16e}")
}

/// A float that serializes as a JSON number only while exactly
/// representable there; non-finite values fall back to strings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else if self.0.is_nan() {
            s.serialize_str("NaN")
        } else if self.0 > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

/// A u64 that stays a JSON number inside the double-exact range and becomes
/// a string beyond it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactInt(pub u64);

const DOUBLE_EXACT_MAX: u64 = 1 << 53;

impl Serialize for ExactInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 <= DOUBLE_EXACT_MAX {
            s.serialize_u64(self.0)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

/// Write `bytes` to `path` atomically: temp file in the same directory, then
/// rename over the target.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| crate::error::Error::Io(e.error))?;
    Ok(())
}

/// Minimal CSV writer; fields never contain separators or quotes by
/// construction (numbers and fixed labels only).
pub struct CsvTable {
    buf: String,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = String::new();
        buf.push_str(&header.join(","));
        buf.push('\n');
        CsvTable { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

//! Deterministic CSV tables.
//!
//! Every table starts with a single `#` comment echoing the crate version
//! and the full run configuration, followed by a header row. Floats are
//! written in shortest round-trip exponent form, so rerunning the same
//! command yields a byte-identical file (no timestamps, no locale, no
//! thread-order dependence).

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub fn cell_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:e}")
    }
}

pub fn cell_opt_f64(v: Option<f64>) -> String {
    v.map(cell_f64).unwrap_or_default()
}

#[derive(Debug, Clone)]
pub struct Table {
    comment: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    /// `comment` should echo the configuration that produced the data;
    /// it must not contain newlines (one comment line per file).
    pub fn new(comment: impl Into<String>, header: &[&str]) -> Self {
        let comment = comment.into();
        debug_assert!(!comment.contains('\n'));
        Table {
            comment,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<String>) -> Result<()> {
        if cells.len() != self.header.len() {
            return Err(Error::Usage(format!(
                "row has {} cells, header has {}",
                cells.len(),
                self.header.len()
            )));
        }
        self.rows.push(cells);
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.comment);
        out.push('\n');
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Write to `path`, or to stdout when `path` is `None`.
    pub fn write(&self, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => {
                if let Some(dir) = p.parent() {
                    if !dir.as_os_str().is_empty() {
                        fs::create_dir_all(dir)?;
                    }
                }
                fs::write(p, self.to_csv())?;
            }
            None => {
                std::io::stdout().write_all(self.to_csv().as_bytes())?;
            }
        }
        Ok(())
    }
}

//! The instance text format.
//!
//! UTF-8, first line exactly `x,y`, then one `start,end` line per item in
//! arrival order. Numbers are written with Rust's shortest round-trip
//! formatting, so reading a written file gives back the same bits.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use stacking_core::{validate_instance, Instance, Interval, InvalidInstance};

/// Header line of every instance file.
pub const HEADER: &str = "x,y";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line 1: expected header `{HEADER}`, found `{found}`")]
    Header { found: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] InvalidInstance),
}

/// Parses an instance file's contents. Item ids are zero-based line positions.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(first) if first.trim_end_matches('\r') == HEADER => {}
        other => {
            return Err(FormatError::Header {
                found: other.unwrap_or_default().to_string(),
            })
        }
    }
    let mut raw = Vec::new();
    for (k, line) in lines.enumerate() {
        let line_no = k + 2;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: &str| FormatError::Line {
            line: line_no,
            message: message.to_string(),
        };
        let (x, y) = line.split_once(',').ok_or_else(|| bad("expected `x,y`"))?;
        if y.contains(',') {
            return Err(bad("expected exactly two fields"));
        }
        let x: f64 = x.trim().parse().map_err(|_| bad("start is not a number"))?;
        let y: f64 = y.trim().parse().map_err(|_| bad("end is not a number"))?;
        raw.push(Interval::new(raw.len(), x, y));
    }
    Ok(validate_instance(raw)?)
}

pub fn read_instance(path: &Path) -> Result<Instance, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&text)
}

pub fn render_instance(inst: &Instance) -> String {
    let mut out = String::with_capacity(16 + 40 * inst.len());
    out.push_str(HEADER);
    out.push('\n');
    for it in inst {
        let _ = writeln!(out, "{},{}", it.start, it.end);
    }
    out
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<(), FormatError> {
    fs::write(path, render_instance(inst)).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

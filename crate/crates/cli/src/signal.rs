//! One decimal real per line. Blank lines and lines starting with `#` are
//! skipped.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::CliError;

pub fn parse_signal(text: &str, path: &Path) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| CliError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let v: f64 = line
            .parse()
            .map_err(|_| err(format!("'{line}' is not a number")))?;
        if !v.is_finite() {
            return Err(err(format!("'{line}' is not finite")));
        }
        values.push(v);
    }
    Ok(values)
}

pub fn read_signal(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_signal(&text, path)
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn write_signal<W: Write>(mut w: W, values: &[f64]) -> std::io::Result<()> {
    for v in values {
        writeln!(w, "{v:.16e}")?;
    }
    Ok(())
}

//! Serialisation of artifacts: CSV with shortest round-trip floats, JSON
//! with 17 significant digits.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::error::{CliError, CliResult};

/// Compact JSON with every finite float printed as `{:.16e}`.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

pub fn json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Input(format!("cannot encode JSON: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

pub fn float(x: f64) -> String {
    format!("{x}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// RFC 4180 CSV, LF line endings, one header row.
pub fn csv<I, R>(header: &[&str], rows: I) -> CliResult<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let fail = |e: csv::Error| CliError::Input(format!("cannot encode CSV: {e}"));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())
            .map_err(fail)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Input(format!("cannot encode CSV: {e}")))
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("cannot write standard output: {e}")))
        }
    }
}

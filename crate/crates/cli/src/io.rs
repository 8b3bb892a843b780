//! Channel files, environment files, and the error-to-exit-code mapping.
//!
//! A channel file is a JSON object `{kind, dim_in, dim_out, data}` where
//! `kind` is one of `choi`, `superop`, `kraus`, or `unitary` and `data`
//! holds the matrix entries as nested arrays of `[re, im]` pairs, row by
//! row (`kraus` takes a list of such matrices). Exit codes: malformed input
//! is 2 (with a position where one exists), a mismatch between the declared
//! dimensions and the data is 3, and asking for a Kraus form of a channel
//! that has none is 4.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use choiscope_core::diagram::{DiagramError, Env};
use choiscope_core::{Channel, Error, KrausSet, Mat, Tol, C64};
use serde::Deserialize;
use serde_json::Value;

pub const EXIT_DIFFER: u8 = 1;
pub const EXIT_MALFORMED: u8 = 2;
pub const EXIT_DIMENSION: u8 = 3;
pub const EXIT_NO_KRAUS: u8 = 4;

/// A diagnostic destined for stderr together with the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn malformed(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }

    pub fn dimension(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_DIMENSION,
            message: message.into(),
        }
    }

    pub fn no_kraus(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_NO_KRAUS,
            message: message.into(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannelFile {
    kind: String,
    dim_in: usize,
    dim_out: usize,
    data: Value,
}

/// A channel loaded from disk, with the declaring kind kept for reporting.
pub struct LoadedChannel {
    pub channel: Channel,
    pub kind: String,
}

/// Reads and validates a channel file. With `normalized`, `data` of a
/// `choi` file is taken to be the density-normalized Choi matrix
/// (`J/dim_in`) and is rescaled to the crate's unnormalized convention.
pub fn load_channel(path: &Path, normalized: bool, tol: Tol) -> Result<LoadedChannel, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    let raw: RawChannelFile = serde_json::from_str(&text)
        .map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    if raw.dim_in == 0 || raw.dim_out == 0 {
        return Err(CliError::dimension(format!(
            "{}: dim_in and dim_out must be positive",
            path.display()
        )));
    }
    if normalized && raw.kind != "choi" {
        return Err(CliError::malformed(format!(
            "{}: --normalized applies only to files of kind 'choi', not '{}'",
            path.display(),
            raw.kind
        )));
    }
    let (da, db) = (raw.dim_in, raw.dim_out);
    let channel = match raw.kind.as_str() {
        "choi" => {
            let side = da * db;
            let mut m = matrix_from_value(&raw.data, "data")?;
            expect_shape(&m, side, side, "data (Choi matrix)")?;
            if normalized {
                m = m.scale(C64::new(da as f64, 0.0));
            }
            Channel::from_choi(da, db, m).map_err(core_to_cli)?
        }
        "superop" => {
            let m = matrix_from_value(&raw.data, "data")?;
            expect_shape(&m, db * db, da * da, "data (superoperator)")?;
            Channel::from_superop(da, db, m).map_err(core_to_cli)?
        }
        "kraus" => {
            let list = raw
                .data
                .as_array()
                .ok_or_else(|| CliError::malformed("data: expected a list of matrices"))?;
            if list.is_empty() {
                return Err(CliError::malformed("data: Kraus list must not be empty"));
            }
            let mut operators = Vec::with_capacity(list.len());
            for (k, entry) in list.iter().enumerate() {
                let m = matrix_from_value(entry, &format!("data[{k}]"))?;
                expect_shape(&m, db, da, &format!("data[{k}] (Kraus operator)"))?;
                operators.push(m);
            }
            Channel::from_kraus(&KrausSet::new(operators).map_err(core_to_cli)?)
        }
        "unitary" => {
            let m = matrix_from_value(&raw.data, "data")?;
            if da != db {
                return Err(CliError::dimension(format!(
                    "unitary channels need dim_in = dim_out, got {da} and {db}"
                )));
            }
            expect_shape(&m, db, da, "data (unitary)")?;
            Channel::unitary(&m, tol).map_err(|e| match e {
                Error::NotUnitary {
                    residual,
                    threshold,
                } => CliError::dimension(format!(
                    "data: matrix is not unitary within tolerance \
                     (residual {residual:.3e}, threshold {threshold:.3e})"
                )),
                other => core_to_cli(other),
            })?
        }
        other => {
            return Err(CliError::malformed(format!(
                "unknown kind '{other}' (expected choi, superop, kraus, or unitary)"
            )));
        }
    };
    Ok(LoadedChannel {
        channel,
        kind: raw.kind,
    })
}

fn core_to_cli(err: Error) -> CliError {
    match err {
        Error::Dimension(msg) | Error::Argument(msg) => CliError::dimension(msg),
        other => CliError::dimension(other.to_string()),
    }
}

/// Decodes a rectangular matrix of `[re, im]` pairs, labeling complaints
/// with their place in the structure.
fn matrix_from_value(value: &Value, ctx: &str) -> Result<Mat, CliError> {
    let rows = value
        .as_array()
        .ok_or_else(|| CliError::malformed(format!("{ctx}: expected an array of rows")))?;
    if rows.is_empty() {
        return Err(CliError::malformed(format!(
            "{ctx}: matrix must have at least one row"
        )));
    }
    let mut width = None;
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::malformed(format!("{ctx}: row {i}: expected an array")))?;
        match width {
            None => {
                if row.is_empty() {
                    return Err(CliError::malformed(format!(
                        "{ctx}: row {i}: rows must not be empty"
                    )));
                }
                width = Some(row.len());
            }
            Some(w) if w != row.len() => {
                return Err(CliError::malformed(format!(
                    "{ctx}: row {i} has {} entries, previous rows have {w}",
                    row.len()
                )));
            }
            Some(_) => {}
        }
        for (j, cell) in row.iter().enumerate() {
            entries.push(complex_from_value(cell, ctx, i, j)?);
        }
    }
    Mat::new(rows.len(), width.expect("checked nonempty"), entries)
        .map_err(|e| CliError::malformed(format!("{ctx}: {e}")))
}

fn complex_from_value(cell: &Value, ctx: &str, i: usize, j: usize) -> Result<C64, CliError> {
    let err = || {
        CliError::malformed(format!(
            "{ctx}: row {i}, entry {j}: expected a finite [re, im] pair"
        ))
    };
    let pair = cell.as_array().ok_or_else(err)?;
    if pair.len() != 2 {
        return Err(err());
    }
    let re = pair[0].as_f64().ok_or_else(err)?;
    let im = pair[1].as_f64().ok_or_else(err)?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(err());
    }
    Ok(C64::new(re, im))
}

fn expect_shape(m: &Mat, rows: usize, cols: usize, ctx: &str) -> Result<(), CliError> {
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(CliError::dimension(format!(
            "{ctx}: expected a {rows}×{cols} matrix for the declared dimensions, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

pub fn matrix_to_pairs(m: &Mat) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| [m.at(i, j).re, m.at(i, j).im])
                .collect()
        })
        .collect()
}

pub fn column_to_pairs(m: &Mat) -> Vec<[f64; 2]> {
    (0..m.rows())
        .map(|i| [m.at(i, 0).re, m.at(i, 0).im])
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBinding {
    domain: Vec<usize>,
    codomain: Vec<usize>,
    data: Value,
}

/// Reads an environment file: a JSON object mapping tensor names to
/// `{domain, codomain, data}` bindings, with `data` in the channel-file
/// matrix syntax.
pub fn load_env(path: &Path) -> Result<Env, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, RawBinding> = serde_json::from_str(&text)
        .map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    let mut env = Env::new();
    for (name, binding) in raw {
        let matrix = matrix_or_scalar(&binding, &name)?;
        env.bind(&name, binding.domain, binding.codomain, matrix)
            .map_err(|e| CliError::dimension(e.to_string()))?;
    }
    Ok(env)
}

/// Bindings with empty wire lists hold 1×1 or 1×d / d×1 matrices; the
/// nested-array syntax covers those shapes too, so reuse the matrix reader.
fn matrix_or_scalar(binding: &RawBinding, name: &str) -> Result<Mat, CliError> {
    matrix_from_value(&binding.data, &format!("binding '{name}': data"))
}

/// Renders a parse diagnostic with the offending source line and a caret.
pub fn caret_diagnostic(source: &str, error: &DiagramError) -> String {
    let position = match error {
        DiagramError::Lex { line, col, .. }
        | DiagramError::Syntax { line, col, .. }
        | DiagramError::NonPositiveDim { line, col } => Some((*line, *col)),
        _ => None,
    };
    let mut out = error.to_string();
    if let Some((line, col)) = position {
        if let Some(text) = source.lines().nth(line.saturating_sub(1)) {
            let _ = write!(out, "\n  {text}\n  {}^", " ".repeat(col.saturating_sub(1)));
        }
    }
    out
}

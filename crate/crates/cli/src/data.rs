//! Dataset handling: the built-in profiles, CSV ingestion with strict
//! validation, and the matching emission used for round-trips.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("unknown dataset {name:?}; built-ins are xi0-curve and xi0-surface")]
    UnknownDataset { name: String },

    #[error("cannot read {path}: {source}")]
    ReadFailed {
        path: String,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    WriteFailed {
        path: String,
        source: std::io::Error,
    },

    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("line {line}: expected {expected} columns, got {got}")]
    InconsistentColumns {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("line {line}: node {node} appears twice")]
    DuplicateNode { line: usize, node: String },

    #[error("nodes must be the consecutive integers 0..n; missing {missing}")]
    NonUniformNodes { missing: String },

    #[error("{count} rows cannot fill a complete square grid")]
    IncompleteGrid { count: usize },

    #[error("no data rows found")]
    Empty,

    #[error("{name:?} holds a {got} dataset, but this command needs a {expected} one")]
    WrongKind {
        name: String,
        expected: &'static str,
        got: &'static str,
    },
}

/// Values on the integer nodes, one- or two-dimensional.
#[derive(Clone, Debug, PartialEq)]
pub enum Dataset {
    Curve { label: String, values: Vec<f64> },
    Surface { label: String, heights: Vec<Vec<f64>> },
}

impl Dataset {
    pub fn label(&self) -> &str {
        match self {
            Dataset::Curve { label, .. } | Dataset::Surface { label, .. } => label,
        }
    }

    pub fn into_curve(self) -> Result<Vec<f64>, DataError> {
        match self {
            Dataset::Curve { values, .. } => Ok(values),
            Dataset::Surface { label, .. } => Err(DataError::WrongKind {
                name: label,
                expected: "curve",
                got: "surface",
            }),
        }
    }

    pub fn into_surface(self) -> Result<Vec<Vec<f64>>, DataError> {
        match self {
            Dataset::Surface { heights, .. } => Ok(heights),
            Dataset::Curve { label, .. } => Err(DataError::WrongKind {
                name: label,
                expected: "surface",
                got: "curve",
            }),
        }
    }
}

pub fn builtin(name: &str) -> Result<Dataset, DataError> {
    match name {
        "xi0-curve" => Ok(Dataset::Curve {
            label: name.to_string(),
            values: mlspline::demo::curve_values(),
        }),
        "xi0-surface" => Ok(Dataset::Surface {
            label: name.to_string(),
            heights: mlspline::demo::surface_heights(),
        }),
        _ => Err(DataError::UnknownDataset {
            name: name.to_string(),
        }),
    }
}

pub fn load(path: &Path) -> Result<Dataset, DataError> {
    let text = fs::read_to_string(path).map_err(|source| DataError::ReadFailed {
        path: path.display().to_string(),
        source,
    })?;
    let label = path.display().to_string();
    parse_points_csv(&text, label)
}

/// Parses "i,value" or "i,j,value" rows. A single leading line that
/// fails to parse is treated as a header; anything later is an error
/// with its line number. Node indices must cover 0..=n exactly once,
/// and grids must cover every (i, j) pair of a square.
pub fn parse_points_csv(text: &str, label: String) -> Result<Dataset, DataError> {
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let parsed: Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if rows.is_empty() && width.is_none() => {
                // Header line; remember nothing, but only once.
                width = Some(0);
                continue;
            }
            Err(_) => {
                return Err(DataError::MalformedRow {
                    line,
                    reason: format!("cannot parse {trimmed:?} as numbers"),
                })
            }
        };
        if !(2..=3).contains(&values.len()) {
            return Err(DataError::MalformedRow {
                line,
                reason: format!("expected 2 or 3 columns, got {}", values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(DataError::MalformedRow {
                line,
                reason: "values must be finite".to_string(),
            });
        }
        match width {
            Some(w) if w != 0 && w != values.len() => {
                return Err(DataError::InconsistentColumns {
                    line,
                    expected: w,
                    got: values.len(),
                });
            }
            _ => width = Some(values.len()),
        }
        rows.push((line, values));
    }
    match width {
        None | Some(0) => Err(DataError::Empty),
        Some(2) => curve_from_rows(rows, label),
        Some(3) => surface_from_rows(rows, label),
        Some(_) => unreachable!("column width vetted per row"),
    }
}

fn index_of(value: f64, line: usize) -> Result<usize, DataError> {
    if value.fract() != 0.0 || value < 0.0 || value > u32::MAX as f64 {
        return Err(DataError::MalformedRow {
            line,
            reason: format!("node index {value} is not a small nonnegative integer"),
        });
    }
    Ok(value as usize)
}

fn curve_from_rows(rows: Vec<(usize, Vec<f64>)>, label: String) -> Result<Dataset, DataError> {
    let n = rows.len();
    let mut values = vec![None; n];
    for (line, row) in rows {
        let i = index_of(row[0], line)?;
        if i >= n {
            return Err(DataError::NonUniformNodes {
                missing: missing_in_range(&values),
            });
        }
        if values[i].replace(row[1]).is_some() {
            return Err(DataError::DuplicateNode {
                line,
                node: format!("{i}"),
            });
        }
    }
    let missing = missing_in_range(&values);
    if !missing.is_empty() {
        return Err(DataError::NonUniformNodes { missing });
    }
    Ok(Dataset::Curve {
        label,
        values: values.into_iter().map(Option::unwrap).collect(),
    })
}

fn surface_from_rows(rows: Vec<(usize, Vec<f64>)>, label: String) -> Result<Dataset, DataError> {
    let count = rows.len();
    let side = (count as f64).sqrt().round() as usize;
    if side * side != count {
        return Err(DataError::IncompleteGrid { count });
    }
    let mut heights = vec![vec![None; side]; side];
    for (line, row) in rows {
        let i = index_of(row[0], line)?;
        let j = index_of(row[1], line)?;
        if i >= side || j >= side {
            return Err(DataError::NonUniformNodes {
                missing: format!("grid spot for ({i}, {j}) outside {side}x{side}"),
            });
        }
        if heights[i][j].replace(row[2]).is_some() {
            return Err(DataError::DuplicateNode {
                line,
                node: format!("({i}, {j})"),
            });
        }
    }
    for (i, row) in heights.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.is_none() {
                return Err(DataError::NonUniformNodes {
                    missing: format!("({i}, {j})"),
                });
            }
        }
    }
    Ok(Dataset::Surface {
        label,
        heights: heights
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap).collect())
            .collect(),
    })
}

fn missing_in_range(values: &[Option<f64>]) -> String {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_none())
        .map(|(i, _)| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Renders a value with 15 significant digits; parsing the result and
/// rendering again reproduces the same bytes.
pub fn number(v: f64) -> String {
    format!("{v:.14e}")
}

pub fn emit_dataset(dataset: &Dataset) -> String {
    let mut out = String::new();
    match dataset {
        Dataset::Curve { values, .. } => {
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{i},{}", number(*v));
            }
        }
        Dataset::Surface { heights, .. } => {
            for (i, row) in heights.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(out, "{i},{j},{}", number(*v));
                }
            }
        }
    }
    out
}

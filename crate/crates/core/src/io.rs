//! Reading and writing datasets.
//!
//! Sets are a CSV column `x` or a JSON array of numbers. Functions are CSV
//! columns `x,y` or a JSON array of `[x, y]` pairs. Subsets are a JSON array
//! of `[lo, hi]` pairs (points as `[v, v]`) or a CSV column `x` of points.
//! A document whose first non-blank character is `[` is read as JSON.

use std::io::Read;

use thiserror::Error;

use crate::connect::RealSubset;
use crate::error::Error as CoreError;
use crate::function::SampledFunction;
use crate::set::DiscreteSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetKind {
    Set,
    Function,
    Subset,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Set(DiscreteSet),
    Function(SampledFunction),
    Subset(RealSubset),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub kind: DatasetKind,
    pub payload: Payload,
    /// File path, or `-` for standard input.
    pub source: String,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{origin}: line {line}: {reason}")]
    Parse {
        origin: String,
        line: u64,
        reason: String,
    },
    #[error("{origin}: line {line}: {error}")]
    Build {
        origin: String,
        line: u64,
        error: CoreError,
    },
    #[error("{origin}: {error}")]
    Invalid { origin: String, error: CoreError },
    #[error("{path}: {error}")]
    Read {
        path: String,
        error: std::io::Error,
    },
}

fn parse_err(source: &str, line: u64, reason: impl Into<String>) -> IoError {
    IoError::Parse {
        origin: source.to_string(),
        line,
        reason: reason.into(),
    }
}

/// Attaches the input line of the later offending record to a constructor error.
fn located(source: &str, lines: &[u64], error: CoreError) -> IoError {
    let index = match &error {
        CoreError::DuplicatePoint { second, .. } | CoreError::DuplicateAbscissa { second, .. } => {
            Some(*second)
        }
        CoreError::NonFinite { index, .. } => Some(*index),
        _ => None,
    };
    match index.and_then(|i| lines.get(i)) {
        Some(&line) => IoError::Build {
            origin: source.to_string(),
            line,
            error,
        },
        None => IoError::Invalid {
            origin: source.to_string(),
            error,
        },
    }
}

fn number(source: &str, line: u64, field: &str) -> Result<f64, IoError> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| parse_err(source, line, format!("not a number: {field:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_err(source, line, format!("non-finite value: {field:?}")))
    }
}

/// Rows of the named CSV columns, with the line number of each row.
fn csv_columns(text: &str, source: &str, names: &[&str]) -> Result<(Vec<Vec<f64>>, Vec<u64>), IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| parse_err(source, 1, e.to_string()))?
        .clone();
    let columns: Vec<usize> = names
        .iter()
        .map(|&name| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| parse_err(source, 1, format!("missing column {name:?}")))
        })
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(source, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row = columns
            .iter()
            .map(|&c| number(source, line, record.get(c).unwrap_or("")))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        lines.push(line);
    }
    Ok((rows, lines))
}

fn json_value(text: &str, source: &str) -> Result<serde_json::Value, IoError> {
    serde_json::from_str(text).map_err(|e| parse_err(source, e.line() as u64, e.to_string()))
}

/// JSON array elements as `width`-tuples of numbers (`width == 1` accepts bare numbers).
fn json_rows(text: &str, source: &str, width: usize) -> Result<Vec<Vec<f64>>, IoError> {
    let value = json_value(text, source)?;
    let items = value
        .as_array()
        .ok_or_else(|| parse_err(source, 1, "expected a JSON array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let bad = || parse_err(source, 1, format!("element {i}: expected {width} number(s)"));
            match item {
                serde_json::Value::Number(n) if width == 1 => Ok(vec![n.as_f64().ok_or_else(bad)?]),
                serde_json::Value::Array(a) if a.len() == width => {
                    a.iter().map(|v| v.as_f64().ok_or_else(bad)).collect()
                }
                _ => Err(bad()),
            }
        })
        .collect()
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('[')
}

/// Parses `text` into the requested kind, building the value with `tol` as
/// the duplicate tolerance.
pub fn parse_dataset(text: &str, source: &str, kind: DatasetKind, tol: f64) -> Result<Dataset, IoError> {
    let json = is_json(text);
    let width = if kind == DatasetKind::Set || (kind == DatasetKind::Subset && !json) {
        1
    } else {
        2
    };
    let (rows, lines) = if json {
        let rows = json_rows(text, source, width)?;
        // JSON arrays carry no per-record lines; report element positions 1-based
        let lines = (1..=rows.len() as u64).collect();
        (rows, lines)
    } else {
        let names: &[&str] = if width == 1 { &["x"] } else { &["x", "y"] };
        csv_columns(text, source, names)?
    };
    let payload = match kind {
        DatasetKind::Set => {
            let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
            Payload::Set(DiscreteSet::new(&xs, tol).map_err(|e| located(source, &lines, e))?)
        }
        DatasetKind::Function => {
            let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
            Payload::Function(
                SampledFunction::from_pairs(&pairs, tol).map_err(|e| located(source, &lines, e))?,
            )
        }
        DatasetKind::Subset => {
            let pieces = rows.iter().map(|r| (r[0], *r.last().unwrap()));
            Payload::Subset(RealSubset::new(pieces).map_err(|error| IoError::Invalid {
                origin: source.to_string(),
                error,
            })?)
        }
    };
    Ok(Dataset {
        kind,
        payload,
        source: source.to_string(),
    })
}

/// Reads a file, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String, IoError> {
    let read_err = |error| IoError::Read {
        path: path.to_string(),
        error,
    };
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(read_err)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(read_err)
    }
}

pub fn read_dataset(path: &str, kind: DatasetKind, tol: f64) -> Result<Dataset, IoError> {
    parse_dataset(&read_source(path)?, path, kind, tol)
}

/// Writes a dataset back out: CSV for sets and functions, JSON for subsets.
/// Numbers use the shortest decimal that parses back to the same double.
pub fn render_dataset(payload: &Payload) -> String {
    match payload {
        Payload::Set(s) => {
            let mut out = String::from("x\n");
            for x in s.points() {
                out.push_str(&format!("{x}\n"));
            }
            out
        }
        Payload::Function(f) => {
            let mut out = String::from("x,y\n");
            for (x, y) in f.pairs() {
                out.push_str(&format!("{x},{y}\n"));
            }
            out
        }
        Payload::Subset(s) => {
            let pairs: Vec<[f64; 2]> = s.pieces().iter().map(|p| [p.lo, p.hi]).collect();
            serde_json::to_string(&pairs).expect("finite numbers serialize")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn function_csv() {
        let d = parse_dataset("x,y\n0,1\n1,2", "mem", DatasetKind::Function, 0.0).unwrap();
        let Payload::Function(f) = d.payload else { panic!() };
        assert_eq!(f.len(), 2);
        assert_eq!(f.values(), &[1.0, 2.0]);
    }

    #[test]
    fn duplicate_set_reports_line() {
        let err = parse_dataset("x\n0\n0", "mem", DatasetKind::Set, 0.0).unwrap_err();
        match err {
            IoError::Build { line, error, .. } => {
                assert_eq!(line, 3);
                assert!(matches!(error, CoreError::DuplicatePoint { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn subset_json() {
        let d = parse_dataset("[[0,1],[1.7,3]]", "mem", DatasetKind::Subset, 0.0).unwrap();
        let Payload::Subset(s) = d.payload else { panic!() };
        assert_eq!(s.pieces().len(), 2);
        assert!(s.is_r_connected(1.0));
    }

    #[test]
    fn other_forms() {
        let d = parse_dataset("[3, 1, 2]", "mem", DatasetKind::Set, 0.0).unwrap();
        assert_eq!(d.payload, Payload::Set(DiscreteSet::new(&[1.0, 2.0, 3.0], 0.0).unwrap()));
        let d = parse_dataset("[[1, 10], [0, 5]]", "mem", DatasetKind::Function, 0.0).unwrap();
        let Payload::Function(f) = d.payload else { panic!() };
        assert_eq!(f.points(), &[0.0, 1.0]);
        let d = parse_dataset("x\n0\n0.7\n", "mem", DatasetKind::Subset, 0.0).unwrap();
        let Payload::Subset(s) = d.payload else { panic!() };
        assert_eq!(s.pieces().len(), 2);
        let d = parse_dataset("y,x\n5,0\n6,1\n", "mem", DatasetKind::Function, 0.0).unwrap();
        let Payload::Function(f) = d.payload else { panic!() };
        assert_eq!(f.values(), &[5.0, 6.0]);
    }

    #[test]
    fn parse_errors() {
        let err = parse_dataset("x\n0\nabc\n", "mem", DatasetKind::Set, 0.0).unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 3, .. }), "{err}");
        let err = parse_dataset("q\n0\n", "mem", DatasetKind::Set, 0.0).unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 1, .. }));
        let err = parse_dataset("x,y\n0,1\n1\n", "mem", DatasetKind::Function, 0.0).unwrap_err();
        assert!(matches!(err, IoError::Parse { .. }));
        let err = parse_dataset("[[0,1],[2]]", "mem", DatasetKind::Subset, 0.0).unwrap_err();
        assert!(matches!(err, IoError::Parse { .. }));
        let err = parse_dataset("x\n", "mem", DatasetKind::Set, 0.0).unwrap_err();
        assert!(matches!(err, IoError::Invalid { error: CoreError::EmptyInput, .. }));
        let err = parse_dataset("x\nNaN\n", "mem", DatasetKind::Set, 0.0).unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 2, .. }));
    }

    proptest! {
        #[test]
        fn render_round_trips_bits(
            xs in prop::collection::btree_set(any::<i64>(), 1..30),
            ys in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 30),
            scale in prop::sample::select(vec![1e-300, 1e-7, 0.1, 1.0, 3.7, 1e12, 1e290]),
        ) {
            let pairs: Vec<(f64, f64)> = xs.iter().zip(&ys).map(|(&x, &y)| (x as f64 * scale, y)).collect();
            let Ok(f) = SampledFunction::from_pairs(&pairs, 0.0) else { return Ok(()) };
            let payload = Payload::Function(f);
            let text = render_dataset(&payload);
            let back = parse_dataset(&text, "mem", DatasetKind::Function, 0.0).unwrap();
            let (Payload::Function(a), Payload::Function(b)) = (&payload, &back.payload) else { unreachable!() };
            for ((x0, y0), (x1, y1)) in a.pairs().zip(b.pairs()) {
                prop_assert_eq!(x0.to_bits(), x1.to_bits());
                prop_assert_eq!(y0.to_bits(), y1.to_bits());
            }

            let subset = Payload::Subset(RealSubset::new(a.pairs().map(|(x, _)| (x, x))).unwrap());
            let back = parse_dataset(&render_dataset(&subset), "mem", DatasetKind::Subset, 0.0).unwrap();
            prop_assert_eq!(back.payload, subset);
        }
    }
}

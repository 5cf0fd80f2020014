//! Case tables from CSV.
//!
//! The header names the variables, optionally followed by a `count` column.
//! A cell holds one or more labels separated by `|`. Without a frame the
//! domain of each variable is its labels in order of first appearance.

use std::io::Read;
use std::sync::Arc;

use casebelief_core::{CaseRecord, CaseTable, JointFrame, ValueSet, Variable};

use crate::error::CliError;

pub const COUNT_COLUMN: &str = "count";

pub fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct RawRow {
    line: u64,
    cells: Vec<Vec<String>>,
    count: u64,
}

/// Reads a case table. With `frame`, every header name must be one of its
/// variables and every label one of its values; the table then lives on
/// that frame.
pub fn read_cases<R: Read>(input: R, origin: &str, frame: Option<&Arc<JointFrame>>) -> Result<CaseTable, CliError> {
    let err = |line: u64, column: Option<usize>, msg: String| {
        let at = match column {
            Some(c) => format!("line {line}, column {c}"),
            None => format!("line {line}"),
        };
        CliError::format(origin, format!("{at}: {msg}"))
    };
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
    let header = reader.headers().map_err(|e| csv_error(origin, e))?.clone();
    let mut names: Vec<String> = header.iter().map(String::from).collect();
    let has_count = names.last().is_some_and(|n| n == COUNT_COLUMN);
    if has_count {
        names.pop();
    }
    if names.is_empty() {
        return Err(err(1, None, "header names no variables".into()));
    }
    for (j, n) in names.iter().enumerate() {
        if !is_label(n) {
            return Err(err(1, Some(j + 1), format!("`{n}` is not a valid variable name")));
        }
        if names[..j].contains(n) {
            return Err(err(1, Some(j + 1), format!("variable `{n}` appears twice")));
        }
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(origin, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let mut cells = Vec::with_capacity(names.len());
        for (j, field) in record.iter().take(names.len()).enumerate() {
            if field.is_empty() {
                return Err(err(line, Some(j + 1), "empty cell".into()));
            }
            let labels: Vec<String> = field.split('|').map(|s| s.trim().to_string()).collect();
            if let Some(bad) = labels.iter().find(|l| !is_label(l)) {
                return Err(err(line, Some(j + 1), format!("`{bad}` is not a valid label")));
            }
            cells.push(labels);
        }
        let count = if has_count {
            let field = &record[names.len()];
            match field.parse::<i128>() {
                Ok(n) if n > 0 && n <= u64::MAX as i128 => n as u64,
                Ok(_) => {
                    return Err(err(line, Some(names.len() + 1), format!("count must be positive, found {field}")))
                }
                Err(_) => return Err(err(line, Some(names.len() + 1), format!("`{field}` is not an integer count"))),
            }
        } else {
            1
        };
        rows.push(RawRow { line, cells, count });
    }
    if rows.is_empty() {
        return Err(CliError::format(origin, "no case rows"));
    }

    let frame = match frame {
        Some(f) => {
            for (j, n) in names.iter().enumerate() {
                if f.index_of(n).is_none() {
                    return Err(err(1, Some(j + 1), format!("variable `{n}` is not in the frame")));
                }
            }
            if let Some(missing) = f.names().find(|v| !names.iter().any(|n| n == v)) {
                return Err(err(1, None, format!("no column for frame variable `{missing}`")));
            }
            f.clone()
        }
        None => {
            let mut domains: Vec<Vec<String>> = vec![Vec::new(); names.len()];
            for row in &rows {
                for (d, labels) in domains.iter_mut().zip(&row.cells) {
                    for l in labels {
                        if !d.contains(l) {
                            d.push(l.clone());
                        }
                    }
                }
            }
            let vars = names
                .iter()
                .zip(domains)
                .map(|(n, d)| Variable::new(n.as_str(), d))
                .collect::<casebelief_core::Result<Vec<_>>>()
                .map_err(|e| CliError::format(origin, e.to_string()))?;
            Arc::new(JointFrame::new(vars).map_err(|e| CliError::format(origin, e.to_string()))?)
        }
    };

    // Column j of the file feeds variable position[j] of the frame.
    let position: Vec<usize> = names.iter().map(|n| frame.index_of(n).expect("checked above")).collect();
    let mut records = Vec::with_capacity(rows.len());
    for row in rows {
        let mut values = vec![ValueSet::EMPTY; frame.num_variables()];
        for (j, labels) in row.cells.iter().enumerate() {
            let v = frame.variable(position[j]);
            values[position[j]] = v.value_set(labels).map_err(|e| err(row.line, Some(j + 1), e.to_string()))?;
        }
        records.push(CaseRecord::new(values, row.count));
    }
    CaseTable::new(frame, records).map_err(|e| CliError::format(origin, e.to_string()))
}

fn csv_error(origin: &str, e: csv::Error) -> CliError {
    let message = match e.kind() {
        csv::ErrorKind::UnequalLengths { pos, expected_len, len } => {
            let line = pos.as_ref().map_or(0, |p| p.line());
            format!("line {line}: expected {expected_len} fields, found {len}")
        }
        _ => match e.position() {
            Some(p) => format!("line {}: {e}", p.line()),
            None => e.to_string(),
        },
    };
    CliError::format(origin, message)
}

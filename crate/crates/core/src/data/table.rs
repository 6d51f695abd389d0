use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// Parsed CSV contents: numeric features plus the raw label cells, if a label
/// column was selected.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Option<Vec<String>>,
}

/// Reads comma-separated numeric data. Every column except `label_column` must
/// hold finite reals. Reported row numbers are 1-based file lines.
pub fn read_table<R: Read>(
    reader: R,
    has_header: bool,
    label_column: Option<usize>,
) -> Result<CsvTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = if has_header {
        let h = rdr.headers().map_err(|e| csv_error(e, 1))?;
        Some(h.iter().map(str::to_owned).collect::<Vec<_>>())
    } else {
        None
    };
    let offset = usize::from(has_header) + 1;
    let mut width = header.as_ref().map(Vec::len);
    let mut rows = Vec::new();
    let mut labels = label_column.map(|_| Vec::new());

    for (i, rec) in rdr.records().enumerate() {
        let line = i + offset;
        let rec = rec.map_err(|e| csv_error(e, line))?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        let expected = *width.get_or_insert(rec.len());
        if rec.len() != expected {
            return Err(Error::InconsistentWidth {
                row: line,
                expected,
                found: rec.len(),
            });
        }
        if let Some(lc) = label_column {
            if lc >= expected {
                return Err(Error::InvalidConfig(format!(
                    "label column {lc} out of range for {expected} columns"
                )));
            }
        }
        let mut row = Vec::with_capacity(expected);
        for (col, cell) in rec.iter().enumerate() {
            if Some(col) == label_column {
                if let Some(l) = labels.as_mut() {
                    l.push(cell.to_owned());
                }
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                row: line,
                col,
                msg: format!("{cell:?} is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row: line,
                    col,
                    msg: format!("{cell:?} is not finite"),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            row: offset,
            col: 0,
            msg: "no data rows".into(),
        });
    }
    if rows[0].is_empty() {
        return Err(Error::Parse {
            row: offset,
            col: 0,
            msg: "no feature columns".into(),
        });
    }
    Ok(CsvTable {
        header,
        rows,
        labels,
    })
}

fn csv_error(e: csv::Error, line: usize) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            row: line,
            col: 0,
            msg: format!("{other:?}"),
        },
    }
}

pub fn load_table(
    path: impl AsRef<Path>,
    has_header: bool,
    label_column: Option<usize>,
) -> Result<CsvTable> {
    read_table(File::open(path)?, has_header, label_column)
}

/// Canonical form of a label cell: integers lose leading zeros and signs of
/// zero, everything else is kept verbatim.
pub(crate) fn canonical_label(cell: &str) -> String {
    match cell.parse::<i64>() {
        Ok(v) => v.to_string(),
        Err(_) => cell.to_owned(),
    }
}

impl CsvTable {
    /// Converts to a dataset. When every label is an integer, classes are
    /// ordered numerically; otherwise by first appearance.
    pub fn into_dataset(self) -> Result<LabeledDataset> {
        let raw = self
            .labels
            .ok_or_else(|| Error::InvalidConfig("no label column selected".into()))?;
        let ints: Option<Vec<i64>> = raw.iter().map(|s| s.parse().ok()).collect();
        let names: Vec<String> = match ints {
            Some(mut v) => {
                v.sort_unstable();
                v.dedup();
                v.into_iter().map(|x| x.to_string()).collect()
            }
            None => {
                let mut seen = Vec::new();
                for s in &raw {
                    let c = canonical_label(s);
                    if !seen.contains(&c) {
                        seen.push(c);
                    }
                }
                seen
            }
        };
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let labels = raw
            .iter()
            .map(|s| index[canonical_label(s).as_str()])
            .collect();
        LabeledDataset::new(self.rows, labels, Some(names))
    }
}

pub fn parse_csv(text: &str, has_header: bool, label_column: usize) -> Result<LabeledDataset> {
    read_table(text.as_bytes(), has_header, Some(label_column))?.into_dataset()
}

pub fn load_csv(
    path: impl AsRef<Path>,
    has_header: bool,
    label_column: usize,
) -> Result<LabeledDataset> {
    load_table(path, has_header, Some(label_column))?.into_dataset()
}

/// Writes features followed by the class name in the last column. Values use
/// 17 significant digits so that they parse back to the same doubles.
pub fn write_csv<W: Write>(data: &LabeledDataset, writer: W, header: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidConfig(format!("csv write failed: {other:?}")),
    };
    if header {
        let mut h: Vec<String> = (0..data.d()).map(|j| format!("x{}", j + 1)).collect();
        h.push("label".into());
        w.write_record(&h).map_err(io)?;
    }
    let mut rec = Vec::with_capacity(data.d() + 1);
    for (i, x) in data.rows().enumerate() {
        rec.clear();
        rec.extend(x.iter().map(|v| format!("{v:.16e}")));
        rec.push(data.class_name(data.label(i)));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

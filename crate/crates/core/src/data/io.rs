//! LIBSVM and CSV readers and writers.
//!
//! Both readers accept any two distinct numeric labels. The numerically
//! greater raw label becomes [`Label::Positive`], the other
//! [`Label::Negative`].

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Dataset, Label};
use crate::error::{Error, Result};

/// Loads a LIBSVM / SVMlight text file (`<label> <index>:<value> ...`).
///
/// Indices are 1-based and must be strictly increasing within a line.
/// Absent indices are zero. The dimension is the largest index seen.
pub fn load_libsvm(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_libsvm(BufReader::new(file)).map_err(|e| with_path(e, path))
}

pub fn read_libsvm<R: BufRead>(reader: R) -> Result<Dataset> {
    let mut rows: Vec<(f64, Vec<(usize, f64)>)> = Vec::new();
    let mut dim = 0usize;
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let mut tokens = content.split_whitespace();
        let Some(label_tok) = tokens.next() else {
            continue;
        };
        let label = parse_real(label_tok).ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("invalid label {label_tok:?}"),
        })?;
        let mut entries = Vec::new();
        let mut last = 0usize;
        for tok in tokens {
            let (idx, val) = tok.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("expected <index>:<value>, got {tok:?}"),
            })?;
            let idx: usize = idx.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid feature index {idx:?}"),
            })?;
            if idx == 0 {
                return Err(Error::Parse {
                    line: lineno,
                    message: "feature indices are 1-based".into(),
                });
            }
            if idx <= last {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("feature index {idx} is not strictly increasing"),
                });
            }
            let val = parse_real(val).ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("invalid feature value {val:?}"),
            })?;
            last = idx;
            entries.push((idx - 1, val));
        }
        dim = dim.max(last);
        rows.push((label, entries));
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if dim == 0 {
        return Err(Error::invalid("no features present in LIBSVM data"));
    }
    let positive_label = label_map(rows.iter().map(|(l, _)| *l))?;
    let dense = rows.into_iter().map(|(label, entries)| {
        let mut x = vec![0.0; dim];
        for (k, v) in entries {
            x[k] = v;
        }
        (x, classify(label, positive_label))
    });
    Dataset::from_samples(dim, dense)
}

/// Loads a numeric CSV. `label_column` defaults to the last column; the
/// remaining columns form the feature vector in their original order.
///
/// A first row in which no cell parses as a number is taken as a header and
/// skipped.
pub fn load_csv(path: impl AsRef<Path>, label_column: Option<usize>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, label_column).map_err(|e| with_path(e, path))
}

pub fn read_csv<R: Read>(reader: R, label_column: Option<usize>) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut width: Option<usize> = None;
    let mut labels = Vec::new();
    let mut features: Vec<Vec<f64>> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let lineno = i + 1;
        let record = record.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        if i == 0 && record.iter().all(|c| parse_real(c).is_none()) {
            continue;
        }
        let w = *width.get_or_insert(record.len());
        if record.len() != w {
            return Err(Error::Parse {
                line: lineno,
                message: format!("ragged row: expected {w} columns, found {}", record.len()),
            });
        }
        if w < 2 {
            return Err(Error::Parse {
                line: lineno,
                message: "need at least one feature column and a label column".into(),
            });
        }
        let label_col = label_column.unwrap_or(w - 1);
        if label_col >= w {
            return Err(Error::invalid(format!(
                "label column {label_col} out of range for {w} columns"
            )));
        }
        let mut x = Vec::with_capacity(w - 1);
        let mut label = 0.0;
        for (k, cell) in record.iter().enumerate() {
            let v = parse_real(cell).ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("non-numeric cell {cell:?} in column {k}"),
            })?;
            if k == label_col {
                label = v;
            } else {
                x.push(v);
            }
        }
        labels.push(label);
        features.push(x);
    }
    let Some(w) = width else {
        return Err(Error::EmptyDataset);
    };
    let positive_label = label_map(labels.iter().copied())?;
    Dataset::from_samples(
        w - 1,
        features
            .into_iter()
            .zip(labels)
            .map(|(x, l)| (x, classify(l, positive_label))),
    )
}

/// Writes `x1,..,xn,label` with a header row; labels are `1` / `-1`.
/// Reals use the shortest representation that parses back exactly.
pub fn write_csv<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    let header: Vec<String> = (1..=data.dim()).map(|k| format!("x{k}")).collect();
    writeln!(w, "{},label", header.join(",")).map_err(io_err)?;
    for s in data.samples() {
        for v in s.features {
            write!(w, "{v:e},").map_err(io_err)?;
        }
        writeln!(w, "{}", s.label.sign()).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Writes the dataset in LIBSVM format, skipping zero entries.
pub fn write_libsvm<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    for s in data.samples() {
        write!(w, "{}", s.label.sign()).map_err(io_err)?;
        for (k, v) in s.features.iter().enumerate() {
            if *v != 0.0 {
                write!(w, " {}:{v:e}", k + 1).map_err(io_err)?;
            }
        }
        writeln!(w).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Dispatches on extension: `.csv` goes to [`load_csv`], anything else is
/// read as LIBSVM.
pub fn load(path: impl AsRef<Path>, label_column: Option<usize>) -> Result<Dataset> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => load_csv(path, label_column),
        _ => load_libsvm(path),
    }
}

/// Writes to `path` in the format implied by its extension (see [`load`]).
pub fn save(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => write_csv(data, file),
        _ => write_libsvm(data, file),
    }
}

fn parse_real(s: &str) -> Option<f64> {
    let s = s.strip_prefix('+').unwrap_or(s);
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn label_map(labels: impl Iterator<Item = f64>) -> Result<f64> {
    let mut distinct: Vec<f64> = Vec::with_capacity(2);
    for l in labels {
        if !distinct.contains(&l) {
            distinct.push(l);
            if distinct.len() > 2 {
                return Err(Error::LabelCount { found: distinct.len() });
            }
        }
    }
    if distinct.len() != 2 {
        return Err(Error::LabelCount { found: distinct.len() });
    }
    Ok(distinct[0].max(distinct[1]))
}

fn classify(raw: f64, positive: f64) -> Label {
    if raw == positive {
        Label::Positive
    } else {
        Label::Negative
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<output>", e)
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn libsvm_basic() {
        let d = read_libsvm("+1 1:2.0 3:1.0\n-1 2:4.0\n".as_bytes()).unwrap();
        assert_eq!(d.dim(), 3);
        assert_eq!(d.positive(0), &[2.0, 0.0, 1.0]);
        assert_eq!(d.negative(0), &[0.0, 4.0, 0.0]);
    }

    #[test]
    fn libsvm_zero_one_labels() {
        let d = read_libsvm("0 1:1\n1 1:2\n0 1:3\n".as_bytes()).unwrap();
        assert_eq!(d.n_positive(), 1);
        assert_eq!(d.positive(0), &[2.0]);
        assert_eq!(d.n_negative(), 2);
    }

    #[test]
    fn libsvm_reports_line_numbers() {
        let err = read_libsvm("1 1:1\n-1 2:1 1:3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = read_libsvm("1 1:1\n\n-1 2:x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn libsvm_label_count_errors() {
        assert!(matches!(
            read_libsvm("1 1:1\n1 1:2\n".as_bytes()),
            Err(Error::LabelCount { found: 1 })
        ));
        assert!(matches!(
            read_libsvm("1 1:1\n2 1:2\n3 1:1\n".as_bytes()),
            Err(Error::LabelCount { found: 3 })
        ));
        assert!(matches!(read_libsvm("".as_bytes()), Err(Error::EmptyDataset)));
    }

    #[test]
    fn csv_label_last() {
        let d = read_csv("1,2,+1\n3,4,-1\n".as_bytes(), None).unwrap();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.positive(0), &[1.0, 2.0]);
        assert_eq!(d.negative(0), &[3.0, 4.0]);
    }

    #[test]
    fn csv_label_first() {
        let d = read_csv("1,5,6,7\n-1,8,9,10\n".as_bytes(), Some(0)).unwrap();
        assert_eq!(d.positive(0), &[5.0, 6.0, 7.0]);
        assert_eq!(d.negative(0), &[8.0, 9.0, 10.0]);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(
            read_csv("1,2,1\n3,-1\n".as_bytes(), None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_csv("1,2,1\n3,abc,-1\n".as_bytes(), None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_csv("1,2,1\n3,4,1\n".as_bytes(), None),
            Err(Error::LabelCount { found: 1 })
        ));
    }

    #[test]
    fn csv_skips_header() {
        let d = read_csv("a,b,label\n1,2,1\n3,4,0\n".as_bytes(), None).unwrap();
        assert_eq!(d.len(), 2);
    }
}

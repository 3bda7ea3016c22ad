//! Numeric tables used as background samples and evaluation points.

mod dgp;

pub use dgp::{generate_dgp, Dgp};

use std::io::{Read, Write};

use crate::error::{check_finite, Error, Result};

/// A dense row-major `n x d` matrix of finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    n: usize,
    d: usize,
    column_names: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(values: Vec<f64>, n: usize, d: usize) -> Result<Self> {
        if values.len() != n * d {
            return Err(Error::DimensionMismatch {
                expected: n * d,
                found: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(Self {
            values,
            n,
            d,
            column_names: None,
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let d = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * d);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != d {
                return Err(Error::RaggedRow {
                    row,
                    expected: d,
                    found: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        Self::new(values, rows.len(), d)
    }

    pub fn with_column_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: names.len(),
            });
        }
        self.column_names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        // chunks_exact on an empty-width matrix would panic
        (0..self.n).map(move |i| self.row(i))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.d + j]
    }

    pub fn column_names(&self) -> Option<&[String]> {
        self.column_names.as_deref()
    }

    /// Column names, falling back to `f0, f1, ..`.
    pub fn feature_names(&self) -> Vec<String> {
        match &self.column_names {
            Some(names) => names.clone(),
            None => (0..self.d).map(|j| format!("f{j}")).collect(),
        }
    }

    /// A new dataset made of the given rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Dataset {
        let mut values = Vec::with_capacity(indices.len() * self.d);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        Dataset {
            values,
            n: indices.len(),
            d: self.d,
            column_names: self.column_names.clone(),
        }
    }

    /// The first `n` rows.
    pub fn head(&self, n: usize) -> Dataset {
        let n = n.min(self.n);
        Dataset {
            values: self.values[..n * self.d].to_vec(),
            n,
            d: self.d,
            column_names: self.column_names.clone(),
        }
    }

    /// Reads a comma-separated table. Every row must have the same number
    /// of numeric fields; at least one data row is required.
    pub fn load_csv<R: Read>(reader: R, has_header: bool) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(has_header)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header_rows = usize::from(has_header);

        let names = if has_header {
            let headers = rdr.headers().map_err(|e| csv_error(e, 0))?;
            Some(headers.iter().map(str::to_string).collect::<Vec<_>>())
        } else {
            None
        };

        let mut values = Vec::new();
        let mut d = names.as_ref().map(Vec::len);
        let mut n = 0;
        for (i, record) in rdr.records().enumerate() {
            let row = i + header_rows;
            let record = record.map_err(|e| csv_error(e, row))?;
            let expected = *d.get_or_insert(record.len());
            if record.len() != expected {
                return Err(Error::RaggedRow {
                    row,
                    expected,
                    found: record.len(),
                });
            }
            for (column, field) in record.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| Error::Csv {
                    row,
                    column,
                    message: format!("`{field}` is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Csv {
                        row,
                        column,
                        message: format!("`{field}` is not finite"),
                    });
                }
                values.push(v);
            }
            n += 1;
        }
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut ds = Dataset::new(values, n, d.unwrap_or(0))?;
        ds.column_names = names;
        Ok(ds)
    }

    pub fn load_csv_str(source: &str, has_header: bool) -> Result<Self> {
        Self::load_csv(source.as_bytes(), has_header)
    }

    /// Writes the table as CSV, with a header row when column names exist.
    /// Values use shortest round-trip formatting, so reading the file back
    /// reproduces every `f64` exactly.
    pub fn save_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let map = |e: csv::Error| Error::Io(std::io::Error::other(e));
        if let Some(names) = &self.column_names {
            wtr.write_record(names).map_err(map)?;
        }
        for row in self.rows() {
            wtr.write_record(row.iter().map(|v| format_f64(*v)))
                .map_err(map)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn csv_error(e: csv::Error, row: usize) -> Error {
    Error::Csv {
        row,
        column: 0,
        message: e.to_string(),
    }
}

/// Shortest representation that parses back to the same `f64`; `-0` is
/// written as `0`.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        v.to_string()
    }
}

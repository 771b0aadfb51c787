use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Column {
    Int(Vec<i64>),
    Float(Vec<f64>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Int(v) => v.len(),
            Column::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_f64(&self) -> Vec<f64> {
        match self {
            Column::Int(v) => v.iter().map(|&i| i as f64).collect(),
            Column::Float(v) => v.clone(),
        }
    }

    fn cell(&self, i: usize) -> String {
        match self {
            Column::Int(v) => v[i].to_string(),
            Column::Float(v) => format_float(v[i]),
        }
    }

    fn json(&self) -> Value {
        match self {
            Column::Int(v) => Value::from(v.clone()),
            Column::Float(v) => Value::Array(
                v.iter()
                    .map(|&x| serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number))
                    .collect(),
            ),
        }
    }
}

/// 17 significant digits; `NaN`, `inf`, `-inf` for non-finite values.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Named columns of equal length, first column is the abscissa for plots.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    names: Vec<String>,
    columns: Vec<Column>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, column: Column) -> Self {
        self.push(name, column);
        self
    }

    pub fn push(&mut self, name: &str, column: Column) {
        if let Some(first) = self.columns.first() {
            assert_eq!(
                first.len(),
                column.len(),
                "column {name} has the wrong length"
            );
        }
        self.names.push(name.to_string());
        self.columns.push(column);
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.columns[i])
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.names).map_err(csv_err)?;
        for i in 0..self.rows() {
            w.write_record(self.columns.iter().map(|c| c.cell(i)))
                .map_err(csv_err)?;
        }
        w.into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }

    /// Columns as arrays under their names, plus `meta`.
    pub fn to_json(&self, meta: &Value) -> Vec<u8> {
        let mut obj = Map::new();
        for (n, c) in self.names.iter().zip(&self.columns) {
            obj.insert(n.clone(), c.json());
        }
        obj.insert("meta".into(), meta.clone());
        let mut out = serde_json::to_vec_pretty(&Value::Object(obj)).expect("serialisable");
        out.push(b'\n');
        out
    }

    /// Reads a CSV file with a header row; every cell must parse as a float.
    pub fn read_csv(path: &Path) -> Result<Table> {
        let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
        let names: Vec<String> = r
            .headers()
            .map_err(csv_err)?
            .iter()
            .map(str::to_string)
            .collect();
        let mut data = vec![Vec::new(); names.len()];
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            for (j, cell) in rec.iter().enumerate() {
                let v: f64 = cell.trim().parse().map_err(|_| {
                    Error::InvalidParams(format!(
                        "{}: row {}: `{cell}` is not a number",
                        path.display(),
                        line + 2
                    ))
                })?;
                data[j].push(v);
            }
        }
        let mut t = Table::new();
        for (n, d) in names.iter().zip(data) {
            t.push(n, Column::Float(d));
        }
        Ok(t)
    }
}

fn csv_err(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!(),
        }
    } else {
        Error::InvalidParams(format!("malformed CSV: {e}"))
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape_and_digits() {
        let t = Table::new()
            .with("index", Column::Int(vec![0, 1]))
            .with("zero", Column::Float(vec![0.1, 1.0 / 3.0]));
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "index,zero");
        assert_eq!(lines[2], "1,3.3333333333333331e-1");
        assert!(s.ends_with('\n') && !s.contains('\r'));
    }

    #[test]
    fn float_round_trip() {
        for x in [0.1, 1e-300, -2.5e17, std::f64::consts::PI] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(f64::NAN), "NaN");
    }

    #[test]
    fn json_has_meta() {
        let t = Table::new().with("x", Column::Float(vec![1.0, f64::NAN]));
        let v: Value = serde_json::from_slice(&t.to_json(&serde_json::json!({"r": 3}))).unwrap();
        assert_eq!(v["x"][0], 1.0);
        assert!(v["x"][1].is_null());
        assert_eq!(v["meta"]["r"], 3);
    }

    #[test]
    fn atomic_write_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let t = Table::new().with("value", Column::Float(vec![0.25, 2.0]));
        write_atomic(&p, &t.to_csv().unwrap()).unwrap();
        let back = Table::read_csv(&p).unwrap();
        assert_eq!(back.column("value"), Some(&Column::Float(vec![0.25, 2.0])));
    }
}

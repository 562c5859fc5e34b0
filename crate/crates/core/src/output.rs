//! CSV and JSON emitters with 17 significant digits.

use std::io::Write;

use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};
use serde_json::value::RawValue;

use crate::error::Result;
use crate::region::BoundarySample;

/// Columns of boundary-sample tables.
pub const BOUNDARY_COLUMNS: [&str; 6] = ["beta1", "beta2", "rho", "r1", "r2", "b"];

/// Scientific notation with 17 significant digits; round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// JSON number printed by [`fmt_f64`]; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(fmt_f64(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

/// A table of named `f64` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

struct Row<'a> {
    columns: &'a [String],
    values: &'a [f64],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.columns.len()))?;
        for (c, v) in self.columns.iter().zip(self.values) {
            m.serialize_entry(c, &Sig17(*v))?;
        }
        m.end()
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for r in &self.rows {
            seq.serialize_element(&Row {
                columns: &self.columns,
                values: r,
            })?;
        }
        seq.end()
    }
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|&v| fmt_f64(v)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON array of objects keyed by column name.
    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)?;
        Ok(())
    }

    /// Reads a table written by [`Table::write_csv`].
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Table> {
        let mut r = csv::Reader::from_reader(input);
        let columns: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| crate::Error::Parse(format!("bad number {f:?}: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        Ok(Table { columns, rows })
    }
}

/// Boundary samples as a table with [`BOUNDARY_COLUMNS`].
pub fn boundary_table(samples: &[BoundarySample]) -> Table {
    let mut t = Table::new(&BOUNDARY_COLUMNS);
    for s in samples {
        t.push(vec![
            s.op.beta1,
            s.op.beta2,
            s.op.rho,
            s.triplet.r1,
            s.triplet.r2,
            s.triplet.b,
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(41.0), "4.1000000000000000e1");
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 123456.789] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_and_json_round_trip() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![0.1, 2.0]);
        t.push(vec![1.0 / 3.0, -4.5e10]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf.clone()).unwrap().starts_with("a,b\n"));
        assert_eq!(Table::read_csv(&buf[..]).unwrap(), t);

        let mut js = Vec::new();
        t.write_json(&mut js).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&js).unwrap();
        assert_eq!(v[1]["a"].as_f64().unwrap(), 1.0 / 3.0);
        assert!(String::from_utf8(js).unwrap().contains("3.3333333333333331e-1"));
    }

    #[test]
    fn non_finite_json_is_null() {
        let s = serde_json::to_string(&Sig17(f64::NAN)).unwrap();
        assert_eq!(s, "null");
    }
}

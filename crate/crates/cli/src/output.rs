//! Output documents and their JSON / CSV encodings.
//!
//! JSON is written compactly with object keys in sorted order and every
//! float as `{:.16e}` (17 significant digits), so parsing a document and
//! writing it again reproduces it byte for byte.

use std::io::{self, Write};

use qbases_core::verify::{CheckReport, ParamValue};
use qbases_core::{CMatrix, Complex64};
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Formatter that prints floats with a fixed 17-digit mantissa.
pub struct Canonical;

impl Formatter for Canonical {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub struct NamedMatrix {
    pub name: String,
    pub matrix: CMatrix,
}

impl NamedMatrix {
    pub fn new(name: impl Into<String>, matrix: &CMatrix) -> Self {
        NamedMatrix { name: name.into(), matrix: matrix.clone() }
    }

    fn to_json(&self) -> Value {
        let m = &self.matrix;
        let rows: Vec<Value> =
            (0..m.nrows()).map(|r| Value::Array((0..m.ncols()).map(|c| complex(m[(r, c)])).collect())).collect();
        json!({"name": self.name, "rows": m.nrows(), "cols": m.ncols(), "data": rows})
    }
}

/// Everything a command emits.
pub struct OutputDocument {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub matrices: Option<Vec<NamedMatrix>>,
    pub reports: Option<Vec<CheckReport>>,
    pub residual: Option<f64>,
    pub passed: Option<bool>,
}

impl OutputDocument {
    pub fn new(command: &'static str, parameters: Map<String, Value>) -> Self {
        OutputDocument { command, parameters, matrices: None, reports: None, residual: None, passed: None }
    }

    pub fn to_json(&self) -> serde_json::Result<Value> {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
        doc.insert("command".into(), json!(self.command));
        doc.insert("parameters".into(), Value::Object(self.parameters.clone()));
        if let Some(ms) = &self.matrices {
            doc.insert("matrices".into(), Value::Array(ms.iter().map(NamedMatrix::to_json).collect()));
        }
        if let Some(rs) = &self.reports {
            doc.insert("reports".into(), serde_json::to_value(rs)?);
        }
        if let Some(r) = self.residual {
            doc.insert("residual".into(), json!(r));
        }
        if let Some(p) = self.passed {
            doc.insert("passed".into(), json!(p));
        }
        Ok(Value::Object(doc))
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let v = self.to_json().map_err(io::Error::other)?;
                write_json(&v, out)
            }
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let Some(reports) = &self.reports {
            w.write_record(["name", "parameters", "residual", "threshold", "slope", "slope_threshold", "passed", "note"])?;
            for r in reports {
                let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
                w.write_record([
                    r.name.as_str().to_string(),
                    params_text(r),
                    fmt_f64(r.residual),
                    fmt_f64(r.threshold),
                    opt(r.slope),
                    opt(r.slope_threshold),
                    r.passed.to_string(),
                    r.note.clone().unwrap_or_default(),
                ])?;
            }
        } else {
            w.write_record(["name", "row", "col", "re", "im"])?;
            for m in self.matrices.iter().flatten() {
                for r in 0..m.matrix.nrows() {
                    for c in 0..m.matrix.ncols() {
                        let z = m.matrix[(r, c)];
                        w.write_record([m.name.clone(), r.to_string(), c.to_string(), fmt_f64(z.re), fmt_f64(z.im)])?;
                    }
                }
            }
            if let Some(res) = self.residual {
                w.write_record(["residual".into(), "0".into(), "0".into(), fmt_f64(res), fmt_f64(0.0)])?;
            }
        }
        w.flush()
    }
}

pub fn write_json(v: &Value, out: &mut dyn Write) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, Canonical);
    serde::Serialize::serialize(v, &mut ser).map_err(io::Error::other)?;
    out.write_all(b"\n")
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn params_text(r: &CheckReport) -> String {
    r.parameters
        .iter()
        .map(|(k, v)| {
            let val = match v {
                ParamValue::Spin(j) => j.to_string(),
                ParamValue::Complex(z) => z.to_string(),
                ParamValue::Reals(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            };
            format!("{k}={val}")
        })
        .collect::<Vec<_>>()
        .join(";")
}

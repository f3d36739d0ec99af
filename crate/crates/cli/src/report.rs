//! Report rendering. The JSON schema is stable: every report carries
//! `{command, pass, residuals{}, data{}}`; keys sort alphabetically and
//! numbers are rounded to 12 significant digits, so output is
//! byte-stable for fixed inputs, seed, and tolerance.

use std::collections::BTreeMap;

use serde::Serialize;
use tqft_core::{Matrix, Scalar};

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub residuals: BTreeMap<String, f64>,
    pub data: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            pass: true,
            residuals: BTreeMap::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn residual(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_string(), round_sig(value));
    }

    pub fn datum(&mut self, name: &str, value: serde_json::Value) {
        self.data.insert(name.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if !self.residuals.is_empty() {
            out.push_str("residuals:\n");
            for (k, v) in &self.residuals {
                out.push_str(&format!("  {k} = {}\n", fmt_f64(*v)));
            }
        }
        if !self.data.is_empty() {
            out.push_str("data:\n");
            for (k, v) in &self.data {
                out.push_str(&format!("  {k} = {}\n", fmt_value(v)));
            }
        }
        out.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        out
    }
}

/// Rounds to 12 significant digits through the decimal representation,
/// keeping report output identical across platforms.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0; // normalizes -0.0 as well
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float reparses")
}

pub fn fmt_f64(x: f64) -> String {
    let r = round_sig(x);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn fmt_value(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) => {
            n.as_f64().map_or_else(|| n.to_string(), fmt_f64)
        }
        other => serde_json::to_string(other).expect("json value serializes"),
    }
}

pub fn number(x: f64) -> serde_json::Value {
    serde_json::Value::from(round_sig(x))
}

pub fn complex_pair(z: Scalar) -> serde_json::Value {
    serde_json::json!([round_sig(z.re), round_sig(z.im)])
}

pub fn matrix_value(m: &Matrix) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<serde_json::Value> = (0..m.cols()).map(|j| complex_pair(m[(i, j)])).collect();
            serde_json::Value::from(row)
        })
        .collect();
    serde_json::Value::from(rows)
}

pub fn vector_value(v: &[Scalar]) -> serde_json::Value {
    serde_json::Value::from(v.iter().map(|&z| complex_pair(z)).collect::<Vec<_>>())
}

pub fn real_vector_value(v: &[f64]) -> serde_json::Value {
    serde_json::Value::from(v.iter().map(|&x| number(x)).collect::<Vec<_>>())
}

/// Human-readable complex number at report precision.
pub fn fmt_complex(z: Scalar) -> String {
    let re = round_sig(z.re);
    let im = round_sig(z.im);
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

pub fn fmt_matrix(m: &Matrix) -> String {
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(m.rows());
    let mut width = 1;
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let s = fmt_complex(m[(i, j)]);
            width = width.max(s.len());
            row.push(s);
        }
        cells.push(row);
    }
    let mut out = String::new();
    for row in cells {
        out.push_str("  [ ");
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{cell:>width$}"));
        }
        out.push_str(" ]\n");
    }
    out
}

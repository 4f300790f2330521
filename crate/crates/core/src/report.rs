//! CSV and JSON renderings shared by every command.
//!
//! Reports are deterministic: rows keep computation order, JSON objects keep
//! field declaration order, and every float is written in its shortest
//! round-trip decimal form in both formats, so a CSV cell and the matching
//! JSON number are the same text. Missing values are empty CSV cells and
//! JSON `null`.
//!
//! | report | CSV columns |
//! |---|---|
//! | [`AlgebraicReport`] / [`EntropyTrace`] | `label,d,log_fix_count,h_n` |
//! | [`EntropyTable`] | `n,budget,delta,count,h,method` |
//! | [`MahlerReport`] | `polynomial,method,grid,value,error_bound,evaluations` |
//! | [`SoficCheckReport`] | `quotient_label,d,s,t,multiplicative_defect,freeness_defect,congruent` |

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebraic::EntropyTrace;
use crate::groups::DefectRow;
use crate::spectral::{InvertibilityCertificate, MahlerEstimate, MahlerMethod};
use crate::subshift::{CountMethod, EntropyTable};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// A tabular report with a JSON form.
pub trait Report: Serialize {
    fn csv_header(&self) -> &'static [&'static str];
    fn csv_rows(&self) -> Vec<Vec<String>>;

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.csv_header()).expect("in-memory write");
        for row in self.csv_rows() {
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Shortest round-trip text, identical to the JSON rendering.
pub fn float_cell(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float")
    } else {
        String::new()
    }
}

fn opt_float_cell(x: Option<f64>) -> String {
    x.map(float_cell).unwrap_or_default()
}

impl Report for EntropyTrace {
    fn csv_header(&self) -> &'static [&'static str] {
        &["label", "d", "log_fix_count", "h_n"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.records
            .iter()
            .map(|r| {
                vec![
                    r.label.clone(),
                    r.d.to_string(),
                    float_cell(r.log_fix_count),
                    float_cell(r.h_n),
                ]
            })
            .collect()
    }
}

/// An entropy trace with the spectral side of the comparison attached.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraicReport {
    #[serde(flatten)]
    pub trace: EntropyTrace,
    pub reference_method: Option<MahlerMethod>,
    pub reference_error_bound: Option<f64>,
    pub certificate: Option<InvertibilityCertificate>,
    /// `|h_N − reference|` at the largest evaluated quotient.
    pub residual: Option<f64>,
}

impl Report for AlgebraicReport {
    fn csv_header(&self) -> &'static [&'static str] {
        self.trace.csv_header()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.trace.csv_rows()
    }
}

fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::ClosedForm => "closed_form",
        CountMethod::ExactEnumeration => "exact_enumeration",
        CountMethod::TransferMatrix => "transfer_matrix",
    }
}

impl Report for EntropyTable {
    fn csv_header(&self) -> &'static [&'static str] {
        &["n", "budget", "delta", "count", "h", "method"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|c| {
                vec![
                    c.n.to_string(),
                    c.budget.to_string(),
                    float_cell(c.delta),
                    c.count.to_string(),
                    opt_float_cell(c.h),
                    method_name(c.method).to_string(),
                ]
            })
            .collect()
    }
}

/// Mahler-measure estimates of one polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MahlerReport {
    pub polynomial: String,
    pub estimates: Vec<MahlerEstimate>,
    pub certificate: Option<InvertibilityCertificate>,
}

impl Report for MahlerReport {
    fn csv_header(&self) -> &'static [&'static str] {
        &[
            "polynomial",
            "method",
            "grid",
            "value",
            "error_bound",
            "evaluations",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.estimates
            .iter()
            .map(|e| {
                let (method, grid) = match e.method {
                    MahlerMethod::Jensen => ("jensen", String::new()),
                    MahlerMethod::Quadrature { grid } => ("quadrature", grid.to_string()),
                };
                vec![
                    self.polynomial.clone(),
                    method.to_string(),
                    grid,
                    float_cell(e.value),
                    float_cell(e.error_bound),
                    e.evaluations.to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoficCheckReport {
    pub rows: Vec<DefectRow>,
}

impl Report for SoficCheckReport {
    fn csv_header(&self) -> &'static [&'static str] {
        &[
            "quotient_label",
            "d",
            "s",
            "t",
            "multiplicative_defect",
            "freeness_defect",
            "congruent",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.quotient_label.clone(),
                    r.d.to_string(),
                    r.s.clone(),
                    r.t.clone(),
                    r.multiplicative_defect.to_string(),
                    r.freeness_defect.map(|f| f.to_string()).unwrap_or_default(),
                    r.congruent.to_string(),
                ]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::entropy_trace;
    use crate::groups::{defect_rows, parse_laurent, torus_quotient, GroupElement};
    use crate::subshift::{subshift_entropy_table, SubshiftSFT};
    use serde_json::Value;

    fn json_cell(v: &Value) -> String {
        match v {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }

    /// Every CSV cell equals the JSON value of the same field.
    fn assert_same_fields(csv: &str, json_rows: &[Value]) {
        let mut r = csv::Reader::from_reader(csv.as_bytes());
        let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
        let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), json_rows.len());
        for (row, obj) in rows.iter().zip(json_rows) {
            for (name, cell) in header.iter().zip(row.iter()) {
                assert_eq!(cell, json_cell(&obj[name]), "field {name}");
            }
        }
    }

    #[test]
    fn trace_renderings_agree() {
        let f = parse_laurent("3 - x - x^-1", 1).unwrap();
        let qs: Vec<_> = (1..=8).map(|n| torus_quotient(&[n]).unwrap()).collect();
        let t = entropy_trace(&f, &qs, Some(0.9624236501192069)).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("label,d,log_fix_count,h_n\n"));
        let json: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["reference"], 0.9624236501192069);
        assert_same_fields(&csv, json["records"].as_array().unwrap());
    }

    #[test]
    fn skipped_quotients_appear_in_json_only() {
        let f = parse_laurent("x - 1", 1).unwrap();
        let t = entropy_trace(&f, &[torus_quotient(&[3]).unwrap()], None).unwrap();
        assert_eq!(t.to_csv(), "label,d,log_fix_count,h_n\n");
        let json: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["skipped"][0]["nullity"], 1);
        assert_eq!(json["reference"], Value::Null);
    }

    #[test]
    fn table_renderings_agree() {
        let t = subshift_entropy_table(&SubshiftSFT::golden_mean(), &[4, 9], &[0, 2]).unwrap();
        let csv = t.to_csv();
        assert!(csv.contains("\n4,0,"));
        let json: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_same_fields(&csv, json["cells"].as_array().unwrap());
    }

    #[test]
    fn defect_renderings_agree() {
        let q = torus_quotient(&[4]).unwrap();
        let z = |e| GroupElement::lattice([e]);
        let r = SoficCheckReport {
            rows: defect_rows(&q, &[(z(1), z(2)), (z(1), z(5)), (z(2), z(2))]).unwrap(),
        };
        let csv = r.to_csv();
        assert!(csv.contains("Z/4,4,(1),(5),0,1,true"));
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_same_fields(&csv, json["rows"].as_array().unwrap());
    }

    #[test]
    fn float_cells_round_trip() {
        for x in [
            0.0,
            1e-300,
            0.1,
            std::f64::consts::LN_2,
            123456789.125,
            -2.5e-7,
        ] {
            assert_eq!(float_cell(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float_cell(f64::NAN), "");
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}

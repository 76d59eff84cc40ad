//! Report serialization: JSON with sorted keys, CSV with fixed columns,
//! floats rounded to 12 significant digits.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use stabkit_core::exrec::MonteCarloReport;

use crate::error::CliError;

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Shortest text that parses back to `round12(x)`.
pub fn fmt_float(x: f64) -> String {
    let v = round12(x);
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(num) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round12(x)))
            {
                *n = num;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// One CSV row of a Monte Carlo sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub p: String,
    pub trials: u64,
    pub failures: u64,
    pub rate: String,
    pub ci_lo: String,
    pub ci_hi: String,
}

impl From<&MonteCarloReport> for ThresholdRow {
    fn from(r: &MonteCarloReport) -> Self {
        ThresholdRow {
            p: fmt_float(r.p),
            trials: r.trials,
            failures: r.failures,
            rate: fmt_float(r.failure_rate),
            ci_lo: fmt_float(r.wilson_95_interval.0),
            ci_hi: fmt_float(r.wilson_95_interval.1),
        }
    }
}

/// Serializes rows with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Domain(format!("csv error: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Domain(e.to_string()))
}

/// Columns `p, trials, failures, rate, ci_lo, ci_hi`.
pub fn threshold_csv(reports: &[MonteCarloReport]) -> Result<String, CliError> {
    let rows: Vec<ThresholdRow> = reports.iter().map(ThresholdRow::from).collect();
    to_csv(&rows)
}

fn parse_f64(s: &str, column: &str) -> Result<f64, CliError> {
    s.parse()
        .map_err(|_| CliError::Domain(format!("bad {column} value {s:?}")))
}

/// Reads a sweep back; the failure rate and interval are recomputed from
/// the counts and must agree with the file at the printed precision.
pub fn parse_threshold_csv(text: &str, seed: u64) -> Result<Vec<MonteCarloReport>, CliError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rdr.deserialize::<ThresholdRow>() {
        let row = row?;
        let r = MonteCarloReport::new(parse_f64(&row.p, "p")?, row.trials, row.failures, seed);
        let check = ThresholdRow::from(&r);
        if check != row {
            return Err(CliError::Domain(format!(
                "row for p = {} is inconsistent with its counts",
                row.p
            )));
        }
        out.push(r);
    }
    Ok(out)
}

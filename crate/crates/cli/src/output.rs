// SPDX-License-Identifier: Apache-2.0

//! Text encodings of distance matrices and sweep tables.

use logforest::DistanceMatrix;
use serde::{Deserialize, Serialize};

/// Significant digits in every printed number.
pub const SIGNIFICANT_DIGITS: usize = 9;

/// Formats `x` like C's `%.{digits}g`; infinities print as `inf`/`-inf`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let digits = digits.max(1);
    // the exponent after rounding decides between fixed and scientific
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Header `v1,...,vn` followed by one line per row.
pub fn matrix_csv(d: &DistanceMatrix) -> String {
    let n = d.dim();
    let mut out = (1..=n).map(|i| format!("v{i}")).collect::<Vec<_>>().join(",");
    out.push('\n');
    for i in 0..n {
        let row: Vec<String> = d.row(i).iter().map(|&x| format_sig(x, SIGNIFICANT_DIGITS)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// A JSON matrix entry: a number, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Finite(f64),
    Infinite(Infinity),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Infinity {
    #[serde(rename = "inf")]
    Inf,
}

impl Entry {
    /// Rounds to the same digits as the CSV so both encodings agree.
    pub fn new(x: f64) -> Self {
        if x == f64::INFINITY {
            Entry::Infinite(Infinity::Inf)
        } else {
            Entry::Finite(format_sig(x, SIGNIFICANT_DIGITS).parse().unwrap_or(x))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Entry::Finite(x) => x,
            Entry::Infinite(_) => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub kind: String,
    pub alpha: Option<f64>,
    pub family: Option<String>,
    pub distances: Vec<Vec<Entry>>,
}

impl MatrixDocument {
    pub fn new(d: &DistanceMatrix, kind: &str, alpha: Option<f64>, family: Option<String>) -> Self {
        let distances = (0..d.dim())
            .map(|i| d.row(i).iter().map(|&x| Entry::new(x)).collect())
            .collect();
        Self {
            n: d.dim(),
            kind: kind.into(),
            alpha,
            family,
            distances,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub max_error: Entry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub n: usize,
    pub target: String,
    pub family: String,
    pub rows: Vec<SweepRow>,
    pub monotone: bool,
}

impl SweepDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,max_error\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{}\n",
                format_sig(row.alpha, SIGNIFICANT_DIGITS),
                format_sig(row.max_error.value(), SIGNIFICANT_DIGITS)
            ));
        }
        out
    }
}

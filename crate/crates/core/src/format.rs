//! Matrix and rational serialization: CSV, JSON, and a LaTeX array layout.
//!
//! Rationals render as `a/b` with bare integers when the denominator is 1;
//! LaTeX uses `\frac{a}{b}`. CSV and JSON parse back losslessly.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::Rat;

/// Output format selector shared by the CLI and the emitters here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Json,
    Latex,
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(EmitFormat::Csv),
            "json" => Ok(EmitFormat::Json),
            "latex" => Ok(EmitFormat::Latex),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

impl EmitFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            EmitFormat::Csv => "csv",
            EmitFormat::Json => "json",
            EmitFormat::Latex => "latex",
        }
    }
}

/// Parse `a/b` or a bare integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s).map_err(|_| Error::BadRational(s.to_string()))
}

/// `a/b`, or just `a` when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// `\frac{a}{b}` with the sign pulled out front; integers stay bare.
pub fn rat_to_latex(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

pub fn matrix_to_csv(m: &ExactMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(rat_to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_from_csv(text: &str) -> Result<ExactMatrix> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<Rat>> = line.split(',').map(|cell| parse_rat(cell.trim())).collect();
        rows.push(row.map_err(|e| Error::BadCsv(e.to_string()))?);
    }
    if rows.is_empty() {
        return Err(Error::BadCsv("no rows".to_string()));
    }
    let n = rows.len();
    for row in &rows {
        if row.len() != n {
            return Err(Error::BadCsv(format!(
                "expected {n} columns per row, found {}",
                row.len()
            )));
        }
    }
    ExactMatrix::from_rows(rows)
}

/// JSON array of arrays of strings, e.g. `[["3","1"],["1","1"]]`.
pub fn matrix_to_json(m: &ExactMatrix) -> String {
    let rows: Vec<Vec<String>> = m
        .rows()
        .map(|row| row.iter().map(rat_to_string).collect())
        .collect();
    serde_json::to_string(&rows).expect("string matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<ExactMatrix> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| Error::BadJson(e.to_string()))?;
    if rows.is_empty() {
        return Err(Error::BadJson("no rows".to_string()));
    }
    let n = rows.len();
    let mut parsed: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for row in rows {
        if row.len() != n {
            return Err(Error::BadJson(format!(
                "expected {n} columns per row, found {}",
                row.len()
            )));
        }
        parsed.push(row.iter().map(|cell| parse_rat(cell)).collect::<Result<_>>()?);
    }
    ExactMatrix::from_rows(parsed)
}

/// Bracketed array layout, one row per line.
pub fn matrix_to_latex(m: &ExactMatrix) -> String {
    let mut out = String::new();
    out.push_str("\\left[\n");
    let _ = writeln!(out, "\\begin{{array}}{{{}}}", "c".repeat(m.order()));
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(rat_to_latex).collect();
        out.push_str(&line.join(" & "));
        out.push_str("\\\\\n");
    }
    out.push_str("\\end{array}\n\\right]\n");
    out
}

pub fn emit_matrix(m: &ExactMatrix, format: EmitFormat) -> String {
    match format {
        EmitFormat::Csv => matrix_to_csv(m),
        EmitFormat::Json => matrix_to_json(m),
        EmitFormat::Latex => matrix_to_latex(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(24, 1)), "24");
        assert_eq!(rat_to_string(&rat(-1, 2)), "-1/2");
        assert_eq!(parse_rat("24").unwrap(), rat(24, 1));
        assert_eq!(parse_rat("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn latex_rationals() {
        assert_eq!(rat_to_latex(&rat(3, 1)), "3");
        assert_eq!(rat_to_latex(&rat(-2, 1)), "-2");
        assert_eq!(rat_to_latex(&rat(1, 2)), "\\frac{1}{2}");
        assert_eq!(rat_to_latex(&rat(-1, 2)), "-\\frac{1}{2}");
    }

    #[test]
    fn csv_round_trip() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat(3, 1), rat(1, 1)],
            vec![rat(-1, 2), rat(0, 1)],
        ])
        .unwrap();
        let csv = matrix_to_csv(&m);
        assert_eq!(csv, "3,1\n-1/2,0\n");
        assert_eq!(matrix_from_csv(&csv).unwrap(), m);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(matrix_from_csv(""), Err(Error::BadCsv(_))));
        assert!(matches!(matrix_from_csv("1,2\n3\n"), Err(Error::BadCsv(_))));
        assert!(matches!(matrix_from_csv("1,x\n3,4\n"), Err(Error::BadCsv(_))));
    }

    #[test]
    fn json_round_trip() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat(3, 1), rat(1, 1)],
            vec![rat(-1, 2), rat(0, 1)],
        ])
        .unwrap();
        let json = matrix_to_json(&m);
        assert_eq!(json, r#"[["3","1"],["-1/2","0"]]"#);
        assert_eq!(matrix_from_json(&json).unwrap(), m);
        assert!(matrix_from_json("[[\"1\"],[\"2\"]]").is_err());
        assert!(matrix_from_json("nonsense").is_err());
    }

    #[test]
    fn latex_layout() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat(1, 1), rat(-1, 2)],
            vec![rat(0, 1), rat(2, 1)],
        ])
        .unwrap();
        let tex = matrix_to_latex(&m);
        assert_eq!(
            tex,
            "\\left[\n\\begin{array}{cc}\n1 & -\\frac{1}{2}\\\\\n0 & 2\\\\\n\\end{array}\n\\right]\n"
        );
    }
}

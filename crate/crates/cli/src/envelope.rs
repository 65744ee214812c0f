//! The result envelope every subcommand emits, and its three renderings.
//!
//! JSON is the canonical format: the full envelope, pretty-printed, with
//! every computed number as an exact decimal string (`"p"` or `"p/q"`),
//! never a float. CSV and text are projections of the same data: CSV prints
//! the payload table, text prints a human-readable payload followed by the
//! check lines.

use std::io::{self, Write};

use mirrorkit_core::Rational;
use num::BigInt;
use serde::Serialize;

/// One named pass/fail check carried alongside the payload.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// The structured result of one subcommand run.
#[derive(Debug, Clone, Serialize)]
pub struct ResultEnvelope {
    pub version: &'static str,
    pub subcommand: &'static str,
    pub inputs: serde_json::Value,
    pub payload: serde_json::Value,
    pub checks: Vec<Check>,
}

impl ResultEnvelope {
    pub fn new(subcommand: &'static str, inputs: serde_json::Value) -> Self {
        ResultEnvelope {
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            inputs,
            payload: serde_json::Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Envelope plus the precomputed text and CSV projections.
#[derive(Debug)]
pub struct CommandOutput {
    pub envelope: ResultEnvelope,
    pub text: Vec<String>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

impl CommandOutput {
    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let body = serde_json::to_string_pretty(&self.envelope)
            .expect("envelope serialization cannot fail");
        writeln!(out, "{body}")
    }

    pub fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(
            out,
            "mirrorkit {} v{}",
            self.envelope.subcommand, self.envelope.version
        )?;
        for line in &self.text {
            writeln!(out, "{line}")?;
        }
        if !self.envelope.checks.is_empty() {
            let passed = self.envelope.checks.iter().filter(|c| c.passed).count();
            for c in &self.envelope.checks {
                let mark = if c.passed { "[pass]" } else { "[FAIL]" };
                writeln!(out, "{mark} {}: {}", c.name, c.detail)?;
            }
            writeln!(
                out,
                "{passed} of {} checks passed",
                self.envelope.checks.len()
            )?;
        }
        Ok(())
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", csv_line(&self.csv_header))?;
        for row in &self.csv_rows {
            writeln!(out, "{}", csv_line(row))?;
        }
        Ok(())
    }
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_field(f: &str) -> String {
    if f.contains(',') || f.contains('"') || f.contains('\n') {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

/// Exact decimal rendering of a rational: `"p"` when integral, else `"p/q"`.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact decimal rendering of a big integer.
pub fn bigint_string(b: &BigInt) -> String {
    b.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use mirrorkit_core::exact_series::{rat, ratio};

    #[test]
    fn rationals_render_as_exact_decimal_strings() {
        assert_eq!(rational_string(&rat(5)), "5");
        assert_eq!(rational_string(&rat(-12)), "-12");
        assert_eq!(rational_string(&ratio(7, 2)), "7/2");
        assert_eq!(rational_string(&ratio(-7, 2)), "-7/2");
        assert_eq!(rational_string(&ratio(4, 2)), "2");
    }

    #[test]
    fn csv_fields_are_escaped() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn json_rendering_is_a_full_envelope() {
        let mut env = ResultEnvelope::new("yukawa", serde_json::json!({"order": 2}));
        env.payload = serde_json::json!({"coefficients": ["5"]});
        env.checks.push(Check::new("constant term", true, "a0 = 5"));
        let output = CommandOutput {
            envelope: env,
            text: vec!["kappa = 5".into()],
            csv_header: vec!["k".into(), "a_k".into()],
            csv_rows: vec![vec!["0".into(), "5".into()]],
        };
        let mut json = Vec::new();
        output.write_json(&mut json).unwrap();
        let parsed: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(parsed["subcommand"], "yukawa");
        assert_eq!(parsed["payload"]["coefficients"][0], "5");
        assert_eq!(parsed["checks"][0]["passed"], true);

        let mut text = Vec::new();
        output.write_text(&mut text).unwrap();
        let text = String::from_utf8(text).unwrap();
        assert!(text.contains("kappa = 5"));
        assert!(text.contains("[pass] constant term: a0 = 5"));
        assert!(text.contains("1 of 1 checks passed"));

        let mut csv = Vec::new();
        output.write_csv(&mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), "k,a_k\n0,5\n");
    }
}

//! Verification records emitted by experiments.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One named comparison. `lhs`/`rhs` serialize as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub tolerance: f64,
    pub pass: bool,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Check {
    /// Passes when `|lhs - rhs| <= tolerance`.
    pub fn close(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        let pass = (lhs - rhs).norm() <= tolerance;
        Self { name: name.into(), lhs: pair(lhs), rhs: pair(rhs), tolerance, pass }
    }

    pub fn close_real(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::close(name, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), tolerance)
    }

    /// Passes when `lhs <= rhs + tolerance` (real parts).
    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let pass = lhs <= rhs + tolerance;
        Self { name: name.into(), lhs: [lhs, 0.0], rhs: [rhs, 0.0], tolerance, pass }
    }

    /// Passes when `lhs > rhs + tolerance` (real parts).
    pub fn exceeds(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let pass = lhs > rhs + tolerance;
        Self { name: name.into(), lhs: [lhs, 0.0], rhs: [rhs, 0.0], tolerance, pass }
    }

    /// Integer equality.
    pub fn equal_int(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Self { name: name.into(), lhs: [lhs as f64, 0.0], rhs: [rhs as f64, 0.0], tolerance: 0.0, pass: lhs == rhs }
    }

    /// A check that could not be evaluated.
    pub fn failed(name: impl Into<String>, reason: impl std::fmt::Display) -> Self {
        Self {
            name: format!("{}: {reason}", name.into()),
            lhs: [0.0, 0.0],
            rhs: [0.0, 0.0],
            tolerance: 0.0,
            pass: false,
        }
    }

    pub fn lhs_complex(&self) -> Complex64 {
        Complex64::new(self.lhs[0], self.lhs[1])
    }

    pub fn rhs_complex(&self) -> Complex64 {
        Complex64::new(self.rhs[0], self.rhs[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub experiment: String,
    pub parameters: serde_json::Value,
    pub checks: Vec<Check>,
    pub all_pass: bool,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn new(
        experiment: impl Into<String>,
        parameters: serde_json::Value,
        checks: Vec<Check>,
        runtime_ms: u64,
    ) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        Self { experiment: experiment.into(), parameters, checks, all_pass, runtime_ms }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `runtime_ms` zeroed, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.runtime_ms = 0;
        copy.to_json()
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)
    }

    pub fn write_checks_csv(&self, path: &Path) -> std::io::Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "{CHECKS_CSV_HEADER}")?;
        for c in &self.checks {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_field(&c.name),
                c.lhs[0],
                c.lhs[1],
                c.rhs[0],
                c.rhs[1],
                c.tolerance,
                c.pass
            )?;
        }
        out.flush()
    }
}

pub const CHECKS_CSV_HEADER: &str = "name,lhs_re,lhs_im,rhs_re,rhs_im,tol,pass";
pub const GRID_CSV_HEADER: &str = "r,theta,re,im,g";

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

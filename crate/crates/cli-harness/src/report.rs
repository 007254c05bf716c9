use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::anchors::anchor;
use crate::config::{Format, RunConfig, Suite};
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// How the residual is compared with the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

impl Relation {
    fn holds(self, residual: f64, tol: f64) -> bool {
        match self {
            Relation::AtMost => residual <= tol,
            Relation::AtLeast => residual >= tol,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    /// SHA-256 of the check id, its inputs and the seed.
    pub inputs_digest: String,
    /// `None` when the computation itself failed; see `error`.
    pub residual: Option<f64>,
    pub tol: f64,
    pub relation: Relation,
    /// A measured quantity reported alongside the residual.
    pub observed: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

/// Outcome of one measurement: the residual judged against the tolerance and an
/// optional value to report with it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measured {
    pub residual: f64,
    pub observed: Option<f64>,
}

impl Measured {
    pub fn residual(residual: f64) -> Self {
        Self {
            residual,
            observed: None,
        }
    }

    pub fn with_observed(residual: f64, observed: f64) -> Self {
        Self {
            residual,
            observed: Some(observed),
        }
    }
}

pub type CheckOutcome = std::result::Result<Measured, Box<dyn std::error::Error>>;

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// Collects checks for one run. Checks are identified as `family[params]`.
pub struct Runner<'a> {
    cfg: &'a RunConfig,
    checks: Vec<CheckResult>,
}

impl<'a> Runner<'a> {
    pub fn new(cfg: &'a RunConfig) -> Self {
        Self {
            cfg,
            checks: Vec::new(),
        }
    }

    pub fn config(&self) -> &RunConfig {
        self.cfg
    }

    /// Runs `measure`; an error becomes a failed check instead of aborting the suite.
    pub fn check(
        &mut self,
        family: &'static str,
        params: &str,
        inputs: &str,
        default_tol: f64,
        relation: Relation,
        measure: impl FnOnce() -> CheckOutcome,
    ) {
        let id = if params.is_empty() {
            family.to_string()
        } else {
            format!("{family}[{params}]")
        };
        let tol = self.cfg.tolerance(family, default_tol);
        let start = Instant::now();
        let outcome = measure();
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let inputs_digest = digest(&format!("{id}|{inputs}|seed={}", self.cfg.seed));
        let (residual, observed, error) = match outcome {
            Ok(m) => (Some(m.residual), m.observed, None),
            Err(e) => (None, None, Some(e.to_string())),
        };
        let pass = residual.is_some_and(|r| relation.holds(r, tol));
        self.checks.push(CheckResult {
            id,
            anchor: anchor(family).to_string(),
            inputs_digest,
            residual,
            tol,
            relation,
            observed,
            pass,
            error,
            wall_ms,
        });
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport::new(self.cfg.clone(), self.checks)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

impl VerificationReport {
    /// Checks are ordered by id so the body does not depend on execution order.
    pub fn new(config: RunConfig, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        Self {
            schema_version: SCHEMA_VERSION,
            suite: config.suite,
            config,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// The report with wall times zeroed: identical across repeated runs.
    pub fn body(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.wall_ms = 0.0;
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "id,anchor,inputs_digest,residual,relation,tol,observed,pass,error,wall_ms\n",
        );
        for c in &self.checks {
            let fields = [
                csv_field(&c.id),
                csv_field(&c.anchor),
                c.inputs_digest.clone(),
                opt(c.residual),
                c.relation.symbol().to_string(),
                format!("{:e}", c.tol),
                opt(c.observed),
                c.pass.to_string(),
                csv_field(c.error.as_deref().unwrap_or("")),
                format!("{:.3}", c.wall_ms),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let residual = c
                .residual
                .map(|r| format!("{r:.3e}"))
                .unwrap_or_else(|| "error".into());
            let _ = write!(
                out,
                "{verdict} {:<48} {residual} {} {:.1e}",
                c.id,
                c.relation.symbol(),
                c.tol
            );
            if let Some(v) = c.observed {
                let _ = write!(out, "  observed {v:.6}");
            }
            if let Some(e) = &c.error {
                let _ = write!(out, "  ({e})");
            }
            let _ = writeln!(out, "  [{:.0} ms]", c.wall_ms);
        }
        let s = self.summary;
        let _ = writeln!(
            out,
            "suite {}: {} checks, {} passed, {} failed",
            self.suite, s.total, s.passed, s.failed
        );
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => Ok(self.to_csv()),
            Format::Text => Ok(self.to_text()),
        }
    }

    /// Writes to `path`, or to stdout when there is none.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        let body = self.render(format)?;
        match path {
            Some(p) => std::fs::write(p, body)?,
            None => std::io::stdout().write_all(body.as_bytes())?,
        }
        Ok(())
    }
}

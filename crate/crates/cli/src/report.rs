//! Command reports, rendered either as JSON or as text. Field order is
//! fixed and no timing is recorded, so equal inputs give equal output.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

/// Identifies the report layout; bumped on any incompatible change.
pub const SCHEMA: &str = "elx-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[value(name = "json-like")]
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub path: Vec<String>,
}

impl ErrorInfo {
    pub fn new(kind: &'static str, message: impl ToString) -> Self {
        Self { kind, message: message.to_string(), path: Vec::new() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofEntry {
    pub name: String,
    pub line: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckBody {
    pub checked: usize,
    pub failed: usize,
    pub proofs: Vec<ProofEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractBody {
    pub proof: String,
    pub statement: String,
    pub term: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub program: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EalBody {
    pub proof: String,
    pub eal_type: String,
    pub derivation_size: usize,
    pub box_depth: usize,
    pub rules: BTreeMap<&'static str, usize>,
    pub box_term: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelBody {
    pub depth: usize,
    pub beta_steps: u64,
    pub merges: u64,
    pub start_size: usize,
    pub max_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CostBody {
    pub box_depth: usize,
    pub total_steps: u64,
    pub reopened: u64,
    pub residual_steps: u64,
    pub levels: Vec<LevelBody>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunBody {
    pub proof: String,
    pub strategy: &'static str,
    pub fuel: u64,
    pub inputs: Vec<u64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    pub steps: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostBody>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleBody {
    pub inputs: Vec<u64>,
    pub expected: u64,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConformBody {
    pub proof: String,
    pub reference: String,
    pub max: u64,
    pub fuel: u64,
    pub passed: usize,
    pub total: usize,
    pub total_steps: u64,
    pub samples: Vec<SampleBody>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Body {
    Check(CheckBody),
    Extract(ExtractBody),
    Eal(EalBody),
    Run(RunBody),
    Conform(ConformBody),
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub file: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub body: Option<Body>,
}

impl Report {
    pub fn new(command: &'static str, file: &str) -> Self {
        Self { schema: SCHEMA, command, file: file.into(), ok: true, error: None, body: None }
    }

    pub fn failed(mut self, error: ErrorInfo) -> Self {
        self.ok = false;
        self.error = Some(error);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        match &self.body {
            Some(Body::Check(b)) => {
                for p in &b.proofs {
                    let _ = writeln!(w, "{} {} (line {})", p.status, p.name, p.line);
                    if let Some(s) = &p.statement {
                        let _ = writeln!(w, "  statement: {s}");
                    }
                    if let Some(t) = &p.term {
                        let _ = writeln!(w, "  term: {t}");
                    }
                    if let Some(e) = &p.error {
                        text_error(w, e, "  ");
                    }
                    for line in p.derivation.iter().flatten() {
                        let _ = writeln!(w, "  | {line}");
                    }
                }
                let _ = writeln!(w, "{} checked, {} failed", b.checked, b.failed);
            }
            Some(Body::Extract(b)) => {
                let _ = writeln!(w, "proof: {}", b.proof);
                let _ = writeln!(w, "statement: {}", b.statement);
                let _ = writeln!(w, "term: {}", b.term);
                let _ = writeln!(w, "type: {}", b.ty);
                let _ = writeln!(w, "program: {}", b.program);
            }
            Some(Body::Eal(b)) => {
                let _ = writeln!(w, "proof: {}", b.proof);
                let _ = writeln!(w, "eal type: {}", b.eal_type);
                let _ = writeln!(w, "derivation size: {}, box depth: {}", b.derivation_size, b.box_depth);
                let rules: Vec<String> = b.rules.iter().map(|(r, n)| format!("{r}={n}")).collect();
                let _ = writeln!(w, "rules: {}", rules.join(" "));
                let _ = writeln!(w, "box term: {}", b.box_term);
                for line in b.derivation.iter().flatten() {
                    let _ = writeln!(w, "  | {line}");
                }
            }
            Some(Body::Run(b)) => {
                let inputs: Vec<String> = b.inputs.iter().map(u64::to_string).collect();
                let _ = writeln!(w, "{} [{}] by {} within {}: {}", b.proof, inputs.join(", "), b.strategy, b.fuel, b.status);
                if let Some(n) = b.output {
                    let _ = writeln!(w, "output: {n}");
                }
                if let Some(nf) = &b.normal_form {
                    let _ = writeln!(w, "normal form: {nf}");
                }
                let _ = writeln!(w, "steps: {}", b.steps);
                if let Some(c) = &b.cost {
                    for l in &c.levels {
                        let _ = writeln!(
                            w,
                            "  depth {}: {} beta, {} merges, size {} -> max {}",
                            l.depth, l.beta_steps, l.merges, l.start_size, l.max_size
                        );
                    }
                    let _ = writeln!(
                        w,
                        "  box depth {}, reopened {}, residual steps {}",
                        c.box_depth, c.reopened, c.residual_steps
                    );
                }
            }
            Some(Body::Conform(b)) => {
                for s in &b.samples {
                    let inputs: Vec<String> = s.inputs.iter().map(u64::to_string).collect();
                    let _ = write!(w, "{}({}) = {}: {}", b.reference, inputs.join(", "), s.expected, s.outcome);
                    if let Some(n) = s.found {
                        let _ = write!(w, ", found {n}");
                    }
                    if let Some(nf) = &s.normal_form {
                        let _ = write!(w, ", normal form {nf}");
                    }
                    if let Some(n) = s.steps {
                        let _ = write!(w, " ({n} steps)");
                    }
                    w.push('\n');
                }
                let _ = writeln!(w, "{}/{} samples conform, {} steps", b.passed, b.total, b.total_steps);
            }
            None => {}
        }
        if let Some(e) = &self.error {
            text_error(w, e, "");
        }
        let _ = writeln!(w, "{}", if self.ok { "ok" } else { "FAILED" });
        out
    }
}

fn text_error(w: &mut String, e: &ErrorInfo, indent: &str) {
    let _ = writeln!(w, "{indent}error ({}): {}", e.kind, e.message);
    if !e.path.is_empty() {
        let _ = writeln!(w, "{indent}  at {}", e.path.join(" > "));
    }
}

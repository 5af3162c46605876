//! The five commands, each producing a [`Report`].

use std::path::Path;

use elx_core::eal::{
    apply_numerals, check_eal, church_decode, church_encode, stratified_normalize, to_box_term, translate_to_eal,
    CostProfile, EalDerivation,
};
use elx_core::kernel::{CheckedProof, KernelError};
use elx_core::oracle::{default_max, grid, RefFunction};
use elx_core::proj::{erase, minus_proj, PureTerm};
use elx_core::realize::{conformance_test, ConformanceError, DataTypeSpec, SampleOutcome};
use elx_core::stdlib::totality_shape;

use crate::report::{
    Body, CheckBody, ConformBody, CostBody, EalBody, ErrorInfo, ExtractBody, LevelBody, ProofEntry, Report, RunBody,
    SampleBody,
};
use crate::session::{load, LoadError, Session};

/// Default β-step budget per normalization.
pub const DEFAULT_FUEL: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    NormalOrder,
    Stratified,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::NormalOrder => "normal-order",
            Strategy::Stratified => "stratified",
        }
    }
}

fn load_error(e: &LoadError) -> ErrorInfo {
    let kind = match e {
        LoadError::Io { .. } => "io",
        LoadError::Syntax(..) => "syntax",
        LoadError::Theory(_) => "theory",
        LoadError::Duplicate { .. } => "duplicate",
    };
    ErrorInfo::new(kind, e)
}

fn kernel_error(e: &KernelError) -> ErrorInfo {
    ErrorInfo { kind: "kernel", message: e.kind.to_string(), path: e.path.clone() }
}

fn session(path: &Path) -> Result<Session, ErrorInfo> {
    let file = load(path).map_err(|e| load_error(&e))?;
    Session::check(&file).map_err(|e| load_error(&e))
}

/// The checked proof called `name`.
fn checked(path: &Path, name: &str) -> Result<CheckedProof, ErrorInfo> {
    let session = session(path)?;
    let outcome = session
        .outcome(name)
        .ok_or_else(|| ErrorInfo::new("unknown-proof", format!("no proof named `{name}`")))?;
    outcome.result.clone().map_err(|e| kernel_error(&e))
}

/// The goal of a closed proof, or the whole sequent of an open one.
fn statement(p: &CheckedProof) -> String {
    if p.sequent.delta.is_empty() && p.sequent.gamma.is_empty() {
        p.sequent.goal.to_string()
    } else {
        p.sequent.to_string()
    }
}

fn lines(s: &str) -> Vec<String> {
    s.lines().map(str::to_string).collect()
}

pub fn check(path: &Path, verbose: bool) -> Report {
    let report = Report::new("check", &path.display().to_string());
    let session = match session(path) {
        Ok(s) => s,
        Err(e) => return report.failed(e),
    };
    let proofs: Vec<ProofEntry> = session
        .outcomes
        .iter()
        .map(|o| {
            let (statement, term, error, derivation) = match &o.result {
                Ok(p) => (
                    Some(statement(p)),
                    Some(p.term.to_string()),
                    None,
                    verbose.then(|| lines(&p.derivation.dump())),
                ),
                Err(e) => (o.item.claim.as_ref().map(ToString::to_string), None, Some(kernel_error(e)), None),
            };
            ProofEntry {
                name: o.item.name.clone(),
                line: o.item.pos.line,
                status: if o.ok() { "checked" } else { "failed" },
                statement,
                term,
                error,
                derivation,
            }
        })
        .collect();
    let failed = proofs.iter().filter(|p| p.error.is_some()).count();
    Report {
        ok: failed == 0,
        body: Some(Body::Check(CheckBody { checked: proofs.len() - failed, failed, proofs })),
        ..report
    }
}

pub fn extract(path: &Path, name: &str) -> Report {
    let report = Report::new("extract", &path.display().to_string());
    match checked(path, name) {
        Err(e) => report.failed(e),
        Ok(p) => Report {
            body: Some(Body::Extract(ExtractBody {
                proof: name.into(),
                statement: statement(&p),
                term: p.term.to_string(),
                ty: minus_proj(&p.sequent.goal).to_string(),
                program: erase(&p.term).to_string(),
            })),
            ..report
        },
    }
}

fn eal_lines(d: &EalDerivation, depth: usize, out: &mut Vec<String>) {
    out.push(format!("{}{}: {d}", "  ".repeat(depth), d.rule.name()));
    for c in &d.children {
        eal_lines(c, depth + 1, out);
    }
}

pub const EAL_RULES: [&str; 8] = [
    "axiom",
    "weakening",
    "contraction",
    "promotion",
    "application",
    "abstraction",
    "forall-intro",
    "forall-elim",
];

pub fn eal(path: &Path, name: &str, verbose: bool) -> Report {
    let report = Report::new("eal", &path.display().to_string());
    let p = match checked(path, name) {
        Ok(p) => p,
        Err(e) => return report.failed(e),
    };
    let d = translate_to_eal(&p);
    let derivation = verbose.then(|| {
        let mut out = Vec::new();
        eal_lines(&d, 0, &mut out);
        out
    });
    let body = Body::Eal(EalBody {
        proof: name.into(),
        eal_type: d.ty.to_string(),
        derivation_size: d.size(),
        box_depth: d.box_depth(),
        rules: EAL_RULES.iter().map(|r| (*r, d.count(r))).collect(),
        box_term: to_box_term(&p).to_string(),
        derivation,
    });
    let report = Report { body: Some(body), ..report };
    match check_eal(&d) {
        Ok(()) => report,
        Err(v) => report.failed(ErrorInfo { kind: "eal-violation", message: format!("{}: {}", v.rule, v.reason), path: v.path }),
    }
}

fn cost_body(c: &CostProfile) -> CostBody {
    CostBody {
        box_depth: c.box_depth,
        total_steps: c.total_steps,
        reopened: c.reopened,
        residual_steps: c.residual_steps,
        levels: c
            .levels
            .iter()
            .map(|l| LevelBody {
                depth: l.depth,
                beta_steps: l.beta_steps,
                merges: l.merges,
                start_size: l.start_size,
                max_size: l.max_size,
            })
            .collect(),
    }
}

pub fn run(path: &Path, name: &str, inputs: &[u64], strategy: Strategy, fuel: u64, verbose: bool) -> Report {
    let report = Report::new("run", &path.display().to_string());
    let p = match checked(path, name) {
        Ok(p) => p,
        Err(e) => return report.failed(e),
    };
    if !p.sequent.delta.is_empty() {
        return report.failed(ErrorInfo::new("open-hypotheses", "the proof has open hypotheses"));
    }
    let shape = totality_shape(&p.sequent.goal);
    if let Some(s) = &shape {
        if s.vars.len() != inputs.len() {
            let msg = format!("`{name}` takes {} input(s), {} given", s.vars.len(), inputs.len());
            return report.failed(ErrorInfo::new("arity", msg));
        }
    }
    let mut body = RunBody {
        proof: name.into(),
        strategy: strategy.name(),
        fuel,
        inputs: inputs.to_vec(),
        status: "normal",
        output: None,
        normal_form: None,
        steps: 0,
        cost: None,
    };
    let normal_form: Option<PureTerm> = match strategy {
        Strategy::NormalOrder => {
            let program = PureTerm::apps(erase(&p.term), inputs.iter().map(|&n| church_encode(n)));
            match program.normalize(fuel) {
                Ok(nf) => {
                    body.steps = nf.steps;
                    Some(nf.term)
                }
                Err(_) => {
                    body.steps = fuel;
                    None
                }
            }
        }
        Strategy::Stratified => {
            let Some(s) = &shape else {
                let msg = format!("{} is not a totality statement over N", p.sequent.goal);
                return report.failed(ErrorInfo::new("shape", msg));
            };
            let args: Vec<(u64, usize)> = inputs.iter().copied().zip(s.premise_bangs.iter().copied()).collect();
            match stratified_normalize(&apply_numerals(to_box_term(&p), &args), fuel) {
                Ok((nf, profile)) => {
                    body.steps = profile.total_steps;
                    body.cost = Some(cost_body(&profile));
                    Some(nf)
                }
                Err(e) => {
                    body.steps = e.profile.total_steps;
                    body.cost = Some(cost_body(&e.profile));
                    None
                }
            }
        }
    };
    let error = match normal_form {
        None => {
            body.status = "fuel-exhausted";
            Some(ErrorInfo::new("fuel-exhausted", format!("no normal form within {fuel} steps")))
        }
        Some(nf) => {
            if verbose {
                body.normal_form = Some(nf.to_string());
            }
            match church_decode(&nf) {
                Ok(n) => {
                    body.output = Some(n);
                    None
                }
                Err(e) => {
                    body.status = "decode-failure";
                    body.normal_form = Some(nf.to_string());
                    Some(ErrorInfo::new("decode-failure", e))
                }
            }
        }
    };
    let report = Report { body: Some(Body::Run(body)), ..report };
    match error {
        Some(e) => report.failed(e),
        None => report,
    }
}

pub fn conform(path: &Path, name: &str, reference: RefFunction, max: Option<u64>, fuel: u64) -> Report {
    let report = Report::new("conform", &path.display().to_string());
    let p = match checked(path, name) {
        Ok(p) => p,
        Err(e) => return report.failed(e),
    };
    let arity = reference.arity();
    let max = max.unwrap_or_else(|| default_max(arity));
    let nat = DataTypeSpec::nat();
    let inputs = vec![nat.clone(); arity];
    let result = match conformance_test(&p, &inputs, &nat, reference, &grid(arity, max), fuel) {
        Ok(r) => r,
        Err(e) => {
            let kind = match e {
                ConformanceError::OpenHypotheses => "open-hypotheses",
                ConformanceError::ShapeMismatch { .. } => "shape",
                ConformanceError::SampleArity { .. } => "arity",
            };
            return report.failed(ErrorInfo::new(kind, e));
        }
    };
    let samples: Vec<SampleBody> = result
        .samples
        .iter()
        .map(|s| {
            let mut b = SampleBody {
                inputs: s.inputs.clone(),
                expected: s.expected,
                outcome: "pass",
                found: None,
                steps: None,
                normal_form: None,
            };
            match &s.outcome {
                SampleOutcome::Pass { steps } => b.steps = Some(*steps),
                SampleOutcome::Mismatch { found, steps } => {
                    b.outcome = "mismatch";
                    b.found = Some(*found);
                    b.steps = Some(*steps);
                }
                SampleOutcome::FuelExhausted { .. } => b.outcome = "fuel-exhausted",
                SampleOutcome::DecodeFailure { normal_form } => {
                    b.outcome = "decode-failure";
                    b.normal_form = Some(normal_form.clone());
                }
            }
            b
        })
        .collect();
    let body = ConformBody {
        proof: name.into(),
        reference: result.reference.clone(),
        max,
        fuel,
        passed: result.passed(),
        total: samples.len(),
        total_steps: result.total_steps(),
        samples,
    };
    let ok = result.all_passed();
    let report = Report { body: Some(Body::Conform(body)), ..report };
    if ok {
        report
    } else {
        let failed = result.samples.len() - result.passed();
        report.failed(ErrorInfo::new("nonconforming", format!("{failed} sample(s) do not conform")))
    }
}

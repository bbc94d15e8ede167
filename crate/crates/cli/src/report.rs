//! Reports for problem files and suites.

use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use ordspace::suites::SuiteReport;

use crate::eval::{evaluate, matches, EvalError, Settings};
use crate::problem::{parse, InputError, Problem};
use crate::{Format, EXIT_INPUT, EXIT_MISMATCH};

pub const REPORT_VERSION: u32 = 1;

#[derive(Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Met,
    Mismatch,
    Unchecked,
    Error,
}

#[derive(Serialize)]
pub struct QueryReport {
    pub index: usize,
    pub op: String,
    pub args: Vec<Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    pub value: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub met: usize,
    pub mismatched: usize,
    pub unchecked: usize,
    pub errors: usize,
}

/// Wall-clock data; the only part of a report that changes between runs.
#[derive(Serialize)]
pub struct Timestamp {
    pub unix_seconds: u64,
    pub elapsed_ms: Vec<u128>,
}

#[derive(Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Body {
    Run { file: String, queries: Vec<QueryReport>, summary: Summary },
    Suite { report: SuiteReport, passed: bool },
}

#[derive(Serialize)]
pub struct Report {
    pub report_version: u32,
    pub seed: u64,
    pub budget: u64,
    #[serde(flatten)]
    pub body: Body,
    pub timestamp: Timestamp,
    #[serde(skip)]
    input_error: bool,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

pub fn run_file(path: &Path, s: &Settings) -> Result<Report, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let problem = Problem::resolve(parse(&text)?)?;
    let mut queries = Vec::new();
    let mut summary = Summary::default();
    let mut elapsed = Vec::new();
    let mut input_error = false;
    for (i, q) in problem.queries.iter().enumerate() {
        let start = Instant::now();
        let result = evaluate(&problem, q, s);
        elapsed.push(start.elapsed().as_millis());
        let mut rep = QueryReport {
            index: i + 1,
            op: q.op.clone(),
            args: q.args.clone(),
            status: Status::Unchecked,
            expected: q.expected.clone(),
            value: Value::Null,
            detail: Value::Null,
            error: None,
        };
        match result {
            Ok(a) => {
                rep.status = match &q.expected {
                    None => Status::Unchecked,
                    Some(e) if matches(e, &a.value) => Status::Met,
                    Some(_) => Status::Mismatch,
                };
                rep.value = a.value;
                rep.detail = a.detail;
            }
            Err(EvalError::Input(e)) => {
                input_error = true;
                rep.status = Status::Error;
                rep.error = Some(e);
            }
            Err(EvalError::Failure(e)) => {
                rep.status = Status::Mismatch;
                rep.error = Some(e);
            }
        }
        summary.total += 1;
        match rep.status {
            Status::Met => summary.met += 1,
            Status::Mismatch => summary.mismatched += 1,
            Status::Unchecked => summary.unchecked += 1,
            Status::Error => summary.errors += 1,
        }
        queries.push(rep);
    }
    Ok(Report {
        report_version: REPORT_VERSION,
        seed: s.seed,
        budget: s.budget,
        body: Body::Run { file: path.display().to_string(), queries, summary },
        timestamp: Timestamp { unix_seconds: now(), elapsed_ms: elapsed },
        input_error,
    })
}

pub fn run_suite(name: &str, s: &Settings) -> Result<Report, InputError> {
    let start = Instant::now();
    let report = ordspace::suites::run_suite(name, s.seed, s.budget)?;
    Ok(Report {
        report_version: REPORT_VERSION,
        seed: s.seed,
        budget: s.budget,
        body: Body::Suite { passed: report.passed(), report },
        timestamp: Timestamp { unix_seconds: now(), elapsed_ms: vec![start.elapsed().as_millis()] },
        input_error: false,
    })
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.input_error {
            return EXIT_INPUT;
        }
        let ok = match &self.body {
            Body::Run { summary, .. } => summary.mismatched == 0,
            Body::Suite { passed, .. } => *passed,
        };
        if ok {
            0
        } else {
            EXIT_MISMATCH
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        match &self.body {
            Body::Run { file, queries, summary } => {
                out += &format!("{file} (seed {}, budget {})\n", self.seed, self.budget);
                for q in queries {
                    let args: Vec<String> = q.args.iter().map(compact).collect();
                    let status = match q.status {
                        Status::Met => "ok",
                        Status::Mismatch => "MISMATCH",
                        Status::Unchecked => "-",
                        Status::Error => "ERROR",
                    };
                    out += &format!("[{}] {}({}) = {}", q.index, q.op, args.join(", "), compact(&q.value));
                    if let Some(e) = &q.expected {
                        out += &format!("  expected {}", compact(e));
                    }
                    out += &format!("  {status}\n");
                    if let Some(e) = &q.error {
                        out += &format!("    {e}\n");
                    }
                }
                out += &format!(
                    "{} queries: {} met, {} mismatched, {} unchecked, {} errors\n",
                    summary.total, summary.met, summary.mismatched, summary.unchecked, summary.errors
                );
            }
            Body::Suite { report, passed } => {
                out += &format!("suite {} (seed {})\n", report.suite, report.seed);
                for p in &report.properties {
                    let mark = if p.violations == 0 && p.instances > 0 { "pass" } else { "FAIL" };
                    out += &format!("  {mark} {} ({} instances, {} violations)\n", p.name, p.instances, p.violations);
                    if let Some(v) = &p.first_violation {
                        out += &format!("    first violation: {v}\n");
                    }
                }
                out += if *passed { "passed\n" } else { "FAILED\n" };
            }
        }
        out
    }
}

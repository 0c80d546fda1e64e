use std::io::{BufRead, Write};

use matchoid_kernel::{ElementId, Weight};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub k: Option<usize>,
    pub z: Option<usize>,
    pub ell: usize,
    pub eps: Option<f64>,
    pub seed: Option<u64>,
    pub color_mode: Option<String>,
    pub literal_match: Option<bool>,
    pub parallel: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub name: String,
    pub value: u64,
    pub limit: u64,
    pub ok: bool,
}

impl Bound {
    pub fn new(name: &str, value: u64, limit: u64) -> Self {
        Bound {
            name: name.into(),
            value,
            limit,
            ok: value <= limit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub record: String,
    pub mode: String,
    pub instance: String,
    pub params: Params,
    pub kernel: Vec<ElementId>,
    pub kernel_size: usize,
    pub solution: Option<Vec<ElementId>>,
    pub value: Option<Weight>,
    pub independence_queries: u64,
    pub value_queries: u64,
    pub repetitions: Option<u64>,
    pub bounds: Vec<Bound>,
}

impl RunReport {
    pub fn new(mode: &str, instance: &str, params: Params) -> Self {
        RunReport {
            record: "summary".into(),
            mode: mode.into(),
            instance: instance.into(),
            params,
            kernel: Vec::new(),
            kernel_size: 0,
            solution: None,
            value: None,
            independence_queries: 0,
            value_queries: 0,
            repetitions: None,
            bounds: Vec::new(),
        }
    }

    pub fn bounds_ok(&self) -> bool {
        self.bounds.iter().all(|b| b.ok)
    }
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    record: &'static str,
    #[serde(flatten)]
    data: &'a T,
}

/// Line-delimited report: one record per step, then the summary.
#[derive(Default)]
pub struct ReportWriter {
    lines: Vec<String>,
}

impl ReportWriter {
    pub fn step<T: Serialize>(&mut self, record: &'static str, data: &T) {
        self.lines
            .push(serde_json::to_string(&Tagged { record, data }).expect("records serialize"));
    }

    pub fn finish(mut self, summary: &RunReport, mut out: impl Write) -> std::io::Result<()> {
        self.lines
            .push(serde_json::to_string(summary).expect("summary serializes"));
        for line in &self.lines {
            writeln!(out, "{line}")?;
        }
        out.flush()
    }
}

pub fn read_summary(reader: impl BufRead) -> Result<RunReport, String> {
    let mut summary = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| format!("report line {}: {e}", i + 1))?;
        if value.get("record").and_then(|r| r.as_str()) == Some("summary") {
            summary = Some(
                serde_json::from_value(value).map_err(|e| format!("report line {}: {e}", i + 1))?,
            );
        }
    }
    summary.ok_or_else(|| "report has no summary record".to_string())
}

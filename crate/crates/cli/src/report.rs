//! Verification reports: the JSON form is the stable machine interface and
//! is byte-identical for identical arguments and seed; wall-clock timings
//! are only attached when explicitly requested. The text form is for people.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub task: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub items: Vec<Item>,
    pub overall_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub key: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Item {
    pub fn new(key: impl Into<String>, pass: bool) -> Item {
        Item {
            key: key.into(),
            pass,
            verdict: None,
            method: None,
            trials: None,
            detail: None,
            elapsed_ms: None,
        }
    }

    pub fn with_certificate(mut self, cert: &swapping_algebra::ZeroCertificate) -> Item {
        self.verdict = Some(cert.verdict.to_string());
        self.method = Some(cert.method().to_string());
        if cert.trials() > 0 {
            self.trials = Some(cert.trials());
        }
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Item {
        self.detail = Some(detail.into());
        self
    }
}

impl Report {
    pub fn new(task: impl Into<String>) -> Report {
        Report {
            task: task.into(),
            params: BTreeMap::new(),
            items: Vec::new(),
            overall_pass: true,
            elapsed_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, item: Item) {
        self.overall_pass &= item.pass;
        self.items.push(item);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "task: {}", self.task);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for item in &self.items {
            let mark = if item.pass { "PASS" } else { "FAIL" };
            let mut line = format!("{mark} {}", item.key);
            if let Some(v) = &item.verdict {
                let _ = write!(line, " [{v}");
                if let Some(m) = &item.method {
                    let _ = write!(line, ", {m}");
                }
                if let Some(t) = item.trials {
                    let _ = write!(line, ", {t} trials");
                }
                let _ = write!(line, "]");
            }
            if let Some(d) = &item.detail {
                let _ = write!(line, " {d}");
            }
            if let Some(ms) = item.elapsed_ms {
                let _ = write!(line, " ({ms} ms)");
            }
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.overall_pass { "PASS" } else { "FAIL" }
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }
}

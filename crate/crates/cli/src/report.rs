use std::fmt;
use std::path::PathBuf;

use fpp_core::report::Assertion;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Bad arguments or unreadable input; exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.to_string())
    }
}

/// Side output of a subcommand: a DOT graph, a complex, or similar.
pub struct Export {
    pub content: String,
    pub path: Option<PathBuf>,
}

/// What a subcommand hands back before timing and rendering.
pub struct Outcome {
    pub assertions: Vec<Assertion>,
    pub result: Value,
    pub export: Option<Export>,
}

impl Outcome {
    pub fn new(assertions: Vec<Assertion>, result: Value) -> Outcome {
        Outcome { assertions, result, export: None }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub tool: String,
    pub command: String,
    pub pass: bool,
    pub assertions: Vec<Assertion>,
    pub result: Value,
    /// Milliseconds; `null` under `--no-timing`.
    pub wall_time: Option<f64>,
}

impl RunReport {
    pub fn render_text(&self) -> String {
        let mut s = format!("fpp {}\n", self.command);
        for a in &self.assertions {
            s.push_str(&format!("{a}\n"));
        }
        if !self.result.is_null() {
            s.push_str(&serde_json::to_string_pretty(&self.result).expect("values serialize"));
            s.push('\n');
        }
        let passed = self.assertions.iter().filter(|a| a.pass).count();
        s.push_str(&format!("{passed}/{} assertions passed\n", self.assertions.len()));
        if let Some(ms) = self.wall_time {
            s.push_str(&format!("wall time {ms:.1} ms\n"));
        }
        s
    }
}

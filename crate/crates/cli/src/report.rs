use std::io::Read;
use std::time::Instant;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "chromix.report/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Payload of a finished command: structured result, human text, exit code.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub exit: u8,
}

impl Outcome {
    pub fn new(result: Value, text: impl Into<String>, exit: u8) -> Self {
        Outcome {
            result,
            text: text.into(),
            exit,
        }
    }
}

/// Inputs read so far, with digests for the report.
#[derive(Default)]
pub struct Inputs {
    seen: Vec<Value>,
}

impl Inputs {
    /// Reads a file, or standard input for `-`.
    pub fn read(&mut self, path: &str) -> Result<String> {
        let mut bytes = Vec::new();
        if path == "-" {
            std::io::stdin()
                .read_to_end(&mut bytes)
                .context("reading standard input")?;
        } else {
            bytes = std::fs::read(path).with_context(|| format!("reading {path}"))?;
        }
        self.seen.push(json!({
            "path": path,
            "sha256": hex::encode(Sha256::digest(&bytes)),
            "bytes": bytes.len(),
        }));
        String::from_utf8(bytes).with_context(|| format!("{path} is not UTF-8"))
    }
}

pub struct Report {
    pub command: Vec<String>,
    pub inputs: Inputs,
    pub started: Instant,
}

impl Report {
    pub fn render(self, outcome: &Outcome) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs.seen,
            "result": outcome.result,
            "elapsed_ms": self.started.elapsed().as_secs_f64() * 1e3,
            "exit_code": outcome.exit,
        })
    }
}

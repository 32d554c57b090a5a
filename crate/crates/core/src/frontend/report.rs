use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::propositions::Proposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    /// One `key: value` line per fact; identical inputs give identical bytes.
    Machine,
}

pub fn digest_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    /// Path and sha256 of the model text, when a model was read.
    pub model: Option<(String, String)>,
    pub seed: u64,
    pub samples: usize,
    pub values: Vec<(String, String)>,
    pub propositions: Vec<Proposition>,
}

impl Report {
    pub fn new(command: &str, seed: u64, samples: usize) -> Self {
        Report {
            command: command.to_owned(),
            model: None,
            seed,
            samples,
            values: Vec::new(),
            propositions: Vec::new(),
        }
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl ToString) {
        self.values.push((key.into(), value.to_string()));
    }

    pub fn counts(&self) -> (usize, usize) {
        let all = self.propositions.iter().flat_map(|p| &p.reports);
        let failed = all.clone().filter(|r| !r.passed()).count();
        (all.count() - failed, failed)
    }

    pub fn passed(&self) -> bool {
        self.counts().1 == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Machine => self.machine(),
        }
    }

    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "conheap {}", self.command);
        if let Some((path, hash)) = &self.model {
            let _ = writeln!(out, "model: {path}");
            let _ = writeln!(out, "sha256: {hash}");
        }
        let _ = writeln!(out, "seed: {}  samples: {}", self.seed, self.samples);
        if !self.values.is_empty() {
            out.push_str("\nvalues\n");
            for (k, v) in &self.values {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        for p in &self.propositions {
            let _ = writeln!(out, "\n{}", p.title);
            for r in &p.reports {
                match r.witness() {
                    None => {
                        let _ = writeln!(out, "  [pass] {}", r.law());
                    }
                    Some(w) => {
                        let _ = writeln!(out, "  [FAIL] {}", r.law());
                        if !w.tuple.is_empty() {
                            let _ = writeln!(out, "         witness: ({})", w.tuple.join(", "));
                        }
                        let _ = writeln!(out, "         {}", w.detail);
                    }
                }
            }
            for n in &p.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        let (passed, failed) = self.counts();
        let _ = writeln!(out, "\nsummary: {passed} passed, {failed} failed");
        out
    }

    fn machine(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some((path, hash)) = &self.model {
            let _ = writeln!(out, "model: {path}");
            let _ = writeln!(out, "sha256: {hash}");
        }
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "samples: {}", self.samples);
        for (k, v) in &self.values {
            let _ = writeln!(out, "value.{k}: {v}");
        }
        for p in &self.propositions {
            let title = key(&p.title);
            for r in &p.reports {
                match r.witness() {
                    None => {
                        let _ = writeln!(out, "law.{title}.{}: pass", key(r.law()));
                    }
                    Some(w) => {
                        let _ = writeln!(
                            out,
                            "law.{title}.{}: fail witness=({}) detail={}",
                            key(r.law()),
                            w.tuple.join(", "),
                            w.detail
                        );
                    }
                }
            }
            for (i, n) in p.notes.iter().enumerate() {
                let _ = writeln!(out, "note.{title}.{i}: {n}");
            }
        }
        let (passed, failed) = self.counts();
        let _ = writeln!(out, "summary.passed: {passed}");
        let _ = writeln!(out, "summary.failed: {failed}");
        out
    }
}

/// Keys use `_` for anything outside `[A-Za-z0-9-]`.
fn key(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

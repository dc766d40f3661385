//! Tables, the metadata header and the two output formats.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Caps shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub radius: u32,
    pub steps: usize,
    pub samples: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            radius: 6,
            steps: 100_000,
            samples: 10_000,
        }
    }
}

/// Everything that determines a run's output. Output paths are left out so
/// that the same experiment written to two places gives the same bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub subcommand: String,
    pub seed: u64,
    pub caps: Caps,
    /// Arguments, plus a content digest for each input file.
    pub params: BTreeMap<String, String>,
}

impl ExperimentConfig {
    pub fn new(subcommand: &str, seed: u64, caps: Caps) -> Self {
        ExperimentConfig {
            subcommand: subcommand.to_string(),
            seed,
            caps,
            params: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// Records an input file by the digest of its contents.
    pub fn input(&mut self, key: &str, contents: &str) {
        self.set(&format!("{key}_sha256"), sha256_hex(contents.as_bytes()));
    }

    pub fn digest(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("config serialises").as_bytes())
    }

    pub fn header(&self) -> String {
        format!(
            "# curvegraph {} seed={} config={}",
            env!("CARGO_PKG_VERSION"),
            self.seed,
            self.digest()
        )
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A rectangular result with free-form notes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// `key=value` or plain sentences, printed as comment lines.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            ..Table::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn render(&self, config: &ExperimentConfig, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(config),
            Format::Json => self.to_json(config),
        }
    }

    fn to_csv(&self, config: &ExperimentConfig) -> String {
        let mut out = config.header();
        out.push('\n');
        for n in &self.notes {
            out.push_str("# ");
            out.push_str(n);
            out.push('\n');
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields"));
        out
    }

    fn to_json(&self, config: &ExperimentConfig) -> String {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| {
                self.columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                    .collect()
            })
            .collect();
        let doc = serde_json::json!({
            "meta": {
                "tool": "curvegraph",
                "version": env!("CARGO_PKG_VERSION"),
                "seed": config.seed,
                "config": config.digest(),
            },
            "columns": self.columns,
            "rows": rows,
            "notes": self.notes,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json serialises");
        s.push('\n');
        s
    }
}

/// Writes to the file, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_starts_with_header() {
        let cfg = ExperimentConfig::new("walk", 7, Caps::default());
        let mut t = Table::new(&["a", "b"]);
        t.note("k=1");
        t.push(vec!["x,y".into(), "2".into()]);
        let s = t.render(&cfg, Format::Csv);
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# curvegraph "));
        assert!(lines[0].contains(" seed=7 config="));
        assert_eq!(lines[1], "# k=1");
        assert_eq!(lines[2], "a,b");
        assert_eq!(lines[3], "\"x,y\",2");
    }

    #[test]
    fn digest_tracks_params() {
        let mut a = ExperimentConfig::new("walk", 7, Caps::default());
        let b = a.clone();
        assert_eq!(a.digest(), b.digest());
        a.set("length", 3);
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
    }
}

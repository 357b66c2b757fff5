//! Reports, fixture comparison and rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::commands::Section;
use crate::io::{Fixture, FixtureDiff};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub case_id: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub passed: bool,
    pub certificate: Value,
    pub table: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub records: Vec<CaseRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# drbcheck {} `{}`\n\n", self.version, self.command);
        let timed = self.records.iter().any(|r| r.runtime_ms.is_some());
        s.push_str("| case | verdict | expected | status | table |");
        s.push_str(if timed { " ms |\n" } else { "\n" });
        s.push_str("|---|---|---|---|---|");
        s.push_str(if timed { "---|\n" } else { "\n" });
        for r in &self.records {
            let _ = write!(
                s,
                "| {} | {} | {} | {} | {} |",
                r.case_id,
                r.verdict,
                r.expected.as_deref().unwrap_or("-"),
                if r.passed { "pass" } else { "FAIL" },
                r.table
            );
            match r.runtime_ms {
                Some(ms) => {
                    let _ = writeln!(s, " {ms} |");
                }
                None => s.push('\n'),
            }
        }
        let _ = writeln!(s, "\npassed: {}, failed: {}", self.summary.passed, self.summary.failed);
        s
    }
}

/// How sections meet their fixtures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureMode {
    /// Compare verdicts with the files under the directory.
    Compare(PathBuf),
    /// Rewrite the files under the directory.
    Bless(PathBuf),
    Skip,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("fixture {path}: {msg}")]
    Read { path: PathBuf, msg: String },
    #[error("writing {path}: {msg}")]
    Write { path: PathBuf, msg: String },
}

fn read_fixture(path: &Path) -> Result<Option<Fixture>, FixtureError> {
    match fs::read_to_string(path) {
        Ok(text) => Fixture::parse(&text)
            .map(Some)
            .map_err(|e| FixtureError::Read { path: path.to_path_buf(), msg: e.to_string() }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(FixtureError::Read { path: path.to_path_buf(), msg: e.to_string() }),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), FixtureError> {
    let err = |e: std::io::Error| FixtureError::Write { path: path.to_path_buf(), msg: e.to_string() };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(err)?;
    }
    fs::write(path, text).map_err(err)
}

/// Result of assembling a report: the report and, when blessing, the diff summary.
#[derive(Debug, Clone)]
pub struct Assembled {
    pub report: Report,
    pub notes: Vec<String>,
}

/// Compares (or blesses) each section and assembles the ordered report.
pub fn assemble(command: &str, sections: Vec<Section>, mode: &FixtureMode, timings: bool) -> Result<Assembled, FixtureError> {
    let mut records = Vec::new();
    let mut notes = Vec::new();
    for section in sections {
        let file = format!("{}.tsv", section.name);
        let current = Fixture {
            entries: section.records.iter().map(|r| (r.case_id.clone(), r.verdict.clone())).collect(),
        };
        let fixture = match mode {
            FixtureMode::Compare(dir) => {
                let f = read_fixture(&dir.join(&file))?;
                if f.is_none() {
                    notes.push(format!("{file}: no fixture file, verdicts not compared"));
                }
                f
            }
            FixtureMode::Bless(dir) => {
                let path = dir.join(&file);
                let old = read_fixture(&path)?.unwrap_or_default();
                // a run with parameter overrides only adds or updates entries
                let mut new = current.clone();
                if !section.complete {
                    for (k, v) in &old.entries {
                        new.entries.entry(k.clone()).or_insert_with(|| v.clone());
                    }
                }
                let diff: FixtureDiff = old.diff(&new);
                if !diff.is_empty() {
                    write_file(&path, &new.render(section.name))?;
                }
                notes.push(diff.summary(&file).trim_end().to_string());
                for r in &section.records {
                    for (rel, text) in &r.artifacts {
                        let p = dir.join(rel);
                        let before = fs::read_to_string(&p).ok();
                        if before.as_deref() != Some(text.as_str()) {
                            write_file(&p, text)?;
                            notes.push(format!("{rel}: rewritten"));
                        }
                    }
                }
                Some(new)
            }
            FixtureMode::Skip => None,
        };
        if let (Some(f), FixtureMode::Compare(_), true) = (&fixture, mode, section.complete) {
            for (id, v) in &f.entries {
                if !current.entries.contains_key(id) {
                    records.push(CaseRecord {
                        case_id: id.clone(),
                        verdict: "MISSING".to_string(),
                        expected: Some(v.clone()),
                        passed: false,
                        certificate: Value::Null,
                        table: String::new(),
                        runtime_ms: None,
                    });
                }
            }
        }
        for r in section.records {
            let expected = fixture.as_ref().and_then(|f| f.entries.get(&r.case_id).cloned());
            let artifacts_ok = match mode {
                FixtureMode::Compare(dir) => r
                    .artifacts
                    .iter()
                    .all(|(rel, text)| fs::read_to_string(dir.join(rel)).map_or(true, |t| t == *text)),
                _ => true,
            };
            let passed = r.checked && artifacts_ok && expected.as_ref().map_or(true, |e| *e == r.verdict);
            records.push(CaseRecord {
                case_id: r.case_id,
                verdict: r.verdict,
                expected,
                passed,
                certificate: r.certificate,
                table: r.table,
                runtime_ms: timings.then_some(r.runtime_ms),
            });
        }
    }
    let failed = records.iter().filter(|r| !r.passed).count();
    let summary = Summary { passed: records.len() - failed, failed };
    Ok(Assembled { report: Report { version: VERSION.to_string(), command: command.to_string(), records, summary }, notes })
}

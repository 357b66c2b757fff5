//! Text formats: integer matrices, verdict fixtures and parameter values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use drbcheck_core::arith::Rational;
use drbcheck_core::positivity::{gaussian, gaussian_field};
use drbcheck_core::FieldElement;
use num_bigint::BigInt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("bad number {0:?}")]
    Number(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Parses the matrix format: a header line `rows cols`, then one line of
/// space-separated integers per row.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<BigInt>>, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| syntax(hl + 1, format!("bad dimension {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        return Err(syntax(hl + 1, "header must be `rows cols`"));
    };
    let mut out = Vec::with_capacity(rows);
    for (ln, line) in lines {
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| FormatError::Number(t.to_string())))
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(syntax(ln + 1, format!("expected {cols} entries, found {}", row.len())));
        }
        out.push(row);
    }
    if out.len() != rows {
        return Err(FormatError::RowCount { expected: rows, found: out.len() });
    }
    Ok(out)
}

pub fn format_matrix(rows: &[Vec<BigInt>], cols: usize) -> String {
    let mut s = format!("{} {}\n", rows.len(), cols);
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

/// Expected verdicts keyed by case id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fixture {
    pub entries: BTreeMap<String, String>,
}

/// Changes between two fixtures.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixtureDiff {
    pub added: Vec<(String, String)>,
    pub removed: Vec<(String, String)>,
    pub changed: Vec<(String, String, String)>,
}

impl FixtureDiff {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty() && self.changed.is_empty()
    }

    pub fn summary(&self, name: &str) -> String {
        let mut s = format!(
            "{name}: {} added, {} removed, {} changed\n",
            self.added.len(),
            self.removed.len(),
            self.changed.len()
        );
        for (k, v) in &self.added {
            let _ = writeln!(s, "  + {k}\t{v}");
        }
        for (k, v) in &self.removed {
            let _ = writeln!(s, "  - {k}\t{v}");
        }
        for (k, old, new) in &self.changed {
            let _ = writeln!(s, "  ~ {k}\t{old} -> {new}");
        }
        s
    }
}

impl Fixture {
    /// Tab-separated `case_id verdict` lines; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Fixture, FormatError> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, verdict) = line.split_once('\t').ok_or_else(|| syntax(i + 1, "expected `case_id<TAB>verdict`"))?;
            if entries.insert(id.to_string(), verdict.to_string()).is_some() {
                return Err(syntax(i + 1, format!("duplicate case id {id}")));
            }
        }
        Ok(Fixture { entries })
    }

    pub fn render(&self, name: &str) -> String {
        let mut s = format!("# drbcheck fixture v1: {name}\n");
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k}\t{v}");
        }
        s
    }

    pub fn diff(&self, new: &Fixture) -> FixtureDiff {
        let mut d = FixtureDiff::default();
        for (k, v) in &new.entries {
            match self.entries.get(k) {
                None => d.added.push((k.clone(), v.clone())),
                Some(old) if old != v => d.changed.push((k.clone(), old.clone(), v.clone())),
                _ => {}
            }
        }
        for (k, v) in &self.entries {
            if !new.entries.contains_key(k) {
                d.removed.push((k.clone(), v.clone()));
            }
        }
        d
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse::<Rational>().map_err(|_| FormatError::Number(s.to_string()))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with rational `a`, `b` into Q(√−1).
pub fn parse_gaussian(s: &str) -> Result<FieldElement, FormatError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(FormatError::Number(s.to_string()));
    }
    let (re, im) = match t.strip_suffix('i') {
        None => (parse_rational(&t)?, Rational::from_integer(0.into())),
        Some(body) => {
            // split at the last sign that is not leading
            let cut = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
            let (re, im) = match cut {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                other => other,
            };
            (parse_rational(re)?, parse_rational(im)?)
        }
    };
    Ok(gaussian(&gaussian_field(), re, im))
}

/// Comma-separated Gaussian rationals.
pub fn parse_gaussian_vector(s: &str) -> Result<Vec<FieldElement>, FormatError> {
    s.split(',').map(parse_gaussian).collect()
}

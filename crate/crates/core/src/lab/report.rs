//! Reports in two renderings.
//!
//! The structured rendering is line oriented. The first line is
//! `sqfree-report 1`; every further line is `key=value` with keys in
//! insertion order:
//!
//! ```text
//! meta.command=submonoid
//! meta.spec=family = submonoid_nn { rank = 3, gens = [(1, 1, 0), (1, 0, 1)] }
//! check.1.4.kind=Refuted
//! check.1.4.witness.len=2
//! check.1.4.witness[0]=(1,0,0)
//! check.1.4.witness[1]=(0,1,1)
//! check.1.4.basis=exact
//! failures.len=0
//! ```
//!
//! Verdicts expand to `kind`, `witness.len`, `witness[i]` and, when
//! present, `exponent`, `bound`, `basis` and `note`. Lists expand to
//! `len` and `[i]`. Newlines and backslashes in values are escaped as
//! `\n` and `\\`. Timing appears in the text rendering only, so the
//! structured output is byte-identical across runs.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::kernel::Verdict;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json-like-structured" => Ok(Format::Structured),
            _ => Err(Error::Invalid(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Entry {
    Heading(String),
    Value(String, String),
    Verdict(String, Verdict),
    List(String, Vec<String>),
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    meta: Vec<(String, String)>,
    entries: Vec<Entry>,
    section: String,
    pub failures: Vec<String>,
    pub elapsed: Option<Duration>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\n', "\\n")
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    /// Start a section; later keys are prefixed with its name.
    pub fn section(&mut self, name: &str) -> &mut Self {
        self.section = name.to_string();
        self.entries.push(Entry::Heading(name.to_string()));
        self
    }

    fn key(&self, key: &str) -> String {
        if self.section.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.section)
        }
    }

    pub fn value(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let k = self.key(key);
        self.entries.push(Entry::Value(k, value.to_string()));
        self
    }

    pub fn verdict(&mut self, key: &str, v: &Verdict) -> &mut Self {
        let k = self.key(key);
        self.entries.push(Entry::Verdict(k, v.clone()));
        self
    }

    pub fn list<T: ToString>(
        &mut self,
        key: &str,
        items: impl IntoIterator<Item = T>,
    ) -> &mut Self {
        let k = self.key(key);
        self.entries.push(Entry::List(
            k,
            items.into_iter().map(|x| x.to_string()).collect(),
        ));
        self
    }

    /// Record a failed expectation.
    pub fn fail(&mut self, msg: impl Into<String>) -> &mut Self {
        self.failures.push(msg.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// All verdicts in insertion order.
    pub fn verdicts(&self) -> Vec<(&str, &Verdict)> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::Verdict(k, v) => Some((k.as_str(), v)),
                _ => None,
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Structured => self.structured(),
        }
    }

    fn structured(&self) -> String {
        let mut out = String::from("sqfree-report 1\n");
        let mut line = |k: &str, v: &str| {
            let _ = writeln!(out, "{k}={}", escape(v));
        };
        line("meta.command", &self.command);
        for (k, v) in &self.meta {
            line(&format!("meta.{k}"), v);
        }
        for e in &self.entries {
            match e {
                Entry::Heading(_) => {}
                Entry::Value(k, v) => line(k, v),
                Entry::List(k, items) => {
                    line(&format!("{k}.len"), &items.len().to_string());
                    for (i, x) in items.iter().enumerate() {
                        line(&format!("{k}[{i}]"), x);
                    }
                }
                Entry::Verdict(k, v) => {
                    line(&format!("{k}.kind"), &v.kind.to_string());
                    line(&format!("{k}.witness.len"), &v.witness.len().to_string());
                    for (i, w) in v.witness.iter().enumerate() {
                        line(&format!("{k}.witness[{i}]"), &w.to_string());
                    }
                    if let Some(n) = v.exponent {
                        line(&format!("{k}.exponent"), &n.to_string());
                    }
                    if let Some(b) = v.bound {
                        line(&format!("{k}.bound"), &b.to_string());
                    }
                    line(&format!("{k}.basis"), &v.basis.to_string());
                    if let Some(n) = &v.note {
                        line(&format!("{k}.note"), n);
                    }
                }
            }
        }
        line("failures.len", &self.failures.len().to_string());
        for (i, f) in self.failures.iter().enumerate() {
            line(&format!("failures[{i}]"), f);
        }
        out
    }

    fn text(&self) -> String {
        let mut out = format!("sqfree {}\n", self.command);
        for (k, v) in &self.meta {
            let _ = writeln!(out, "  {k}: {v}");
        }
        let mut current = String::new();
        for e in &self.entries {
            let strip = |k: &str| -> String {
                k.strip_prefix(&format!("{current}."))
                    .unwrap_or(k)
                    .to_string()
            };
            match e {
                Entry::Heading(h) => {
                    current = h.clone();
                    let _ = writeln!(out, "\n[{h}]");
                }
                Entry::Value(k, v) => {
                    let _ = writeln!(out, "  {:<24} {v}", strip(k));
                }
                Entry::List(k, items) => {
                    let _ = writeln!(out, "  {:<24} {{{}}}", strip(k), items.join(", "));
                }
                Entry::Verdict(k, v) => {
                    let _ = writeln!(out, "  {:<24} {v}", strip(k));
                }
            }
        }
        if self.failures.is_empty() {
            out.push_str("\nfailures: none\n");
        } else {
            let _ = writeln!(out, "\nfailures: {}", self.failures.len());
            for f in &self.failures {
                let _ = writeln!(out, "  FAIL {f}");
            }
        }
        if let Some(t) = self.elapsed {
            let _ = writeln!(out, "elapsed: {:.3}s", t.as_secs_f64());
        }
        out
    }

    pub fn write_to(&self, path: &Path, format: Format) -> Result<()> {
        std::fs::write(path, self.render(format))
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
    }
}

/// Parse a structured rendering back into `(key, value)` pairs.
pub fn parse_structured(text: &str) -> Result<Vec<(String, String)>> {
    let mut lines = text.lines();
    if lines.next() != Some("sqfree-report 1") {
        return Err(Error::parse(0, "missing `sqfree-report 1` header"));
    }
    lines
        .enumerate()
        .map(|(i, l)| {
            let (k, v) = l
                .split_once('=')
                .ok_or_else(|| Error::parse(i + 1, format!("expected key=value, got `{l}`")))?;
            let mut out = String::new();
            let mut chars = v.chars();
            while let Some(c) = chars.next() {
                if c == '\\' {
                    match chars.next() {
                        Some('n') => out.push('\n'),
                        Some(o) => out.push(o),
                        None => out.push('\\'),
                    }
                } else {
                    out.push(c);
                }
            }
            Ok((k.to_string(), out))
        })
        .collect()
}

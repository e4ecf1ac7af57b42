//! Structured verification evidence and its `key=value` trailer form.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Skipped,
    Fail,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Skipped => "skipped",
            Outcome::Fail => "fail",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(Outcome::Pass),
            "skipped" => Some(Outcome::Skipped),
            "fail" => Some(Outcome::Fail),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named check with an optional witness or note.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Outcome::Pass, None)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Outcome::Fail, Some(witness.into()))
    }

    pub fn skipped(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self::new(name, Outcome::Skipped, Some(note.into()))
    }

    /// Pass if `ok`, otherwise fail with the lazily built witness.
    pub fn from_result(name: impl Into<String>, result: std::result::Result<(), String>) -> Self {
        match result {
            Ok(()) => Self::pass(name),
            Err(w) => Self::fail(name, w),
        }
    }

    pub fn new(name: impl Into<String>, outcome: Outcome, witness: Option<String>) -> Self {
        Self {
            name: sanitize_key(&name.into()),
            outcome,
            witness: witness.map(|w| single_line(&w)),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Parameters and checks of one construction run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionReport {
    pub id: String,
    pub params: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl ConstructionReport {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: sanitize_key(&id.into()),
            ..Self::default()
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.params
            .push((sanitize_key(&key.into()), single_line(&value.to_string())));
        self
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) -> &mut Self {
        self.checks.extend(checks);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn param_value(&self, key: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// `Fail` if any check failed, else `Skipped` if any was skipped.
    pub fn worst(&self) -> Outcome {
        self.checks
            .iter()
            .map(|c| c.outcome)
            .max()
            .unwrap_or(Outcome::Pass)
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.checks.iter().filter(|c| c.outcome == outcome).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Outcome::Fail) == 0
    }

    /// Failed checks only.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    /// The `key=value` lines of the machine-readable trailer, without the
    /// `---` separator.
    pub fn trailer(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("id={}\n", self.id));
        for (k, v) in &self.params {
            out.push_str(&format!("param.{k}={v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("check.{}={}\n", c.name, c.outcome));
            if let Some(w) = &c.witness {
                out.push_str(&format!("witness.{}={}\n", c.name, w));
            }
        }
        out.push_str(&format!(
            "totals=pass:{} fail:{} skipped:{}\n",
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Skipped)
        ));
        out.push_str(&format!("status={}\n", self.worst()));
        out
    }

    /// Parses the output of [`ConstructionReport::trailer`].
    pub fn from_trailer(text: &str) -> Result<Self> {
        let mut report = Self::default();
        let mut seen_id = false;
        for line in text.lines().filter(|l| !l.trim().is_empty() && *l != "---") {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("trailer line without '=': {line}")))?;
            if key == "id" {
                report.id = value.to_string();
                seen_id = true;
            } else if let Some(k) = key.strip_prefix("param.") {
                report.params.push((k.to_string(), value.to_string()));
            } else if let Some(name) = key.strip_prefix("check.") {
                let outcome = Outcome::parse(value)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown outcome {value}")))?;
                report.checks.push(Check {
                    name: name.to_string(),
                    outcome,
                    witness: None,
                });
            } else if let Some(name) = key.strip_prefix("witness.") {
                let check = report
                    .checks
                    .iter_mut()
                    .rev()
                    .find(|c| c.name == name)
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("witness for unknown check {name}"))
                    })?;
                check.witness = Some(value.to_string());
            } else if key != "totals" && key != "status" {
                return Err(Error::InvalidInput(format!("unknown trailer key {key}")));
            }
        }
        if !seen_id {
            return Err(Error::InvalidInput("trailer has no id".into()));
        }
        Ok(report)
    }
}

impl fmt::Display for ConstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.id)?;
        for (k, v) in &self.params {
            writeln!(f, "  {k:<12} {v}")?;
        }
        for c in &self.checks {
            write!(f, "  [{:<7}] {}", c.outcome.as_str(), c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn sanitize_key(s: &str) -> String {
    let out: String = s
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect();
    if out.is_empty() {
        "_".into()
    } else {
        out
    }
}

fn single_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    /// The hypotheses of an implication do not hold.
    Vacuous,
    Skipped(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("PASS"),
            Status::Fail => f.write_str("FAIL"),
            Status::Vacuous => f.write_str("VACUOUS"),
            Status::Skipped(why) => write!(f, "SKIPPED({why})"),
        }
    }
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
    pub millis: u64,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        CheckLine {
            name: name.into(),
            status,
            witness,
            millis: 0,
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {}: {}", self.name, self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness: {w})")?;
        }
        Ok(())
    }
}

/// A boolean with an optional element-level explanation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Fact {
    pub fn yes() -> Self {
        Fact {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: impl Into<String>) -> Self {
        Fact {
            holds: false,
            witness: Some(witness.into()),
        }
    }

    pub fn new(holds: bool, witness: Option<String>) -> Self {
        Fact { holds, witness }
    }

    /// `holds` unless `failure` names a counterexample.
    pub fn from_failure(failure: Option<String>) -> Self {
        match failure {
            None => Fact::yes(),
            Some(w) => Fact::no(w),
        }
    }
}

/// Ordered list of check results.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemVerdict {
    pub lines: Vec<CheckLine>,
}

impl SystemVerdict {
    pub fn new() -> Self {
        SystemVerdict::default()
    }

    pub fn push(&mut self, line: CheckLine) {
        self.lines.push(line);
    }

    /// PASS if `ok`, FAIL otherwise.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: Option<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(CheckLine::new(name, status, witness));
    }

    /// VACUOUS unless `hyp`; then PASS iff `concl`.
    pub fn implication(
        &mut self,
        name: impl Into<String>,
        hyp: bool,
        concl: bool,
        witness: Option<String>,
    ) {
        let status = match (hyp, concl) {
            (false, _) => Status::Vacuous,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        };
        self.push(CheckLine::new(name, status, witness));
    }

    /// PASS iff both sides agree.
    pub fn equivalence(&mut self, name: impl Into<String>, lhs: bool, rhs: bool, witness: Option<String>) {
        let name = name.into();
        let detail = format!("lhs={lhs} rhs={rhs}");
        let witness = Some(match witness {
            Some(w) => format!("{detail}; {w}"),
            None => detail,
        });
        self.check(name, lhs == rhs, witness);
    }

    pub fn skipped(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.push(CheckLine::new(name, Status::Skipped(why.into()), None));
    }

    /// Runs `f`, recording its wall time on every line it adds.
    pub fn timed(&mut self, f: impl FnOnce(&mut SystemVerdict)) {
        let start = self.lines.len();
        let t = Instant::now();
        f(self);
        let ms = t.elapsed().as_millis() as u64;
        for l in &mut self.lines[start..] {
            l.millis = ms;
        }
    }

    pub fn extend(&mut self, other: SystemVerdict) {
        self.lines.extend(other.lines);
    }

    /// Appends `other` with `prefix/` prepended to every name.
    pub fn extend_prefixed(&mut self, prefix: &str, other: SystemVerdict) {
        for mut l in other.lines {
            l.name = format!("{prefix}/{}", l.name);
            self.lines.push(l);
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }

    pub fn status(&self, name: &str) -> Option<&Status> {
        self.get(name).map(|l| &l.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.is_fail())
    }

    pub fn has_failure(&self) -> bool {
        self.failures().next().is_some()
    }
}

impl fmt::Display for SystemVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

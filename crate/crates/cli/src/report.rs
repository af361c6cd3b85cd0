use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::golden::{golden, Expect};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub status: Status,
    pub claim: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, u128>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
    #[serde(skip)]
    record_timings: bool,
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.3e}")
}

impl Report {
    /// `inputs` are hashed in order; pass the arguments and any file contents.
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        let mut h = Sha256::new();
        for i in inputs {
            h.update((i.len() as u64).to_le_bytes());
            h.update(i);
        }
        let digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Report {
            command: command.into(),
            inputs_digest: digest,
            checks: Vec::new(),
            timings_ms: BTreeMap::new(),
            data: serde_json::Value::Null,
            record_timings: false,
        }
    }

    /// Wall-clock timings make the output nondeterministic, so they are opt-in.
    pub fn with_timings(mut self, on: bool) -> Self {
        self.record_timings = on;
        self
    }

    pub fn time<T>(&mut self, label: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let t = Instant::now();
        let out = f(self);
        if self.record_timings {
            self.timings_ms.insert(label.into(), t.elapsed().as_millis());
        }
        out
    }

    fn push(&mut self, key: &str, expected: String, found: String, ok: bool) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: key.into(), expected, found, status, claim: golden(key).claim.into() });
        ok
    }

    /// Compares `found` with the golden value for `key`.
    pub fn check(&mut self, key: &str, found: impl Display) -> bool {
        let found = found.to_string();
        match golden(key).expect {
            Expect::Equals(e) => self.push(key, e.into(), found.clone(), found == e),
            _ => panic!("{key} is a tolerance check"),
        }
    }

    /// Compares a measured value with the golden tolerance for `key`.
    pub fn measure(&mut self, key: &str, value: f64) -> bool {
        match golden(key).expect {
            Expect::Below(t) => self.push(key, format!("< {}", fmt_f64(t)), fmt_f64(value), value < t),
            Expect::Above(t) => self.push(key, format!("> {}", fmt_f64(t)), fmt_f64(value), value > t),
            Expect::Equals(_) => panic!("{key} is an equality check"),
        }
    }

    pub fn info(&mut self, name: &str, found: impl Display) {
        self.checks.push(Check {
            name: name.into(),
            expected: String::new(),
            found: found.to_string(),
            status: Status::Info,
            claim: String::new(),
        });
    }

    /// Records a suite that could not run as a failed check.
    pub fn error(&mut self, name: &str, err: impl Display) {
        self.checks.push(Check {
            name: name.into(),
            expected: "completes".into(),
            found: format!("error: {err}"),
            status: Status::Fail,
            claim: "the computation runs to completion".into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}  [{}]\n", self.command, &self.inputs_digest[..12]);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            if c.status == Status::Info {
                s.push_str(&format!("{tag} {}: {}\n", c.name, c.found));
            } else {
                s.push_str(&format!("{tag} {}: expected {}, found {}\n", c.name, c.expected, c.found));
            }
        }
        for (k, v) in &self.timings_ms {
            s.push_str(&format!("time {k}: {v} ms\n"));
        }
        if !self.data.is_null() {
            s.push_str(&serde_json::to_string_pretty(&self.data).expect("data serializes"));
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_set_the_exit_code() {
        let mut r = Report::new("t", &[b"x"]);
        assert!(r.check("klein.t4", 21));
        assert_eq!(r.exit_code(), 0);
        assert!(!r.check("klein.t3", 27));
        assert_eq!(r.exit_code(), 1);
        let fail = &r.checks[1];
        assert_eq!((fail.expected.as_str(), fail.found.as_str()), ("28", "27"));
    }

    #[test]
    fn digest_depends_on_inputs() {
        let a = Report::new("t", &[b"ab", b"c"]);
        let b = Report::new("t", &[b"a", b"bc"]);
        assert_ne!(a.inputs_digest, b.inputs_digest);
        assert_eq!(a.inputs_digest, Report::new("t", &[b"ab", b"c"]).inputs_digest);
    }

    #[test]
    fn tolerance_checks() {
        let mut r = Report::new("t", &[]);
        assert!(r.measure("num.steinerian", 1e-60));
        assert!(!r.measure("conj.broken", 1e-5));
    }
}

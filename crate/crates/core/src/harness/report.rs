use std::fmt::Write;

/// Counts for one named check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    /// cases not counted either way (degenerate inputs, exhausted budgets)
    pub skipped: u64,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Result of a run. Contains no timing so that reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub parameters: Vec<(String, String)>,
    pub budgets: Vec<(String, String)>,
    pub checks: Vec<CheckOutcome>,
    pub counterexamples: Vec<String>,
}

/// Keeps at most this many counterexamples per report.
pub const MAX_COUNTEREXAMPLES: usize = 20;

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.into(),
            seed,
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.into(), value.to_string()));
    }

    pub fn budget(&mut self, key: &str, value: impl ToString) {
        self.budgets.push((key.into(), value.to_string()));
    }

    pub fn counterexample(&mut self, msg: String) {
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(msg);
        }
    }

    pub fn merge(&mut self, other: RunReport) {
        self.checks.extend(other.checks);
        for c in other.counterexamples {
            self.counterexample(c);
        }
        for b in other.budgets {
            if !self.budgets.contains(&b) {
                self.budgets.push(b);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckOutcome::ok)
    }

    pub fn total_checks(&self) -> u64 {
        self.checks.iter().map(|c| c.passed + c.failed).sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "report = ringdef-run/1");
        let _ = writeln!(s, "command = {}", self.command);
        let _ = writeln!(s, "seed = {}", self.seed);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "param.{k} = {v}");
        }
        for (k, v) in &self.budgets {
            let _ = writeln!(s, "budget.{k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "check.{} = {} passed={} failed={} skipped={}",
                c.name,
                if c.ok() { "pass" } else { "FAIL" },
                c.passed,
                c.failed,
                c.skipped
            );
            for n in &c.notes {
                let _ = writeln!(s, "note.{} = {n}", c.name);
            }
        }
        for c in &self.counterexamples {
            let _ = writeln!(s, "counterexample = {c}");
        }
        let _ = writeln!(s, "status = {}", if self.ok() { "pass" } else { "fail" });
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("check,status,passed,failed,skipped\n");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                c.name,
                if c.ok() { "pass" } else { "fail" },
                c.passed,
                c.failed,
                c.skipped
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_csv() {
        let mut r = RunReport::new("selftest", 7);
        r.param("height", 10);
        let mut c = CheckOutcome::new("demo");
        c.record(true);
        c.record(false);
        r.checks.push(c);
        r.counterexample("x = 1/2".into());
        let t = r.to_text();
        assert!(t.starts_with("report = ringdef-run/1\ncommand = selftest\nseed = 7\nparam.height = 10\n"));
        assert!(t.contains("check.demo = FAIL passed=1 failed=1 skipped=0\n"));
        assert!(t.ends_with("status = fail\n"));
        assert_eq!(r.to_csv(), "check,status,passed,failed,skipped\ndemo,fail,1,1,0\n");
        assert!(!r.ok());
    }
}

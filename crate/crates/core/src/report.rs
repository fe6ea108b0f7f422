//! Per-check pass/fail records shared by every suite.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one named check. A failing check keeps the inputs of its first
/// counterexample so the run can be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<(String, String)>>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates checks in first-seen order.
#[derive(Default, Debug)]
pub struct CheckLog {
    checks: Vec<Check>,
}

impl CheckLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one trial of `name`; `witness` is only evaluated for the first failure.
    pub fn record<F>(&mut self, name: &str, ok: bool, witness: F)
    where
        F: FnOnce() -> Vec<(&'static str, String)>,
    {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.checks.push(Check { name: name.to_string(), status: Status::Pass, trials: 0, witness: None });
                self.checks.len() - 1
            }
        };
        let check = &mut self.checks[pos];
        check.trials += 1;
        if !ok && check.status == Status::Pass {
            check.status = Status::Fail;
            check.witness = Some(witness().into_iter().map(|(k, v)| (k.to_string(), v)).collect());
        }
    }

    /// Records a check that has no inputs worth replaying.
    pub fn assert(&mut self, name: &str, ok: bool) {
        self.record(name, ok, Vec::new);
    }

    /// Records a failure carrying an error message.
    pub fn fail(&mut self, name: &str, message: String) {
        self.record(name, false, || vec![("error", message)]);
    }

    pub fn extend(&mut self, other: CheckLog) {
        self.checks.extend(other.checks);
    }

    /// Prepends `prefix: ` to every check name.
    pub fn prefixed(mut self, prefix: &str) -> CheckLog {
        for c in &mut self.checks {
            c.name = format!("{prefix}: {}", c.name);
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn into_checks(self) -> Vec<Check> {
        self.checks
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let mut log = CheckLog::new();
        log.record("a", true, || vec![("x", "0".into())]);
        log.record("a", false, || vec![("x", "1".into())]);
        log.record("a", false, || vec![("x", "2".into())]);
        log.assert("b", true);
        let a = log.find("a").unwrap();
        assert_eq!(a.trials, 3);
        assert_eq!(a.witness, Some(vec![("x".to_string(), "1".to_string())]));
        assert!(log.find("b").unwrap().passed());
        assert!(!log.all_passed());
    }
}

use serde::{Deserialize, Serialize};

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub location: String,
}

/// Number of instances of one axiom that were checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomTally {
    pub axiom: String,
    pub checked: usize,
    pub failed: usize,
}

/// Exhaustive axiom check result. Violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub subject: String,
    pub tallies: Vec<AxiomTally>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> ValidationReport {
        ValidationReport { subject: subject.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Record one checked instance of `axiom`; `location` is only built on
    /// failure.
    pub fn check(&mut self, axiom: &str, ok: bool, location: impl FnOnce() -> String) {
        let tally = match self.tallies.iter_mut().find(|t| t.axiom == axiom) {
            Some(t) => t,
            None => {
                self.tallies.push(AxiomTally { axiom: axiom.to_string(), checked: 0, failed: 0 });
                self.tallies.last_mut().unwrap()
            }
        };
        tally.checked += 1;
        if !ok {
            tally.failed += 1;
            self.violations.push(Violation { axiom: axiom.to_string(), location: location() });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for t in other.tallies {
            match self.tallies.iter_mut().find(|s| s.axiom == t.axiom) {
                Some(s) => {
                    s.checked += t.checked;
                    s.failed += t.failed;
                }
                None => self.tallies.push(t),
            }
        }
        self.violations.extend(other.violations);
    }

    pub fn checked(&self) -> usize {
        self.tallies.iter().map(|t| t.checked).sum()
    }
}

use std::fmt;

use serde::Serialize;

use crate::point::Point;

/// One failed law or condition, with the points that exhibit the failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<Point>,
    pub detail: String,
}

/// Outcome of an axiom or condition check. `passed()` holds exactly when
/// no violation was recorded.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AxiomReport {
    passed: bool,
    violations: Vec<Violation>,
    /// Free-form remarks: sampling resolution, vacuous passes, skipped parts.
    notes: Vec<String>,
}

impl AxiomReport {
    pub fn new() -> Self {
        AxiomReport { passed: true, violations: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn violate(&mut self, axiom: impl Into<String>, witness: Vec<Point>, detail: impl Into<String>) {
        self.violations.push(Violation { axiom: axiom.into(), witness, detail: detail.into() });
        self.passed = false;
    }

    /// Adds a note unless an identical one is already present.
    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    /// Whether some violation names `axiom`.
    pub fn violates(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn first_violation(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.passed &= other.passed;
        self.violations.extend(other.violations);
        for n in other.notes {
            self.note(n);
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.passed { "PASS" } else { "FAIL" })?;
        for v in &self.violations {
            let w: Vec<String> = v.witness.iter().map(|p| format!("{:?}", p)).collect();
            writeln!(f, "  violated {}: {} witness {}", v.axiom, v.detail, w.join(" "))?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {}", n)?;
        }
        Ok(())
    }
}

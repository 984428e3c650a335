//! Verdicts with counterexample witnesses.

use std::fmt;

use crate::carrier::Carrier;
use crate::grade::Grade;

/// The violating tuple behind a negative verdict.
///
/// Indices refer to the carrier of the structure that was checked. `point`
/// is the evaluation point `r` of a grade equation and `grades` holds the two
/// unequal sides (left, right) when the check compares grades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub note: String,
    pub elements: Vec<usize>,
    pub sorts: Vec<usize>,
    pub point: Option<usize>,
    pub grades: Option<(Grade, Grade)>,
    pub threshold: Option<Grade>,
}

impl Witness {
    pub fn new(note: impl Into<String>) -> Witness {
        Witness {
            note: note.into(),
            elements: Vec::new(),
            sorts: Vec::new(),
            point: None,
            grades: None,
            threshold: None,
        }
    }

    pub fn elements(mut self, elements: impl Into<Vec<usize>>) -> Self {
        self.elements = elements.into();
        self
    }

    pub fn sorts(mut self, sorts: impl Into<Vec<usize>>) -> Self {
        self.sorts = sorts.into();
        self
    }

    pub fn point(mut self, r: usize) -> Self {
        self.point = Some(r);
        self
    }

    pub fn grades(mut self, left: Grade, right: Grade) -> Self {
        self.grades = Some((left, right));
        self
    }

    pub fn threshold(mut self, p: Grade) -> Self {
        self.threshold = Some(p);
        self
    }

    /// Human-readable rendering using the labels of `carrier`.
    pub fn describe(&self, carrier: &Carrier) -> String {
        let mut parts = Vec::new();
        if !self.elements.is_empty() {
            let labels: Vec<&str> = self.elements.iter().map(|&i| carrier.element(i)).collect();
            parts.push(format!("elements=({})", labels.join(", ")));
        }
        if !self.sorts.is_empty() {
            let labels: Vec<&str> = self.sorts.iter().map(|&i| carrier.sort(i)).collect();
            parts.push(format!("sorts=({})", labels.join(", ")));
        }
        if let Some(r) = self.point {
            parts.push(format!("at={}", carrier.element(r)));
        }
        if let Some((l, r)) = self.grades {
            parts.push(format!("grades={l} vs {r}"));
        }
        if let Some(p) = self.threshold {
            parts.push(format!("p={p}"));
        }
        if parts.is_empty() {
            self.note.clone()
        } else {
            format!("{}: {}", self.note, parts.join(" "))
        }
    }
}

/// A boolean verdict; negative verdicts always carry a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass() -> CheckReport {
        CheckReport { witness: None }
    }

    pub fn fail(witness: Witness) -> CheckReport {
        CheckReport {
            witness: Some(witness),
        }
    }

    /// `pass` when `witness` is `None`.
    pub fn from_witness(witness: Option<Witness>) -> CheckReport {
        CheckReport { witness }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// Runs `next` only if this report passed.
    pub fn and_then(self, next: impl FnOnce() -> CheckReport) -> CheckReport {
        if self.passed() {
            next()
        } else {
            self
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "yes"),
            Some(w) => write!(f, "no ({})", w.note),
        }
    }
}

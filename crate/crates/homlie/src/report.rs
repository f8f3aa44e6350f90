//! Verdicts with exact residual witnesses.

use serde::Serialize;

use crate::rational::Rational;

/// How many nonzero residual entries a failing check keeps.
pub const MAX_WITNESSES: usize = 8;

/// One nonzero residual coefficient: where it was found and its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Component locator, e.g. `arity 3` or `weight 2, arity 1`.
    pub component: String,
    /// Canonical input key.
    pub input: String,
    /// Output basis element.
    pub output: String,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    /// Arities (or word lengths) through which the check is exact.
    pub exact_through: Option<usize>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn from_witnesses(
        check: impl Into<String>,
        exact_through: Option<usize>,
        witnesses: Vec<Witness>,
    ) -> Self {
        let mut w = witnesses;
        let passed = w.is_empty();
        w.truncate(MAX_WITNESSES);
        Verdict {
            check: check.into(),
            passed,
            exact_through,
            witnesses: w,
            notes: Vec::new(),
        }
    }

    pub fn pass(check: impl Into<String>, exact_through: Option<usize>) -> Self {
        Verdict::from_witnesses(check, exact_through, Vec::new())
    }

    pub fn fail(check: impl Into<String>, note: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            passed: false,
            exact_through: None,
            witnesses: Vec::new(),
            notes: vec![note.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("{status} {}", self.check);
        if let Some(a) = self.exact_through {
            s.push_str(&format!(" [exact through {a}]"));
        }
        if let Some(w) = self.witnesses.first() {
            s.push_str(&format!(
                " first residual {} at {} {} -> {}",
                w.residual, w.component, w.input, w.output
            ));
        }
        for n in &self.notes {
            s.push_str(&format!(" ({n})"));
        }
        s
    }
}

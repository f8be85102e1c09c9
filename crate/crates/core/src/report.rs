//! Verification reports shared by every identity checker.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::polyring::MultiPoly;
use crate::qcore::QContext;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CoeffIndex {
    Single(usize),
    Pair([usize; 2]),
    Label(String),
}

impl From<usize> for CoeffIndex {
    fn from(n: usize) -> Self {
        CoeffIndex::Single(n)
    }
}

impl From<(usize, usize)> for CoeffIndex {
    fn from((n, m): (usize, usize)) -> Self {
        CoeffIndex::Pair([n, m])
    }
}

impl From<String> for CoeffIndex {
    fn from(s: String) -> Self {
        CoeffIndex::Label(s)
    }
}

impl From<&str> for CoeffIndex {
    fn from(s: &str) -> Self {
        CoeffIndex::Label(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub coeff_index: CoeffIndex,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

/// Outcome of one identity check: pass/fail, the first failing coefficient,
/// and any reading decisions that were applied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub order: usize,
    pub pass: bool,
    pub first_failure: Option<Failure>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub checked: usize,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, order: usize) -> Self {
        VerificationReport {
            identity: identity.into(),
            params: BTreeMap::new(),
            order,
            pass: true,
            first_failure: None,
            notes: Vec::new(),
            checked: 0,
        }
    }

    pub fn with_ctx(mut self, ctx: &QContext) -> Self {
        self.params.insert("q".into(), ctx.q().to_string());
        self.params.insert("u".into(), ctx.u().to_string());
        self
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    /// Compares one coefficient; only the first failure is kept.
    pub fn check(&mut self, index: impl Into<CoeffIndex>, lhs: &MultiPoly, rhs: &MultiPoly) -> bool {
        self.checked += 1;
        let ok = lhs == rhs;
        if !ok {
            self.fail(index, lhs.clone(), rhs.clone());
        }
        ok
    }

    pub fn fail(&mut self, index: impl Into<CoeffIndex>, lhs: MultiPoly, rhs: MultiPoly) {
        self.pass = false;
        if self.first_failure.is_none() {
            self.first_failure = Some(Failure { coeff_index: index.into(), lhs, rhs });
        }
    }

    /// Marks the report failed without a coefficient witness.
    pub fn fail_with_note(&mut self, note: impl Into<String>) {
        self.pass = false;
        self.note(note);
    }
}

use std::fmt;

use serde::Serialize;

use crate::fincat::TieBreak;
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Only produced by the Beck-Chevalley checks, when an adjoint is missing.
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not applicable",
        })
    }
}

/// One failing location and the predicate violated there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    /// Dense indices of the location, e.g. `[a, b', g]`; used for ordering
    /// and for re-checking.
    #[serde(skip)]
    pub key: Vec<usize>,
    pub location: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Free-form remarks, e.g. which adjoints were chosen.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub(crate) fn from_witnesses(mut witnesses: Vec<Witness>) -> Self {
        witnesses.sort();
        CheckReport {
            verdict: Verdict::from_bool(witnesses.is_empty()),
            witnesses,
            notes: Vec::new(),
        }
    }

    pub(crate) fn not_applicable(notes: Vec<String>) -> Self {
        CheckReport {
            verdict: Verdict::NotApplicable,
            witnesses: Vec::new(),
            notes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckOptions {
    /// Report every failing location instead of the first one per group.
    pub all_witnesses: bool,
    /// Fan the enumeration out over worker threads. Results are identical.
    pub parallel: bool,
    pub limits: Limits,
    pub tie_break: TieBreak,
}

/// `empty` or `has n components: {..},{..}` for a category whose objects are
/// named by `name` and partitioned into `classes`.
pub(crate) fn describe_components(
    what: &str,
    classes: &[Vec<usize>],
    name: impl Fn(usize) -> String,
) -> String {
    if classes.is_empty() {
        return format!("{what} empty");
    }
    let parts: Vec<String> = classes
        .iter()
        .map(|c| {
            let names: Vec<String> = c.iter().map(|&i| name(i)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    format!(
        "{what} has {} components: {}",
        classes.len(),
        parts.join(",")
    )
}

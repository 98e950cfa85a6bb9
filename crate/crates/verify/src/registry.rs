//! The identity corpus: a JSON array of records, each naming both sides of
//! an identity in the expression language together with the parameter
//! instantiations to check.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use qseries::rational::{exp, Exponent};
use qseries::{parse, Bindings, Expr, SignedMonomial};
use serde::{Deserialize, Serialize};

/// The corpus shipped with the crate.
pub const BUILTIN: &str = include_str!("../registry/identities.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expected {
    #[serde(rename = "pass")]
    Pass,
    /// Kept as printed at the source so the discrepancy is reported; a
    /// failure does not count against the run.
    #[serde(rename = "flagged-as-printed")]
    Flagged,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Pass => "pass",
            Expected::Flagged => "flagged-as-printed",
        })
    }
}

/// One parameter value `sign * q^(exp_num/exp_den)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBinding {
    pub name: String,
    pub sign: i64,
    pub exp_num: i64,
    pub exp_den: i64,
}

/// A record as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRecord {
    pub id: String,
    #[serde(rename = "ref")]
    pub reference: String,
    pub quote: String,
    pub lhs: String,
    pub rhs: String,
    /// One entry per instantiation.
    pub params: Vec<Vec<RawBinding>>,
    pub order: i64,
    pub expected: Expected,
}

#[derive(Clone, Debug)]
pub struct IdentityRecord {
    pub id: String,
    pub reference: String,
    pub quote: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub instances: Vec<Bindings>,
    pub order: i64,
    pub expected: Expected,
}

/// A problem found while loading, tied to the record it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    /// Record id, or its position when the id is missing.
    pub record: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.record, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed registry JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("registry has {} problem(s), first: {}", .0.len(), .0[0])]
    Invalid(Vec<Issue>),
}

#[derive(Clone, Debug)]
pub struct Registry {
    records: Vec<IdentityRecord>,
}

impl Registry {
    pub fn builtin() -> Result<Registry, RegistryError> {
        Registry::from_json(BUILTIN)
    }

    pub fn load(path: &Path) -> Result<Registry, RegistryError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| RegistryError::Io { path: path.display().to_string(), source })?;
        Registry::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Registry, RegistryError> {
        let raw: Vec<RawRecord> = serde_json::from_str(text)?;
        let (records, issues) = build(&raw);
        if issues.is_empty() {
            Ok(Registry { records })
        } else {
            Err(RegistryError::Invalid(issues))
        }
    }

    pub fn records(&self) -> &[IdentityRecord] {
        &self.records
    }

    pub fn get(&self, id: &str) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Every schema problem in `text`, empty when the corpus is valid.
pub fn lint(text: &str) -> Vec<Issue> {
    match serde_json::from_str::<Vec<RawRecord>>(text) {
        Ok(raw) => build(&raw).1,
        Err(e) => vec![Issue { record: "<file>".into(), message: e.to_string() }],
    }
}

fn binding(b: &RawBinding) -> Result<SignedMonomial, String> {
    if b.sign != 1 && b.sign != -1 {
        return Err(format!("parameter {}: sign must be 1 or -1, got {}", b.name, b.sign));
    }
    if b.exp_den <= 0 {
        return Err(format!("parameter {}: exp_den must be positive, got {}", b.name, b.exp_den));
    }
    let e: Exponent = exp(b.exp_num, b.exp_den);
    Ok(SignedMonomial::laurent(b.sign < 0, e))
}

fn build(raw: &[RawRecord]) -> (Vec<IdentityRecord>, Vec<Issue>) {
    let mut issues = Vec::new();
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, r) in raw.iter().enumerate() {
        let name = if r.id.is_empty() { format!("#{i}") } else { r.id.clone() };
        let mut fail = |message: String| issues.push(Issue { record: name.clone(), message });
        if r.id.is_empty() {
            fail("empty id".into());
        } else if !seen.insert(r.id.clone()) {
            fail("duplicate id".into());
        }
        if r.order < 1 {
            fail(format!("order must be at least 1, got {}", r.order));
        }
        if r.params.is_empty() {
            fail("needs at least one instantiation (use [[]] for none)".into());
        }
        let lhs = parse(&r.lhs).map_err(|e| fail(format!("lhs: {e}")));
        let rhs = parse(&r.rhs).map_err(|e| fail(format!("rhs: {e}")));
        let (Ok(lhs), Ok(rhs)) = (lhs, rhs) else { continue };
        let mut free: BTreeSet<String> = lhs.params().into_iter().collect();
        free.extend(rhs.params());
        let mut instances = Vec::new();
        for (k, inst) in r.params.iter().enumerate() {
            let mut b = Bindings::new();
            for raw_binding in inst {
                match binding(raw_binding) {
                    Ok(m) => {
                        if b.insert(raw_binding.name.clone(), m).is_some() {
                            fail(format!("instantiation {k}: {} bound twice", raw_binding.name));
                        }
                    }
                    Err(m) => fail(format!("instantiation {k}: {m}")),
                }
            }
            for p in &free {
                if !b.contains_key(p) {
                    fail(format!("instantiation {k}: parameter {p} is unbound"));
                }
            }
            for p in b.keys() {
                if !free.contains(p) {
                    fail(format!("instantiation {k}: {p} does not occur in the identity"));
                }
            }
            instances.push(b);
        }
        records.push(IdentityRecord {
            id: r.id.clone(),
            reference: r.reference.clone(),
            quote: r.quote.clone(),
            lhs,
            rhs,
            instances,
            order: r.order,
            expected: r.expected,
        });
    }
    (records, issues)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(lhs: &str, rhs: &str, params: &str) -> String {
        format!(
            r#"[{{"id":"A","ref":"r","quote":"q","lhs":"{lhs}","rhs":"{rhs}","params":{params},"order":10,"expected":"pass"}}]"#
        )
    }

    #[test]
    fn builtin_corpus_is_clean() {
        assert_eq!(lint(BUILTIN), vec![]);
        let r = Registry::builtin().unwrap();
        assert!(r.len() >= 30);
        assert!(r.get("R-MEQ5").is_some());
    }

    #[test]
    fn unbound_and_unused_parameters() {
        let issues = lint(&one("theta(x, y)", "1", r#"[[{"name":"x","sign":1,"exp_num":1,"exp_den":1}]]"#));
        assert_eq!(issues.len(), 1);
        assert!(issues[0].message.contains("y is unbound"));
        let issues = lint(&one("phi(1)", "1", r#"[[{"name":"z","sign":1,"exp_num":1,"exp_den":1}]]"#));
        assert!(issues[0].message.contains("does not occur"));
    }

    #[test]
    fn schema_violations() {
        assert!(!lint(&one("phi(1)", "1", "[]")).is_empty());
        assert!(!lint(&one("phi(", "1", "[[]]")).is_empty());
        let bad_sign = one("phi(x)", "1", r#"[[{"name":"x","sign":2,"exp_num":1,"exp_den":1}]]"#);
        assert!(lint(&bad_sign)[0].message.contains("sign"));
        assert!(!lint("{}").is_empty());
        let twice = format!("[{0},{0}]", &one("1", "1", "[[]]")[1..one("1", "1", "[[]]").len() - 1]);
        assert!(lint(&twice).iter().any(|i| i.message == "duplicate id"));
        assert!(matches!(Registry::from_json(&twice), Err(RegistryError::Invalid(_))));
    }
}

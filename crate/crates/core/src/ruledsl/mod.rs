//! Plain-text rule files (`.evr`).
//!
//! ```text
//! # comment
//! hypothesis H "flu"
//! prior H prob 0.1             # or: odds <x>
//! evidence E1 "fever"
//! rule R1: E1 -> H cf 0.5      # or: lambda <x> | belief <x> | logl <x>
//! observe E1
//! ```
//!
//! One statement per line, identifiers are case-sensitive, and statements
//! may appear in any order. Syntax errors stop at the first offending
//! token; semantic problems are collected over the whole file.

mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

pub use syntax::{ParseError, Pos};
use syntax::{Stmt, Strength};

use crate::aggregation::{
    encode_prior_odds, encode_prior_prob, posterior_probability, EvidenceItem, Odds,
    PosteriorReport, Probability,
};
use crate::calculi::{Calculus, Measure};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prior {
    Prob(Probability),
    Odds(Odds),
}

impl Prior {
    pub fn probability(&self) -> Probability {
        match *self {
            Prior::Prob(p) => p,
            Prior::Odds(o) => o.to_probability(),
        }
    }

    fn encode(&self, hypothesis: &str) -> EvidenceItem {
        match *self {
            Prior::Prob(p) => encode_prior_prob(hypothesis, p),
            Prior::Odds(o) => encode_prior_odds(hypothesis, o),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub id: String,
    pub evidence: String,
    pub hypothesis: String,
    pub measure: Measure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationKind {
    DuplicateId,
    UndeclaredEvidence,
    UndeclaredHypothesis,
    OutOfRange,
    DuplicatePrior,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationIssue {
    pub line: usize,
    pub column: usize,
    pub kind: ValidationKind,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DslError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{}", display_issues(.0))]
    Validation(Vec<ValidationIssue>),
}

fn display_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

/// A validated rule file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RuleBase {
    hypotheses: BTreeMap<String, String>,
    priors: BTreeMap<String, Prior>,
    evidence: BTreeMap<String, String>,
    rules: Vec<Rule>,
    observations: BTreeSet<String>,
}

impl RuleBase {
    pub fn hypotheses(&self) -> &BTreeMap<String, String> {
        &self.hypotheses
    }

    pub fn priors(&self) -> &BTreeMap<String, Prior> {
        &self.priors
    }

    pub fn evidence(&self) -> &BTreeMap<String, String> {
        &self.evidence
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn observations(&self) -> &BTreeSet<String> {
        &self.observations
    }

    /// The same rule base with every rule strength expressed in `calculus`.
    pub fn with_strengths_in(&self, calculus: Calculus) -> RuleBase {
        let mut rb = self.clone();
        for rule in &mut rb.rules {
            rule.measure = rule.measure.convert(calculus);
        }
        rb
    }

    /// The same rule base without the rule named `id`.
    pub fn without_rule(&self, id: &str) -> RuleBase {
        let mut rb = self.clone();
        rb.rules.retain(|r| r.id != id);
        rb
    }

    /// Canonical source text; parsing it yields an equal rule base.
    pub fn to_source(&self) -> String {
        self.to_string()
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl fmt::Display for RuleBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, desc) in &self.hypotheses {
            writeln!(f, "hypothesis {id} {}", quote(desc))?;
        }
        for (id, prior) in &self.priors {
            match prior {
                Prior::Prob(p) => writeln!(f, "prior {id} prob {p}")?,
                Prior::Odds(o) => writeln!(f, "prior {id} odds {o}")?,
            }
        }
        for (id, desc) in &self.evidence {
            writeln!(f, "evidence {id} {}", quote(desc))?;
        }
        for r in &self.rules {
            writeln!(
                f,
                "rule {}: {} -> {} {}",
                r.id, r.evidence, r.hypothesis, r.measure
            )?;
        }
        for e in &self.observations {
            writeln!(f, "observe {e}")?;
        }
        Ok(())
    }
}

struct Validator {
    issues: Vec<ValidationIssue>,
}

impl Validator {
    fn push(&mut self, pos: Pos, kind: ValidationKind, message: String) {
        self.issues.push(ValidationIssue {
            line: pos.line,
            column: pos.column,
            kind,
            message,
        });
    }

    fn strength(&mut self, s: &Strength) -> Option<Measure> {
        let result = match s.keyword.as_str() {
            "prob" | "odds" => return None,
            kw => Measure::new(
                kw.parse().expect("parser only admits calculus keywords"),
                s.value,
            ),
        };
        self.range_checked(s, result)
    }

    fn prior(&mut self, s: &Strength) -> Option<Prior> {
        let result = match s.keyword.as_str() {
            "prob" => Probability::new(s.value).map(Prior::Prob),
            "odds" => Odds::new(s.value).map(Prior::Odds),
            _ => unreachable!("parser only admits prob or odds"),
        };
        self.range_checked(s, result)
    }

    fn range_checked<T>(&mut self, s: &Strength, result: Result<T>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(s.pos, ValidationKind::OutOfRange, e.to_string());
                None
            }
        }
    }
}

/// Parses and validates a rule file.
pub fn parse(source: &str) -> std::result::Result<RuleBase, DslError> {
    let stmts = syntax::parse_statements(source)?;
    let mut v = Validator { issues: Vec::new() };
    let mut rb = RuleBase::default();

    // Hypotheses and evidence share one namespace; rule ids have their own.
    let mut declared: BTreeMap<&str, &'static str> = BTreeMap::new();
    let mut rule_ids: BTreeSet<&str> = BTreeSet::new();
    for stmt in &stmts {
        let (id, kind, desc, map) = match stmt {
            Stmt::Hypothesis { id, description } => {
                (id, "hypothesis", description, &mut rb.hypotheses)
            }
            Stmt::Evidence { id, description } => (id, "evidence", description, &mut rb.evidence),
            Stmt::Rule { id, .. } => {
                if !rule_ids.insert(&id.value) {
                    v.push(
                        id.pos,
                        ValidationKind::DuplicateId,
                        format!("duplicate rule id '{}'", id.value),
                    );
                }
                continue;
            }
            _ => continue,
        };
        if let Some(previous) = declared.insert(&id.value, kind) {
            v.push(
                id.pos,
                ValidationKind::DuplicateId,
                format!("'{}' is already declared as {previous}", id.value),
            );
        } else {
            map.insert(id.value.clone(), desc.clone());
        }
    }

    let check_ref = |v: &mut Validator, id: &syntax::Ident, kind: &'static str| {
        if declared.get(id.value.as_str()) == Some(&kind) {
            return true;
        }
        let vk = if kind == "hypothesis" {
            ValidationKind::UndeclaredHypothesis
        } else {
            ValidationKind::UndeclaredEvidence
        };
        v.push(id.pos, vk, format!("undeclared {kind} '{}'", id.value));
        false
    };

    for stmt in &stmts {
        match stmt {
            Stmt::Prior {
                hypothesis,
                strength,
            } => {
                let known = check_ref(&mut v, hypothesis, "hypothesis");
                let prior = v.prior(strength);
                if rb.priors.contains_key(&hypothesis.value) {
                    v.push(
                        hypothesis.pos,
                        ValidationKind::DuplicatePrior,
                        format!("second prior for hypothesis '{}'", hypothesis.value),
                    );
                } else if let (true, Some(prior)) = (known, prior) {
                    rb.priors.insert(hypothesis.value.clone(), prior);
                }
            }
            Stmt::Rule {
                id,
                evidence,
                hypothesis,
                strength,
            } => {
                let e_ok = check_ref(&mut v, evidence, "evidence");
                let h_ok = check_ref(&mut v, hypothesis, "hypothesis");
                if let (true, true, Some(measure)) = (e_ok, h_ok, v.strength(strength)) {
                    rb.rules.push(Rule {
                        id: id.value.clone(),
                        evidence: evidence.value.clone(),
                        hypothesis: hypothesis.value.clone(),
                        measure,
                    });
                }
            }
            Stmt::Observe { evidence } => {
                if check_ref(&mut v, evidence, "evidence") {
                    rb.observations.insert(evidence.value.clone());
                }
            }
            Stmt::Hypothesis { .. } | Stmt::Evidence { .. } => {}
        }
    }

    if v.issues.is_empty() {
        Ok(rb)
    } else {
        v.issues.sort_by_key(|i| (i.line, i.column));
        Err(DslError::Validation(v.issues))
    }
}

/// The evidence pool the rule base contributes to `hypothesis`: its prior
/// (if declared) followed by every fired rule concluding it.
pub fn evidence_items(rb: &RuleBase, hypothesis: &str) -> Result<Vec<EvidenceItem>> {
    if !rb.hypotheses.contains_key(hypothesis) {
        return Err(Error::UnknownHypothesis(hypothesis.to_string()));
    }
    let prior = rb.priors.get(hypothesis).map(|p| p.encode(hypothesis));
    let fired = rb
        .rules
        .iter()
        .filter(|r| r.hypothesis == hypothesis && rb.observations.contains(&r.evidence))
        .map(|r| EvidenceItem::new(hypothesis, r.evidence.clone(), r.measure));
    Ok(prior.into_iter().chain(fired).collect())
}

/// Posterior for `hypothesis`. The declared prior enters as one more piece
/// of evidence on top of the vacuous prior.
pub fn evaluate(rb: &RuleBase, hypothesis: &str) -> Result<PosteriorReport> {
    let items = evidence_items(rb, hypothesis)?;
    let mut report = posterior_probability(hypothesis, Probability::EVEN, &items)?;
    report.prior = rb
        .priors
        .get(hypothesis)
        .map_or(Probability::EVEN, Prior::probability);
    Ok(report)
}

/// Human-readable summary of a [`DslError`], prefixed by `origin`.
pub fn render_error(origin: &str, err: &DslError) -> String {
    let mut out = String::new();
    match err {
        DslError::Parse(e) => {
            let _ = write!(out, "{origin}:{e}");
        }
        DslError::Validation(issues) => {
            for (i, issue) in issues.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let _ = write!(out, "{origin}:{issue}");
            }
        }
    }
    out
}

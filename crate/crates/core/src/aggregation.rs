//! Parallel aggregation of evidence bearing on one hypothesis, prior
//! encoding, and the odds-likelihood posterior.
//!
//! Pools are folded in log space (G) and converted to the requested
//! calculus at the end, which keeps long pools away from overflow. A
//! substantive prior is just one more item in the pool: folding starts
//! from the vacuous identity.

use std::collections::BTreeMap;
use std::fmt;

use crate::calculi::{
    check_range, g_to_l, Calculus, CertaintyFactor, ChanceBelief, LikelihoodRatio, LogLikelihood,
    Measure,
};
use crate::error::{Error, Result};

/// Source label carried by evidence items that encode a prior.
pub const PRIOR_SOURCE: &str = "PriorInfo";

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const EVEN: Probability = Probability(0.5);

    pub fn new(value: f64) -> Result<Self> {
        check_range("probability", "[0, 1]", value, 0.0, 1.0).map(Probability)
    }

    pub(crate) fn saturating(value: f64) -> Self {
        Probability(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `p / (1 - p)`, with `p = 1` mapping to `+inf`.
    pub fn to_odds(self) -> Odds {
        Odds(self.0 / (1.0 - self.0))
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `p(H) / p(¬H)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Odds(f64);

impl Odds {
    pub const EVEN: Odds = Odds(1.0);

    pub fn new(value: f64) -> Result<Self> {
        check_range("odds", "[0, +inf]", value, 0.0, f64::INFINITY).map(Odds)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_probability(self) -> Probability {
        if self.0 == f64::INFINITY {
            return Probability(1.0);
        }
        Probability::saturating(self.0 / (1.0 + self.0))
    }
}

impl fmt::Display for Odds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// One parallel update on a hypothesis, indexed by its evidential source.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceItem {
    pub hypothesis: String,
    pub source: String,
    pub measure: Measure,
}

impl EvidenceItem {
    pub fn new(hypothesis: impl Into<String>, source: impl Into<String>, measure: Measure) -> Self {
        Self {
            hypothesis: hypothesis.into(),
            source: source.into(),
            measure,
        }
    }
}

impl fmt::Display for EvidenceItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.source, self.measure)
    }
}

/// Non-fatal observations about an evidence pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lint {
    /// The same source appears more than once and will be counted each time.
    DuplicateSource { source: String, count: usize },
    /// More than one prior was supplied; they are aggregated like evidence.
    MultiplePriors { count: usize },
}

impl fmt::Display for Lint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lint::DuplicateSource { source, count } => write!(
                f,
                "source '{source}' supplies {count} items; each is counted as independent evidence"
            ),
            Lint::MultiplePriors { count } => {
                write!(f, "{count} priors supplied; all are aggregated as evidence")
            }
        }
    }
}

pub fn lint(items: &[EvidenceItem]) -> Vec<Lint> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for item in items {
        *counts.entry(item.source.as_str()).or_default() += 1;
    }
    counts
        .into_iter()
        .filter(|&(_, count)| count > 1)
        .map(|(source, count)| {
            if source == PRIOR_SOURCE {
                Lint::MultiplePriors { count }
            } else {
                Lint::DuplicateSource {
                    source: source.to_string(),
                    count,
                }
            }
        })
        .collect()
}

fn check_hypothesis<'a>(expected: Option<&'a str>, items: &'a [EvidenceItem]) -> Result<()> {
    let Some(first) = expected.or_else(|| items.first().map(|i| i.hypothesis.as_str())) else {
        return Ok(());
    };
    match items.iter().find(|i| i.hypothesis != first) {
        Some(other) => Err(Error::MixedHypotheses {
            first: first.to_string(),
            second: other.hypothesis.clone(),
        }),
        None => Ok(()),
    }
}

/// Left fold in log space. Opposing certainties anywhere in the pool are a
/// total conflict naming the first item of each sign.
fn fold_log(items: &[EvidenceItem]) -> Result<LogLikelihood> {
    let mut sum = 0.0;
    let mut certain_for: Option<&EvidenceItem> = None;
    let mut certain_against: Option<&EvidenceItem> = None;
    for item in items {
        let g = item.measure.to_logl().value();
        if g == f64::INFINITY {
            certain_for.get_or_insert(item);
        } else if g == f64::NEG_INFINITY {
            certain_against.get_or_insert(item);
        }
        if let (Some(a), Some(b)) = (certain_for, certain_against) {
            let (left, right) = if std::ptr::eq(item, a) {
                (b, a)
            } else {
                (a, b)
            };
            return Err(Error::conflict(left, right));
        }
        sum += g;
    }
    Ok(LogLikelihood::new(sum).expect("sum of non-opposing log-likelihoods is not NaN"))
}

/// Aggregates a pool of parallel evidence into one measure in `target`.
/// An empty pool yields the identity (the vacuous prior).
pub fn fold_evidence(items: &[EvidenceItem], target: Calculus) -> Result<Measure> {
    check_hypothesis(None, items)?;
    if items.is_empty() {
        return Ok(target.identity());
    }
    Ok(Measure::LogL(fold_log(items)?).convert(target))
}

pub fn encode_prior_odds(hypothesis: impl Into<String>, odds: Odds) -> EvidenceItem {
    let l = LikelihoodRatio::new(odds.value()).expect("odds and lambda share a range");
    EvidenceItem::new(hypothesis, PRIOR_SOURCE, Measure::Lambda(l))
}

pub fn encode_prior_prob(hypothesis: impl Into<String>, prior: Probability) -> EvidenceItem {
    let d = CertaintyFactor::saturating(2.0 * prior.value() - 1.0);
    EvidenceItem::new(hypothesis, PRIOR_SOURCE, Measure::Cf(d))
}

pub fn posterior_odds(prior: Odds, aggregate: LikelihoodRatio) -> Result<Odds> {
    let (p, l) = (prior.value(), aggregate.value());
    if (p == 0.0 && l == f64::INFINITY) || (p == f64::INFINITY && l == 0.0) {
        return Err(Error::conflict(
            format!("prior odds {p}"),
            format!("aggregate lambda {l}"),
        ));
    }
    if aggregate.is_identity() {
        return Ok(prior);
    }
    Ok(Odds(p * l))
}

/// The aggregate of a pool in all four coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateViews {
    pub lambda: LikelihoodRatio,
    pub cf: CertaintyFactor,
    pub belief: ChanceBelief,
    pub logl: LogLikelihood,
}

impl AggregateViews {
    pub fn of(m: Measure) -> Self {
        Self {
            lambda: m.to_lambda(),
            cf: m.to_cf(),
            belief: m.to_belief(),
            logl: m.to_logl(),
        }
    }

    pub fn get(&self, calculus: Calculus) -> Measure {
        match calculus {
            Calculus::Lambda => Measure::Lambda(self.lambda),
            Calculus::Cf => Measure::Cf(self.cf),
            Calculus::Belief => Measure::Belief(self.belief),
            Calculus::LogL => Measure::LogL(self.logl),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorReport {
    pub hypothesis: String,
    pub aggregate: AggregateViews,
    pub prior: Probability,
    pub posterior: Probability,
    pub items_used: Vec<String>,
    pub lints: Vec<Lint>,
}

/// Folds `items`, applies the aggregate likelihood ratio to the prior odds
/// and reports the posterior probability.
pub fn posterior_probability(
    hypothesis: &str,
    prior: Probability,
    items: &[EvidenceItem],
) -> Result<PosteriorReport> {
    check_hypothesis(Some(hypothesis), items)?;
    let aggregate = if items.is_empty() {
        LogLikelihood::IDENTITY
    } else {
        fold_log(items)?
    };
    let odds = posterior_odds(prior.to_odds(), g_to_l(aggregate))?;
    Ok(PosteriorReport {
        hypothesis: hypothesis.to_string(),
        aggregate: AggregateViews::of(Measure::LogL(aggregate)),
        prior,
        posterior: odds.to_probability(),
        items_used: items.iter().map(|i| i.source.clone()).collect(),
        lints: lint(items),
    })
}

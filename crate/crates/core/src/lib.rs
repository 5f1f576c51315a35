//! Three equivalent calculi for aggregating confirming and disconfirming
//! evidence on a hypothesis: likelihood ratios, revised certainty factors
//! and chance-case Dempster-Shafer belief (plus log-likelihood weights).
//!
//! Each has its own combination rule; the transforms in [`calculi`] map
//! each rule onto the others exactly. [`oracle`] checks all of them against
//! brute-force Bayesian conditioning under conditional independence.

pub mod aggregation;
pub mod calculi;
pub mod cli;
pub mod dstheory;
pub mod error;
pub mod oracle;
pub mod ruledsl;

pub use aggregation::{EvidenceItem, Odds, PosteriorReport, Probability};
pub use calculi::{
    Calculus, CertaintyFactor, ChanceBelief, LikelihoodRatio, LogLikelihood, Measure,
};
pub use dstheory::BinaryMass;
pub use error::{Error, Result};
pub use ruledsl::{DslError, RuleBase};

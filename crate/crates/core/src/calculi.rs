//! The four equivalent coordinates for a parallel evidential update on a
//! binary hypothesis, and the combination rule native to each.
//!
//! | calculus | symbol | range        | identity | combination            |
//! |----------|--------|--------------|----------|------------------------|
//! | `lambda` | L      | `[0, +inf]`  | 1        | `l1 * l2`              |
//! | `cf`     | D      | `[-1, 1]`    | 0        | `(d1+d2)/(1+d1*d2)`    |
//! | `belief` | B      | `[0, 1]`     | 0.5      | chance-case Dempster   |
//! | `logl`   | G      | `[-inf,+inf]`| 0        | `g1 + g2`              |
//!
//! Certainty is carried by the exact boundary values. Combining the two
//! opposite certainties is undefined and reported as
//! [`Error::TotalConflict`].
//!
//! Each combination rule is computed in its own coordinate so that the
//! transforms in this module are a genuine homomorphism between four
//! independent implementations, not one implementation seen four ways.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Input values this close to a range boundary are snapped onto it.
pub const BOUNDARY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Calculus {
    /// Likelihood ratio `p(E|H) / p(E|¬H)`.
    Lambda,
    /// Revised certainty factor.
    Cf,
    /// Point-valued (chance) Dempster-Shafer belief.
    Belief,
    /// Natural log of the likelihood ratio.
    LogL,
}

impl Calculus {
    pub const ALL: [Calculus; 4] = [
        Calculus::Lambda,
        Calculus::Cf,
        Calculus::Belief,
        Calculus::LogL,
    ];

    /// Keyword used on the command line and in rule files.
    pub fn keyword(self) -> &'static str {
        match self {
            Calculus::Lambda => "lambda",
            Calculus::Cf => "cf",
            Calculus::Belief => "belief",
            Calculus::LogL => "logl",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Calculus::Lambda => 'L',
            Calculus::Cf => 'D',
            Calculus::Belief => 'B',
            Calculus::LogL => 'G',
        }
    }

    pub fn identity(self) -> Measure {
        match self {
            Calculus::Lambda => Measure::Lambda(LikelihoodRatio::IDENTITY),
            Calculus::Cf => Measure::Cf(CertaintyFactor::IDENTITY),
            Calculus::Belief => Measure::Belief(ChanceBelief::IDENTITY),
            Calculus::LogL => Measure::LogL(LogLikelihood::IDENTITY),
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCalculus(pub String);

impl fmt::Display for UnknownCalculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown calculus '{}' (expected lambda, cf, belief or logl)",
            self.0
        )
    }
}

impl std::error::Error for UnknownCalculus {}

impl FromStr for Calculus {
    type Err = UnknownCalculus;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lambda" => Ok(Calculus::Lambda),
            "cf" => Ok(Calculus::Cf),
            "belief" => Ok(Calculus::Belief),
            "logl" => Ok(Calculus::LogL),
            other => Err(UnknownCalculus(other.to_string())),
        }
    }
}

/// Validates `value` against `[lo, hi]`, snapping values within
/// [`BOUNDARY_SLACK`] of a finite bound onto that bound.
pub(crate) fn check_range(
    calculus: &'static str,
    range: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let err = || Error::OutOfRange {
        calculus,
        value,
        range,
    };
    if value.is_nan() {
        return Err(err());
    }
    if value < lo {
        return if lo - value <= BOUNDARY_SLACK {
            Ok(lo)
        } else {
            Err(err())
        };
    }
    if value > hi {
        return if value - hi <= BOUNDARY_SLACK {
            Ok(hi)
        } else {
            Err(err())
        };
    }
    Ok(value)
}

macro_rules! measure_newtype {
    (
        $(#[$meta:meta])*
        $name:ident, $label:literal, $range:literal, $lo:expr, $hi:expr, $identity:expr
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
        pub struct $name(f64);

        impl $name {
            pub const IDENTITY: $name = $name($identity);

            /// Validated constructor; NaN and out-of-range values are rejected.
            pub fn new(value: f64) -> Result<Self> {
                check_range($label, $range, value, $lo, $hi).map($name)
            }

            /// Clamps a computed value onto the range. Only for results of
            /// formulas that are in range up to rounding.
            #[allow(dead_code)]
            pub(crate) fn saturating(value: f64) -> Self {
                debug_assert!(!value.is_nan(), concat!($label, " formula produced NaN"));
                $name(value.clamp($lo, $hi))
            }

            pub fn value(self) -> f64 {
                self.0
            }

            pub fn is_identity(self) -> bool {
                self.0 == $identity
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }

        impl TryFrom<f64> for $name {
            type Error = Error;

            fn try_from(value: f64) -> Result<Self> {
                $name::new(value)
            }
        }
    };
}

measure_newtype!(
    /// Likelihood ratio L. `+inf` is certainty for H, `0` certainty against.
    LikelihoodRatio, "lambda", "[0, +inf]", 0.0, f64::INFINITY, 1.0
);
measure_newtype!(
    /// Revised certainty factor D.
    CertaintyFactor, "cf", "[-1, 1]", -1.0, 1.0, 0.0
);
measure_newtype!(
    /// Chance-case belief B, i.e. belief equal to plausibility.
    ChanceBelief, "belief", "[0, 1]", 0.0, 1.0, 0.5
);
measure_newtype!(
    /// Log-likelihood weight G = ln L.
    LogLikelihood, "logl", "[-inf, +inf]", f64::NEG_INFINITY, f64::INFINITY, 0.0
);

impl LikelihoodRatio {
    pub const CERTAIN_FOR: LikelihoodRatio = LikelihoodRatio(f64::INFINITY);
    pub const CERTAIN_AGAINST: LikelihoodRatio = LikelihoodRatio(0.0);

    pub fn is_certain(self) -> bool {
        self.0 == 0.0 || self.0 == f64::INFINITY
    }
}

impl CertaintyFactor {
    pub fn is_certain(self) -> bool {
        self.0.abs() == 1.0
    }
}

impl ChanceBelief {
    pub fn is_certain(self) -> bool {
        self.0 == 0.0 || self.0 == 1.0
    }
}

impl LogLikelihood {
    pub fn is_certain(self) -> bool {
        self.0.is_infinite()
    }
}

// -- transforms --------------------------------------------------------------

pub fn l_to_d(l: LikelihoodRatio) -> CertaintyFactor {
    if l.0 == f64::INFINITY {
        return CertaintyFactor(1.0);
    }
    CertaintyFactor::saturating((l.0 - 1.0) / (l.0 + 1.0))
}

pub fn d_to_l(d: CertaintyFactor) -> LikelihoodRatio {
    // d = 1 divides by zero and yields +inf as intended.
    LikelihoodRatio::saturating((1.0 + d.0) / (1.0 - d.0))
}

pub fn l_to_b(l: LikelihoodRatio) -> ChanceBelief {
    if l.0 == f64::INFINITY {
        return ChanceBelief(1.0);
    }
    ChanceBelief::saturating(l.0 / (l.0 + 1.0))
}

pub fn b_to_l(b: ChanceBelief) -> LikelihoodRatio {
    LikelihoodRatio::saturating(b.0 / (1.0 - b.0))
}

pub fn d_to_b(d: CertaintyFactor) -> ChanceBelief {
    ChanceBelief::saturating((1.0 + d.0) / 2.0)
}

pub fn b_to_d(b: ChanceBelief) -> CertaintyFactor {
    CertaintyFactor::saturating(2.0 * b.0 - 1.0)
}

pub fn l_to_g(l: LikelihoodRatio) -> LogLikelihood {
    LogLikelihood(l.0.ln())
}

pub fn g_to_l(g: LogLikelihood) -> LikelihoodRatio {
    LikelihoodRatio(g.0.exp())
}

impl From<LikelihoodRatio> for CertaintyFactor {
    fn from(l: LikelihoodRatio) -> Self {
        l_to_d(l)
    }
}

impl From<CertaintyFactor> for LikelihoodRatio {
    fn from(d: CertaintyFactor) -> Self {
        d_to_l(d)
    }
}

impl From<LikelihoodRatio> for ChanceBelief {
    fn from(l: LikelihoodRatio) -> Self {
        l_to_b(l)
    }
}

impl From<ChanceBelief> for LikelihoodRatio {
    fn from(b: ChanceBelief) -> Self {
        b_to_l(b)
    }
}

impl From<CertaintyFactor> for ChanceBelief {
    fn from(d: CertaintyFactor) -> Self {
        d_to_b(d)
    }
}

impl From<ChanceBelief> for CertaintyFactor {
    fn from(b: ChanceBelief) -> Self {
        b_to_d(b)
    }
}

impl From<LikelihoodRatio> for LogLikelihood {
    fn from(l: LikelihoodRatio) -> Self {
        l_to_g(l)
    }
}

impl From<LogLikelihood> for LikelihoodRatio {
    fn from(g: LogLikelihood) -> Self {
        g_to_l(g)
    }
}

// -- combination rules -------------------------------------------------------

pub fn combine_l(l1: LikelihoodRatio, l2: LikelihoodRatio) -> Result<LikelihoodRatio> {
    if l1.is_identity() {
        return Ok(l2);
    }
    if l2.is_identity() {
        return Ok(l1);
    }
    if l1.is_certain() && l2.is_certain() && l1 != l2 {
        return Err(Error::conflict(Measure::Lambda(l1), Measure::Lambda(l2)));
    }
    Ok(LikelihoodRatio::saturating(l1.0 * l2.0))
}

pub fn combine_d(d1: CertaintyFactor, d2: CertaintyFactor) -> Result<CertaintyFactor> {
    if d1.is_identity() {
        return Ok(d2);
    }
    if d2.is_identity() {
        return Ok(d1);
    }
    if d1.is_certain() && d2.is_certain() && d1 != d2 {
        return Err(Error::conflict(Measure::Cf(d1), Measure::Cf(d2)));
    }
    Ok(CertaintyFactor::saturating(
        (d1.0 + d2.0) / (1.0 + d1.0 * d2.0),
    ))
}

pub fn combine_b(b1: ChanceBelief, b2: ChanceBelief) -> Result<ChanceBelief> {
    if b1.is_identity() {
        return Ok(b2);
    }
    if b2.is_identity() {
        return Ok(b1);
    }
    if b1.is_certain() && b2.is_certain() && b1 != b2 {
        return Err(Error::conflict(Measure::Belief(b1), Measure::Belief(b2)));
    }
    let agree = b1.0 * b2.0;
    let disagree = (1.0 - b1.0) * (1.0 - b2.0);
    Ok(ChanceBelief::saturating(agree / (agree + disagree)))
}

pub fn combine_g(g1: LogLikelihood, g2: LogLikelihood) -> Result<LogLikelihood> {
    if g1.is_certain() && g2.is_certain() && g1 != g2 {
        return Err(Error::conflict(Measure::LogL(g1), Measure::LogL(g2)));
    }
    Ok(LogLikelihood(g1.0 + g2.0))
}

// -- tagged carrier ----------------------------------------------------------

/// A value in exactly one of the four calculi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    Lambda(LikelihoodRatio),
    Cf(CertaintyFactor),
    Belief(ChanceBelief),
    LogL(LogLikelihood),
}

impl Measure {
    pub fn new(calculus: Calculus, value: f64) -> Result<Self> {
        Ok(match calculus {
            Calculus::Lambda => Measure::Lambda(LikelihoodRatio::new(value)?),
            Calculus::Cf => Measure::Cf(CertaintyFactor::new(value)?),
            Calculus::Belief => Measure::Belief(ChanceBelief::new(value)?),
            Calculus::LogL => Measure::LogL(LogLikelihood::new(value)?),
        })
    }

    pub fn calculus(&self) -> Calculus {
        match self {
            Measure::Lambda(_) => Calculus::Lambda,
            Measure::Cf(_) => Calculus::Cf,
            Measure::Belief(_) => Calculus::Belief,
            Measure::LogL(_) => Calculus::LogL,
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Measure::Lambda(l) => l.value(),
            Measure::Cf(d) => d.value(),
            Measure::Belief(b) => b.value(),
            Measure::LogL(g) => g.value(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match *self {
            Measure::Lambda(l) => l.is_identity(),
            Measure::Cf(d) => d.is_identity(),
            Measure::Belief(b) => b.is_identity(),
            Measure::LogL(g) => g.is_identity(),
        }
    }

    pub fn is_certain(&self) -> bool {
        match *self {
            Measure::Lambda(l) => l.is_certain(),
            Measure::Cf(d) => d.is_certain(),
            Measure::Belief(b) => b.is_certain(),
            Measure::LogL(g) => g.is_certain(),
        }
    }

    /// The same evidence read as bearing on ¬H.
    pub fn negate(&self) -> Measure {
        match *self {
            Measure::Lambda(l) => Measure::Lambda(LikelihoodRatio(1.0 / l.0)),
            Measure::Cf(d) => Measure::Cf(CertaintyFactor(-d.0 + 0.0)),
            Measure::Belief(b) => Measure::Belief(ChanceBelief(1.0 - b.0)),
            Measure::LogL(g) => Measure::LogL(LogLikelihood(-g.0 + 0.0)),
        }
    }

    pub fn to_lambda(&self) -> LikelihoodRatio {
        match *self {
            Measure::Lambda(l) => l,
            Measure::Cf(d) => d_to_l(d),
            Measure::Belief(b) => b_to_l(b),
            Measure::LogL(g) => g_to_l(g),
        }
    }

    pub fn to_cf(&self) -> CertaintyFactor {
        match *self {
            Measure::Cf(d) => d,
            Measure::Belief(b) => b_to_d(b),
            _ => l_to_d(self.to_lambda()),
        }
    }

    pub fn to_belief(&self) -> ChanceBelief {
        match *self {
            Measure::Belief(b) => b,
            Measure::Cf(d) => d_to_b(d),
            _ => l_to_b(self.to_lambda()),
        }
    }

    pub fn to_logl(&self) -> LogLikelihood {
        match *self {
            Measure::LogL(g) => g,
            _ => l_to_g(self.to_lambda()),
        }
    }

    pub fn convert(&self, target: Calculus) -> Measure {
        match target {
            Calculus::Lambda => Measure::Lambda(self.to_lambda()),
            Calculus::Cf => Measure::Cf(self.to_cf()),
            Calculus::Belief => Measure::Belief(self.to_belief()),
            Calculus::LogL => Measure::LogL(self.to_logl()),
        }
    }

    /// Native combination rule. Both operands must be in the same calculus;
    /// the right operand is converted otherwise.
    pub fn combine(&self, other: &Measure) -> Result<Measure> {
        Ok(match *self {
            Measure::Lambda(l) => Measure::Lambda(combine_l(l, other.to_lambda())?),
            Measure::Cf(d) => Measure::Cf(combine_d(d, other.to_cf())?),
            Measure::Belief(b) => Measure::Belief(combine_b(b, other.to_belief())?),
            Measure::LogL(g) => Measure::LogL(combine_g(g, other.to_logl())?),
        })
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.calculus(), self.value())
    }
}

pub fn negate(m: Measure) -> Measure {
    m.negate()
}

pub fn convert(m: Measure, target: Calculus) -> Measure {
    m.convert(target)
}

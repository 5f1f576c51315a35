//! Mass functions on the binary frame `{H, ¬H}` and Dempster's rule over
//! them.
//!
//! The general rule keeps mass on the whole frame `Θ = {H, ¬H}`. Restricted
//! to chance masses (nothing on Θ) it reduces to [`combine_b`]; the tests
//! here and the acceptance suite check that reduction numerically.
//!
//! [`combine_b`]: crate::calculi::combine_b

use std::fmt;

use crate::calculi::ChanceBelief;
use crate::error::{Error, Result};

/// Masses must sum to one within this tolerance.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Conflict at or above `1 - CONFLICT_EPSILON` is treated as total.
pub const CONFLICT_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryMass {
    h: f64,
    not_h: f64,
    theta: f64,
}

impl BinaryMass {
    /// The vacuous mass function: everything on Θ.
    pub const VACUOUS: BinaryMass = BinaryMass {
        h: 0.0,
        not_h: 0.0,
        theta: 1.0,
    };

    pub fn new(h: f64, not_h: f64, theta: f64) -> Result<Self> {
        for (name, m) in [("{H}", h), ("{not H}", not_h), ("theta", theta)] {
            if !(0.0..=1.0).contains(&m) {
                return Err(Error::InvalidMass(format!("mass on {name} is {m}")));
            }
        }
        let total = h + not_h + theta;
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMass(format!("masses sum to {total}")));
        }
        Ok(Self { h, not_h, theta })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn not_h(&self) -> f64 {
        self.not_h
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn is_chance(&self) -> bool {
        self.theta == 0.0
    }

    pub fn is_vacuous(&self) -> bool {
        self.theta == 1.0
    }

    pub fn belief_h(&self) -> f64 {
        self.h
    }

    pub fn plausibility_h(&self) -> f64 {
        self.h + self.theta
    }
}

impl fmt::Display for BinaryMass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m(H)={} m(¬H)={} m(Θ)={}",
            self.h, self.not_h, self.theta
        )
    }
}

/// `(b, 1 - b, 0)`: the simple chance mass function for belief `b`.
pub fn chance_mass(b: ChanceBelief) -> BinaryMass {
    BinaryMass {
        h: b.value(),
        not_h: 1.0 - b.value(),
        theta: 0.0,
    }
}

/// Conflict mass `K` between two mass functions.
pub fn conflict(m1: &BinaryMass, m2: &BinaryMass) -> f64 {
    m1.h * m2.not_h + m1.not_h * m2.h
}

/// Dempster's rule on `{H, ¬H}`.
pub fn dempster_combine(m1: &BinaryMass, m2: &BinaryMass) -> Result<BinaryMass> {
    if m1.is_vacuous() {
        return Ok(*m2);
    }
    if m2.is_vacuous() {
        return Ok(*m1);
    }

    // Products landing on each non-empty intersection.
    let h = m1.h * m2.h + m1.h * m2.theta + m1.theta * m2.h;
    let not_h = m1.not_h * m2.not_h + m1.not_h * m2.theta + m1.theta * m2.not_h;
    let theta = m1.theta * m2.theta;

    // The normalizer is 1 - K; summing the surviving products avoids the
    // cancellation in 1 - K when K is close to one.
    let normalizer = h + not_h + theta;
    if normalizer <= CONFLICT_EPSILON {
        return Err(Error::conflict(m1, m2));
    }
    Ok(BinaryMass {
        h: h / normalizer,
        not_h: not_h / normalizer,
        theta: theta / normalizer,
    })
}

pub fn belief_of(m: &BinaryMass) -> Result<ChanceBelief> {
    if !m.is_chance() {
        return Err(Error::NotChanceCase(m.theta));
    }
    ChanceBelief::new(m.h)
}

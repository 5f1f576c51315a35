//! Ground truth for the calculi: exact posteriors of a conditionally
//! independent evidence model, obtained by enumerating the full joint
//! distribution rather than by multiplying likelihood ratios.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::aggregation::{posterior_odds, Probability};
use crate::calculi::{Calculus, LikelihoodRatio, Measure};
use crate::error::{Error, Result};

/// Enumeration is exponential in channel count; this caps it at 2^17 cells.
pub const MAX_CHANNELS: usize = 16;

/// Worst acceptable |calculus posterior - exact posterior|.
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;

/// Bounds for randomly generated probabilities.
const RANDOM_LOW: f64 = 0.01;
const RANDOM_HIGH: f64 = 0.99;

/// `(p(E|H), p(E|¬H))` for one evidence variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub given_h: Probability,
    pub given_not_h: Probability,
}

impl Channel {
    pub fn new(given_h: f64, given_not_h: f64) -> Result<Self> {
        Ok(Self {
            given_h: Probability::new(given_h)?,
            given_not_h: Probability::new(given_not_h)?,
        })
    }

    /// Probability of observing `e` given the hypothesis value `h`.
    fn likelihood(&self, h: bool, e: bool) -> f64 {
        let p = if h { self.given_h } else { self.given_not_h }.value();
        if e {
            p
        } else {
            1.0 - p
        }
    }
}

/// Prior on H plus evidence channels that are independent given H and
/// given ¬H.
#[derive(Debug, Clone, PartialEq)]
pub struct CondIndepModel {
    prior_h: Probability,
    channels: Vec<Channel>,
}

impl CondIndepModel {
    pub fn new(prior_h: Probability, channels: Vec<Channel>) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::InvalidModel(
                "at least one channel is required".into(),
            ));
        }
        if channels.len() > MAX_CHANNELS {
            return Err(Error::InvalidModel(format!(
                "{} channels exceeds the enumeration cap of {MAX_CHANNELS}",
                channels.len()
            )));
        }
        Ok(Self { prior_h, channels })
    }

    pub fn prior_h(&self) -> Probability {
        self.prior_h
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }
}

fn check_observation(model: &CondIndepModel, observed: &[bool]) -> Result<()> {
    if observed.len() != model.channels.len() {
        return Err(Error::InvalidModel(format!(
            "{} observations for {} channels",
            observed.len(),
            model.channels.len()
        )));
    }
    Ok(())
}

/// `p(H | observed)` by brute-force enumeration of every cell of the joint
/// over `(H, E1, ..., En)`.
pub fn exact_posterior(model: &CondIndepModel, observed: &[bool]) -> Result<Probability> {
    check_observation(model, observed)?;
    let n = model.channels.len();
    let observed_bits = observed
        .iter()
        .enumerate()
        .fold(0usize, |acc, (i, &e)| acc | (usize::from(e) << i));

    let prior = model.prior_h.value();
    let mut slice = [0.0f64; 2]; // [¬H, H]
    for cell in 0..(1usize << (n + 1)) {
        let h = cell >> n & 1 == 1;
        let evidence = cell & ((1 << n) - 1);
        let mut joint = if h { prior } else { 1.0 - prior };
        for (i, channel) in model.channels.iter().enumerate() {
            joint *= channel.likelihood(h, evidence >> i & 1 == 1);
        }
        if evidence == observed_bits {
            slice[usize::from(h)] += joint;
        }
    }

    let total = slice[0] + slice[1];
    if total == 0.0 {
        return Err(Error::ZeroProbabilityEvidence);
    }
    Ok(Probability::saturating(slice[1] / total))
}

/// `p(H | observed)` from the two slice products, without enumerating the
/// joint. Used to cross-check [`exact_posterior`].
pub fn slice_posterior(model: &CondIndepModel, observed: &[bool]) -> Result<Probability> {
    check_observation(model, observed)?;
    let slice = |h: bool| {
        let prior = model.prior_h.value();
        model
            .channels
            .iter()
            .zip(observed)
            .fold(if h { prior } else { 1.0 - prior }, |acc, (c, &e)| {
                acc * c.likelihood(h, e)
            })
    };
    let (with_h, without_h) = (slice(true), slice(false));
    if with_h + without_h == 0.0 {
        return Err(Error::ZeroProbabilityEvidence);
    }
    Ok(Probability::saturating(with_h / (with_h + without_h)))
}

/// `p(Ei|H) / p(Ei|¬H)`.
pub fn lambda_of(model: &CondIndepModel, index: usize) -> Result<LikelihoodRatio> {
    let channel = model
        .channels
        .get(index)
        .ok_or_else(|| Error::InvalidModel(format!("no channel {index}")))?;
    let (num, den) = (channel.given_h.value(), channel.given_not_h.value());
    if num == 0.0 && den == 0.0 {
        return Err(Error::UndefinedRatio(index));
    }
    LikelihoodRatio::new(num / den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub exact_posterior: Probability,
    /// One posterior per calculus, in [`Calculus::ALL`] order.
    pub calculus_posteriors: Vec<(Calculus, Probability)>,
    pub max_abs_error: f64,
}

/// Posterior with every evidence variable observed true, computed through
/// each calculus's own combination rule and compared with enumeration.
pub fn check_agreement(model: &CondIndepModel) -> Result<AgreementReport> {
    let all_true = vec![true; model.channels.len()];
    let exact = exact_posterior(model, &all_true)?;
    let lambdas = (0..model.channels.len())
        .map(|i| lambda_of(model, i))
        .collect::<Result<Vec<_>>>()?;

    let mut calculus_posteriors = Vec::with_capacity(Calculus::ALL.len());
    let mut max_abs_error = 0.0f64;
    for calculus in Calculus::ALL {
        let mut aggregate = calculus.identity();
        for &l in &lambdas {
            aggregate = aggregate.combine(&Measure::Lambda(l).convert(calculus))?;
        }
        let odds = posterior_odds(model.prior_h.to_odds(), aggregate.to_lambda())?;
        let posterior = odds.to_probability();
        max_abs_error = max_abs_error.max((posterior.value() - exact.value()).abs());
        calculus_posteriors.push((calculus, posterior));
    }

    Ok(AgreementReport {
        exact_posterior: exact,
        calculus_posteriors,
        max_abs_error,
    })
}

/// Random model with prior and channel probabilities in `[0.01, 0.99)`.
/// Each channel is flipped with probability one half so that evidence
/// against H is as common as evidence for it.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, max_channels: usize) -> CondIndepModel {
    assert!((1..=MAX_CHANNELS).contains(&max_channels));
    let prior = Probability::saturating(rng.gen_range(RANDOM_LOW..RANDOM_HIGH));
    let n = rng.gen_range(1..=max_channels);
    let channels = (0..n)
        .map(|_| {
            let a = Probability::saturating(rng.gen_range(RANDOM_LOW..RANDOM_HIGH));
            let b = Probability::saturating(rng.gen_range(RANDOM_LOW..RANDOM_HIGH));
            let (given_h, given_not_h) = if rng.gen_bool(0.5) { (b, a) } else { (a, b) };
            Channel {
                given_h,
                given_not_h,
            }
        })
        .collect();
    CondIndepModel::new(prior, channels).expect("channel count is within bounds")
}

/// Model `index` of the set generated from `seed`. Each model has its own
/// ChaCha stream, so a model does not depend on how many precede it.
pub fn seeded_model(seed: u64, index: u64, max_channels: usize) -> CondIndepModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    random_model(&mut rng, max_channels)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub seed: u64,
    pub models: usize,
    pub max_channels: usize,
    pub worst_error: f64,
    pub worst_model: usize,
    pub failures: usize,
    pub tolerance: f64,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn run_check(seed: u64, models: usize, max_channels: usize) -> Result<CheckSummary> {
    if models == 0 {
        return Err(Error::InvalidModel("at least one model is required".into()));
    }
    if !(1..=MAX_CHANNELS).contains(&max_channels) {
        return Err(Error::InvalidModel(format!(
            "max channels must be in 1..={MAX_CHANNELS}, got {max_channels}"
        )));
    }
    let mut summary = CheckSummary {
        seed,
        models,
        max_channels,
        worst_error: 0.0,
        worst_model: 0,
        failures: 0,
        tolerance: AGREEMENT_TOLERANCE,
    };
    for index in 0..models {
        let model = seeded_model(seed, index as u64, max_channels);
        let report = check_agreement(&model)?;
        if report.max_abs_error.is_nan() || report.max_abs_error >= AGREEMENT_TOLERANCE {
            summary.failures += 1;
        }
        if report.max_abs_error > summary.worst_error {
            summary.worst_error = report.max_abs_error;
            summary.worst_model = index;
        }
    }
    Ok(summary)
}

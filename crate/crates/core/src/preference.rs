//! Expected qualitative utility: lotteries are ranked by comparing their
//! expected utilities with the qualitative order `≻` rather than `>`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hyperreal::{Hyperreal, QualOrdering, RatioClass, Rational};
use crate::mixture::{Act, Lottery, LotterySpace, Outcome};
use crate::subjective::ProbabilityMeasure;

/// Utilities of the outcomes, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityModel {
    order: Vec<Outcome>,
    values: BTreeMap<Outcome, Hyperreal>,
}

impl UtilityModel {
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Outcome, Hyperreal)>,
    {
        let mut order = Vec::new();
        let mut values = BTreeMap::new();
        for (o, u) in entries {
            if values.contains_key(&o) {
                return Err(Error::DuplicateOutcome(o.id().to_string()));
            }
            order.push(o.clone());
            values.insert(o, u);
        }
        Ok(UtilityModel { order, values })
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.order
    }

    pub fn utility(&self, o: &Outcome) -> Result<&Hyperreal> {
        self.values
            .get(o)
            .ok_or_else(|| Error::UnknownOutcome(o.id().to_string()))
    }

    /// Entries in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = (&Outcome, &Hyperreal)> {
        self.order.iter().map(move |o| (o, &self.values[o]))
    }

    /// The model `c·u`.
    pub fn scaled(&self, c: &Hyperreal) -> Self {
        self.map(|u| c * u)
    }

    /// The model `d + u`.
    pub fn shifted(&self, d: &Hyperreal) -> Self {
        self.map(|u| d + u)
    }

    fn map(&self, f: impl Fn(&Hyperreal) -> Hyperreal) -> Self {
        UtilityModel {
            order: self.order.clone(),
            values: self.values.iter().map(|(o, u)| (o.clone(), f(u))).collect(),
        }
    }

    /// Fails unless every outcome of `space` has a utility that is strictly
    /// positive in the total order.
    pub fn ensure_positive(&self, space: &LotterySpace) -> Result<()> {
        for o in space.outcomes() {
            if !self.utility(o)?.is_positive() {
                return Err(Error::NonPositiveModel(o.id().to_string()));
            }
        }
        Ok(())
    }
}

/// Verdict of comparing a first option against a second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreferenceVerdict {
    Prefers,
    Indifferent,
    Dispreferred,
}

impl PreferenceVerdict {
    pub fn reverse(self) -> Self {
        match self {
            PreferenceVerdict::Prefers => PreferenceVerdict::Dispreferred,
            PreferenceVerdict::Indifferent => PreferenceVerdict::Indifferent,
            PreferenceVerdict::Dispreferred => PreferenceVerdict::Prefers,
        }
    }

    pub fn is_strict(self) -> bool {
        self == PreferenceVerdict::Prefers
    }
}

impl From<QualOrdering> for PreferenceVerdict {
    fn from(o: QualOrdering) -> Self {
        match o {
            QualOrdering::Greater => PreferenceVerdict::Prefers,
            QualOrdering::Equivalent => PreferenceVerdict::Indifferent,
            QualOrdering::Less => PreferenceVerdict::Dispreferred,
        }
    }
}

impl fmt::Display for PreferenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PreferenceVerdict::Prefers => "Prefers",
            PreferenceVerdict::Indifferent => "Indifferent",
            PreferenceVerdict::Dispreferred => "Dispreferred",
        })
    }
}

/// `u(p) = Σ p(o)·u(o)`.
pub fn expected_utility(m: &UtilityModel, p: &Lottery) -> Result<Hyperreal> {
    let parts = p
        .iter()
        .map(|(o, w)| Ok((w, m.utility(o)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Hyperreal::weighted_sum(parts))
}

/// `p > q` iff `u(p) ≻ u(q)`.
pub fn compare_lotteries(m: &UtilityModel, p: &Lottery, q: &Lottery) -> Result<PreferenceVerdict> {
    let (up, uq) = (expected_utility(m, p)?, expected_utility(m, q)?);
    Ok(up.qual_compare(&uq).into())
}

/// Smallest expected utility over the generators, in the total order.
pub(crate) fn min_generator_utility(m: &UtilityModel, space: &LotterySpace) -> Result<Hyperreal> {
    space
        .generators()
        .iter()
        .map(|g| expected_utility(m, g))
        .try_fold(None::<Hyperreal>, |acc, u| {
            let u = u?;
            Ok::<_, Error>(Some(match acc {
                Some(best) if best <= u => best,
                _ => u,
            }))
        })?
        .ok_or(Error::EmptyGenerators)
}

/// Decides whether `p` overrides `q` (`p ≫ q`).
///
/// `p ≫ q` holds iff `u(p)/u(q)` is infinite, or `p > q` and `q` is
/// minimal in the mixture space. Every mixture's utility lies above the
/// smallest generator utility in the total order, and `x ≻ y ≥ z` implies
/// `x ≻ z`, so minimality only needs to be tested against that generator.
pub fn overrides(m: &UtilityModel, space: &LotterySpace, p: &Lottery, q: &Lottery) -> Result<bool> {
    m.ensure_positive(space)?;
    space.check_support(p)?;
    space.check_support(q)?;
    let (up, uq) = (expected_utility(m, p)?, expected_utility(m, q)?);
    if up.classify_ratio(&uq)?.is_infinite() {
        return Ok(true);
    }
    if !up.qual_gt(&uq) {
        return Ok(false);
    }
    let floor = min_generator_utility(m, space)?;
    Ok(uq.qual_compare(&floor).is_le())
}

/// Subjective expected utility of an act: `Σₛ μ(s)·u(a(s))`.
pub fn act_utility(m: &UtilityModel, measure: &ProbabilityMeasure, a: &Act) -> Result<Hyperreal> {
    if !a.states().eq(measure.states_sorted()) {
        return Err(Error::StateMismatch);
    }
    let mut total = Hyperreal::zero();
    for (s, l) in a.iter() {
        let w = measure.weight(s)?;
        if w.is_zero() {
            continue;
        }
        total += &expected_utility(m, l)?.scale(&w);
    }
    Ok(total)
}

/// Maximin as a signed nonstandard utility over outcomes ranked worst
/// (`outcomes[0]`) to best: `u(xᵢ) = −εⁱ`.
pub fn maximin_model(outcomes: &[Outcome]) -> Result<UtilityModel> {
    UtilityModel::new(
        outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), Hyperreal::monomial(-Rational::one(), i as i64))),
    )
}

/// Direct maximin rule for lotteries with at most two supported outcomes:
/// the better worst outcome wins; on a tie, the lottery putting less
/// probability on that worst outcome wins.
pub fn maximin_oracle(p: &Lottery, q: &Lottery, order: &[Outcome]) -> Result<PreferenceVerdict> {
    let worst = |l: &Lottery| -> Result<(usize, Rational)> {
        if l.support_len() > 2 {
            return Err(Error::UnsupportedSupport(l.support_len()));
        }
        let mut best: Option<(usize, Rational)> = None;
        for (o, w) in l.iter() {
            let rank = order
                .iter()
                .position(|x| x == o)
                .ok_or_else(|| Error::UnknownOutcome(o.id().to_string()))?;
            if best.as_ref().is_none_or(|(r, _)| rank < *r) {
                best = Some((rank, w.clone()));
            }
        }
        Ok(best.expect("lotteries have nonempty support"))
    };
    let (rp, wp) = worst(p)?;
    let (rq, wq) = worst(q)?;
    Ok(match rp.cmp(&rq).then_with(|| wq.cmp(&wp)) {
        std::cmp::Ordering::Greater => PreferenceVerdict::Prefers,
        std::cmp::Ordering::Equal => PreferenceVerdict::Indifferent,
        std::cmp::Ordering::Less => PreferenceVerdict::Dispreferred,
    })
}

/// Convenience for classifying `u(p) / u(q)`.
pub fn utility_ratio(m: &UtilityModel, p: &Lottery, q: &Lottery) -> Result<RatioClass> {
    Ok(expected_utility(m, p)?.classify_ratio(&expected_utility(m, q)?)?)
}

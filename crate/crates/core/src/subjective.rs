//! Preferences over acts (maps from states to lotteries), null states, the
//! two act-level postulates, and exact recovery of the subjective
//! probability measure behind an expected-qualitative-utility preference.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hyperreal::{Hyperreal, RatioClass, Rational};
use crate::mixture::{Act, Lottery, LotterySpace, State};
use crate::postulates::{Method, Postulate, PostulateReport, Witness};
use crate::preference::{
    act_utility, expected_utility, min_generator_utility, PreferenceVerdict, UtilityModel,
};

/// Standard probability weights on a finite state set, kept in declaration
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityMeasure {
    order: Vec<State>,
    weights: BTreeMap<State, Rational>,
}

impl ProbabilityMeasure {
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (State, Rational)>,
    {
        let mut order = Vec::new();
        let mut weights = BTreeMap::new();
        for (s, w) in entries {
            if w.is_negative() {
                return Err(Error::InvalidMeasure(format!(
                    "negative weight {w} on '{s}'"
                )));
            }
            if weights.contains_key(&s) {
                return Err(Error::DuplicateState(s.id().to_string()));
            }
            order.push(s.clone());
            weights.insert(s, w);
        }
        if order.is_empty() {
            return Err(Error::EmptyStateSet);
        }
        let total: Rational = weights.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(ProbabilityMeasure { order, weights })
    }

    pub fn states(&self) -> &[State] {
        &self.order
    }

    pub(crate) fn states_sorted(&self) -> impl Iterator<Item = &State> {
        self.weights.keys()
    }

    pub fn weight(&self, s: &State) -> Result<Rational> {
        self.weights
            .get(s)
            .cloned()
            .ok_or_else(|| Error::UnknownState(s.id().to_string()))
    }

    /// Weights in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = (&State, &Rational)> {
        self.order.iter().map(move |s| (s, &self.weights[s]))
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }
}

impl fmt::Display for ProbabilityMeasure {
    /// One `state = weight` line per state.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, w) in self.iter() {
            writeln!(f, "{s} = {w}")?;
        }
        Ok(())
    }
}

/// A preference relation over acts.
pub trait ActPreference {
    /// States in declaration order.
    fn states(&self) -> &[State];

    /// Lotteries used to probe the relation; must include the generators.
    fn probes(&self) -> &[Lottery];

    fn compare_acts(&self, a: &Act, b: &Act) -> Result<PreferenceVerdict>;

    /// Whether `a ≫ b` on acts.
    fn overrides_acts(&self, a: &Act, b: &Act) -> Result<bool>;

    fn constant(&self, l: &Lottery) -> Result<Act> {
        Act::constant(self.states(), l)
    }
}

/// Act preferences induced by a positive utility model and a probability
/// measure: `a > b` iff `Σ μ(s)u(a(s)) ≻ Σ μ(s)u(b(s))`.
#[derive(Debug, Clone)]
pub struct ActPreferenceOracle {
    model: UtilityModel,
    measure: ProbabilityMeasure,
    space: LotterySpace,
}

impl ActPreferenceOracle {
    pub fn new(
        model: UtilityModel,
        measure: ProbabilityMeasure,
        space: LotterySpace,
    ) -> Result<Self> {
        model.ensure_positive(&space)?;
        Ok(ActPreferenceOracle {
            model,
            measure,
            space,
        })
    }

    pub fn model(&self) -> &UtilityModel {
        &self.model
    }

    pub fn measure(&self) -> &ProbabilityMeasure {
        &self.measure
    }

    pub fn space(&self) -> &LotterySpace {
        &self.space
    }

    pub fn act_value(&self, a: &Act) -> Result<Hyperreal> {
        for (_, l) in a.iter() {
            self.space.check_support(l)?;
        }
        act_utility(&self.model, &self.measure, a)
    }

    /// Generators with the largest and smallest expected utility in the
    /// total order, earliest on ties.
    pub fn extremes(&self) -> Result<(Lottery, Lottery)> {
        let mut scored = Vec::new();
        for g in self.space.generators() {
            scored.push((expected_utility(&self.model, g)?, g));
        }
        let best = scored
            .iter()
            .fold(&scored[0], |acc, x| if x.0 > acc.0 { x } else { acc });
        let worst = scored
            .iter()
            .fold(&scored[0], |acc, x| if x.0 < acc.0 { x } else { acc });
        Ok((best.1.clone(), worst.1.clone()))
    }

    /// The act `c_t`: `h` on `t`, `l` everywhere else.
    fn indicator(&self, t: &State, h: &Lottery, l: &Lottery) -> Result<Act> {
        self.constant(l)?.with(t, h.clone())
    }
}

impl ActPreference for ActPreferenceOracle {
    fn states(&self) -> &[State] {
        self.measure.states()
    }

    fn probes(&self) -> &[Lottery] {
        self.space.generators()
    }

    fn compare_acts(&self, a: &Act, b: &Act) -> Result<PreferenceVerdict> {
        Ok(self.act_value(a)?.qual_compare(&self.act_value(b)?).into())
    }

    /// Same decision procedure as for lotteries; the least act value is
    /// that of the constant act on the worst generator.
    fn overrides_acts(&self, a: &Act, b: &Act) -> Result<bool> {
        let (ua, ub) = (self.act_value(a)?, self.act_value(b)?);
        if ua.classify_ratio(&ub)?.is_infinite() {
            return Ok(true);
        }
        if !ua.qual_gt(&ub) {
            return Ok(false);
        }
        let floor = min_generator_utility(&self.model, &self.space)?;
        Ok(ub.qual_compare(&floor).is_le())
    }
}

/// `t` is null iff every pair of acts that agree off `t` is indifferent.
///
/// Pairs are built from `probes`: a common background lottery on every
/// other state and two probe lotteries on `t`.
pub fn is_null<O: ActPreference + ?Sized>(o: &O, t: &State, probes: &[Lottery]) -> Result<bool> {
    if !o.states().contains(t) {
        return Err(Error::UnknownState(t.id().to_string()));
    }
    for background in probes {
        let base = o.constant(background)?;
        for (i, x) in probes.iter().enumerate() {
            let ax = base.with(t, x.clone())?;
            for y in &probes[i + 1..] {
                let ay = base.with(t, y.clone())?;
                if o.compare_acts(&ax, &ay)? != PreferenceVerdict::Indifferent {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// States on which `a` and `b` differ, in declaration order.
fn differing_states<'a>(states: &'a [State], a: &Act, b: &Act) -> Vec<&'a State> {
    states.iter().filter(|s| a.get(s) != b.get(s)).collect()
}

/// Checks `a > b ⇒ a(s₀) > b(s₀)` on act pairs that agree everywhere but
/// (at most) one state `s₀`. Both orientations of every pair are checked.
pub fn check_a4<O: ActPreference + ?Sized>(o: &O, pairs: &[(Act, Act)]) -> Result<PostulateReport> {
    for (a, b) in pairs {
        let diff = differing_states(o.states(), a, b);
        if diff.len() > 1 {
            return Err(Error::PreconditionViolated(format!(
                "acts differ on {} states",
                diff.len()
            )));
        }
        let s0 = diff.first().copied().unwrap_or(&o.states()[0]);
        let (la, lb) = (
            a.get(s0)
                .ok_or_else(|| Error::UnknownState(s0.id().to_string()))?,
            b.get(s0)
                .ok_or_else(|| Error::UnknownState(s0.id().to_string()))?,
        );
        let (ca, cb) = (o.constant(la)?, o.constant(lb)?);
        let acts = o.compare_acts(a, b)?;
        let consts = o.compare_acts(&ca, &cb)?;
        let broken = (acts == PreferenceVerdict::Prefers && consts != PreferenceVerdict::Prefers)
            || (acts == PreferenceVerdict::Dispreferred
                && consts != PreferenceVerdict::Dispreferred);
        if broken {
            return Ok(PostulateReport::failing(
                Postulate::A4Prime,
                Method::GridChecked,
                Witness::detail(format!(
                    "state {s0}: acts {acts} but constant acts {consts} ({la} vs {lb})"
                )),
            ));
        }
    }
    Ok(PostulateReport::holding(
        Postulate::A4Prime,
        Method::GridChecked,
        None,
    ))
}

/// Checks `a(t) ≫ a ⇒ t is null` for every state and every sampled act.
pub fn check_a5<O: ActPreference + ?Sized>(o: &O, acts: &[Act]) -> Result<PostulateReport> {
    let probes = o.probes().to_vec();
    let mut null_cache: BTreeMap<State, bool> = BTreeMap::new();
    for t in o.states() {
        for a in acts {
            let at = a
                .get(t)
                .ok_or_else(|| Error::UnknownState(t.id().to_string()))?;
            if !o.overrides_acts(&o.constant(at)?, a)? {
                continue;
            }
            let null = match null_cache.get(t) {
                Some(n) => *n,
                None => {
                    let n = is_null(o, t, &probes)?;
                    null_cache.insert(t.clone(), n);
                    n
                }
            };
            if !null {
                return Ok(PostulateReport::failing(
                    Postulate::A5Prime,
                    Method::GridChecked,
                    Witness::detail(format!("state {t} is not null, yet {at} overrides an act")),
                ));
            }
        }
    }
    Ok(PostulateReport::holding(
        Postulate::A5Prime,
        Method::GridChecked,
        None,
    ))
}

/// Result of extracting the subjective measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub measure: ProbabilityMeasure,
    pub null_states: Vec<State>,
}

/// Recovers the unique probability measure behind the oracle.
///
/// With `h`/`l` the best/worst generators and `c_t` the act giving `h` on
/// `t` and `l` elsewhere, the weight of a non-null state is the standard
/// part of `(U(c_t) − U(l)) / (U(h) − U(l))`. Each weight is re-verified
/// by checking `c_t ∼ p(t)·h + (1 − p(t))·l` before returning.
pub fn extract_probabilities(o: &ActPreferenceOracle) -> Result<Extraction> {
    let (h, l) = o.extremes()?;
    let (hbar, lbar) = (o.constant(&h)?, o.constant(&l)?);
    if o.compare_acts(&hbar, &lbar)? != PreferenceVerdict::Prefers {
        return Err(Error::TrivialRelation);
    }
    let (uh, ul) = (o.act_value(&hbar)?, o.act_value(&lbar)?);
    let span = &uh - &ul;
    let probes = o.probes().to_vec();

    let mut weights = Vec::new();
    let mut null_states = Vec::new();
    for t in o.states() {
        let ct = o.indicator(t, &h, &l)?;
        let p = if is_null(o, t, &probes)? {
            null_states.push(t.clone());
            Rational::zero()
        } else {
            match (&o.act_value(&ct)? - &ul).classify_ratio(&span)? {
                RatioClass::Appreciable(r) => r,
                RatioClass::Infinitesimal => Rational::zero(),
                RatioClass::Infinite => {
                    return Err(Error::ExtractionFailure(format!(
                        "state {t}: indicator act lies infinitely above the best lottery"
                    )))
                }
            }
        };
        let target = Act::mix(&p, &hbar, &lbar)?;
        if o.compare_acts(&ct, &target)? != PreferenceVerdict::Indifferent {
            return Err(Error::ExtractionFailure(format!(
                "state {t}: indicator act is not indifferent to the {p}-mixture of best and worst"
            )));
        }
        weights.push((t.clone(), p));
    }
    let total: Rational = weights.iter().map(|(_, w)| w.clone()).sum();
    if !total.is_one() {
        return Err(Error::ExtractionFailure(format!(
            "recovered weights sum to {total}"
        )));
    }
    Ok(Extraction {
        measure: ProbabilityMeasure::new(weights)?,
        null_states,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniquenessReport {
    /// Every nonzero perturbation broke the defining indifference and every
    /// zero perturbation kept it.
    Unique { checked: usize, skipped: usize },
    /// A perturbed weight that behaved like the extracted one.
    Ambiguous { state: State, weight: Rational },
    /// Best and worst lotteries are indifferent; nothing to check.
    Trivial,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        matches!(self, UniquenessReport::Unique { .. })
    }
}

/// For each state and perturbation `δ`, tests whether
/// `c_t ∼ (p(t)+δ)·h + (1 − p(t) − δ)·l`. Perturbed weights outside `[0, 1]`
/// are skipped.
pub fn uniqueness_check(
    o: &ActPreferenceOracle,
    extracted: &ProbabilityMeasure,
    perturbations: &[Rational],
) -> Result<UniquenessReport> {
    let (h, l) = o.extremes()?;
    let (hbar, lbar) = (o.constant(&h)?, o.constant(&l)?);
    if o.compare_acts(&hbar, &lbar)? != PreferenceVerdict::Prefers {
        return Ok(UniquenessReport::Trivial);
    }
    let (mut checked, mut skipped) = (0, 0);
    for t in o.states() {
        let ct = o.indicator(t, &h, &l)?;
        let base = extracted.weight(t)?;
        for delta in perturbations {
            let w = &base + delta;
            if w.is_negative() || w > Rational::one() {
                skipped += 1;
                continue;
            }
            checked += 1;
            let indifferent = o.compare_acts(&ct, &Act::mix(&w, &hbar, &lbar)?)?
                == PreferenceVerdict::Indifferent;
            if indifferent != delta.is_zero() {
                return Ok(UniquenessReport::Ambiguous {
                    state: t.clone(),
                    weight: w,
                });
            }
        }
    }
    Ok(UniquenessReport::Unique { checked, skipped })
}

/// Every act assigning one of `lotteries` to each state.
pub fn enumerate_acts(states: &[State], lotteries: &[Lottery]) -> Result<Vec<Act>> {
    let mut acts: Vec<Vec<(State, Lottery)>> = vec![Vec::new()];
    for s in states {
        acts = acts
            .into_iter()
            .flat_map(|prefix| {
                lotteries.iter().map(move |l| {
                    let mut next = prefix.clone();
                    next.push((s.clone(), l.clone()));
                    next
                })
            })
            .collect();
    }
    acts.into_iter().map(Act::new).collect()
}

/// Pairs `(a, a[s ↦ x])` for every act, state and replacement lottery.
pub fn single_state_variations(
    acts: &[Act],
    states: &[State],
    lotteries: &[Lottery],
) -> Result<Vec<(Act, Act)>> {
    let mut out = Vec::new();
    for a in acts {
        for s in states {
            for x in lotteries {
                if a.get(s) != Some(x) {
                    out.push((a.clone(), a.with(s, x.clone())?));
                }
            }
        }
    }
    Ok(out)
}

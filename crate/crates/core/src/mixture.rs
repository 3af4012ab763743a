//! Outcomes, lotteries, acts and their convex combinations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hyperreal::Rational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Outcome(String);

impl Outcome {
    pub fn new(id: impl Into<String>) -> Self {
        Outcome(id.into())
    }

    pub fn id(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(String);

impl State {
    pub fn new(id: impl Into<String>) -> Self {
        State(id.into())
    }

    pub fn id(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn check_weight(lambda: &Rational) -> Result<()> {
    if lambda.is_negative() || *lambda > Rational::one() {
        return Err(Error::WeightOutOfRange(lambda.clone()));
    }
    Ok(())
}

/// A finitely supported probability distribution with exact weights.
///
/// Probabilities are nonnegative, sum to exactly one, and zero entries are
/// never stored, so two lotteries are equal iff they are the same
/// distribution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lottery {
    probs: BTreeMap<Outcome, Rational>,
}

impl Lottery {
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Outcome, Rational)>,
    {
        let mut probs: BTreeMap<Outcome, Rational> = BTreeMap::new();
        for (o, p) in entries {
            if p.is_negative() {
                return Err(Error::InvalidLottery(format!(
                    "negative probability {p} on '{o}'"
                )));
            }
            *probs.entry(o).or_insert_with(Rational::zero) += p;
        }
        probs.retain(|_, p| !p.is_zero());
        let total: Rational = probs.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidLottery(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Lottery { probs })
    }

    /// The degenerate lottery `δ(o)`.
    pub fn point_mass(o: Outcome) -> Self {
        Lottery {
            probs: BTreeMap::from([(o, Rational::one())]),
        }
    }

    pub fn prob(&self, o: &Outcome) -> Rational {
        self.probs.get(o).cloned().unwrap_or_else(Rational::zero)
    }

    /// Supported outcomes with their (positive) probabilities.
    pub fn iter(&self) -> impl Iterator<Item = (&Outcome, &Rational)> {
        self.probs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Outcome> {
        self.probs.keys()
    }

    pub fn support_len(&self) -> usize {
        self.probs.len()
    }

    /// `λ·p + (1 − λ)·q`, computed outcome-wise.
    pub fn mix(lambda: &Rational, p: &Lottery, q: &Lottery) -> Result<Lottery> {
        check_weight(lambda)?;
        let mu = Rational::one() - lambda;
        let mut probs: BTreeMap<Outcome, Rational> = BTreeMap::new();
        for (o, w) in p.iter() {
            *probs.entry(o.clone()).or_insert_with(Rational::zero) += lambda * w;
        }
        for (o, w) in q.iter() {
            *probs.entry(o.clone()).or_insert_with(Rational::zero) += &mu * w;
        }
        probs.retain(|_, w| !w.is_zero());
        Ok(Lottery { probs })
    }

    /// `Σ wᵢ·lotteryᵢ` for nonnegative weights summing to one.
    pub fn combine<'a, I>(parts: I) -> Result<Lottery>
    where
        I: IntoIterator<Item = (&'a Rational, &'a Lottery)>,
    {
        let mut total = Rational::zero();
        let mut probs: BTreeMap<Outcome, Rational> = BTreeMap::new();
        for (w, l) in parts {
            check_weight(w)?;
            total += w;
            for (o, p) in l.iter() {
                *probs.entry(o.clone()).or_insert_with(Rational::zero) += w * p;
            }
        }
        if !total.is_one() {
            return Err(Error::InvalidLottery(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        probs.retain(|_, w| !w.is_zero());
        Ok(Lottery { probs })
    }
}

impl fmt::Display for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (o, p)) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{p} {o}")?;
        }
        Ok(())
    }
}

/// Free function form of [`Lottery::mix`].
pub fn mix(lambda: &Rational, p: &Lottery, q: &Lottery) -> Result<Lottery> {
    Lottery::mix(lambda, p, q)
}

/// A finite outcome set together with the finitely many lotteries that
/// generate the mixture space under convex combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LotterySpace {
    outcomes: Vec<Outcome>,
    generators: Vec<Lottery>,
}

impl LotterySpace {
    pub fn new(outcomes: Vec<Outcome>, generators: Vec<Lottery>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for o in &outcomes {
            if !seen.insert(o) {
                return Err(Error::DuplicateOutcome(o.id().to_string()));
            }
        }
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let space = LotterySpace {
            outcomes,
            generators,
        };
        for g in &space.generators {
            space.check_support(g)?;
        }
        Ok(space)
    }

    /// The simplex over `outcomes`: generators are the point masses, in
    /// declaration order.
    pub fn simplex(outcomes: Vec<Outcome>) -> Result<Self> {
        let generators = outcomes.iter().cloned().map(Lottery::point_mass).collect();
        Self::new(outcomes, generators)
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn generators(&self) -> &[Lottery] {
        &self.generators
    }

    pub fn check_support(&self, l: &Lottery) -> Result<()> {
        match l.support().find(|o| !self.outcomes.contains(o)) {
            Some(o) => Err(Error::UnknownOutcome(o.id().to_string())),
            None => Ok(()),
        }
    }

    /// Lottery `Σ wᵢ gᵢ` for a weight vector over the generators.
    pub fn mixture(&self, weights: &[Rational]) -> Result<Lottery> {
        if weights.len() != self.generators.len() {
            return Err(Error::InvalidLottery(format!(
                "expected {} generator weights, got {}",
                self.generators.len(),
                weights.len()
            )));
        }
        Lottery::combine(weights.iter().zip(self.generators.iter()))
    }
}

/// All weight vectors of length `n` with entries `k / denom` summing to 1,
/// in lexicographic order of numerators.
pub fn simplex_grid(n: usize, denom: u32) -> Vec<Vec<Rational>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(n - 1, left - k, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 || denom == 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    rec(n, denom, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|v| {
            v.into_iter()
                .map(|k| crate::hyperreal::rational(k as i64, denom as i64))
                .collect()
        })
        .collect()
}

/// A map from states to lotteries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Act {
    assignment: BTreeMap<State, Lottery>,
}

impl Act {
    pub fn new<I>(assignment: I) -> Result<Self>
    where
        I: IntoIterator<Item = (State, Lottery)>,
    {
        let mut map = BTreeMap::new();
        for (s, l) in assignment {
            if map.contains_key(&s) {
                return Err(Error::DuplicateState(s.id().to_string()));
            }
            map.insert(s, l);
        }
        if map.is_empty() {
            return Err(Error::EmptyStateSet);
        }
        Ok(Act { assignment: map })
    }

    /// The act assigning `p` to every state.
    pub fn constant(states: &[State], p: &Lottery) -> Result<Self> {
        Self::new(states.iter().map(|s| (s.clone(), p.clone())))
    }

    pub fn get(&self, s: &State) -> Option<&Lottery> {
        self.assignment.get(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&State, &Lottery)> {
        self.assignment.iter()
    }

    pub fn states(&self) -> impl Iterator<Item = &State> {
        self.assignment.keys()
    }

    pub fn same_states(&self, other: &Act) -> bool {
        self.assignment.keys().eq(other.assignment.keys())
    }

    /// Copy of this act with the lottery at `s` replaced.
    pub fn with(&self, s: &State, l: Lottery) -> Result<Act> {
        if !self.assignment.contains_key(s) {
            return Err(Error::UnknownState(s.id().to_string()));
        }
        let mut out = self.clone();
        out.assignment.insert(s.clone(), l);
        Ok(out)
    }

    /// `λ·a + (1 − λ)·b`, defined state by state.
    pub fn mix(lambda: &Rational, a: &Act, b: &Act) -> Result<Act> {
        check_weight(lambda)?;
        if !a.same_states(b) {
            return Err(Error::StateMismatch);
        }
        let assignment = a
            .assignment
            .iter()
            .zip(b.assignment.values())
            .map(|((s, pa), pb)| Ok((s.clone(), Lottery::mix(lambda, pa, pb)?)))
            .collect::<Result<_>>()?;
        Ok(Act { assignment })
    }
}

pub fn mix_act(lambda: &Rational, a: &Act, b: &Act) -> Result<Act> {
    Act::mix(lambda, a, b)
}

pub fn constant_act(states: &[State], p: &Lottery) -> Result<Act> {
    Act::constant(states, p)
}

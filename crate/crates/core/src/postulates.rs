//! Exact verification of the ordering, independence and continuity
//! postulates for preferences backed by a utility model.
//!
//! Universally quantified statements over standard weights are decided
//! symbolically from the ratio of expected utilities and cross-checked on a
//! grid of weights. Existential statements produce a witness that is
//! re-verified exactly before it is reported.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hyperreal::{rational, Hyperreal, RatioClass, Rational};
use crate::mixture::{Lottery, LotterySpace};
use crate::preference::{
    compare_lotteries, expected_utility, overrides, PreferenceVerdict, UtilityModel,
};

/// Default number of grid cells: weights `1/8, …, 7/8`.
pub const DEFAULT_GRID: u32 = 8;
/// Default largest denominator in continuity searches.
pub const DEFAULT_DENOMINATOR_BOUND: u32 = 64;

const MAX_HALVINGS: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Postulate {
    /// `>` is a weak order.
    A1,
    /// Classical independence.
    A2,
    /// Independence unless the common prize overrides.
    A2Prime,
    /// Classical continuity.
    A3,
    /// Upper half of continuity.
    A3Prime,
    /// Lower half of continuity, unless `p ≫ q`.
    A3DoublePrime,
    /// State-wise monotonicity of acts.
    A4Prime,
    /// Overriding outcomes only on null states.
    A5Prime,
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Postulate::A1 => "A1",
            Postulate::A2 => "A2",
            Postulate::A2Prime => "A'2",
            Postulate::A3 => "A3",
            Postulate::A3Prime => "A'3",
            Postulate::A3DoublePrime => "A''3",
            Postulate::A4Prime => "A'4",
            Postulate::A5Prime => "A'5",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Symbolic,
    GridChecked,
    Both,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Symbolic => "Symbolic",
            Method::GridChecked => "GridChecked",
            Method::Both => "Both",
        })
    }
}

/// Named weights (`lambda`, `alpha`, `beta`) and a free-form detail.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub weights: Vec<(&'static str, Rational)>,
    pub detail: Option<String>,
}

impl Witness {
    pub fn weight(name: &'static str, value: Rational) -> Self {
        Witness {
            weights: vec![(name, value)],
            detail: None,
        }
    }

    pub fn detail(text: impl Into<String>) -> Self {
        Witness {
            weights: Vec::new(),
            detail: Some(text.into()),
        }
    }

    pub fn with_detail(mut self, text: impl Into<String>) -> Self {
        self.detail = Some(text.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.weights
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, value) in &self.weights {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{name}={value}")?;
            first = false;
        }
        if let Some(d) = &self.detail {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "[{d}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateReport {
    pub postulate: Postulate,
    pub status: Status,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl PostulateReport {
    pub fn holding(postulate: Postulate, method: Method, witness: Option<Witness>) -> Self {
        PostulateReport {
            postulate,
            status: Status::Holds,
            method,
            witness,
        }
    }

    pub fn failing(postulate: Postulate, method: Method, witness: Witness) -> Self {
        PostulateReport {
            postulate,
            status: Status::Fails,
            method,
            witness: Some(witness),
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

impl fmt::Display for PostulateReport {
    /// `name  status  method  witness`, with `-` for a missing witness.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  {}  {}  ", self.postulate, self.status, self.method)?;
        match &self.witness {
            Some(w) => write!(f, "{w}"),
            None => f.write_str("-"),
        }
    }
}

/// Weights `1/k, …, (k−1)/k`.
pub fn default_grid(k: u32) -> Vec<Rational> {
    (1..k).map(|i| rational(i as i64, k as i64)).collect()
}

/// Every reduced fraction in `]0, 1[` with denominator at most `bound`, in
/// increasing order.
pub fn fractions_up_to(bound: u32) -> Vec<Rational> {
    let set: BTreeSet<Rational> = (2..=bound as i64)
        .flat_map(|d| (1..d).map(move |n| rational(n, d)))
        .collect();
    set.into_iter().collect()
}

fn check_open_unit(grid: &[Rational]) -> Result<()> {
    match grid
        .iter()
        .find(|l| **l <= Rational::zero() || **l >= Rational::one())
    {
        Some(l) => Err(Error::WeightOutOfRange(l.clone())),
        None => Ok(()),
    }
}

fn ensure_positive_on(m: &UtilityModel, lotteries: &[&Lottery]) -> Result<()> {
    for l in lotteries {
        for o in l.support() {
            if !m.utility(o)?.is_positive() {
                return Err(Error::NonPositiveModel(o.id().to_string()));
            }
        }
    }
    Ok(())
}

fn prefers(m: &UtilityModel, p: &Lottery, q: &Lottery) -> Result<bool> {
    Ok(compare_lotteries(m, p, q)? == PreferenceVerdict::Prefers)
}

fn require_chain(m: &UtilityModel, p: &Lottery, q: &Lottery, r: &Lottery) -> Result<()> {
    if !prefers(m, p, q)? || !prefers(m, q, r)? {
        return Err(Error::PreconditionViolated("requires p > q > r".into()));
    }
    Ok(())
}

/// Checks asymmetry on every pair and negative transitivity on every triple
/// of `sample` for an arbitrary comparator.
pub fn check_weak_order_with<F>(sample: &[Lottery], mut cmp: F) -> Result<PostulateReport>
where
    F: FnMut(&Lottery, &Lottery) -> Result<PreferenceVerdict>,
{
    let n = sample.len();
    let gt = sample
        .iter()
        .map(|a| {
            sample
                .iter()
                .map(|b| Ok(cmp(a, b)? == PreferenceVerdict::Prefers))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j)));
    for (i, j) in pairs {
        if gt[i][j] && gt[j][i] {
            return Ok(PostulateReport::failing(
                Postulate::A1,
                Method::GridChecked,
                Witness::detail(format!("asymmetry fails on pair ({i}, {j})")),
            ));
        }
    }
    // a > c ⇒ a > b or b > c
    for a in 0..n {
        for c in 0..n {
            if !gt[a][c] {
                continue;
            }
            if let Some(b) = (0..n).find(|&b| !gt[a][b] && !gt[b][c]) {
                return Ok(PostulateReport::failing(
                    Postulate::A1,
                    Method::GridChecked,
                    Witness::detail(format!(
                        "negative transitivity fails on triple ({a}, {b}, {c})"
                    )),
                ));
            }
        }
    }
    Ok(PostulateReport::holding(
        Postulate::A1,
        Method::GridChecked,
        None,
    ))
}

/// A1 for a utility-backed preference. The qualitative order is a weak
/// order, so the symbolic verdict is always `Holds`; the sample is checked
/// exhaustively as well.
pub fn check_weak_order(m: &UtilityModel, sample: &[Lottery]) -> Result<PostulateReport> {
    if sample.is_empty() {
        return Err(Error::PreconditionViolated("empty sample".into()));
    }
    let eus = sample
        .iter()
        .map(|l| expected_utility(m, l))
        .collect::<Result<Vec<_>>>()?;
    let index = |l: &Lottery| sample.iter().position(|x| x == l).expect("sample member");
    let report = check_weak_order_with(sample, |a, b| {
        Ok(eus[index(a)].qual_compare(&eus[index(b)]).into())
    })?;
    if !report.holds() {
        return Err(Error::MethodDisagreement(format!(
            "weak order violated by a utility-backed preference: {report}"
        )));
    }
    Ok(PostulateReport::holding(Postulate::A1, Method::Both, None))
}

/// Strict preference of `λp + (1−λ)r` over `λq + (1−λ)r` for each weight;
/// returns the first weight where it fails together with both utilities.
fn first_independence_failure(
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    grid: &[Rational],
) -> Result<Option<(Rational, Hyperreal, Hyperreal)>> {
    for lambda in grid {
        let left = expected_utility(m, &Lottery::mix(lambda, p, r)?)?;
        let right = expected_utility(m, &Lottery::mix(lambda, q, r)?)?;
        if !left.qual_gt(&right) {
            return Ok(Some((lambda.clone(), left, right)));
        }
    }
    Ok(None)
}

fn independence_witness(lambda: Rational, left: Hyperreal, right: Hyperreal) -> Witness {
    Witness::weight("lambda", lambda).with_detail(format!("EU1={left} EU2={right}"))
}

/// Shared decision for A2 and the non-vacuous branch of A'2: the strict
/// preference survives mixing with `r` for every standard weight iff
/// `u(r)/u(p)` is not infinite.
fn decide_independence(
    postulate: Postulate,
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    grid: &[Rational],
) -> Result<PostulateReport> {
    check_open_unit(grid)?;
    let (up, ur) = (expected_utility(m, p)?, expected_utility(m, r)?);
    let symbolic_holds = !ur.classify_ratio(&up)?.is_infinite();
    let grid_failure = first_independence_failure(m, p, q, r, grid)?;
    let method = if grid.is_empty() {
        Method::Symbolic
    } else {
        if symbolic_holds != grid_failure.is_none() {
            return Err(Error::MethodDisagreement(format!(
                "{postulate}: symbolic {} but grid {}",
                if symbolic_holds { "holds" } else { "fails" },
                if grid_failure.is_none() {
                    "holds"
                } else {
                    "fails"
                },
            )));
        }
        Method::Both
    };
    if symbolic_holds {
        return Ok(PostulateReport::holding(postulate, method, None));
    }
    let (lambda, left, right) = match grid_failure {
        Some(w) => w,
        None => first_independence_failure(m, p, q, r, &[rational(1, 2)])?
            .ok_or_else(|| Error::MethodDisagreement("no verified failing weight".into()))?,
    };
    Ok(PostulateReport::failing(
        postulate,
        method,
        independence_witness(lambda, left, right),
    ))
}

/// Classical independence: `p > q ⇒ λp + (1−λ)r > λq + (1−λ)r`.
pub fn check_independence_classical(
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    grid: &[Rational],
) -> Result<PostulateReport> {
    ensure_positive_on(m, &[p, q, r])?;
    if !prefers(m, p, q)? {
        return Err(Error::PreconditionViolated("requires p > q".into()));
    }
    decide_independence(Postulate::A2, m, p, q, r, grid)
}

/// Qualitative independence: `p > q` and not `r ≫ p` imply the strict
/// preference between the `r`-mixtures for every standard weight.
pub fn check_qual_independence(
    m: &UtilityModel,
    space: &LotterySpace,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    grid: &[Rational],
) -> Result<PostulateReport> {
    check_open_unit(grid)?;
    m.ensure_positive(space)?;
    if !prefers(m, p, q)? {
        return Ok(PostulateReport::holding(
            Postulate::A2Prime,
            Method::Symbolic,
            None,
        ));
    }
    if overrides(m, space, r, p)? {
        let (up, ur) = (expected_utility(m, p)?, expected_utility(m, r)?);
        // r ≫ p only because p is minimal: the override is behavioural, not
        // a ratio fact, so only grid evidence backs the vacuous verdict
        let method = if ur.classify_ratio(&up)?.is_infinite() {
            Method::Symbolic
        } else {
            Method::GridChecked
        };
        return Ok(PostulateReport::holding(Postulate::A2Prime, method, None));
    }
    decide_independence(Postulate::A2Prime, m, p, q, r, grid)
}

/// `αp + (1−α)r > q`.
fn alpha_works(
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    a: &Rational,
) -> Result<bool> {
    prefers(m, &Lottery::mix(a, p, r)?, q)
}

/// `q > βp + (1−β)r`.
fn beta_works(
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    b: &Rational,
) -> Result<bool> {
    prefers(m, q, &Lottery::mix(b, p, r)?)
}

/// Witness for the upper half of continuity.
///
/// With `γ` the standard part of `(u(p) − u(q))/u(p)`, every
/// `α > 1 − γ` works; candidates `1 − γ/2ᵏ` are tried in order.
fn construct_alpha(m: &UtilityModel, p: &Lottery, q: &Lottery, r: &Lottery) -> Result<Rational> {
    let (up, uq) = (expected_utility(m, p)?, expected_utility(m, q)?);
    let gamma = match (&up - &uq).classify_ratio(&up)? {
        RatioClass::Appreciable(g) => g,
        other => {
            return Err(Error::PreconditionViolated(format!(
                "relative gap between p and q is {other:?}"
            )))
        }
    };
    let mut step = gamma / rational(2, 1);
    for _ in 0..MAX_HALVINGS {
        let alpha = Rational::one() - &step;
        if alpha_works(m, p, q, r, &alpha)? {
            return Ok(alpha);
        }
        step /= rational(2, 1);
    }
    Err(Error::ExtractionFailure("no verified alpha".into()))
}

/// Witness for the lower half of continuity: `β = 1/2ᵏ` for the first `k`
/// that verifies.
fn construct_beta(m: &UtilityModel, p: &Lottery, q: &Lottery, r: &Lottery) -> Result<Rational> {
    let mut beta = rational(1, 2);
    for _ in 0..MAX_HALVINGS {
        if beta_works(m, p, q, r, &beta)? {
            return Ok(beta);
        }
        beta /= rational(2, 1);
    }
    Err(Error::ExtractionFailure("no verified beta".into()))
}

/// A'3: for `p > q > r` there is a standard `α ∈ ]0,1[` with
/// `αp + (1−α)r > q`.
pub fn check_a3_prime(
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
) -> Result<PostulateReport> {
    ensure_positive_on(m, &[p, q, r])?;
    require_chain(m, p, q, r)?;
    let alpha = construct_alpha(m, p, q, r)?;
    Ok(PostulateReport::holding(
        Postulate::A3Prime,
        Method::Symbolic,
        Some(Witness::weight("alpha", alpha)),
    ))
}

/// A''3: for `p > q > r` with `p` not overriding `q` there is a standard
/// `β ∈ ]0,1[` with `q > βp + (1−β)r`.
pub fn check_a3_doubleprime(
    m: &UtilityModel,
    space: &LotterySpace,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
) -> Result<PostulateReport> {
    m.ensure_positive(space)?;
    require_chain(m, p, q, r)?;
    if overrides(m, space, p, q)? {
        return Err(Error::PreconditionViolated("p overrides q".into()));
    }
    let beta = construct_beta(m, p, q, r)?;
    Ok(PostulateReport::holding(
        Postulate::A3DoublePrime,
        Method::Symbolic,
        Some(Witness::weight("beta", beta)),
    ))
}

/// Classical continuity: for `p > q > r` there are `α, β ∈ ]0,1[` with
/// `αp + (1−α)r > q > βp + (1−β)r`.
///
/// Both weights are searched over fractions with denominator at most
/// `denominator_bound`. Symbolically `α` always exists, while `β` exists iff
/// `u(p)/u(q)` is finite (given `q > r`, `q` is not minimal, so that is
/// exactly "p does not override q"). When the symbolic side guarantees a
/// weight the search misses, the constructive witness is reported instead
/// and the method degrades to `Symbolic`.
pub fn check_continuity_classical(
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
    denominator_bound: u32,
) -> Result<PostulateReport> {
    ensure_positive_on(m, &[p, q, r])?;
    require_chain(m, p, q, r)?;
    let candidates = fractions_up_to(denominator_bound);

    let mut alpha = None;
    for a in candidates.iter().rev() {
        if alpha_works(m, p, q, r, a)? {
            alpha = Some(a.clone());
            break;
        }
    }
    let mut beta = None;
    for b in &candidates {
        if beta_works(m, p, q, r, b)? {
            beta = Some(b.clone());
            break;
        }
    }

    let (up, uq) = (expected_utility(m, p)?, expected_utility(m, q)?);
    let beta_exists = !up.classify_ratio(&uq)?.is_infinite();
    if beta.is_some() && !beta_exists {
        return Err(Error::MethodDisagreement(
            "found beta although p overrides q".into(),
        ));
    }

    let mut method = Method::Both;
    let alpha = match alpha {
        Some(a) => a,
        None => {
            method = Method::Symbolic;
            construct_alpha(m, p, q, r)?
        }
    };
    let beta = match (beta, beta_exists) {
        (Some(b), _) => Some(b),
        (None, true) => {
            method = Method::Symbolic;
            Some(construct_beta(m, p, q, r)?)
        }
        (None, false) => None,
    };
    match beta {
        Some(beta) => Ok(PostulateReport::holding(
            Postulate::A3,
            method,
            Some(Witness {
                weights: vec![("alpha", alpha), ("beta", beta)],
                detail: None,
            }),
        )),
        None => Ok(PostulateReport::failing(
            Postulate::A3,
            method,
            Witness::weight("alpha", alpha).with_detail(format!(
                "no beta: q ⪯ βp + (1−β)r for every β with denominator ≤ {denominator_bound}, and p ≫ q"
            )),
        )),
    }
}

/// The unique `λ ∈ [0,1]` with `q ∼ λp + (1−λ)r`, computed as the standard
/// part of `(u(q) − u(r)) / (u(p) − u(r))` and verified before returning.
///
/// Fails with `OverridesViolation` when `u(p)/u(r)` is infinite. An override
/// that holds only because `r` is minimal does not block the solution.
pub fn solve_indifference(
    m: &UtilityModel,
    p: &Lottery,
    q: &Lottery,
    r: &Lottery,
) -> Result<Rational> {
    ensure_positive_on(m, &[p, q, r])?;
    let pq = compare_lotteries(m, p, q)?;
    let qr = compare_lotteries(m, q, r)?;
    if pq == PreferenceVerdict::Dispreferred || qr == PreferenceVerdict::Dispreferred {
        return Err(Error::PreconditionViolated("requires p ≥ q ≥ r".into()));
    }
    if !prefers(m, p, r)? {
        return Err(Error::PreconditionViolated("requires p > r".into()));
    }
    let (up, uq, ur) = (
        expected_utility(m, p)?,
        expected_utility(m, q)?,
        expected_utility(m, r)?,
    );
    if up.classify_ratio(&ur)?.is_infinite() {
        return Err(Error::OverridesViolation);
    }
    let lambda = match (&uq - &ur).classify_ratio(&(&up - &ur))? {
        RatioClass::Appreciable(l) => l,
        RatioClass::Infinitesimal => Rational::zero(),
        RatioClass::Infinite => {
            return Err(Error::ExtractionFailure(
                "q lies infinitely far outside [r, p]".into(),
            ))
        }
    };
    let lambda = lambda.clamp(Rational::zero(), Rational::one());
    if compare_lotteries(m, q, &Lottery::mix(&lambda, p, r)?)? != PreferenceVerdict::Indifferent {
        return Err(Error::ExtractionFailure(format!(
            "q is not indifferent to the {lambda}-mixture"
        )));
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixture::Outcome;

    fn setup(u: &[(&str, &str)]) -> (UtilityModel, LotterySpace) {
        let m = UtilityModel::new(
            u.iter()
                .map(|(k, v)| (Outcome::new(*k), v.parse().unwrap())),
        )
        .unwrap();
        let space = LotterySpace::simplex(m.outcomes().to_vec()).unwrap();
        (m, space)
    }

    fn pm(s: &str) -> Lottery {
        Lottery::point_mass(Outcome::new(s))
    }

    fn pqr() -> (Lottery, Lottery, Lottery) {
        (pm("P"), pm("Q"), pm("R"))
    }

    #[test]
    fn report_line_format() {
        let r = PostulateReport::failing(
            Postulate::A2,
            Method::Both,
            independence_witness(
                rational(1, 2),
                "1/2 + 1e1".parse().unwrap(),
                "1/2".parse().unwrap(),
            ),
        );
        assert_eq!(
            r.to_string(),
            "A2  Fails  Both  lambda=1/2 [EU1=1/2 + 1e1 EU2=1/2]"
        );
        let r = PostulateReport::holding(Postulate::A3DoublePrime, Method::Symbolic, None);
        assert_eq!(r.to_string(), "A''3  Holds  Symbolic  -");
    }

    #[test]
    fn weak_order_examples() {
        let (m, _) = setup(&[("P", "2e1"), ("Q", "1e1"), ("R", "1")]);
        let (p, q, r) = pqr();
        let sample = vec![
            p.clone(),
            q.clone(),
            r.clone(),
            Lottery::mix(&rational(1, 2), &p, &r).unwrap(),
        ];
        assert!(check_weak_order(&m, &sample).unwrap().holds());
        assert!(check_weak_order(&m, &sample[..1]).unwrap().holds());
        assert!(check_weak_order(&m, &[]).is_err());

        // "prefers everything" is not asymmetric
        let broken = check_weak_order_with(&sample, |_, _| Ok(PreferenceVerdict::Prefers)).unwrap();
        assert_eq!(broken.status, Status::Fails);
        assert!(broken.witness.unwrap().detail.unwrap().contains("pair"));

        // strict preference along a cycle breaks negative transitivity
        let cyclic = check_weak_order_with(&sample[..3], |a, b| {
            let idx = |l: &Lottery| sample.iter().position(|x| x == l).unwrap();
            Ok(if (idx(a) + 1) % 3 == idx(b) {
                PreferenceVerdict::Prefers
            } else {
                PreferenceVerdict::Indifferent
            })
        })
        .unwrap();
        assert_eq!(cyclic.status, Status::Fails);
    }

    #[test]
    fn classical_independence_examples() {
        let grid = default_grid(DEFAULT_GRID);
        let (p, q, r) = pqr();

        let (m, _) = setup(&[("P", "2e1"), ("Q", "1e1"), ("R", "1")]);
        let report = check_independence_classical(&m, &p, &q, &r, &grid).unwrap();
        assert_eq!(report.status, Status::Fails);
        assert_eq!(report.method, Method::Both);
        assert_eq!(
            report.witness.as_ref().unwrap().get("lambda"),
            Some(&rational(1, 8))
        );
        let symbolic = check_independence_classical(&m, &p, &q, &r, &[]).unwrap();
        assert_eq!(symbolic.status, Status::Fails);
        assert_eq!(symbolic.method, Method::Symbolic);

        let (m, _) = setup(&[("P", "2"), ("Q", "1"), ("R", "1")]);
        assert!(check_independence_classical(&m, &p, &q, &r, &grid)
            .unwrap()
            .holds());
        assert!(check_independence_classical(&m, &p, &q, &r, &[])
            .unwrap()
            .holds());

        assert!(matches!(
            check_independence_classical(&m, &q, &p, &r, &grid),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            check_independence_classical(&m, &p, &q, &r, &[rational(1, 1)]),
            Err(Error::WeightOutOfRange(_))
        ));
    }

    #[test]
    fn qualitative_independence_examples() {
        let grid = default_grid(DEFAULT_GRID);
        let (p, q, r) = pqr();
        let (m, space) = setup(&[("P", "2e1"), ("Q", "1e1"), ("R", "1")]);
        let report = check_qual_independence(&m, &space, &p, &q, &r, &grid).unwrap();
        assert!(report.holds());
        assert_eq!(report.method, Method::Symbolic);
        for lambda in &grid {
            assert_eq!(
                compare_lotteries(
                    &m,
                    &Lottery::mix(lambda, &p, &r).unwrap(),
                    &Lottery::mix(lambda, &q, &r).unwrap()
                )
                .unwrap(),
                PreferenceVerdict::Indifferent
            );
        }
        let (m, space) = setup(&[("P", "2"), ("Q", "2 + 1e3"), ("R", "1")]);
        let report = check_qual_independence(&m, &space, &p, &q, &r, &grid).unwrap();
        assert!(report.holds());
        assert_eq!(report.method, Method::Symbolic);

        let (m, space) = setup(&[("P", "3"), ("Q", "2"), ("R", "1")]);
        let report = check_qual_independence(&m, &space, &p, &q, &r, &grid).unwrap();
        assert!(report.holds());
        assert_eq!(report.method, Method::Both);
        // R is minimal and P is strictly better: R ≫ nothing, but P ≫ R
        let report = check_qual_independence(&m, &space, &q, &r, &p, &grid).unwrap();
        assert_eq!(report.method, Method::Both);
    }

    #[test]
    fn continuity_examples() {
        let (p, q, r) = pqr();
        let (m, _) = setup(&[("P", "1"), ("Q", "2e1"), ("R", "1e1")]);
        let report = check_continuity_classical(&m, &p, &q, &r, DEFAULT_DENOMINATOR_BOUND).unwrap();
        assert_eq!(report.status, Status::Fails);
        assert_eq!(report.method, Method::Both);
        assert!(report.witness.as_ref().unwrap().get("beta").is_none());

        let (m, _) = setup(&[("P", "3"), ("Q", "2"), ("R", "1")]);
        let report = check_continuity_classical(&m, &p, &q, &r, DEFAULT_DENOMINATOR_BOUND).unwrap();
        assert!(report.holds());
        let w = report.witness.unwrap();
        assert!(w.get("alpha").unwrap() > &rational(1, 2));
        assert!(w.get("beta").unwrap() < &rational(1, 2));

        let (m, _) = setup(&[("P", "1"), ("Q", "1/2"), ("R", "1e1")]);
        let report = check_continuity_classical(&m, &p, &q, &r, DEFAULT_DENOMINATOR_BOUND).unwrap();
        assert!(report.holds());
        assert_eq!(report.method, Method::Both);
        let w = report.witness.unwrap();
        assert!(alpha_works(&m, &p, &q, &r, w.get("alpha").unwrap()).unwrap());
        assert!(beta_works(&m, &p, &q, &r, w.get("beta").unwrap()).unwrap());

        // the weight that works is below every fraction with denominator ≤ 4
        let (m, _) = setup(&[("P", "1000"), ("Q", "2"), ("R", "1")]);
        let report = check_continuity_classical(&m, &p, &q, &r, 4).unwrap();
        assert!(report.holds());
        assert_eq!(report.method, Method::Symbolic);

        assert!(check_continuity_classical(&m, &r, &q, &p, 8).is_err());
    }

    #[test]
    fn a3_prime_examples() {
        let (p, q, r) = pqr();
        let (m, _) = setup(&[("P", "1"), ("Q", "2e1"), ("R", "1e1")]);
        let report = check_a3_prime(&m, &p, &q, &r).unwrap();
        assert_eq!(report.witness.unwrap().get("alpha"), Some(&rational(1, 2)));
        assert_eq!(
            expected_utility(&m, &Lottery::mix(&rational(1, 2), &p, &r).unwrap()).unwrap(),
            "1/2 + 1/2e1".parse().unwrap()
        );

        let (m, _) = setup(&[("P", "4"), ("Q", "2"), ("R", "1")]);
        let alpha = check_a3_prime(&m, &p, &q, &r)
            .unwrap()
            .witness
            .unwrap()
            .get("alpha")
            .cloned()
            .unwrap();
        assert!(alpha >= rational(1, 2));
        assert!(alpha_works(&m, &p, &q, &r, &alpha).unwrap());

        let (m, _) = setup(&[("P", "1"), ("Q", "1 - 1e1"), ("R", "1e1")]);
        assert!(matches!(
            check_a3_prime(&m, &p, &q, &r),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn a3_doubleprime_examples() {
        let (p, q, r) = pqr();
        let (m, space) = setup(&[("P", "4"), ("Q", "2"), ("R", "1")]);
        let report = check_a3_doubleprime(&m, &space, &p, &q, &r).unwrap();
        assert_eq!(report.witness.unwrap().get("beta"), Some(&rational(1, 4)));

        let (m, space) = setup(&[("P", "2"), ("Q", "2e1"), ("R", "1e2")]);
        assert!(overrides(&m, &space, &p, &q).unwrap());
        assert!(matches!(
            check_a3_doubleprime(&m, &space, &p, &q, &r),
            Err(Error::PreconditionViolated(_))
        ));

        let (m, space) = setup(&[("P", "1 + 1e1"), ("Q", "1"), ("R", "1e1")]);
        // 1 + ε and 1 are indifferent, so the chain precondition fails
        assert!(check_a3_doubleprime(&m, &space, &p, &q, &r).is_err());
        let (m, space) = setup(&[("P", "2 + 1e1"), ("Q", "1"), ("R", "1e1")]);
        let beta = check_a3_doubleprime(&m, &space, &p, &q, &r)
            .unwrap()
            .witness
            .unwrap()
            .get("beta")
            .cloned()
            .unwrap();
        assert!(beta_works(&m, &p, &q, &r, &beta).unwrap());
    }

    #[test]
    fn indifference_examples() {
        let (p, q, r) = pqr();
        let (m, _) = setup(&[("P", "2"), ("Q", "3/2 + 1e1"), ("R", "1")]);
        assert_eq!(solve_indifference(&m, &p, &q, &r).unwrap(), rational(1, 2));
        assert_eq!(solve_indifference(&m, &p, &p, &r).unwrap(), rational(1, 1));
        assert_eq!(solve_indifference(&m, &p, &r, &r).unwrap(), rational(0, 1));

        let (m, _) = setup(&[("P", "1e-1"), ("Q", "3"), ("R", "1")]);
        assert_eq!(
            solve_indifference(&m, &p, &q, &r),
            Err(Error::OverridesViolation)
        );
        assert!(matches!(
            solve_indifference(&m, &r, &q, &p),
            Err(Error::PreconditionViolated(_))
        ));
    }
}

//! Exact arithmetic on a nonstandard extension of the rationals.
//!
//! A [`Hyperreal`] is a finite formal Laurent polynomial in a fixed positive
//! infinitesimal `ε` with exact rational coefficients. Negative exponents
//! give infinite values, positive exponents give infinitesimals. The field
//! carries two orders:
//!
//! * the usual total order, in which the sign of `x - y` is the sign of its
//!   lowest-exponent coefficient, and
//! * the qualitative order `≻`, under which two values whose relative
//!   difference is infinitesimal are equivalent.
//!
//! No series division is ever performed. Every predicate that depends on a
//! ratio (`x ≻ y`, "`x / y` is infinite") is decided exactly from leading
//! terms.

mod literal;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use literal::{parse_literal, ParseError};

/// Exact standard number. Always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds `numer / denom` as a reduced [`Rational`].
///
/// Panics if `denom` is zero.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperrealError {
    #[error("operation is undefined on zero")]
    ZeroArgument,
    #[error("value is infinite and has no standard part")]
    InfiniteArgument,
    #[error("division by zero")]
    ZeroDivisor,
}

/// Classification of a ratio `x / y` by the relative size of its terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RatioClass {
    /// `x / y` is zero or infinitely close to zero.
    Infinitesimal,
    /// `x / y` is finite and not infinitesimal; carries its (nonzero)
    /// standard part.
    Appreciable(Rational),
    /// `x / y` exceeds every standard number in magnitude.
    Infinite,
}

impl RatioClass {
    pub fn is_infinite(&self) -> bool {
        matches!(self, RatioClass::Infinite)
    }

    pub fn is_infinitesimal(&self) -> bool {
        matches!(self, RatioClass::Infinitesimal)
    }

    /// Standard part of the ratio when it is finite.
    pub fn standard_part(&self) -> Option<Rational> {
        match self {
            RatioClass::Infinitesimal => Some(Rational::zero()),
            RatioClass::Appreciable(r) => Some(r.clone()),
            RatioClass::Infinite => None,
        }
    }
}

/// Outcome of a qualitative comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QualOrdering {
    Less,
    Equivalent,
    Greater,
}

impl QualOrdering {
    pub fn reverse(self) -> Self {
        match self {
            QualOrdering::Less => QualOrdering::Greater,
            QualOrdering::Equivalent => QualOrdering::Equivalent,
            QualOrdering::Greater => QualOrdering::Less,
        }
    }

    pub fn is_gt(self) -> bool {
        self == QualOrdering::Greater
    }

    pub fn is_lt(self) -> bool {
        self == QualOrdering::Less
    }

    pub fn is_eq(self) -> bool {
        self == QualOrdering::Equivalent
    }

    /// `x ⪯ y`, i.e. not `x ≻ y`.
    pub fn is_le(self) -> bool {
        self != QualOrdering::Greater
    }
}

/// A finite Laurent polynomial `Σ cₖ εᵏ` in the positive infinitesimal `ε`.
///
/// Terms are stored with strictly increasing exponents and no zero
/// coefficients, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Hyperreal {
    terms: Vec<(i64, Rational)>,
}

impl Hyperreal {
    pub fn zero() -> Self {
        Hyperreal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The infinitesimal `ε` itself.
    pub fn epsilon() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `coeff · εᵉˣᵖ`.
    pub fn monomial(coeff: Rational, exp: i64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Hyperreal {
                terms: vec![(exp, coeff)],
            }
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(r, 0)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// Canonicalizes an arbitrary list of `(exponent, coefficient)` pairs:
    /// equal exponents are merged, zero coefficients dropped, exponents sorted.
    pub fn normalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (exp, coeff) in raw {
            *acc.entry(exp).or_insert_with(Rational::zero) += coeff;
        }
        Hyperreal {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `εᵉˣᵖ` (zero when absent).
    pub fn coefficient(&self, exp: i64) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| *e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order_of(&self) -> Result<i64, HyperrealError> {
        self.terms
            .first()
            .map(|(e, _)| *e)
            .ok_or(HyperrealError::ZeroArgument)
    }

    /// Coefficient of the lowest-exponent term.
    pub fn leading_coefficient(&self) -> Result<&Rational, HyperrealError> {
        self.terms
            .first()
            .map(|(_, c)| c)
            .ok_or(HyperrealError::ZeroArgument)
    }

    /// Sign in the total order: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.terms.first() {
            None => 0,
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// True when the value is bounded by some standard number.
    pub fn is_finite(&self) -> bool {
        self.terms.first().is_none_or(|(e, _)| *e >= 0)
    }

    /// True for zero and for nonzero values below every positive standard
    /// number in magnitude.
    pub fn is_infinitesimal(&self) -> bool {
        self.terms.first().is_none_or(|(e, _)| *e > 0)
    }

    /// True when every term sits at exponent zero.
    pub fn is_standard(&self) -> bool {
        self.terms.iter().all(|(e, _)| *e == 0)
    }

    /// The standard rational infinitely close to a finite value.
    pub fn standard_part(&self) -> Result<Rational, HyperrealError> {
        if !self.is_finite() {
            return Err(HyperrealError::InfiniteArgument);
        }
        Ok(self.coefficient(0))
    }

    /// Multiplication by a standard scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Hyperreal {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// Multiplication by `εᵏ`.
    pub fn shift(&self, k: i64) -> Self {
        Hyperreal {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Exact division by the monomial `coeff · εᵉˣᵖ`.
    pub fn div_monomial(&self, coeff: &Rational, exp: i64) -> Result<Self, HyperrealError> {
        if coeff.is_zero() {
            return Err(HyperrealError::ZeroDivisor);
        }
        let inv = coeff.recip();
        Ok(self.scale(&inv).shift(-exp))
    }

    /// Total order: `x > y` iff `x - y` has a positive leading coefficient.
    pub fn compare_total(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    /// Classifies `self / divisor` from leading terms alone.
    pub fn classify_ratio(&self, divisor: &Self) -> Result<RatioClass, HyperrealError> {
        let (dexp, dcoeff) = divisor.terms.first().ok_or(HyperrealError::ZeroDivisor)?;
        let Some((nexp, ncoeff)) = self.terms.first() else {
            return Ok(RatioClass::Infinitesimal);
        };
        Ok(match nexp.cmp(dexp) {
            Ordering::Greater => RatioClass::Infinitesimal,
            Ordering::Less => RatioClass::Infinite,
            Ordering::Equal => RatioClass::Appreciable(ncoeff / dcoeff),
        })
    }

    /// `self ≻ other`.
    ///
    /// For nonnegative values this holds iff `self > other` and the relative
    /// difference `(self - other) / self` is appreciable, which for a Laurent
    /// polynomial means `self - other` has the same order as `self`. Signs
    /// extend by "nonnegative beats negative" and `x ≻ y ⇔ -y ≻ -x`.
    pub fn qual_gt(&self, other: &Self) -> bool {
        let (xs, ys) = (self.signum(), other.signum());
        match (xs >= 0, ys >= 0) {
            (true, false) => true,
            (false, true) => false,
            (true, true) => {
                let diff = self - other;
                diff.is_positive() && diff.order_of() == self.order_of()
            }
            (false, false) => (-other).qual_gt(&-self),
        }
    }

    /// Qualitative comparison: `Greater` iff `self ≻ other`, `Less` iff
    /// `other ≻ self`, `Equivalent` otherwise.
    pub fn qual_compare(&self, other: &Self) -> QualOrdering {
        if self.qual_gt(other) {
            QualOrdering::Greater
        } else if other.qual_gt(self) {
            QualOrdering::Less
        } else {
            QualOrdering::Equivalent
        }
    }

    /// Finite nonnegative combination `Σ wᵢ xᵢ`.
    pub fn weighted_sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = (&'a Rational, &'a Hyperreal)>,
    {
        Self::normalize(
            items
                .into_iter()
                .flat_map(|(w, x)| x.terms.iter().map(move |(e, c)| (*e, c * w))),
        )
    }
}

impl PartialOrd for Hyperreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hyperreal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare_total(other)
    }
}

impl From<Rational> for Hyperreal {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Hyperreal {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Add for &Hyperreal {
    type Output = Hyperreal;

    fn add(self, rhs: &Hyperreal) -> Hyperreal {
        Hyperreal::normalize(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Add for Hyperreal {
    type Output = Hyperreal;

    fn add(self, rhs: Hyperreal) -> Hyperreal {
        &self + &rhs
    }
}

impl AddAssign<&Hyperreal> for Hyperreal {
    fn add_assign(&mut self, rhs: &Hyperreal) {
        *self = &*self + rhs;
    }
}

impl Neg for &Hyperreal {
    type Output = Hyperreal;

    fn neg(self) -> Hyperreal {
        Hyperreal {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Hyperreal {
    type Output = Hyperreal;

    fn neg(self) -> Hyperreal {
        -&self
    }
}

impl Sub for &Hyperreal {
    type Output = Hyperreal;

    fn sub(self, rhs: &Hyperreal) -> Hyperreal {
        Hyperreal::normalize(
            self.terms
                .iter()
                .cloned()
                .chain(rhs.terms.iter().map(|(e, c)| (*e, -c))),
        )
    }
}

impl Sub for Hyperreal {
    type Output = Hyperreal;

    fn sub(self, rhs: Hyperreal) -> Hyperreal {
        &self - &rhs
    }
}

impl Mul for &Hyperreal {
    type Output = Hyperreal;

    fn mul(self, rhs: &Hyperreal) -> Hyperreal {
        Hyperreal::normalize(
            self.terms
                .iter()
                .flat_map(|(ea, ca)| rhs.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
        )
    }
}

impl Mul for Hyperreal {
    type Output = Hyperreal;

    fn mul(self, rhs: Hyperreal) -> Hyperreal {
        &self * &rhs
    }
}

impl fmt::Display for Hyperreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write_literal(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> Hyperreal {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_merges_drops_and_sorts() {
        let one = rational(1, 1);
        assert_eq!(
            Hyperreal::normalize(vec![(0, one.clone()), (0, one.clone())]).terms(),
            &[(0, rational(2, 1))]
        );
        assert_eq!(
            Hyperreal::normalize(vec![(1, one.clone()), (0, rational(0, 1))]).terms(),
            &[(1, one.clone())]
        );
        assert!(Hyperreal::normalize(Vec::new()).is_zero());
        assert_eq!(
            Hyperreal::normalize(vec![(3, one.clone()), (-1, one.clone())]).terms(),
            &[(-1, one.clone()), (3, one)]
        );
    }

    #[test]
    fn field_operations() {
        assert_eq!(h("1 + 1e1") + h("1 - 1e1"), h("2"));
        assert_eq!((h("1e1") + h("1e2")).terms().len(), 2);
        assert_eq!(h("3 + 1e-1") + Hyperreal::zero(), h("3 + 1e-1"));
        assert_eq!(-h("1e2"), h("-1e2"));
        assert_eq!(-Hyperreal::zero(), Hyperreal::zero());
        assert_eq!(-h("-1 + 1e1"), h("1 - 1e1"));
        assert_eq!(Hyperreal::epsilon() * Hyperreal::epsilon(), h("1e2"));
        assert_eq!(h("1 + 1e1") * h("1 - 1e1"), h("1 - 1e2"));
        assert_eq!(h("2/3e-2 + 5") * Hyperreal::one(), h("2/3e-2 + 5"));
    }

    #[test]
    fn total_order_examples() {
        assert_eq!(h("1e-1").compare_total(&h("5")), Ordering::Greater);
        assert_eq!(h("1e1").compare_total(&h("1e2")), Ordering::Greater);
        assert_eq!(h("1 + 1e1").compare_total(&h("1")), Ordering::Greater);
        assert_eq!(h("-1e-1").compare_total(&h("-5")), Ordering::Less);
        assert_eq!(h("0").compare_total(&h("0")), Ordering::Equal);
    }

    #[test]
    fn order_and_standard_part() {
        assert_eq!(h("1e2 + 1e1").order_of(), Ok(1));
        assert_eq!(h("3").order_of(), Ok(0));
        assert_eq!(h("1e-1 + 7").order_of(), Ok(-1));
        assert_eq!(
            Hyperreal::zero().order_of(),
            Err(HyperrealError::ZeroArgument)
        );
        assert_eq!(h("1 + 1e1").standard_part(), Ok(rational(1, 1)));
        assert_eq!(h("1e1").standard_part(), Ok(rational(0, 1)));
        assert_eq!(
            h("1e-1").standard_part(),
            Err(HyperrealError::InfiniteArgument)
        );
        assert_eq!(Hyperreal::zero().standard_part(), Ok(rational(0, 1)));
    }

    #[test]
    fn ratio_classes() {
        let one = Hyperreal::one();
        let eps = Hyperreal::epsilon();
        assert_eq!(eps.classify_ratio(&one), Ok(RatioClass::Infinitesimal));
        assert_eq!(one.classify_ratio(&eps), Ok(RatioClass::Infinite));
        assert_eq!(
            h("2e1").classify_ratio(&eps),
            Ok(RatioClass::Appreciable(rational(2, 1)))
        );
        assert_eq!(
            Hyperreal::zero().classify_ratio(&eps),
            Ok(RatioClass::Infinitesimal)
        );
        assert_eq!(
            one.classify_ratio(&Hyperreal::zero()),
            Err(HyperrealError::ZeroDivisor)
        );
    }

    #[test]
    fn qualitative_examples() {
        assert_eq!(h("1 + 1e1").qual_compare(&h("1")), QualOrdering::Equivalent);
        assert_eq!(
            h("1e2 + 1e1").qual_compare(&h("1e2")),
            QualOrdering::Greater
        );
        assert_eq!(h("3").qual_compare(&h("0")), QualOrdering::Greater);
        assert_eq!(h("1e1").qual_compare(&h("-1")), QualOrdering::Greater);
        assert_eq!(h("0").qual_compare(&h("0")), QualOrdering::Equivalent);
        assert_eq!(h("0").qual_compare(&h("-1e3")), QualOrdering::Greater);
        // both negative: -ε ≻ -1 since 1 ≻ ε
        assert_eq!(h("-1e1").qual_compare(&h("-1")), QualOrdering::Greater);
        assert_eq!(
            h("-1 - 1e1").qual_compare(&h("-1")),
            QualOrdering::Equivalent
        );
    }

    #[test]
    fn shift_sensitivity_witness() {
        // 1 + ε ∼ 1, yet subtracting 1 - ε² from both separates them
        let d = h("1 - 1e2");
        assert!(h("1 + 1e1").qual_compare(&h("1")).is_eq());
        assert!((h("1 + 1e1") - d).qual_gt(&h("1e2")));
    }

    #[test]
    fn monomial_division_is_exact() {
        let x = h("4e3 + 2e5");
        assert_eq!(x.div_monomial(&rational(2, 1), 3), Ok(h("2 + 1e2")));
        assert_eq!(
            x.div_monomial(&rational(0, 1), 1),
            Err(HyperrealError::ZeroDivisor)
        );
    }
}

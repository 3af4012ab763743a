#![allow(dead_code)]

use equm::hyperreal::{rational, Hyperreal, Rational};
use equm::mixture::{Lottery, LotterySpace, Outcome};
use equm::preference::UtilityModel;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Exact value of `x` at the standard point `ε = 10⁻³⁰`. For the magnitudes
/// used in these tests the sign of this value is the sign of `x`.
pub fn eval_small(x: &Hyperreal) -> Rational {
    let eps = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
    x.terms()
        .iter()
        .map(|(k, c)| {
            let p = if *k >= 0 {
                num_traits::pow(eps.clone(), *k as usize)
            } else {
                num_traits::pow(eps.recip(), (-*k) as usize)
            };
            c * p
        })
        .sum()
}

/// Total order by small-ε evaluation.
pub fn oracle_total(x: &Hyperreal, y: &Hyperreal) -> std::cmp::Ordering {
    eval_small(&(x - y)).cmp(&Rational::zero())
}

/// First coefficients of the Laurent series of `n / d`, from the lowest
/// exponent up to exponent 0 inclusive, by long division.
fn series_quotient(n: &Hyperreal, d: &Hyperreal) -> Vec<(i64, Rational)> {
    let dt = d.terms();
    let (d0, dc) = (dt[0].0, dt[0].1.clone());
    let mut rem: Vec<(i64, Rational)> = n.terms().to_vec();
    let mut out = Vec::new();
    loop {
        rem.retain(|(_, c)| !c.is_zero());
        rem.sort_by_key(|(k, _)| *k);
        let Some((k, c)) = rem.first().cloned() else {
            break;
        };
        let qk = k - d0;
        if qk > 0 {
            break;
        }
        let qc = &c / &dc;
        for (dk, dcoef) in dt {
            let e = qk + dk;
            let sub = &qc * dcoef;
            match rem.iter_mut().find(|(x, _)| *x == e) {
                Some((_, v)) => *v -= sub,
                None => rem.push((e, -sub)),
            }
        }
        out.push((qk, qc));
    }
    out
}

/// Standard part of `n / d` from the series, or `None` when infinite.
pub fn oracle_ratio_standard(n: &Hyperreal, d: &Hyperreal) -> Option<Rational> {
    let q = series_quotient(n, d);
    if q.iter().any(|(k, c)| *k < 0 && !c.is_zero()) {
        return None;
    }
    Some(
        q.into_iter()
            .find(|(k, _)| *k == 0)
            .map(|(_, c)| c)
            .unwrap_or_else(Rational::zero),
    )
}

/// `x ≻ y` for nonnegative values: `x > 0` and `(x − y)/x` has a positive
/// standard part.
pub fn oracle_qual_gt_nonneg(x: &Hyperreal, y: &Hyperreal) -> bool {
    if oracle_total(x, &Hyperreal::zero()).is_le() {
        return false;
    }
    let diff = x - y;
    if diff.is_zero() {
        return false;
    }
    let q = series_quotient(&diff, x);
    match q.iter().find(|(k, c)| *k < 0 && !c.is_zero()) {
        Some((_, c)) => c.is_positive(),
        None => q
            .iter()
            .find(|(k, _)| *k == 0)
            .is_some_and(|(_, c)| c.is_positive()),
    }
}

/// `≻` on all signs via the sign rules on top of the nonnegative oracle.
pub fn oracle_qual_gt(x: &Hyperreal, y: &Hyperreal) -> bool {
    let zero = Hyperreal::zero();
    let xn = oracle_total(x, &zero).is_ge();
    let yn = oracle_total(y, &zero).is_ge();
    match (xn, yn) {
        (true, true) => oracle_qual_gt_nonneg(x, y),
        (true, false) => true,
        (false, true) => false,
        (false, false) => oracle_qual_gt_nonneg(&-y, &-x),
    }
}

pub fn arb_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| rational(n, d))
}

pub fn arb_positive_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num, 1..=max_den).prop_map(|(n, d)| rational(n, d))
}

/// Arbitrary-sign values with up to `max_terms` terms.
pub fn arb_hyperreal(lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = Hyperreal> {
    prop::collection::vec((lo..=hi, arb_rational(20, 16)), 0..=max_terms)
        .prop_map(Hyperreal::normalize)
}

/// Strictly positive values: positive leading coefficient, arbitrary tail.
pub fn arb_positive(lo: i64, hi: i64) -> impl Strategy<Value = Hyperreal> {
    (
        lo..=hi,
        arb_positive_rational(20, 16),
        prop::collection::vec((1..=4i64, arb_rational(20, 16)), 0..=2),
    )
        .prop_map(move |(k, c, tail)| {
            Hyperreal::normalize(
                std::iter::once((k, c)).chain(tail.into_iter().map(|(d, t)| (k + d, t))),
            )
        })
}

/// Nonnegative values, zero included.
pub fn arb_nonneg(lo: i64, hi: i64) -> impl Strategy<Value = Hyperreal> {
    prop_oneof![1 => Just(Hyperreal::zero()), 9 => arb_positive(lo, hi)]
}

fn rng_rational<R: Rng>(rng: &mut R, positive: bool) -> Rational {
    let d = rng.gen_range(1..=16);
    let n = if positive {
        rng.gen_range(1..=20)
    } else {
        rng.gen_range(-20..=20)
    };
    rational(n, d)
}

/// Positive value with leading exponent in `lo..=hi`.
pub fn rng_positive<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Hyperreal {
    let k = rng.gen_range(lo..=hi);
    let mut terms = vec![(k, rng_rational(rng, true))];
    if k < hi {
        for _ in 0..rng.gen_range(0..=2) {
            let e = rng.gen_range(k + 1..=hi.min(k + 3));
            terms.push((e, rng_rational(rng, false)));
        }
    }
    Hyperreal::normalize(terms)
}

/// Nonnegative value; zero with small probability, and correlated with
/// `near` half of the time so that ties in the leading term are common.
pub fn rng_nonneg<R: Rng>(rng: &mut R, lo: i64, hi: i64, near: Option<&Hyperreal>) -> Hyperreal {
    if rng.gen_ratio(1, 20) {
        return Hyperreal::zero();
    }
    match near {
        Some(x) if x.is_positive() && rng.gen_bool(0.5) => {
            let k = x.order_of().unwrap();
            let bump = Hyperreal::monomial(rng_rational(rng, false), k + rng.gen_range(1..=3));
            let scaled = if rng.gen_bool(0.5) {
                x.clone()
            } else {
                x.scale(&rng_rational(rng, true))
            };
            let y = &scaled + &bump;
            if y.is_positive() {
                y
            } else {
                scaled
            }
        }
        _ => rng_positive(rng, lo, hi),
    }
}

/// Random positive utility model over outcomes `o0, o1, …`.
pub fn rng_model<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> (UtilityModel, LotterySpace) {
    let mut values: Vec<Hyperreal> = Vec::new();
    for i in 0..n {
        let near = if i > 0 && rng.gen_bool(0.3) {
            Some(values[rng.gen_range(0..i)].clone())
        } else {
            None
        };
        let v = rng_nonneg(rng, lo, hi, near.as_ref());
        values.push(if v.is_positive() {
            v
        } else {
            rng_positive(rng, lo, hi)
        });
    }
    let m = UtilityModel::new(
        values
            .into_iter()
            .enumerate()
            .map(|(i, v)| (Outcome::new(format!("o{i}")), v)),
    )
    .unwrap();
    let space = LotterySpace::simplex(m.outcomes().to_vec()).unwrap();
    (m, space)
}

/// Random mixture of the space's generators with weights in multiples of
/// `1/denom`.
pub fn rng_lottery<R: Rng>(rng: &mut R, space: &LotterySpace, denom: u32) -> Lottery {
    let n = space.generators().len();
    let mut left = denom;
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let w = if i + 1 == n {
            left
        } else {
            rng.gen_range(0..=left)
        };
        left -= w;
        weights.push(rational(w as i64, denom as i64));
    }
    // spread mass uniformly over positions
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        weights.swap(i, j);
    }
    space.mixture(&weights).unwrap()
}

/// Positive `c` with `c/x` finite (leading exponent at least that of `x`).
pub fn rng_finite_relative<R: Rng>(rng: &mut R, x: &Hyperreal) -> Hyperreal {
    let k = x.order_of().unwrap();
    rng_positive(rng, k, k + 3)
}

/// Positive `c` with `c/x` infinite.
pub fn rng_infinite_relative<R: Rng>(rng: &mut R, x: &Hyperreal) -> Hyperreal {
    let k = x.order_of().unwrap();
    rng_positive(rng, k - 3, k - 1)
}

/// Positive `c` with `y − c > 0`.
pub fn rng_below<R: Rng>(rng: &mut R, y: &Hyperreal) -> Hyperreal {
    let k = y.order_of().unwrap();
    let lc = y.leading_coefficient().unwrap().clone();
    if rng.gen_bool(0.5) {
        // same order, strictly smaller leading coefficient
        let f = rational(rng.gen_range(1..=15), 16);
        Hyperreal::monomial(lc * f, k)
    } else {
        Hyperreal::monomial(rng_rational(rng, true), k + rng.gen_range(1..=3))
    }
}

/// Standard positive weights.
pub fn rng_standard_positive<R: Rng>(rng: &mut R) -> Rational {
    rng_rational(rng, true)
}

pub fn qual_le(x: &Hyperreal, y: &Hyperreal) -> bool {
    !x.qual_gt(y)
}

pub fn qual_eq(x: &Hyperreal, y: &Hyperreal) -> bool {
    !x.qual_gt(y) && !y.qual_gt(x)
}

/// Violations of the twelve basic laws of `≻` on nonnegative `x, y, z`. Laws
/// 10–12 use the supplied constants, which must satisfy their side
/// conditions relative to `x` and `y` when `x ≻ y`.
pub fn order_law_violations(
    x: &Hyperreal,
    y: &Hyperreal,
    z: &Hyperreal,
    c_pos: &Hyperreal,
    c_finite: Option<&Hyperreal>,
    c_infinite: Option<(&Hyperreal, [&Rational; 3])>,
    c_below: Option<&Hyperreal>,
) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let zero = Hyperreal::zero();
    let gt = |a: &Hyperreal, b: &Hyperreal| a.qual_gt(b);

    if gt(x, y) && x <= y {
        bad.push("1");
    }
    if x > &zero && !gt(x, &zero) {
        bad.push("2");
    }
    if gt(x, y) && gt(y, x) {
        bad.push("3");
    }
    if gt(x, y) && y >= z && !gt(x, z) {
        bad.push("4");
    }
    if x >= y && gt(y, z) && !gt(x, z) {
        bad.push("5");
    }
    if gt(x, y) && gt(y, z) && !gt(x, z) {
        bad.push("6");
    }
    if qual_le(x, y) && qual_le(y, z) && !qual_le(x, z) {
        bad.push("7");
    }
    if !qual_eq(x, x)
        || qual_eq(x, y) != qual_eq(y, x)
        || (qual_eq(x, y) && qual_eq(y, z) && !qual_eq(x, z))
    {
        bad.push("8");
    }
    if gt(x, y) != gt(&(c_pos * x), &(c_pos * y)) {
        bad.push("9");
    }
    if gt(x, y) {
        if let Some(c) = c_finite {
            if !gt(&(x + c), &(y + c)) {
                bad.push("10");
            }
        }
        if let Some((c, [l, m, n])) = c_infinite {
            let lc = c.scale(l);
            let mx = &x.scale(m) + &lc;
            let my = &y.scale(m) + &lc;
            if !(qual_eq(&lc, &mx) && qual_eq(&mx, &my) && gt(&my, &x.scale(n))) {
                bad.push("11");
            }
        }
        if let Some(c) = c_below {
            if !gt(&(x - c), &(y - c)) {
                bad.push("12");
            }
        }
    }
    bad
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

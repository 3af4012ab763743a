//! Canonical representation of a positive utility model: generators are
//! grouped into classes of comparable magnitude, each class receives
//! standard utilities relative to a reference member, and class `i` is
//! scaled by `εⁱ`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hyperreal::{Hyperreal, Rational};
use crate::mixture::{simplex_grid, LotterySpace};
use crate::preference::{compare_lotteries, expected_utility, PreferenceVerdict, UtilityModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalClass {
    pub index: usize,
    /// Generator indices, ascending; the first is the reference member.
    pub members: Vec<usize>,
    /// Standard utility of each member, aligned with `members`.
    pub standard_utilities: Vec<Rational>,
}

impl CanonicalClass {
    pub fn reference(&self) -> usize {
        self.members[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalModel {
    classes: Vec<CanonicalClass>,
    generator_count: usize,
}

impl CanonicalModel {
    pub fn classes(&self) -> &[CanonicalClass] {
        &self.classes
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Class index of generator `g`.
    pub fn class_of(&self, g: usize) -> Option<usize> {
        self.classes
            .iter()
            .find(|c| c.members.contains(&g))
            .map(|c| c.index)
    }

    /// `εⁱ·uᵢ(g)`.
    pub fn generator_utility(&self, g: usize) -> Option<Hyperreal> {
        self.classes.iter().find_map(|c| {
            let k = c.members.iter().position(|&x| x == g)?;
            Some(Hyperreal::monomial(
                c.standard_utilities[k].clone(),
                c.index as i64,
            ))
        })
    }

    /// Induced utilities of all generators, in generator order.
    pub fn utilities(&self) -> Vec<Hyperreal> {
        (0..self.generator_count)
            .map(|g| self.generator_utility(g).expect("classes cover generators"))
            .collect()
    }

    /// Utility of the mixture `Σ wᵢ gᵢ`.
    pub fn utility_of_weights(&self, weights: &[Rational]) -> Result<Hyperreal> {
        if weights.len() != self.generator_count {
            return Err(Error::InvalidLottery(format!(
                "expected {} generator weights, got {}",
                self.generator_count,
                weights.len()
            )));
        }
        let us = self.utilities();
        Ok(Hyperreal::weighted_sum(weights.iter().zip(us.iter())))
    }

    /// Model over outcomes; requires the generators of `space` to be the
    /// point masses of its outcomes.
    pub fn to_utility_model(&self, space: &LotterySpace) -> Result<UtilityModel> {
        if space.generators().len() != self.generator_count {
            return Err(Error::PreconditionViolated(
                "generator count does not match".into(),
            ));
        }
        let mut entries = Vec::new();
        for (g, lot) in space.generators().iter().enumerate() {
            let mut support = lot.support();
            let o = match (support.next(), support.next()) {
                (Some(o), None) => o.clone(),
                _ => {
                    return Err(Error::PreconditionViolated(format!(
                        "generator {g} is not a point mass"
                    )))
                }
            };
            entries.push((o, self.utilities()[g].clone()));
        }
        UtilityModel::new(entries)
    }

    /// Swaps the exponents of two classes. Only useful for testing the
    /// equivalence check.
    pub fn swap_class_indices(&mut self, a: usize, b: usize) {
        for c in &mut self.classes {
            if c.index == a {
                c.index = b;
            } else if c.index == b {
                c.index = a;
            }
        }
    }
}

impl fmt::Display for CanonicalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            write!(f, "class {}:", c.index)?;
            for (g, u) in c.members.iter().zip(&c.standard_utilities) {
                write!(f, " g{g}={u}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn generator_utilities(m: &UtilityModel, space: &LotterySpace) -> Result<Vec<Hyperreal>> {
    m.ensure_positive(space)?;
    space
        .generators()
        .iter()
        .map(|g| expected_utility(m, g))
        .collect()
}

/// Partition of generator indices into classes whose pairwise utility
/// ratios are appreciable, ordered from the overriding class down.
///
/// For positive values, an appreciable ratio is the same as equal leading
/// exponents, so classes are keyed by `order_of`.
pub fn asymp_classes(m: &UtilityModel, space: &LotterySpace) -> Result<Vec<Vec<usize>>> {
    let us = generator_utilities(m, space)?;
    let orders = us
        .iter()
        .map(|u| u.order_of())
        .collect::<Result<Vec<_>, _>>()?;
    let distinct: BTreeSet<i64> = orders.iter().copied().collect();
    Ok(distinct
        .into_iter()
        .map(|k| (0..us.len()).filter(|&g| orders[g] == k).collect())
        .collect())
}

pub fn canonicalize(m: &UtilityModel, space: &LotterySpace) -> Result<CanonicalModel> {
    let us = generator_utilities(m, space)?;
    let partition = asymp_classes(m, space)?;
    let mut classes = Vec::with_capacity(partition.len());
    for (index, members) in partition.into_iter().enumerate() {
        let reference = &us[members[0]];
        let standard_utilities = members
            .iter()
            .map(|&g| {
                us[g]
                    .classify_ratio(reference)?
                    .standard_part()
                    .filter(|r| *r > Rational::zero())
                    .ok_or_else(|| {
                        Error::ExtractionFailure(format!(
                            "generator {g} is not comparable with its class reference"
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        classes.push(CanonicalClass {
            index,
            members,
            standard_utilities,
        });
    }
    Ok(CanonicalModel {
        classes,
        generator_count: us.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceReport {
    Equivalent {
        pairs_checked: usize,
    },
    Discrepancy {
        left: Vec<Rational>,
        right: Vec<Rational>,
        source: PreferenceVerdict,
        canonical: PreferenceVerdict,
    },
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceReport::Equivalent { .. })
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights = |w: &[Rational]| {
            w.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            EquivalenceReport::Equivalent { pairs_checked } => {
                write!(f, "Equivalent ({pairs_checked} pairs)")
            }
            EquivalenceReport::Discrepancy {
                left,
                right,
                source,
                canonical,
            } => write!(
                f,
                "Discrepancy at ({}) vs ({}): source {source}, canonical {canonical}",
                weights(left),
                weights(right)
            ),
        }
    }
}

/// Compares the verdicts of `m` and `c` on every ordered pair of generator
/// mixtures with weights in multiples of `1/denominator`.
pub fn verify_equivalence(
    m: &UtilityModel,
    c: &CanonicalModel,
    space: &LotterySpace,
    denominator: u32,
) -> Result<EquivalenceReport> {
    if c.generator_count() != space.generators().len() {
        return Err(Error::PreconditionViolated(
            "canonical model and space have different generators".into(),
        ));
    }
    let grid = simplex_grid(c.generator_count(), denominator.max(1));
    let mut source = Vec::with_capacity(grid.len());
    let mut canonical = Vec::with_capacity(grid.len());
    for w in &grid {
        source.push(space.mixture(w)?);
        canonical.push(c.utility_of_weights(w)?);
    }
    let mut pairs = 0;
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let s = compare_lotteries(m, &source[i], &source[j])?;
            let k: PreferenceVerdict = canonical[i].qual_compare(&canonical[j]).into();
            if s != k {
                return Ok(EquivalenceReport::Discrepancy {
                    left: grid[i].clone(),
                    right: grid[j].clone(),
                    source: s,
                    canonical: k,
                });
            }
            pairs += 1;
        }
    }
    Ok(EquivalenceReport::Equivalent {
        pairs_checked: pairs,
    })
}

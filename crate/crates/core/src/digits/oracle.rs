//! Brute-force validation helpers for the digit system.
//!
//! The collision oracle enumerates every stream with a bounded prefix and
//! a tail drawn from a small menu, groups them by exact value, and hands
//! back the groups — an exhaustive, representation-theory-free check that
//! values collide at most in pairs and that each pair fits the chasing
//! construction. The gap proxy builds the subsum approximation of an
//! infinite co-infinite subset of the term system and reports its largest
//! interval, a quantitative stand-in for "that subsum set is totally
//! disconnected".

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::digits::DigitStream;
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::series::TermSequence;

/// The tail menu that covers every closing a finite chase schedule can
/// produce: the all-zero tail, the all-3 tail, and the two alternating
/// flip tails.
pub fn standard_tail_menu() -> Vec<Vec<u8>> {
    vec![vec![], vec![3], vec![5, 0], vec![0, 5]]
}

/// Every normalized stream with a prefix of length `prefix_len` over the
/// digit alphabet and a period from `menu`, sorted and deduplicated.
pub fn enumerate_universe(
    prefix_len: u32,
    menu: &[Vec<u8>],
    budget: u128,
) -> Result<Vec<DigitStream>> {
    if menu.is_empty() {
        return Ok(Vec::new());
    }
    let count = 4u128
        .checked_pow(prefix_len)
        .map(|p| p * menu.len() as u128)
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    let mut streams = Vec::with_capacity(count as usize);
    for code in 0..4u64.pow(prefix_len) {
        let mut prefix = Vec::with_capacity(prefix_len as usize);
        let mut rest = code;
        for _ in 0..prefix_len {
            prefix.push(crate::digits::DIGITS[(rest % 4) as usize]);
            rest /= 4;
        }
        for tail in menu {
            streams.push(DigitStream::new(prefix.clone(), tail.clone())?);
        }
    }
    streams.sort();
    streams.dedup();
    Ok(streams)
}

/// Output of [`collision_oracle`]: the enumerated universe's size and its
/// equal-value groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub prefix_len: u32,
    /// Distinct normalized streams enumerated.
    pub universe_size: usize,
    /// Values realized by exactly one stream.
    pub singleton_values: usize,
    /// Streams sharing a value with another stream, grouped by value in
    /// increasing order; each group is sorted.
    pub groups: Vec<Vec<DigitStream>>,
}

/// Group all universe streams by exact value.
pub fn collision_oracle(
    prefix_len: u32,
    menu: &[Vec<u8>],
    budget: u128,
) -> Result<CollisionReport> {
    let universe = enumerate_universe(prefix_len, menu, budget)?;
    let universe_size = universe.len();
    let mut by_value: BTreeMap<Rational, Vec<DigitStream>> = BTreeMap::new();
    for s in universe {
        by_value.entry(s.value()).or_default().push(s);
    }
    let singleton_values = by_value.values().filter(|g| g.len() == 1).count();
    let groups = by_value
        .into_values()
        .filter(|g| g.len() > 1)
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    Ok(CollisionReport {
        prefix_len,
        universe_size,
        singleton_values,
        groups,
    })
}

/// Which terms of the doubled sequence `3/4, 2/4, 3/16, 2/16, …` an
/// infinite co-infinite subset keeps, described per weight class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeepRule {
    /// Keep every `3/4^k`, drop every `2/4^k`.
    Threes,
    /// Keep every `2/4^k`, drop every `3/4^k`.
    Twos,
    /// Keep `3/4^k` at odd levels and `2/4^k` at even levels.
    Alternating,
    /// Keep everything — degenerate (the complement must be infinite).
    All,
}

impl KeepRule {
    /// Which of the level-`k` terms (`3/4^k`, `2/4^k`) the rule keeps.
    fn keeps(self, level: u32) -> (bool, bool) {
        match self {
            KeepRule::Threes => (true, false),
            KeepRule::Twos => (false, true),
            KeepRule::Alternating => {
                if level % 2 == 1 {
                    (true, false)
                } else {
                    (false, true)
                }
            }
            KeepRule::All => (true, true),
        }
    }

    /// Exact sum of the kept terms at levels strictly beyond `level`.
    fn tail_beyond(self, level: u32) -> Rational {
        // Sum of 4^(-k) over k > level with a step of 1 is 4^(-level)/3;
        // with a step of 2 from first term k0 it is 4^(-k0) * 16/15.
        let every = |weight: i64| rat(weight, 3) * rat(1, 4).pow(level as i32);
        let alternate = |weight: i64, first: u32| {
            rat(16 * weight, 15) * rat(1, 4).pow(first as i32)
        };
        match self {
            KeepRule::Threes => every(3),
            KeepRule::Twos => every(2),
            KeepRule::All => every(5),
            KeepRule::Alternating => {
                let (odd, even) = if level.is_multiple_of(2) {
                    (level + 1, level + 2)
                } else {
                    (level + 2, level + 1)
                };
                alternate(3, odd) + alternate(2, even)
            }
        }
    }
}

/// The level-`level` approximation of the subsum set of a kept-term
/// subset: its largest interval against the exact tail bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapProxy {
    pub rule: KeepRule,
    pub level: u32,
    /// Exact sum of the kept terms beyond the materialized levels; every
    /// approximation interval has this length before merging.
    pub tail: Rational,
    /// Length of the largest merged interval of the approximation.
    pub largest_part: Rational,
    /// Number of merged intervals.
    pub parts: usize,
}

/// Build the subsum approximation of the terms kept by `rule` among the
/// first `level` levels (plus the exact tail of the kept terms beyond)
/// and measure its largest interval. Requires both the kept set and the
/// dropped set to be nonempty among those levels.
pub fn cantor_subset_gap_proxy(rule: KeepRule, level: u32, budget: u128) -> Result<GapProxy> {
    let mut kept: Vec<Rational> = Vec::new();
    let mut dropped = 0usize;
    for k in 1..=level {
        let weight = rat(1, 4).pow(k as i32);
        let (threes, twos) = rule.keeps(k);
        for (keep, value) in [(threes, rat(3, 1) * &weight), (twos, rat(2, 1) * &weight)] {
            if keep {
                kept.push(value);
            } else {
                dropped += 1;
            }
        }
    }
    if kept.is_empty() {
        return Err(Error::EmptySet("kept terms"));
    }
    if dropped == 0 {
        return Err(Error::EmptySet("dropped terms"));
    }

    let terms = kept.len();
    let seq = TermSequence::explicit(kept, rule.tail_beyond(level))?;
    let approx = seq.approximation(terms, budget)?;
    let largest_part = approx
        .set
        .parts()
        .iter()
        .map(|iv| iv.length())
        .max()
        .expect("approximation is never empty");
    Ok(GapProxy {
        rule,
        level,
        tail: approx.tail,
        largest_part,
        parts: approx.set.len(),
    })
}

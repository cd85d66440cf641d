//! Digit chasing: the construction linking the two expansions of a doubly
//! representable value.
//!
//! When a value has two digit expansions `A` and `B`, they agree up to
//! some position `n₀ − 1`, diverge as `a_{n₀} = 2`, `b_{n₀} = 3`, and from
//! then on the smaller side chases the larger: at a strictly increasing
//! sequence of *index* positions `n₀ < n₁ < n₂ < …` the pair flips
//! between `(5, 0)` (odd indices) and `(0, 5)` (even indices), while the
//! positions in between carry pairs at constant difference `3` — plain
//! fillers `(3, 0)` / `(0, 3)` or their raised variants `(5, 2)` /
//! `(2, 5)`. A [`ChaseSchedule`] records that combinatorial data; for a
//! finite schedule the construction closes with the plain fillers of the
//! final phase repeating forever (equivalently: one stream gets the all-3
//! tail and the other the all-zero tail), and an infinite schedule
//! continues with consecutive indices, i.e. the alternating tails
//! `(5,0,5,0,…)` and `(0,5,0,5,…)`.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::digits::{is_digit, DigitStream};
use crate::error::{Error, Result};

/// The combinatorial description of a pair of digit expansions with equal
/// value: common digits before the first divergence, the divergence /
/// flip positions, and which in-between positions carry raised fillers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChaseSchedule {
    /// Digits at positions `1 .. n₀`, common to both streams.
    pub base: Vec<u8>,
    /// The divergence position `n₀` followed by the flip positions, all
    /// strictly increasing.
    pub indices: Vec<u32>,
    /// Positions strictly between indices (or beyond the last index of a
    /// finite schedule) whose filler pair is raised: `(5, 2)` instead of
    /// `(3, 0)`, or `(2, 5)` instead of `(0, 3)`.
    pub raised: BTreeSet<u32>,
    /// Continue after the last listed index with consecutive indices
    /// forever instead of closing with plain fillers.
    pub infinite: bool,
}

impl ChaseSchedule {
    /// A plain schedule: just the flip positions, no raised fillers, no
    /// common prefix beyond what the first index requires (all zeros).
    pub fn plain(indices: Vec<u32>, infinite: bool) -> Result<Self> {
        let base = match indices.first() {
            Some(&n0) => vec![0; (n0 as usize).saturating_sub(1)],
            None => Vec::new(),
        };
        let schedule = ChaseSchedule {
            base,
            indices,
            raised: BTreeSet::new(),
            infinite,
        };
        schedule.validate()?;
        Ok(schedule)
    }

    /// Check all structural invariants.
    pub fn validate(&self) -> Result<()> {
        let Some(&n0) = self.indices.first() else {
            return Err(Error::InvalidSchedule("no indices".into()));
        };
        if n0 == 0 {
            return Err(Error::InvalidSchedule("positions are 1-based".into()));
        }
        if !self.indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSchedule(
                "indices not strictly increasing".into(),
            ));
        }
        if self.base.len() != n0 as usize - 1 {
            return Err(Error::InvalidSchedule(format!(
                "base holds {} digits but the first index is {n0}",
                self.base.len()
            )));
        }
        if let Some(&d) = self.base.iter().find(|&&d| !is_digit(d)) {
            return Err(Error::InvalidDigit(d));
        }
        let last = *self.indices.last().expect("nonempty");
        for &r in &self.raised {
            if r <= n0 || self.indices.binary_search(&r).is_ok() {
                return Err(Error::InvalidSchedule(format!(
                    "raised position {r} is not strictly between indices"
                )));
            }
            if self.infinite && r > last {
                return Err(Error::InvalidSchedule(format!(
                    "raised position {r} lies in the infinite index run"
                )));
            }
        }
        Ok(())
    }

    fn horizon(&self) -> u32 {
        let last = *self.indices.last().expect("validated");
        self.raised.iter().next_back().map_or(last, |&r| r.max(last))
    }
}

/// Filler pairs of the two phases: between an even-subscript index and the
/// next, stream A runs above B (`a - b = 3`); between an odd-subscript
/// index and the next, B runs above A.
fn filler(phase_a: bool, raised: bool) -> (u8, u8) {
    match (phase_a, raised) {
        (true, false) => (3, 0),
        (true, true) => (5, 2),
        (false, false) => (0, 3),
        (false, true) => (2, 5),
    }
}

/// Digits at the `k`-th index position.
fn flip(k: usize) -> (u8, u8) {
    if k == 0 {
        (2, 3)
    } else if k % 2 == 1 {
        (5, 0)
    } else {
        (0, 5)
    }
}

/// Materialize the two digit streams described by a schedule. The first
/// stream takes digit `2` at the divergence position, the second digit
/// `3`; both have the same exact value.
pub fn chase_pair(schedule: &ChaseSchedule) -> Result<(DigitStream, DigitStream)> {
    schedule.validate()?;
    let horizon = schedule.horizon();
    let mut a = schedule.base.clone();
    let mut b = schedule.base.clone();
    let mut consumed = 0usize; // indices at positions <= current
    for i in schedule.indices[0]..=horizon {
        let (da, db) = if schedule
            .indices
            .get(consumed)
            .is_some_and(|&n| n == i)
        {
            consumed += 1;
            flip(consumed - 1)
        } else {
            filler(consumed % 2 == 1, schedule.raised.contains(&i))
        };
        a.push(da);
        b.push(db);
    }

    let (pa, pb) = if schedule.infinite {
        // Positions after the last index are consecutive indices; the
        // first of them has subscript `indices.len()`.
        if schedule.indices.len() % 2 == 1 {
            (vec![5, 0], vec![0, 5])
        } else {
            (vec![0, 5], vec![5, 0])
        }
    } else if schedule.indices.len() % 2 == 1 {
        // Last subscript even: A-phase fillers forever.
        (vec![3], vec![])
    } else {
        (vec![], vec![3])
    };

    let a = DigitStream::new(a, pa)?;
    let b = DigitStream::new(b, pb)?;
    assert_eq!(a.value(), b.value(), "chase must preserve the value");
    Ok((a, b))
}

/// Recover the schedule from a pair of equal-value streams, in canonical
/// form: the minimal index list, with any trailing run of consecutive
/// indices folded into the `infinite` flag.
///
/// The order of the arguments does not matter. Pairs whose digits do not
/// fit the chase structure — or whose raised fillers never settle, so no
/// finite description of the closing exists — are rejected.
pub fn extract_schedule(x: &DigitStream, y: &DigitStream) -> Result<ChaseSchedule> {
    if x == y {
        return Err(Error::NotADualPair("streams are identical".into()));
    }
    if x.value() != y.value() {
        return Err(Error::NotADualPair(format!(
            "values differ: {} vs {}",
            x.value(),
            y.value()
        )));
    }

    // Everything about both streams repeats with period `cycle` beyond
    // position `settled`; examining one extra cycle is enough to classify
    // the tail.
    let settled = x.prefix().len().max(y.prefix().len());
    let cycle = x
        .period()
        .len()
        .max(1)
        .lcm(&y.period().len().max(1));
    let horizon = settled + 2 * cycle;

    let n0 = (1..=horizon)
        .find(|&i| x.digit_at(i) != y.digit_at(i))
        .expect("distinct normalized streams differ within one cycle");
    let (a, b) = match (x.digit_at(n0), y.digit_at(n0)) {
        (2, 3) => (x, y),
        (3, 2) => (y, x),
        (da, db) => {
            return Err(Error::InvalidSchedule(format!(
                "divergence digits at position {n0} are ({da}, {db}), not (2, 3)"
            )))
        }
    };

    let base: Vec<u8> = (1..n0).map(|i| a.digit_at(i)).collect();
    let mut indices: Vec<u32> = vec![n0 as u32];
    let mut raised: BTreeSet<u32> = BTreeSet::new();
    for i in n0 + 1..=horizon {
        let pair = (a.digit_at(i), b.digit_at(i));
        let phase_a = indices.len() % 2 == 1;
        if pair == flip(indices.len()) {
            indices.push(i as u32);
        } else if pair == filler(phase_a, false) {
            // plain filler
        } else if pair == filler(phase_a, true) {
            raised.insert(i as u32);
        } else {
            return Err(Error::InvalidSchedule(format!(
                "digits ({}, {}) at position {i} fit no chase role",
                pair.0, pair.1
            )));
        }
    }

    // Classify the settled tail by one full cycle of trailing pairs.
    let window: Vec<(u8, u8)> = (horizon - cycle + 1..=horizon)
        .map(|i| (a.digit_at(i), b.digit_at(i)))
        .collect();
    let infinite = if window.iter().all(|&p| p == (3, 0) || p == (0, 3)) {
        false
    } else if window.iter().all(|&p| p == (5, 0) || p == (0, 5))
        && window.windows(2).all(|w| w[0] != w[1])
        && window.first() != window.last()
    {
        // An unbroken alternation of flips: every remaining position is
        // an index. Drop the trailing consecutive run; the flag stands
        // for it.
        while indices.len() >= 2
            && indices[indices.len() - 1] == indices[indices.len() - 2] + 1
        {
            indices.pop();
        }
        true
    } else {
        return Err(Error::InvalidSchedule(
            "tail never settles into plain fillers or an index run".into(),
        ));
    };

    let schedule = ChaseSchedule {
        base,
        indices,
        raised,
        infinite,
    };
    schedule.validate()?;
    Ok(schedule)
}

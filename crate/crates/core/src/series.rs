//! Term sequences and their finite-level subsum approximations.
//!
//! A `TermSequence` is a positive series whose set of subsums we study:
//! every `x = sum of a subset of terms`. Cutting the series after `n`
//! terms gives a finite approximation: each of the `2^n` partial subsums
//! `s` contributes a closed interval `[s, s + tail]`, where `tail` is the
//! sum of everything not yet decided. The union of those intervals always
//! contains the true subsum set, shrinks as `n` grows, and its gaps are
//! genuine gaps of the limit set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Gap, Interval, IntervalSet};
use crate::rational::{rat, Rational};

/// Upper bound on how many subsums `partial_sums` may enumerate unless the
/// caller raises it explicitly.
pub const DEFAULT_SUBSUM_BUDGET: u128 = 1 << 24;

/// The series whose subsums we approximate.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TermSequence {
    /// 3/4, 1/2, 3/16, 1/8, ..., 3/4^k, 2/4^k, ...
    ///
    /// The subsum set of this sequence is a cantorval: a compact set whose
    /// interval components and Cantor-like boundary interleave at every
    /// scale. Its hull is [0, 5/3].
    Cantorval,
    /// first/ratio, first/ratio^2, first/ratio^3, ...
    Geometric { first: Rational, ratio: Rational },
    /// Finitely many listed terms plus an explicit bound on the sum of all
    /// unlisted ones.
    Explicit { terms: Vec<Rational>, tail: Rational },
}

impl TermSequence {
    pub fn cantorval() -> Self {
        TermSequence::Cantorval
    }

    pub fn geometric(first: Rational, ratio: Rational) -> Result<Self> {
        if !first.is_positive() {
            return Err(Error::UnsupportedRatio(format!(
                "first term must be positive, got {first}"
            )));
        }
        if ratio <= Rational::one() {
            return Err(Error::UnsupportedRatio(ratio.to_string()));
        }
        Ok(TermSequence::Geometric { first, ratio })
    }

    pub fn explicit(terms: Vec<Rational>, tail: Rational) -> Result<Self> {
        if terms.iter().any(|t| !t.is_positive()) {
            return Err(Error::UnsupportedRatio(
                "explicit terms must be positive".into(),
            ));
        }
        if tail.is_negative() {
            return Err(Error::UnsupportedRatio(format!(
                "tail bound must be nonnegative, got {tail}"
            )));
        }
        Ok(TermSequence::Explicit { terms, tail })
    }

    /// The i-th term, 1-indexed.
    pub fn term(&self, i: usize) -> Result<Rational> {
        if i == 0 {
            return Err(Error::TermIndex(0));
        }
        match self {
            TermSequence::Cantorval => {
                let k = i.div_ceil(2) as i32;
                let scale = rat(1, 4).pow(k);
                Ok(if i % 2 == 1 {
                    rat(3, 1) * scale
                } else {
                    rat(2, 1) * scale
                })
            }
            TermSequence::Geometric { first, ratio } => {
                Ok(first * &ratio.pow(-(i as i32)))
            }
            TermSequence::Explicit { terms, .. } => {
                terms.get(i - 1).cloned().ok_or(Error::TermIndex(i))
            }
        }
    }

    /// Sum of all terms after the first `n`.
    pub fn tail_sum(&self, n: usize) -> Rational {
        match self {
            TermSequence::Cantorval => {
                // Tail after 2k terms is (5/3) 4^-k; an odd cut keeps the
                // pending 2/4^k term as well.
                let k = (n / 2 + n % 2) as i32;
                let scale = rat(1, 4).pow(k);
                if n.is_multiple_of(2) {
                    rat(5, 3) * scale
                } else {
                    rat(11, 3) * scale
                }
            }
            TermSequence::Geometric { first, ratio } => {
                let denom = ratio - &Rational::one();
                first * &ratio.pow(-(n as i32)) / denom
            }
            TermSequence::Explicit { terms, tail } => {
                let rest: Rational = terms.iter().skip(n).sum();
                rest + tail
            }
        }
    }

    /// Sum of the entire series.
    pub fn total(&self) -> Rational {
        self.tail_sum(0)
    }

    /// All subsums of the first `n` terms, sorted and deduplicated.
    ///
    /// Enumeration works on integer numerators over a common denominator:
    /// a sorted merge of `sums` with `sums + term` per term, which keeps
    /// the intermediate vectors sorted without a final sort pass.
    pub fn partial_sums(&self, n: usize, budget: u128) -> Result<Vec<Rational>> {
        if n >= 127 || (1u128 << n) > budget {
            return Err(Error::BudgetExceeded {
                needed: if n >= 127 { u128::MAX } else { 1u128 << n },
                budget,
            });
        }
        let terms: Vec<Rational> = (1..=n)
            .map(|i| self.term(i))
            .collect::<Result<Vec<_>>>()?;
        let denom = terms
            .iter()
            .fold(BigInt::one(), |acc, t| acc.lcm(t.denom()));
        let numers: Vec<BigInt> = terms
            .iter()
            .map(|t| t.numer() * (&denom / t.denom()))
            .collect();

        let mut sums: Vec<BigInt> = vec![BigInt::zero()];
        for t in &numers {
            let shifted: Vec<BigInt> = sums.iter().map(|s| s + t).collect();
            let mut merged = Vec::with_capacity(sums.len() * 2);
            let (mut i, mut j) = (0, 0);
            while i < sums.len() && j < shifted.len() {
                match sums[i].cmp(&shifted[j]) {
                    std::cmp::Ordering::Less => {
                        merged.push(sums[i].clone());
                        i += 1;
                    }
                    std::cmp::Ordering::Greater => {
                        merged.push(shifted[j].clone());
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        merged.push(sums[i].clone());
                        i += 1;
                        j += 1;
                    }
                }
            }
            merged.extend_from_slice(&sums[i..]);
            merged.extend_from_slice(&shifted[j..]);
            sums = merged;
        }
        Ok(sums
            .into_iter()
            .map(|s| Rational::new(s, denom.clone()))
            .collect())
    }

    /// The `n`-term outer approximation of the subsum set.
    pub fn approximation(&self, n: usize, budget: u128) -> Result<Approximation> {
        let tail = self.tail_sum(n);
        let sums = self.partial_sums(n, budget)?;
        let parts = sums
            .into_iter()
            .map(|s| {
                let hi = &s + &tail;
                Interval::span(s, hi)
            })
            .collect();
        Ok(Approximation {
            sequence: self.clone(),
            terms_used: n,
            tail,
            set: IntervalSet::from_parts(parts),
        })
    }
}

/// A finite-level outer approximation: `set` covers the true subsum set
/// and every gap of `set` is a genuine gap of it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Approximation {
    pub sequence: TermSequence,
    pub terms_used: usize,
    pub tail: Rational,
    pub set: IntervalSet,
}

impl Approximation {
    /// Maximal open intervals missing from the approximation, within its
    /// hull `[0, total]`.
    pub fn gaps(&self) -> Vec<Gap> {
        match self.set.hull() {
            Some(hull) => self.set.gaps_within(&hull),
            None => Vec::new(),
        }
    }

    /// Gaps ordered by decreasing length, ties left to right — the order
    /// used by file outputs.
    pub fn gaps_by_length(&self) -> Vec<Gap> {
        let mut gaps = self.gaps();
        gaps.sort_by(|a, b| b.length().cmp(&a.length()).then_with(|| a.lo.cmp(&b.lo)));
        gaps
    }
}

//! Digit expansions over the alphabet `{0, 2, 3, 5}` in base 4.
//!
//! A *digit stream* is an eventually periodic sequence of digits
//! `x_1, x_2, …` from that alphabet, standing for the number
//! `Σ x_n / 4^n`. These are exactly the expansions whose digit sums
//! realize the subsum set of the sequence `3/4, 2/4, 3/16, 2/16, …`: the
//! digit `2` takes the level's `2`-term, `3` the `3`-term, `5` both, `0`
//! neither. Most values admit a single expansion; some admit exactly two,
//! linked by the digit-chasing construction in [`chase`]. The
//! representation graph in [`repgraph`] decides membership and enumerates
//! expansions, and [`oracle`] brute-forces collision groups over finite
//! universes.

pub mod chase;
pub mod oracle;
pub mod repgraph;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// The digit alphabet, in increasing order.
pub const DIGITS: [u8; 4] = [0, 2, 3, 5];

/// Is `d` one of the four admissible digits?
pub fn is_digit(d: u8) -> bool {
    DIGITS.contains(&d)
}

/// An eventually periodic digit sequence over `{0, 2, 3, 5}`, stored as a
/// finite prefix followed by a (possibly empty) repeating period. Digits
/// are indexed from 1; digit `n` has weight `4^(-n)`.
///
/// Streams are kept in a normal form that makes equality coincide with
/// equality of the underlying infinite digit sequences: the period is
/// primitive (not a repetition of a shorter word), an all-zero period is
/// replaced by the empty one, the prefix is as short as possible (a prefix
/// digit equal to the last period digit is absorbed by rotating the
/// period), and a purely finite stream carries no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitStream {
    prefix: Vec<u8>,
    period: Vec<u8>,
}

impl DigitStream {
    /// Build and normalize a stream. Rejects digits outside the alphabet.
    pub fn new(prefix: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        for &d in prefix.iter().chain(period.iter()) {
            if !is_digit(d) {
                return Err(Error::InvalidDigit(d));
            }
        }
        let mut s = DigitStream { prefix, period };
        s.normalize();
        Ok(s)
    }

    /// The all-zero stream, i.e. the number `0`.
    pub fn zero() -> Self {
        DigitStream {
            prefix: Vec::new(),
            period: Vec::new(),
        }
    }

    fn normalize(&mut self) {
        // Primitive period: keep the shortest word whose repetition gives
        // the same tail.
        if !self.period.is_empty() {
            let len = self.period.len();
            for d in 1..len {
                if len.is_multiple_of(d) && self.period.chunks(d).all(|c| c == &self.period[..d]) {
                    self.period.truncate(d);
                    break;
                }
            }
            if self.period.iter().all(|&d| d == 0) {
                self.period.clear();
            }
        }
        // Shift the period boundary left while the last prefix digit
        // matches the last period digit; this shortens the preperiod
        // without changing the digit sequence.
        while let (Some(&p), Some(&e)) = (self.prefix.last(), self.period.last()) {
            if p != e {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
        if self.period.is_empty() {
            while self.prefix.last() == Some(&0) {
                self.prefix.pop();
            }
        }
    }

    /// The non-repeating initial digits.
    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    /// The repeating digits; empty means an all-zero tail.
    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// Does the stream end in the all-zero tail?
    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The `n`-th digit, 1-indexed.
    pub fn digit_at(&self, n: usize) -> u8 {
        assert!(n >= 1, "digits are indexed from 1");
        if n <= self.prefix.len() {
            self.prefix[n - 1]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(n - self.prefix.len() - 1) % self.period.len()]
        }
    }

    /// The exact value `Σ digit(n) / 4^n`; always in `[0, 5/3]`.
    pub fn value(&self) -> Rational {
        let mut head = Rational::zero();
        for &d in self.prefix.iter().rev() {
            head = (head + Rational::from_integer(i64::from(d))) * rat(1, 4);
        }
        if self.period.is_empty() {
            return head;
        }
        let mut numer = BigInt::from(0u8);
        for &d in &self.period {
            numer = numer * 4 + d;
        }
        let denom = BigInt::from(4u8).pow(self.period.len() as u32) - 1;
        let cycle = Rational::new(numer, denom);
        head + cycle * rat(1, 4).pow(self.prefix.len() as i32)
    }
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.prefix {
            write!(f, "{d}")?;
        }
        write!(f, "|")?;
        for &d in &self.period {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DigitStream {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut halves = s.split('|');
        let (head, tail) = match (halves.next(), halves.next(), halves.next()) {
            (Some(head), Some(tail), None) => (head, tail),
            _ => {
                return Err(Error::ParseStream(format!(
                    "expected exactly one '|' in {s:?}"
                )))
            }
        };
        let digits = |part: &str| -> Result<Vec<u8>> {
            part.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::ParseStream(format!("bad digit {c:?} in {s:?}")))
                })
                .collect()
        };
        DigitStream::new(digits(head)?, digits(tail)?)
    }
}

impl Serialize for DigitStream {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DigitStream {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> DigitStream {
        text.parse().unwrap()
    }

    #[test]
    fn values_of_known_streams() {
        assert_eq!(s("2|50").value(), rat(5, 6));
        assert_eq!(s("3|05").value(), rat(5, 6));
        assert_eq!(s("|3").value(), rat(1, 1));
        assert_eq!(s("3|").value(), rat(3, 4));
        assert_eq!(s("2|3").value(), rat(3, 4));
        assert_eq!(s("|").value(), rat(0, 1));
        assert_eq!(s("|5").value(), rat(5, 3));
        assert_eq!(s("255|").value(), rat(57, 64));
    }

    #[test]
    fn normal_form() {
        // Non-primitive periods collapse.
        assert_eq!(s("2|5050"), s("2|50"));
        // All-zero periods become the finite tail.
        assert_eq!(s("30|000"), s("3|"));
        // Prefix digits equal to the last period digit are absorbed.
        assert_eq!(s("25|05"), s("2|50"));
        assert_eq!(s("2555|5"), s("2|5"));
        // Absorption stops as soon as the trailing digits disagree.
        assert_eq!(s("255|05").to_string(), "25|50");
        // Trailing zeros of a finite stream are dropped.
        assert_eq!(s("3000|"), s("3|"));
        // The empty stream is zero.
        assert_eq!(s("0|0"), DigitStream::zero());
    }

    #[test]
    fn digit_at_walks_prefix_then_period() {
        let st = s("2|50");
        assert_eq!(
            (1..=6).map(|n| st.digit_at(n)).collect::<Vec<_>>(),
            vec![2, 5, 0, 5, 0, 5]
        );
        let fin = s("32|");
        assert_eq!(fin.digit_at(2), 2);
        assert_eq!(fin.digit_at(3), 0);
    }

    #[test]
    fn display_round_trip() {
        for text in ["|", "2|50", "3|", "|3", "0023|5"] {
            let st = s(text);
            assert_eq!(st.to_string(), text);
            assert_eq!(st.to_string().parse::<DigitStream>().unwrap(), st);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!("2|4".parse::<DigitStream>().is_err());
        assert!("1|".parse::<DigitStream>().is_err());
        assert!("2|5|0".parse::<DigitStream>().is_err());
        assert!("2x|5".parse::<DigitStream>().is_err());
        assert!(DigitStream::new(vec![2], vec![7]).is_err());
    }

    #[test]
    fn serde_as_string() {
        let st = s("2|50");
        assert_eq!(serde_json::to_string(&st).unwrap(), "\"2|50\"");
        let back: DigitStream = serde_json::from_str("\"25|05\"").unwrap();
        assert_eq!(back, st);
    }
}

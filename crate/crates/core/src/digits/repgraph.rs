//! The representation graph of the digit system.
//!
//! Reading digits of a number `v` left to right leaves a *remainder*
//! state: after consuming `x_1 … x_k` the remainder is
//! `4^k (v − Σ_{n ≤ k} x_n/4^n)`, which must always stay inside
//! `[0, 5/3]` — the value range of complete digit tails. So the digit
//! expansions of `v` are exactly the infinite walks from `v` along edges
//! `r → 4r − d` (digit `d`) that never leave that window. For rational
//! `v` the reachable states form a finite set (denominators never grow),
//! which makes everything decidable:
//!
//! - `v` has an expansion at all — equivalently, `v` lies in the subsum
//!   set — iff some walk from `v` reaches a cycle ([`RepGraph::x_member`]);
//! - the expansions themselves are the walks through *live* states, and
//!   since two in-range digit choices can differ only by `1` (the pair
//!   `2, 3`), a path splits at most once, so each value has at most two
//!   expansions ([`RepGraph::representations`]).
//!
//! Liveness verdicts are memoized across calls, so bulk queries (sweeps,
//! the collision oracle) share one [`RepGraph`].

use std::cell::RefCell;
use std::collections::HashMap;

use crate::digits::{DigitStream, DIGITS};
use crate::rational::{rat, Rational};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    /// On the current search path; a repeat visit proves a cycle.
    Visiting,
    Live,
    Dead,
}

/// Why a stream is the only expansion of its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessReason {
    /// The period contains a `2` immediately followed (cyclically) by a
    /// `3`; a stream with that pattern recurring admits no second
    /// expansion.
    TwoThreePattern,
    /// Exhaustive search of the representation graph found no other walk.
    NoChaseStart,
}

/// Verdict of [`RepGraph::uniqueness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    Unique(UniquenessReason),
    /// The value has exactly one other expansion.
    Paired(DigitStream),
}

/// Decision procedures on the remainder-state graph, with shared liveness
/// memoization.
#[derive(Default)]
pub struct RepGraph {
    marks: RefCell<HashMap<Rational, Mark>>,
}

impl RepGraph {
    pub fn new() -> Self {
        Self::default()
    }

    fn in_window(r: &Rational) -> bool {
        !r.is_negative() && *r <= rat(5, 3)
    }

    fn successors(r: &Rational) -> Vec<(u8, Rational)> {
        let four_r = r * &rat(4, 1);
        DIGITS
            .iter()
            .filter_map(|&d| {
                let s = &four_r - &Rational::from_integer(i64::from(d));
                Self::in_window(&s).then_some((d, s))
            })
            .collect()
    }

    /// Does some infinite in-window walk start at `r`? Assumes `r` is in
    /// the window.
    fn live(&self, start: &Rational) -> bool {
        if let Some(&m) = self.marks.borrow().get(start) {
            debug_assert!(m != Mark::Visiting);
            return m == Mark::Live;
        }

        struct Frame {
            state: Rational,
            succs: Vec<(u8, Rational)>,
            next: usize,
            found: bool,
        }
        let frame = |state: Rational| Frame {
            succs: Self::successors(&state),
            state,
            next: 0,
            found: false,
        };

        self.marks
            .borrow_mut()
            .insert(start.clone(), Mark::Visiting);
        let mut stack = vec![frame(start.clone())];
        while let Some(top) = stack.last_mut() {
            if !top.found && top.next < top.succs.len() {
                let succ = top.succs[top.next].1.clone();
                top.next += 1;
                let mark = self.marks.borrow().get(&succ).copied();
                match mark {
                    Some(Mark::Live) => top.found = true,
                    Some(Mark::Dead) => {}
                    Some(Mark::Visiting) => {
                        // `succ` is on the current path: the path from it
                        // down to here plus this edge closes a cycle, so
                        // it can be settled as live right away.
                        self.marks.borrow_mut().insert(succ, Mark::Live);
                        top.found = true;
                    }
                    None => {
                        self.marks
                            .borrow_mut()
                            .insert(succ.clone(), Mark::Visiting);
                        stack.push(frame(succ));
                    }
                }
                continue;
            }
            let done = stack.pop().expect("frame present");
            let mut marks = self.marks.borrow_mut();
            // A cycle through this state may already have settled it.
            let live = done.found || marks.get(&done.state) == Some(&Mark::Live);
            marks.insert(done.state, if live { Mark::Live } else { Mark::Dead });
            drop(marks);
            if live {
                if let Some(parent) = stack.last_mut() {
                    parent.found = true;
                }
            }
        }
        self.marks.borrow().get(start) == Some(&Mark::Live)
    }

    /// Is `v` the value of some digit stream — equivalently, a member of
    /// the subsum set realized by the digit system?
    pub fn x_member(&self, v: &Rational) -> bool {
        Self::in_window(v) && self.live(v)
    }

    fn live_successors(&self, r: &Rational) -> Vec<(u8, Rational)> {
        Self::successors(r)
            .into_iter()
            .filter(|(_, s)| self.live(s))
            .collect()
    }

    /// All digit expansions of `v`, in normal form, sorted. Empty when `v`
    /// is not representable; never more than two entries.
    pub fn representations(&self, v: &Rational) -> Vec<DigitStream> {
        if !self.x_member(v) {
            return Vec::new();
        }

        struct Frame {
            options: Vec<(u8, Rational)>,
            next: usize,
        }

        let mut reps: Vec<DigitStream> = Vec::new();
        let mut digits: Vec<u8> = Vec::new();
        let mut on_path: HashMap<Rational, usize> = HashMap::from([(v.clone(), 0)]);
        let mut path: Vec<Rational> = vec![v.clone()];
        let mut stack = vec![Frame {
            options: self.live_successors(v),
            next: 0,
        }];

        while let Some(top) = stack.last_mut() {
            if top.next >= top.options.len() {
                stack.pop();
                let left = path.pop().expect("path tracks stack");
                on_path.remove(&left);
                digits.pop();
                continue;
            }
            let (d, succ) = top.options[top.next].clone();
            top.next += 1;
            if let Some(&at) = on_path.get(&succ) {
                // Lasso: the walk repeats a path state, so the digits
                // from that state onward (including `d`) repeat forever.
                let mut period = digits[at..].to_vec();
                period.push(d);
                let stream = DigitStream::new(digits[..at].to_vec(), period)
                    .expect("digits come from the alphabet");
                debug_assert_eq!(stream.value(), *v);
                reps.push(stream);
            } else {
                digits.push(d);
                on_path.insert(succ.clone(), path.len());
                path.push(succ.clone());
                stack.push(Frame {
                    options: self.live_successors(&succ),
                    next: 0,
                });
            }
        }

        reps.sort();
        assert!(
            reps.len() <= 2,
            "value {v} has {} digit expansions",
            reps.len()
        );
        reps
    }

    /// The other expansion of `value(s)`, if there is one.
    pub fn dual(&self, s: &DigitStream) -> Option<DigitStream> {
        let reps = self.representations(&s.value());
        assert!(
            reps.iter().any(|r| r == s),
            "stream {s} missing from the expansions of its own value"
        );
        reps.into_iter().find(|r| r != s)
    }

    /// Is `s` the only expansion of its value, and why / what else.
    pub fn uniqueness(&self, s: &DigitStream) -> Uniqueness {
        if has_recurring_two_three(s) {
            debug_assert!(self.dual(s).is_none());
            return Uniqueness::Unique(UniquenessReason::TwoThreePattern);
        }
        match self.dual(s) {
            None => Uniqueness::Unique(UniquenessReason::NoChaseStart),
            Some(other) => Uniqueness::Paired(other),
        }
    }

    /// Convenience wrapper: `true` iff [`uniqueness`](Self::uniqueness)
    /// reports no second expansion.
    pub fn is_unique(&self, s: &DigitStream) -> bool {
        matches!(self.uniqueness(s), Uniqueness::Unique(_))
    }
}

/// Does the digit sequence contain `2` immediately followed by `3`
/// infinitely often — i.e., does the period contain that pair cyclically?
fn has_recurring_two_three(s: &DigitStream) -> bool {
    let p = s.period();
    !p.is_empty()
        && (0..p.len()).any(|i| p[i] == 2 && p[(i + 1) % p.len()] == 3)
}

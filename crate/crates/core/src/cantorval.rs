//! Geometry of the cantorval: its interval components, the complement of
//! their interiors, and exact membership decisions for both.
//!
//! Throughout, `X` denotes the subsum set of `TermSequence::Cantorval`
//! inside the hull `[0, 5/3]`. `X` contains the interval `[2/3, 1]`, and
//! every other interval component of `X` is the image of `[2/3, 1]` under
//! a composition of two kinds of affine maps:
//!
//! - `t_n(x) = 2/4 + 2/16 + ... + 2/4^n + x / 4^(n+1)` for `n >= 0`,
//! - the reflection `h(x) = 5/3 - x`,
//!
//! and the family of components is closed under `h`. A component obtained
//! by maps whose contraction factors multiply to `4^-g` is said to have
//! generation `g`; it has length `(1/3) 4^-g`, and there are `2 * 3^(g-1)`
//! components of generation `g >= 1`.
//!
//! Two derived sets matter for centers of distances:
//!
//! - `Z = [0, 5/3] \ (union of component interiors)` — note this keeps
//!   the gaps of `X` as well as the boundary of every component;
//! - `Y = X ∩ Z` — the part of `X` left after removing the component
//!   interiors.
//!
//! Both admit exact finite-level outer hulls (`z_hull`, `y_hull`) and an
//! exact pointwise decision (`z_member`, combined with digit-expansion
//! liveness for `Y`).

use std::collections::HashSet;

use crate::interval::{Gap, Interval, IntervalSet};
use crate::rational::{rat, Rational};
use crate::series::{TermSequence, DEFAULT_SUBSUM_BUDGET};

/// Right endpoint of the hull: the sum of the whole series.
pub fn hull_total() -> Rational {
    rat(5, 3)
}

/// The central interval component `[2/3, 1]`.
pub fn base_component() -> Interval {
    Interval::span(rat(2, 3), rat(1, 1))
}

/// `t_n` applied to an interval: prefix of `n` twos (summing to
/// `(2/3)(1 - 4^-n)`), then scale by `4^-(n+1)`.
fn t_map(n: u32, iv: &Interval) -> Interval {
    let scale = rat(1, 4).pow(n as i32 + 1);
    let offset = rat(2, 3) * (Rational::one() - rat(1, 4).pow(n as i32));
    Interval::span(
        &offset + &(iv.lo() * &scale),
        &offset + &(iv.hi() * &scale),
    )
}

/// All interval components of generation `<= depth`, grouped by
/// generation. `generations[0]` is the base component alone.
pub fn component_generations(depth: u32) -> Vec<Vec<Interval>> {
    let mut gens: Vec<Vec<Interval>> = vec![vec![base_component()]];
    let five_thirds = hull_total();
    for g in 1..=depth {
        let mut level = Vec::new();
        // A generation-g component is t_{e-1} (or h ∘ t_{e-1}) of a
        // generation-(g-e) component, for every split e = 1..=g.
        for e in 1..=g {
            for iv in &gens[(g - e) as usize] {
                let mapped = t_map(e - 1, iv);
                level.push(mapped.reflect(&five_thirds));
                level.push(mapped);
            }
        }
        gens.push(level);
    }
    gens
}

/// Union of all interval components of generation `<= depth`, normalized.
/// The parts never merge: there are exactly `3^depth` of them.
pub fn component_intervals(depth: u32) -> IntervalSet {
    let parts: Vec<Interval> = component_generations(depth)
        .into_iter()
        .flatten()
        .collect();
    IntervalSet::from_parts(parts)
}

/// Finite-level outer hull of `Z`: the hull `[0, 5/3]` minus the interiors
/// of all components of generation `<= depth`. Decreases to `Z` as the
/// depth grows.
pub fn z_hull(depth: u32) -> IntervalSet {
    let window = Interval::span(Rational::zero(), hull_total());
    component_intervals(depth).closed_complement_within(&window)
}

/// Finite-level outer hull of `Y = X ∩ Z`: intersect the `Z` hull with the
/// subsum approximation at matching scale (2·depth terms = digit depth).
pub fn y_hull(depth: u32) -> IntervalSet {
    let approx = TermSequence::cantorval()
        .approximation(2 * depth as usize, DEFAULT_SUBSUM_BUDGET)
        .expect("y_hull depth within budget");
    z_hull(depth).intersect(&approx.set)
}

/// Exact decision: does `x` avoid the interior of *every* interval
/// component? Works by orbit reduction — each step either resolves the
/// question or maps `x` to an equivalent point whose denominator divides
/// the original one (times 3):
///
/// - components inside `[0, 5/12]` are exactly the full family scaled by
///   1/4, so recurse on `4x`;
/// - components inside `[1/2, 2/3)` are exactly `1/2 +` (family ∩ [0,2/3))
///   `/ 4`, so recurse on `4(x - 1/2)`;
/// - `(5/12, 1/2)` contains no component at all;
/// - the family is closed under `h(x) = 5/3 - x`, so fold `x > 1` down;
/// - inside `(2/3, 1)` the answer is no, on the rest of `[2/3, 1]` yes.
///
/// The orbit preserves the denominator (up to the factor 3 introduced by
/// `h`), so it must eventually cycle; a cycle that never enters `(2/3, 1)`
/// means no component interior is ever reached.
pub fn z_member(x: &Rational) -> bool {
    if x.is_negative() || *x > hull_total() {
        return false;
    }
    let mut r = x.clone();
    let mut seen: HashSet<Rational> = HashSet::new();
    let two_thirds = rat(2, 3);
    let one = Rational::one();
    let half = rat(1, 2);
    let five_twelfths = rat(5, 12);
    loop {
        if !seen.insert(r.clone()) {
            // Orbit cycled without entering a component interior.
            return true;
        }
        if r > one {
            r = hull_total() - r;
        } else if r > two_thirds && r < one {
            return false;
        } else if r == two_thirds || r == one {
            return true;
        } else if r <= five_twelfths {
            r = rat(4, 1) * r;
        } else if r < half {
            // The main gap region: no component touches it.
            return true;
        } else {
            // [1/2, 2/3): shift-and-scale copy of [0, 2/3).
            r = rat(4, 1) * (r - &half);
        }
    }
}

/// The subsums of the first `n` digit levels (2n terms) that land inside
/// the base component `[2/3, 1]`. These left endpoints tile the component:
/// consecutive lattice points spaced `4^-n`.
pub fn k_set(n: u32) -> Vec<Rational> {
    let seq = TermSequence::cantorval();
    let sums = seq
        .partial_sums(2 * n as usize, DEFAULT_SUBSUM_BUDGET)
        .expect("k_set level within budget");
    let lo = rat(2, 3);
    let hi = rat(1, 1);
    sums.into_iter().filter(|s| *s >= lo && *s <= hi).collect()
}

/// Pair each gap of the digit-`depth` approximation with an interval
/// component of the same length. Within a common length, gaps and
/// components are paired left to right; counts match generation by
/// generation, so the pairing is a bijection.
pub fn gap_component_pairs(depth: u32) -> Vec<(Gap, Interval)> {
    let approx = TermSequence::cantorval()
        .approximation(2 * depth as usize, DEFAULT_SUBSUM_BUDGET)
        .expect("depth within budget");
    let mut gaps = approx.gaps_by_length();
    let mut components: Vec<Interval> = component_intervals(depth).parts().to_vec();
    components.sort_by(|a, b| {
        b.length()
            .cmp(&a.length())
            .then_with(|| a.lo().cmp(b.lo()))
    });
    // Generation g >= 1 supplies 2·3^(g-1) gaps and equally many
    // components of length (1/3)4^-g; the base component has no partner.
    components.retain(|iv| iv.length() < rat(1, 3));
    debug_assert_eq!(gaps.len(), components.len());
    gaps.drain(..).zip(components).collect()
}

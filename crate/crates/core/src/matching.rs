//! Pairing two sequences so their realized distances settle on a target value.
//!
//! The input is a pair of sequences `a`, `b` whose tails accumulate on a
//! common finite cluster set `C`, together with a distance `alpha` admitted
//! by the center of distances of `C` (see [`center_of_metric`]). A bijection
//! between prefixes of the two sequences is grown one index at a time; each
//! assignment routes through the cluster set — nearest cluster point, then a
//! cluster partner at distance exactly `alpha`, then the earliest unused
//! opposite-side entry close to that partner — so the realized distances
//! `d(a_m, b_{pi(m)})` approach `alpha`. Alternating forward and backward
//! passes keep the map injective and defined in both directions on the whole
//! prefix.
//!
//! Cluster geometry comes in two flavors: rational points on the line with
//! `d(x, y) = |x - y|`, or an explicit [`FiniteMetric`] with sequences given
//! as indices into its point list. Everything is exact; ties are broken
//! toward the earliest cluster position or sequence index, so runs are
//! deterministic and a longer run extends a shorter one verbatim.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// A finite metric space: ordered point labels plus an exact distance matrix.
///
/// Construction checks the metric axioms — square shape, zero diagonal,
/// positive symmetric off-diagonal entries, and the triangle inequality — so
/// a value of this type is always a genuine metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMetric")]
pub struct FiniteMetric {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct RawMetric {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

impl TryFrom<RawMetric> for FiniteMetric {
    type Error = Error;

    fn try_from(raw: RawMetric) -> Result<Self> {
        FiniteMetric::new(raw.labels, raw.dist)
    }
}

impl FiniteMetric {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MetricViolation(
                "a metric needs at least one point".into(),
            ));
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::MetricViolation(format!(
                "distance matrix must be {n} x {n} to match the labels"
            )));
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(Error::MetricViolation(format!(
                    "d({0}, {0}) must be zero",
                    labels[i]
                )));
            }
            for j in 0..n {
                if dist[i][j].is_negative() {
                    return Err(Error::MetricViolation(format!(
                        "negative distance between {} and {}",
                        labels[i], labels[j]
                    )));
                }
                if i != j && dist[i][j].is_zero() {
                    return Err(Error::MetricViolation(format!(
                        "distinct points {} and {} at distance zero",
                        labels[i], labels[j]
                    )));
                }
                if dist[i][j] != dist[j][i] {
                    return Err(Error::MetricViolation(format!(
                        "asymmetric distances between {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > &dist[i][j] + &dist[j][k] {
                        return Err(Error::MetricViolation(format!(
                            "triangle inequality fails on ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, dist })
    }

    /// The metric induced on a set of rationals by `|x - y|`. Points are
    /// sorted and deduplicated; labels are their decimal-free renderings.
    pub fn from_points(points: &[Rational]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::MetricViolation(
                "a metric needs at least one point".into(),
            ));
        }
        let labels = pts.iter().map(|p| p.to_string()).collect();
        let dist = pts
            .iter()
            .map(|x| pts.iter().map(|y| (x - y).abs()).collect())
            .collect();
        Ok(Self { labels, dist })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn distance(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }
}

/// Center of distances of a finite metric space: every value `alpha`
/// (always including `0`) such that each point has a partner at distance
/// exactly `alpha`. Candidates beyond the entries of the distance matrix
/// cannot qualify, so the search is finite and exact. Sorted ascending.
pub fn center_of_metric(metric: &FiniteMetric) -> Vec<Rational> {
    let n = metric.len();
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    for row in &metric.dist {
        for d in row {
            candidates.insert(d.clone());
        }
    }
    candidates
        .into_iter()
        .filter(|alpha| (0..n).all(|i| (0..n).any(|j| metric.dist[i][j] == *alpha)))
        .collect()
}

/// One matching problem: the cluster geometry plus the two sequences.
///
/// `Line` places everything on the rational line; `Finite` works inside an
/// explicit [`FiniteMetric`], with cluster and sequences given as indices
/// into its point list. The cluster set is the common accumulation set of
/// the two sequence tails; the construction only inspects it through
/// distances, so its order (and any duplicates) are irrelevant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatchInstance {
    Line {
        cluster: Vec<Rational>,
        a: Vec<Rational>,
        b: Vec<Rational>,
    },
    Finite {
        metric: FiniteMetric,
        cluster: Vec<usize>,
        a: Vec<usize>,
        b: Vec<usize>,
    },
}

/// How one trace entry was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepRule {
    /// The unconditional opening assignment pairing the two first entries.
    Anchor,
    /// A forward pass: an unmatched `a`-index received its partner.
    Forward,
    /// A backward pass: an unmatched `b`-index received its partner.
    Backward,
}

/// One recorded assignment of [`build_permutation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchStep {
    pub rule: StepRule,
    /// The index being matched: an `a`-index for anchor and forward entries,
    /// a `b`-index for backward ones.
    pub index: usize,
    /// The partner chosen on the opposite side.
    pub partner: usize,
    /// Realized distance between the two matched sequence entries.
    pub distance: Rational,
    /// Admission threshold `1/(m+1)` the partner had to beat. The anchor is
    /// exempt but still records the value of the formula at step zero.
    pub bound: Rational,
}

impl MatchStep {
    /// The matched pair as `(a_index, b_index)` regardless of direction.
    pub fn pair(&self) -> (usize, usize) {
        match self.rule {
            StepRule::Backward => (self.partner, self.index),
            _ => (self.index, self.partner),
        }
    }
}

/// Full record of a [`build_permutation`] run, in assignment order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchTrace {
    pub steps: Vec<MatchStep>,
}

impl MatchTrace {
    /// The constructed matching as `(a_index, b_index)` pairs sorted by
    /// `a_index`. Both coordinates are injective, and every index below the
    /// requested step count appears in both.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.steps.iter().map(MatchStep::pair).collect();
        out.sort_unstable();
        out
    }

    /// Realized distances in assignment order.
    pub fn distances(&self) -> impl Iterator<Item = &Rational> {
        self.steps.iter().map(|s| &s.distance)
    }

    /// CSV rendering with header `step,direction,index,partner,distance`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,direction,index,partner,distance\n");
        for (k, s) in self.steps.iter().enumerate() {
            let direction = match s.rule {
                StepRule::Anchor => "anchor",
                StepRule::Forward => "forward",
                StepRule::Backward => "backward",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                k, direction, s.index, s.partner, s.distance
            );
        }
        out
    }
}

/// Builds an injective matching between length-`n` prefixes of the two
/// sequences whose realized distances settle on `alpha`.
///
/// `alpha` must be admitted by the center of distances of the cluster set —
/// otherwise some cluster point has no partner and the run stops with
/// [`Error::NoPartnerInCluster`]. The first pair is always `(0, 0)`,
/// recorded as the anchor. Every later step `m` runs a forward pass (match
/// `a_m` if still unmatched) and then a backward pass (match `b_m` if still
/// unmatched): walk to the cluster point nearest the sequence entry, over to
/// the first cluster point at distance exactly `alpha` from it, and claim
/// the earliest unused opposite-side entry within `1/(m + 1)` of that
/// partner. When no admissible entry exists in the supplied prefix the run
/// stops with [`Error::PrefixExhausted`]; longer sequences fix that without
/// disturbing the steps already taken.
pub fn build_permutation(
    instance: &MatchInstance,
    alpha: &Rational,
    n: usize,
) -> Result<MatchTrace> {
    if n == 0 {
        return Err(Error::BadMatchInstance(
            "at least one step is required".into(),
        ));
    }
    if alpha.is_negative() {
        return Err(Error::BadMatchInstance(
            "target distance must be nonnegative".into(),
        ));
    }
    match instance {
        MatchInstance::Line { cluster, a, b } => {
            if cluster.is_empty() {
                return Err(Error::BadMatchInstance("cluster set is empty".into()));
            }
            if a.len() < n || b.len() < n {
                return Err(Error::BadMatchInstance(format!(
                    "both sequences need at least {n} entries"
                )));
            }
            let mut points = cluster.clone();
            points.sort();
            points.dedup();
            drive(a, b, &points, |x, y| (x - y).abs(), alpha, n)
        }
        MatchInstance::Finite {
            metric,
            cluster,
            a,
            b,
        } => {
            if cluster.is_empty() {
                return Err(Error::BadMatchInstance("cluster set is empty".into()));
            }
            let size = metric.len();
            if cluster.iter().chain(a).chain(b).any(|&i| i >= size) {
                return Err(Error::BadMatchInstance(
                    "index outside the metric's point list".into(),
                ));
            }
            if a.len() < n || b.len() < n {
                return Err(Error::BadMatchInstance(format!(
                    "both sequences need at least {n} entries"
                )));
            }
            let mut points = cluster.clone();
            points.sort_unstable();
            points.dedup();
            drive(
                a,
                b,
                &points,
                |i, j| metric.distance(*i, *j).clone(),
                alpha,
                n,
            )
        }
    }
}

fn drive<P, D: Fn(&P, &P) -> Rational>(
    a: &[P],
    b: &[P],
    cluster: &[P],
    dist: D,
    alpha: &Rational,
    n: usize,
) -> Result<MatchTrace> {
    // forward[i] = j and backward[j] = i both mean the pair (a_i, b_j);
    // keeping the two views in lockstep makes injectivity a lookup.
    let mut forward: Vec<Option<usize>> = vec![None; a.len()];
    let mut backward: Vec<Option<usize>> = vec![None; b.len()];
    let mut steps = Vec::with_capacity(n);

    forward[0] = Some(0);
    backward[0] = Some(0);
    steps.push(MatchStep {
        rule: StepRule::Anchor,
        index: 0,
        partner: 0,
        distance: dist(&a[0], &b[0]),
        bound: Rational::one(),
    });

    for m in 1..n {
        let bound = rat(1, m as i64 + 1);
        if forward[m].is_none() {
            let x = nearest(cluster, &a[m], &dist);
            let y = partner_at(cluster, x, alpha, &dist)
                .ok_or(Error::NoPartnerInCluster { step: m })?;
            let j = (0..b.len())
                .find(|&j| backward[j].is_none() && dist(&cluster[y], &b[j]) < bound)
                .ok_or(Error::PrefixExhausted { step: m })?;
            forward[m] = Some(j);
            backward[j] = Some(m);
            steps.push(MatchStep {
                rule: StepRule::Forward,
                index: m,
                partner: j,
                distance: dist(&a[m], &b[j]),
                bound: bound.clone(),
            });
        }
        if backward[m].is_none() {
            let x = nearest(cluster, &b[m], &dist);
            let y = partner_at(cluster, x, alpha, &dist)
                .ok_or(Error::NoPartnerInCluster { step: m })?;
            let i = (0..a.len())
                .find(|&i| forward[i].is_none() && dist(&cluster[y], &a[i]) < bound)
                .ok_or(Error::PrefixExhausted { step: m })?;
            forward[i] = Some(m);
            backward[m] = Some(i);
            steps.push(MatchStep {
                rule: StepRule::Backward,
                index: m,
                partner: i,
                distance: dist(&a[i], &b[m]),
                bound,
            });
        }
    }
    Ok(MatchTrace { steps })
}

fn nearest<P, D: Fn(&P, &P) -> Rational>(cluster: &[P], target: &P, dist: &D) -> usize {
    let mut best = 0;
    let mut best_d = dist(&cluster[0], target);
    for (idx, c) in cluster.iter().enumerate().skip(1) {
        let d = dist(c, target);
        if d < best_d {
            best = idx;
            best_d = d;
        }
    }
    best
}

fn partner_at<P, D: Fn(&P, &P) -> Rational>(
    cluster: &[P],
    from: usize,
    alpha: &Rational,
    dist: &D,
) -> Option<usize> {
    (0..cluster.len()).find(|&y| dist(&cluster[from], &cluster[y]) == *alpha)
}

/// Tail check on a trace: `true` iff every realized distance among the last
/// `window` entries lies within `tol` of `alpha`. A window longer than the
/// trace checks every entry.
pub fn verify_convergence(
    trace: &MatchTrace,
    alpha: &Rational,
    window: usize,
    tol: &Rational,
) -> bool {
    let start = trace.steps.len().saturating_sub(window);
    trace.steps[start..]
        .iter()
        .all(|s| (&s.distance - alpha).abs() <= *tol)
}

//! Certified center-of-distances sweeps for the sets built in this crate.
//!
//! A sweep samples an equally spaced grid of candidate distances and
//! classifies every point. Members come with the argument that admits
//! them (a series term whose flip map works at every level, or an exact
//! translation identity between pieces of the set). Exclusions come with
//! an [`ExclusionCertificate`] that is re-validated from scratch against
//! an independent membership decision. Anything the level cannot settle
//! is reported unresolved rather than guessed.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{in_center, ExclusionCertificate};
use crate::cantorval::{hull_total, y_hull, z_hull, z_member};
use crate::digits::repgraph::RepGraph;
use crate::error::{Error, Result};
use crate::interval::{Gap, Interval, IntervalSet};
use crate::rational::{rat, Rational};
use crate::series::{Approximation, TermSequence, DEFAULT_SUBSUM_BUDGET};

/// Why a grid point is accepted as a member of the center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MemberEvidence {
    /// The distance is term number `index` of the series: toggling that
    /// term in any subsum yields a partner at exactly this distance, an
    /// argument independent of the level. `checked_level` records the
    /// level whose outer approximation was additionally checked to admit
    /// the distance.
    SequenceTerm { index: usize, checked_level: u32 },
    /// The distance follows from exact translation identities between
    /// pieces of the set, verified on the outer hulls up to `levels`.
    TranslationIdentity { levels: u32 },
}

/// A distance confirmed to lie in the center, with its justification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfirmedMember {
    pub value: Rational,
    pub evidence: MemberEvidence,
}

/// Classification of one grid point, referring back to the report's
/// member and certificate lists by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PointClass {
    Member { member: usize },
    Excluded { certificate: usize },
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub alpha: Rational,
    pub class: PointClass,
}

/// Outcome of a sweep: the outer approximation it ran against, the
/// confirmed members, every certificate it holds, and the classified
/// grid. Certificates are self-contained — each one was validated
/// against an outer approximation of the set and an independent
/// membership decision before being admitted here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterReport {
    pub label: String,
    pub level: u32,
    pub outer: IntervalSet,
    pub total: Rational,
    pub members: Vec<ConfirmedMember>,
    pub certificates: Vec<ExclusionCertificate>,
    pub grid: Vec<GridPoint>,
    pub notes: Vec<String>,
}

impl CenterReport {
    /// Grid counts as `(members, excluded, unresolved)`.
    pub fn tally(&self) -> (usize, usize, usize) {
        let mut m = 0;
        let mut e = 0;
        let mut u = 0;
        for point in &self.grid {
            match point.class {
                PointClass::Member { .. } => m += 1,
                PointClass::Excluded { .. } => e += 1,
                PointClass::Unresolved => u += 1,
            }
        }
        (m, e, u)
    }

    /// The grid distances the sweep could not settle at this level.
    pub fn unresolved(&self) -> Vec<&Rational> {
        self.grid
            .iter()
            .filter(|p| p.class == PointClass::Unresolved)
            .map(|p| &p.alpha)
            .collect()
    }
}

/// One certificate per (gap, probe) pair where the probe qualifies: a
/// probe `w` of the set with `2w ≤ gap.lo` excludes the whole window
/// `(gap.lo − w, gap.hi − w)` from the center of any set that contains
/// `w` and misses the gap, because both `w + α` (in the gap) and `w − α`
/// (negative) then fail. Pairs that do not qualify are skipped.
pub fn gap_offset_exclusions(gaps: &[Gap], probes: &[Rational]) -> Vec<ExclusionCertificate> {
    let mut out = Vec::new();
    for gap in gaps {
        for probe in probes {
            if let Ok(cert) = ExclusionCertificate::from_gap(probe.clone(), gap.clone()) {
                out.push(cert);
            }
        }
    }
    out
}

/// Partner of a subsum under toggling one term. `indices` is the index
/// set of the point (1-based, distinct); the partner is `point − term(k)`
/// when `k` is used and `point + term(k)` otherwise. Either way the
/// partner is again a subsum at exact distance `term(k)` — the reason
/// every term of the series belongs to the center of the subsum set.
pub fn term_flip_partner(seq: &TermSequence, indices: &[usize], k: usize) -> Result<Rational> {
    let mut used = HashSet::new();
    for &i in indices {
        if i == 0 || !used.insert(i) {
            return Err(Error::TermIndex(i));
        }
    }
    let mut point = Rational::zero();
    for &i in indices {
        point += &seq.term(i)?;
    }
    let t = seq.term(k)?;
    Ok(if used.contains(&k) { point - t } else { point + t })
}

/// Push certified non-members down the set's self-similarity.
///
/// Checks the contraction hypothesis exactly at this level — the
/// approximation must stay inside `[0, bound]` and satisfy
/// `scale(set, λ) ⊆ set ∩ [0, λ·bound]` — then, for each input point
/// (which must lie in `[0, bound)` *outside* the approximation, hence
/// outside the true set), emits `λx, λ²x, …, λ^depth·x`. For a set whose
/// small members are exactly λ times its members, each emitted point is
/// again a non-member.
pub fn propagate_scaled_nonmembers(
    approx: &Approximation,
    lambda: &Rational,
    bound: &Rational,
    non_members: &[Rational],
    depth: u32,
) -> Result<Vec<Rational>> {
    if !lambda.is_positive() || *lambda > Rational::one() {
        return Err(Error::ContractionOutOfRange(lambda.to_string()));
    }
    match approx.set.hull() {
        Some(h) if !h.lo().is_negative() && h.hi() <= bound => {}
        _ => {
            return Err(Error::SelfCheck(format!(
                "approximation is empty or escapes [0, {bound}]"
            )))
        }
    }
    let window = Interval::span(Rational::zero(), lambda * bound);
    let scaled = approx.set.scale(lambda)?;
    if !scaled.is_subset_of(&approx.set.restrict(&window)) {
        return Err(Error::SelfCheck(format!(
            "scaling by {lambda} does not map the level set into itself below {}",
            window.hi()
        )));
    }
    let mut out = Vec::new();
    for x in non_members {
        if x.is_negative() || x >= bound {
            return Err(Error::BadCertificate(format!(
                "point {x} lies outside [0, {bound})"
            )));
        }
        if approx.set.contains(x) {
            return Err(Error::BadCertificate(format!(
                "point {x} lies inside the outer approximation; nothing certifies it as a non-member"
            )));
        }
        let mut y = x.clone();
        for _ in 0..depth {
            y = &y * lambda;
            out.push(y.clone());
        }
    }
    Ok(out)
}

fn grid_points(span: &Rational, count: u32) -> Vec<Rational> {
    (1..=i64::from(count))
        .map(|k| span * &rat(k, i64::from(count)))
        .collect()
}

fn covering_certificate(certs: &[ExclusionCertificate], alpha: &Rational) -> Option<usize> {
    certs.iter().position(|c| c.covers(alpha))
}

/// Index of the series term equal to `alpha`, if any, probing up to
/// `max_index` terms. Relies on the terms being strictly decreasing.
fn matching_term(seq: &TermSequence, alpha: &Rational, max_index: usize) -> Option<usize> {
    for k in 1..=max_index {
        let t = seq.term(k).ok()?;
        match t.cmp(alpha) {
            Ordering::Equal => return Some(k),
            Ordering::Less => return None,
            Ordering::Greater => {}
        }
    }
    None
}

/// How far beyond the stated level to probe for exact term hits on grid
/// points. Terms shrink by a factor ≥ 2 per index, so 64 indices reach
/// far below any feasible grid spacing.
const TERM_PROBE_LIMIT: usize = 64;

fn cached_probe_menu<'a>(
    seq: &TermSequence,
    level: u32,
    menus: &'a mut BTreeMap<u32, Vec<Rational>>,
) -> Result<&'a [Rational]> {
    if let std::collections::btree_map::Entry::Vacant(e) = menus.entry(level) {
        let n = 2 * level as usize;
        let sums = seq.partial_sums(n, DEFAULT_SUBSUM_BUDGET)?;
        let tail = seq.tail_sum(n);
        let mut menu: Vec<Rational> = sums.iter().map(|s| s + &tail).collect();
        menu.extend(sums);
        menu.sort();
        menu.dedup();
        e.insert(menu);
    }
    Ok(menus.get(&level).expect("menu inserted above"))
}

/// Search the probe menus (finite subsums, optionally completed by a full
/// tail — both exact members of the subsum set) for a witness excluding
/// `beta` via one of the given gaps. The witness must land strictly
/// inside the window `(gap.lo − beta, gap.hi − beta)` and satisfy
/// `2w ≤ gap.lo`; the first qualifying menu entry wins, scanning menus of
/// increasing depth.
fn subsum_witness_certificate(
    seq: &TermSequence,
    beta: &Rational,
    gaps: &[Gap],
    menus: &mut BTreeMap<u32, Vec<Rational>>,
) -> Result<ExclusionCertificate> {
    for level in 4..=8u32 {
        let menu = cached_probe_menu(seq, level, menus)?;
        for gap in gaps {
            let window_lo = &gap.lo - beta;
            let window_hi = &gap.hi - beta;
            let cap = gap.lo.half();
            let start = menu.partition_point(|m| *m <= window_lo);
            if let Some(w) = menu[start..].first() {
                if *w < window_hi && *w <= cap {
                    return ExclusionCertificate::from_gap(w.clone(), gap.clone());
                }
            }
        }
    }
    Err(Error::Unresolved(beta.to_string()))
}

/// Sweep the center of distances of the quarter-base subsum set.
///
/// The outer approximation keeps `2·level` terms (digit level `level`).
/// Every series term is confirmed as a member via its flip map plus an
/// `in_center` check at this level. Grid points over `(0, 5/6]` that are
/// not terms are excluded by certificates: distances above `5/6` fall to
/// the diameter argument anchored at the member `5/6`, distances in
/// `(5/24, 5/6]` get a menu-searched witness against one of the three
/// persistent gaps `(7/6,5/4)`, `(29/48,5/8)`, `(5/12,1/2)`, and smaller
/// distances are scaled up by powers of 4 first, with the certificate
/// scaled back down. A scaled certificate only validates when this level
/// resolves the scaled gap, so very fine grids need roughly
/// `level ≥ log₄(grid count) + 2`; points whose certificate fails
/// validation are reported unresolved.
pub fn verify_cantorval_center(level: u32, grid: u32) -> Result<CenterReport> {
    if level < 4 {
        return Err(Error::InsufficientLevel {
            needed: 4,
            got: level,
        });
    }
    if grid == 0 {
        return Err(Error::EmptySet("sweep grid"));
    }
    let seq = TermSequence::cantorval();
    let total = hull_total();
    let term_count = 2 * level as usize;
    let outer = seq.approximation(term_count, DEFAULT_SUBSUM_BUDGET)?.set;
    let graph = RepGraph::new();

    let mut members = Vec::new();
    let mut member_index: BTreeMap<Rational, usize> = BTreeMap::new();
    for index in 1..=term_count {
        let value = seq.term(index)?;
        if !in_center(&outer, &value) {
            return Err(Error::SelfCheck(format!(
                "term {value} must be admitted at every level, but level {level} rejects it"
            )));
        }
        member_index.insert(value.clone(), members.len());
        members.push(ConfirmedMember {
            value,
            evidence: MemberEvidence::SequenceTerm {
                index,
                checked_level: level,
            },
        });
    }

    // 5/6 is a member of the set and the set tops out at 5/3 = 5/6 + 5/6,
    // so no distance above 5/6 has a partner for it.
    let reach = rat(5, 6);
    let diameter_cert = ExclusionCertificate::from_total(
        reach.clone(),
        Gap::new(reach.clone(), &total + &total)?,
        &total,
    )?;
    diameter_cert.validate(&outer, &total, |v| Ok(graph.x_member(v)))?;
    let mut certificates = vec![diameter_cert];

    let persistent_gaps = [
        Gap::new(rat(7, 6), rat(5, 4))?,
        Gap::new(rat(29, 48), rat(5, 8))?,
        Gap::new(rat(5, 12), rat(1, 2))?,
    ];
    let scale_floor = rat(5, 24);
    let four = rat(4, 1);
    let quarter = rat(1, 4);
    let mut menus = BTreeMap::new();

    let mut grid_report = Vec::new();
    let mut any_unresolved = false;
    for alpha in grid_points(&reach, grid) {
        if let Some(&m) = member_index.get(&alpha) {
            grid_report.push(GridPoint {
                alpha,
                class: PointClass::Member { member: m },
            });
            continue;
        }
        if let Some(k) = matching_term(&seq, &alpha, TERM_PROBE_LIMIT) {
            member_index.insert(alpha.clone(), members.len());
            members.push(ConfirmedMember {
                value: alpha.clone(),
                evidence: MemberEvidence::SequenceTerm {
                    index: k,
                    checked_level: level,
                },
            });
            grid_report.push(GridPoint {
                alpha,
                class: PointClass::Member {
                    member: members.len() - 1,
                },
            });
            continue;
        }
        if let Some(c) = covering_certificate(&certificates, &alpha) {
            grid_report.push(GridPoint {
                alpha,
                class: PointClass::Excluded { certificate: c },
            });
            continue;
        }
        let mut beta = alpha.clone();
        let mut shrink = Rational::one();
        while beta <= scale_floor {
            beta = &beta * &four;
            shrink = &shrink * &quarter;
        }
        let class = match subsum_witness_certificate(&seq, &beta, &persistent_gaps, &mut menus) {
            Ok(cert) => {
                let cert = if shrink == Rational::one() {
                    cert
                } else {
                    cert.scale(&shrink)?
                };
                match cert.validate(&outer, &total, |v| Ok(graph.x_member(v))) {
                    Ok(()) => {
                        certificates.push(cert);
                        PointClass::Excluded {
                            certificate: certificates.len() - 1,
                        }
                    }
                    Err(_) => PointClass::Unresolved,
                }
            }
            Err(_) => PointClass::Unresolved,
        };
        any_unresolved |= class == PointClass::Unresolved;
        grid_report.push(GridPoint { alpha, class });
    }

    let mut notes = Vec::new();
    if any_unresolved {
        notes.push(format!(
            "some grid points stayed unresolved: level {level} does not resolve their scaled gaps"
        ));
    }
    Ok(CenterReport {
        label: "cantorval".into(),
        level,
        outer,
        total,
        members,
        certificates,
        grid: grid_report,
        notes,
    })
}

/// Exact membership in the geometric subsum set, by the greedy digit
/// expansion. With an integer ratio `q ≥ 3` the remainder windows
/// `[0, total/q]` (skip the next term) and `[c₁, total]` (take it) are
/// disjoint, so the expansion is forced; remainders carry a bounded
/// denominator, hence the orbit either repeats (the point is a subsum) or
/// falls into the middle gap or outside `[0, total]` (it is not).
fn geometric_member(first: &Rational, ratio: &Rational, value: &Rational) -> bool {
    let total = first / &(ratio - &Rational::one());
    let take = first / ratio;
    let skip = &total / ratio;
    if value.is_negative() || *value > total {
        return false;
    }
    let mut seen = HashSet::new();
    let mut r = value.clone();
    loop {
        if !seen.insert(r.clone()) {
            return true;
        }
        r = if r >= take {
            &(&r * ratio) - first
        } else if r <= skip {
            &r * ratio
        } else {
            return false;
        };
    }
}

/// Sweep the center of distances of the geometric subsum set with first
/// term `first/ratio` and integer `ratio ≥ 3`.
///
/// The terms are confirmed as members; every other distance in
/// `(0, total]` is excluded. The certificates follow the gap structure
/// exactly: `(total/qⁿ, cₙ)` is a true gap of the set (witness `0`
/// directly, and witness `total/qⁿ⁺¹` for the band just below it), and
/// distances above `c₁` fall to the diameter argument. For grids finer
/// than the stated level resolves, the same gap family continues at
/// deeper indices; those certificates are validated against an internally
/// built deeper approximation of the same set (noted in the report).
pub fn verify_geometric_center(
    first: &Rational,
    ratio: u32,
    level: u32,
    grid: u32,
) -> Result<CenterReport> {
    if ratio < 3 {
        return Err(Error::RatioOutsideCertifiedRange(format!(
            "ratio {ratio} gives overlapping digit windows; need an integer ratio of at least 3"
        )));
    }
    if level == 0 {
        return Err(Error::InsufficientLevel { needed: 1, got: 0 });
    }
    if grid == 0 {
        return Err(Error::EmptySet("sweep grid"));
    }
    let q = Rational::from_integer(i64::from(ratio));
    let seq = TermSequence::geometric(first.clone(), q.clone())?;
    let total = seq.total();
    let outer = seq
        .approximation(level as usize, DEFAULT_SUBSUM_BUDGET)?
        .set;

    // Depth at which the gap family outruns the grid spacing: the
    // smallest grid point total/grid exceeds the tail total/q^deep.
    let mut deep = 0u32;
    let mut pow: u128 = 1;
    while pow <= u128::from(grid) {
        pow = pow.saturating_mul(u128::from(ratio));
        deep += 1;
    }
    let deep_level = deep.max(level);
    let deep_outer = if deep_level == level {
        outer.clone()
    } else {
        seq.approximation(deep_level as usize, DEFAULT_SUBSUM_BUDGET)?
            .set
    };

    let mut members = Vec::new();
    let mut member_index: BTreeMap<Rational, usize> = BTreeMap::new();
    for index in 1..=level as usize {
        let value = seq.term(index)?;
        if !in_center(&outer, &value) {
            return Err(Error::SelfCheck(format!(
                "term {value} must be admitted at every level, but level {level} rejects it"
            )));
        }
        member_index.insert(value.clone(), members.len());
        members.push(ConfirmedMember {
            value,
            evidence: MemberEvidence::SequenceTerm {
                index,
                checked_level: level,
            },
        });
    }

    let c1 = seq.term(1)?;
    let mut certificates = vec![ExclusionCertificate::from_total(
        c1.clone(),
        Gap::new(c1, &total + &total)?,
        &total,
    )?];
    for n in 1..=deep_level as usize {
        let gap = Gap::new(seq.tail_sum(n), seq.term(n)?)?;
        certificates.push(ExclusionCertificate::from_gap(Rational::zero(), gap.clone())?);
        certificates.push(ExclusionCertificate::from_gap(seq.tail_sum(n + 1), gap)?);
    }
    for cert in &certificates {
        cert.validate(&deep_outer, &total, |v| {
            Ok(geometric_member(first, &q, v))
        })?;
    }

    let mut grid_report = Vec::new();
    for alpha in grid_points(&total, grid) {
        let class = if let Some(&m) = member_index.get(&alpha) {
            PointClass::Member { member: m }
        } else if let Some(k) = matching_term(&seq, &alpha, TERM_PROBE_LIMIT) {
            member_index.insert(alpha.clone(), members.len());
            members.push(ConfirmedMember {
                value: alpha.clone(),
                evidence: MemberEvidence::SequenceTerm {
                    index: k,
                    checked_level: level,
                },
            });
            PointClass::Member {
                member: members.len() - 1,
            }
        } else if let Some(c) = covering_certificate(&certificates, &alpha) {
            PointClass::Excluded { certificate: c }
        } else {
            PointClass::Unresolved
        };
        grid_report.push(GridPoint { alpha, class });
    }

    let mut notes = Vec::new();
    if deep_level > level {
        notes.push(format!(
            "gap certificates below the level-{level} resolution were validated against the \
             level-{deep_level} approximation of the same set"
        ));
    }
    Ok(CenterReport {
        label: format!("geometric({first}; {ratio})"),
        level,
        outer,
        total,
        members,
        certificates,
        grid: grid_report,
        notes,
    })
}

/// The witness table shared by the complement-hull sweeps: rows excluding
/// every distance in `(1/4, 1]` (and, for the top row built separately,
/// everything above `1`). Each row is anchored at an exact member of the
/// set and one or two of its persistent gaps: the base component interior
/// `(2/3, 1)`, its left first-generation copy `(1/6, 1/4)`, and the
/// right-hand copy `(17/12, 3/2)`.
struct WitnessTable {
    /// Rows whose windows tile `(1/4, 1]`, in scan order chosen so the
    /// boundary distances `1/4`, `1/3`, `2/3`, `1` land on the row that
    /// argues them directly.
    rows: Vec<ExclusionCertificate>,
}

fn complement_witness_table(include_power_rows: bool) -> Result<WitnessTable> {
    let central = Gap::new(rat(2, 3), rat(1, 1))?;
    let left = Gap::new(rat(1, 6), rat(1, 4))?;
    let right = Gap::new(rat(17, 12), rat(3, 2))?;

    // Open-band rows first, boundary-point rows after them, so that a
    // distance interior to a band reports the band's witness even where
    // a boundary row's window overlaps it.
    let mut rows = vec![
        // (2/3, 1): witness 0.
        ExclusionCertificate::from_gap(Rational::zero(), central.clone())?,
        // (1/3, 2/3): witness 1/3.
        ExclusionCertificate::from_gap(rat(1, 3), central.clone())?,
        // Around 2/3: witness 1/4.
        ExclusionCertificate::from_gap(rat(1, 4), central.clone())?,
        // (1/4, 1/3): witness 1/2, squeezed between two gaps.
        ExclusionCertificate::from_two_gaps(rat(1, 2), central.clone(), left.clone())?,
        // Around 1/3: witness 17/32, squeezed between two gaps.
        ExclusionCertificate::from_two_gaps(rat(17, 32), central.clone(), left.clone())?,
    ];
    if include_power_rows {
        // Around 1: witness 11/24, using the right-hand gap.
        rows.push(ExclusionCertificate::from_gap(rat(11, 24), right)?);
        // Around 1/4: witness 11/24 again, squeezed between two gaps.
        rows.push(ExclusionCertificate::from_two_gaps(rat(11, 24), central, left)?);
    }
    Ok(WitnessTable { rows })
}

/// Certificates for the whole grid range: the top row for distances above
/// `1`, the table rows, and 4-fold-scaled copies of the table until the
/// windows drop below `min_alpha`.
fn scaled_table_certificates(
    table: &WitnessTable,
    total: &Rational,
    min_alpha: &Rational,
) -> Result<Vec<ExclusionCertificate>> {
    let mut certificates = vec![ExclusionCertificate::from_total(
        Rational::one(),
        Gap::new(Rational::one(), rat(7, 3))?,
        total,
    )?];
    let quarter = rat(1, 4);
    let mut shrink = Rational::one();
    loop {
        for row in &table.rows {
            certificates.push(if shrink == Rational::one() {
                row.clone()
            } else {
                row.scale(&shrink)?
            });
        }
        let floor = &shrink * &quarter;
        if &floor < min_alpha {
            break;
        }
        shrink = floor;
    }
    Ok(certificates)
}

/// Sweep showing the center of distances of the gap-complement hull is
/// trivial: every distance in `(0, 2]` on the grid is excluded, so the
/// center collapses to `{0}`.
///
/// Every certificate is replayed against `z_hull(level)` and the exact
/// point-membership decision; a failing witness is an error, not a silent
/// skip. Scaled table rows reference component interiors of generation
/// `n + 1`, so the level must resolve every generation the grid forces:
/// roughly `level ≥ log₄(grid count / 6) + 2`.
pub fn verify_z_trivial(level: u32, grid: u32) -> Result<CenterReport> {
    if level < 2 {
        return Err(Error::InsufficientLevel {
            needed: 2,
            got: level,
        });
    }
    if grid == 0 {
        return Err(Error::EmptySet("sweep grid"));
    }
    let outer = z_hull(level);
    let total = hull_total();
    let span = rat(2, 1);
    let min_alpha = &span / &Rational::from_integer(i64::from(grid));

    let table = complement_witness_table(true)?;
    let certificates = scaled_table_certificates(&table, &total, &min_alpha)?;
    for cert in &certificates {
        cert.validate(&outer, &total, |v| Ok(z_member(v)))?;
    }

    let mut grid_report = Vec::new();
    for alpha in grid_points(&span, grid) {
        let class = match covering_certificate(&certificates, &alpha) {
            Some(c) => PointClass::Excluded { certificate: c },
            None => PointClass::Unresolved,
        };
        grid_report.push(GridPoint { alpha, class });
    }

    Ok(CenterReport {
        label: "z-set".into(),
        level,
        outer,
        total,
        members: Vec::new(),
        certificates,
        grid: grid_report,
        notes: vec![
            "no nonzero distance is admitted; the center collapses to the single point 0".into(),
        ],
    })
}

/// Sweep of the center of distances of the boundary hull: the admitted
/// distances are exactly `{0} ∪ {4⁻ⁿ}`.
///
/// The powers of `1/4` are confirmed by exact translation identities
/// checked on `y_hull` at every level up to `min(level, 6)`: shifting the
/// left half `[0, 2/3]` by `1` reproduces the right half exactly, and for
/// each deeper power the slice `[0, (1/6)·4^{1−m}]` shifted by `4⁻ᵐ` and
/// by `2·4⁻ᵐ` stays inside the hull — together these hand every point a
/// partner at distance `4⁻ᵐ`. All other grid distances are excluded by
/// the witness table (without its power rows, whose windows straddle the
/// members) plus 4-fold scaling. The grid is built internally with
/// denominator `3·4^(level−2)` over `(0, 2]`, so deeper levels sweep
/// proportionally finer grids.
pub fn verify_y_center(level: u32) -> Result<CenterReport> {
    if level < 2 {
        return Err(Error::InsufficientLevel {
            needed: 2,
            got: level,
        });
    }
    let outer = y_hull(level);
    let total = hull_total();
    let graph = RepGraph::new();

    let identity_levels = level.min(6);
    let quarter = rat(1, 4);
    let one = Rational::one();
    let two_thirds = rat(2, 3);
    for l in 1..=identity_levels {
        let h = y_hull(l);
        let left_shifted = h
            .restrict(&Interval::span(Rational::zero(), two_thirds.clone()))
            .translate(&one);
        let upper = h.restrict(&Interval::span(one.clone(), rat(5, 3)));
        if left_shifted != upper {
            return Err(Error::SelfCheck(format!(
                "translate-by-1 identity fails on the boundary hull at level {l}"
            )));
        }
        if !in_center(&h, &one) {
            return Err(Error::SelfCheck(format!(
                "distance 1 is not admitted by the boundary hull at level {l}"
            )));
        }
        // Scaled identities: the slice below (1/6)·4^(1−m), shifted by
        // 4^(−m) and by 2·4^(−m), stays inside the hull.
        let mut power = quarter.clone();
        let mut cut = rat(1, 6);
        for _ in 1..=identity_levels {
            let slice = h.restrict(&Interval::span(Rational::zero(), cut.clone()));
            let shifted = slice
                .translate(&power)
                .union(&slice.translate(&(&power + &power)));
            if !shifted.is_subset_of(&h) {
                return Err(Error::SelfCheck(format!(
                    "translate-by-{power} identity fails on the boundary hull at level {l}"
                )));
            }
            cut = &cut * &quarter;
            power = &power * &quarter;
        }
    }

    // Grid with the set's natural denominators: 3·4^(level−2) over (0, 2],
    // capped so extreme levels keep the sweep desk-sized.
    let grid_level = level.clamp(2, 8);
    let denom = 3 * 4u32.pow(grid_level - 2);
    let grid = 2 * denom;
    let span = rat(2, 1);
    let min_alpha = &span / &Rational::from_integer(i64::from(grid));

    let mut members = Vec::new();
    let mut member_index: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut value = one.clone();
    loop {
        if value < min_alpha {
            break;
        }
        member_index.insert(value.clone(), members.len());
        members.push(ConfirmedMember {
            value: value.clone(),
            evidence: MemberEvidence::TranslationIdentity {
                levels: identity_levels,
            },
        });
        value = &value * &quarter;
    }

    let table = complement_witness_table(false)?;
    let certificates = scaled_table_certificates(&table, &total, &min_alpha)?;
    let is_member = |v: &Rational| Ok(z_member(v) && graph.x_member(v));
    for cert in &certificates {
        cert.validate(&outer, &total, is_member)?;
    }

    let mut grid_report = Vec::new();
    for alpha in grid_points(&span, grid) {
        let class = if let Some(&m) = member_index.get(&alpha) {
            PointClass::Member { member: m }
        } else if let Some(c) = covering_certificate(&certificates, &alpha) {
            PointClass::Excluded { certificate: c }
        } else {
            PointClass::Unresolved
        };
        grid_report.push(GridPoint { alpha, class });
    }

    Ok(CenterReport {
        label: "y-set".into(),
        level,
        outer,
        total,
        members,
        certificates,
        grid: grid_report,
        notes: vec![
            "admitted distances continue as 4^(-n) below the grid floor".into(),
            "the member listing starts the power family at 1/4, but the translate-by-1 \
             identity admits 4^0 = 1 as well; this report includes it"
                .into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_offset_exclusion_windows() {
        let gaps = [
            Gap::new(rat(7, 6), rat(5, 4)).unwrap(),
            Gap::new(rat(5, 12), rat(1, 2)).unwrap(),
        ];
        let probes = [Rational::zero(), rat(1, 2), rat(1, 8), rat(5, 8)];
        let certs = gap_offset_exclusions(&gaps, &probes);
        // Gap (7/6,5/4) accepts 0, 1/2, 1/8; 5/8 fails 2w ≤ 7/6.
        // Gap (5/12,1/2) accepts 0 and 1/8 only.
        assert_eq!(certs.len(), 5);
        assert_eq!(certs[0].excluded, Gap::new(rat(7, 6), rat(5, 4)).unwrap());
        assert_eq!(certs[1].excluded, Gap::new(rat(2, 3), rat(3, 4)).unwrap());
        assert_eq!(
            certs[4].excluded,
            Gap::new(rat(7, 24), rat(3, 8)).unwrap()
        );
        assert!(certs[4].covers(&rat(1, 3)));
    }

    #[test]
    fn term_flip_partner_cases() {
        let seq = TermSequence::cantorval();
        // 5/4 = 3/4 + 1/2, toggling term 2 removes 1/2.
        assert_eq!(term_flip_partner(&seq, &[1, 2], 2).unwrap(), rat(3, 4));
        // Empty subsum, toggling term 1 adds 3/4.
        assert_eq!(term_flip_partner(&seq, &[], 1).unwrap(), rat(3, 4));
        let cantor = TermSequence::geometric(rat(2, 1), rat(3, 1)).unwrap();
        assert_eq!(term_flip_partner(&cantor, &[2], 1).unwrap(), rat(8, 9));
        assert!(term_flip_partner(&seq, &[1, 1], 1).is_err());
        assert!(term_flip_partner(&seq, &[0], 1).is_err());
    }

    #[test]
    fn contraction_propagates_nonmembers() {
        let seq = TermSequence::cantorval();
        let approx = seq.approximation(12, DEFAULT_SUBSUM_BUDGET).unwrap();
        let bound = hull_total();
        let points = propagate_scaled_nonmembers(
            &approx,
            &rat(1, 4),
            &bound,
            &[rat(23, 48)],
            2,
        )
        .unwrap();
        assert_eq!(points, vec![rat(23, 192), rat(23, 768)]);
        // The scaled points stay outside even deeper approximations.
        let deeper = seq.approximation(16, DEFAULT_SUBSUM_BUDGET).unwrap();
        for p in &points {
            assert!(!deeper.set.contains(p));
        }

        // The wrong contraction is caught by the hypothesis check.
        let err = propagate_scaled_nonmembers(&approx, &rat(1, 3), &bound, &[rat(23, 48)], 1)
            .unwrap_err();
        assert!(matches!(err, Error::SelfCheck(_)));
        // A point inside the approximation is rejected.
        let err =
            propagate_scaled_nonmembers(&approx, &rat(1, 4), &bound, &[rat(1, 4)], 1).unwrap_err();
        assert!(matches!(err, Error::BadCertificate(_)));
        // λ outside (0, 1] is rejected.
        let err = propagate_scaled_nonmembers(&approx, &rat(3, 2), &bound, &[rat(23, 48)], 1)
            .unwrap_err();
        assert!(matches!(err, Error::ContractionOutOfRange(_)));

        // The classical middle-thirds set contracts by 1/3.
        let cantor = TermSequence::geometric(rat(2, 1), rat(3, 1)).unwrap();
        let capprox = cantor.approximation(8, DEFAULT_SUBSUM_BUDGET).unwrap();
        let points =
            propagate_scaled_nonmembers(&capprox, &rat(1, 3), &rat(1, 1), &[rat(1, 2)], 2)
                .unwrap();
        assert_eq!(points, vec![rat(1, 6), rat(1, 18)]);
    }

    #[test]
    fn cantorval_sweep_classifies_grid() {
        let report = verify_cantorval_center(6, 80).unwrap();
        assert_eq!(report.level, 6);
        assert_eq!(report.members.len(), 12);
        let (members, excluded, unresolved) = report.tally();
        assert_eq!((members, excluded, unresolved), (5, 75, 0));
        // The five grid hits are exactly the terms with denominator
        // dividing 96: 3/4, 1/2, 3/16, 1/8, 1/32.
        let hits: Vec<&Rational> = report
            .grid
            .iter()
            .filter(|p| matches!(p.class, PointClass::Member { .. }))
            .map(|p| &p.alpha)
            .collect();
        assert_eq!(
            hits,
            vec![&rat(1, 32), &rat(1, 8), &rat(3, 16), &rat(1, 2), &rat(3, 4)]
        );
        // No certificate may cover any term of the series.
        for k in 1..=12 {
            let t = TermSequence::cantorval().term(k).unwrap();
            assert!(report.certificates.iter().all(|c| !c.covers(&t)));
        }
        // The diameter certificate rules out distances beyond the reach.
        assert!(report.certificates[0].covers(&rat(9, 10)));
    }

    #[test]
    fn cantorval_sweep_resolves_documented_probe() {
        // 7/10 sits between the reach of gap (5/12,1/2) and gap (7/6,5/4);
        // the menu search must find a probe in (7/6 − 7/10, 5/4 − 7/10).
        let report = verify_cantorval_center(4, 25).unwrap();
        let point = report
            .grid
            .iter()
            .find(|p| p.alpha == rat(7, 10))
            .expect("7/10 is on the 25-point grid");
        let PointClass::Excluded { certificate } = point.class else {
            panic!("7/10 must be excluded, got {:?}", point.class);
        };
        let cert = &report.certificates[certificate];
        assert!(cert.covers(&rat(7, 10)));
        assert!(cert.witness > rat(7, 15) && cert.witness < rat(11, 20));
        assert_eq!(report.tally(), (1, 24, 0));
    }

    #[test]
    fn cantorval_sweep_rejects_low_level() {
        assert!(matches!(
            verify_cantorval_center(3, 10),
            Err(Error::InsufficientLevel { needed: 4, .. })
        ));
        assert!(verify_cantorval_center(4, 0).is_err());
    }

    #[test]
    fn geometric_member_decision_is_exact() {
        let third = rat(3, 1);
        // Classical middle-thirds set: endpoints and a periodic point.
        assert!(geometric_member(&rat(2, 1), &third, &rat(1, 3)));
        assert!(geometric_member(&rat(2, 1), &third, &rat(2, 3)));
        assert!(geometric_member(&rat(2, 1), &third, &rat(1, 4)));
        assert!(geometric_member(&rat(2, 1), &third, &rat(3, 4)));
        assert!(!geometric_member(&rat(2, 1), &third, &rat(1, 2)));
        assert!(!geometric_member(&rat(2, 1), &third, &rat(5, 12)));
        assert!(geometric_member(&rat(2, 1), &third, &Rational::zero()));
        assert!(geometric_member(&rat(2, 1), &third, &Rational::one()));
        assert!(!geometric_member(&rat(2, 1), &third, &rat(10, 9)));
    }

    #[test]
    fn geometric_sweep_excludes_all_nonterms() {
        let report = verify_geometric_center(&rat(2, 1), 3, 3, 100).unwrap();
        assert_eq!(report.total, Rational::one());
        let values: Vec<&Rational> = report.members.iter().map(|m| &m.value).collect();
        assert_eq!(values, vec![&rat(2, 3), &rat(2, 9), &rat(2, 27)]);
        assert_eq!(report.tally(), (0, 100, 0));

        let report = verify_geometric_center(&rat(1, 1), 4, 2, 50).unwrap();
        let values: Vec<&Rational> = report.members.iter().map(|m| &m.value).collect();
        assert_eq!(values, vec![&rat(1, 4), &rat(1, 16)]);
        assert_eq!(report.tally(), (0, 50, 0));

        let report = verify_geometric_center(&rat(3, 1), 4, 1, 10).unwrap();
        let values: Vec<&Rational> = report.members.iter().map(|m| &m.value).collect();
        assert_eq!(values, vec![&rat(3, 4)]);
        assert_eq!(report.tally(), (0, 10, 0));

        assert!(matches!(
            verify_geometric_center(&rat(1, 1), 2, 3, 10),
            Err(Error::RatioOutsideCertifiedRange(_))
        ));
    }

    #[test]
    fn geometric_sweep_never_excludes_terms() {
        let report = verify_geometric_center(&rat(2, 1), 3, 3, 81).unwrap();
        let seq = TermSequence::geometric(rat(2, 1), rat(3, 1)).unwrap();
        for k in 1..=12 {
            let t = seq.term(k).unwrap();
            assert!(report.certificates.iter().all(|c| !c.covers(&t)));
        }
        // A grid aligned with q^4 puts the term 2/81 on the grid; it must
        // be reported as a member even though it is deeper than `level`.
        let hit = report
            .grid
            .iter()
            .find(|p| p.alpha == rat(2, 81))
            .expect("2/81 on grid");
        assert!(matches!(hit.class, PointClass::Member { .. }));
        assert!(report
            .members
            .iter()
            .any(|m| m.value == rat(2, 81)
                && m.evidence == MemberEvidence::SequenceTerm { index: 4, checked_level: 3 }));
    }

    #[test]
    fn z_sweep_is_fully_excluded() {
        let report = verify_z_trivial(6, 192).unwrap();
        assert!(report.members.is_empty());
        assert_eq!(report.tally(), (0, 192, 0));

        // The documented witnesses argue their own distances.
        let at = |alpha: Rational| {
            let c = covering_certificate(&report.certificates, &alpha).unwrap();
            report.certificates[c].witness.clone()
        };
        assert_eq!(at(rat(2, 1)), Rational::one());
        assert_eq!(at(rat(1, 1)), rat(11, 24));
        assert_eq!(at(rat(1, 4)), rat(11, 24));
        assert_eq!(at(rat(1, 3)), rat(17, 32));
        assert_eq!(at(rat(3, 10)), rat(1, 2));
        assert_eq!(at(rat(2, 3)), rat(1, 4));
        assert_eq!(at(rat(1, 2)), rat(1, 3));
        assert_eq!(at(rat(4, 5)), Rational::zero());
        assert_eq!(at(rat(1, 16)), rat(11, 24) * rat(1, 4));
    }

    #[test]
    fn z_sweep_rejects_low_level() {
        assert!(matches!(
            verify_z_trivial(1, 10),
            Err(Error::InsufficientLevel { needed: 2, .. })
        ));
    }

    #[test]
    fn y_sweep_confirms_exactly_the_powers() {
        let report = verify_y_center(4).unwrap();
        // Grid: denominator 3·4² = 48, 96 points over (0, 2]; the member
        // list stops at the grid floor 1/48, so it holds 1, 1/4, 1/16.
        let values: Vec<&Rational> = report.members.iter().map(|m| &m.value).collect();
        assert_eq!(values, vec![&rat(1, 1), &rat(1, 4), &rat(1, 16)]);
        assert_eq!(report.tally(), (3, 93, 0));
        let hits: Vec<&Rational> = report
            .grid
            .iter()
            .filter(|p| matches!(p.class, PointClass::Member { .. }))
            .map(|p| &p.alpha)
            .collect();
        assert_eq!(hits, vec![&rat(1, 16), &rat(1, 4), &rat(1, 1)]);
        // 1/2 lies strictly between the powers and must be excluded.
        let half = report.grid.iter().find(|p| p.alpha == rat(1, 2)).unwrap();
        assert!(matches!(half.class, PointClass::Excluded { .. }));
        assert!(!report.notes.is_empty());
    }

    #[test]
    fn y_sweep_witnesses_avoid_power_rows() {
        let report = verify_y_center(4).unwrap();
        let mut witnesses: Vec<Rational> = report
            .certificates
            .iter()
            .map(|c| c.witness.clone())
            .collect();
        witnesses.sort();
        witnesses.dedup();
        // Base witnesses are {0, 1/4, 1/3, 1/2, 17/32, 1} and scaled
        // copies; 11/24 never appears because its windows straddle the
        // powers of 1/4.
        assert!(witnesses.contains(&Rational::zero()));
        assert!(witnesses.contains(&rat(17, 32)));
        assert!(!witnesses.contains(&rat(11, 24)));
        // No certificate covers any power of 1/4.
        let mut power = Rational::one();
        for _ in 0..8 {
            assert!(report.certificates.iter().all(|c| !c.covers(&power)));
            power = power * rat(1, 4);
        }
    }
}

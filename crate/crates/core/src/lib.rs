//! Exact-arithmetic toolkit for subsum sets of positive series.
//!
//! The crate revolves around one family of objects: the set of all subsums
//! of a convergent positive series, studied through finite-level interval
//! approximations that are exact (no floating point anywhere). On top of
//! that sit:
//!
//! - gap/measure bookkeeping for the approximations ([`series`],
//!   [`cantorval`]);
//! - centers of distances: which shifts `alpha` admit, for every point `x`
//!   of a set, a partner at distance exactly `alpha` ([`center`]);
//! - digit expansions over `{0, 2, 3, 5}` in base 4, where some numbers
//!   have exactly two expansions connected by a chasing schedule
//!   ([`digits`]);
//! - a back-and-forth matching that realizes a prescribed distance between
//!   two dense sequences ([`matching`]).

pub mod cantorval;
pub mod center;
pub mod digits;
pub mod error;
pub mod interval;
pub mod matching;
pub mod rational;
pub mod series;

pub use cantorval::{component_intervals, k_set, y_hull, z_hull, z_member};
pub use digits::chase::{chase_pair, extract_schedule, ChaseSchedule};
pub use digits::oracle::{
    cantor_subset_gap_proxy, collision_oracle, standard_tail_menu, CollisionReport, GapProxy,
    KeepRule,
};
pub use digits::repgraph::{RepGraph, Uniqueness, UniquenessReason};
pub use digits::DigitStream;
pub use center::{
    center_finite, center_interval_report, center_interval_set, in_center, subsum_impossibility,
    DownMiss, ExclusionCertificate, ImpossibilityVerdict, IntervalCenterReport, MissRegion,
};
pub use center::sweep::{
    gap_offset_exclusions, propagate_scaled_nonmembers, term_flip_partner,
    verify_cantorval_center, verify_geometric_center, verify_y_center, verify_z_trivial,
    CenterReport, ConfirmedMember, GridPoint, MemberEvidence, PointClass,
};
pub use error::{Error, Result};
pub use interval::{Gap, Interval, IntervalSet, Membership};
pub use matching::{
    build_permutation, center_of_metric, verify_convergence, FiniteMetric, MatchInstance,
    MatchStep, MatchTrace, StepRule,
};
pub use rational::{rat, Rational};
pub use series::{Approximation, TermSequence, DEFAULT_SUBSUM_BUDGET};

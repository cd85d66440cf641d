//! End-to-end acceptance gate: eleven checks covering the gap tables, the
//! endpoint lattices, measure convergence, symmetry, the center-of-distances
//! sweeps, the impossibility verdicts, the chase/collision machinery, the
//! matching construction, and the kept-term gap proxy. Each test finishes
//! with a single `criterion N: PASS` line; timing-sensitive checks assert
//! their own wall-clock budget.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use cantorval::cantorval::hull_total;
use cantorval::digits::oracle::enumerate_universe;
use cantorval::{
    build_permutation, cantor_subset_gap_proxy, chase_pair, collision_oracle, extract_schedule,
    in_center, k_set, rat, standard_tail_menu, subsum_impossibility, verify_cantorval_center,
    verify_convergence, verify_geometric_center, verify_y_center, verify_z_trivial, DigitStream,
    ImpossibilityVerdict, KeepRule, MatchInstance, MemberEvidence, PointClass, Rational, RepGraph,
    StepRule, TermSequence, DEFAULT_SUBSUM_BUDGET,
};

fn cantorval_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cantorval"))
}

fn approximation_set(terms: usize) -> cantorval::IntervalSet {
    TermSequence::cantorval()
        .approximation(terms, DEFAULT_SUBSUM_BUDGET)
        .expect("approximation within budget")
        .set
}

#[test]
fn criterion_01_gap_table_reproduction() {
    let started = Instant::now();
    let output = cantorval_bin()
        .args(["gaps", "--level", "4", "--format", "csv"])
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(output.status.success(), "gaps --level 4 exits 0");
    let stdout = String::from_utf8(output.stdout).expect("utf8 csv");
    let rows: Vec<Vec<&str>> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();

    // The two widest gaps come first, each of length 1/12.
    let twelfths = [("5/12", "1/2"), ("7/6", "5/4")];
    for (i, (lo, hi)) in twelfths.iter().enumerate() {
        assert_eq!(rows[i][0], *lo, "gap {i} lo");
        assert_eq!(rows[i][1], *hi, "gap {i} hi");
        assert_eq!(rows[i][2], "1/12", "gap {i} length");
    }
    // Then exactly six gaps of length 1/48, in left-to-right order.
    let fortyeighths = [
        ("5/48", "1/8"),
        ("7/24", "5/16"),
        ("29/48", "5/8"),
        ("25/24", "17/16"),
        ("65/48", "11/8"),
        ("37/24", "25/16"),
    ];
    for (i, (lo, hi)) in fortyeighths.iter().enumerate() {
        let row = &rows[2 + i];
        assert_eq!(row[0], *lo, "1/48-gap {i} lo");
        assert_eq!(row[1], *hi, "1/48-gap {i} hi");
        assert_eq!(row[2], "1/48", "1/48-gap {i} length");
    }
    assert_ne!(rows[8][2], "1/48", "exactly six gaps of length 1/48");

    // At level 6 the same eight gaps lead and everything else is at most
    // 1/192 long.
    let approx = TermSequence::cantorval()
        .approximation(12, DEFAULT_SUBSUM_BUDGET)
        .unwrap();
    let gaps = approx.gaps_by_length();
    let cap = rat(1, 192);
    for (i, g) in gaps.iter().enumerate() {
        match i {
            0 | 1 => assert_eq!(g.length(), rat(1, 12)),
            2..=7 => assert_eq!(g.length(), rat(1, 48)),
            _ => assert!(g.length() <= cap, "gap {i} of length {}", g.length()),
        }
    }

    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!(
        "criterion 1: PASS - gap table exact (two 1/12, six 1/48, rest <= 1/192) in {elapsed:?}"
    );
}

#[test]
fn criterion_02_endpoint_lattice_structure() {
    let started = Instant::now();
    for n in 1..=8u32 {
        let points = k_set(n);
        let expected_count = (4u128.pow(n) - 1) / 3;
        assert_eq!(points.len() as u128, expected_count, "|K_{n}|");

        let spacing = rat(1, 4).pow(n as i32);
        for pair in points.windows(2) {
            assert_eq!(&pair[1] - &pair[0], spacing, "spacing in K_{n}");
        }

        // min = 3/4^n + sum_{i<n} 2/4^i, max = sum_{i<=n} 3/4^i.
        let min: Rational = rat(3, 1) * rat(1, 4).pow(n as i32)
            + (1..n).map(|i| rat(2, 1) * rat(1, 4).pow(i as i32)).sum::<Rational>();
        let max: Rational = (1..=n).map(|i| rat(3, 1) * rat(1, 4).pow(i as i32)).sum();
        assert_eq!(points.first(), Some(&min), "min of K_{n}");
        assert_eq!(points.last(), Some(&max), "max of K_{n}");
    }
    let k2: Vec<Rational> = [(11, 16), (3, 4), (13, 16), (7, 8), (15, 16)]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect();
    assert_eq!(k_set(2), k2, "explicit five-element K_2");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("criterion 2: PASS - K_n counts, spacing, extremes exact for n = 1..8 in {elapsed:?}");
}

#[test]
fn criterion_03_measure_convergence() {
    let mut previous_measure: Option<Rational> = None;
    let mut previous_gap_total: Option<Rational> = None;
    for k in 1..=10u32 {
        let approx = TermSequence::cantorval()
            .approximation(2 * k as usize, DEFAULT_SUBSUM_BUDGET)
            .unwrap();
        let measure = approx.set.measure();
        let gap_total: Rational = approx.gaps().iter().map(|g| g.length()).sum();

        assert!(measure >= rat(1, 1), "measure at level {k} is at least 1");
        if let Some(prev) = &previous_measure {
            assert!(measure <= *prev, "measure nonincreasing at level {k}");
        }

        // Gap mass grows by exactly (1/8)(3/4)^(k-2) per level after the
        // initial 1/6; the first increment equals 6/(3*16).
        match &previous_gap_total {
            None => assert_eq!(gap_total, rat(1, 6), "level-1 gap total"),
            Some(prev) => {
                let increment = &gap_total - prev;
                assert_eq!(
                    increment,
                    rat(1, 8) * rat(3, 4).pow(k as i32 - 2),
                    "gap increment at level {k}"
                );
                if k == 2 {
                    assert_eq!(increment, rat(6, 48), "first increment is 6/(3*4^2)");
                }
            }
        }
        // Closed form of the partial sums, limiting to 2/3.
        assert_eq!(
            gap_total,
            rat(2, 3) - rat(1, 2) * rat(3, 4).pow(k as i32 - 1),
            "closed-form gap total at level {k}"
        );
        assert_eq!(&gap_total + &measure, hull_total(), "partition of the hull");

        previous_measure = Some(measure);
        previous_gap_total = Some(gap_total);
    }
    println!("criterion 3: PASS - measure nonincreasing >= 1, gap sums match the closed form term-by-term");
}

#[test]
fn criterion_04_reflection_symmetry() {
    let c = rat(5, 3);
    for terms in (2..=20usize).step_by(2) {
        let set = approximation_set(terms);
        assert_eq!(set.reflect(&c), set, "symmetry with {terms} terms");
    }
    println!("criterion 4: PASS - approximation sets reflect onto themselves about 5/6, bit-exact");
}

#[test]
fn criterion_05_cantorval_center_sweep() {
    let started = Instant::now();
    let report = verify_cantorval_center(10, 2560).expect("sweep completes");
    let elapsed = started.elapsed();

    let seq = TermSequence::cantorval();
    let outer = approximation_set(20);

    // Every term through the fifth pair passes the direct center test on
    // the level-10 outer approximation.
    for i in 1..=10 {
        let term = seq.term(i).unwrap();
        assert!(in_center(&outer, &term), "term {i} admitted");
    }

    let (members, excluded, unresolved) = report.tally();
    assert!(excluded >= 1000, "only {excluded} grid exclusions");
    assert_eq!(unresolved, 0, "sweep leaves nothing unresolved");

    // Zero false exclusions: no certificate covers any term, and every
    // grid point that is a term is classified as a member.
    let terms: Vec<Rational> = (1..=20).map(|i| seq.term(i).unwrap()).collect();
    for t in &terms {
        assert!(
            !report.certificates.iter().any(|c| c.covers(t)),
            "certificate wrongly covers term {t}"
        );
    }
    let mut member_hits = 0;
    for p in &report.grid {
        let is_term = terms.contains(&p.alpha);
        match p.class {
            PointClass::Member { .. } => {
                assert!(is_term, "non-term {} confirmed", p.alpha);
                member_hits += 1;
            }
            PointClass::Excluded { .. } => assert!(!is_term, "term {} excluded", p.alpha),
            PointClass::Unresolved => unreachable!("tally said none"),
        }
    }
    assert_eq!(member_hits, members);
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!(
        "criterion 5: PASS - terms confirmed, {excluded} exclusions, zero false exclusions in {elapsed:?}"
    );
}

#[test]
fn criterion_06_geometric_centers() {
    for (a, q) in [(2i64, 3u32), (2, 4), (3, 4), (1, 5)] {
        let first = rat(a, 1);
        let report = verify_geometric_center(&first, q, 6, 500).expect("sweep completes");
        let (members, excluded, unresolved) = report.tally();
        assert_eq!(unresolved, 0, "(a,q)=({a},{q}) fully classified");
        assert_eq!(members + excluded, 500, "(a,q)=({a},{q}) grid size");

        // The confirmed members are terms and include every term down to
        // the sweep level.
        let term = |i: i32| &first * rat(1, q as i64).pow(i);
        let deep_terms: Vec<Rational> = (1..=40).map(term).collect();
        for m in &report.members {
            assert!(
                deep_terms.contains(&m.value),
                "(a,q)=({a},{q}): non-term member {}",
                m.value
            );
        }
        for i in 1..=6 {
            assert!(
                report.members.iter().any(|m| m.value == term(i)),
                "(a,q)=({a},{q}): term {i} missing"
            );
        }
        // No certificate covers any term, and grid classifications agree
        // with term membership exactly.
        for t in &deep_terms {
            assert!(
                !report.certificates.iter().any(|c| c.covers(t)),
                "(a,q)=({a},{q}): certificate covers term {t}"
            );
        }
        for p in &report.grid {
            let is_term = deep_terms.contains(&p.alpha);
            match p.class {
                PointClass::Member { .. } => assert!(is_term, "non-term {} confirmed", p.alpha),
                PointClass::Excluded { .. } => assert!(!is_term, "term {} excluded", p.alpha),
                PointClass::Unresolved => unreachable!(),
            }
        }
    }
    println!("criterion 6: PASS - four geometric sweeps confirm exactly the terms and exclude the full grid");
}

#[test]
fn criterion_07_z_and_y_sweeps() {
    let z = verify_z_trivial(6, 500).expect("z sweep completes");
    assert_eq!(z.grid.len(), 500);
    assert_eq!(z.tally(), (0, 500, 0), "every positive distance excluded for Z");
    assert!(z.members.is_empty());
    // Grid reaches the full span (0, 2].
    assert_eq!(z.grid.last().unwrap().alpha, rat(2, 1));

    let y = verify_y_center(6).expect("y sweep completes");
    let powers: Vec<Rational> = (0..=12).map(|n| rat(1, 4).pow(n)).collect();
    for wanted in [rat(1, 1), rat(1, 4)] {
        let member = y
            .members
            .iter()
            .find(|m| m.value == wanted)
            .unwrap_or_else(|| panic!("{wanted} missing from the Y center"));
        assert!(
            matches!(member.evidence, MemberEvidence::TranslationIdentity { .. }),
            "{wanted} admitted by the translation identities"
        );
    }
    let (_, _, unresolved) = y.tally();
    assert_eq!(unresolved, 0);
    for p in &y.grid {
        let is_power = powers.contains(&p.alpha);
        match p.class {
            PointClass::Member { .. } => assert!(is_power, "non-power {} confirmed", p.alpha),
            PointClass::Excluded { .. } => assert!(!is_power, "power {} excluded", p.alpha),
            PointClass::Unresolved => unreachable!(),
        }
    }
    println!("criterion 7: PASS - Z grid fully excluded; Y center is exactly the powers of 1/4");
}

#[test]
fn criterion_08_impossibility_verdicts() {
    // A set with an empty positive center admits no term candidates at all.
    let z_verdict = subsum_impossibility(&[], &rat(0, 1), &hull_total());
    assert_eq!(z_verdict, ImpossibilityVerdict::Impossible);

    // The boundary set's center is the powers of 1/4; even their full sum
    // 4/3 cannot reach the maximum 5/3.
    let members: Vec<Rational> = (0..=8).map(|n| rat(1, 4).pow(n)).collect();
    let tail = rat(1, 3) * rat(1, 4).pow(8);
    let total = members.iter().sum::<Rational>() + &tail;
    assert_eq!(total, rat(4, 3), "power sum is exactly 4/3");
    let y_verdict = subsum_impossibility(&members, &tail, &hull_total());
    assert_eq!(y_verdict, ImpossibilityVerdict::Impossible);

    println!("criterion 8: PASS - both impossibility verdicts reproduced exactly");
}

#[test]
fn criterion_09_collision_oracle_and_duals() {
    let started = Instant::now();
    let menu = standard_tail_menu();
    let report = collision_oracle(8, &menu, DEFAULT_SUBSUM_BUDGET).expect("oracle completes");

    for group in &report.groups {
        assert_eq!(group.len(), 2, "collision groups have exactly two streams");
        let schedule = extract_schedule(&group[0], &group[1]).expect("divergence is a chase");
        let (x, y) = chase_pair(&schedule).expect("schedule replays");
        let recovered: BTreeSet<&DigitStream> = [&x, &y].into_iter().collect();
        let original: BTreeSet<&DigitStream> = group.iter().collect();
        assert_eq!(recovered, original, "round trip of {} and {}", group[0], group[1]);
    }

    // The representation graph agrees with the brute-force grouping on
    // every stream of the universe.
    let universe = enumerate_universe(8, &menu, DEFAULT_SUBSUM_BUDGET).unwrap();
    assert_eq!(universe.len(), report.universe_size);
    let mut partner: std::collections::HashMap<&DigitStream, &DigitStream> =
        std::collections::HashMap::new();
    for group in &report.groups {
        partner.insert(&group[0], &group[1]);
        partner.insert(&group[1], &group[0]);
    }
    let graph = RepGraph::new();
    for s in &universe {
        match partner.get(s) {
            Some(other) => {
                assert_eq!(
                    graph.dual(s).as_ref(),
                    Some(*other),
                    "dual disagrees with the oracle on {s}"
                );
                assert!(!graph.is_unique(s));
            }
            None => {
                assert!(graph.is_unique(s), "oracle says {s} is a singleton");
                assert_eq!(graph.dual(s), None);
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 120 s");
    println!(
        "criterion 9: PASS - {} collision pairs round-trip; dual/is_unique agree on {} streams in {elapsed:?}",
        report.groups.len(),
        universe.len()
    );
}

#[test]
fn criterion_10_matching_convergence() {
    // Two enumerations clustering on {0, 1} from opposite sides.
    let n = 320usize;
    let instance = MatchInstance::Line {
        cluster: vec![rat(0, 1), rat(1, 1)],
        a: (0..n).map(|m| rat(1, m as i64 + 2)).collect(),
        b: (0..n).map(|m| rat(m as i64 + 1, m as i64 + 2)).collect(),
    };
    let one = rat(1, 1);
    let trace = build_permutation(&instance, &one, 256).expect("construction completes");
    assert_eq!(trace.steps.len(), 256);
    assert!(
        verify_convergence(&trace, &one, 64, &rat(1, 32)),
        "final 64 distances within 1/32 of 1"
    );
    for step in &trace.steps[192..] {
        let err = (&step.distance - &one).abs();
        assert!(err <= rat(1, 32), "step {} off by {err}", step.index);
    }
    let again = build_permutation(&instance, &one, 256).expect("re-run completes");
    assert_eq!(trace, again, "trace is deterministic");

    // Self-matching at distance zero: each step stays within the
    // constructive tail bound 2*d(entry, cluster) + 1/(m+1).
    let zero_instance = MatchInstance::Line {
        cluster: vec![rat(0, 1)],
        a: (0..n).map(|m| rat(1, m as i64 + 2)).collect(),
        b: (0..n).map(|m| rat(1, m as i64 + 3)).collect(),
    };
    let zero = rat(0, 1);
    let trace0 = build_permutation(&zero_instance, &zero, 256).expect("zero case completes");
    for step in &trace0.steps {
        let entry = match step.rule {
            StepRule::Anchor | StepRule::Forward => rat(1, step.index as i64 + 2),
            StepRule::Backward => rat(1, step.index as i64 + 3),
        };
        let bound = rat(2, 1) * entry + &step.bound;
        assert!(
            step.distance <= bound,
            "step {}: {} exceeds {bound}",
            step.index,
            step.distance
        );
    }
    assert!(
        verify_convergence(&trace0, &zero, 64, &rat(1, 32)),
        "self-matching distances vanish"
    );
    println!("criterion 10: PASS - matching converges to 1 within 1/32, self-matching within the constructive bound, deterministic");
}

#[test]
fn criterion_11_kept_term_gap_proxy() {
    let mut previous: Option<Rational> = None;
    for level in 2..=8u32 {
        let proxy = cantor_subset_gap_proxy(KeepRule::Threes, level, DEFAULT_SUBSUM_BUDGET)
            .expect("proxy computes");
        assert_eq!(proxy.tail, rat(1, 4).pow(level as i32), "tail at level {level}");
        assert_eq!(
            proxy.largest_part, proxy.tail,
            "largest merged part equals the tail bound at level {level}"
        );
        if let Some(prev) = &previous {
            assert_eq!(
                prev,
                &(rat(4, 1) * &proxy.largest_part),
                "factor-4 decrease into level {level}"
            );
        }
        previous = Some(proxy.largest_part);
    }
    println!("criterion 11: PASS - largest merged part equals the tail and shrinks by 4 per level, k = 2..8");
}

//! Command-line front end for the subsum-set toolkit.
//!
//! Every subcommand computes in exact rational arithmetic and prints a
//! deterministic body to standard output — a human table by default,
//! `--format csv` or `--format json` otherwise. With `--out DIR` the same
//! bytes are also written to a named file in `DIR` (figures always write a
//! file; their stdout is a one-line summary). Nothing in any output depends
//! on time, locale, or environment, so identical invocations produce
//! byte-identical artifacts.
//!
//! Exit status: 0 on success, 2 on a usage error (unknown flag, malformed
//! value), 1 when a precondition or budget check fails inside the library —
//! the diagnostic names the violated precondition.

mod render;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;

use cantorval::cantorval::{component_intervals, gap_component_pairs, hull_total};
use cantorval::{
    build_permutation, cantor_subset_gap_proxy, chase_pair, collision_oracle, k_set, rat,
    standard_tail_menu, verify_cantorval_center, verify_convergence, verify_geometric_center,
    verify_y_center, verify_z_trivial, CenterReport, ChaseSchedule, DigitStream, Interval,
    IntervalSet, KeepRule, MatchInstance, MemberEvidence, PointClass, Rational, RepGraph,
    TermSequence, Uniqueness, UniquenessReason, DEFAULT_SUBSUM_BUDGET,
};

use render::{RenderFormat, RenderSpec, Strip};

#[derive(Parser)]
#[command(
    name = "cantorval",
    version,
    about = "Exact gap tables, measures, centers of distances, digit expansions, and matchings \
             for subsum sets",
    max_term_width = 100
)]
struct Cli {
    /// Output format for the body written to stdout (figures always render
    /// SVG unless csv/json is chosen)
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Also write the body to a file in this directory
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Cap on enumerated subsums / streams for the enumerating subcommands
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Seed for the optional random spot-audit appended to center tables
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Keep {
    Threes,
    Twos,
    Alternating,
    All,
}

impl From<Keep> for KeepRule {
    fn from(k: Keep) -> Self {
        match k {
            Keep::Threes => KeepRule::Threes,
            Keep::Twos => KeepRule::Twos,
            Keep::Alternating => KeepRule::Alternating,
            Keep::All => KeepRule::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gap table of the level-N approximation, widest gaps first
    Gaps {
        /// Digit level: the approximation uses 2·N series terms
        #[arg(long)]
        level: u32,
    },
    /// Endpoint lattice K_n: all partial sums of the first 2n terms inside [2/3, 1]
    Kset {
        #[arg(long)]
        n: u32,
    },
    /// Exact measure and enumerated gap totals, level by level up to N
    Measure {
        #[arg(long)]
        level: u32,
    },
    /// Interval components of the limit set through generation D
    Intervals {
        #[arg(long)]
        depth: u32,
    },
    /// Center-of-distances sweep: confirmed members, exclusion certificates, classified grid
    #[command(subcommand)]
    Center(CenterTarget),
    /// All digit expansions of a rational over {0,2,3,5} base 4
    Represent {
        /// Value as p/q, e.g. 5/6
        #[arg(long, value_parser = parse_rational)]
        value: Rational,
    },
    /// The second expansion of a stream's value, if one exists
    Dual {
        /// Stream as prefix|period, e.g. 2|50
        #[arg(long, value_parser = parse_stream)]
        stream: DigitStream,
    },
    /// Run the chase construction over a schedule of flip positions
    Chase {
        /// Comma-separated strictly increasing flip positions, e.g. 1,3,4
        #[arg(long, value_delimiter = ',', required = true)]
        schedule: Vec<u32>,
        /// Continue with consecutive flips forever instead of closing
        #[arg(long)]
        infinite: bool,
        /// Comma-separated positions whose filler pair is raised
        #[arg(long, value_delimiter = ',')]
        raised: Vec<u32>,
    },
    /// Group every prefix-bounded stream by exact value and report collisions
    Oracle {
        /// Prefix length L of the enumerated universe
        #[arg(long)]
        len: u32,
    },
    /// Gap proxy for the subsum set of a kept subset of the series terms
    CantorSubset {
        #[arg(long, value_enum)]
        keep: Keep,
        #[arg(long)]
        level: u32,
    },
    /// Build a matching permutation from a JSON instance file
    Match {
        #[arg(long)]
        config: PathBuf,
    },
    /// Render one of the standard figures
    Figure {
        /// Which figure: 1 (approximation strips), 2 (X, Z, Y), 3 (gap/interval pairs)
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
}

#[derive(Subcommand)]
enum CenterTarget {
    /// The series 3/4, 2/4, 3/16, 2/16, … whose subsum set is the cantorval
    Cantorval {
        #[arg(long, default_value_t = 10)]
        level: u32,
        /// Grid points sampled over (0, 5/6]
        #[arg(long, default_value_t = 2560)]
        grid: u32,
    },
    /// A geometric series first, first/ratio, first/ratio², …
    Geometric {
        #[arg(long, value_parser = parse_rational)]
        first: Rational,
        /// Integer ratio, at least 3
        #[arg(long)]
        ratio: u32,
        #[arg(long, default_value_t = 6)]
        level: u32,
        #[arg(long, default_value_t = 500)]
        grid: u32,
    },
    /// The complement set Z, whose positive center is empty
    Z {
        #[arg(long, default_value_t = 6)]
        level: u32,
        /// Grid points sampled over (0, 2]
        #[arg(long, default_value_t = 500)]
        grid: u32,
    },
    /// The boundary set Y, whose center is exactly the powers 1/4^n
    Y {
        #[arg(long, default_value_t = 6)]
        level: u32,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_stream(s: &str) -> Result<DigitStream, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Writes the body to stdout and, when `--out` was given, the identical
/// bytes to `DIR/<stem>.<ext>`. File notices go to stderr so stdout stays
/// byte-deterministic.
struct Emit {
    out: Option<PathBuf>,
}

impl Emit {
    fn body(&self, stem: &str, ext: &str, body: &str) -> cantorval::Result<()> {
        print!("{body}");
        if let Some(dir) = &self.out {
            fs::create_dir_all(dir)?;
            let path = dir.join(format!("{stem}.{ext}"));
            fs::write(&path, body)?;
            eprintln!("wrote {}", path.display());
        }
        Ok(())
    }
}

fn format_ext(format: Format) -> &'static str {
    match format {
        Format::Table => "txt",
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn run(cli: Cli) -> cantorval::Result<()> {
    let budget = cli.budget.map_or(DEFAULT_SUBSUM_BUDGET, u128::from);
    let emit = Emit {
        out: cli.out.clone(),
    };
    let ext = format_ext(cli.format);
    match cli.command {
        Command::Gaps { level } => {
            let approx = TermSequence::cantorval().approximation(2 * level as usize, budget)?;
            let gaps = approx.gaps_by_length();
            let body = match cli.format {
                Format::Csv => {
                    let mut s = String::from("lo,hi,length\n");
                    for g in &gaps {
                        let _ = writeln!(s, "{},{},{}", g.lo, g.hi, g.length());
                    }
                    s
                }
                Format::Json => pretty(&json!({
                    "level": level,
                    "gaps": gaps
                        .iter()
                        .map(|g| json!({"lo": g.lo, "hi": g.hi, "length": g.length()}))
                        .collect::<Vec<_>>(),
                }))?,
                Format::Table => {
                    let mut s = format!(
                        "gaps of the level-{level} approximation ({} terms), widest first\n\n",
                        2 * level
                    );
                    let _ = writeln!(s, "{:>14}  {:>14}  {:>12}", "lo", "hi", "length");
                    for g in &gaps {
                        let _ = writeln!(
                            s,
                            "{:>14}  {:>14}  {:>12}",
                            g.lo.to_string(),
                            g.hi.to_string(),
                            g.length().to_string()
                        );
                    }
                    s
                }
            };
            emit.body(&format!("gaps-level-{level}"), ext, &body)
        }
        Command::Kset { n } => {
            let points = k_set(n);
            let expected = (4u128.pow(n) - 1) / 3;
            let spacing = rat(1, 4).pow(n as i32);
            let body = match cli.format {
                Format::Csv => {
                    let mut s = String::from("index,value\n");
                    for (i, v) in points.iter().enumerate() {
                        let _ = writeln!(s, "{i},{v}");
                    }
                    s
                }
                Format::Json => pretty(&json!({
                    "n": n,
                    "count": points.len(),
                    "expected": expected,
                    "spacing": spacing,
                    "min": points.first(),
                    "max": points.last(),
                    "values": points,
                }))?,
                Format::Table => {
                    let mut s = format!("K_{n}: partial sums of the first {} terms in [2/3, 1]\n\n", 2 * n);
                    let _ = writeln!(s, "count    {} (expected (4^{n} - 1)/3 = {expected})", points.len());
                    let _ = writeln!(s, "spacing  {spacing}");
                    if let (Some(lo), Some(hi)) = (points.first(), points.last()) {
                        let _ = writeln!(s, "min      {lo}");
                        let _ = writeln!(s, "max      {hi}");
                    }
                    s
                }
            };
            emit.body(&format!("kset-n-{n}"), ext, &body)
        }
        Command::Measure { level } => {
            let mut rows = Vec::new();
            for k in 1..=level {
                let approx = TermSequence::cantorval().approximation(2 * k as usize, budget)?;
                let measure = approx.set.measure();
                let gap_total: Rational = approx.gaps().iter().map(|g| g.length()).sum();
                rows.push((k, measure, gap_total, approx.set.parts().len()));
            }
            let body = match cli.format {
                Format::Csv => {
                    let mut s = String::from("level,measure,gap_total,parts\n");
                    for (k, m, g, p) in &rows {
                        let _ = writeln!(s, "{k},{m},{g},{p}");
                    }
                    s
                }
                Format::Json => pretty(&json!(rows
                    .iter()
                    .map(|(k, m, g, p)| json!({
                        "level": k, "measure": m, "gap_total": g, "parts": p
                    }))
                    .collect::<Vec<_>>()))?,
                Format::Table => {
                    let mut s = String::from("exact measure of the approximation, level by level\n\n");
                    let _ = writeln!(
                        s,
                        "{:>5}  {:>22}  {:>22}  {:>6}",
                        "level", "measure", "gap total", "parts"
                    );
                    for (k, m, g, p) in &rows {
                        let _ = writeln!(
                            s,
                            "{k:>5}  {:>22}  {:>22}  {p:>6}",
                            m.to_string(),
                            g.to_string()
                        );
                    }
                    s
                }
            };
            emit.body(&format!("measure-level-{level}"), ext, &body)
        }
        Command::Intervals { depth } => {
            let set = component_intervals(depth);
            let body = match cli.format {
                Format::Csv => {
                    let mut s = String::from("lo,hi,length\n");
                    for iv in set.parts() {
                        let _ = writeln!(s, "{},{},{}", iv.lo(), iv.hi(), iv.length());
                    }
                    s
                }
                Format::Json => pretty(&json!({
                    "depth": depth,
                    "count": set.parts().len(),
                    "total_length": set.measure(),
                    "parts": set,
                }))?,
                Format::Table => {
                    let mut s = format!(
                        "interval components through generation {depth}: {} parts, total length {}\n\n",
                        set.parts().len(),
                        set.measure()
                    );
                    let _ = writeln!(s, "{:>16}  {:>16}  {:>14}", "lo", "hi", "length");
                    for iv in set.parts() {
                        let _ = writeln!(
                            s,
                            "{:>16}  {:>16}  {:>14}",
                            iv.lo().to_string(),
                            iv.hi().to_string(),
                            iv.length().to_string()
                        );
                    }
                    s
                }
            };
            emit.body(&format!("intervals-depth-{depth}"), ext, &body)
        }
        Command::Center(target) => {
            let (report, stem) = match &target {
                CenterTarget::Cantorval { level, grid } => (
                    verify_cantorval_center(*level, *grid)?,
                    format!("center-cantorval-level-{level}"),
                ),
                CenterTarget::Geometric {
                    first,
                    ratio,
                    level,
                    grid,
                } => (
                    verify_geometric_center(first, *ratio, *level, *grid)?,
                    format!(
                        "center-geometric-{}-q{ratio}-level-{level}",
                        slug(&first.to_string())
                    ),
                ),
                CenterTarget::Z { level, grid } => {
                    (verify_z_trivial(*level, *grid)?, format!("center-z-level-{level}"))
                }
                CenterTarget::Y { level } => {
                    (verify_y_center(*level)?, format!("center-y-level-{level}"))
                }
            };
            let body = match cli.format {
                Format::Json => pretty(&report)?,
                Format::Csv => {
                    let mut s = String::from("alpha,class,ref\n");
                    for p in &report.grid {
                        let (class, idx) = match p.class {
                            PointClass::Member { member } => ("member", member.to_string()),
                            PointClass::Excluded { certificate } => {
                                ("excluded", certificate.to_string())
                            }
                            PointClass::Unresolved => ("unresolved", String::new()),
                        };
                        let _ = writeln!(s, "{},{class},{idx}", p.alpha);
                    }
                    s
                }
                Format::Table => center_table(&report, cli.seed),
            };
            emit.body(&stem, ext, &body)
        }
        Command::Represent { value } => {
            let reps = RepGraph::new().representations(&value);
            let body = match cli.format {
                Format::Csv => {
                    let mut s = String::from("stream\n");
                    for r in &reps {
                        let _ = writeln!(s, "{r}");
                    }
                    s
                }
                Format::Json => pretty(&json!({ "value": value, "expansions": reps }))?,
                Format::Table => {
                    if reps.is_empty() {
                        format!("{value} has no digit expansion over {{0,2,3,5}} base 4\n")
                    } else {
                        let mut s = format!("expansions of {value}\n");
                        for r in &reps {
                            let _ = writeln!(s, "  {r}");
                        }
                        s
                    }
                }
            };
            emit.body(&format!("represent-{}", slug(&value.to_string())), ext, &body)
        }
        Command::Dual { stream } => {
            let graph = RepGraph::new();
            let verdict = graph.uniqueness(&stream);
            let body = match cli.format {
                Format::Json => {
                    let v = match &verdict {
                        Uniqueness::Paired(other) => json!({
                            "stream": stream, "value": stream.value(), "dual": other,
                        }),
                        Uniqueness::Unique(reason) => json!({
                            "stream": stream, "value": stream.value(), "dual": null,
                            "reason": match reason {
                                UniquenessReason::TwoThreePattern => "recurring-two-three",
                                UniquenessReason::NoChaseStart => "exhaustive-search",
                            },
                        }),
                    };
                    pretty(&v)?
                }
                Format::Csv => match &verdict {
                    Uniqueness::Paired(other) => format!("stream\n{other}\n"),
                    Uniqueness::Unique(_) => String::from("stream\n"),
                },
                Format::Table => match &verdict {
                    Uniqueness::Paired(other) => {
                        format!("{stream} = {} = {other}\n", stream.value())
                    }
                    Uniqueness::Unique(reason) => {
                        let why = match reason {
                            UniquenessReason::TwoThreePattern => {
                                "its period contains the pair 2,3 recurrently"
                            }
                            UniquenessReason::NoChaseStart => {
                                "exhaustive search finds no second expansion"
                            }
                        };
                        format!("{stream} = {} is the unique expansion ({why})\n", stream.value())
                    }
                },
            };
            emit.body(&format!("dual-{}", slug(&stream.to_string())), ext, &body)
        }
        Command::Chase {
            schedule,
            infinite,
            raised,
        } => {
            let n0 = schedule.first().copied().unwrap_or(1);
            let sched = ChaseSchedule {
                base: vec![0; (n0 as usize).saturating_sub(1)],
                indices: schedule.clone(),
                raised: raised.into_iter().collect::<BTreeSet<u32>>(),
                infinite,
            };
            let (x, y) = chase_pair(&sched)?;
            let stem = format!(
                "chase-{}{}",
                schedule
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join("-"),
                if infinite { "-inf" } else { "" }
            );
            let body = match cli.format {
                Format::Json => pretty(&json!({
                    "schedule": sched, "x": x, "y": y, "value": x.value(),
                }))?,
                Format::Csv => format!("role,stream,value\nx,{x},{}\ny,{y},{}\n", x.value(), y.value()),
                Format::Table => format!("x = {x}\ny = {y}\nvalue = {}\n", x.value()),
            };
            emit.body(&stem, ext, &body)
        }
        Command::Oracle { len } => {
            let report = collision_oracle(len, &standard_tail_menu(), budget)?;
            let body = match cli.format {
                Format::Json => pretty(&report)?,
                Format::Csv => {
                    let mut s = String::from("value,first,second\n");
                    for g in &report.groups {
                        let streams = g
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(",");
                        let _ = writeln!(s, "{},{streams}", g[0].value());
                    }
                    s
                }
                Format::Table => {
                    let largest = report.groups.iter().map(Vec::len).max().unwrap_or(0);
                    let mut s = format!("collision oracle at prefix length {len}\n\n");
                    let _ = writeln!(s, "universe          {}", report.universe_size);
                    let _ = writeln!(s, "singleton values  {}", report.singleton_values);
                    let _ = writeln!(s, "collision groups  {}", report.groups.len());
                    let _ = writeln!(s, "largest group     {largest}");
                    s
                }
            };
            emit.body(&format!("oracle-len-{len}"), ext, &body)
        }
        Command::CantorSubset { keep, level } => {
            let rule: KeepRule = keep.into();
            let proxy = cantor_subset_gap_proxy(rule, level, budget)?;
            let keep_name = match keep {
                Keep::Threes => "threes",
                Keep::Twos => "twos",
                Keep::Alternating => "alternating",
                Keep::All => "all",
            };
            let body = match cli.format {
                Format::Json => pretty(&proxy)?,
                Format::Csv => format!(
                    "rule,level,tail,largest_part,parts\n{keep_name},{},{},{},{}\n",
                    proxy.level, proxy.tail, proxy.largest_part, proxy.parts
                ),
                Format::Table => {
                    let mut s = format!("kept-term subsum set, rule {keep_name}, level {level}\n\n");
                    let _ = writeln!(s, "tail bound    {}", proxy.tail);
                    let _ = writeln!(s, "largest part  {}", proxy.largest_part);
                    let _ = writeln!(s, "parts         {}", proxy.parts);
                    s
                }
            };
            emit.body(&format!("cantor-subset-{keep_name}-level-{level}"), ext, &body)
        }
        Command::Match { config } => {
            let raw = fs::read_to_string(&config)?;
            let cfg: MatchConfig = serde_json::from_str(&raw)?;
            let trace = build_permutation(&cfg.instance, &cfg.alpha, cfg.steps)?;
            let converged = cfg.window.map(|window| {
                let tol = cfg.tolerance.clone().unwrap_or_else(|| rat(1, 32));
                verify_convergence(&trace, &cfg.alpha, window, &tol)
            });
            let body = match cli.format {
                Format::Json => pretty(&json!({
                    "alpha": cfg.alpha, "steps": trace.steps.len(),
                    "converged": converged, "trace": trace,
                }))?,
                Format::Csv => trace.to_csv(),
                Format::Table => {
                    let mut s = format!(
                        "matched {} steps at alpha = {}\n",
                        trace.steps.len(),
                        cfg.alpha
                    );
                    if let Some(last) = trace.steps.last() {
                        let _ = writeln!(s, "final distance {}", last.distance);
                    }
                    if let Some(ok) = converged {
                        let _ = writeln!(
                            s,
                            "tail window check: {}",
                            if ok { "within tolerance" } else { "OUTSIDE tolerance" }
                        );
                    }
                    s
                }
            };
            emit.body("match-trace", ext, &body)
        }
        Command::Figure { which, depth } => {
            let format = match cli.format {
                Format::Table => RenderFormat::Svg,
                Format::Csv => RenderFormat::Csv,
                Format::Json => RenderFormat::Json,
            };
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            let stem = format!("figure-{which}-depth-{depth}");
            let output = dir.join(format!("{stem}.{}", format.extension()));
            let spec = figure_spec(which, depth, budget, output.clone(), format)?;
            spec.emit()?;
            println!(
                "figure {which}: {} strips, {} marks -> {}",
                spec.strips.len(),
                spec.marks.len(),
                output.display()
            );
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> cantorval::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Filesystem-safe artifact stem fragment for a rational or stream.
fn slug(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect()
}

/// JSON shape accepted by `match --config`.
#[derive(Deserialize)]
struct MatchConfig {
    alpha: Rational,
    steps: usize,
    #[serde(default)]
    window: Option<usize>,
    #[serde(default)]
    tolerance: Option<Rational>,
    instance: MatchInstance,
}

fn center_table(report: &CenterReport, seed: Option<u64>) -> String {
    let (members, excluded, unresolved) = report.tally();
    let mut s = format!("center sweep: {} (level {})\n\n", report.label, report.level);
    let _ = writeln!(
        s,
        "grid: {} members, {excluded} excluded, {unresolved} unresolved of {}",
        members,
        report.grid.len()
    );
    let _ = writeln!(s, "certificates held: {}", report.certificates.len());
    let _ = writeln!(s, "\nconfirmed members:");
    for m in &report.members {
        let why = match &m.evidence {
            MemberEvidence::SequenceTerm {
                index,
                checked_level,
            } => format!("series term {index}, admitted at level {checked_level}"),
            MemberEvidence::TranslationIdentity { levels } => {
                format!("translation identities through level {levels}")
            }
        };
        let _ = writeln!(s, "  {:>12}  {why}", m.value.to_string());
    }
    for note in &report.notes {
        let _ = writeln!(s, "note: {note}");
    }
    if let Some(seed) = seed {
        s.push_str(&seeded_audit(report, seed));
    }
    s
}

/// Re-test a few random distances against the report's own evidence:
/// members must pass the exact partner test on the outer approximation,
/// and excluded points must be covered by a stored certificate. Purely a
/// spot check — the sweep itself is deterministic and exhaustive.
fn seeded_audit(report: &CenterReport, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = &report.total;
    let mut s = format!("\nspot audit (seed {seed}):\n");
    for _ in 0..16 {
        let k: u64 = rng.gen_range(1..=9973);
        let alpha = rat(k as i64, 9973) * span;
        let covered = report
            .certificates
            .iter()
            .any(|c| c.covers(&alpha))
            .then_some("excluded by certificate");
        let member = report
            .members
            .iter()
            .any(|m| m.value == alpha)
            .then_some("confirmed member");
        let verdict = member.or(covered).unwrap_or("unresolved at this level");
        let _ = writeln!(s, "  {:>16}  {verdict}", alpha.to_string());
    }
    s
}

fn figure_spec(
    which: u8,
    depth: u32,
    budget: u128,
    output: PathBuf,
    format: RenderFormat,
) -> cantorval::Result<RenderSpec> {
    let hull = Interval::new(rat(0, 1), hull_total())?;
    let marks = |xs: &[(&str, Rational)]| {
        xs.iter()
            .map(|(l, x)| (l.to_string(), x.clone()))
            .collect::<Vec<_>>()
    };
    let spec = match which {
        1 => {
            let mut strips = Vec::new();
            for k in 1..=depth {
                let approx = TermSequence::cantorval().approximation(2 * k as usize, budget)?;
                strips.push(Strip {
                    label: format!("level {k}"),
                    set: approx.set,
                    hollow: false,
                });
            }
            RenderSpec {
                hull,
                strips,
                marks: marks(&[
                    ("0", rat(0, 1)),
                    ("5/12", rat(5, 12)),
                    ("1/2", rat(1, 2)),
                    ("2/3", rat(2, 3)),
                    ("1", rat(1, 1)),
                    ("7/6", rat(7, 6)),
                    ("5/4", rat(5, 4)),
                    ("5/3", rat(5, 3)),
                ]),
                connectors: Vec::new(),
                output,
                format,
            }
        }
        2 => {
            let approx = TermSequence::cantorval().approximation(2 * depth as usize, budget)?;
            let x_set = approx.set;
            let z_set = cantorval::z_hull(depth);
            let y_set = cantorval::y_hull(depth);
            RenderSpec {
                hull,
                strips: vec![
                    Strip {
                        label: format!("X (level {depth})"),
                        set: x_set,
                        hollow: false,
                    },
                    Strip {
                        label: format!("Z outer (level {depth})"),
                        set: z_set,
                        hollow: false,
                    },
                    Strip {
                        label: format!("Y outer (level {depth})"),
                        set: y_set,
                        hollow: false,
                    },
                ],
                marks: marks(&[
                    ("0", rat(0, 1)),
                    ("1/6", rat(1, 6)),
                    ("1/4", rat(1, 4)),
                    ("2/3", rat(2, 3)),
                    ("1", rat(1, 1)),
                    ("17/12", rat(17, 12)),
                    ("3/2", rat(3, 2)),
                    ("5/3", rat(5, 3)),
                ]),
                connectors: Vec::new(),
                output,
                format,
            }
        }
        _ => {
            let pairs = gap_component_pairs(depth);
            let mut gap_parts = IntervalSet::empty();
            let mut comp_parts = IntervalSet::empty();
            let mut connectors = Vec::new();
            let half = rat(1, 2);
            for (gap, comp) in &pairs {
                gap_parts = gap_parts.union(&IntervalSet::singleton(Interval::new(
                    gap.lo.clone(),
                    gap.hi.clone(),
                )?));
                comp_parts = comp_parts.union(&IntervalSet::singleton(comp.clone()));
                connectors.push((
                    (&gap.lo + &gap.hi) * &half,
                    (comp.lo() + comp.hi()) * &half,
                ));
            }
            RenderSpec {
                hull,
                strips: vec![
                    Strip {
                        label: format!("gaps (level {depth})"),
                        set: gap_parts,
                        hollow: true,
                    },
                    Strip {
                        label: format!("paired intervals (gen <= {depth})"),
                        set: comp_parts,
                        hollow: false,
                    },
                ],
                marks: marks(&[("0", rat(0, 1)), ("5/6", rat(5, 6)), ("5/3", rat(5, 3))]),
                connectors,
                output,
                format,
            }
        }
    };
    Ok(spec)
}

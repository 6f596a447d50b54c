//! Command-line front end: dataset analysis, synthetic data generation,
//! standalone homology, and the randomized identity oracle.
//!
//! Exit codes: 0 success, 1 a checked property failed (oracle), 2 usage or
//! input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use concurtop::interchange::{IntervalJson, NamedComplex, ParseNotes};
use concurtop::oracle::{run_trials, OracleConfig};
use concurtop::pipeline::{FrameStatus, IndependenceReport};
use concurtop::synth::{cycle_pattern_spec, JointSpec, JointSpecJson};
use concurtop::{
    betti, persistence, Analysis, AnalyzeOptions, BinaryDataset, FiltrationOrder, FrameSelection,
    Grouping, Interval, SimplicialComplex, Simplex, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "concurtop", version, about = "Concurrence-topology independence screening")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Screen a binary dataset for topological signs of group independence.
    Analyze(AnalyzeArgs),
    /// Generate a synthetic binary dataset from a joint distribution spec.
    Simulate(SimulateArgs),
    /// Betti numbers of a complex file, with optional two-level persistence.
    Homology(HomologyArgs),
    /// Randomized property suites for the join/product homology identities.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input CSV: header row of variable names, body rows of 0/1 cells.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated variable names of group A.
    #[arg(long, value_name = "NAMES")]
    group_a: String,
    /// Comma-separated variable names of group B.
    #[arg(long, value_name = "NAMES")]
    group_b: String,
    /// Frames to analyze: "all", one frame "3", or a range "1..5".
    #[arg(long, default_value = "all")]
    frames: String,
    /// Write the full JSON report to this path.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Attach representative cycles to lifespan-2 classes in the report.
    #[arg(long)]
    representatives: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Joint spec JSON file: {"groupA": {...}, "groupB": {...}, "joint"?: [...]}.
    #[arg(long, conflicts_with = "cycles", required_unless_present = "cycles")]
    input: Option<PathBuf>,
    /// Built-in spec instead of a file: two k-cycle groups A0.. and B0.. .
    #[arg(long, value_name = "K")]
    cycles: Option<usize>,
    /// Couple the groups perfectly on the diagonal (requires matching pattern
    /// probabilities); overrides any joint table in the spec file.
    #[arg(long)]
    coupled: bool,
    /// Number of observations to draw.
    #[arg(long, value_name = "T")]
    rows: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    /// Complex JSON file: {"vertices": [names], "facets": [[names]]}.
    #[arg(long)]
    input: PathBuf,
    /// Subcomplex JSON file; adds the two-level persistence of its inclusion
    /// (subcomplex at level 1, the rest at level 2) to the output.
    #[arg(long)]
    subcomplex: Option<PathBuf>,
    /// Attach representative cycles to the intervals.
    #[arg(long, requires = "subcomplex")]
    representatives: bool,
    /// Write the intervals as JSON to this path.
    #[arg(long, requires = "subcomplex")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Number of randomized trials.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Vertex bound per side for the random complexes.
    #[arg(long, default_value_t = 6)]
    max_vertices: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Negative control: drop one facet from every join before checking.
    #[arg(long)]
    inject_failure: bool,
}

fn main() -> ExitCode {
    // Die silently when a downstream pipe closes, like any stream filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not usage errors.
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Homology(args) => cmd_homology(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> anyhow::Result<u8> {
    let text = read_text(&args.input)?;
    let dataset = BinaryDataset::parse_csv(&text)?;
    let grouping = Grouping::new(split_names(&args.group_a), split_names(&args.group_b))?;
    let selection = FrameSelection::parse(&args.frames)?;
    let options = AnalyzeOptions {
        with_representatives: args.representatives,
        ..AnalyzeOptions::default()
    };
    let analysis = Analysis::new(&dataset, grouping, options)?;
    let report = analysis.run(selection)?;
    print_analyze_summary(&report);
    if let Some(path) = &args.output {
        write_json(path, &serde_json::to_value(&report)?)?;
    }
    Ok(0)
}

fn print_analyze_summary(report: &IndependenceReport) {
    let s = &report.summary;
    println!(
        "dataset: rows={} variables={} zero-rows={} max-frame={}",
        s.t, s.n, s.zero_rows, s.max_frame
    );
    println!("group A: {}", report.grouping.group_a.join(","));
    println!("group B: {}", report.grouping.group_b.join(","));
    for fr in &report.frames {
        match fr.status {
            FrameStatus::Ok => {
                for (d, r) in fr.inclusion_ranks.iter().enumerate() {
                    println!("frame {} dim {}: rank {}", fr.frame, d, r);
                }
            }
            FrameStatus::EmptyFrame => println!("frame {}: empty", fr.frame),
            FrameStatus::EmptyGroupA => println!("frame {}: group A projects to nothing", fr.frame),
            FrameStatus::EmptyGroupB => println!("frame {}: group B projects to nothing", fr.frame),
        }
    }
    for (dim, runs) in &report.frequency_lifespans {
        let spans: Vec<String> = runs.iter().map(|(lo, hi)| format!("{lo}..{hi}")).collect();
        println!("dim {} survives frames: {}", dim, spans.join(" "));
    }
}

fn cmd_simulate(args: SimulateArgs) -> anyhow::Result<u8> {
    let joint = match (&args.input, args.cycles) {
        (Some(path), None) => {
            let text = read_text(path)?;
            let json: JointSpecJson = serde_json::from_str(&text)
                .with_context(|| format!("parsing spec file {}", path.display()))?;
            let spec = JointSpec::from_json(&json)?;
            if args.coupled {
                JointSpec::diagonal(spec.group_a().clone(), spec.group_b().clone())?
            } else {
                spec
            }
        }
        (None, Some(k)) => {
            let a = cycle_pattern_spec(k, prefixed_names("A", k))?;
            let b = cycle_pattern_spec(k, prefixed_names("B", k))?;
            if args.coupled {
                JointSpec::diagonal(a, b)?
            } else {
                JointSpec::independent(a, b)?
            }
        }
        _ => unreachable!("clap enforces exactly one of --input / --cycles"),
    };
    let dataset = joint.sample(args.rows, args.seed)?;
    let csv = dataset.to_csv();
    match &args.output {
        Some(path) => fs::write(path, csv)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn cmd_homology(args: HomologyArgs) -> anyhow::Result<u8> {
    let (named, notes) = read_complex(&args.input)?;
    print_parse_notes(&notes);
    let b = betti(named.complex(), false, DEFAULT_BUDGET)?;
    println!("betti: {}", spaced(&b.per_dim));
    if let Some(subpath) = &args.subcomplex {
        let (sub, sub_notes) = read_complex(subpath)?;
        print_parse_notes(&sub_notes);
        let m = translate_into(&sub, &named)?;
        let order = FiltrationOrder::two_level(&m, named.complex(), DEFAULT_BUDGET)?;
        let intervals = persistence(&order, args.representatives);
        let mut ranks: Vec<usize> = Vec::new();
        for iv in &intervals.intervals {
            println!("dim {}: {}", iv.dim, interval_text(iv));
            if iv.birth == 1 && iv.death.is_none() {
                if ranks.len() <= iv.dim {
                    ranks.resize(iv.dim + 1, 0);
                }
                ranks[iv.dim] += 1;
            }
        }
        println!("inclusion rank: {}", spaced(&ranks));
        if let Some(path) = &args.output {
            let list: Vec<IntervalJson> = intervals
                .intervals
                .iter()
                .map(|iv| {
                    IntervalJson::from_interval(iv, args.representatives, |v| {
                        named.name_of(v).to_string()
                    })
                })
                .collect();
            write_json(path, &serde_json::to_value(&list)?)?;
        }
    }
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> anyhow::Result<u8> {
    let config = OracleConfig {
        trials: args.trials,
        max_vertices: args.max_vertices,
        seed: args.seed,
        inject_failure: args.inject_failure,
        ..OracleConfig::default()
    };
    let report = run_trials(config)?;
    if report.all_passed() {
        println!(
            "oracle: {} trials passed (max {} vertices per side, seed {})",
            report.trials, report.max_vertices, report.seed
        );
        return Ok(0);
    }
    println!("oracle: {} of {} trials failed", report.failures.len(), report.trials);
    const SHOWN: usize = 5;
    for failure in report.failures.iter().take(SHOWN) {
        println!("{}", serde_json::to_string_pretty(failure)?);
    }
    if report.failures.len() > SHOWN {
        println!("({} further failing trials omitted)", report.failures.len() - SHOWN);
    }
    Ok(1)
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_complex(path: &Path) -> anyhow::Result<(NamedComplex, ParseNotes)> {
    let text = read_text(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(NamedComplex::from_json(&value)?)
}

fn print_parse_notes(notes: &ParseNotes) {
    if notes.redundant_facets > 0 {
        println!("note: {} listed facet(s) absorbed by closure", notes.redundant_facets);
    }
    if notes.isolated_vertices > 0 {
        println!("note: {} isolated vertex(es) kept as 0-simplices", notes.isolated_vertices);
    }
}

/// Re-expresses `sub` over the host's vertex ids by matching names.
fn translate_into(sub: &NamedComplex, host: &NamedComplex) -> anyhow::Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for facet in sub.complex().facets() {
        let ids = sub
            .simplex_names(facet)
            .iter()
            .map(|name| {
                host.labels()
                    .iter()
                    .position(|l| l == name)
                    .map(|i| i as u32)
                    .ok_or_else(|| {
                        anyhow::anyhow!("subcomplex vertex {name:?} is not in the host complex")
                    })
            })
            .collect::<anyhow::Result<Vec<u32>>>()?;
        facets.push(Simplex::from_ids(ids)?);
    }
    Ok(SimplicialComplex::closure(facets))
}

fn interval_text(iv: &Interval) -> String {
    match iv.death {
        Some(d) => format!("[{}, {})", iv.birth, d),
        None => format!("[{}, inf)", iv.birth),
    }
}

fn split_names(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn prefixed_names(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

fn spaced(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn write_json(path: &Path, value: &serde_json::Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

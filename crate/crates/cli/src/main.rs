//! `qsync`: construct synchronizable codes, dump their slip tables, and run
//! seeded decoding experiments against them.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 contract violation
//! found, 3 budget refused the computation.
//!
//! Randomized subcommands use ChaCha12 (rand_chacha 0.9). Per-trial
//! generators are seeded from (master seed, trial id), so outputs are
//! byte-identical for a given seed no matter how many worker threads run;
//! QSYNC_THREADS caps the pool.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use qsync_core::bits::BitVec;
use qsync_core::code::{bch_code, CyclicCode, Distance, DistanceTag};
use qsync_core::frame::{self, BranchSelection, ChannelModel, SlipPolicy, SweepConfig};
use qsync_core::gf2::BitPoly;
use qsync_core::statevec;
use qsync_core::sync::QsyncCode;
use qsync_core::{Error, QsyncDescriptor};

#[derive(Parser)]
#[command(name = "qsync", version, about = "Synchronizable-code construction and decoding experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a code pair and write its JSON descriptor.
    Construct(ConstructArgs),
    /// Print the slip signature table recorded in a descriptor.
    Table(TableArgs),
    /// Run seeded Monte Carlo trials: per-trial CSV plus a summary JSON.
    Simulate(SimulateArgs),
    /// Sweep every bounded-weight error tuple and report violations.
    Exhaustive(ExhaustiveArgs),
    /// Cross-check the symbolic pipeline against the state-vector reference.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// BCH shorthand: field degree m, for length n = 2^m - 1.
    #[arg(long, requires = "d1", requires = "d2")]
    m: Option<usize>,
    /// BCH shorthand: designed distance of the phase code C.
    #[arg(long)]
    d1: Option<usize>,
    /// BCH shorthand: designed distance of the bit code D (below d1).
    #[arg(long)]
    d2: Option<usize>,
    /// Explicit pair: code length (with --phase-gen and --bit-gen).
    #[arg(long, requires = "phase_gen", requires = "bit_gen", conflicts_with = "m")]
    n: Option<usize>,
    /// Explicit pair: generator of C, e.g. "x^3+x+1".
    #[arg(long)]
    phase_gen: Option<String>,
    /// Explicit pair: generator of D; "1" is the trivial full-ring code.
    #[arg(long)]
    bit_gen: Option<String>,
    /// Left slip tolerance a_l.
    #[arg(long)]
    al: usize,
    /// Right slip tolerance a_r.
    #[arg(long)]
    ar: usize,
    /// Descriptor output path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    descriptor: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    descriptor: PathBuf,
    /// Number of trials (positive).
    #[arg(long)]
    trials: u64,
    /// Per-qubit bit-flip probability.
    #[arg(long, default_value_t = 0.0)]
    p_bit: f64,
    /// Per-qubit phase-flip probability.
    #[arg(long, default_value_t = 0.0)]
    p_phase: f64,
    /// Fixed slip for every trial; default draws uniformly from the
    /// tolerated range. Out-of-range values are allowed for negative tests.
    #[arg(long)]
    slip: Option<i64>,
    /// Thin sampled flips into the guaranteed-correctable regime.
    #[arg(long)]
    clamp: bool,
    /// Master seed; mandatory so runs are reproducible.
    #[arg(long)]
    seed: u64,
    /// Logical basis index for every trial; default rotates through all.
    #[arg(long)]
    logical: Option<usize>,
    /// Per-trial CSV output path.
    #[arg(long)]
    csv: PathBuf,
    /// Summary JSON output path.
    #[arg(long)]
    summary: PathBuf,
}

#[derive(Args)]
struct ExhaustiveArgs {
    #[arg(long)]
    descriptor: PathBuf,
    #[arg(long, default_value_t = 0)]
    max_bit_weight: usize,
    #[arg(long, default_value_t = 1)]
    max_phase_weight: usize,
    /// Enumerate every dual branch instead of sampling.
    #[arg(long)]
    all_branches: bool,
    /// Seeded branch sample size when not enumerating.
    #[arg(long, default_value_t = 32)]
    branch_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    descriptor: PathBuf,
    #[arg(long, default_value_t = 0)]
    max_bit_weight: usize,
    #[arg(long, default_value_t = 1)]
    max_phase_weight: usize,
}

/// Failure paths, each owning its exit code.
enum Failure {
    Usage(String),
    Violation(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Violation(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Violation(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SweepBudget { .. }
            | Error::EnumerationBudget { .. }
            | Error::SearchBudget { .. }
            | Error::QubitBudget { .. }
            | Error::DecoderBudget { .. }
            | Error::OrderBudget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(f) = cap_threads().and_then(|()| run(cli)) {
        eprintln!("error: {}", f.message());
        return ExitCode::from(f.code());
    }
    ExitCode::SUCCESS
}

fn cap_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("QSYNC_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| Failure::Usage(format!("QSYNC_THREADS must be a thread count, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Construct(args) => cmd_construct(args),
        Cmd::Table(args) => cmd_table(args),
        Cmd::Simulate(args) => cmd_simulate(args),
        Cmd::Exhaustive(args) => cmd_exhaustive(args),
        Cmd::Oracle(args) => cmd_oracle(args),
    }
}

/// Splitmix-style seed derivation so trial t replays in isolation.
fn trial_seed(master: u64, trial: u64) -> u64 {
    master ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn parse_generator(s: &str) -> Result<BitPoly, Failure> {
    let poly = if let Some(hex) = s.strip_prefix("0x") {
        BitPoly::from_hex(hex)?
    } else {
        BitPoly::from_pretty(s)?
    };
    Ok(poly)
}

/// Explicit generators carry no distance claim, so measure it; the result
/// is what sizes the decoder tables.
fn code_with_measured_distance(n: usize, generator: BitPoly) -> Result<CyclicCode, Failure> {
    let code = CyclicCode::from_generator(n, generator)?;
    let d = code.min_distance_by_weight()?;
    Ok(code.with_distance(Distance {
        value: d,
        tag: DistanceTag::Computed,
    }))
}

fn build_code(args: &ConstructArgs) -> Result<QsyncCode, Failure> {
    let (phase, bit) = match (args.m, args.n) {
        (Some(m), None) => {
            let (d1, d2) = (args.d1.unwrap(), args.d2.unwrap());
            (bch_code(m, d1)?, bch_code(m, d2)?)
        }
        (None, Some(n)) => {
            let gc = parse_generator(args.phase_gen.as_deref().unwrap())?;
            let gd = parse_generator(args.bit_gen.as_deref().unwrap())?;
            (
                code_with_measured_distance(n, gc)?,
                code_with_measured_distance(n, gd)?,
            )
        }
        _ => {
            return Err(Failure::Usage(
                "give either --m/--d1/--d2 or --n/--phase-gen/--bit-gen".into(),
            ))
        }
    };
    Ok(QsyncCode::build(phase, bit, args.al, args.ar)?)
}

fn read_descriptor(path: &PathBuf) -> Result<(QsyncCode, String), Failure> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
    let descriptor: QsyncDescriptor = serde_json::from_str(&raw)
        .map_err(|e| Failure::Usage(format!("parsing {}: {e}", path.display())))?;
    let code = descriptor.reconstruct()?;
    let hash = format!("{:x}", Sha256::digest(raw.as_bytes()));
    Ok((code, hash))
}

fn cmd_construct(args: ConstructArgs) -> Result<(), Failure> {
    let code = build_code(&args)?;
    let descriptor = QsyncDescriptor::from_code(&code)?;
    let json = serde_json::to_string_pretty(&descriptor)
        .map_err(|e| Failure::Usage(format!("serializing descriptor: {e}")))?;
    fs::write(&args.out, json + "\n")
        .map_err(|e| Failure::Usage(format!("writing {}: {e}", args.out.display())))?;
    println!(
        "({},{})-[[{},{}]]: phase radius {}, bit radius {}",
        code.a_l(),
        code.a_r(),
        code.n_ext(),
        code.k_logical(),
        code.phase_radius(),
        code.bit_radius()
    );
    println!("descriptor written to {}", args.out.display());
    Ok(())
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let (code, _) = read_descriptor(&args.descriptor)?;
    println!(
        "f = {} over ring length {}",
        code.sync_modulus().to_pretty(),
        code.n()
    );
    println!("{:>4}  signature x^a mod f", "a");
    for (a, remainder) in code.sync_table() {
        println!("{a:>4}  {}", remainder.to_pretty());
    }
    Ok(())
}

struct TrialRow {
    trial_id: u64,
    slip_true: i64,
    slip_est: Option<i64>,
    window_weights: Vec<usize>,
    phase_weight: usize,
    status: &'static str,
    success: bool,
}

#[derive(Serialize)]
struct SimulationSummary {
    descriptor_sha256: String,
    seed: u64,
    trials: u64,
    p_bit: f64,
    p_phase: f64,
    slip_policy: String,
    clamp: bool,
    counts: BTreeMap<&'static str, u64>,
    rates: BTreeMap<&'static str, f64>,
    success_rate: f64,
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Failure> {
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    for (name, p) in [("--p-bit", args.p_bit), ("--p-phase", args.p_phase)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Failure::Usage(format!(
                "{name} must lie in [0, 1], got {p}"
            )));
        }
    }
    let (code, descriptor_sha256) = read_descriptor(&args.descriptor)?;
    let logical_count = code.logical().count();
    if let Some(l) = args.logical {
        if l >= logical_count {
            return Err(Failure::Usage(format!(
                "--logical {l} out of range for {logical_count} basis states"
            )));
        }
    }
    let model = ChannelModel {
        p_bit: args.p_bit,
        p_phase: args.p_phase,
        slip: args.slip.map_or(SlipPolicy::Uniform, SlipPolicy::Fixed),
        clamp: args.clamp,
    };

    let rows: Vec<TrialRow> = (0..args.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(trial_seed(args.seed, trial));
            let eff = frame::sample_channel(&code, &model, &mut rng);
            let branch = frame::sample_branch(&code, &mut rng);
            let logical = args
                .logical
                .unwrap_or((trial % logical_count as u64) as usize);
            let report = frame::run_pipeline_with_branch(&code, logical, &eff, &branch)
                .expect("validated inputs");
            TrialRow {
                trial_id: trial,
                slip_true: eff.slip,
                slip_est: report.slip_estimate,
                window_weights: frame::window_weights(&code, &eff.bit_flips),
                phase_weight: eff.phase_flips.weight(),
                status: report.status.as_str(),
                success: report.status.is_success(),
            }
        })
        .collect();

    let mut csv = String::from("trial_id,slip_true,slip_est");
    for o in 0..=code.a_l() + code.a_r() {
        write!(csv, ",bit_w{o}").expect("string write");
    }
    csv.push_str(",phase_weight,status\n");
    for row in &rows {
        write!(csv, "{},{},", row.trial_id, row.slip_true).expect("string write");
        if let Some(est) = row.slip_est {
            write!(csv, "{est}").expect("string write");
        }
        for w in &row.window_weights {
            write!(csv, ",{w}").expect("string write");
        }
        writeln!(csv, ",{},{}", row.phase_weight, row.status).expect("string write");
    }
    fs::write(&args.csv, csv)
        .map_err(|e| Failure::Usage(format!("writing {}: {e}", args.csv.display())))?;

    let mut counts: BTreeMap<&'static str, u64> = BTreeMap::new();
    for row in &rows {
        *counts.entry(row.status).or_insert(0) += 1;
    }
    let rates: BTreeMap<&'static str, f64> = counts
        .iter()
        .map(|(&status, &n)| (status, n as f64 / args.trials as f64))
        .collect();
    let success_rate =
        rows.iter().filter(|r| r.success).count() as f64 / args.trials as f64;
    let summary = SimulationSummary {
        descriptor_sha256,
        seed: args.seed,
        trials: args.trials,
        p_bit: args.p_bit,
        p_phase: args.p_phase,
        slip_policy: match model.slip {
            SlipPolicy::Fixed(s) => format!("fixed:{s}"),
            SlipPolicy::Uniform => "uniform".into(),
        },
        clamp: args.clamp,
        counts,
        rates,
        success_rate,
    };
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Failure::Usage(format!("serializing summary: {e}")))?;
    fs::write(&args.summary, json + "\n")
        .map_err(|e| Failure::Usage(format!("writing {}: {e}", args.summary.display())))?;

    println!(
        "{} trials: success rate {}; csv {}; summary {}",
        args.trials,
        success_rate,
        args.csv.display(),
        args.summary.display()
    );
    Ok(())
}

fn bits01(v: &BitVec) -> String {
    (0..v.len()).map(|i| if v.get(i) { '1' } else { '0' }).collect()
}

fn cmd_exhaustive(args: ExhaustiveArgs) -> Result<(), Failure> {
    let (code, _) = read_descriptor(&args.descriptor)?;
    let config = SweepConfig {
        max_bit_weight: args.max_bit_weight,
        max_phase_weight: args.max_phase_weight,
        branches: if args.all_branches {
            BranchSelection::All
        } else {
            BranchSelection::Sampled {
                count: args.branch_samples,
                seed: args.seed,
            }
        },
    };
    let summary = frame::exhaustive_sweep(&code, &config)?;
    println!("{} cases swept", summary.total);
    for (status, count) in &summary.counts {
        println!("  {status}: {count}");
    }
    if summary.all_success() {
        println!("contract holds over {} cases", summary.total);
        return Ok(());
    }
    println!(
        "{} violations (showing {}):",
        summary.violation_count,
        summary.violations.len()
    );
    for case in &summary.violations {
        println!(
            "  logical={} slip={} bits={:?} phases={:?} branch={} status={}",
            case.logical_index,
            case.slip,
            case.bit_positions,
            case.phase_positions,
            bits01(&case.branch),
            case.status
        );
    }
    Err(Failure::Violation(format!(
        "{} of {} cases violated the correction contract",
        summary.violation_count, summary.total
    )))
}

fn weighted_patterns(len: usize, max_weight: usize) -> Vec<BitVec> {
    (0..=max_weight.min(len))
        .flat_map(|w| (0..len).combinations(w))
        .map(|positions| {
            let mut v = BitVec::zeros(len);
            for p in positions {
                v.set(p, true);
            }
            v
        })
        .collect()
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let (code, _) = read_descriptor(&args.descriptor)?;
    let n_ext = code.n_ext();
    let bit_patterns = weighted_patterns(n_ext, args.max_bit_weight);
    let phase_patterns = weighted_patterns(n_ext, args.max_phase_weight);

    let mut cases = 0u64;
    let mut successes = 0u64;
    let mut max_deviation = 0f64;
    let mut disagreements = 0u64;
    for logical in 0..code.logical().count() {
        for slip in -(code.a_l() as i64)..=code.a_r() as i64 {
            for e_b in &bit_patterns {
                for e_p in &phase_patterns {
                    let eff = frame::ChannelEffect {
                        bit_flips: e_b.clone(),
                        phase_flips: e_p.clone(),
                        slip,
                    };
                    let report = frame::run_pipeline_with_branch(
                        &code,
                        logical,
                        &eff,
                        &BitVec::zeros(code.n()),
                    )?;
                    let fidelity = statevec::oracle_pipeline(&code, logical, &eff)?;
                    cases += 1;
                    if report.status.is_success() {
                        successes += 1;
                        let deviation = (1.0 - fidelity).abs();
                        max_deviation = max_deviation.max(deviation);
                        if deviation > 1e-9 {
                            disagreements += 1;
                            println!(
                                "disagreement: logical={} slip={} bits={} phases={} status={} fidelity={}",
                                logical,
                                slip,
                                bits01(e_b),
                                bits01(e_p),
                                report.status,
                                fidelity
                            );
                        }
                    }
                }
            }
        }
    }
    println!(
        "{cases} cases ({successes} successes): max |1 - fidelity| on successes = {max_deviation:.3e}"
    );
    if disagreements > 0 {
        return Err(Failure::Violation(format!(
            "{disagreements} success verdicts failed state-vector certification"
        )));
    }
    Ok(())
}

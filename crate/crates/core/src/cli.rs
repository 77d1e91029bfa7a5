//! Command-line driver: construct, search, inspect, simulate.
//!
//! Exit codes: 0 success, 2 validation, 3 exhaustion/budget, 4 integrity.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::code::{assemble_code, CssCode};
use crate::decoder::DecoderConfig;
use crate::descriptor::{self, CodeDescriptor};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::margulis::{build_generating_sets, search_code, EtaChoice, PairSelection};
use crate::sim::{csv_preamble, run_sweep, TrialPolicy};
use crate::sl2::enumerate_group;
use crate::tanner;

#[derive(Parser)]
#[command(
    name = "qmargulis",
    version,
    about = "Construct, analyze, and simulate quantum Margulis codes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from explicit parameters and write its descriptor.
    Construct(ConstructArgs),
    /// Randomized search for a high-girth code.
    Search(SearchArgs),
    /// Verify a descriptor and report parameters; optional matrix export.
    Inspect(InspectArgs),
    /// Monte Carlo logical error rate sweep.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Prime modulus of SL(2,p).
    #[arg(long)]
    p: u32,
    /// Left generating set size.
    #[arg(long)]
    size_a: usize,
    /// Right generating set size.
    #[arg(long)]
    size_b: usize,
    /// Margulis parameter: an integer, or "auto" for the smallest feasible.
    #[arg(long, default_value = "auto")]
    eta: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Accept generator sets containing inverse pairs or involutions
    /// (needed for tiny groups where nothing else exists).
    #[arg(long)]
    allow_inverse_collisions: bool,
    /// Descriptor output path (JSON).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    size_a: usize,
    #[arg(long)]
    size_b: usize,
    #[arg(long)]
    target_girth: u32,
    /// Candidate evaluation budget.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Best descriptor output path (JSON).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search log output path (JSON).
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct InspectArgs {
    /// Descriptor path.
    #[arg(long)]
    code: PathBuf,
    /// Which matrix the exports cover.
    #[arg(long, default_value = "hx", value_parser = ["hx", "hz"])]
    matrix: String,
    /// Write the matrix in MacKay alist format.
    #[arg(long)]
    export_alist: Option<PathBuf>,
    /// Write the matrix as 0-based "row col" lines.
    #[arg(long)]
    export_coords: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Descriptor path.
    #[arg(long)]
    code: PathBuf,
    /// Comma-separated ascending physical error rates.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["p_start", "p_end", "points"])]
    p_list: Option<Vec<f64>>,
    #[arg(long, requires_all = ["p_end", "points"])]
    p_start: Option<f64>,
    #[arg(long)]
    p_end: Option<f64>,
    /// Number of evenly spaced points from p-start to p-end.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    min_trials: usize,
    #[arg(long, default_value_t = 100)]
    target_failures: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_trials: usize,
    /// BP iteration cap: an integer, or "n" for the blocklength.
    #[arg(long, default_value = "n")]
    max_iters: String,
    #[arg(long, default_value_t = 10)]
    osd_order: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_eta(text: &str) -> Result<EtaChoice> {
    if text == "auto" {
        return Ok(EtaChoice::Auto);
    }
    let eta: u32 = text
        .parse()
        .map_err(|_| Error::Validation(format!("--eta must be an integer or \"auto\", got {text:?}")))?;
    if eta < 2 {
        return Err(Error::Validation("--eta must be at least 2".into()));
    }
    Ok(EtaChoice::Fixed(eta))
}

fn format_profile(profile: &BTreeMap<usize, usize>) -> String {
    profile
        .iter()
        .map(|(w, c)| format!("{w}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn format_girth(g: Option<u32>) -> String {
    g.map_or("inf".to_string(), |v| v.to_string())
}

/// "n k girth_x girth_z dv-profile dc", one space-separated line.
pub fn summary_line(code: &CssCode) -> String {
    let (_, dv) = tanner::degree_profile(&code.hx);
    format!(
        "{} {} {} {} {} {}",
        code.n,
        code.k,
        format_girth(code.girth_x),
        format_girth(code.girth_z),
        format_profile(&dv),
        code.check_degree()
    )
}

fn write_descriptor(desc: &CodeDescriptor, out: &Option<PathBuf>) -> Result<()> {
    if let Some(path) = out {
        desc.save(path)?;
    }
    Ok(())
}

fn cmd_construct(args: &ConstructArgs, stdout: &mut dyn Write) -> Result<()> {
    let eta = parse_eta(&args.eta)?;
    let spec = build_generating_sets(
        args.p,
        args.size_a,
        args.size_b,
        eta,
        &PairSelection::Seeded(args.seed),
        args.allow_inverse_collisions,
    )?;
    let index = enumerate_group(args.p)?;
    let code = assemble_code(&index, &spec)?;
    let desc = CodeDescriptor::from_code(&code);
    write_descriptor(&desc, &args.out)?;
    writeln!(stdout, "{}", summary_line(&code))?;
    writeln!(stdout, "digest {}", desc.matrix_digest)?;
    Ok(())
}

fn cmd_search(args: &SearchArgs, stdout: &mut dyn Write) -> Result<()> {
    let outcome = search_code(
        args.p,
        args.size_a,
        args.size_b,
        args.target_girth,
        args.budget,
        args.seed,
    )?;
    let desc = CodeDescriptor::from_code(&outcome.best_code);
    write_descriptor(&desc, &args.out)?;
    if let Some(path) = &args.log {
        std::fs::write(path, serde_json::to_string_pretty(&outcome.log)? + "\n")?;
    }
    writeln!(stdout, "{}", summary_line(&outcome.best_code))?;
    writeln!(stdout, "digest {}", desc.matrix_digest)?;
    writeln!(
        stdout,
        "examined {} candidates",
        outcome.log.candidates_examined
    )?;
    if !outcome.reached_target {
        writeln!(stdout, "target girth {} not reached", args.target_girth)?;
        return Err(Error::Exhausted(format!(
            "budget of {} candidates spent below target girth {}",
            args.budget, args.target_girth
        )));
    }
    Ok(())
}

fn cmd_inspect(args: &InspectArgs, stdout: &mut dyn Write) -> Result<()> {
    let desc = CodeDescriptor::load(&args.code)?;
    let code = desc.verify()?;
    writeln!(stdout, "verified")?;
    writeln!(stdout, "{}", summary_line(&code))?;
    writeln!(stdout, "digest {}", desc.matrix_digest)?;
    let matrix: &BitMatrix = if args.matrix == "hz" { &code.hz } else { &code.hx };
    if let Some(path) = &args.export_alist {
        std::fs::write(path, descriptor::to_alist(matrix))?;
    }
    if let Some(path) = &args.export_coords {
        std::fs::write(path, descriptor::to_coords(matrix))?;
    }
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs, stdout: &mut dyn Write) -> Result<()> {
    let desc = CodeDescriptor::load(&args.code)?;
    let code = desc.verify()?;

    let p_list: Vec<f64> = match (&args.p_list, args.p_start, args.p_end, args.points) {
        (Some(list), ..) => list.clone(),
        (None, Some(start), Some(end), Some(points)) => {
            if points < 1 || end < start {
                return Err(Error::Validation(
                    "need points >= 1 and p-end >= p-start".into(),
                ));
            }
            (0..points)
                .map(|i| {
                    if points == 1 {
                        start
                    } else {
                        start + (end - start) * i as f64 / (points - 1) as f64
                    }
                })
                .collect()
        }
        _ => {
            return Err(Error::Validation(
                "provide --p-list or all of --p-start/--p-end/--points".into(),
            ))
        }
    };

    let max_iterations = if args.max_iters == "n" {
        code.n
    } else {
        args.max_iters.parse().map_err(|_| {
            Error::Validation(format!(
                "--max-iters must be an integer or \"n\", got {:?}",
                args.max_iters
            ))
        })?
    };
    let cfg = DecoderConfig {
        max_iterations,
        osd_order: args.osd_order,
        ..DecoderConfig::protocol_default(code.n)
    };
    let policy = TrialPolicy {
        min_trials: args.min_trials,
        target_failures: args.target_failures,
        max_trials: args.max_trials,
    };

    let preamble = csv_preamble(&cfg, &policy, &desc.matrix_digest, args.seed);
    let mut file_writer;
    let writer: &mut dyn Write = match &args.out {
        Some(path) => {
            file_writer = BufWriter::new(File::create(path)?);
            &mut file_writer
        }
        None => stdout,
    };
    writer.write_all(preamble.as_bytes())?;
    run_sweep(
        &code,
        &desc.code_id(),
        &p_list,
        &policy,
        &cfg,
        args.seed,
        args.workers,
        Some(writer),
    )?;
    writer.flush()?;
    Ok(())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Exhausted(_) => 3,
        Error::Integrity(_) | Error::CssCheck(_) | Error::InconsistentSyndrome => 4,
        _ => 2,
    }
}

/// Parse argv, dispatch, and return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match &cli.command {
        Command::Construct(args) => cmd_construct(args, &mut stdout),
        Command::Search(args) => cmd_search(args, &mut stdout),
        Command::Inspect(args) => cmd_inspect(args, &mut stdout),
        Command::Simulate(args) => cmd_simulate(args, &mut stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use mccac::code::{verify_code, verify_definitional};
use mccac::constructions::catalog::{catalog, FIXTURES};
use mccac::constructions::compose::DEFAULT_COMPOSE_BUDGET;
use mccac::constructions::{compose_optimal, family_4_2t};
use mccac::io::{load_file, save_file, CodeFile};
use mccac::search::{certify, max_code, InstanceCap, SearchConfig, SearchStatus};
use mccac::simulator::random_trials_jobs;
use mccac::{bound_for, Code, CodeParams, Error};

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "mccac", version, about = "Multichannel conflict-avoiding codes")]
struct Cli {
    /// Worker threads for search and simulation.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upper bound on the size of a code.
    Bound {
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        channels: usize,
        #[arg(long)]
        length: usize,
        /// At most one packet per slot.
        #[arg(long)]
        restricted: bool,
    },
    /// Build an optimal code by composition or an explicit family.
    Construct {
        #[arg(long)]
        channels: usize,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        out: PathBuf,
        /// Node budget for the backtracking sub-searches.
        #[arg(long, default_value_t = DEFAULT_COMPOSE_BUDGET)]
        budget: u64,
    },
    /// Check a code file; exits 1 and lists conflicts if it is invalid.
    Verify {
        file: PathBuf,
        #[arg(long)]
        restricted: bool,
    },
    /// Exhaustive branch-and-bound search for a largest code.
    Search {
        #[arg(long)]
        channels: usize,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        weight: usize,
        /// Require a proof of optimality; exit 3 if the budget runs out.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        node_budget: Option<u64>,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long)]
        restricted: bool,
        /// Accept the incumbent once it meets the closed-form bound.
        #[arg(long)]
        bound_prune: bool,
        /// Largest M*L to enumerate.
        #[arg(long, default_value_t = InstanceCap::default().max_positions)]
        max_positions: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random collision-channel trials against a code file.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        active: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        restricted: bool,
    },
    /// Write a built-in worked example as a code file.
    Catalog {
        /// One of example1, example2, example3, example4, example6.
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Validation(_) => EXIT_INVALID,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(cli: Cli) -> mccac::Result<u8> {
    match cli.command {
        Command::Bound {
            weight,
            channels,
            length,
            restricted,
        } => bound(weight, channels, length, restricted),
        Command::Construct {
            channels,
            length,
            weight,
            out,
            budget,
        } => construct(channels, length, weight, &out, budget),
        Command::Verify { file, restricted } => verify(&file, restricted),
        Command::Search {
            channels,
            length,
            weight,
            exact,
            node_budget,
            time_limit,
            restricted,
            bound_prune,
            max_positions,
            out,
        } => {
            let params = CodeParams::new(channels, length, weight)?;
            let config = SearchConfig {
                restricted,
                node_budget,
                time_limit: time_limit.map(Duration::from_secs_f64),
                jobs: cli.jobs,
                bound_prune,
                seed: None,
                cap: InstanceCap {
                    max_positions,
                    ..InstanceCap::default()
                },
            };
            search(params, config, exact, &out)
        }
        Command::Simulate {
            file,
            active,
            trials,
            seed,
            restricted,
        } => simulate(&file, active, trials, seed, restricted, cli.jobs),
        Command::Catalog { name, out } => {
            let code = catalog(&name)
                .map_err(|_| Error::UnknownFixture(format!("{name} (known: {})", FIXTURES.join(", "))))?
                .to_code()?;
            save_file(&CodeFile::from_code(&code, false, format!("catalog {name}")), &out)?;
            println!("codewords: {}", code.len());
            println!("params: {}", code.params());
            println!("out: {}", out.display());
            Ok(0)
        }
    }
}

fn bound(weight: usize, channels: usize, length: usize, restricted: bool) -> mccac::Result<u8> {
    let b = bound_for(channels, length, weight, restricted)?;
    println!("{}", b.value);
    println!("case: {}", b.formula_case);
    if let Some(alt) = b.example_evaluated {
        if alt != b.value {
            println!("example-evaluated: {alt} (constant -6 instead of 0; differs from the theorem value {})", b.value);
        }
    }
    Ok(0)
}

/// Both verifiers must accept; anything else is an internal failure.
fn fail_closed(code: &Code) -> mccac::Result<()> {
    if verify_code(code, false).valid && verify_definitional(code, false).valid {
        Ok(())
    } else {
        Err(Error::Internal("constructed code failed verification".into()))
    }
}

fn construct(channels: usize, length: usize, weight: usize, out: &Path, budget: u64) -> mccac::Result<u8> {
    let (code, provenance, lines) = match compose_optimal(channels, length, weight, budget) {
        Ok(comp) => {
            let c = &comp.certificate;
            let lines = vec![
                format!("case: ({})", c.case),
                format!("cac-generators: {:?}", c.cac_generators),
                format!("exceptional: {:?}", c.exceptional),
                format!("gbrd: {}", c.gbrd_source),
                format!("bound: {}", c.bound),
                format!("meets-bound: {}", c.meets_bound),
            ];
            let prov = format!("compose_optimal M={channels} L={length} w={weight}");
            (comp.code, prov, lines)
        }
        Err(compose_err) if channels == 4 && weight == 3 && length.is_multiple_of(2) => {
            let t = (length / 2) as u64;
            match family_4_2t(t) {
                Ok(code) => {
                    let b = bound_for(4, length, 3, false)?;
                    let mut lines = vec![format!("family: 4 x 2t with t = {t}"), format!("bound: {b}")];
                    if let Some(alt) = b.example_evaluated {
                        lines.push(format!("example-evaluated bound: {alt}"));
                    }
                    (code, format!("family_4_2t t={t}"), lines)
                }
                Err(family_err) => {
                    return Err(Error::ConstructionUnavailable(format!(
                        "composition: {compose_err}; family: {family_err}"
                    )))
                }
            }
        }
        Err(e) => return Err(e),
    };
    fail_closed(&code)?;
    save_file(&CodeFile::from_code(&code, false, provenance), out)?;
    println!("codewords: {}", code.len());
    println!("params: {}", code.params());
    for l in lines {
        println!("{l}");
    }
    println!("verified: true");
    Ok(0)
}

fn verify(file: &Path, restricted: bool) -> mccac::Result<u8> {
    let cf = load_file(file)?;
    let restricted = restricted || cf.restricted;
    let code = cf.to_code()?;
    let a = verify_code(&code, restricted);
    let b = verify_definitional(&code, restricted);
    if a.valid != b.valid {
        return Err(Error::Internal("the two verifiers disagree".into()));
    }
    println!("params: {}", code.params());
    println!("codewords: {}", code.len());
    println!("restricted: {restricted}");
    if a.valid {
        println!("valid: true");
        return Ok(0);
    }
    println!("valid: false");
    for k in &a.weight_violations {
        println!("weight: pattern {k} does not have weight {}", code.params().weight);
    }
    for k in &a.column_violations {
        println!("restricted: pattern {k} sends two packets in one slot");
    }
    for c in &a.conflicts {
        println!(
            "conflict: patterns {} and {} share difference {} in cell ({}, {})",
            c.first, c.second, c.difference, c.channels.0, c.channels.1
        );
    }
    Ok(EXIT_INVALID)
}

/// Composition output used as the starting incumbent when available.
fn construction_seed(params: CodeParams, restricted: bool) -> Option<Code> {
    if restricted {
        return None;
    }
    compose_optimal(params.channels, params.length, params.weight, 1_000_000)
        .ok()
        .map(|c| c.code)
}

fn search(params: CodeParams, mut config: SearchConfig, exact: bool, out: &Path) -> mccac::Result<u8> {
    config.seed = construction_seed(params, config.restricted);
    let seeded = config.seed.is_some();
    let outcome = max_code(params, &config)?;
    let report = certify(&outcome)?;
    save_file(
        &CodeFile::from_code(&outcome.best_code, config.restricted, format!("max_code {params} status={}", outcome.status)),
        out,
    )?;
    println!("size: {}", outcome.size);
    println!("status: {}", outcome.status);
    println!("nodes: {}", outcome.nodes_explored);
    println!("seeded-from-construction: {seeded}");
    println!("closed-by-bound: {}", outcome.closed_by_bound);
    println!("certificate: {report}");
    eprintln!("elapsed: {:.3}s", outcome.elapsed.as_secs_f64());
    if exact && outcome.status == SearchStatus::LowerBoundOnly {
        eprintln!("budget exhausted before optimality was proven");
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}

fn simulate(file: &Path, active: usize, trials: usize, seed: u64, restricted: bool, jobs: usize) -> mccac::Result<u8> {
    let cf = load_file(file)?;
    let restricted = restricted || cf.restricted;
    let code = cf.to_code()?;
    let summary = match random_trials_jobs(&code, trials, seed, active, restricted, jobs) {
        Ok(s) => s,
        Err(Error::GuaranteeNotClaimed(msg)) => {
            println!("guarantee-not-claimed: {msg}");
            return Ok(0);
        }
        Err(Error::Validation(msg)) => {
            println!("invalid code: {msg}");
            return Ok(EXIT_INVALID);
        }
        Err(e) => return Err(e),
    };
    println!("seed: {}", summary.seed);
    println!("trials: {}", summary.trials);
    println!("active: {}", summary.active_count);
    println!("horizon: {}", summary.horizon);
    println!("pass: {}", summary.passes);
    println!("fail: {}", summary.failures);
    match summary.worst_delay {
        Some(d) => println!("worst-delay: {d}"),
        None => println!("worst-delay: none"),
    }
    println!("max-pairwise-clashes: {}", summary.max_pairwise_clashes);
    if !summary.failing_trials.is_empty() {
        println!("failing-trials: {:?}", summary.failing_trials);
        return Ok(EXIT_INVALID);
    }
    Ok(0)
}

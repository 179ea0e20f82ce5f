//! `pcube`: exact measures, spectra, hitting sets and theorem checks for set
//! families on the p-biased Boolean cube.
//!
//! Exit status: 0 when every asserted check holds or is vacuous, 1 when an
//! asserted check fails on a non-degenerate instance (a witness file is
//! written), 2 on usage or input errors (nothing is printed to stdout).

mod commands;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pcube::{SetFamily, WeightVector};

use output::{Format, Output};

/// Environment variable read when `--seed` is not given.
pub const SEED_ENV: &str = "PCUBE_SEED";

#[derive(Debug, Parser)]
#[command(name = "pcube", version, about = "Exact analysis of set families on the p-biased Boolean cube")]
struct Cli {
    /// Output style: aligned tables or one JSON object per line.
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,

    /// Worker threads for enumeration, sweeps and search; never changes results.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,

    /// Seed for sampling, random weight corpora and search.
    #[arg(long, env = SEED_ENV, default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FamilyArg {
    /// Family file (`d=<n>` header, one bit string per member); `-` reads stdin.
    family: PathBuf,
}

#[derive(Debug, Args)]
struct WeightArg {
    /// Comma-separated biases (`a/b` or decimals), or a file holding that line.
    #[arg(long, short)]
    weights: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Union-closed and simply rooted predicates.
    Check(FamilyArg),
    /// Exact measure of the family and of each F_i.
    Measure {
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        weights: WeightArg,
    },
    /// Fourier kernels, squared coefficients and level weights of the indicator.
    Spectrum {
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        weights: WeightArg,
    },
    /// Influences of the indicator and the residuals of the influence identities.
    Influence {
        #[command(flatten)]
        family: FamilyArg,
        #[command(flatten)]
        weights: WeightArg,
    },
    /// Minimal hitting sets with certificates and size margins.
    Hitting {
        #[command(flatten)]
        family: FamilyArg,
        /// Also report the weighted size bound.
        #[arg(long, short)]
        weights: Option<String>,
    },
    /// Check one family, or every family at a small dimension.
    Verify(VerifyArgs),
    /// Count (and optionally print) every family passing a filter.
    Enumerate {
        /// Dimension, at most 4.
        #[arg(long = "d")]
        dim: usize,
        /// Comma-separated: union-closed, simply-rooted, contains-empty, has-nonempty-member, all.
        #[arg(long, default_value = "union-closed")]
        filter: String,
        /// Print each family in file format, blocks separated by blank lines.
        #[arg(long)]
        emit: bool,
    },
    /// Hill-climb for a union-closed family with small max_i mu(F_i)/mu(F).
    Search {
        #[arg(long = "d")]
        dim: usize,
        #[command(flatten)]
        weights: WeightArg,
        /// Proposed moves per restart.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 4)]
        restarts: u64,
        /// Only accept families with mu(F) >= q_max.
        #[arg(long)]
        constrained: bool,
        /// Whether candidates contain the empty set.
        #[arg(long, value_enum, default_value = "free")]
        empty_set: EmptyArg,
    },
    /// Draw points from the product measure, or estimate a family's measure.
    Sample {
        #[command(flatten)]
        weights: WeightArg,
        /// Estimate this family's measure instead of printing points.
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        draws: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EmptyArg {
    Always,
    Never,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    KarpasUniform,
    KarpasWeighted,
    SimplyRooted,
    KnillUniform,
    KnillWeighted,
    HittingSize,
    HittingSizeWeighted,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Family file; omit with --exhaustive-d.
    family: Option<PathBuf>,
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    /// Weight vector; repeat for several in an exhaustive run.
    #[arg(long, short)]
    weights: Vec<String>,
    /// Check every qualifying family at this dimension (at most 4).
    #[arg(long, conflicts_with = "family")]
    exhaustive_d: Option<usize>,
    /// Random weight vectors added to an exhaustive run, drawn from --seed.
    #[arg(long, default_value_t = 0)]
    random_weights: usize,
    /// Where witness files for failed asserted checks are written.
    #[arg(long, default_value = "witnesses")]
    dump_dir: PathBuf,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_family(path: &Path) -> Result<SetFamily> {
    let text = read_input(path)?;
    SetFamily::parse(&text).with_context(|| format!("parsing family {}", path.display()))
}

/// A literal weight line, else the first non-blank line of a file.
fn load_weights(arg: &str) -> Result<WeightVector> {
    match WeightVector::parse(arg) {
        Ok(w) => Ok(w),
        Err(literal_err) => {
            let path = Path::new(arg);
            if !path.is_file() {
                bail!("weights `{arg}`: {literal_err}");
            }
            let text = read_input(path)?;
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .with_context(|| format!("weight file {} is empty", path.display()))?;
            WeightVector::parse(line).with_context(|| format!("parsing weights in {}", path.display()))
        }
    }
}

fn check_weight_dim(w: &WeightVector, family: &SetFamily) -> Result<()> {
    if w.dim() != family.dim() {
        bail!(
            "weight vector has {} coordinates but the family has dimension {}",
            w.dim(),
            family.dim()
        );
    }
    Ok(())
}

fn load_matched_weights(arg: &str, family: &SetFamily) -> Result<WeightVector> {
    let w = load_weights(arg)?;
    check_weight_dim(&w, family)?;
    Ok(w)
}

fn run(cli: Cli, out: &mut Output) -> Result<u8> {
    match cli.command {
        Command::Check(f) => commands::check(&load_family(&f.family)?, out),
        Command::Measure { family, weights } => {
            let f = load_family(&family.family)?;
            commands::measure(&f, &load_matched_weights(&weights.weights, &f)?, out)
        }
        Command::Spectrum { family, weights } => {
            let f = load_family(&family.family)?;
            commands::spectrum(&f, &load_matched_weights(&weights.weights, &f)?, out)
        }
        Command::Influence { family, weights } => {
            let f = load_family(&family.family)?;
            commands::influence(&f, &load_matched_weights(&weights.weights, &f)?, out)
        }
        Command::Hitting { family, weights } => {
            let f = load_family(&family.family)?;
            let w = weights.map(|w| load_matched_weights(&w, &f)).transpose()?;
            commands::hitting(&f, w.as_ref(), out)
        }
        Command::Verify(args) => {
            let mut weights = Vec::new();
            for w in &args.weights {
                weights.push(load_weights(w)?);
            }
            match (args.family, args.exhaustive_d) {
                (Some(path), None) => {
                    let f = load_family(&path)?;
                    let w = match weights.as_slice() {
                        [] => None,
                        [w] => {
                            check_weight_dim(w, &f)?;
                            Some(w)
                        }
                        _ => bail!("a single-family check takes at most one weight vector"),
                    };
                    commands::verify_family(&f, w, args.theorem, &args.dump_dir, out)
                }
                (None, Some(dim)) => commands::verify_exhaustive(
                    dim,
                    args.theorem,
                    weights,
                    args.random_weights,
                    cli.seed,
                    cli.jobs,
                    &args.dump_dir,
                    out,
                ),
                _ => bail!("give a family file or --exhaustive-d"),
            }
        }
        Command::Enumerate { dim, filter, emit } => {
            commands::enumerate(dim, filter.parse()?, emit, cli.jobs, out)
        }
        Command::Search {
            dim,
            weights,
            budget,
            restarts,
            constrained,
            empty_set,
        } => {
            let w = load_weights(&weights.weights)?;
            let config = pcube::explore::SearchConfig {
                budget,
                restarts,
                constrained,
                empty_set: match empty_set {
                    EmptyArg::Always => pcube::explore::EmptySetPolicy::Always,
                    EmptyArg::Never => pcube::explore::EmptySetPolicy::Never,
                    EmptyArg::Free => pcube::explore::EmptySetPolicy::Free,
                },
            };
            commands::search(dim, &w, &config, cli.seed, cli.jobs, out)
        }
        Command::Sample {
            weights,
            family,
            draws,
        } => {
            let w = load_weights(&weights.weights)?;
            let f = match family {
                Some(path) => {
                    let f = load_family(&path)?;
                    check_weight_dim(&w, &f)?;
                    Some(f)
                }
                None => None,
            };
            commands::sample(&w, f.as_ref(), draws, cli.seed, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::new(cli.format);
    match run(cli, &mut out) {
        Ok(code) => {
            print!("{}", out.into_string());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

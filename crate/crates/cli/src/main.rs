//! `domprod`: domination numbers of direct products of complete
//! multipartite graphs and unitary Cayley graphs.

mod cache;
mod output;
mod record;
mod reproduce;
mod scan;
mod solve;

use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use domprod::numth::jacobsthal_run;
use domprod::theory::{self, ConstructionResult};
use domprod::{Budget, Descriptor, Quantity, SolveOptions};

use cache::Cache;
use output::{emit, Format};

#[derive(Parser)]
#[command(name = "domprod", version, about = "Domination numbers of multipartite products and unitary Cayley graphs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Search node limit.
    #[arg(long, default_value_t = 10_000_000)]
    nodes: u64,
    /// Wall-clock limit in seconds; 0 disables it.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    /// Return the lexicographically smallest optimal witness.
    #[arg(long)]
    deterministic: bool,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl BudgetArgs {
    fn options(&self) -> SolveOptions {
        let time_limit = (self.time_limit > 0.0).then(|| Duration::from_secs_f64(self.time_limit));
        SolveOptions {
            budget: Budget { max_nodes: self.nodes, time_limit },
            deterministic: self.deterministic,
            threads: self.threads,
            clique_partition: None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Gamma,
    #[value(alias = "gamma-total")]
    Gammat,
    Upper,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Quantity {
        match q {
            QuantityArg::Gamma => Quantity::Gamma,
            QuantityArg::Gammat => Quantity::GammaTotal,
            QuantityArg::Upper => Quantity::Upper,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact γ, γ_t or Γ by branch and bound.
    Solve {
        quantity: QuantityArg,
        descriptor: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Proven bounds and the rules behind them.
    Bounds {
        descriptor: String,
        /// Limit to one quantity.
        #[arg(long, value_enum)]
        quantity: Option<QuantityArg>,
    },
    /// Build and check an explicit vertex set.
    Construct {
        name: Construction,
        descriptor: String,
        /// Extra diagonal vertices for `diagonal`.
        #[arg(long, default_value_t = 0)]
        m: u64,
    },
    /// Certificates that domination falls below Jacobsthal's function.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Exact Γ next to |V|/b_1.
    Conjecture {
        descriptor: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Jacobsthal's function with its longest run of non-coprime residues.
    Jacobsthal {
        n: u64,
        /// Report every value from `n` to this bound.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Compare solver values against closed forms; CSV on stdout.
    Reproduce {
        suite: reproduce::Suite,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search a range for members of M or Mt.
    Scan {
        target: scan::Target,
        #[arg(long, default_value_t = 2)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        max_omega: Option<usize>,
        /// Also print non-members.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Consecutive,
    Diagonal,
    DiagonalPlusTwo,
    CubeCorner,
    PartiteSlice,
}

#[derive(Subcommand)]
enum WitnessKind {
    /// `γ_t(X_n) < g(n)` with `ω(n) ≥ j`.
    #[command(alias = "thm6")]
    TotalGap {
        #[arg(long)]
        j: u64,
    },
    /// A run of non-coprime residues longer than `γ(X_n)`.
    #[command(alias = "prop1")]
    JacobsthalGap {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        p1: u64,
        #[arg(long)]
        p2: u64,
    },
}

/// Exit status for a failure: 2 for bad input, 3 for resource caps, 1
/// otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    use domprod::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::Parse { .. } | E::InvalidArgument(_) | E::Precondition(_) | E::IsolatedVertex(_)) => 2,
        Some(E::CapExceeded { .. } | E::Overflow(_) | E::OracleCap { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn parse(descriptor: &str) -> Result<Descriptor> {
    Ok(Descriptor::parse(descriptor)?)
}

#[derive(Serialize)]
struct ConstructionRecord<'a> {
    construction: &'a str,
    descriptor: String,
    size: usize,
    witness: Vec<usize>,
    #[serde(flatten)]
    result: &'a ConstructionResult,
}

fn run(cli: &Cli) -> Result<u8> {
    let cache = if cli.no_cache { None } else { Cache::from_env() };
    let fmt = cli.format;
    match &cli.command {
        Command::Solve { quantity, descriptor, budget } => {
            let d = parse(descriptor)?;
            let record = solve::solve_cached(&d, (*quantity).into(), &budget.options(), cache.as_ref())?;
            emit(fmt, &record)?;
        }
        Command::Bounds { descriptor, quantity } => {
            let d = parse(descriptor)?;
            let quantities = match quantity {
                Some(q) => vec![(*q).into()],
                None => vec![Quantity::Gamma, Quantity::GammaTotal, Quantity::Upper],
            };
            for q in quantities {
                let report = solve::bounds_for(&d, q)?;
                let witness = report.witness.as_ref().map(|w| w.to_vec());
                let mut value = serde_json::to_value(&report)?;
                value["descriptor"] = json!(d.canonical_string());
                if let Some(w) = witness {
                    value["witness"] = json!(w);
                }
                emit(fmt, &value)?;
            }
        }
        Command::Construct { name, descriptor, m } => {
            let d = parse(descriptor)?;
            let result = match (name, &d) {
                (Construction::Consecutive, Descriptor::UnitaryCayley(n)) => theory::consecutive_residue_set(*n)?,
                (Construction::Consecutive, _) => bail!(domprod::Error::InvalidArgument(
                    "consecutive needs a ucg:<n> descriptor".into()
                )),
                (_, Descriptor::UnitaryCayley(_)) => bail!(domprod::Error::InvalidArgument(
                    "this construction needs a product descriptor".into()
                )),
                (Construction::Diagonal, Descriptor::Product(s)) => theory::diagonal_set(&s.canonical(), *m)?,
                (Construction::DiagonalPlusTwo, Descriptor::Product(s)) => theory::diagonal_plus_two_set(&s.canonical())?,
                (Construction::CubeCorner, Descriptor::Product(s)) => theory::cube_corner_set(&s.canonical())?,
                (Construction::PartiteSlice, Descriptor::Product(s)) => theory::partite_slice_set(&s.canonical())?,
            };
            let name = name.to_possible_value().expect("no skipped variants");
            let record = ConstructionRecord {
                construction: name.get_name(),
                descriptor: d.canonical_string(),
                size: result.size(),
                witness: result.vertex_set.to_vec(),
                result: &result,
            };
            emit(fmt, &record)?;
        }
        Command::Witness { kind } => {
            let verified = match kind {
                WitnessKind::TotalGap { j } => {
                    let w = theory::total_gap_witness(*j)?;
                    emit(fmt, &w)?;
                    w.run_verified && w.total_dominating
                }
                WitnessKind::JacobsthalGap { family, p1, p2 } => {
                    let c = theory::gap_certificate(*family, *p1, *p2)?;
                    emit(fmt, &c)?;
                    c.run_verified
                }
            };
            if !verified {
                eprintln!("certificate failed verification");
                return Ok(1);
            }
        }
        Command::Conjecture { descriptor, budget } => {
            let d = parse(descriptor)?;
            let spec = d.product_spec()?;
            let check = theory::conjecture_check(&spec, &budget.options())?;
            let mut value = serde_json::to_value(&check)?;
            value["descriptor"] = json!(Descriptor::Product(spec.clone()).canonical_string());
            value["witness"] = json!(check.exact.witness.to_vec());
            value["nodes"] = json!(check.exact.stats.nodes);
            value["packing_violations"] = json!(check.exact.stats.packing_violations);
            emit(fmt, &value)?;
        }
        Command::Jacobsthal { n, to } => {
            if *n == 0 {
                bail!(domprod::Error::InvalidArgument("n must be positive".into()));
            }
            for k in *n..=to.unwrap_or(*n).max(*n) {
                let run = jacobsthal_run(k);
                emit(fmt, &json!({"n": k, "value": run.value, "run_start": run.start, "run_length": run.length}))?;
            }
        }
        Command::Reproduce { suite, budget } => {
            let rows = reproduce::run(*suite, &budget.options())?;
            reproduce::write_csv(&rows)?;
            let bad: Vec<&str> = rows.iter().filter(|r| !r.matches()).map(|r| r.descriptor.as_str()).collect();
            if !bad.is_empty() {
                eprintln!("{} mismatches: {}", bad.len(), bad.join(" "));
                return Ok(1);
            }
        }
        Command::Scan { target, from, to, max_omega, all, budget } => {
            let entries = scan::scan(*from, *to, *max_omega, *target, &budget.options(), cache.as_ref())?;
            let mut counts = [0usize; 3];
            for e in &entries {
                let slot = match e.outcome {
                    scan::Outcome::Member => 0,
                    scan::Outcome::NonMember => 1,
                    scan::Outcome::Undecided => 2,
                };
                counts[slot] += 1;
                if slot != 1 || *all {
                    emit(fmt, e)?;
                }
            }
            eprintln!("{} members, {} non-members, {} undecided", counts[0], counts[1], counts[2]);
        }
    }
    Ok(0)
}

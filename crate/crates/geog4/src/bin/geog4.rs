//! Command-line front end: stable text interfaces over the library modules.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 domain or
//! configuration error, 4 regression mismatch, 5 internal inconsistency.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use geog4::classes::{normal_form_5, normal_form_6, pairing_gram};
use geog4::constructions::{evaluate, named_recipe, Recipe};
use geog4::exterior::KVector;
use geog4::forms::{FormInvariants, SymIntForm};
use geog4::geography::{assemble, load_profile};
use geog4::search::{certificate, run_search, Family, SearchSpec};
use geog4::tables::{render, run_tables};
use geog4::{Error, Result};

#[derive(Parser)]
#[command(name = "geog4", version, about = "Exact computations for the geography of 4-manifolds with free abelian fundamental group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gram matrix of the pairing induced by a degree-(n-4) class.
    Pairing {
        /// Path to a class in the `n=.. k=..` text format.
        omega: PathBuf,
    },
    /// Print the invariant row (TSV) of a symmetric Gram matrix.
    Invariants {
        /// Path to a Gram matrix in the `dim=..` text format.
        gram: PathBuf,
    },
    /// Print the congruence normal form of a degree-2 class on Z^5 or Z^6
    /// together with a basis-change witness.
    NormalForm {
        /// Path to a class in the `n=.. k=..` text format.
        omega: PathBuf,
    },
    /// Assemble and print the q-table (TSV) for a group profile.
    Geography {
        /// Builtin profile tag (e.g. `zn=6`, `z6_abc=1,1,1`) or a profile file.
        #[arg(long)]
        profile: String,
        /// Half-width of the sigma window.
        #[arg(long, default_value_t = 16)]
        window: i64,
    },
    /// Evaluate a surgery recipe and print the resulting block.
    Construct {
        /// Path to a recipe file, or `builtin:<name>` for a named recipe.
        recipe: String,
    },
    /// Search bounded degree-4 classes on Z^8 for unimodular pairings.
    Search(SearchArgs),
    /// Run the built-in regression tables; nonzero exit on any mismatch.
    Tables,
}

#[derive(Args)]
struct SearchArgs {
    /// Candidate family.
    #[arg(long, default_value = "decomposable-sums")]
    family: String,
    /// Coefficient bound B: coefficients range over [-B, B].
    #[arg(long, default_value_t = 1)]
    coeff_bound: i64,
    /// Maximum number of nonzero coefficients.
    #[arg(long, default_value_t = 7)]
    support_bound: usize,
    /// RNG seed (random family).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trial count (random family).
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Evaluation budget; the search refuses up front when the estimate
    /// exceeds it. The GEOG4_BUDGET environment variable overrides it.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Restart count (decomposable-sums family).
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Report every hit, not one per invariant signature.
    #[arg(long)]
    no_dedupe: bool,
    /// Append certificates of signature +-8 hits to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("geog4: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Pairing { omega } => {
            let w = KVector::from_text(&std::fs::read_to_string(omega)?)?;
            let pf = pairing_gram(&w)?;
            print!("{}", pf.form.to_text());
        }
        Command::Invariants { gram } => {
            let form = SymIntForm::from_text(&std::fs::read_to_string(gram)?)?;
            println!("{}", FormInvariants::tsv_header());
            println!("{}", form.invariants().to_tsv_row());
        }
        Command::NormalForm { omega } => {
            let w = KVector::from_text(&std::fs::read_to_string(omega)?)?;
            match w.n {
                6 => {
                    let nf = normal_form_6(&w)?;
                    println!("{} {} {}", nf.a, nf.b, nf.c);
                    print!("{}", nf.witness.matrix.to_text());
                }
                5 => {
                    let nf = normal_form_5(&w)?;
                    println!("{}", nf.k);
                    print!("{}", nf.witness.matrix.to_text());
                }
                n => {
                    return Err(Error::Domain(format!(
                        "normal form implemented for rank 5 and 6 classes, got rank {n}"
                    )))
                }
            }
        }
        Command::Geography { profile, window } => {
            let p = load_profile(&profile)?;
            let qf = assemble(&p, window)?;
            print!("{}", qf.to_tsv());
        }
        Command::Construct { recipe } => {
            let r = match recipe.strip_prefix("builtin:") {
                Some(name) => named_recipe(name)?,
                None => Recipe::from_text(&std::fs::read_to_string(recipe)?)?,
            };
            let b = evaluate(&r)?;
            println!(
                "name={} beta1={} beta2={} chi={} sigma={}",
                b.name,
                b.beta1,
                b.beta2(),
                b.chi,
                b.sigma
            );
        }
        Command::Search(args) => {
            let family = match args.family.as_str() {
                "full-grid" => Family::FullGrid,
                "decomposable-sums" => Family::DecomposableSums,
                "random" => Family::Random { seed: args.seed, trials: args.trials },
                other => return Err(Error::Config(format!("unknown family `{other}`"))),
            };
            let budget = match std::env::var("GEOG4_BUDGET") {
                Ok(v) => v.parse().map_err(|_| {
                    Error::Config(format!("GEOG4_BUDGET must be an integer, got `{v}`"))
                })?,
                Err(_) => args.budget,
            };
            let spec = SearchSpec {
                family,
                coefficient_bound: args.coeff_bound,
                support_bound: args.support_bound,
                dedupe: !args.no_dedupe,
                budget,
                restarts: args.restarts,
            };
            let out = run_search(&spec, args.out.as_deref())?;
            println!("evaluated\t{}", out.evaluated);
            println!("hits\t{}", out.hits.len());
            for (sigma, count) in &out.hits_by_signature {
                println!("signature\t{sigma}\t{count}");
            }
            for hit in &out.hits {
                print!("{}", certificate(hit));
            }
        }
        Command::Tables => {
            let rows = run_tables();
            print!("{}", render(&rows));
            let failed = rows.iter().filter(|r| !r.ok()).count();
            if failed > 0 {
                return Err(Error::Regression(format!("{failed} table rows failed")));
            }
        }
    }
    Ok(())
}

//! Command-line surface for the ordered-card shuffle library.
//!
//! Every subcommand emits either a human-readable text document (default) or
//! a machine-readable JSON document (`--format json`) with a `schema` field.
//! Exit codes: 0 success, 1 usage error, 2 precondition or validation
//! failure, 3 enumeration budget exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ordered_shuffle::{
    algorithm_down, algorithm_up, base_k_weight, brute_force_fixed_decks,
    brute_force_periodic_decks, build_fixed_poset, build_periodic_poset, build_shuffling_poset,
    conjecture_scan, construct_period_stack, count_fixed, count_periodic, cycle_length_stats,
    dot, enumerate_fixed, enumerate_periodic, find_orbit, generalized_weight, max_settle,
    possible_periods, shuffle_once, symmetric_weight, verify_cycle_theorem, Deck, Error,
    ShuffleParams, ShufflingPoset, WeightFunction, DEFAULT_ENUMERATION_BUDGET,
};

use ordered_shuffle_cli::output::*;

#[derive(Parser)]
#[command(
    name = "ordered-shuffle",
    version,
    about = "Shuffle decks of ordered cards and analyze the fixed and periodic stacks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output document to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Enumeration budget (max j^N states) for brute-force subcommands
    #[arg(long, global = true, env = "ORDERED_SHUFFLE_BUDGET")]
    budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightMethod {
    Up,
    Down,
    Basek,
    General,
    Symmetric,
}

impl WeightMethod {
    fn name(self) -> &'static str {
        match self {
            WeightMethod::Up => "up",
            WeightMethod::Down => "down",
            WeightMethod::Basek => "basek",
            WeightMethod::General => "general",
            WeightMethod::Symmetric => "symmetric",
        }
    }

    fn build(self, params: &ShuffleParams) -> Result<WeightFunction, Error> {
        match self {
            WeightMethod::Up => Ok(algorithm_up(params)),
            WeightMethod::Down => Ok(algorithm_down(params)),
            WeightMethod::Basek => base_k_weight(params),
            WeightMethod::General => generalized_weight(params),
            WeightMethod::Symmetric => Ok(symmetric_weight(params)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetKind {
    Shuffling,
    Fixed,
    Periodic,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one shuffle to a deck
    Shuffle {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long)]
        deck: String,
    },
    /// Follow a deck until it repeats, reporting settle and period
    Orbit {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long)]
        deck: String,
    },
    /// Generate a shuffling weight function
    Weight {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
    },
    /// Check a weight table against the two weight-function conditions
    ValidateWeight {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        /// Comma-separated weight values, one per subscript
        #[arg(long)]
        values: String,
    },
    /// Build a poset and print a summary or its DOT rendering
    Poset {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long, value_enum)]
        kind: PosetKind,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
        /// Emit Graphviz DOT instead of a summary document
        #[arg(long)]
        dot: bool,
    },
    /// Count fixed stacks without enumerating them
    CountFixed {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        /// Alphabet size
        #[arg(long = "j", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
    },
    /// List every fixed stack in lexicographic order
    EnumFixed {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "j", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
    },
    /// List every periodic stack in lexicographic order
    EnumPeriodic {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "j", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
    },
    /// Possible periods: divisors of the cycle-length lcm
    Periods {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
    },
    /// Construct a verified deck with settle 0 and period exactly d
    MakePeriod {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "d")]
        d: u64,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
    },
    /// Check the cycle-length theorem for a coprime instance
    VerifyTheorem {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
    },
    /// Cycle-length histogram, lcm, and maximum for the shuffling poset
    CycleStats {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long, value_enum, default_value_t = WeightMethod::Up)]
        method: WeightMethod,
    },
    /// Scan generated weight functions for symmetry counterexamples
    ConjectureScan {
        #[arg(long)]
        max_n: usize,
    },
    /// Brute-force the maximum settle count over all decks
    MaxSettle {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "j", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
    },
    /// Brute-force the fixed or periodic decks (oracle paths)
    BruteForce {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "j", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
        /// Which set to enumerate
        #[arg(long, value_enum)]
        which: BruteKind,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BruteKind {
    Fixed,
    Periodic,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::StackCountTooSmall { .. }
        | Error::EmptyDeck
        | Error::StackCountDoesNotDivide { .. }
        | Error::DeckLengthMismatch { .. }
        | Error::DeckParse { .. } => 1,
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/version through this path too
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let out_path = cli.out.clone();
    match run(cli) {
        Ok((document, code)) => match emit(&document, format, out_path.as_deref()) {
            Ok(()) => ExitCode::from(code),
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(1)
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn emit(document: &Document, format: Format, out: Option<&std::path::Path>) -> std::io::Result<()> {
    let rendered = match format {
        Format::Text => document.text.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&document.json).expect("serializable");
            s.push('\n');
            s
        }
    };
    match out {
        Some(path) => std::fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    }
}

fn budget_of(budget: Option<u64>) -> u64 {
    budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET)
}

/// Refuses enumerations whose output would exceed the state budget.
fn guard_enumeration(count: &num_bigint::BigUint, budget: u64) -> Result<(), Error> {
    if count > &num_bigint::BigUint::from(budget) {
        let states = u128::try_from(count).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { states, budget });
    }
    Ok(())
}

fn poset_for(n: usize, k: usize, method: WeightMethod) -> Result<ShufflingPoset, Error> {
    let params = ShuffleParams::new(n, k)?;
    let wf = method.build(&params)?;
    Ok(build_shuffling_poset(&wf))
}

/// Success documents carry exit code 0; diagnostic documents (an invalid
/// weight table, a failed theorem report) still render but exit 2.
fn run(cli: Cli) -> Result<(Document, u8), Error> {
    let budget = budget_of(cli.budget);
    match cli.command {
        Command::Shuffle { n, k, deck } => {
            let params = ShuffleParams::new(n, k)?;
            let deck: Deck = deck.parse()?;
            let result = shuffle_once(&deck, &params)?;
            Ok((shuffle_document(&params, &deck, &result), 0))
        }
        Command::Orbit { n, k, deck } => {
            let params = ShuffleParams::new(n, k)?;
            let deck: Deck = deck.parse()?;
            let orbit = find_orbit(&deck, &params)?;
            Ok((orbit_document(&params, &deck, &orbit), 0))
        }
        Command::Weight { n, k, method } => {
            let params = ShuffleParams::new(n, k)?;
            let wf = method.build(&params)?;
            Ok((weight_document(&params, method.name(), &wf), 0))
        }
        Command::ValidateWeight { n, k, values } => {
            let params = ShuffleParams::new(n, k)?;
            let values = parse_values(&values)?;
            match WeightFunction::validate(values, params) {
                Ok(wf) => Ok((validate_document(&params, &wf), 0)),
                Err(err @ Error::InvalidWeight { .. }) => {
                    Ok((invalid_weight_document(&params, &err.to_string()), 2))
                }
                Err(other) => Err(other),
            }
        }
        Command::Poset {
            n,
            k,
            kind,
            method,
            dot: as_dot,
        } => {
            let poset = poset_for(n, k, method)?;
            let doc = match kind {
                PosetKind::Shuffling => {
                    if as_dot {
                        raw_document(dot::shuffling_poset_dot(&poset))
                    } else {
                        shuffling_poset_document(&poset, method.name())
                    }
                }
                PosetKind::Fixed => {
                    let fp = build_fixed_poset(&poset);
                    if as_dot {
                        raw_document(dot::fixed_poset_dot(&fp))
                    } else {
                        fixed_poset_document(&fp, method.name())
                    }
                }
                PosetKind::Periodic => {
                    let pp = build_periodic_poset(&poset);
                    if as_dot {
                        raw_document(dot::periodic_poset_dot(&pp))
                    } else {
                        periodic_poset_document(&pp, method.name())
                    }
                }
            };
            Ok((doc, 0))
        }
        Command::CountFixed { n, k, j, method } => {
            let poset = poset_for(n, k, method)?;
            let fp = build_fixed_poset(&poset);
            let count = count_fixed(&fp, j)?;
            Ok((count_document(poset.params(), j, method.name(), &count), 0))
        }
        Command::EnumFixed { n, k, j, method } => {
            let poset = poset_for(n, k, method)?;
            let fp = build_fixed_poset(&poset);
            let count = count_fixed(&fp, j)?;
            guard_enumeration(&count, budget)?;
            let decks = enumerate_fixed(&fp, j);
            Ok((
                enumeration_document("enum-fixed", poset.params(), j, method.name(), &decks),
                0,
            ))
        }
        Command::EnumPeriodic { n, k, j, method } => {
            let poset = poset_for(n, k, method)?;
            let pp = build_periodic_poset(&poset);
            let count = count_periodic(&pp, j)?;
            guard_enumeration(&count, budget)?;
            let decks = enumerate_periodic(&pp, j);
            Ok((
                enumeration_document("enum-periodic", poset.params(), j, method.name(), &decks),
                0,
            ))
        }
        Command::Periods { n, k, method } => {
            let poset = poset_for(n, k, method)?;
            let period_set = possible_periods(&poset)?;
            Ok((
                periods_document(poset.params(), method.name(), &period_set),
                0,
            ))
        }
        Command::MakePeriod { n, k, d, method } => {
            let poset = poset_for(n, k, method)?;
            let pp = build_periodic_poset(&poset);
            let deck = construct_period_stack(&poset, &pp, d)?;
            Ok((make_period_document(poset.params(), d, &deck), 0))
        }
        Command::VerifyTheorem { n, k } => {
            let params = ShuffleParams::new(n, k)?;
            let report = verify_cycle_theorem(&params)?;
            let code = if report.pass { 0 } else { 2 };
            Ok((theorem_document(&report), code))
        }
        Command::CycleStats { n, k, method } => {
            let poset = poset_for(n, k, method)?;
            let stats = cycle_length_stats(&poset)?;
            Ok((
                cycle_stats_document(poset.params(), method.name(), &stats),
                0,
            ))
        }
        Command::ConjectureScan { max_n } => {
            let scan = conjecture_scan(max_n);
            Ok((conjecture_document(&scan), 0))
        }
        Command::MaxSettle { n, k, j } => {
            let params = ShuffleParams::new(n, k)?;
            let (settle, witness) = max_settle(&params, j, budget)?;
            Ok((max_settle_document(&params, j, settle, &witness), 0))
        }
        Command::BruteForce { n, k, j, which } => {
            let params = ShuffleParams::new(n, k)?;
            let decks: Vec<Deck> = match which {
                BruteKind::Fixed => brute_force_fixed_decks(&params, j, budget)?
                    .into_iter()
                    .collect(),
                BruteKind::Periodic => brute_force_periodic_decks(&params, j, budget)?
                    .into_iter()
                    .collect(),
            };
            let name = match which {
                BruteKind::Fixed => "brute-force-fixed",
                BruteKind::Periodic => "brute-force-periodic",
            };
            Ok((
                enumeration_document(name, &params, j, "exhaustive", &decks),
                0,
            ))
        }
    }
}

fn parse_values(input: &str) -> Result<Vec<i64>, Error> {
    input
        .split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|e| Error::DeckParse {
                input: input.to_string(),
                reason: format!("bad weight value {part:?}: {e}"),
            })
        })
        .collect()
}

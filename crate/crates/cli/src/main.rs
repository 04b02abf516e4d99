//! `pmfgalois`: command-line front end for the pmf clone / weight coclone engines.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict with certificate,
//! 2 error (bad input, violated precondition, exceeded cap).

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use pmfgalois::{BaseSet, Caps, Config};

use commands::Kind;
use output::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "pmfgalois", version, about = "Clones of partial multi-valued functions and their weight invariants")]
struct Cli {
    /// Size of the base set B.
    #[arg(long, global = true, default_value_t = 2)]
    base: usize,
    /// Arity caps n_max,m_max,k_max.
    #[arg(long, global = true, default_value = "2,2,4")]
    caps: String,
    /// Truncation threshold T of the saturating naturals.
    #[arg(long, global = true)]
    nat_threshold: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a document and check its axioms.
    Validate {
        file: String,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
    },
    /// Does the pmf preserve every listed weight?
    Preserve {
        /// Pmf file or gate name.
        pmf: String,
        /// Weight files or catalog names.
        #[arg(required = true)]
        weights: Vec<String>,
    },
    /// The pmfs within the caps preserving all the weights.
    Pol {
        #[arg(required = true)]
        weights: Vec<String>,
        /// List every member, not just the maximal ones.
        #[arg(long)]
        members: bool,
    },
    /// The clone generated by the given pmfs.
    Closure {
        generators: Vec<String>,
        /// Permutation clone (generators must be permutations).
        #[arg(long)]
        permutation: bool,
        /// Also close under the ancilla rule (implies --permutation).
        #[arg(long)]
        ancilla: bool,
        /// Largest arity of a permutation clone.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Is the pmf in the clone generated by --gen?
    Member {
        pmf: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Canonical comparison of the word pair of a pmf in the clone generated by --gen.
    CanonicalCmp {
        pmf: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Extend a member to a total member.
    Extend {
        pmf: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Injective (or bijective) extension by bipartite matching.
    MatchExtend {
        pmf: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(long)]
        bijective: bool,
    },
    /// Permutation clone closed under the ancilla rule, with verification.
    AncillaClose {
        #[arg(required = true)]
        generators: Vec<String>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Build and check the monoid [Ω,G,σ].
    Grillet {
        /// Grillet document; without it, the truncation below is used.
        file: Option<String>,
        /// Depth d of the truncated nilsemigroup.
        #[arg(long, default_value_t = 2)]
        truncation: usize,
        /// Order of the cyclic group G.
        #[arg(long, default_value_t = 1)]
        cyclic: usize,
    },
    /// Subdirect irreducibility of a pomonoid.
    Si {
        /// Pomonoid file or shorthand (cyclic:N, zN, chain2, ...).
        pomonoid: String,
        /// all | trivially-ordered | commutative | commutative-trivially-ordered;
        /// defaults to the smallest one containing the pomonoid.
        #[arg(long)]
        quasivariety: Option<String>,
    },
    /// Down-set completion of a pomonoid.
    Downset { pomonoid: String },
    /// Compare two formal sums in N[M], written like "a+2*b".
    NsumLeq { pomonoid: String, x: String, y: String },
    /// Emit a builtin weight or gate document; lists names without an argument.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        order: Option<String>,
    },
    /// Restriction report of the clone generated by the given pmfs.
    Report { generators: Vec<String> },
}

fn config(cli: &Cli) -> Result<Config> {
    let caps: Vec<usize> = cli
        .caps
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("--caps {:?}: expected n,m,k", cli.caps))?;
    let [n, m, k] = caps[..] else {
        return Err(anyhow!("--caps {:?}: expected three numbers n,m,k", cli.caps));
    };
    if n == 0 || m == 0 || k == 0 {
        return Err(anyhow!("--caps {:?}: caps must be positive", cli.caps));
    }
    let mut cfg = Config::new(BaseSet::new(cli.base)?, Caps::new(n, m)?, k)?;
    if let Some(t) = cli.nat_threshold {
        cfg.nat_threshold = t;
    }
    if let Ok(b) = std::env::var("PMFGALOIS_BUDGET") {
        cfg.budget = b
            .trim()
            .parse()
            .map_err(|_| anyhow!("PMFGALOIS_BUDGET={b:?} is not a step count"))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Validate { file, kind } => commands::validate(file, *kind),
        Command::Preserve { pmf, weights } => commands::preserve(pmf, weights, &cfg),
        Command::Pol { weights, members } => commands::pol(weights, *members, &cfg),
        Command::Closure {
            generators,
            permutation,
            ancilla,
            n_max,
        } => commands::closure(generators, *permutation, *ancilla, *n_max, &cfg),
        Command::Member { pmf, generators } => commands::member(pmf, generators, &cfg),
        Command::CanonicalCmp { pmf, generators } => commands::canonical_cmp(pmf, generators, &cfg),
        Command::Extend { pmf, generators } => commands::extend(pmf, generators, &cfg),
        Command::MatchExtend {
            pmf,
            generators,
            bijective,
        } => commands::match_extend(pmf, generators, *bijective, &cfg),
        Command::AncillaClose { generators, n_max } => commands::ancilla_close(generators, *n_max, &cfg),
        Command::Grillet {
            file,
            truncation,
            cyclic,
        } => commands::grillet(file.as_deref(), *truncation, *cyclic),
        Command::Si { pomonoid, quasivariety } => commands::si(pomonoid, quasivariety.as_deref()),
        Command::Downset { pomonoid } => commands::downset(pomonoid, &cfg),
        Command::NsumLeq { pomonoid, x, y } => commands::nsum_leq(pomonoid, x, y, &cfg),
        Command::Catalog { name, k, order } => commands::catalog(name.as_deref(), *k, order.as_deref(), &cfg),
        Command::Report { generators } => commands::report(generators, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(out)) => {
            println!("{}", output::render(&out, cli.format));
            ExitCode::from(out.verdict.code())
        }
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_default();
            eprintln!("error: internal failure {msg}");
            ExitCode::from(2)
        }
    }
}

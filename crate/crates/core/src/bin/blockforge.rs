use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use blockforge::blocks::BlockSystem;
use blockforge::catalog;
use blockforge::chartab::CharacterTable;
use blockforge::error::{Error, Result};
use blockforge::frobenius::{analyze, AnalysisOptions, NormalEmbedding};
use blockforge::io::{self, LoadedGroup};
use blockforge::numtheory::{is_prime, prime_divisors};
use blockforge::report::{block_report, render_blocks, render_frobenius, render_table};
use blockforge::verify::{self, parse_suites, Suite, VerifyReport};

#[derive(Parser)]
#[command(name = "blockforge", version, about = "p-blocks and Frobenius corresponding blocks of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Element cap for group enumeration (overrides BLOCKFORGE_CAP).
    #[arg(long)]
    cap: Option<usize>,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PrimeArgs {
    /// Prime(s) to analyse; repeatable or comma separated.
    #[arg(short = 'p', long = "prime", value_delimiter = ',')]
    primes: Vec<u64>,
    /// Use every prime dividing |G| (the default when no -p is given).
    #[arg(long, conflicts_with = "primes")]
    all_primes: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table of a group.
    Chartab {
        /// Catalog name or generator file.
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the p-blocks of a group.
    Blocks {
        group: String,
        #[command(flatten)]
        primes: PrimeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Analyse block pairs across a normal subgroup.
    Frobenius {
        group: String,
        /// Named normal subgroup of a catalog group, or a generator file.
        #[arg(long)]
        normal: String,
        #[command(flatten)]
        primes: PrimeArgs,
        /// Seed for the complement search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run invariant suites on a group or on the whole catalog.
    Verify {
        #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
        group: Option<String>,
        /// Verify every catalog entry.
        #[arg(long)]
        catalog: bool,
        /// Restrict the pair suites to one normal subgroup.
        #[arg(long)]
        normal: Option<String>,
        /// `all` or a comma separated list of suites.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// List the builtin groups.
    Catalog {
        #[command(flatten)]
        common: Common,
    },
}

/// Output plus whether every check in it passed.
struct Outcome {
    text: String,
    ok: bool,
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> Result<String> {
    match format {
        Format::Json => io::to_json(value),
        Format::Text => Ok(text(value)),
    }
}

fn load(spec: &str, common: &Common) -> Result<(LoadedGroup, usize)> {
    let cap = io::resolve_cap(common.cap)?;
    Ok((io::load_group(spec, cap)?, cap))
}

fn select_primes(args: &PrimeArgs, order: u64) -> Result<Vec<u64>> {
    if args.all_primes || args.primes.is_empty() {
        return Ok(prime_divisors(order));
    }
    let mut primes = args.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if order % p != 0 {
            eprintln!("warning: {p} does not divide |G| = {order}; every block has defect zero");
        }
    }
    Ok(primes)
}

fn chartab(group: &str, common: &Common) -> Result<Outcome> {
    let (g, _) = load(group, common)?;
    let tbl = CharacterTable::compute(g.group)?;
    let text = match common.format {
        Format::Json => io::table_to_json(&g.name, &tbl)?,
        Format::Text => render_table(&g.name, &tbl),
    };
    Ok(Outcome { text, ok: true })
}

fn blocks(group: &str, primes: &PrimeArgs, common: &Common) -> Result<Outcome> {
    let (g, _) = load(group, common)?;
    let primes = select_primes(primes, g.group.order())?;
    let tbl = CharacterTable::compute(g.group)?;
    let systems = primes
        .iter()
        .map(|&p| BlockSystem::new(&tbl, p))
        .collect::<Result<Vec<_>>>()?;
    let report = block_report(&g.name, &tbl, &systems)?;
    Ok(Outcome {
        text: emit(common.format, &report, render_blocks)?,
        ok: true,
    })
}

fn frobenius(group: &str, normal: &str, primes: &PrimeArgs, seed: u64, common: &Common) -> Result<Outcome> {
    let (g, cap) = load(group, common)?;
    let (n_name, n) = io::load_normal(normal, &g, cap)?;
    let primes = select_primes(primes, g.group.order())?;
    let g_tbl = CharacterTable::compute(g.group.clone())?;
    let n_tbl = CharacterTable::compute(n)?;
    let mut emb = NormalEmbedding::new(g_tbl, n_tbl)?;
    let opts = AnalysisOptions {
        group_name: g.name.clone(),
        normal_name: n_name,
        primes,
        seed,
    };
    let report = analyze(&mut emb, &opts)?;
    Ok(Outcome {
        text: emit(common.format, &report, render_frobenius)?,
        ok: report.consistent,
    })
}

fn verify_group(group: &str, normal: Option<&str>, suites: &[Suite], seed: u64, common: &Common) -> Result<VerifyReport> {
    let (g, cap) = load(group, common)?;
    let tbl = CharacterTable::compute(g.group.clone())?;
    let mut results = verify::verify_table(&g.name, &tbl, g.entry.as_ref(), suites)?;
    if suites.iter().any(|s| s.needs_normal()) {
        let normals: Vec<String> = match (normal, &g.entry) {
            (Some(n), _) => vec![n.to_string()],
            (None, Some(e)) => e.normal_subgroups.iter().map(|(n, _)| n.clone()).collect(),
            (None, None) => Vec::new(),
        };
        for spec in normals {
            let (n_name, n) = io::load_normal(&spec, &g, cap)?;
            let report = verify::analyze_pair(&g.name, &tbl, &n_name, n, seed)?;
            results.extend(verify::verify_report(&report, suites));
        }
    }
    Ok(VerifyReport::new(results))
}

#[derive(Serialize)]
struct CatalogListing {
    schema: u32,
    groups: Vec<CatalogItem>,
}

#[derive(Serialize)]
struct CatalogItem {
    name: String,
    degree: usize,
    order: u64,
    class_count: usize,
    generators: Vec<Vec<usize>>,
    normal_subgroups: Vec<String>,
}

fn list_catalog(common: &Common) -> Result<Outcome> {
    let groups = catalog::catalog()
        .into_iter()
        .map(|e| CatalogItem {
            degree: e.degree,
            order: e.expected.order,
            class_count: e.expected.class_count,
            generators: e.generators.iter().map(|g| g.images_one_based()).collect(),
            normal_subgroups: e.normal_subgroups.iter().map(|(n, _)| n.clone()).collect(),
            name: e.name,
        })
        .collect();
    let listing = CatalogListing { schema: io::SCHEMA, groups };
    let text = emit(common.format, &listing, |l| {
        let mut out = String::new();
        for g in &l.groups {
            out.push_str(&format!(
                "{:<8} degree {:>2}  order {:>4}  classes {:>2}  normal: {}\n",
                g.name,
                g.degree,
                g.order,
                g.class_count,
                if g.normal_subgroups.is_empty() { "-".to_string() } else { g.normal_subgroups.join(", ") }
            ));
        }
        out
    })?;
    Ok(Outcome { text, ok: true })
}

fn run(cli: &Cli) -> Result<(Outcome, &Common)> {
    Ok(match &cli.command {
        Command::Chartab { group, common } => (chartab(group, common)?, common),
        Command::Blocks { group, primes, common } => (blocks(group, primes, common)?, common),
        Command::Frobenius {
            group,
            normal,
            primes,
            seed,
            common,
        } => (frobenius(group, normal, primes, *seed, common)?, common),
        Command::Verify {
            group,
            catalog,
            normal,
            suite,
            seed,
            common,
        } => {
            let suites = parse_suites(suite)?;
            let report = match (catalog, group) {
                (true, _) => verify::verify_catalog(&suites, *seed)?,
                (false, Some(g)) => verify_group(g, normal.as_deref(), &suites, *seed, common)?,
                (false, None) => return Err(Error::Validation("a group or --catalog is required".into())),
            };
            let ok = report.all_passed();
            (
                Outcome {
                    text: emit(common.format, &report, VerifyReport::render)?,
                    ok,
                },
                common,
            )
        }
        Command::Catalog { common } => (list_catalog(common)?, common),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|(outcome, common)| {
        io::write_report(&outcome.text, common.out.as_deref())?;
        Ok(outcome.ok)
    }) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

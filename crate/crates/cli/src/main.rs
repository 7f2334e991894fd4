use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torslab_core::brick::{self, BrickKind, BrickSet};
use torslab_core::config::RunConfig;
use torslab_core::lattice::{lattice_to_dot, poset_to_dot};
use torslab_core::nakayama::AlgebraSpec;
use torslab_core::subcat::{bits, ClassKind, ClassLattice, ModCategory, DEFAULT_BRUTE_FORCE_CAP};
use torslab_core::verify::{CheckId, Status, Workbench};
use torslab_core::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPS: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "torslab", version, about = "Torsion classes, wide subcategories and bricks of Nakayama algebras")]
struct Cli {
    /// Seed for sampled join representations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    /// Characteristic of the ground field for the matrix oracle.
    #[arg(long, global = true, default_value_t = 2, value_parser = parse_field)]
    field: u32,

    /// Largest category swept subset by subset.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_FORCE_CAP, value_parser = parse_cap)]
    max_indecs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or count classes and brick sets.
    Enumerate {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run named checks and print the JSON report.
    Verify {
        #[arg(long)]
        algebra: String,
        /// `all` or a comma-separated list such as `T1,T2,C3`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Write the torsion class lattice or its kappa order as DOT.
    Export {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value_t = What::Hasse)]
        what: What,
        #[arg(long, value_enum, default_value_t = Labels::None)]
        labels: Labels,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Tors,
    Torf,
    Wide,
    Sbrick,
    Mbrick,
    MbrickCc,
    Bricks,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Count,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum What {
    Hasse,
    KappaPoset,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Labels {
    None,
    Mu,
    Brick,
}

fn parse_field(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(p @ (2 | 3 | 5)) => Ok(p),
        _ => Err(format!("field must be 2, 3 or 5, got `{s}`")),
    }
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n @ 1..=64) => Ok(n),
        _ => Err(format!("max-indecs must be between 1 and 64, got `{s}`")),
    }
}

/// A failed command together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_cap_exceeded() { EXIT_CAPS } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

macro_rules! impl_from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

impl_from_core!(
    torslab_core::subcat::SubcatError,
    torslab_core::brick::BrickError,
    torslab_core::lattice::LatticeError
);

fn algebra(spec: &str) -> Result<AlgebraSpec, Failure> {
    spec.parse::<AlgebraSpec>()
        .map_err(|e| Failure { code: EXIT_USAGE, message: format!("bad algebra `{spec}`: {e}") })
}

fn category(cli: &Cli, spec: &str) -> Result<ModCategory, Failure> {
    Ok(ModCategory::new(algebra(spec)?, cli.field).map_err(Error::from)?)
}

fn emit(s: &str) -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(s.as_bytes())
        .and_then(|()| stdout.flush())
        .map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })
}

fn enumerate(cli: &Cli, spec: &str, kind: Kind, format: Format) -> Result<u8, Failure> {
    let cat = category(cli, spec)?;
    let cap = cli.max_indecs;
    fn render<T: serde::Serialize>(items: &[T], format: Format) -> String {
        match format {
            Format::Count => format!("{}\n", items.len()),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(items).expect("json")),
        }
    }
    let classes = |masks: Vec<u64>| render(&masks.into_iter().map(|m| cat.set(m)).collect::<Vec<_>>(), format);
    let brick_sets = |kind: BrickKind, masks: Vec<u64>| {
        render(&masks.into_iter().map(|m| BrickSet::new(&cat, kind, m)).collect::<Vec<_>>(), format)
    };
    let text = match kind {
        Kind::Tors => classes(cat.enumerate(ClassKind::Tors, cap)?),
        Kind::Torf => classes(cat.enumerate(ClassKind::Torf, cap)?),
        Kind::Wide => classes(cat.enumerate(ClassKind::Wide, cap)?),
        Kind::Sbrick => brick_sets(BrickKind::Semibrick, brick::enumerate_semibricks(&cat, cap)?),
        Kind::Mbrick => brick_sets(BrickKind::Monobrick, brick::enumerate_monobricks(&cat, cap)?),
        Kind::MbrickCc => brick_sets(BrickKind::CcMonobrick, brick::enumerate_cc_monobricks(&cat, cap)?),
        Kind::Bricks => render(&bits(cat.bricks()).map(|k| cat.indec(k)).collect::<Vec<_>>(), format),
    };
    emit(&text)?;
    Ok(0)
}

fn verify(cli: &Cli, spec: &str, suite: &str) -> Result<u8, Failure> {
    let ids = CheckId::parse_list(suite).map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })?;
    let config = RunConfig { field: cli.field, seed: cli.seed, max_indecs: cli.max_indecs, ..RunConfig::default() };
    let wb = Workbench::new(algebra(spec)?, config)?;
    let report = wb.run_suite(&ids);
    emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("json")))?;
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        eprintln!("{:<7} {:<7} {:>6} ms  {}", c.id, status, c.ms, c.notes.join("; "));
    }
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn export(cli: &Cli, spec: &str, what: What, labels: Labels, out: Option<&PathBuf>) -> Result<u8, Failure> {
    let cat = category(cli, spec)?;
    let tors = ClassLattice::build(&cat, ClassKind::Tors, cli.max_indecs)?;
    let l = tors.lattice();
    let node = |x: usize| cat.label(tors.class(x));
    let dot = match what {
        What::Hasse => {
            let arrows = l.hasse_arrows();
            let mut edge = std::collections::HashMap::new();
            for &h in &arrows {
                let text = match labels {
                    Labels::None => continue,
                    Labels::Mu => l.mu_label(h).map(&node).unwrap_or_else(|_| "?".into()),
                    Labels::Brick => tors
                        .brick_label(&cat, h)?
                        .map_or_else(|| "?".into(), |b| cat.indec(b).to_string()),
                };
                edge.insert((h.src, h.dst), text);
            }
            let edge_label = |s: usize, d: usize| edge[&(s, d)].clone();
            let decorate: Option<&dyn Fn(usize, usize) -> String> =
                if labels == Labels::None { None } else { Some(&edge_label) };
            lattice_to_dot(l, node, decorate)
        }
        What::KappaPoset => poset_to_dot(&l.kappa_poset()?, node),
    };
    match out {
        Some(path) => fs::write(path, dot)
            .map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })?,
        None => emit(&dot)?,
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })?;
    }
    match &cli.command {
        Command::Enumerate { algebra, kind, format } => enumerate(cli, algebra, *kind, *format),
        Command::Verify { algebra, suite } => verify(cli, algebra, suite),
        Command::Export { algebra, what, labels, out } => export(cli, algebra, *what, *labels, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("torslab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use asmkit::asm::ClassTag;
use asmkit::identities::{IdentityId, Table};
use asmkit::kuperberg::{Case, Root};
use asmkit_cli::{
    is_usage_error, run_census, run_conjecture, run_dim, run_enumerate, run_genfun, run_verify_identities,
    run_verify_partition, run_verify_tables, Format, Report, RunConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact enumeration and verification for alternating sign matrices.
///
/// Exit status: 0 when every check held, 1 when a check failed or a
/// computation broke, 2 on a usage error.
#[derive(Parser)]
#[command(name = "asmkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads [env: ASMKIT_JOBS, default: all cores]
    #[arg(long, global = true, env = "ASMKIT_JOBS")]
    jobs: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Brute-force counts and x-enumerations against the closed formulas
    Census {
        /// Class to include (repeatable); all classes by default
        #[arg(long = "class")]
        classes: Vec<ClassTag>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Lists the members of one class and order
    Enumerate {
        #[arg(long)]
        class: ClassTag,
        #[arg(long)]
        order: usize,
        /// Stream the matrices as JSON lines instead of a count report
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// The x-enumeration polynomial of one class and order
    Genfun {
        #[arg(long)]
        class: ClassTag,
        #[arg(long)]
        order: usize,
    },
    /// Dimension of an irreducible representation, computed two ways
    Dim {
        /// GL6, Sp8, O5, O4 (the dimension acted on)
        #[arg(long)]
        group: String,
        /// Comma-separated parts, e.g. 2,2,1,1 or 3/2,1/2
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        weight: String,
    },
    /// Randomized exact checks
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Odd-order HTSASM and DASASM counts against the conjectured formulas
    Conjecture {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Determinant and Pfaffian identities
    Identities {
        #[arg(long = "id")]
        ids: Vec<IdentityId>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        seeds: Option<usize>,
    },
    /// Partition functions against their character formulas
    Partition {
        #[arg(long = "case")]
        cases: Vec<Case>,
        #[arg(long = "root")]
        roots: Vec<Root>,
        /// Largest size parameter
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seeds: Option<usize>,
    },
    /// Rows of the specialization tables
    Tables {
        #[arg(long = "table")]
        tables: Vec<Table>,
        /// Printed label or CASE:ROOT
        #[arg(long)]
        row: Option<String>,
        /// Largest size parameter
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seeds: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Jsonl,
}

fn sink(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let jobs = cli.common.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut cfg = RunConfig { seed: cli.common.seed, jobs, ..RunConfig::default() };
    let result: asmkit::Result<Report> = match cli.command {
        Command::Census { classes, order, max_order } => {
            cfg.classes = classes;
            cfg.order = order;
            cfg.max_order = max_order;
            run_census(&cfg)
        }
        Command::Enumerate { class, order, emit } => {
            cfg.classes = vec![class];
            cfg.order = Some(order);
            if emit.is_some() {
                let mut out = sink(&cli.common.out)?;
                let r = run_enumerate(&cfg, Some(&mut *out));
                out.flush()?;
                return finish_stream(r);
            }
            run_enumerate(&cfg, None)
        }
        Command::Genfun { class, order } => {
            cfg.classes = vec![class];
            cfg.order = Some(order);
            run_genfun(&cfg)
        }
        Command::Dim { group, weight } => {
            cfg.group = Some(group);
            cfg.weight = Some(weight);
            run_dim(&cfg)
        }
        Command::Verify { what } => match what {
            Verify::Identities { ids, max_size, seeds } => {
                cfg.ids = ids;
                cfg.max_size = max_size;
                cfg.seeds = seeds;
                run_verify_identities(&cfg)
            }
            Verify::Partition { cases, roots, n, seeds } => {
                cfg.cases = cases;
                cfg.roots = roots;
                cfg.n = n;
                cfg.seeds = seeds;
                run_verify_partition(&cfg)
            }
            Verify::Tables { tables, row, n, seeds } => {
                cfg.tables = tables;
                cfg.row = row;
                cfg.n = n;
                cfg.seeds = seeds;
                run_verify_tables(&cfg)
            }
        },
        Command::Conjecture { order, max_order } => {
            cfg.order = order;
            cfg.max_order = max_order;
            run_conjecture(&cfg)
        }
    };
    match result {
        Ok(report) => {
            let mut out = sink(&cli.common.out)?;
            report.write(cli.common.format, &mut out)?;
            out.flush()?;
            if report.ok {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("asmkit: some checks failed");
                Ok(ExitCode::from(1))
            }
        }
        Err(e) => fail(e),
    }
}

fn finish_stream(r: asmkit::Result<Report>) -> anyhow::Result<ExitCode> {
    match r {
        Ok(_) => Ok(ExitCode::SUCCESS),
        Err(e) => fail(e),
    }
}

fn fail(e: asmkit::Error) -> anyhow::Result<ExitCode> {
    eprintln!("asmkit: {e}");
    Ok(ExitCode::from(if is_usage_error(&e) { 2 } else { 1 }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("asmkit: {e:#}");
            ExitCode::from(1)
        }
    }
}

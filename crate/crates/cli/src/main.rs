//! `aqar`: batch front end for the constructions, oracles and bound checks.
//!
//! Exit status: 0 when everything verified, 2 when a claim or check is
//! violated, 1 on any error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use aqar_core::construct::PrimitiveCase;
use aqar_core::selftest::Scale;
use aqar_core::{Config, ExecMode};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "aqar",
    version,
    about = "Constructions, exhaustive oracles and exact bound checks for A_q A_r groups"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Cap on group orders, table sizes and GL scans.
    #[arg(long, global = true)]
    max_order: Option<u64>,
    /// Cap on permutation degrees.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Worker threads; 1 keeps every loop sequential.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for the randomized parts of the self-test.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CaseArg {
    CyclicR,
    CyclicQ,
    AffineQr,
}

impl From<CaseArg> for PrimitiveCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::CyclicR => PrimitiveCase::CyclicR,
            CaseArg::CyclicQ => PrimitiveCase::CyclicQ,
            CaseArg::AffineQr => PrimitiveCase::AffineQR,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScaleArg {
    Quick,
    Full,
}

impl From<ScaleArg> for Scale {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::Quick => Scale::Quick,
            ScaleArg::Full => Scale::Full,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    VarietyCount,
    GlSubgroupCount,
    TransitiveCount,
    LinearOrder,
    PermutationOrder,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the primitive A_q A_r group of the given shape.
    ConstructPrimitive {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum, default_value_t = CaseArg::AffineQr)]
        case: CaseArg,
        /// Also run the structural checks on the result.
        #[arg(long)]
        verify: bool,
        /// Write the group to this file as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the forced structure of a primitive A_q A_r group read from JSON.
    VerifyPrimitive {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
    },
    /// Classify maximal elementary abelian r-subgroups of GL(alpha, s).
    ClassifyGl {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        r: u64,
    },
    /// Count the groups of order p^alpha q^beta r^gamma in A_p A_q A_r.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
        #[arg(long)]
        gamma: u32,
        /// Try candidate homomorphism images in reverse order.
        #[arg(long)]
        reverse: bool,
        /// Write each representative's multiplication table into this directory.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Evaluate a bound, optionally against a count.
    CheckBounds {
        #[arg(long, value_enum)]
        formula: Formula,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long)]
        gamma: Option<u32>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        count: Option<String>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, value_enum, default_value_t = ScaleArg::Quick)]
        scale: ScaleArg,
        /// Run a single criterion by id.
        #[arg(long)]
        criterion: Option<String>,
    },
}

fn config(g: &GlobalArgs) -> Config {
    let mut cfg = Config::default();
    if let Some(m) = g.max_order {
        let l = &mut cfg.limits;
        l.exhaustive_order = m;
        l.table_order = m;
        l.census_order = m;
        l.gl_bruteforce = m;
        l.mat_elements = m;
    }
    if let Some(d) = g.max_degree {
        cfg.limits.max_degree = d;
        cfg.limits.construct_degree = d;
    }
    cfg.mode = if g.jobs > 1 { ExecMode::Parallel } else { ExecMode::Sequential };
    cfg
}

fn run(cli: &Cli) -> Result<report::TaskReport> {
    let cfg = config(&cli.global);
    let started = Instant::now();
    let mut report = aqar_core::par::install(cli.global.jobs, || -> Result<report::TaskReport> {
        Ok(match &cli.command {
            Command::ConstructPrimitive { q, r, case, verify, out } => {
                commands::construct_primitive(*q, *r, (*case).into(), *verify, out.as_deref(), &cfg)?
            }
            Command::VerifyPrimitive { input, q, r } => commands::verify_primitive(input, *q, *r, &cfg)?,
            Command::ClassifyGl { alpha, s, r } => commands::classify_gl(*alpha, *s, *r, &cfg)?,
            Command::Census { p, q, r, alpha, beta, gamma, reverse, tables } => {
                commands::census([*p, *q, *r], [*alpha, *beta, *gamma], *reverse, tables.as_deref(), &cfg)?
            }
            Command::CheckBounds { formula, p, q, r, alpha, beta, gamma, s, n, count } => {
                let args = commands::BoundArgs {
                    p: *p,
                    q: *q,
                    r: *r,
                    alpha: *alpha,
                    beta: *beta,
                    gamma: *gamma,
                    s: *s,
                    n: *n,
                    count: count.clone(),
                };
                commands::check_bounds(*formula, &args)?
            }
            Command::Selftest { scale, criterion } => {
                commands::selftest((*scale).into(), criterion.as_deref(), cli.global.seed, &cfg)?
            }
        })
    })?;
    report.finalize(cli.global.timing.then(|| started.elapsed()));
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Format::Text => report.render_text(),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

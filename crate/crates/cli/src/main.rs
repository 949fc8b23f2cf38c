use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use prymcheck_cli::{render_text, run, Command, Report, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

const AFTER_HELP: &str = "\
Groups: dihedral:p, dihedral:p^2, klein, generators:S/T;U (a dihedral factor
<S, T> and an order-two factor <U>, cycle notation).
Subgroups: trivial, whole, tau, tau(k), or generators separated by ';'.
Representations: trivial, alternating, W, V(j), U(j), tensor(a,b,...).
Signature entries: class:s where class is C<k>, the k-th conjugacy class of
nontrivial cyclic subgroups ordered by subgroup order and then by smallest
generating element, or a generator in cycle notation.

Flags override keys of the --config file. Exit codes: 0 all checks pass,
1 some check fails, 2 input error.";

/// Exact verification of Prym-Tyurin presentations.
#[derive(Debug, Parser)]
#[command(name = "prymcheck", version, after_help = AFTER_HELP)]
struct Cli {
    /// Command to run; may instead come from the config file.
    #[arg(value_enum)]
    command: Option<Command>,
    /// JSON config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    subgroup: Option<String>,
    /// Representation name; repeat for several.
    #[arg(long = "reps")]
    reps: Vec<String>,
    /// Signature entry class:s; repeat for several.
    #[arg(long)]
    signature: Vec<String>,
    /// Signature of the second factor of a product.
    #[arg(long)]
    right_signature: Vec<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    s1: Option<u32>,
    #[arg(long)]
    s2: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fixture directory for regress.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Largest group order to materialize.
    #[arg(long)]
    order_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Show witnesses and matrix dumps in text output.
    #[arg(short, long)]
    verbose: bool,
}

impl Cli {
    fn config(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            command: self.command,
            group: self.group.clone(),
            subgroup: self.subgroup.clone(),
            reps: self.reps.clone(),
            signature: self.signature.clone(),
            right_signature: self.right_signature.clone(),
            p: self.p,
            s1: self.s1,
            s2: self.s2,
            out: self.out.clone(),
            fixtures: self.fixtures.clone(),
            order_cap: self.order_cap,
            expect: Default::default(),
        };
        Ok(file.overlay(flags))
    }

    fn emit(&self, cfg: &RunConfig, report: &Report) -> Result<()> {
        let text = match self.format {
            Format::Json => report.to_json(),
            Format::Text => render_text(report, self.verbose),
        };
        match &cfg.out {
            Some(path) => std::fs::write(path, text)
                .with_context(|| format!("cannot write {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = cli.config().and_then(|cfg| {
        let report = run(&cfg)?;
        cli.emit(&cfg, &report)?;
        Ok(report.passed)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

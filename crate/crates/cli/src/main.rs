// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use boolspar::harness::{self, Experiment, ExperimentConfig, Format};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "boolspar", version, about = "Sparsity, restrictions and approximators for Boolean functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Master seed; every trial derives its own seed from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    /// Worker threads (default: all cores). Never affects the report.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report destination; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Also write the constructed polynomial (JSON) here.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exact degree, sparsity, ℓ1 and sensitivity.
    Measure {
        #[arg(long = "fn")]
        function: String,
    },
    /// Max-degree restriction sampler with per-run checks and tail cells.
    Maxdeg {
        #[arg(long = "fn")]
        function: String,
        /// Panel monomials, comma-separated: full, half, or index lists like 1.2.3
        #[arg(long, value_delimiter = ',', default_value = "full")]
        monomials: Vec<String>,
    },
    /// Max-sensitivity restriction sampler over a separating input set.
    Maxsens {
        #[arg(long = "fn")]
        function: String,
        /// minterms, maxterms, both, or file:PATH
        #[arg(long, default_value = "minterms")]
        set: String,
        /// Panel generalized monomials, comma-separated: full, half, alt, neg, or lists like 1.-2.3
        #[arg(long, value_delimiter = ',', default_value = "full")]
        monomials: Vec<String>,
    },
    /// Approximator constructions.
    #[command(subcommand)]
    Approx(ApproxCmd),
    /// Monotone block sensitivity (exact up to 14 variables).
    Mbs {
        #[arg(long = "fn")]
        function: String,
    },
    /// Decision tree (JSON) to generalized polynomial.
    Convert {
        #[arg(long = "in")]
        tree: PathBuf,
    },
    /// Scaling table across a function family.
    CompareScaling {
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
    },
    /// Smoke battery over every module.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum ApproxCmd {
    /// Symmetric Chebyshev approximator of OR_n.
    Or {
        #[arg(long)]
        n: usize,
    },
    /// Separating-collection approximator of Thr^n_{n-1}.
    Thr {
        #[arg(long)]
        n: usize,
        /// Collection size (default ⌈216 ln n²⌉).
        #[arg(long)]
        t: Option<usize>,
    },
    /// Sample k terms proportionally to |coefficient|.
    Sparsify {
        #[arg(long = "in")]
        poly: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Error reduction by cubic composition.
    Amplify {
        #[arg(long = "in")]
        poly: PathBuf,
        #[arg(long, default_value_t = 4)]
        iters: usize,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        margin: f64,
    },
}

fn experiment(cmd: Cmd) -> Experiment {
    match cmd {
        Cmd::Measure { function } => Experiment::Measure { function },
        Cmd::Maxdeg { function, monomials } => Experiment::Maxdeg { function, monomials },
        Cmd::Maxsens { function, set, monomials } => Experiment::Maxsens { function, set, monomials },
        Cmd::Approx(ApproxCmd::Or { n }) => Experiment::ApproxOr { n },
        Cmd::Approx(ApproxCmd::Thr { n, t }) => Experiment::ApproxThr { n, t },
        Cmd::Approx(ApproxCmd::Sparsify { poly, k }) => Experiment::ApproxSparsify { input: poly, k },
        Cmd::Approx(ApproxCmd::Amplify { poly, iters, margin }) => Experiment::ApproxAmplify { input: poly, iters, margin },
        Cmd::Mbs { function } => Experiment::Mbs { function },
        Cmd::Convert { tree } => Experiment::Convert { input: tree },
        Cmd::CompareScaling { family, ns } => Experiment::CompareScaling { family, ns },
        Cmd::Selftest => Experiment::Selftest,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; exit code 2 is reserved for failed assertions.
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(4)
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<u8> {
    let g = cli.global;
    if let Some(threads) = g.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().context("building worker pool")?;
    }
    let mut config = ExperimentConfig::new(experiment(cli.cmd), g.trials, g.seed);
    config.format = match g.format {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    };
    let outcome = harness::run(&config)?;
    let text = outcome.report.render(config.format);
    match &g.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    if let Some(path) = &g.emit {
        let artifact = outcome.artifact.context("this experiment produces no polynomial")?;
        let body = serde_json::to_string_pretty(&artifact)? + "\n";
        std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    let status = outcome.report.status();
    if status != harness::Status::Pass {
        eprintln!("status: {status:?}");
    }
    Ok(status.exit_code() as u8)
}

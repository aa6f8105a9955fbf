use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plfeq_cli::cache::CACHE_ENV;
use plfeq_cli::commands::{cmd_bernoulli, cmd_feq, cmd_reduce, cmd_table, cmd_verify};
use plfeq_cli::{Config, FormArg, Outcome, OutputFormat, DEFAULT_DIGITS};

/// Parity functional equations for multiple polylogarithms.
///
/// Indices are written n1,n2,...,nd with n1 the innermost summation:
/// Li_{n1,...,nd}(z1,...,zd) = sum over 0 < k1 < ... < kd of
/// z1^k1 ... zd^kd / (k1^n1 ... kd^nd).
#[derive(Parser, Debug)]
#[command(name = "plfeq", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Keep Li(1/z) factors (compact) or rewrite into strict generators (canonical).
    #[arg(long, value_enum, default_value_t = FormArg::Canonical, global = true)]
    form: FormArg,
    /// Sample points per numerical check.
    #[arg(long, default_value_t = 3, global = true)]
    samples: usize,
    /// Tolerance of numerical checks.
    #[arg(long, default_value_t = 1e-10, global = true)]
    tol: f64,
    /// Working precision in significant digits (30 to 71).
    #[arg(long, default_value_t = DEFAULT_DIGITS, global = true)]
    prec: u32,
    /// Equation cache directory.
    #[arg(long, env = CACHE_ENV, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the functional equation of PLi_n.
    Feq {
        /// Index n1,n2,...,nd.
        index: String,
        /// Check the equation numerically first.
        #[arg(long)]
        verify: bool,
    },
    /// Specialise the equation to roots of unity.
    Reduce {
        /// Index n1,n2,...,nd.
        index: String,
        /// Roots k1/N1,...,kd/Nd standing for exp(2 pi i k/N).
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        /// Also print a closed-form reduction when one applies.
        #[arg(long)]
        closed_form: bool,
        /// Compare the results numerically with a direct evaluation.
        #[arg(long)]
        verify: bool,
    },
    /// Verify every equation up to a weight.
    Verify {
        #[arg(long)]
        max_weight: u32,
    },
    /// Write all equations up to a weight as one document.
    Table {
        #[arg(long)]
        max_weight: u32,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Bernoulli numbers and polynomials.
    Bernoulli {
        k: u32,
        /// Print the polynomial B_k(x) (coefficients from x^0 up).
        #[arg(long)]
        poly: bool,
        /// Evaluate B_k at a rational point.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let o = cli.opts;
    let cfg = Config {
        digits: o.prec,
        tolerance: o.tol,
        samples: o.samples,
        format: o.format,
        form: o.form.into(),
        cache_dir: o.cache,
    };
    match cli.cmd {
        Cmd::Feq { index, verify } => cmd_feq(&cfg, &index, verify),
        Cmd::Reduce { index, roots, closed_form, verify } => cmd_reduce(&cfg, &index, &roots, closed_form, verify),
        Cmd::Verify { max_weight } => cmd_verify(&cfg, max_weight),
        Cmd::Table { max_weight, output } => {
            let out = cmd_table(&cfg, max_weight)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &out.output)
                        .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?;
                    Ok(Outcome { output: String::new(), ..out })
                }
                None => Ok(out),
            }
        }
        Cmd::Bernoulli { k, poly, at } => cmd_bernoulli(&cfg, k, poly, at.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.output);
            if out.success {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

//! Command implementations behind the `plfeq` binary.
//!
//! Each command returns its full output as a string together with a success
//! flag, so the binary only prints and sets the exit status.

pub mod cache;
pub mod commands;
pub mod record;

use std::path::PathBuf;

use anyhow::bail;
use plfeq::engine::Form;
use plfeq::HpFloat;

pub type Result<T> = anyhow::Result<T>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, clap::ValueEnum)]
pub enum FormArg {
    Compact,
    #[default]
    Canonical,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Compact => Form::Compact,
            FormArg::Canonical => Form::Canonical,
        }
    }
}

pub const DEFAULT_DIGITS: u32 = 50;
pub const MIN_DIGITS: u32 = 30;

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct Config {
    pub digits: u32,
    pub tolerance: f64,
    pub samples: usize,
    pub format: OutputFormat,
    pub form: Form,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            digits: DEFAULT_DIGITS,
            tolerance: 1e-10,
            samples: 3,
            format: OutputFormat::Text,
            form: Form::Canonical,
            cache_dir: None,
        }
    }
}

impl Config {
    /// Rejects settings the evaluators cannot honour. All supported digit
    /// counts run on the 256-bit float.
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            bail!("tolerance must be positive, got {}", self.tolerance);
        }
        if self.digits < MIN_DIGITS || self.digits > HpFloat::DIGITS {
            bail!("precision must be between {MIN_DIGITS} and {} digits, got {}", HpFloat::DIGITS, self.digits);
        }
        if self.samples == 0 {
            bail!("at least one sample point is required");
        }
        Ok(())
    }
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    pub fn ok(output: String) -> Self {
        Outcome { output, success: true }
    }
}

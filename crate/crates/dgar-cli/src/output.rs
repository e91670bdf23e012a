use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use dgar::resolution::ResolutionBudget;
use dgar::DgError;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Maximum number of generators a resolution may add.
    #[arg(long, default_value_t = 32)]
    pub budget_generators: usize,
    /// Lowest generator degree a resolution may use.
    #[arg(long, default_value_t = -64, allow_hyphen_values = true)]
    pub degree_lo: i32,
    /// Highest generator degree a resolution may use.
    #[arg(long, default_value_t = 64, allow_hyphen_values = true)]
    pub degree_hi: i32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl RunConfig {
    pub fn budget(&self) -> Result<ResolutionBudget> {
        Ok(ResolutionBudget::new(self.budget_generators, self.degree_lo, self.degree_hi)?)
    }
}

/// Every JSON report carries the tool version, the configuration it ran
/// with and the checks it exercised.
#[derive(Serialize)]
pub struct Report<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub conditions: Vec<&'static str>,
    pub result: T,
}

pub fn report<'a, T: Serialize>(command: &'a str, config: &'a RunConfig, conditions: &[&'static str], result: T) -> Report<'a, T> {
    Report { tool: "dgar", version: env!("CARGO_PKG_VERSION"), command, config, conditions: conditions.to_vec(), result }
}

pub fn emit_json<T: Serialize>(config: &RunConfig, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(config.out.as_deref(), &text)
}

/// Writes through a temporary file in the target directory so readers never
/// see a partial file.
pub fn emit_text(out: Option<&Path>, text: &str) -> Result<()> {
    let Some(path) = out else {
        print!("{text}");
        return Ok(());
    };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_NOT_GORENSTEIN: u8 = 4;
pub const EXIT_UNDECIDED: u8 = 5;

/// Machine-readable failure: (exit code, reason).
pub fn classify(err: &anyhow::Error) -> (u8, &'static str) {
    match err.downcast_ref::<DgError>() {
        Some(DgError::Budget(_)) => (EXIT_BUDGET, "budget"),
        Some(DgError::NotGorenstein(_)) => (EXIT_NOT_GORENSTEIN, "not-gorenstein"),
        Some(DgError::Undecided(_)) => (EXIT_UNDECIDED, "undecided"),
        Some(DgError::Inconsistent(_)) => (1, "internal"),
        Some(_) => (EXIT_INVALID, "invalid-input"),
        None if err.downcast_ref::<std::io::Error>().is_some() || err.downcast_ref::<serde_json::Error>().is_some() => {
            (EXIT_INVALID, "invalid-input")
        }
        None => (1, "internal"),
    }
}

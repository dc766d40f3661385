//! Reproducible experiments over the `curvegraph` library.
//!
//! Every subcommand builds a [`Table`] from its arguments, prefixed in CSV
//! output by a `# curvegraph <version> seed=<seed> config=<sha256>` line.
//! Exit codes: 0 success, 2 input error, 3 early stop of an induction.

pub mod covers;
pub mod electrify;
pub mod farey_ball;
pub mod output;
pub mod rauzy;
pub mod walk;
pub mod wpd;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use output::{Caps, ExperimentConfig, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "curvegraph", version, about = "Desk-scale curve graph experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Farey ball radius.
    #[arg(long, global = true, default_value_t = 6)]
    pub cap_radius: u32,
    /// Induction steps.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub cap_steps: usize,
    /// Random samples.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub cap_samples: usize,
}

impl Global {
    pub fn caps(&self) -> Caps {
        Caps {
            radius: self.cap_radius,
            steps: self.cap_steps,
            samples: self.cap_samples,
        }
    }

    pub fn config(&self, subcommand: &str) -> ExperimentConfig {
        ExperimentConfig::new(subcommand, self.seed, self.caps())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exceptional covers and the irregular-cover case table.
    Covers(covers::CoversArgs),
    /// Distance, projection and hyperbolicity queries on an electrified graph.
    Electrify(electrify::ElectrifyArgs),
    /// Random words in the twist generators, classified.
    Walk(walk::WalkArgs),
    /// Rauzy induction on an exchange fixture.
    Rauzy(rauzy::RauzyArgs),
    /// WPD census across a range of powers.
    Wpd(wpd::WpdArgs),
    /// Slopes of a height-capped Farey ball.
    FareyBall(farey_ball::FareyBallArgs),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Io(String),
    /// Induction stopped early; the partial results were written.
    EarlyStop(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::EarlyStop(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::EarlyStop(m) => write!(f, "stopped early: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Runs a parsed command line, writing its output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Covers(a) => finish(g, covers::run(a, g)?),
        Command::Electrify(a) => finish(g, electrify::run(a, g)?),
        Command::Walk(a) => finish(g, walk::run(a, g)?),
        Command::Rauzy(a) => rauzy::run_and_write(a, g),
        Command::Wpd(a) => finish(g, wpd::run(a, g)?),
        Command::FareyBall(a) => finish(g, farey_ball::run(a, g)?),
    }
}

fn finish(g: &Global, (table, config): (Table, ExperimentConfig)) -> Result<(), CliError> {
    output::emit(g.out.as_deref(), &table.render(&config, g.format))
}

pub(crate) fn parse_pair<T: std::str::FromStr>(s: &str, what: &str) -> Result<(T, T), CliError> {
    let bad = || CliError::Input(format!("{what} must look like a,b; got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// `lo..hi` (inclusive) or a single number.
pub(crate) fn parse_range(s: &str, what: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Input(format!("{what} must look like lo..hi; got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_helpers() {
        assert_eq!(parse_pair::<u32>("0, 5", "surface"), Ok((0, 5)));
        assert!(parse_pair::<u32>("0;5", "surface").is_err());
        assert!(parse_pair::<u32>("a,5", "surface").is_err());
        assert_eq!(parse_range("3..6", "degrees"), Ok((3, 6)));
        assert_eq!(parse_range("4", "degrees"), Ok((4, 4)));
        assert!(parse_range("6..3", "degrees").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

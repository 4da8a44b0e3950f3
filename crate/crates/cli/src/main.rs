//! `esd`: verify, construct, search and play edge-sum distinguishing labelings.
//!
//! Output is JSON unless `--format` says otherwise. Exit codes: 0 success or
//! positive answer, 1 negative answer, 2 usage or input error, 3 search abort.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use esd_core::families::GraphFamily;
use esd_core::game::StrategyKind;

#[derive(Parser, Debug)]
#[command(name = "esd", version, about = "Edge-sum distinguishing labelings of graphs")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for search.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for random game strategies.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Abort a search after this many nodes (0 for no limit).
    #[arg(long, global = true, default_value_t = esd_core::search::DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a labeling; exits 1 if it is not ESD.
    Verify {
        /// Graph file (JSON or DOT), or - for stdin.
        graph: String,
        /// Labeling file, or - for stdin.
        labeling: String,
        /// Reject labelings that leave vertices unlabeled.
        #[arg(long)]
        require_total: bool,
    },
    /// Label a graph family with its closed-form construction.
    Construct {
        /// Family such as fan:7, grid:4x3, sunlet:5,2, kpq:2,7, tight:12.
        family: GraphFamily,
    },
    /// Exact search for ESD labelings from {1..l}.
    Search {
        graph: String,
        /// Label pool size l.
        #[arg(long = "labels", short = 'l')]
        labels: u64,
        #[arg(long, value_enum, default_value_t = Mode::First)]
        mode: Mode,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Smallest pool size admitting an ESD labeling.
    MinPool {
        graph: String,
        /// Largest pool size to try.
        #[arg(long)]
        max: u64,
    },
    /// The ESD labeling game.
    #[command(subcommand)]
    Game(GameCommand),
    /// Print the graph of a family without labels.
    Gen { family: GraphFamily },
    /// Re-encode a graph (use --format for the target).
    Convert { graph: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    First,
    Count,
    EnumIso,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GuardArgs {
    /// Largest vertex count the exhaustive solver accepts.
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Largest pool size the exhaustive solver accepts.
    #[arg(long, default_value_t = 12)]
    pub max_pool: u64,
}

#[derive(Subcommand, Debug)]
pub enum GameCommand {
    /// Play one game between two strategies and print the transcript.
    Play {
        graph: String,
        #[arg(long = "labels", short = 'l')]
        labels: u64,
        /// candidate, random, greedy or optimal.
        #[arg(long, default_value = "candidate")]
        alice: StrategyKind,
        #[arg(long, default_value = "random")]
        bob: StrategyKind,
        #[arg(long)]
        bob_starts: bool,
        #[command(flatten)]
        guard: GuardArgs,
    },
    /// Winner under optimal play, by exhaustive search.
    Solve {
        graph: String,
        #[arg(long = "labels", short = 'l')]
        labels: u64,
        #[arg(long)]
        bob_starts: bool,
        #[command(flatten)]
        guard: GuardArgs,
    },
    /// Pool size that guarantees Alice a win.
    Bound { graph: String },
    /// Replay a transcript and report the resulting status.
    Replay {
        graph: String,
        transcript: String,
        #[arg(long = "labels", short = 'l')]
        labels: u64,
        #[arg(long)]
        bob_starts: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => match render::emit(&report, cli.format) {
            Ok(()) => ExitCode::from(report.code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = Cli::try_parse_from([
            "esd", "search", "g.json", "-l", "5", "--mode", "enum-iso", "--jobs", "3",
        ])
        .unwrap();
        assert_eq!(cli.jobs, 3);
        assert!(matches!(
            cli.command,
            Command::Search {
                labels: 5,
                mode: Mode::EnumIso,
                ..
            }
        ));
        assert!(Cli::try_parse_from(["esd", "construct", "wheel:5"]).is_err());
    }
}

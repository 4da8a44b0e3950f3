use std::fmt;
use std::fs;
use std::io::Read;
use std::sync::Arc;
use std::time::Duration;

use esd_core::constructions::{construct, Constructed};
use esd_core::families::{build_graph, GraphFamily};
use esd_core::formats::{graph_to_json, labeling_to_json, parse_graph_any, parse_labeling_json, to_dot, FormatError};
use esd_core::game::{
    alice_bound, play_game, solve_game_with, GameState, GameStatus, Move, Player, SolveGuard, Strategy, StrategyKind,
};
use esd_core::search::{min_pool_size, solve, MinPool, SearchConfig, SearchMode, SearchStatus};
use esd_core::{verify_esd, Graph, Labeling};
use serde_json::{json, Value};

use crate::render::{graph_table, labeling_table};
use crate::{Cli, Command, GameCommand, GuardArgs, Mode};

/// What a command produced, in every encoding it supports.
pub struct Report {
    pub json: Value,
    pub dot: Option<String>,
    pub table: String,
    pub code: u8,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or malformed input files.
    Input(String),
    /// A resource limit stopped the computation.
    Abort(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Abort(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Abort(m) => f.write_str(m),
        }
    }
}

fn input(msg: impl fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| input(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))
    }
}

fn check_stdin_once(paths: &[&str]) -> Result<(), CliError> {
    if paths.iter().filter(|p| **p == "-").count() > 1 {
        return Err(input("only one input may be read from stdin"));
    }
    Ok(())
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    let text = read_source(path)?;
    parse_graph_any(&text).map_err(|e| input(format!("{path}: {e}")))
}

fn load_labeling(path: &str, n: usize) -> Result<Labeling, CliError> {
    let text = read_source(path)?;
    parse_labeling_json(&text, n).map_err(|e: FormatError| input(format!("{path}: {e}")))
}

fn starter(bob_starts: bool) -> Player {
    if bob_starts {
        Player::Bob
    } else {
        Player::Alice
    }
}

fn guard(args: GuardArgs) -> SolveGuard {
    SolveGuard {
        max_n: args.max_n,
        max_pool: args.max_pool,
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Verify {
            graph,
            labeling,
            require_total,
        } => {
            check_stdin_once(&[graph, labeling])?;
            let g = load_graph(graph)?;
            let phi = load_labeling(labeling, g.n())?;
            let verdict = verify_esd(&g, &phi, *require_total).map_err(input)?;
            let json = serde_json::to_value(verdict).expect("verdict serializes");
            let mut table = labeling_table(&g, &phi);
            table.push_str(&match verdict.conflict {
                None => "ESD: yes\n".to_string(),
                Some(c) => format!("ESD: no ({})\n", serde_json::to_string(&c).unwrap()),
            });
            Ok(Report {
                json,
                dot: Some(to_dot(&g, Some(&phi))),
                table,
                code: if verdict.esd { 0 } else { 1 },
            })
        }
        Command::Construct { family } => run_construct(*family),
        Command::Search {
            graph,
            labels,
            mode,
            time_limit,
        } => {
            let g = load_graph(graph)?;
            let mut cfg = SearchConfig::new(*labels)
                .mode(match mode {
                    Mode::First => SearchMode::First,
                    Mode::Count => SearchMode::Count,
                    Mode::EnumIso => SearchMode::EnumerateUpToIso,
                })
                .node_limit((cli.node_limit > 0).then_some(cli.node_limit))
                .jobs(cli.jobs.max(1));
            if let Some(secs) = time_limit {
                let limit = Duration::try_from_secs_f64(*secs).map_err(|e| input(format!("--time-limit: {e}")))?;
                cfg = cfg.time_limit(Some(limit));
            }
            let out = solve(&g, &cfg).map_err(input)?;
            let mut json = json!({
                "status": out.status.as_str(),
                "labelings": out.labelings.iter().map(labeling_to_json).collect::<Vec<_>>(),
                "nodes": out.nodes,
            });
            if *mode != Mode::First {
                json["count"] = json!(out.count);
            }
            if !out.note.is_empty() {
                json["note"] = json!(out.note);
            }
            let mut table = format!("status: {}\nnodes: {}\n", out.status.as_str(), out.nodes);
            if *mode != Mode::First {
                table.push_str(&format!("labelings: {}\n", out.count));
            }
            for (i, phi) in out.labelings.iter().enumerate() {
                table.push_str(&format!("\nlabeling {}\n{}", i + 1, labeling_table(&g, phi)));
            }
            Ok(Report {
                json,
                dot: out.labelings.first().map(|phi| to_dot(&g, Some(phi))),
                table,
                code: match out.status {
                    SearchStatus::Found => 0,
                    SearchStatus::ExhaustedNoneExists => 1,
                    SearchStatus::Aborted => 3,
                },
            })
        }
        Command::MinPool { graph, max } => {
            let g = load_graph(graph)?;
            let base = SearchConfig::new(*max)
                .node_limit((cli.node_limit > 0).then_some(cli.node_limit))
                .jobs(cli.jobs.max(1));
            match min_pool_size(&g, *max, &base) {
                Ok(MinPool::Found { pool, labeling }) => Ok(Report {
                    json: json!({"pool": pool, "labeling": labeling_to_json(&labeling)}),
                    dot: Some(to_dot(&g, Some(&labeling))),
                    table: format!("smallest pool: {pool}\n{}", labeling_table(&g, &labeling)),
                    code: 0,
                }),
                Ok(MinPool::NotFoundWithin(max)) => Ok(Report {
                    json: json!({"pool": null, "searchedUpTo": max}),
                    dot: None,
                    table: format!("no ESD labeling with pool size up to {max}\n"),
                    code: 1,
                }),
                Err(e @ esd_core::search::SearchError::Aborted { .. }) => Err(CliError::Abort(e.to_string())),
                Err(e) => Err(input(e)),
            }
        }
        Command::Game(cmd) => run_game(cli, cmd),
        Command::Gen { family } => {
            let g = build_graph(*family).map_err(input)?;
            Ok(graph_report(&g))
        }
        Command::Convert { graph } => Ok(graph_report(&load_graph(graph)?)),
    }
}

fn graph_report(g: &Graph) -> Report {
    Report {
        json: graph_to_json(g),
        dot: Some(to_dot(g, None)),
        table: graph_table(g),
        code: 0,
    }
}

fn run_construct(family: GraphFamily) -> Result<Report, CliError> {
    match construct(family).map_err(input)? {
        Constructed::Labeled(r) => Ok(Report {
            json: json!({
                "family": family.to_string(),
                "graph": graph_to_json(&r.graph),
                "labeling": labeling_to_json(&r.labeling),
                "canonical": r.canonical,
                "labelPoolSize": r.pool_size,
            }),
            dot: Some(to_dot(&r.graph, Some(&r.labeling))),
            table: format!(
                "{family}: n = {}, pool = {}, canonical = {}\n{}",
                r.graph.n(),
                r.pool_size,
                r.canonical,
                labeling_table(&r.graph, &r.labeling)
            ),
            code: 0,
        }),
        Constructed::NoneExists { graph, reason } => Ok(Report {
            json: json!({
                "family": family.to_string(),
                "graph": graph_to_json(&graph),
                "labeling": null,
                "reason": reason,
            }),
            dot: Some(to_dot(&graph, None)),
            table: format!("{family}: {reason}\n"),
            code: 1,
        }),
    }
}

fn make_strategy(kind: StrategyKind, seed: Option<u64>, g: SolveGuard) -> Strategy {
    match kind {
        StrategyKind::ExhaustiveOptimal => Strategy::optimal_with_guard(g),
        other => Strategy::new(other, seed),
    }
}

fn moves_table(moves: &[Move], first: Player) -> String {
    let mut out = String::new();
    let mut player = first;
    for (i, m) in moves.iter().enumerate() {
        out.push_str(&format!(
            "{:>3}  {:<5}  v{} <- {}\n",
            i + 1,
            player.to_string(),
            m.vertex,
            m.label
        ));
        player = player.other();
    }
    out
}

fn run_game(cli: &Cli, cmd: &GameCommand) -> Result<Report, CliError> {
    match cmd {
        GameCommand::Play {
            graph,
            labels,
            alice,
            bob,
            bob_starts,
            guard: guard_args,
        } => {
            let g = Arc::new(load_graph(graph)?);
            let sg = guard(*guard_args);
            let mut a = make_strategy(*alice, cli.seed, sg);
            let mut b = make_strategy(*bob, cli.seed.map(|s| s.wrapping_add(1)), sg);
            let rec = play_game(Arc::clone(&g), *labels, &mut a, &mut b, starter(*bob_starts)).map_err(input)?;
            let phi = rec.final_state.labeling();
            let mut table = moves_table(&rec.moves, starter(*bob_starts));
            table.push_str(&format!("winner: {}\n", rec.winner));
            Ok(Report {
                json: json!({"moves": rec.moves, "winner": rec.winner}),
                dot: Some(to_dot(&g, Some(&phi))),
                table,
                code: 0,
            })
        }
        GameCommand::Solve {
            graph,
            labels,
            bob_starts,
            guard: guard_args,
        } => {
            let g = load_graph(graph)?;
            let sol = solve_game_with(&g, *labels, starter(*bob_starts), guard(*guard_args)).map_err(input)?;
            Ok(Report {
                json: serde_json::to_value(sol).expect("solution serializes"),
                dot: None,
                table: format!("winner: {}\npositions: {}\n", sol.winner, sol.strategy_tree_size),
                code: 0,
            })
        }
        GameCommand::Bound { graph } => {
            let g = load_graph(graph)?;
            let bound = alice_bound(&g);
            Ok(Report {
                json: json!({ "bound": bound }),
                dot: None,
                table: format!("bound: {bound}\n"),
                code: 0,
            })
        }
        GameCommand::Replay {
            graph,
            transcript,
            labels,
            bob_starts,
        } => {
            check_stdin_once(&[graph, transcript])?;
            let g = Arc::new(load_graph(graph)?);
            let text = read_source(transcript)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                input(format!(
                    "{transcript}: JSON error at line {}, column {}: {e}",
                    e.line(),
                    e.column()
                ))
            })?;
            let moves: Vec<Move> = value
                .get("moves")
                .cloned()
                .ok_or_else(|| input(format!("{transcript}: missing \"moves\"")))
                .and_then(|m| serde_json::from_value(m).map_err(|e| input(format!("{transcript}: {e}"))))?;
            let claimed: Option<Player> = match value.get("winner") {
                None | Some(Value::Null) => None,
                Some(w) => Some(serde_json::from_value(w.clone()).map_err(|e| input(format!("{transcript}: {e}")))?),
            };
            match GameState::replay(Arc::clone(&g), *labels, starter(*bob_starts), &moves) {
                Ok(state) => {
                    let status = state.status();
                    let winner = status.winner();
                    let agrees = claimed.is_none() || claimed == winner;
                    Ok(Report {
                        json: json!({
                            "valid": true,
                            "status": status,
                            "winner": winner,
                            "matchesClaimedWinner": agrees,
                        }),
                        dot: Some(to_dot(&g, Some(&state.labeling()))),
                        table: format!(
                            "{}status: {}\n",
                            moves_table(&moves, starter(*bob_starts)),
                            status_name(status)
                        ),
                        code: if agrees { 0 } else { 1 },
                    })
                }
                Err(e) => Ok(Report {
                    json: json!({"valid": false, "reason": e.to_string()}),
                    dot: None,
                    table: format!("invalid transcript: {e}\n"),
                    code: 1,
                }),
            }
        }
    }
}

fn status_name(s: GameStatus) -> &'static str {
    match s {
        GameStatus::Ongoing => "ongoing",
        GameStatus::AliceWon => "Alice won",
        GameStatus::BobWon => "Bob won",
    }
}

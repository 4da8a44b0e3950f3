use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use esd_core::board::MoveError;
use esd_core::families::{build_graph, GraphFamily};
use esd_core::formats::{graph_to_json, labeling_to_json, GraphJson};
use esd_core::game::{GameError, GameState, GameStatus, Move, Player, SolveGuard, Strategy, StrategyKind};
use esd_core::{Graph, GraphError, Label};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

pub const MAX_SESSION_VERTICES: usize = 400;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Family(String),
    Graph(GraphJson),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CreateSession {
    pub graph: GraphSpec,
    /// Pool size; defaults to the vertex count.
    pub l: Option<Label>,
    /// The side the human plays.
    pub side: Player,
    /// Engine strategy; defaults to the candidate strategy for Alice and
    /// the greedy blocker for Bob.
    pub strategy: Option<StrategyKind>,
    /// Who moves first; Alice by default.
    pub starter: Option<Player>,
    pub seed: Option<u64>,
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("bad graph family {0:?}: {1}")]
    Family(String, GraphError),
    #[error("invalid graph: {0}")]
    Graph(GraphError),
    #[error("graph has {0} vertices; sessions allow at most {MAX_SESSION_VERTICES}")]
    TooLarge(usize),
    #[error(transparent)]
    Game(GameError),
    #[error("{0}")]
    Strategy(String),
}

/// One game between a human and the engine.
pub struct Session {
    state: GameState,
    human: Player,
    engine: Strategy,
    family: Option<String>,
    created_at: u64,
}

pub struct MoveOutcome {
    pub accepted: bool,
    pub out_of_turn: bool,
    pub reason: Option<String>,
    pub conflict: Option<MoveError>,
    pub engine_reply: Option<Move>,
}

impl MoveOutcome {
    fn rejected(reason: impl Into<String>, conflict: Option<MoveError>, out_of_turn: bool) -> Self {
        MoveOutcome {
            accepted: false,
            out_of_turn,
            reason: Some(reason.into()),
            conflict,
            engine_reply: None,
        }
    }
}

fn resolve_graph(spec: GraphSpec) -> Result<(Graph, Option<String>), SessionError> {
    let mut family_name = None;
    let g = match spec {
        GraphSpec::Family(s) => {
            let family: GraphFamily = s.parse().map_err(|e| SessionError::Family(s.clone(), e))?;
            if family.vertex_count() > MAX_SESSION_VERTICES {
                return Err(SessionError::TooLarge(family.vertex_count()));
            }
            family_name = Some(family.to_string());
            build_graph(family).map_err(|e| SessionError::Family(s, e))?
        }
        GraphSpec::Graph(j) => Graph::try_from(j).map_err(SessionError::Graph)?,
    };
    if g.n() > MAX_SESSION_VERTICES {
        return Err(SessionError::TooLarge(g.n()));
    }
    Ok((g, family_name))
}

impl Session {
    /// Builds the session and, if the engine starts, plays its opening move.
    pub fn create(req: CreateSession) -> Result<(Session, Option<Move>), SessionError> {
        let (graph, family) = resolve_graph(req.graph)?;
        let graph = Arc::new(graph);
        let pool = req.l.unwrap_or(graph.n() as Label);
        let engine_side = req.side.other();
        let kind = req.strategy.unwrap_or(match engine_side {
            Player::Alice => StrategyKind::AliceCandidateSet,
            Player::Bob => StrategyKind::GreedyBlocker,
        });
        if kind == StrategyKind::ExhaustiveOptimal {
            let guard = SolveGuard::default();
            if graph.n() > guard.max_n || pool > guard.max_pool {
                return Err(SessionError::Strategy(format!(
                    "optimal engine supports n <= {} and l <= {}",
                    guard.max_n, guard.max_pool
                )));
            }
        }
        let state = GameState::new(graph, pool, req.starter.unwrap_or(Player::Alice)).map_err(SessionError::Game)?;
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let mut session = Session {
            state,
            human: req.side,
            engine: Strategy::new(kind, req.seed),
            family,
            created_at,
        };
        let opening = session.engine_turn();
        Ok((session, opening))
    }

    pub fn status(&self) -> GameStatus {
        self.state.status()
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn human(&self) -> Player {
        self.human
    }

    /// The human's legal moves, empty unless it is their turn.
    pub fn human_legal_moves(&self) -> Vec<Move> {
        if self.state.status() == GameStatus::Ongoing && self.state.turn() == self.human {
            self.state.candidate_moves()
        } else {
            Vec::new()
        }
    }

    /// Plays the engine's move if it is the engine's turn. A strategy that
    /// cannot produce a move falls back to the first legal one.
    fn engine_turn(&mut self) -> Option<Move> {
        if self.state.status() != GameStatus::Ongoing || self.state.turn() == self.human {
            return None;
        }
        let m = match self.engine.choose(&self.state) {
            Ok(m) if self.state.check_move(m).is_ok() => m,
            _ => *self.state.legal_moves().first()?,
        };
        self.state.play(m).expect("engine move is legal");
        Some(m)
    }

    pub fn human_move(&mut self, m: Move) -> MoveOutcome {
        if self.state.status() != GameStatus::Ongoing {
            return MoveOutcome::rejected("the game is over", None, true);
        }
        if self.state.turn() != self.human {
            return MoveOutcome::rejected("not your turn", None, true);
        }
        match self.state.check_move(m) {
            Ok(()) => {}
            Err(GameError::Illegal(e)) => return MoveOutcome::rejected(e.to_string(), Some(e), false),
            Err(e) => return MoveOutcome::rejected(e.to_string(), None, false),
        }
        self.state.play(m).expect("checked move is legal");
        MoveOutcome {
            accepted: true,
            out_of_turn: false,
            reason: None,
            conflict: None,
            engine_reply: self.engine_turn(),
        }
    }

    pub fn snapshot(&self) -> Value {
        let s = &self.state;
        let g = s.graph();
        let board = s.board();
        let weights: Vec<Value> = board
            .weight_edges()
            .iter()
            .map(|(w, e)| json!({"edge": e, "weight": w}))
            .collect();
        let mut used: Vec<Label> = s.labeling().assigned().map(|(_, a)| a).collect();
        used.sort_unstable();
        json!({
            "graph": graph_to_json(g),
            "family": self.family,
            "l": s.pool(),
            "human": self.human,
            "engine": self.engine.kind(),
            "starter": s.starter(),
            "turn": s.turn(),
            "status": s.status(),
            "winner": s.status().winner(),
            "labeling": labeling_to_json(&s.labeling()),
            "usedLabels": used,
            "weights": weights,
            "transcript": s.transcript(),
            "legalMoves": self.human_legal_moves(),
            "createdAt": self.created_at,
        })
    }
}

//! The Maker-Breaker ESD labeling game.
//!
//! Alice and Bob alternate; each move puts an unused label from
//! `{1, ..., l}` on a free vertex, and a move is legal when all edge-weights
//! stay distinct. The game ends when the labeling is complete (Alice wins)
//! or when no legal move is left (Bob wins).
//!
//! Game states keep the per-vertex candidate sets of [`Board`], which are
//! exactly the legal labels of each free vertex. Alice's candidate-set
//! strategy plays the smallest candidate of the lowest free vertex; with at
//! least [`alice_bound`] labels no candidate set empties out before the end.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Board, MoveError, PoolTooLarge};
use crate::graph::{Graph, Vertex};
use crate::labeling::{Label, Labeling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Alice => "Alice",
            Player::Bob => "Bob",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alice" => Ok(Player::Alice),
            "bob" => Ok(Player::Bob),
            _ => Err(format!("unknown player {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameStatus {
    #[serde(rename = "ongoing")]
    Ongoing,
    AliceWon,
    BobWon,
}

impl GameStatus {
    pub fn winner(self) -> Option<Player> {
        match self {
            GameStatus::Ongoing => None,
            GameStatus::AliceWon => Some(Player::Alice),
            GameStatus::BobWon => Some(Player::Bob),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    #[serde(rename = "v")]
    pub vertex: Vertex,
    pub label: Label,
}

impl Move {
    pub fn new(vertex: Vertex, label: Label) -> Self {
        Move { vertex, label }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}<-{}", self.vertex, self.label)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error(transparent)]
    Pool(#[from] PoolTooLarge),
    #[error("the game is over")]
    GameOver,
    #[error("illegal move: {0}")]
    Illegal(#[from] MoveError),
    #[error("{player} strategy {strategy} made an illegal move {attempted}: {reason}")]
    StrategyFault {
        player: Player,
        strategy: StrategyKind,
        attempted: Move,
        reason: MoveError,
    },
    #[error("candidate set of v{vertex} is empty")]
    NoCandidate { vertex: Vertex },
    #[error("no legal move")]
    NoLegalMove,
    #[error("game too large to solve: n = {n}, l = {pool} (limits n <= {max_n}, l <= {max_pool})")]
    GuardExceeded {
        n: usize,
        pool: Label,
        max_n: usize,
        max_pool: Label,
    },
}

/// A position of the game. Cheap to clone; moves produce new states.
#[derive(Clone, Debug)]
pub struct GameState {
    graph: Arc<Graph>,
    board: Board,
    starter: Player,
    turn: Player,
    status: GameStatus,
    transcript: Vec<Move>,
}

impl GameState {
    pub fn new(graph: Arc<Graph>, pool: Label, starter: Player) -> Result<Self, GameError> {
        let board = Board::new(&graph, pool)?;
        let mut state = GameState {
            graph,
            board,
            starter,
            turn: starter,
            status: GameStatus::Ongoing,
            transcript: Vec::new(),
        };
        state.refresh_status();
        Ok(state)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    pub fn pool(&self) -> Label {
        self.board.pool()
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn starter(&self) -> Player {
        self.starter
    }

    pub fn turn(&self) -> Player {
        self.turn
    }

    pub fn status(&self) -> GameStatus {
        self.status
    }

    pub fn transcript(&self) -> &[Move] {
        &self.transcript
    }

    pub fn labeling(&self) -> Labeling {
        self.board.to_labeling()
    }

    fn refresh_status(&mut self) {
        self.status = if self.board.is_complete() {
            GameStatus::AliceWon
        } else if self.board.free_vertices().all(|v| self.board.candidates(v).is_empty()) {
            GameStatus::BobWon
        } else {
            GameStatus::Ongoing
        };
    }

    /// Why `m` is illegal here, if it is. Checked directly against the
    /// labeling, not through the candidate sets.
    pub fn check_move(&self, m: Move) -> Result<(), GameError> {
        if self.status != GameStatus::Ongoing {
            return Err(GameError::GameOver);
        }
        Ok(self.board.check_move(&self.graph, m.vertex, m.label)?)
    }

    /// Every legal move, ordered by vertex then label. Empty once the game
    /// is over.
    pub fn legal_moves(&self) -> Vec<Move> {
        if self.status != GameStatus::Ongoing {
            return Vec::new();
        }
        let mut out = Vec::new();
        for v in self.board.free_vertices() {
            for a in 1..=self.pool() {
                if self.board.check_move(&self.graph, v, a).is_ok() {
                    out.push(Move::new(v, a));
                }
            }
        }
        out
    }

    /// Legal moves read off the candidate sets; same order as [`legal_moves`](Self::legal_moves).
    pub fn candidate_moves(&self) -> Vec<Move> {
        if self.status != GameStatus::Ongoing {
            return Vec::new();
        }
        self.board
            .free_vertices()
            .flat_map(|v| self.board.candidates(v).iter().map(move |a| Move::new(v, a)))
            .collect()
    }

    /// The state after `m`, or why `m` is illegal.
    pub fn apply_move(&self, m: Move) -> Result<GameState, GameError> {
        let mut next = self.clone();
        next.play(m)?;
        Ok(next)
    }

    /// Plays `m` in place.
    pub fn play(&mut self, m: Move) -> Result<(), GameError> {
        self.check_move(m)?;
        self.play_unchecked(m);
        Ok(())
    }

    fn play_unchecked(&mut self, m: Move) {
        self.board.place_unchecked(&self.graph, m.vertex, m.label);
        self.transcript.push(m);
        self.turn = self.turn.other();
        self.refresh_status();
    }

    fn child(&self, m: Move) -> GameState {
        let mut next = self.clone();
        next.play_unchecked(m);
        next
    }

    /// Replays a transcript from the empty board.
    pub fn replay(graph: Arc<Graph>, pool: Label, starter: Player, moves: &[Move]) -> Result<GameState, GameError> {
        let mut state = GameState::new(graph, pool, starter)?;
        for &m in moves {
            state.play(m)?;
        }
        Ok(state)
    }
}

/// Alice's candidate-set move: the smallest label in `S_v` of the lowest
/// free vertex `v`.
///
/// Fails with [`GameError::NoCandidate`] when that set is empty; from then
/// on Alice cannot complete the labeling.
pub fn alice_candidate_strategy(s: &GameState) -> Result<Move, GameError> {
    if s.status() != GameStatus::Ongoing {
        return Err(GameError::GameOver);
    }
    let v = s.board.free_vertices().next().ok_or(GameError::GameOver)?;
    let a = s
        .board
        .candidates(v)
        .min()
        .ok_or(GameError::NoCandidate { vertex: v })?;
    Ok(Move::new(v, a))
}

fn binomial2(m: u64) -> u64 {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

/// Pool size from which Alice's candidate-set strategy always completes
/// the labeling: `(Δ² + 1)n + Δ·C(n-1, 2)`, or `5n` for paths when smaller.
pub fn alice_bound(g: &Graph) -> u64 {
    let n = g.n() as u64;
    let delta = g.max_degree() as u64;
    let general = (delta * delta + 1) * n + delta * binomial2(n.saturating_sub(1));
    if g.is_path() {
        general.min(5 * n)
    } else {
        general
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StrategyKind {
    #[serde(alias = "candidate")]
    AliceCandidateSet,
    #[serde(alias = "random")]
    UniformRandom,
    #[serde(alias = "greedy")]
    GreedyBlocker,
    #[serde(alias = "optimal")]
    ExhaustiveOptimal,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::AliceCandidateSet => "candidate",
            StrategyKind::UniformRandom => "random",
            StrategyKind::GreedyBlocker => "greedy",
            StrategyKind::ExhaustiveOptimal => "optimal",
        })
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "candidate" | "aliceCandidateSet" => Ok(StrategyKind::AliceCandidateSet),
            "random" | "uniformRandom" => Ok(StrategyKind::UniformRandom),
            "greedy" | "greedyBlocker" => Ok(StrategyKind::GreedyBlocker),
            "optimal" | "exhaustiveOptimal" => Ok(StrategyKind::ExhaustiveOptimal),
            _ => Err(format!(
                "unknown strategy {s:?} (expected candidate, random, greedy or optimal)"
            )),
        }
    }
}

/// A move chooser. Always returns a legal move while one exists.
#[derive(Clone, Debug)]
pub struct Strategy {
    kind: StrategyKind,
    rng: ChaCha8Rng,
    solver: Option<GameSolver>,
}

impl Strategy {
    pub fn new(kind: StrategyKind, seed: Option<u64>) -> Self {
        Strategy {
            kind,
            rng: ChaCha8Rng::seed_from_u64(seed.unwrap_or(0)),
            solver: None,
        }
    }

    /// Optimal play with a custom size guard.
    pub fn optimal_with_guard(guard: SolveGuard) -> Self {
        Strategy {
            kind: StrategyKind::ExhaustiveOptimal,
            rng: ChaCha8Rng::seed_from_u64(0),
            solver: Some(GameSolver::new(guard)),
        }
    }

    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    pub fn choose(&mut self, s: &GameState) -> Result<Move, GameError> {
        if s.status() != GameStatus::Ongoing {
            return Err(GameError::GameOver);
        }
        let moves = s.candidate_moves();
        let first = *moves.first().ok_or(GameError::NoLegalMove)?;
        match self.kind {
            StrategyKind::AliceCandidateSet => match alice_candidate_strategy(s) {
                Ok(m) => Ok(m),
                Err(GameError::NoCandidate { .. }) => Ok(first),
                Err(e) => Err(e),
            },
            StrategyKind::UniformRandom => Ok(*moves.choose(&mut self.rng).expect("non-empty")),
            StrategyKind::GreedyBlocker => Ok(moves
                .iter()
                .copied()
                .min_by_key(|&m| s.child(m).board.candidate_mass())
                .expect("non-empty")),
            StrategyKind::ExhaustiveOptimal => {
                let solver = self
                    .solver
                    .get_or_insert_with(|| GameSolver::new(SolveGuard::default()));
                solver.best_move(s)?.ok_or(GameError::NoLegalMove)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GameRecord {
    pub moves: Vec<Move>,
    pub winner: Player,
    #[serde(skip)]
    pub final_state: GameState,
}

/// Plays a full game and returns the winner with the transcript.
pub fn play_game(
    graph: Arc<Graph>,
    pool: Label,
    alice: &mut Strategy,
    bob: &mut Strategy,
    starter: Player,
) -> Result<GameRecord, GameError> {
    let mut state = GameState::new(graph, pool, starter)?;
    while state.status() == GameStatus::Ongoing {
        let player = state.turn();
        let strategy = match player {
            Player::Alice => &mut *alice,
            Player::Bob => &mut *bob,
        };
        let m = strategy.choose(&state)?;
        if let Err(e) = state.check_move(m) {
            let reason = match e {
                GameError::Illegal(r) => r,
                other => return Err(other),
            };
            return Err(GameError::StrategyFault {
                player,
                strategy: strategy.kind(),
                attempted: m,
                reason,
            });
        }
        state.play_unchecked(m);
    }
    Ok(GameRecord {
        moves: state.transcript().to_vec(),
        winner: state.status().winner().expect("finished game has a winner"),
        final_state: state,
    })
}

/// Size limits for exhaustive game solving.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveGuard {
    pub max_n: usize,
    pub max_pool: Label,
}

impl Default for SolveGuard {
    fn default() -> Self {
        SolveGuard { max_n: 6, max_pool: 12 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GameSolution {
    pub winner: Player,
    /// Distinct positions evaluated.
    pub strategy_tree_size: usize,
}

/// Minimax over the game tree, memoized on the partial labeling.
///
/// Whose turn it is follows from the number of labeled vertices, so one
/// solver instance serves one (graph, pool, starter) triple; it resets
/// itself when asked about a different one.
#[derive(Clone, Debug)]
pub struct GameSolver {
    guard: SolveGuard,
    memo: HashMap<Vec<u8>, bool>,
    context: Option<(Arc<Graph>, Label, Player)>,
}

impl GameSolver {
    pub fn new(guard: SolveGuard) -> Self {
        GameSolver {
            guard,
            memo: HashMap::new(),
            context: None,
        }
    }

    pub fn positions(&self) -> usize {
        self.memo.len()
    }

    fn prepare(&mut self, s: &GameState) -> Result<(), GameError> {
        let n = s.graph().n();
        if n > self.guard.max_n || s.pool() > self.guard.max_pool || s.pool() > u8::MAX as Label {
            return Err(GameError::GuardExceeded {
                n,
                pool: s.pool(),
                max_n: self.guard.max_n,
                max_pool: self.guard.max_pool,
            });
        }
        let same = self.context.as_ref().is_some_and(|(g, l, p)| {
            (Arc::ptr_eq(g, &s.graph) || **g == *s.graph) && *l == s.pool() && *p == s.starter()
        });
        if !same {
            self.memo.clear();
            self.context = Some((s.shared_graph(), s.pool(), s.starter()));
        }
        Ok(())
    }

    /// Whether Alice wins from `s` under optimal play by both sides.
    pub fn alice_wins(&mut self, s: &GameState) -> Result<bool, GameError> {
        self.prepare(s)?;
        Ok(self.search(s))
    }

    /// A move for the player to move that keeps a forced win, else the
    /// first legal move; `None` when no move is legal.
    pub fn best_move(&mut self, s: &GameState) -> Result<Option<Move>, GameError> {
        self.prepare(s)?;
        let mover = s.turn();
        let moves = s.candidate_moves();
        for &m in &moves {
            let alice_wins = self.search(&s.child(m));
            if alice_wins == (mover == Player::Alice) {
                return Ok(Some(m));
            }
        }
        Ok(moves.first().copied())
    }

    fn key(s: &GameState) -> Vec<u8> {
        (1..=s.graph().n())
            .map(|v| s.board.label(v).unwrap_or(0) as u8)
            .collect()
    }

    fn search(&mut self, s: &GameState) -> bool {
        match s.status() {
            GameStatus::AliceWon => return true,
            GameStatus::BobWon => return false,
            GameStatus::Ongoing => {}
        }
        // candidate sets only shrink, so a vertex with none can never be labeled
        if s.board.has_dead_vertex() {
            return false;
        }
        let key = Self::key(s);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let alice_to_move = s.turn() == Player::Alice;
        let mut result = !alice_to_move;
        for m in s.candidate_moves() {
            let r = self.search(&s.child(m));
            if r == alice_to_move {
                result = r;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }
}

/// Exact winner of the game on `g` with pool `1..=pool`, Alice starting.
pub fn solve_game(g: &Graph, pool: Label) -> Result<GameSolution, GameError> {
    solve_game_with(g, pool, Player::Alice, SolveGuard::default())
}

pub fn solve_game_with(g: &Graph, pool: Label, starter: Player, guard: SolveGuard) -> Result<GameSolution, GameError> {
    let state = GameState::new(Arc::new(g.clone()), pool, starter)?;
    solve_game_from(&state, guard)
}

/// Exact winner from an arbitrary position.
pub fn solve_game_from(state: &GameState, guard: SolveGuard) -> Result<GameSolution, GameError> {
    let mut solver = GameSolver::new(guard);
    let alice = solver.alice_wins(state)?;
    Ok(GameSolution {
        winner: if alice { Player::Alice } else { Player::Bob },
        strategy_tree_size: solver.positions(),
    })
}

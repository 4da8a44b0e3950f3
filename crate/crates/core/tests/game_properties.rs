use std::sync::Arc;

use esd_core::catalog::{connected_graphs, connected_graphs_up_to};
use esd_core::families::{build_graph, GraphFamily};
use esd_core::game::{
    alice_bound, alice_candidate_strategy, play_game, solve_game, GameError, GameState, GameStatus, Move, Player,
    Strategy, StrategyKind,
};
use esd_core::search::{solve, SearchConfig, SearchStatus};
use esd_core::{verify_esd, Graph, Label};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every (free vertex, unused label) pair is legal exactly when the extended
/// labeling still verifies, and the legal ones are exactly `legal_moves`.
#[test]
fn legality_matches_verifier() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let catalog = connected_graphs_up_to(6);
    for _ in 0..600 {
        let g = Arc::new(catalog.choose(&mut rng).unwrap().clone());
        let pool = rng.gen_range(g.n()..=2 * g.n() + 2) as Label;
        let mut s = GameState::new(Arc::clone(&g), pool, Player::Alice).unwrap();
        loop {
            let phi = s.labeling();
            let mut expected = Vec::new();
            for v in g.vertices().filter(|&v| phi.get(v).is_none()) {
                for a in 1..=pool {
                    let mut ext = phi.clone();
                    let legal = ext.set(v, a).is_ok() && verify_esd(&g, &ext, false).unwrap().esd;
                    assert_eq!(s.check_move(Move::new(v, a)).is_ok(), legal);
                    if legal {
                        expected.push(Move::new(v, a));
                    }
                }
            }
            assert_eq!(s.legal_moves(), expected);
            assert_eq!(s.candidate_moves(), expected);
            let done = s.status() != GameStatus::Ongoing;
            assert_eq!(done, expected.is_empty() || phi.is_total());
            if done {
                break;
            }
            let m = *expected.choose(&mut rng).unwrap();
            s = s.apply_move(m).unwrap();
        }
    }
}

fn candidate_game(g: &Arc<Graph>, pool: Label, bob: &mut Strategy) -> Result<GameState, GameError> {
    let mut s = GameState::new(Arc::clone(g), pool, Player::Alice)?;
    while s.status() == GameStatus::Ongoing {
        let m = match s.turn() {
            Player::Alice => alice_candidate_strategy(&s)?,
            Player::Bob => bob.choose(&s)?,
        };
        s = s.apply_move(m)?;
    }
    Ok(s)
}

#[test]
fn alice_bound_suffices_on_six_vertex_catalog() {
    for g in connected_graphs(6) {
        let g = Arc::new(g);
        let pool = alice_bound(&g);
        let mut bobs: Vec<Strategy> = vec![Strategy::new(StrategyKind::GreedyBlocker, None)];
        bobs.extend((0..100).map(|seed| Strategy::new(StrategyKind::UniformRandom, Some(seed))));
        for bob in &mut bobs {
            let end = candidate_game(&g, pool, bob).unwrap_or_else(|e| panic!("{:?}: {e}", g.edges()));
            assert_eq!(end.status(), GameStatus::AliceWon);
        }
    }
}

#[test]
fn no_canonical_labeling_means_bob_wins() {
    let mut bob_cases = 0;
    for g in connected_graphs_up_to(6) {
        let n = g.n() as Label;
        let exists = solve(&g, &SearchConfig::new(n)).unwrap().status == SearchStatus::Found;
        let winner = solve_game(&g, n).unwrap().winner;
        if !exists {
            assert_eq!(winner, Player::Bob, "{:?}", g.edges());
            bob_cases += 1;
        }
    }
    assert!(bob_cases > 5);
}

#[test]
fn transcripts_replay_to_the_same_state() {
    let kinds = [
        StrategyKind::AliceCandidateSet,
        StrategyKind::UniformRandom,
        StrategyKind::GreedyBlocker,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for spec in ["cycle:7", "grid:3x3", "fan:6", "kpq:2,4", "sunlet:3,2", "tree:12,5"] {
        let g = Arc::new(build_graph(spec.parse().unwrap()).unwrap());
        for _ in 0..30 {
            let pool = rng.gen_range(g.n()..=3 * g.n()) as Label;
            let starter = if rng.gen() { Player::Alice } else { Player::Bob };
            let mut a = Strategy::new(*kinds.choose(&mut rng).unwrap(), Some(rng.gen()));
            let mut b = Strategy::new(*kinds.choose(&mut rng).unwrap(), Some(rng.gen()));
            let rec = play_game(Arc::clone(&g), pool, &mut a, &mut b, starter).unwrap();
            let replayed = GameState::replay(Arc::clone(&g), pool, starter, &rec.moves).unwrap();
            assert_eq!(replayed.status().winner(), Some(rec.winner));
            assert_eq!(replayed.labeling(), rec.final_state.labeling());
            assert_eq!(replayed.transcript(), rec.final_state.transcript());
        }
    }
}

#[test]
fn fan_eight_is_lost_for_alice_whatever_she_does() {
    let g = Arc::new(build_graph(GraphFamily::Fan(8)).unwrap());
    for seed in 0..50 {
        let mut a = Strategy::new(StrategyKind::UniformRandom, Some(seed));
        let mut b = Strategy::new(StrategyKind::UniformRandom, Some(seed + 1));
        let rec = play_game(Arc::clone(&g), 8, &mut a, &mut b, Player::Alice).unwrap();
        assert_eq!(rec.winner, Player::Bob);
    }
}

#[test]
fn optimal_strategies_realize_the_solved_winner() {
    for g in connected_graphs(4) {
        let g = Arc::new(g);
        for pool in 4..=6 {
            let want = solve_game(&g, pool).unwrap().winner;
            let mut a = Strategy::new(StrategyKind::ExhaustiveOptimal, None);
            let mut b = Strategy::new(StrategyKind::ExhaustiveOptimal, None);
            let rec = play_game(Arc::clone(&g), pool, &mut a, &mut b, Player::Alice).unwrap();
            assert_eq!(rec.winner, want, "{:?} l = {pool}", g.edges());
            // the winner's optimal strategy also beats random play
            for seed in 0..5 {
                let mut opt = Strategy::new(StrategyKind::ExhaustiveOptimal, None);
                let mut rnd = Strategy::new(StrategyKind::UniformRandom, Some(seed));
                let rec = match want {
                    Player::Alice => play_game(Arc::clone(&g), pool, &mut opt, &mut rnd, Player::Alice),
                    Player::Bob => play_game(Arc::clone(&g), pool, &mut rnd, &mut opt, Player::Alice),
                }
                .unwrap();
                assert_eq!(rec.winner, want);
            }
        }
    }
}

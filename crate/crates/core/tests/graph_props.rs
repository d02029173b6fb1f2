mod common;

use std::collections::BTreeMap;

use common::{cycle, improving, outcome_of_cycle, parity_winner, positional_machines, Machine};
use eqtransfer::graph::{
    multi_outcome_ne, play_of, solve_parity, zielonka, Arena, ColorSet, MultiOutcomeGraphGame, OutcomeRule,
};
use eqtransfer::random::{random_acyclic, random_arena, random_finite_memory, seeded};
use eqtransfer::{OutcomeSet, Player, PreferenceProfile, SubsetWord};
use proptest::prelude::*;
use rand::Rng;

fn prefs<R: Rng>(rng: &mut R, n: usize) -> PreferenceProfile {
    let o = OutcomeSet::new(n).unwrap();
    let density: [f64; 2] = [rng.gen(), rng.gen()];
    PreferenceProfile::new(density.map(|d| random_acyclic(rng, &o, d)).to_vec()).unwrap()
}

fn priority_game(seed: u64) -> MultiOutcomeGraphGame {
    let mut rng = seeded(seed);
    let vertices = rng.gen_range(1..=5);
    let arena = random_arena(&mut rng, vertices, 4, 2);
    let n = rng.gen_range(1..=4);
    let map: BTreeMap<usize, usize> = arena
        .occurring_colors()
        .into_iter()
        .map(|c| (c, rng.gen_range(0..n)))
        .collect();
    let start = rng.gen_range(0..arena.vertex_count());
    let p = prefs(&mut rng, n);
    MultiOutcomeGraphGame::new(arena, start, OutcomeRule::Priority { map, bottom: 0 }, p).unwrap()
}

fn muller_game(seed: u64) -> MultiOutcomeGraphGame {
    let mut rng = seeded(seed);
    let vertices = rng.gen_range(1..=4);
    let arena = random_arena(&mut rng, vertices, 3, 2);
    let n = rng.gen_range(1..=3);
    let occurring = ColorSet::from_colors(arena.occurring_colors()).unwrap();
    let map: BTreeMap<ColorSet, usize> = occurring
        .subsets()
        .filter(|s| !s.is_empty())
        .map(|s| (s, rng.gen_range(0..n)))
        .collect();
    let start = rng.gen_range(0..arena.vertex_count());
    let p = prefs(&mut rng, n);
    MultiOutcomeGraphGame::new(arena, start, OutcomeRule::Muller { map, default: None }, p).unwrap()
}

fn beats_every_positional(arena: &Arena, start: usize, winner: Player, strategy: &Machine) -> bool {
    positional_machines(arena, winner.opponent()).iter().all(|other| {
        let w = match winner {
            Player::One => parity_winner(arena, start, strategy, other),
            Player::Two => parity_winner(arena, start, other, strategy),
        };
        w == winner
    })
}

fn check_equilibrium(game: &MultiOutcomeGraphGame) -> Result<(), TestCaseError> {
    let eq = multi_outcome_ne(game).unwrap();
    prop_assert!(eq.counter.winner_calls <= game.outcome_count());
    let [s1, s2] = eq.profile.machines(game.arena());
    let [m1, m2] = [Machine::of(&s1), Machine::of(&s2)];
    prop_assert_eq!(common::play_outcome(game, &m1, &m2), eq.outcome);
    for player in Player::BOTH {
        let dev = improving(game, [&m1, &m2], player, positional_machines(game.arena(), player));
        prop_assert_eq!(dev, None, "{} improves", player);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn parity_winner_beats_all_positional_opponents(seed: u64) {
        let mut rng = seeded(seed);
        let vertices = rng.gen_range(1..=6);
    let arena = random_arena(&mut rng, vertices, 5, 2);
        let regions = zielonka(&arena);
        for start in 0..arena.vertex_count() {
            let sol = solve_parity(&arena, start);
            prop_assert_eq!(sol.winner, regions.winner[start]);
            let strategy = Machine::positional(&arena, sol.strategy.moves());
            prop_assert!(beats_every_positional(&arena, start, sol.winner, &strategy));
        }
    }

    #[test]
    fn renaming_preserves_labelled_outcome(seed: u64, label_bits: u64) {
        let game = priority_game(seed);
        let label = SubsetWord::from_mask(game.outcome_count(), label_bits & ((1 << game.outcome_count()) - 1));
        let renamed = game.renamed_parity_arena(&label);
        let arena = game.arena();
        for a in positional_machines(arena, Player::One) {
            for b in positional_machines(arena, Player::Two) {
                let o = outcome_of_cycle(&game, &cycle(arena, game.start(), &a, &b));
                let expected = if label.contains(o) { Player::One } else { Player::Two };
                prop_assert_eq!(parity_winner(&renamed, game.start(), &a, &b), expected);
            }
        }
    }

    #[test]
    fn priority_equilibria_resist_positional_deviations(seed: u64) {
        check_equilibrium(&priority_game(seed))?;
    }

    #[test]
    fn muller_equilibria_resist_positional_deviations(seed: u64) {
        check_equilibrium(&muller_game(seed))?;
    }

    #[test]
    fn clusters_match_simulated_cycles(seed: u64) {
        let mut rng = seeded(seed);
        let vertices = rng.gen_range(1..=6);
    let arena = random_arena(&mut rng, vertices, 6, 3);
        let start = rng.gen_range(0..arena.vertex_count());
        let memory: [usize; 2] = [rng.gen_range(1..=3), rng.gen_range(1..=3)];
        let s1 = random_finite_memory(&arena, Player::One, memory[0], &mut rng);
        let s2 = random_finite_memory(&arena, Player::Two, memory[1], &mut rng);
        let cluster = play_of(&arena, start, &s1, &s2).cluster(&arena).unwrap();
        prop_assert!(!cluster.is_empty());
        let simulated = cycle(&arena, start, &Machine::of(&s1), &Machine::of(&s2));
        let expected = ColorSet::from_colors(simulated.iter().map(|&v| arena.color(v))).unwrap();
        prop_assert_eq!(cluster, expected);
    }
}

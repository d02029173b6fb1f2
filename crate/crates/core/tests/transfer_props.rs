mod common;

use common::{complement_word, enforces, is_ne, mask};
use eqtransfer::corpus;
use eqtransfer::random::{random_acyclic, random_determined_structure, random_linear, seeded};
use eqtransfer::transfer::{max_enforceable_word, transfer, transfer_equilibrium, BruteForceOracle};
use eqtransfer::{CallCounter, GameStructure, NormalFormGame, Player, PreferenceProfile, TransferError};
use proptest::prelude::*;
use rand::Rng;

fn game(seed: u64, max_strategies: usize, max_outcomes: usize) -> NormalFormGame {
    let mut rng = seeded(seed);
    let st = random_determined_structure(&mut rng, max_strategies, max_outcomes);
    let o = st.outcomes().clone();
    let density: [f64; 2] = [rng.gen(), rng.gen()];
    let prefs = density.map(|d| random_acyclic(&mut rng, &o, d)).to_vec();
    NormalFormGame::from_parts(st, prefs).unwrap()
}

/// Enforceable set whose complement word along `linear` is lexicographically greatest.
fn lex_greatest_enforceable(st: &GameStructure, linear: &[usize]) -> u64 {
    (0..1u64 << st.outcome_count())
        .filter(|&m| enforces(st, 0, m))
        .max_by_key(|&m| complement_word(linear, m))
        .expect("the full set is enforceable")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transfer_yields_equilibrium_within_call_budget(seed: u64) {
        let g = game(seed, 5, 6);
        let oracle = BruteForceOracle::new(g.structure().clone()).unwrap();
        let run = transfer(&oracle, g.preferences()).unwrap();
        let n = g.structure().outcome_count();
        prop_assert_eq!(run.counter.winner_calls, n);
        prop_assert!(run.counter.strategy_calls <= 2);
        let profile = [run.first.strategy, run.second.strategy];
        prop_assert!(is_ne(g.structure(), g.preferences(), &profile));
        prop_assert_eq!(g.structure().outcome(&profile), run.outcome);
        prop_assert_eq!(Some(run.outcome), g.preferences().get(1).maximal_in(&run.enforced));
        prop_assert_eq!(run.linear[run.position - 1], run.outcome);
    }

    #[test]
    fn greedy_word_is_lift_maximum(seed: u64) {
        let mut rng = seeded(seed);
        let st = random_determined_structure(&mut rng, 5, 5);
        let linear = random_linear(&mut rng, st.outcomes()).linear_extension().unwrap();
        let oracle = BruteForceOracle::new(st.clone()).unwrap();
        let mut counter = CallCounter::default();
        let word = max_enforceable_word(&oracle, &linear, &mut counter).unwrap();
        prop_assert_eq!(mask(&word), lex_greatest_enforceable(&st, &linear));
        prop_assert_eq!(counter.winner_calls, st.outcome_count());
    }

    #[test]
    fn restricted_flag_tracks_classes(seed: u64) {
        let mut rng = seeded(seed);
        let g = game(rng.gen(), 5, 5);
        let counts = g.structure().strategy_counts().to_vec();
        let class: Vec<Vec<bool>> = counts.iter().map(|&c| (0..c).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let oracle = BruteForceOracle::new(g.structure().clone())
            .unwrap()
            .with_class(Player::One, class[0].clone())
            .unwrap()
            .with_class(Player::Two, class[1].clone())
            .unwrap();
        let eq = transfer_equilibrium(&g, &oracle).unwrap();
        let run = transfer(&oracle, g.preferences()).unwrap();
        let st = g.structure();
        let (rows, cols) = (counts[0], counts[1]);
        let first_ok = (0..rows).any(|r| class[0][r] && (0..cols).all(|c| run.enforced.contains(st.outcome(&[r, c]))));
        let second_ok = (0..cols).any(|c| class[1][c] && (0..rows).all(|r| !run.excluded.contains(st.outcome(&[r, c]))));
        prop_assert_eq!(eq.restricted, first_ok && second_ok);
        let [a, b] = [eq.profile.choices()[0], eq.profile.choices()[1]];
        prop_assert_eq!(eq.restricted, class[0][a] && class[1][b]);
    }
}

#[test]
fn undetermined_structure_reports_failure() {
    let structure = corpus::build("structure_xy_yx").unwrap().structure;
    let o = structure.outcomes().clone();
    let prefs = PreferenceProfile::new(vec![
        eqtransfer::Preference::linear(o.clone(), &[1, 0]).unwrap(),
        eqtransfer::Preference::linear(o, &[0, 1]).unwrap(),
    ])
    .unwrap();
    let oracle = BruteForceOracle::new(structure).unwrap();
    let err = transfer(&oracle, &prefs).unwrap_err();
    assert!(
        matches!(err, TransferError::NotDetermined(_) | TransferError::Oracle(_)),
        "{err}"
    );
}

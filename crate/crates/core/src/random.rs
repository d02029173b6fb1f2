//! Seeded generators for games, preferences, arenas, trees and strategies.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extensive::{GameTree, TreeShape};
use crate::graph::{Arena, FiniteMemoryStrategy};
use crate::normal_form::{GameStructure, WinLoseGame, DEFAULT_OUTCOME_CAP};
use crate::player::Player;
use crate::prefs::{OutcomeSet, Preference};
use crate::subset::SubsetWord;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two-player structure with `1..=max_strategies` strategies per player and
/// `1..=max_outcomes` outcomes, entries uniform.
pub fn random_structure<R: Rng + ?Sized>(rng: &mut R, max_strategies: usize, max_outcomes: usize) -> GameStructure {
    let rows = rng.gen_range(1..=max_strategies);
    let cols = rng.gen_range(1..=max_strategies);
    let n = rng.gen_range(1..=max_outcomes);
    structure_of_shape(rng, vec![rows, cols], n)
}

pub fn structure_of_shape<R: Rng + ?Sized>(rng: &mut R, counts: Vec<usize>, outcomes: usize) -> GameStructure {
    let total = counts.iter().product();
    let v = (0..total).map(|_| rng.gen_range(0..outcomes)).collect();
    GameStructure::new(counts, OutcomeSet::new(outcomes).expect("at least one outcome"), v).expect("shape matches")
}

/// Like [`random_structure`], resampled until determined.
pub fn random_determined_structure<R: Rng + ?Sized>(
    rng: &mut R,
    max_strategies: usize,
    max_outcomes: usize,
) -> GameStructure {
    loop {
        let st = random_structure(rng, max_strategies, max_outcomes);
        if st.is_determined(DEFAULT_OUTCOME_CAP).expect("small outcome set") {
            return st;
        }
    }
}

/// A random two-outcome game labelled so that outcome 0 wins for player 1.
pub fn random_win_lose<R: Rng + ?Sized>(rng: &mut R, max_strategies: usize) -> WinLoseGame {
    let rows = rng.gen_range(1..=max_strategies);
    let cols = rng.gen_range(1..=max_strategies);
    structure_of_shape(rng, vec![rows, cols], 2)
        .derive_win_lose(SubsetWord::from_indices(2, [0]))
        .expect("two players")
}

/// Strict linear order, least preferred first, uniformly random.
pub fn random_linear<R: Rng + ?Sized>(rng: &mut R, outcomes: &OutcomeSet) -> Preference {
    let mut order: Vec<usize> = (0..outcomes.size()).collect();
    order.shuffle(rng);
    Preference::linear(outcomes.clone(), &order).expect("permutation")
}

/// Acyclic relation: a random linear order with each of its pairs kept with
/// probability `density`.
pub fn random_acyclic<R: Rng + ?Sized>(rng: &mut R, outcomes: &OutcomeSet, density: f64) -> Preference {
    let mut order: Vec<usize> = (0..outcomes.size()).collect();
    order.shuffle(rng);
    let n = order.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    Preference::new(outcomes.clone(), pairs).expect("indices in range")
}

/// Arbitrary relation, self-loops excluded.
pub fn random_relation<R: Rng + ?Sized>(rng: &mut R, outcomes: &OutcomeSet, density: f64) -> Preference {
    Preference::from_fn(outcomes.clone(), |x, y| x != y && rng.gen_bool(density))
}

/// Arena on `vertices` vertices, each with `1..=max_degree` distinct
/// successors, random owners and colors below `colors`.
pub fn random_arena<R: Rng + ?Sized>(rng: &mut R, vertices: usize, colors: usize, max_degree: usize) -> Arena {
    let owned = (0..vertices).map(|_| rng.gen_bool(0.5)).collect();
    let all: Vec<usize> = (0..vertices).collect();
    let succ = (0..vertices)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree.min(vertices));
            all.choose_multiple(rng, d).copied().collect()
        })
        .collect();
    let colors = (0..vertices).map(|_| rng.gen_range(0..colors)).collect();
    Arena::new(owned, succ, colors).expect("every vertex has a successor")
}

pub fn random_finite_memory<R: Rng + ?Sized>(
    arena: &Arena,
    player: Player,
    memory: usize,
    rng: &mut R,
) -> FiniteMemoryStrategy {
    let n = arena.vertex_count();
    let update = (0..memory * n).map(|_| rng.gen_range(0..memory)).collect();
    let choice = (0..memory * n)
        .map(|k| *arena.successors(k % n).choose(rng).expect("sink-free"))
        .collect();
    let initial = rng.gen_range(0..memory);
    FiniteMemoryStrategy::new(arena, player, memory, initial, update, choice).expect("valid tables")
}

/// Tree of depth at most `depth` (edges), inner nodes with `1..=branching`
/// children, leaves with uniform outcomes.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, depth: usize, branching: usize, outcomes: usize) -> GameTree {
    fn shape<R: Rng + ?Sized>(rng: &mut R, depth: usize, branching: usize, outcomes: usize) -> TreeShape {
        if depth == 0 || rng.gen_bool(0.3) {
            return TreeShape::Leaf(rng.gen_range(0..outcomes));
        }
        let owner = if rng.gen_bool(0.5) { Player::One } else { Player::Two };
        let k = rng.gen_range(1..=branching);
        TreeShape::Node(
            owner,
            (0..k).map(|_| shape(rng, depth - 1, branching, outcomes)).collect(),
        )
    }
    let s = shape(rng, depth, branching, outcomes);
    GameTree::new(&s, OutcomeSet::new(outcomes).expect("at least one outcome")).expect("valid shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = random_structure(&mut seeded(7), 5, 6);
        let b = random_structure(&mut seeded(7), 5, 6);
        assert_eq!(a, b);
    }

    #[test]
    fn generated_relations_are_acyclic() {
        let mut rng = seeded(1);
        let o = OutcomeSet::new(6).unwrap();
        for _ in 0..50 {
            assert!(random_acyclic(&mut rng, &o, 0.5).is_acyclic());
            assert!(random_linear(&mut rng, &o).is_strict_linear());
        }
    }

    #[test]
    fn determined_generator() {
        let mut rng = seeded(3);
        for _ in 0..20 {
            assert!(random_determined_structure(&mut rng, 5, 6).is_determined(20).unwrap());
        }
    }
}

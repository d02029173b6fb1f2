//! Deviation checks for graph-game profiles.
//!
//! Fixing one player's finite-memory strategy leaves the other player alone
//! in the product of the arena with that strategy's memory. The cluster sets
//! that player can realise are exactly the color sets of strongly connected
//! pieces of the reachable product, which [`achievable_outcomes`] finds by
//! SCC decomposition. [`find_profitable_deviation`] is therefore exact
//! against arbitrary deviations. The positional and sampled checks cover the
//! narrower regimes used in tests.

use std::collections::HashMap;

use rand::Rng;

use super::{play_of, ColorSet, FiniteMemoryStrategy, MultiOutcomeGraphGame, OutcomeRule, PositionalStrategy};
use crate::player::Player;
use crate::random::random_finite_memory;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deviation {
    pub player: Player,
    /// An outcome reachable by deviating that the player strictly prefers.
    pub outcome: usize,
}

struct Residual {
    colors: Vec<usize>,
    succ: Vec<Vec<usize>>,
}

fn residual(game: &MultiOutcomeGraphGame, fixed: &FiniteMemoryStrategy) -> Residual {
    let arena = game.arena();
    let first = (game.start(), fixed.start_state(game.start()));
    let mut id: HashMap<(usize, usize), usize> = HashMap::from([(first, 0)]);
    let mut states = vec![first];
    let mut succ = Vec::new();
    let mut k = 0;
    while k < states.len() {
        let (v, m) = states[k];
        let targets: Vec<usize> = if arena.owner(v) == fixed.player() {
            vec![fixed.choice(m, v)]
        } else {
            arena.successors(v).to_vec()
        };
        let mut out = Vec::with_capacity(targets.len());
        for w in targets {
            let key = (w, fixed.update(m, w));
            out.push(*id.entry(key).or_insert_with(|| {
                states.push(key);
                states.len() - 1
            }));
        }
        succ.push(out);
        k += 1;
    }
    Residual {
        colors: states.iter().map(|&(v, _)| arena.color(v)).collect(),
        succ,
    }
}

/// Strongly connected components of the subgraph induced by `alive` that
/// contain at least one edge (Kosaraju, iterative).
fn cyclic_components(succ: &[Vec<usize>], alive: &[bool]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in (0..n).filter(|&v| alive[v]) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if let Some(&w) = succ[v].get(i) {
                stack.push((v, i + 1));
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut pred = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| alive[v]) {
        for &w in &succ[v] {
            if alive[w] {
                pred[w].push(v);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let label = out.len();
        comp[root] = label;
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in &pred[v] {
                if comp[u] == usize::MAX {
                    comp[u] = label;
                    members.push(u);
                    stack.push(u);
                }
            }
        }
        out.push(members);
    }
    out.into_iter()
        .filter(|c| c.len() > 1 || succ[c[0]].contains(&c[0]))
        .collect()
}

/// Every outcome the opponent of `fixed` can bring about, ascending.
pub fn achievable_outcomes(game: &MultiOutcomeGraphGame, fixed: &FiniteMemoryStrategy) -> Vec<usize> {
    let res = residual(game, fixed);
    let n = res.colors.len();
    let mut outcomes = Vec::new();
    match game.rule() {
        OutcomeRule::Priority { .. } => {
            let mut colors = res.colors.clone();
            colors.sort_unstable();
            colors.dedup();
            for c in colors {
                let alive: Vec<bool> = res.colors.iter().map(|&x| x >= c).collect();
                if cyclic_components(&res.succ, &alive)
                    .iter()
                    .any(|comp| comp.iter().any(|&s| res.colors[s] == c))
                {
                    outcomes.push(game.outcome_of_colors(&[c]));
                }
            }
        }
        OutcomeRule::Muller { .. } => {
            let all = ColorSet::from_colors(res.colors.iter().copied()).expect("colors were validated");
            for d in all.subsets().filter(|d| !d.is_empty()) {
                let alive: Vec<bool> = (0..n).map(|s| d.contains(res.colors[s])).collect();
                let hit = cyclic_components(&res.succ, &alive)
                    .iter()
                    .any(|comp| ColorSet::from_colors(comp.iter().map(|&s| res.colors[s])).expect("validated") == d);
                if hit {
                    outcomes.push(game.outcome_of_colors(&d.iter().collect::<Vec<_>>()));
                }
            }
        }
    }
    outcomes.sort_unstable();
    outcomes.dedup();
    outcomes
}

/// A strictly better outcome some player can force by deviating from
/// `(first, second)`, against arbitrary strategies.
pub fn find_profitable_deviation(
    game: &MultiOutcomeGraphGame,
    first: &FiniteMemoryStrategy,
    second: &FiniteMemoryStrategy,
) -> Option<Deviation> {
    let current = game.outcome_of(first, second);
    for (player, fixed) in [(Player::One, second), (Player::Two, first)] {
        let pref = game.preferences().get(player.index());
        if let Some(outcome) = achievable_outcomes(game, fixed)
            .into_iter()
            .find(|&o| pref.prefers(current, o))
        {
            return Some(Deviation { player, outcome });
        }
    }
    None
}

fn profitable(
    game: &MultiOutcomeGraphGame,
    current: usize,
    player: Player,
    deviation: &FiniteMemoryStrategy,
    first: &FiniteMemoryStrategy,
    second: &FiniteMemoryStrategy,
) -> Option<usize> {
    let play = match player {
        Player::One => play_of(game.arena(), game.start(), deviation, second),
        Player::Two => play_of(game.arena(), game.start(), first, deviation),
    };
    let o = game.outcome_of_play(&play);
    game.preferences().get(player.index()).prefers(current, o).then_some(o)
}

/// First profitable positional deviation, trying every positional strategy
/// of each player.
pub fn positional_deviation(
    game: &MultiOutcomeGraphGame,
    first: &FiniteMemoryStrategy,
    second: &FiniteMemoryStrategy,
) -> Option<(Deviation, PositionalStrategy)> {
    let current = game.outcome_of(first, second);
    for player in Player::BOTH {
        for s in PositionalStrategy::enumerate(game.arena(), player) {
            let machine = s.to_finite_memory(game.arena());
            if let Some(outcome) = profitable(game, current, player, &machine, first, second) {
                return Some((Deviation { player, outcome }, s));
            }
        }
    }
    None
}

/// First profitable deviation among `samples` random finite-memory
/// strategies per player, each with at most `max_memory` states.
pub fn sampled_deviation<R: Rng + ?Sized>(
    game: &MultiOutcomeGraphGame,
    first: &FiniteMemoryStrategy,
    second: &FiniteMemoryStrategy,
    samples: usize,
    max_memory: usize,
    rng: &mut R,
) -> Option<(Deviation, FiniteMemoryStrategy)> {
    let current = game.outcome_of(first, second);
    for player in Player::BOTH {
        for _ in 0..samples {
            let memory = rng.gen_range(1..=max_memory);
            let machine = random_finite_memory(game.arena(), player, memory, rng);
            if let Some(outcome) = profitable(game, current, player, &machine, first, second) {
                return Some((Deviation { player, outcome }, machine));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::Arena;
    use crate::prefs::{OutcomeSet, Preference, PreferenceProfile};

    #[test]
    fn components_with_edges_only() {
        let succ = vec![vec![1], vec![0], vec![2], vec![0]];
        let mut comps = cyclic_components(&succ, &[true; 4]);
        comps.iter_mut().for_each(|c| c.sort());
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn deviator_reaches_preferred_loop() {
        // Player 2 owns 0 and picks the loop at 1 (color 1) or at 2 (color 2).
        let a = Arena::from_edges(3, &[], &[(0, 1), (0, 2), (1, 1), (2, 2)], vec![0, 1, 2]).unwrap();
        let o = OutcomeSet::new(2).unwrap();
        let p2 = Preference::linear(o.clone(), &[0, 1]).unwrap();
        let prefs = PreferenceProfile::new(vec![Preference::indifferent(o), p2]).unwrap();
        let rule = OutcomeRule::Priority {
            map: BTreeMap::from([(0, 0), (1, 0), (2, 1)]),
            bottom: 0,
        };
        let g = MultiOutcomeGraphGame::new(a.clone(), 0, rule, prefs).unwrap();
        let s1 = PositionalStrategy::first(&a, Player::One).to_finite_memory(&a);
        assert_eq!(achievable_outcomes(&g, &s1), vec![0, 1]);
        let s2 = PositionalStrategy::first(&a, Player::Two).to_finite_memory(&a);
        assert_eq!(
            find_profitable_deviation(&g, &s1, &s2),
            Some(Deviation {
                player: Player::Two,
                outcome: 1
            })
        );
        assert!(positional_deviation(&g, &s1, &s2).is_some());
    }
}

//! Muller games, solved by reduction to parity games over the latest
//! appearance record (LAR) of the colors.
//!
//! A LAR state is a permutation of the `k` occurring colors (most recent
//! first) together with the position `h` the last color was taken from. Its
//! parity priority is `2(k-1-h)`, plus one when the first `h+1` colors of the
//! updated permutation do not form a winning set. The largest `h` hit
//! infinitely often exposes exactly the cluster set, so the least priority
//! seen infinitely often decides the Muller condition. Strategies extracted
//! from the product use `k!·k` memory states.

use std::collections::{HashMap, HashSet};

use super::parity::zielonka;
use super::{Arena, ColorSet, FiniteMemoryStrategy, GraphError};
use crate::player::Player;

/// Most distinct colors a Muller arena may carry.
pub const MAX_MULLER_COLORS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MullerSolution {
    pub winner: Player,
    /// Wins for `winner` against every opposing strategy.
    pub strategy: FiniteMemoryStrategy,
}

/// The LAR automaton over the colors of an arena.
#[derive(Debug, Clone)]
pub struct Lar {
    colors: Vec<usize>,
    perms: Vec<Vec<u8>>,
    step: Vec<usize>,
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for x in 0..k as u8 {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u8>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, x);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

impl Lar {
    pub fn new(arena: &Arena) -> Result<Self, GraphError> {
        let colors = arena.occurring_colors();
        if let Some(&c) = colors.iter().find(|&&c| c >= 64) {
            return Err(GraphError::ColorTooLarge(c));
        }
        let k = colors.len();
        if k > MAX_MULLER_COLORS {
            return Err(GraphError::TooManyColors {
                count: k,
                cap: MAX_MULLER_COLORS,
            });
        }
        let perms = permutations(k);
        let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut step = Vec::with_capacity(perms.len() * k * k);
        for p in &perms {
            for _h in 0..k {
                for c in 0..k as u8 {
                    let pos = p.iter().position(|&x| x == c).expect("permutation");
                    let mut q = p.clone();
                    q.remove(pos);
                    q.insert(0, c);
                    step.push(index[q.as_slice()] * k + pos);
                }
            }
        }
        Ok(Lar { colors, perms, step })
    }

    /// Number of distinct colors.
    pub fn colors(&self) -> usize {
        self.colors.len()
    }

    /// `k!·k`.
    pub fn states(&self) -> usize {
        self.perms.len() * self.colors()
    }

    /// Identity permutation, hit position 0.
    pub fn initial(&self) -> usize {
        0
    }

    fn local(&self, color: usize) -> usize {
        self.colors.binary_search(&color).expect("occurring color")
    }

    /// State after seeing `color`.
    pub fn next(&self, state: usize, color: usize) -> usize {
        self.step[state * self.colors() + self.local(color)]
    }

    pub fn hit(&self, state: usize) -> usize {
        state % self.colors()
    }

    /// The first `h+1` colors of the permutation.
    pub fn displaced(&self, state: usize) -> ColorSet {
        let k = self.colors();
        let perm = &self.perms[state / k];
        ColorSet(
            perm[..=self.hit(state)]
                .iter()
                .fold(0, |m, &c| m | 1 << self.colors[c as usize]),
        )
    }

    pub fn priority(&self, state: usize, winning: impl Fn(ColorSet) -> bool) -> usize {
        let k = self.colors();
        2 * (k - 1 - self.hit(state)) + usize::from(!winning(self.displaced(state)))
    }
}

/// Player 1 wins a play iff the family `win_sets` contains its cluster set.
pub fn solve_muller(arena: &Arena, start: usize, win_sets: &[ColorSet]) -> Result<MullerSolution, GraphError> {
    let family: HashSet<ColorSet> = win_sets.iter().copied().collect();
    solve_muller_with(arena, start, |s| family.contains(&s))
}

/// Player 1 wins a play iff `winning` holds on its cluster set.
pub fn solve_muller_with(
    arena: &Arena,
    start: usize,
    winning: impl Fn(ColorSet) -> bool,
) -> Result<MullerSolution, GraphError> {
    arena.check_vertex(start)?;
    let lar = Lar::new(arena)?;
    let n = arena.vertex_count();

    // Reachable part of the arena × LAR product.
    let first = (start, lar.next(lar.initial(), arena.color(start)));
    let mut id: HashMap<(usize, usize), usize> = HashMap::from([(first, 0)]);
    let mut states = vec![first];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < states.len() {
        let (v, q) = states[k];
        let mut out = Vec::with_capacity(arena.successors(v).len());
        for &w in arena.successors(v) {
            let key = (w, lar.next(q, arena.color(w)));
            let next = *id.entry(key).or_insert_with(|| {
                states.push(key);
                states.len() - 1
            });
            out.push(next);
        }
        succ.push(out);
        k += 1;
    }
    let owned = states.iter().map(|&(v, _)| arena.owned()[v]).collect();
    let colors = states.iter().map(|&(_, q)| lar.priority(q, &winning)).collect();
    let product = Arena::new(owned, succ, colors).expect("product inherits sink-freedom");
    let regions = zielonka(&product);
    let winner = regions.winner[0];
    let plan = &regions.strategies[winner.index()];

    let memory = lar.states();
    let mut update = Vec::with_capacity(memory * n);
    let mut choice = Vec::with_capacity(memory * n);
    for q in 0..memory {
        for v in 0..n {
            update.push(lar.next(q, arena.color(v)));
            let chosen = id.get(&(v, q)).and_then(|&s| plan.move_at(s)).map(|s| states[s].0);
            choice.push(chosen.unwrap_or(arena.successors(v)[0]));
        }
    }
    let strategy = FiniteMemoryStrategy::new(arena, winner, memory, lar.initial(), update, choice)
        .expect("product moves follow arena edges");
    Ok(MullerSolution { winner, strategy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{play_of, PositionalStrategy};

    fn arena() -> Arena {
        // Player 1 at 0 picks between colors 1 and 2; both return to 0.
        Arena::from_edges(3, &[0], &[(0, 1), (0, 2), (1, 0), (2, 0)], vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn trivial_families() {
        let a = arena();
        let all: Vec<ColorSet> = ColorSet::from_colors([0, 1, 2]).unwrap().subsets().collect();
        assert_eq!(solve_muller(&a, 0, &all).unwrap().winner, Player::One);
        assert_eq!(solve_muller(&a, 0, &[]).unwrap().winner, Player::Two);
    }

    #[test]
    fn needs_memory() {
        // Winning requires seeing both 1 and 2 infinitely often.
        let a = arena();
        let target = ColorSet::from_colors([0, 1, 2]).unwrap();
        let sol = solve_muller(&a, 0, &[target]).unwrap();
        assert_eq!(sol.winner, Player::One);
        let opp = PositionalStrategy::first(&a, Player::Two).to_finite_memory(&a);
        let play = play_of(&a, 0, &sol.strategy, &opp);
        assert_eq!(play.cluster(&a).unwrap(), target);
        for s in PositionalStrategy::enumerate(&a, Player::One) {
            let play = play_of(&a, 0, &s.to_finite_memory(&a), &opp);
            assert_ne!(play.cluster(&a).unwrap(), target);
        }
    }

    #[test]
    fn lar_exposes_cluster() {
        let a = arena();
        let lar = Lar::new(&a).unwrap();
        assert_eq!(lar.states(), 18);
        let mut q = lar.initial();
        let mut displaced = Vec::new();
        for _ in 0..5 {
            for c in [0, 1, 0, 2] {
                q = lar.next(q, c);
                displaced.push((lar.hit(q), lar.displaced(q)));
            }
        }
        let &(h, set) = displaced[4..].iter().max_by_key(|(h, _)| *h).unwrap();
        assert_eq!(h, 2);
        assert_eq!(set, ColorSet::from_colors([0, 1, 2]).unwrap());
    }

    #[test]
    fn color_caps() {
        let a = Arena::from_edges(
            7,
            &[],
            &(0..7).map(|v| (v, (v + 1) % 7)).collect::<Vec<_>>(),
            (0..7).collect(),
        )
        .unwrap();
        assert!(matches!(
            solve_muller(&a, 0, &[]),
            Err(GraphError::TooManyColors { count: 7, .. })
        ));
    }
}

//! Reference implementations used as oracles by the integration tests.
//! They read game data through plain accessors and share no solver code
//! with the library.

#![allow(dead_code)]

use std::collections::HashMap;

use eqtransfer::graph::{Arena, FiniteMemoryStrategy, MultiOutcomeGraphGame, OutcomeRule, PositionalStrategy};
use eqtransfer::{GameStructure, Player, PreferenceProfile, SubsetWord};
use rand::Rng;

/// All profiles of a shape, last player fastest.
pub fn profiles(counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &c in counts {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..c).map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn is_ne(st: &GameStructure, prefs: &PreferenceProfile, profile: &[usize]) -> bool {
    let here = st.outcome(profile);
    (0..st.players()).all(|p| {
        (0..st.strategy_counts()[p]).all(|alt| {
            let mut q = profile.to_vec();
            q[p] = alt;
            !prefs.get(p).prefers(here, st.outcome(&q))
        })
    })
}

pub fn all_ne(st: &GameStructure, prefs: &PreferenceProfile) -> Vec<Vec<usize>> {
    profiles(st.strategy_counts())
        .into_iter()
        .filter(|p| is_ne(st, prefs, p))
        .collect()
}

/// Whether `player` has a strategy with every outcome inside `mask`.
pub fn enforces(st: &GameStructure, player: usize, mask: u64) -> bool {
    let [rows, cols] = [st.strategy_counts()[0], st.strategy_counts()[1]];
    match player {
        0 => (0..rows).any(|r| (0..cols).all(|c| mask >> st.outcome(&[r, c]) & 1 == 1)),
        _ => (0..cols).any(|c| (0..rows).all(|r| mask >> st.outcome(&[r, c]) & 1 == 1)),
    }
}

/// Winner of the derived win-lose game where player 1 wins on `mask`.
pub fn wl_winner(st: &GameStructure, mask: u64) -> Option<Player> {
    let full = (1u64 << st.outcome_count()) - 1;
    if enforces(st, 0, mask) {
        Some(Player::One)
    } else if enforces(st, 1, full & !mask) {
        Some(Player::Two)
    } else {
        None
    }
}

pub fn mask(w: &SubsetWord) -> u64 {
    (0..w.bits().len()).filter(|&i| w.contains(i)).map(|i| 1u64 << i).sum()
}

/// Complement of `subset` as a 0/1 word along `linear`.
pub fn complement_word(linear: &[usize], subset: u64) -> Vec<u8> {
    linear.iter().map(|&o| u8::from(subset >> o & 1 == 0)).collect()
}

/// A strategy as raw tables: positional strategies have one state.
#[derive(Debug, Clone)]
pub struct Machine {
    pub memory: usize,
    pub initial: usize,
    pub update: Vec<usize>,
    pub choice: Vec<usize>,
}

impl Machine {
    pub fn positional(arena: &Arena, moves: &[Option<usize>]) -> Self {
        let n = arena.vertex_count();
        Machine {
            memory: 1,
            initial: 0,
            update: vec![0; n],
            choice: (0..n).map(|v| moves[v].unwrap_or(arena.successors(v)[0])).collect(),
        }
    }

    pub fn of(s: &FiniteMemoryStrategy) -> Self {
        Machine {
            memory: s.memory(),
            initial: s.initial(),
            update: s.update_table().to_vec(),
            choice: s.choice_table().to_vec(),
        }
    }

    pub fn random<R: Rng>(arena: &Arena, memory: usize, rng: &mut R) -> Self {
        let n = arena.vertex_count();
        let choice = (0..memory * n)
            .map(|k| {
                let succ = arena.successors(k % n);
                succ[rng.gen_range(0..succ.len())]
            })
            .collect();
        Machine {
            memory,
            initial: rng.gen_range(0..memory),
            update: (0..memory * n).map(|_| rng.gen_range(0..memory)).collect(),
            choice,
        }
    }
}

/// Vertices on the cycle of the play of `a` (player 1) against `b`.
pub fn cycle(arena: &Arena, start: usize, a: &Machine, b: &Machine) -> Vec<usize> {
    let n = arena.vertex_count();
    let step = |m: &Machine, s: usize, v: usize| m.update[s * n + v];
    let mut state = (start, step(a, a.initial, start), step(b, b.initial, start));
    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut trace = Vec::new();
    loop {
        if let Some(&i) = seen.get(&state) {
            return trace[i..].iter().map(|&(v, _, _)| v).collect();
        }
        seen.insert(state, trace.len());
        trace.push(state);
        let (v, ma, mb) = state;
        let w = if arena.owner(v) == Player::One {
            a.choice[ma * n + v]
        } else {
            b.choice[mb * n + v]
        };
        assert!(arena.successors(v).contains(&w), "machine leaves the arena");
        state = (w, step(a, ma, w), step(b, mb, w));
    }
}

pub fn outcome_of_cycle(game: &MultiOutcomeGraphGame, cycle: &[usize]) -> usize {
    let colors: Vec<usize> = cycle.iter().map(|&v| game.arena().color(v)).collect();
    match game.rule() {
        OutcomeRule::Priority { map, .. } => map[colors.iter().min().expect("nonempty cycle")],
        OutcomeRule::Muller { map, default } => {
            let mut mask = 0u64;
            for c in colors {
                mask |= 1 << c;
            }
            map.iter()
                .find(|(set, _)| set.0 == mask)
                .map(|(_, &o)| o)
                .or(*default)
                .expect("validated rule")
        }
    }
}

pub fn play_outcome(game: &MultiOutcomeGraphGame, a: &Machine, b: &Machine) -> usize {
    outcome_of_cycle(game, &cycle(game.arena(), game.start(), a, b))
}

/// Parity winner of a play: player 1 on an even least cycle color.
pub fn parity_winner(arena: &Arena, start: usize, a: &Machine, b: &Machine) -> Player {
    let min = cycle(arena, start, a, b)
        .iter()
        .map(|&v| arena.color(v))
        .min()
        .expect("nonempty cycle");
    if min % 2 == 0 {
        Player::One
    } else {
        Player::Two
    }
}

/// Every positional move vector of `player`.
pub fn positional_moves(arena: &Arena, player: Player) -> Vec<Vec<Option<usize>>> {
    let mut out: Vec<Vec<Option<usize>>> = vec![vec![]];
    for v in 0..arena.vertex_count() {
        let options: Vec<Option<usize>> = if arena.owner(v) == player {
            arena.successors(v).iter().map(|&w| Some(w)).collect()
        } else {
            vec![None]
        };
        out = out
            .into_iter()
            .flat_map(|p| {
                options.iter().map(move |&o| {
                    let mut q = p.clone();
                    q.push(o);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn positional_machines(arena: &Arena, player: Player) -> Vec<Machine> {
    positional_moves(arena, player)
        .iter()
        .map(|m| Machine::positional(arena, m))
        .collect()
}

pub fn machine_of_positional(arena: &Arena, s: &PositionalStrategy) -> Machine {
    Machine::positional(arena, s.moves())
}

/// First profitable deviation found among `deviations`, if any.
pub fn improving(
    game: &MultiOutcomeGraphGame,
    profile: [&Machine; 2],
    player: Player,
    deviations: impl IntoIterator<Item = Machine>,
) -> Option<usize> {
    let current = play_outcome(game, profile[0], profile[1]);
    let pref = game.preferences().get(player.index());
    deviations.into_iter().find_map(|d| {
        let o = match player {
            Player::One => play_outcome(game, &d, profile[1]),
            Player::Two => play_outcome(game, profile[0], &d),
        };
        pref.prefers(current, o).then_some(o)
    })
}

//! Graph games: arenas, positional and finite-memory strategies, parity and
//! Muller solvers, and multi-outcome games solved through transfer.
//!
//! Vertices in the owned set belong to player 1. A finite-memory strategy
//! reads every vertex of the play, including the start vertex, and chooses
//! from the memory state reached after reading the current vertex.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::player::Player;
use crate::prefs::PrefError;
use crate::transfer::TransferError;

pub mod muller;
pub mod multi;
pub mod parity;
pub mod residual;

pub use muller::{solve_muller, solve_muller_with, MullerSolution};
pub use multi::{
    multi_outcome_ne, positional_normal_form, GraphEquilibrium, GraphProfile, MullerOracle, MultiOutcomeGraphGame,
    OutcomeRule, PriorityOracle,
};
pub use parity::{solve_parity, zielonka, ParityRegions, ParitySolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("an arena needs at least one vertex")]
    NoVertices,
    #[error("vertex {index} out of range for {count} vertices")]
    BadVertex { index: usize, count: usize },
    #[error("vertex {0} has no outgoing edge")]
    Sink(usize),
    #[error("expected {expected} colors, found {found}")]
    ColorCount { expected: usize, found: usize },
    #[error("color {0} is too large for a color set (limit 63)")]
    ColorTooLarge(usize),
    #[error("{count} distinct colors exceed the cap of {cap}")]
    TooManyColors { count: usize, cap: usize },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("outcome map is missing an entry for {0}")]
    MissingOutcome(String),
    #[error("outcome {outcome} out of range for {size} outcomes")]
    OutcomeOutOfRange { outcome: usize, size: usize },
    #[error("{what} count {count} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        count: usize,
        cap: usize,
    },
    #[error("expected two preferences, found {0}")]
    PlayerCount(usize),
    #[error(transparent)]
    Pref(#[from] PrefError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

/// A finite sink-free graph with vertices split between the two players.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    owned: Vec<bool>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    colors: Vec<usize>,
}

impl Arena {
    /// `owned[v]` marks player 1's vertices. Successor lists are sorted and
    /// deduplicated.
    pub fn new(owned: Vec<bool>, succ: Vec<Vec<usize>>, colors: Vec<usize>) -> Result<Self, GraphError> {
        let n = owned.len();
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        for len in [succ.len(), colors.len()] {
            if len != n {
                return Err(GraphError::ColorCount {
                    expected: n,
                    found: len,
                });
            }
        }
        let mut succ = succ;
        let mut pred = vec![Vec::new(); n];
        for (v, list) in succ.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(GraphError::Sink(v));
            }
            for &w in list.iter() {
                if w >= n {
                    return Err(GraphError::BadVertex { index: w, count: n });
                }
                pred[w].push(v);
            }
        }
        Ok(Arena {
            owned,
            succ,
            pred,
            colors,
        })
    }

    pub fn from_edges(
        vertices: usize,
        owned: &[usize],
        edges: &[(usize, usize)],
        colors: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let mut own = vec![false; vertices];
        for &v in owned {
            *own.get_mut(v).ok_or(GraphError::BadVertex {
                index: v,
                count: vertices,
            })? = true;
        }
        let mut succ = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            succ.get_mut(u)
                .ok_or(GraphError::BadVertex {
                    index: u,
                    count: vertices,
                })?
                .push(v);
        }
        Arena::new(own, succ, colors)
    }

    pub fn vertex_count(&self) -> usize {
        self.owned.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        if self.owned[v] {
            Player::One
        } else {
            Player::Two
        }
    }

    pub fn owned(&self) -> &[bool] {
        &self.owned
    }

    pub fn vertices_of(&self, player: Player) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&v| self.owner(v) == player)
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
            .collect()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Distinct colors carried by some vertex, ascending.
    pub fn occurring_colors(&self) -> Vec<usize> {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// The same graph with new colors.
    pub fn recolored(&self, colors: Vec<usize>) -> Result<Arena, GraphError> {
        if colors.len() != self.vertex_count() {
            return Err(GraphError::ColorCount {
                expected: self.vertex_count(),
                found: colors.len(),
            });
        }
        Ok(Arena { colors, ..self.clone() })
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::BadVertex {
                index: v,
                count: self.vertex_count(),
            })
        }
    }
}

/// A set of colors below 64, as a bit mask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub fn from_colors(colors: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut mask = 0u64;
        for c in colors {
            if c >= 64 {
                return Err(GraphError::ColorTooLarge(c));
            }
            mask |= 1 << c;
        }
        Ok(ColorSet(mask))
    }

    pub fn contains(self, color: usize) -> bool {
        color < 64 && self.0 >> color & 1 == 1
    }

    pub fn insert(&mut self, color: usize) {
        assert!(color < 64, "color {color} does not fit a color set");
        self.0 |= 1 << color;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&c| self.contains(c))
    }

    /// Every subset of `self`, the empty set included, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = ColorSet> {
        let colors: Vec<usize> = self.iter().collect();
        (0..1u64 << colors.len()).map(move |m| {
            ColorSet(
                colors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .fold(0, |acc, (_, &c)| acc | 1 << c),
            )
        })
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// A choice of successor at each vertex of one player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositionalStrategy {
    player: Player,
    next: Vec<Option<usize>>,
}

impl PositionalStrategy {
    /// `next[v]` must be a successor of `v` for the player's vertices and
    /// `None` elsewhere.
    pub fn new(arena: &Arena, player: Player, next: Vec<Option<usize>>) -> Result<Self, GraphError> {
        if next.len() != arena.vertex_count() {
            return Err(GraphError::InvalidStrategy(format!(
                "{} entries for {} vertices",
                next.len(),
                arena.vertex_count()
            )));
        }
        for (v, choice) in next.iter().enumerate() {
            match (arena.owner(v) == player, choice) {
                (true, Some(w)) if arena.successors(v).contains(w) => {}
                (false, None) => {}
                _ => {
                    return Err(GraphError::InvalidStrategy(format!(
                        "bad choice {choice:?} at vertex {v}"
                    )))
                }
            }
        }
        Ok(PositionalStrategy { player, next })
    }

    /// First successor everywhere.
    pub fn first(arena: &Arena, player: Player) -> Self {
        PositionalStrategy::nth(arena, player, 0)
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn moves(&self) -> &[Option<usize>] {
        &self.next
    }

    pub fn move_at(&self, v: usize) -> Option<usize> {
        self.next[v]
    }

    /// Number of positional strategies of `player`, if it fits a `usize`.
    pub fn count(arena: &Arena, player: Player) -> Option<usize> {
        arena
            .vertices_of(player)
            .try_fold(1usize, |acc, v| acc.checked_mul(arena.successors(v).len()))
    }

    /// Strategy number `index` in mixed radix over the player's vertices,
    /// the highest vertex varying fastest.
    pub fn nth(arena: &Arena, player: Player, mut index: usize) -> Self {
        let mut next = vec![None; arena.vertex_count()];
        for v in (0..arena.vertex_count()).rev() {
            if arena.owner(v) == player {
                let d = arena.successors(v).len();
                next[v] = Some(arena.successors(v)[index % d]);
                index /= d;
            }
        }
        PositionalStrategy { player, next }
    }

    /// All positional strategies of `player`.
    ///
    /// # Panics
    ///
    /// Panics if their number overflows `usize`.
    pub fn enumerate(arena: &Arena, player: Player) -> impl Iterator<Item = PositionalStrategy> + '_ {
        let count = PositionalStrategy::count(arena, player).expect("strategy count overflows");
        (0..count).map(move |i| PositionalStrategy::nth(arena, player, i))
    }

    pub fn to_finite_memory(&self, arena: &Arena) -> FiniteMemoryStrategy {
        let n = arena.vertex_count();
        FiniteMemoryStrategy {
            player: self.player,
            memory: 1,
            initial: 0,
            update: vec![0; n],
            choice: (0..n).map(|v| self.next[v].unwrap_or(arena.successors(v)[0])).collect(),
        }
    }
}

/// A strategy driven by a finite automaton reading the vertices of the play.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMemoryStrategy {
    player: Player,
    memory: usize,
    initial: usize,
    /// Row-major `memory × vertices`.
    update: Vec<usize>,
    /// Row-major `memory × vertices`; consulted only at the player's vertices.
    choice: Vec<usize>,
}

impl FiniteMemoryStrategy {
    pub fn new(
        arena: &Arena,
        player: Player,
        memory: usize,
        initial: usize,
        update: Vec<usize>,
        choice: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let n = arena.vertex_count();
        let bad = |msg: String| Err(GraphError::InvalidStrategy(msg));
        if memory == 0 || initial >= memory {
            return bad(format!("initial state {initial} with {memory} states"));
        }
        if update.len() != memory * n || choice.len() != memory * n {
            return bad(format!("tables must have {} entries", memory * n));
        }
        if let Some(m) = update.iter().find(|&&m| m >= memory) {
            return bad(format!("update leads to unknown state {m}"));
        }
        for (k, &w) in choice.iter().enumerate() {
            let v = k % n;
            if !arena.successors(v).contains(&w) {
                return bad(format!("choice {w} at vertex {v} is not a successor"));
            }
        }
        Ok(FiniteMemoryStrategy {
            player,
            memory,
            initial,
            update,
            choice,
        })
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    fn vertices(&self) -> usize {
        self.update.len() / self.memory
    }

    /// State after reading `v` in state `m`.
    pub fn update(&self, m: usize, v: usize) -> usize {
        self.update[m * self.vertices() + v]
    }

    /// Successor chosen at `v` when the state after reading `v` is `m`.
    pub fn choice(&self, m: usize, v: usize) -> usize {
        self.choice[m * self.vertices() + v]
    }

    pub fn update_table(&self) -> &[usize] {
        &self.update
    }

    pub fn choice_table(&self) -> &[usize] {
        &self.choice
    }

    /// State after reading the start vertex.
    pub fn start_state(&self, start: usize) -> usize {
        self.update(self.initial, start)
    }
}

/// An ultimately periodic play `prefix · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Play {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Play {
    /// Distinct colors seen infinitely often, ascending.
    pub fn cycle_colors(&self, arena: &Arena) -> Vec<usize> {
        let mut c: Vec<usize> = self.cycle.iter().map(|&v| arena.color(v)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn min_cycle_color(&self, arena: &Arena) -> usize {
        self.cycle
            .iter()
            .map(|&v| arena.color(v))
            .min()
            .expect("cycles are nonempty")
    }

    pub fn cluster(&self, arena: &Arena) -> Result<ColorSet, GraphError> {
        ColorSet::from_colors(self.cycle.iter().map(|&v| arena.color(v)))
    }
}

/// The play of `first` (player 1) against `second` (player 2) from `start`.
///
/// # Panics
///
/// Panics if the strategies do not belong to players 1 and 2 respectively.
pub fn play_of(arena: &Arena, start: usize, first: &FiniteMemoryStrategy, second: &FiniteMemoryStrategy) -> Play {
    assert_eq!(first.player(), Player::One, "first strategy must be player 1's");
    assert_eq!(second.player(), Player::Two, "second strategy must be player 2's");
    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut walk = Vec::new();
    let mut state = (start, first.start_state(start), second.start_state(start));
    loop {
        if let Some(&i) = seen.get(&state) {
            let cycle = walk.split_off(i);
            return Play { prefix: walk, cycle };
        }
        seen.insert(state, walk.len());
        walk.push(state.0);
        let (v, m1, m2) = state;
        let w = match arena.owner(v) {
            Player::One => first.choice(m1, v),
            Player::Two => second.choice(m2, v),
        };
        state = (w, first.update(m1, w), second.update(m2, w));
    }
}

/// Play of two positional strategies.
pub fn positional_play(arena: &Arena, start: usize, first: &PositionalStrategy, second: &PositionalStrategy) -> Play {
    play_of(
        arena,
        start,
        &first.to_finite_memory(arena),
        &second.to_finite_memory(arena),
    )
}

//! Games and game structures in normal form.
//!
//! Outcome tensors are dense and row-major: the last player's strategy index
//! varies fastest. Strategy indices are zero-based throughout.

use std::fmt;

use thiserror::Error;

use crate::player::Player;
use crate::prefs::{OutcomeSet, PrefError, Preference, PreferenceProfile};
use crate::subset::SubsetWord;

/// Default cap on the number of strategy profiles enumerated by brute force.
pub const DEFAULT_PROFILE_CAP: usize = 1 << 22;
/// Default cap on the outcome count for exhaustive determinacy checks.
pub const DEFAULT_OUTCOME_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("player {0} has no strategies")]
    EmptyStrategySet(usize),
    #[error("outcome tensor has {found} entries but the strategy counts require {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("outcome {outcome} at profile entry {entry} is out of range for {size} outcomes")]
    OutcomeOutOfRange { entry: usize, outcome: usize, size: usize },
    #[error("expected {expected} players, found {found}")]
    PlayerCount { expected: usize, found: usize },
    #[error("{what} index {index} out of range (limit {limit})")]
    BadIndex {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("{what} count {count} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        count: usize,
        cap: usize,
    },
    #[error("preferences and structure use different outcome sets")]
    OutcomeMismatch,
    #[error(transparent)]
    Pref(#[from] PrefError),
}

/// A choice of one strategy per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile(pub Vec<usize>);

impl StrategyProfile {
    pub fn new(choices: impl Into<Vec<usize>>) -> Self {
        StrategyProfile(choices.into())
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    /// The profile with player `player` switched to `strategy`.
    pub fn deviate(&self, player: usize, strategy: usize) -> StrategyProfile {
        let mut c = self.0.clone();
        c[player] = strategy;
        StrategyProfile(c)
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// Players, strategy sets, outcomes and the outcome function, without
/// preferences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameStructure {
    strategy_counts: Vec<usize>,
    outcomes: OutcomeSet,
    v: Vec<usize>,
}

impl GameStructure {
    pub fn new(strategy_counts: Vec<usize>, outcomes: OutcomeSet, v: Vec<usize>) -> Result<Self, GameError> {
        if strategy_counts.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if let Some(p) = strategy_counts.iter().position(|&c| c == 0) {
            return Err(GameError::EmptyStrategySet(p));
        }
        let expected = strategy_counts
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .ok_or(GameError::TooLarge {
                what: "profile",
                count: usize::MAX,
                cap: usize::MAX,
            })?;
        if v.len() != expected {
            return Err(GameError::ShapeMismatch {
                expected,
                found: v.len(),
            });
        }
        if let Some((entry, &outcome)) = v.iter().enumerate().find(|(_, &o)| o >= outcomes.size()) {
            return Err(GameError::OutcomeOutOfRange {
                entry,
                outcome,
                size: outcomes.size(),
            });
        }
        Ok(GameStructure {
            strategy_counts,
            outcomes,
            v,
        })
    }

    /// Fills the tensor by evaluating `f` on every profile in row-major order.
    pub fn from_fn(
        strategy_counts: Vec<usize>,
        outcomes: OutcomeSet,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Result<Self, GameError> {
        if strategy_counts.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if let Some(p) = strategy_counts.iter().position(|&c| c == 0) {
            return Err(GameError::EmptyStrategySet(p));
        }
        let v = Profiles::new(&strategy_counts).map(|p| f(&p)).collect();
        GameStructure::new(strategy_counts, outcomes, v)
    }

    pub fn players(&self) -> usize {
        self.strategy_counts.len()
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn outcome_count(&self) -> usize {
        self.outcomes.size()
    }

    /// The flat row-major outcome tensor.
    pub fn tensor(&self) -> &[usize] {
        &self.v
    }

    pub fn profile_count(&self) -> usize {
        self.v.len()
    }

    pub fn flat_index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.players());
        profile.iter().zip(&self.strategy_counts).fold(0, |acc, (&s, &c)| {
            debug_assert!(s < c);
            acc * c + s
        })
    }

    /// Outcome of a profile.
    ///
    /// # Panics
    ///
    /// Panics (in debug builds) if the profile does not fit the structure.
    pub fn outcome(&self, profile: &[usize]) -> usize {
        self.v[self.flat_index(profile)]
    }

    /// All profiles in lexicographic (row-major) order.
    pub fn profiles(&self) -> Profiles {
        Profiles::new(&self.strategy_counts)
    }

    pub fn check_profile(&self, profile: &StrategyProfile) -> Result<(), GameError> {
        if profile.0.len() != self.players() {
            return Err(GameError::PlayerCount {
                expected: self.players(),
                found: profile.0.len(),
            });
        }
        for (&s, &c) in profile.0.iter().zip(&self.strategy_counts) {
            if s >= c {
                return Err(GameError::BadIndex {
                    what: "strategy",
                    index: s,
                    limit: c,
                });
            }
        }
        Ok(())
    }

    fn require_players(&self, expected: usize) -> Result<(), GameError> {
        if self.players() == expected {
            Ok(())
        } else {
            Err(GameError::PlayerCount {
                expected,
                found: self.players(),
            })
        }
    }

    /// Outcomes `player` can be led to when it fixes `strategy` and the
    /// opponent ranges freely. Two-player structures only.
    pub fn reachable(&self, player: Player, strategy: usize) -> impl Iterator<Item = usize> + '_ {
        let [rows, cols] = [self.strategy_counts[0], self.strategy_counts[1]];
        let (count, step, base) = match player {
            Player::One => (cols, 1, strategy * cols),
            Player::Two => (rows, cols, strategy),
        };
        (0..count).map(move |k| self.v[base + k * step])
    }

    /// Lowest-index strategy of `player` whose every outcome lies in `subset`.
    pub fn enforcing_strategy(&self, player: Player, subset: &SubsetWord) -> Option<usize> {
        assert_eq!(self.players(), 2, "enforcement is defined for two players");
        (0..self.strategy_counts[player.index()]).find(|&s| self.reachable(player, s).all(|o| subset.contains(o)))
    }

    /// Whether `player` has a strategy enforcing `subset`.
    ///
    /// # Panics
    ///
    /// Panics if the structure does not have exactly two players.
    pub fn can_enforce(&self, player: Player, subset: &SubsetWord) -> bool {
        self.enforcing_strategy(player, subset).is_some()
    }

    /// Outcome masks reachable from each strategy of each player.
    fn strategy_masks(&self) -> [Vec<u64>; 2] {
        Player::BOTH.map(|p| {
            (0..self.strategy_counts[p.index()])
                .map(|s| self.reachable(p, s).fold(0u64, |m, o| m | 1 << o))
                .collect()
        })
    }

    fn check_outcome_cap(&self, cap: usize) -> Result<(), GameError> {
        let cap = cap.min(63);
        if self.outcome_count() > cap {
            return Err(GameError::TooLarge {
                what: "outcome",
                count: self.outcome_count(),
                cap,
            });
        }
        Ok(())
    }

    /// Every subset of outcomes is enforced by player 1 or excluded by player 2.
    ///
    /// Enumerates all `2^n` subsets; fails with [`GameError::TooLarge`] when
    /// the outcome count exceeds `cap` (and always above 63).
    pub fn is_determined(&self, cap: usize) -> Result<bool, GameError> {
        self.require_players(2)?;
        self.check_outcome_cap(cap)?;
        let [rows, cols] = self.strategy_masks();
        let n = self.outcome_count();
        Ok((0..1u64 << n).all(|p| rows.iter().any(|&r| r & !p == 0) || cols.iter().any(|&c| c & p == 0)))
    }

    /// Same answer as [`GameStructure::is_determined`], computed by looking
    /// for a winning strategy in every derived win-lose game.
    pub fn is_determined_by_winning_strategies(&self, cap: usize) -> Result<bool, GameError> {
        self.require_players(2)?;
        self.check_outcome_cap(cap)?;
        for label in SubsetWord::all(self.outcome_count()) {
            if self.derive_win_lose(label)?.winning_strategy().is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The win-lose game where outcome `o` is a win for player 1 iff
    /// `label` contains `o`.
    pub fn derive_win_lose(&self, label: SubsetWord) -> Result<WinLoseGame, GameError> {
        self.require_players(2)?;
        if label.universe() != self.outcome_count() {
            return Err(GameError::OutcomeMismatch);
        }
        Ok(WinLoseGame {
            structure: self.clone(),
            label,
        })
    }

    /// Fixes `player`'s strategy; the remaining players keep their order.
    pub fn slice(&self, player: usize, strategy: usize) -> Result<GameStructure, GameError> {
        self.require_players(3)?;
        let limit = self.check_player(player)?;
        if strategy >= limit {
            return Err(GameError::BadIndex {
                what: "strategy",
                index: strategy,
                limit,
            });
        }
        let rest: Vec<usize> = (0..3).filter(|&p| p != player).collect();
        let counts = rest.iter().map(|&p| self.strategy_counts[p]).collect();
        GameStructure::from_fn(counts, self.outcomes.clone(), |s| {
            let mut full = [0; 3];
            full[player] = strategy;
            full[rest[0]] = s[0];
            full[rest[1]] = s[1];
            self.outcome(&full)
        })
    }

    /// Fuses players `first` and `second` into one player whose strategy
    /// `i * |S_second| + j` plays `(i, j)`. The merged player comes first in
    /// the resulting two-player structure.
    pub fn merge(&self, first: usize, second: usize) -> Result<GameStructure, GameError> {
        self.require_players(3)?;
        self.check_player(first)?;
        let inner = self.check_player(second)?;
        if first == second {
            return Err(GameError::BadIndex {
                what: "merge partner",
                index: second,
                limit: 3,
            });
        }
        let other = 3 - first - second;
        let counts = vec![self.strategy_counts[first] * inner, self.strategy_counts[other]];
        GameStructure::from_fn(counts, self.outcomes.clone(), |s| {
            let mut full = [0; 3];
            full[first] = s[0] / inner;
            full[second] = s[0] % inner;
            full[other] = s[1];
            self.outcome(&full)
        })
    }

    fn check_player(&self, player: usize) -> Result<usize, GameError> {
        self.strategy_counts.get(player).copied().ok_or(GameError::BadIndex {
            what: "player",
            index: player,
            limit: self.players(),
        })
    }

    /// Composes the outcome function with `map`, landing in `outcomes`.
    pub fn map_outcomes(&self, outcomes: OutcomeSet, map: impl Fn(usize) -> usize) -> Result<GameStructure, GameError> {
        GameStructure::new(
            self.strategy_counts.clone(),
            outcomes,
            self.v.iter().map(|&o| map(o)).collect(),
        )
    }

    pub fn with_preferences(self, preferences: PreferenceProfile) -> Result<NormalFormGame, GameError> {
        NormalFormGame::new(self, preferences)
    }
}

/// Iterator over strategy profiles in row-major order.
#[derive(Debug, Clone)]
pub struct Profiles {
    counts: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Profiles {
    pub fn new(counts: &[usize]) -> Self {
        let next = (!counts.contains(&0)).then(|| vec![0; counts.len()]);
        Profiles {
            counts: counts.to_vec(),
            next,
        }
    }
}

impl Iterator for Profiles {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.counts[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// A game in normal form: a structure plus one preference per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormGame {
    structure: GameStructure,
    preferences: PreferenceProfile,
}

impl NormalFormGame {
    pub fn new(structure: GameStructure, preferences: PreferenceProfile) -> Result<Self, GameError> {
        if preferences.players() != structure.players() {
            return Err(GameError::PlayerCount {
                expected: structure.players(),
                found: preferences.players(),
            });
        }
        if preferences.outcomes() != Some(structure.outcomes()) {
            return Err(GameError::OutcomeMismatch);
        }
        Ok(NormalFormGame { structure, preferences })
    }

    /// Convenience constructor from per-player preferences.
    pub fn from_parts(structure: GameStructure, prefs: Vec<Preference>) -> Result<Self, GameError> {
        let profile = PreferenceProfile::new(prefs)?;
        NormalFormGame::new(structure, profile)
    }

    pub fn structure(&self) -> &GameStructure {
        &self.structure
    }

    pub fn preferences(&self) -> &PreferenceProfile {
        &self.preferences
    }

    pub fn players(&self) -> usize {
        self.structure.players()
    }

    /// First unilateral deviation strictly preferred by the deviating
    /// player, as `(player, strategy)`.
    pub fn improving_deviation(&self, profile: &StrategyProfile) -> Option<(usize, usize)> {
        let here = self.structure.outcome(&profile.0);
        let mut probe = profile.0.clone();
        for player in 0..self.players() {
            let pref = self.preferences.get(player);
            for alt in 0..self.structure.strategy_counts[player] {
                probe[player] = alt;
                if pref.prefers(here, self.structure.outcome(&probe)) {
                    return Some((player, alt));
                }
            }
            probe[player] = profile.0[player];
        }
        None
    }

    /// No player strictly prefers the outcome of a unilateral deviation.
    ///
    /// # Panics
    ///
    /// Panics if `profile` does not fit the game.
    pub fn is_nash_equilibrium(&self, profile: &StrategyProfile) -> bool {
        if let Err(e) = self.structure.check_profile(profile) {
            panic!("invalid profile {profile}: {e}");
        }
        self.improving_deviation(profile).is_none()
    }

    /// Every Nash equilibrium, in lexicographic profile order.
    pub fn find_all_ne(&self, cap: usize) -> Result<Vec<StrategyProfile>, GameError> {
        self.check_cap(cap)?;
        Ok(self
            .structure
            .profiles()
            .map(StrategyProfile)
            .filter(|p| self.improving_deviation(p).is_none())
            .collect())
    }

    /// First Nash equilibrium in lexicographic order, if any.
    pub fn first_ne(&self, cap: usize) -> Result<Option<StrategyProfile>, GameError> {
        self.check_cap(cap)?;
        Ok(self
            .structure
            .profiles()
            .map(StrategyProfile)
            .find(|p| self.improving_deviation(p).is_none()))
    }

    fn check_cap(&self, cap: usize) -> Result<(), GameError> {
        let count = self.structure.profile_count();
        if count > cap {
            return Err(GameError::TooLarge {
                what: "profile",
                count,
                cap,
            });
        }
        Ok(())
    }
}

/// A two-player win-lose game: a structure whose outcomes are labelled as
/// wins for player 1 (bit set) or player 2 (bit clear).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinLoseGame {
    structure: GameStructure,
    label: SubsetWord,
}

impl WinLoseGame {
    pub fn structure(&self) -> &GameStructure {
        &self.structure
    }

    pub fn label(&self) -> &SubsetWord {
        &self.label
    }

    pub fn first_player_wins(&self, profile: &[usize]) -> bool {
        self.label.contains(self.structure.outcome(profile))
    }

    /// Player 1's strategies are scanned first, lowest index first, then
    /// player 2's.
    pub fn winning_strategy(&self) -> Option<(Player, usize)> {
        if let Some(s) = self.structure.enforcing_strategy(Player::One, &self.label) {
            return Some((Player::One, s));
        }
        self.structure
            .enforcing_strategy(Player::Two, &self.label.complement())
            .map(|s| (Player::Two, s))
    }

    /// The same game with explicit outcomes: `0` is a win for player 1, `1`
    /// a win for player 2, each player preferring its own win.
    pub fn to_game(&self) -> NormalFormGame {
        let outcomes = OutcomeSet::labelled(["(1,0)", "(0,1)"]).expect("two labels");
        let structure = self
            .structure
            .map_outcomes(outcomes.clone(), |o| if self.label.contains(o) { 0 } else { 1 })
            .expect("relabelling keeps the shape");
        let first = Preference::new(outcomes.clone(), [(1, 0)]).expect("valid pair");
        let second = Preference::new(outcomes, [(0, 1)]).expect("valid pair");
        NormalFormGame::from_parts(structure, vec![first, second]).expect("consistent game")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labelled(labels: &[&str]) -> OutcomeSet {
        OutcomeSet::labelled(labels.iter().copied()).unwrap()
    }

    /// Players prefer greater payoffs; outcomes are the distinct payoff pairs.
    fn payoff_game(rows: usize, cols: usize, payoffs: &[(i32, i32)]) -> NormalFormGame {
        let mut distinct: Vec<(i32, i32)> = payoffs.to_vec();
        distinct.sort();
        distinct.dedup();
        let outcomes = OutcomeSet::new(distinct.len()).unwrap();
        let v = payoffs
            .iter()
            .map(|p| distinct.iter().position(|d| d == p).unwrap())
            .collect();
        let st = GameStructure::new(vec![rows, cols], outcomes.clone(), v).unwrap();
        let first = Preference::from_fn(outcomes.clone(), |x, y| distinct[x].0 < distinct[y].0);
        let second = Preference::from_fn(outcomes, |x, y| distinct[x].1 < distinct[y].1);
        NormalFormGame::from_parts(st, vec![first, second]).unwrap()
    }

    #[test]
    fn payoff_arrays() {
        let first = payoff_game(2, 2, &[(1, 0), (5, 0), (2, 4), (5, 3)]);
        let ne = first.find_all_ne(100).unwrap();
        assert_eq!(ne, vec![StrategyProfile::new([0, 1]), StrategyProfile::new([1, 0])]);

        let pennies = payoff_game(2, 2, &[(0, 1), (1, 0), (1, 0), (0, 1)]);
        for p in pennies.structure().profiles() {
            assert!(!pennies.is_nash_equilibrium(&StrategyProfile(p)));
        }

        let symmetric = payoff_game(2, 2, &[(2, 1), (0, 0), (0, 0), (1, 2)]);
        assert_eq!(
            symmetric.find_all_ne(100).unwrap(),
            vec![StrategyProfile::new([0, 0]), StrategyProfile::new([1, 1])]
        );
    }

    #[test]
    fn one_player_one_strategy() {
        let st = GameStructure::new(vec![1], OutcomeSet::new(1).unwrap(), vec![0]).unwrap();
        let g = NormalFormGame::from_parts(st, vec![Preference::indifferent(OutcomeSet::new(1).unwrap())]).unwrap();
        assert!(g.is_nash_equilibrium(&StrategyProfile::new([0])));
    }

    #[test]
    fn win_lose_arrays() {
        let o = OutcomeSet::new(2).unwrap();
        // Outcome 0 is (1,0), a win for the row player.
        let cases = [
            (vec![1, 1, 0, 0], Some((Player::One, 1))),
            (vec![0, 1, 0, 1], Some((Player::Two, 1))),
            (vec![1, 0, 0, 1], None),
        ];
        for (v, expected) in cases {
            let st = GameStructure::new(vec![2, 2], o.clone(), v).unwrap();
            let w = st.derive_win_lose(SubsetWord::from_indices(2, [0])).unwrap();
            assert_eq!(w.winning_strategy(), expected);
        }
    }

    #[test]
    fn determinacy_of_small_structures() {
        let xy = labelled(&["X", "Y"]);
        let xy_yx = GameStructure::new(vec![2, 2], xy, vec![0, 1, 1, 0]).unwrap();
        assert!(!xy_yx.is_determined(20).unwrap());
        let xyz = labelled(&["X", "Y", "Z"]);
        let xz_yy = GameStructure::new(vec![2, 2], xyz.clone(), vec![0, 2, 1, 1]).unwrap();
        assert!(xz_yy.is_determined(20).unwrap());
        let xzy_yyy = GameStructure::new(vec![2, 3], xyz, vec![0, 2, 1, 1, 1, 1]).unwrap();
        assert!(xzy_yyy.is_determined(20).unwrap());
        assert!(xzy_yyy.can_enforce(Player::One, &SubsetWord::from_indices(3, [1])));
        for st in [&xy_yx, &xz_yy, &xzy_yyy] {
            assert_eq!(
                st.is_determined(20).unwrap(),
                st.is_determined_by_winning_strategies(20).unwrap()
            );
        }
        assert!(matches!(
            xz_yy.is_determined(2),
            Err(GameError::TooLarge { what: "outcome", .. })
        ));
    }

    #[test]
    fn enforcement_edges() {
        let st = GameStructure::new(vec![2, 2], OutcomeSet::new(3).unwrap(), vec![0, 1, 2, 1]).unwrap();
        for p in Player::BOTH {
            assert!(st.can_enforce(p, &SubsetWord::full(3)));
            assert!(!st.can_enforce(p, &SubsetWord::empty(3)));
        }
    }

    #[test]
    fn derive_round_trip() {
        let st = GameStructure::new(vec![2, 2], OutcomeSet::new(3).unwrap(), vec![0, 1, 2, 1]).unwrap();
        let label = SubsetWord::from_indices(3, [0, 2]);
        let w = st.derive_win_lose(label.clone()).unwrap();
        assert_eq!(w.label(), &label);
        let all = st.derive_win_lose(SubsetWord::full(3)).unwrap();
        assert!(all.structure().profiles().all(|p| all.first_player_wins(&p)));
    }

    #[test]
    fn slice_and_merge_preserve_values() {
        let o = OutcomeSet::new(5).unwrap();
        let st = GameStructure::from_fn(vec![2, 3, 4], o, |s| (s[0] * 7 + s[1] * 3 + s[2]) % 5).unwrap();
        for player in 0..3 {
            for strategy in 0..st.strategy_counts()[player] {
                let sl = st.slice(player, strategy).unwrap();
                for p in sl.profiles() {
                    let mut full: Vec<usize> = p.clone();
                    full.insert(player, strategy);
                    assert_eq!(sl.outcome(&p), st.outcome(&full));
                }
            }
        }
        for (a, b) in [(0, 1), (1, 0), (0, 2), (1, 2)] {
            let m = st.merge(a, b).unwrap();
            let c = 3 - a - b;
            for p in st.profiles() {
                let merged = p[a] * st.strategy_counts()[b] + p[b];
                assert_eq!(m.outcome(&[merged, p[c]]), st.outcome(&p));
            }
        }
        assert!(matches!(
            st.slice(3, 0),
            Err(GameError::BadIndex { what: "player", .. })
        ));
        assert!(matches!(
            st.slice(0, 2),
            Err(GameError::BadIndex { what: "strategy", .. })
        ));
        assert!(st.merge(1, 1).is_err());
    }

    #[test]
    fn constant_slices_and_merges() {
        let st = GameStructure::from_fn(vec![2, 2, 2], OutcomeSet::new(2).unwrap(), |_| 1).unwrap();
        assert!(st.slice(2, 1).unwrap().tensor().iter().all(|&o| o == 1));
        assert!(st.merge(0, 1).unwrap().tensor().iter().all(|&o| o == 1));
    }

    #[test]
    fn invalid_structures() {
        let o = OutcomeSet::new(2).unwrap();
        assert_eq!(
            GameStructure::new(vec![2, 2], o.clone(), vec![0; 3]),
            Err(GameError::ShapeMismatch { expected: 4, found: 3 })
        );
        assert_eq!(
            GameStructure::new(vec![2, 0], o.clone(), vec![]),
            Err(GameError::EmptyStrategySet(1))
        );
        assert!(matches!(
            GameStructure::new(vec![1, 2], o, vec![0, 2]),
            Err(GameError::OutcomeOutOfRange { entry: 1, .. })
        ));
    }

    #[test]
    fn profile_cap() {
        let st = GameStructure::new(vec![2, 2], OutcomeSet::new(1).unwrap(), vec![0; 4]).unwrap();
        let o = st.outcomes().clone();
        let g = NormalFormGame::from_parts(st, vec![Preference::indifferent(o.clone()), Preference::indifferent(o)])
            .unwrap();
        assert!(matches!(g.find_all_ne(3), Err(GameError::TooLarge { .. })));
        assert_eq!(g.find_all_ne(4).unwrap().len(), 4);
    }
}

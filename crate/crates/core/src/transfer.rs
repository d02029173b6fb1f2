//! Equilibrium transfer from win-lose determinacy to multi-outcome games.
//!
//! [`transfer`] is generic over a [`WinLoseOracle`]. It fixes a linear
//! extension `<` of player 1's preference, builds the characteristic word of
//! the `<`-greatest (in the power-set lift) outcome set player 1 can enforce
//! with one winner query per outcome, then asks for two winning strategies:
//! one for player 1 enforcing that set and one for player 2 confining play to
//! a single outcome of it.
//!
//! The companion reductions are [`finite_height_reduce`] (rank pairs as
//! outcomes), [`eliminate_dominated_outcomes`] and [`minimax_transfer`].

use std::fmt;

use thiserror::Error;

use crate::normal_form::{GameError, GameStructure, NormalFormGame, StrategyProfile};
use crate::player::Player;
use crate::prefs::{OutcomeSet, Preference, PreferenceProfile};
use crate::subset::SubsetWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("derived win-lose game has no winner: {0}")]
    Undetermined(String),
    #[error("oracle failed: {0}")]
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("transfer needs exactly two players, found {0}")]
    NotTwoPlayer(usize),
    #[error("preference of {0} is cyclic")]
    CyclicPreference(Player),
    #[error("oracle has {found} outcomes but the preferences have {expected}")]
    OutcomeMismatch { expected: usize, found: usize },
    #[error("structure is not determined: {0}")]
    NotDetermined(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("preference of {0} has unbounded height")]
    UnboundedHeight(Player),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("preference of player 2 is not the inverse of player 1's")]
    NotZeroSumLike,
    #[error("preference of {0} is not a strict linear order")]
    NotStrictLinear(Player),
}

/// A winning strategy of a derived win-lose game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<S> {
    pub player: Player,
    pub strategy: S,
    /// The strategy belongs to the oracle's distinguished class.
    pub restricted: bool,
}

/// A solver for the win-lose games derived from one two-player structure.
///
/// A label bit set for outcome `o` means `o` is a win for player 1.
pub trait WinLoseOracle {
    type Strategy: Clone + fmt::Debug;

    fn outcome_count(&self) -> usize;

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError>;

    /// A winning strategy for the winner of `label`.
    fn strategy(&self, label: &SubsetWord) -> Result<Witness<Self::Strategy>, OracleError>;
}

impl<O: WinLoseOracle + ?Sized> WinLoseOracle for &O {
    type Strategy = O::Strategy;

    fn outcome_count(&self) -> usize {
        (**self).outcome_count()
    }

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError> {
        (**self).winner(label)
    }

    fn strategy(&self, label: &SubsetWord) -> Result<Witness<Self::Strategy>, OracleError> {
        (**self).strategy(label)
    }
}

/// Oracle queries made during one transfer run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CallCounter {
    pub winner_calls: usize,
    pub strategy_calls: usize,
}

impl fmt::Display for CallCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "winner_calls={} strategy_calls={}",
            self.winner_calls, self.strategy_calls
        )
    }
}

/// Builds the characteristic word, indexed by outcome, of the greatest set
/// player 1 can enforce, where sets are compared by the lift of `linear`
/// (least preferred outcome first).
///
/// Position `i` is decided by asking who wins `u·0·1^k`, where `u` holds the
/// bits already decided: the bit is `0` when player 1 still wins and `1`
/// otherwise. Exactly `n` winner calls are made.
pub fn max_enforceable_word<O: WinLoseOracle + ?Sized>(
    oracle: &O,
    linear: &[usize],
    counter: &mut CallCounter,
) -> Result<SubsetWord, OracleError> {
    let n = linear.len();
    let mut word = vec![true; n];
    for i in 0..n {
        word[i] = false;
        let probe = SubsetWord::from_positions(linear, &word);
        counter.winner_calls += 1;
        word[i] = oracle.winner(&probe)? != Player::One;
    }
    Ok(SubsetWord::from_positions(linear, &word))
}

/// Everything a transfer run produced.
#[derive(Debug, Clone)]
pub struct TransferResult<S> {
    /// Player 1's strategy, enforcing `enforced`.
    pub first: Witness<S>,
    /// Player 2's strategy, enforcing the complement of `excluded`.
    pub second: Witness<S>,
    /// The greatest set player 1 can enforce.
    pub enforced: SubsetWord,
    /// The label whose derived game player 2 wins.
    pub excluded: SubsetWord,
    /// The outcome the two strategies produce together.
    pub outcome: usize,
    /// One-based position of `outcome` in `linear`.
    pub position: usize,
    /// The linear extension of player 1's preference that was used.
    pub linear: Vec<usize>,
    pub counter: CallCounter,
}

fn check_two_player(prefs: &PreferenceProfile) -> Result<(), TransferError> {
    if prefs.players() == 2 {
        Ok(())
    } else {
        Err(TransferError::NotTwoPlayer(prefs.players()))
    }
}

/// Runs the transfer algorithm against `oracle` for the given preferences.
///
/// Determinacy is not checked upfront. If the oracle's answers are
/// inconsistent with a determined structure, the run fails with
/// [`TransferError::NotDetermined`] or an oracle error.
pub fn transfer<O: WinLoseOracle + ?Sized>(
    oracle: &O,
    prefs: &PreferenceProfile,
) -> Result<TransferResult<O::Strategy>, TransferError> {
    check_two_player(prefs)?;
    let n = prefs.get(0).size();
    if oracle.outcome_count() != n {
        return Err(TransferError::OutcomeMismatch {
            expected: n,
            found: oracle.outcome_count(),
        });
    }
    let linear = prefs
        .get(0)
        .linear_extension()
        .map_err(|_| TransferError::CyclicPreference(Player::One))?;
    if !prefs.get(1).is_acyclic() {
        return Err(TransferError::CyclicPreference(Player::Two));
    }

    let mut counter = CallCounter::default();
    let enforced = max_enforceable_word(oracle, &linear, &mut counter)?;
    counter.strategy_calls += 1;
    let first = oracle.strategy(&enforced)?;
    if first.player != Player::One {
        return Err(TransferError::NotDetermined(format!(
            "player 1 has no strategy enforcing {enforced}"
        )));
    }

    let outcome = prefs
        .get(1)
        .maximal_in(&enforced)
        .ok_or_else(|| TransferError::NotDetermined("player 1 enforces the empty set".into()))?;
    let position = linear
        .iter()
        .position(|&o| o == outcome)
        .expect("linear extension lists every outcome")
        + 1;
    let mut word = enforced.to_positions(&linear);
    word[position - 1] = false;
    for bit in &mut word[position..] {
        *bit = true;
    }
    let excluded = SubsetWord::from_positions(&linear, &word);
    counter.strategy_calls += 1;
    let second = oracle.strategy(&excluded)?;
    if second.player != Player::Two {
        return Err(TransferError::NotDetermined(format!(
            "player 2 does not win the derived game labelled {excluded}"
        )));
    }

    Ok(TransferResult {
        first,
        second,
        enforced,
        excluded,
        outcome,
        position,
        linear,
        counter,
    })
}

/// A verified equilibrium of a normal-form game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equilibrium {
    pub profile: StrategyProfile,
    pub outcome: usize,
    /// Both strategies lie in the oracle's distinguished classes.
    pub restricted: bool,
    pub counter: CallCounter,
}

/// Transfer on a normal-form game whose oracle returns strategy indices into
/// the game's own strategy sets. The result is checked against the game.
pub fn transfer_equilibrium<O>(g: &NormalFormGame, oracle: &O) -> Result<Equilibrium, TransferError>
where
    O: WinLoseOracle<Strategy = usize> + ?Sized,
{
    if g.players() != 2 {
        return Err(TransferError::NotTwoPlayer(g.players()));
    }
    let run = transfer(oracle, g.preferences())?;
    let profile = StrategyProfile::new([run.first.strategy, run.second.strategy]);
    g.structure().check_profile(&profile)?;
    verify_equilibrium(g, &profile, Some(run.outcome))?;
    Ok(Equilibrium {
        outcome: run.outcome,
        profile,
        restricted: run.first.restricted && run.second.restricted,
        counter: run.counter,
    })
}

fn verify_equilibrium(
    g: &NormalFormGame,
    profile: &StrategyProfile,
    expected: Option<usize>,
) -> Result<(), TransferError> {
    let played = g.structure().outcome(profile.choices());
    if expected.is_some_and(|m| m != played) {
        return Err(TransferError::NotDetermined(format!(
            "profile {profile} plays outcome {played} instead of {}",
            expected.unwrap_or_default()
        )));
    }
    if let Some((player, alt)) = g.improving_deviation(profile) {
        return Err(TransferError::NotDetermined(format!(
            "profile {profile} is not a Nash equilibrium: player {} improves with strategy {alt}",
            player + 1
        )));
    }
    Ok(())
}

/// Solves derived games of a two-player normal-form structure by scanning
/// strategies.
///
/// Optional classes mark each player's distinguished strategies; witnesses
/// are drawn from them first (lowest index), and from all strategies
/// otherwise. Without a class every strategy counts as distinguished.
#[derive(Debug, Clone)]
pub struct BruteForceOracle {
    structure: GameStructure,
    classes: [Option<Vec<bool>>; 2],
}

impl BruteForceOracle {
    pub fn new(structure: GameStructure) -> Result<Self, TransferError> {
        if structure.players() != 2 {
            return Err(TransferError::NotTwoPlayer(structure.players()));
        }
        Ok(BruteForceOracle {
            structure,
            classes: [None, None],
        })
    }

    /// Restricts the distinguished class of `player` to the marked strategies.
    pub fn with_class(mut self, player: Player, class: Vec<bool>) -> Result<Self, TransferError> {
        let limit = self.structure.strategy_counts()[player.index()];
        if class.len() != limit {
            return Err(GameError::ShapeMismatch {
                expected: limit,
                found: class.len(),
            }
            .into());
        }
        self.classes[player.index()] = Some(class);
        Ok(self)
    }

    pub fn structure(&self) -> &GameStructure {
        &self.structure
    }

    fn check_label(&self, label: &SubsetWord) -> Result<(), OracleError> {
        if label.universe() == self.structure.outcome_count() {
            Ok(())
        } else {
            Err(OracleError::Failed(format!(
                "label {label} does not cover {} outcomes",
                self.structure.outcome_count()
            )))
        }
    }

    fn target(label: &SubsetWord, player: Player) -> SubsetWord {
        match player {
            Player::One => label.clone(),
            Player::Two => label.complement(),
        }
    }
}

impl WinLoseOracle for BruteForceOracle {
    type Strategy = usize;

    fn outcome_count(&self) -> usize {
        self.structure.outcome_count()
    }

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError> {
        self.check_label(label)?;
        Player::BOTH
            .into_iter()
            .find(|&p| self.structure.can_enforce(p, &Self::target(label, p)))
            .ok_or_else(|| OracleError::Undetermined(label.to_string()))
    }

    fn strategy(&self, label: &SubsetWord) -> Result<Witness<usize>, OracleError> {
        let player = self.winner(label)?;
        let target = Self::target(label, player);
        let wins = |s: &usize| self.structure.reachable(player, *s).all(|o| target.contains(o));
        let count = self.structure.strategy_counts()[player.index()];
        let witness = match &self.classes[player.index()] {
            None => (0..count).find(wins).map(|s| (s, true)),
            Some(class) => (0..count)
                .filter(|&s| class[s])
                .find(wins)
                .map(|s| (s, true))
                .or_else(|| (0..count).find(wins).map(|s| (s, false))),
        };
        let (strategy, restricted) = witness.expect("the winner has a winning strategy");
        Ok(Witness {
            player,
            strategy,
            restricted,
        })
    }
}

/// Transfer on a normal-form game with the brute-force oracle.
pub fn transfer_brute_force(g: &NormalFormGame) -> Result<Equilibrium, TransferError> {
    let oracle = BruteForceOracle::new(g.structure().clone())?;
    transfer_equilibrium(g, &oracle)
}

/// Answers labels over a coarser outcome set by pulling them back along
/// `map` (original outcome to coarse outcome) and asking `inner`.
#[derive(Debug, Clone)]
pub struct Pullback<'a, O: ?Sized> {
    inner: &'a O,
    map: Vec<usize>,
    size: usize,
}

impl<'a, O: WinLoseOracle + ?Sized> Pullback<'a, O> {
    pub fn new(inner: &'a O, map: Vec<usize>, size: usize) -> Result<Self, TransferError> {
        if map.len() != inner.outcome_count() {
            return Err(TransferError::OutcomeMismatch {
                expected: inner.outcome_count(),
                found: map.len(),
            });
        }
        if map.iter().any(|&c| c >= size) {
            return Err(TransferError::HypothesisViolated(
                "outcome map leaves the coarse outcome set".into(),
            ));
        }
        Ok(Pullback { inner, map, size })
    }

    fn pull(&self, label: &SubsetWord) -> SubsetWord {
        SubsetWord::from_bits(self.map.iter().map(|&c| label.contains(c)).collect())
    }
}

impl<O: WinLoseOracle + ?Sized> WinLoseOracle for Pullback<'_, O> {
    type Strategy = O::Strategy;

    fn outcome_count(&self) -> usize {
        self.size
    }

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError> {
        self.inner.winner(&self.pull(label))
    }

    fn strategy(&self, label: &SubsetWord) -> Result<Witness<O::Strategy>, OracleError> {
        self.inner.strategy(&self.pull(label))
    }
}

/// Preferences over rank pairs: outcome `o` becomes `(ρ1(o), ρ2(o))`, and
/// each player compares only its own coordinate. Only pairs realised by
/// some outcome are kept, so there are never more pairs than outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReduction {
    pub preferences: PreferenceProfile,
    /// Original outcome to the index of its rank pair in `pairs`.
    pub outcome_map: Vec<usize>,
    /// Realised rank pairs, ascending.
    pub pairs: Vec<(usize, usize)>,
}

pub fn rank_reduction(prefs: &PreferenceProfile) -> Result<RankReduction, TransferError> {
    check_two_player(prefs)?;
    let ranks = [Player::One, Player::Two].map(|p| {
        prefs
            .get(p.index())
            .rank()
            .map_err(|_| TransferError::UnboundedHeight(p))
    });
    let [r1, r2] = ranks;
    let (r1, r2) = (r1?, r2?);
    let of = |o: usize| (r1.rank(o), r2.rank(o));
    let n = prefs.get(0).size();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(of).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let labels = pairs.iter().map(|(a, b)| format!("({a},{b})"));
    let outcomes = OutcomeSet::labelled(labels).expect("rank pairs are distinct");
    let first = Preference::from_fn(outcomes.clone(), |x, y| pairs[x].0 < pairs[y].0);
    let second = Preference::from_fn(outcomes, |x, y| pairs[x].1 < pairs[y].1);
    let outcome_map = (0..n)
        .map(|o| pairs.binary_search(&of(o)).expect("pair was collected"))
        .collect();
    Ok(RankReduction {
        preferences: PreferenceProfile::new(vec![first, second]).expect("shared outcome set"),
        outcome_map,
        pairs,
    })
}

/// The rank-pair game of a two-player game with finite-height preferences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightReduction {
    pub game: NormalFormGame,
    pub outcome_map: Vec<usize>,
}

pub fn finite_height_reduce(g: &NormalFormGame) -> Result<HeightReduction, TransferError> {
    if g.players() != 2 {
        return Err(TransferError::NotTwoPlayer(g.players()));
    }
    let reduction = rank_reduction(g.preferences())?;
    let outcomes = reduction.preferences.outcomes().expect("two preferences").clone();
    let structure = g.structure().map_outcomes(outcomes, |o| reduction.outcome_map[o])?;
    Ok(HeightReduction {
        game: NormalFormGame::new(structure, reduction.preferences)?,
        outcome_map: reduction.outcome_map,
    })
}

/// Transfer through the rank-pair reduction. Words in the result refer to
/// rank-pair outcomes; strategies are `oracle`'s own.
pub fn transfer_finite_height<O: WinLoseOracle + ?Sized>(
    oracle: &O,
    prefs: &PreferenceProfile,
) -> Result<(TransferResult<O::Strategy>, RankReduction), TransferError> {
    let reduction = rank_reduction(prefs)?;
    let coarse = Pullback::new(oracle, reduction.outcome_map.clone(), reduction.pairs.len())?;
    let run = transfer(&coarse, &reduction.preferences)?;
    Ok((run, reduction))
}

/// The game after merging the outcomes player 1 can exclude with one
/// strategy into a single worst outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub game: NormalFormGame,
    /// Original outcome behind each new outcome, ascending.
    pub kept: Vec<usize>,
}

/// Keeps the outcomes `x` with `o ≤1 x` and sends the others to `o`.
///
/// Player 1's order is restricted; for player 2, `x <'2 y` iff `x ≠ o` and
/// (`x <2 y` or `y = o`). Requires strict linear preferences and a player-1
/// strategy `e` whose every outcome is strictly above `o`.
pub fn eliminate_dominated_outcomes(g: &NormalFormGame, e: usize, o: usize) -> Result<Elimination, TransferError> {
    if g.players() != 2 {
        return Err(TransferError::NotTwoPlayer(g.players()));
    }
    for p in Player::BOTH {
        if !g.preferences().get(p.index()).is_strict_linear() {
            return Err(TransferError::NotStrictLinear(p));
        }
    }
    let st = g.structure();
    let n = st.outcome_count();
    if o >= n {
        return Err(GameError::BadIndex {
            what: "outcome",
            index: o,
            limit: n,
        }
        .into());
    }
    if e >= st.strategy_counts()[0] {
        return Err(GameError::BadIndex {
            what: "strategy",
            index: e,
            limit: st.strategy_counts()[0],
        }
        .into());
    }
    let (lt1, lt2) = (g.preferences().get(0), g.preferences().get(1));
    if let Some(bad) = st.reachable(Player::One, e).find(|&x| !lt1.prefers(o, x)) {
        return Err(TransferError::HypothesisViolated(format!(
            "strategy {e} reaches outcome {bad}, which is not strictly above outcome {o} for player 1"
        )));
    }

    let kept: Vec<usize> = (0..n).filter(|&x| x == o || lt1.prefers(o, x)).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &x) in kept.iter().enumerate() {
        index[x] = i;
    }
    let new_o = index[o];
    let outcomes = match st.outcomes().labels() {
        Some(labels) => OutcomeSet::labelled(kept.iter().map(|&x| labels[x].clone())),
        None => OutcomeSet::new(kept.len()),
    }
    .expect("kept labels stay distinct");
    let structure = st.map_outcomes(
        outcomes.clone(),
        |x| {
            if index[x] == usize::MAX {
                new_o
            } else {
                index[x]
            }
        },
    )?;
    let first = Preference::from_fn(outcomes.clone(), |x, y| lt1.prefers(kept[x], kept[y]));
    let second = Preference::from_fn(outcomes, |x, y| {
        x != new_o && (lt2.prefers(kept[x], kept[y]) || y == new_o)
    });
    let game = NormalFormGame::from_parts(structure, vec![first, second])?;
    Ok(Elimination { game, kept })
}

/// Equilibrium of a game with a strict linear preference for player 1 and
/// its inverse for player 2.
///
/// Scans the terminal intervals `{x : m ≤1 x}` from the top and stops at the
/// first one player 1 can enforce; player 2 then enforces `{x : x ≤1 m}`.
pub fn minimax_transfer(g: &NormalFormGame) -> Result<Equilibrium, TransferError> {
    if g.players() != 2 {
        return Err(TransferError::NotTwoPlayer(g.players()));
    }
    let (lt1, lt2) = (g.preferences().get(0), g.preferences().get(1));
    if !lt1.is_strict_linear() || *lt2 != lt1.inverse() {
        return Err(TransferError::NotZeroSumLike);
    }
    let st = g.structure();
    let n = st.outcome_count();
    let linear = lt1
        .linear_extension()
        .map_err(|_| TransferError::CyclicPreference(Player::One))?;
    let mut counter = CallCounter::default();
    for k in (0..n).rev() {
        let interval = SubsetWord::from_indices(n, linear[k..].iter().copied());
        counter.winner_calls += 1;
        let Some(s1) = st.enforcing_strategy(Player::One, &interval) else {
            continue;
        };
        let below = SubsetWord::from_indices(n, linear[..=k].iter().copied());
        counter.strategy_calls += 1;
        let s2 = st.enforcing_strategy(Player::Two, &below).ok_or_else(|| {
            TransferError::NotDetermined(format!("neither player wins the derived game labelled {below}"))
        })?;
        let profile = StrategyProfile::new([s1, s2]);
        verify_equilibrium(g, &profile, Some(linear[k]))?;
        return Ok(Equilibrium {
            profile,
            outcome: linear[k],
            restricted: true,
            counter,
        });
    }
    unreachable!("player 1 enforces the full outcome set")
}

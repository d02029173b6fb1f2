//! Multi-outcome priority and Muller games, and their equilibria via transfer.
//!
//! A priority game maps the least color seen infinitely often to an outcome;
//! a Muller game maps the whole cluster set. The outcome attached to the
//! empty cluster set (`bottom`) never occurs on a finite sink-free arena.

use std::collections::BTreeMap;

use super::muller::{solve_muller_with, MAX_MULLER_COLORS};
use super::parity::solve_parity;
use super::residual::find_profitable_deviation;
use super::{play_of, Arena, ColorSet, FiniteMemoryStrategy, GraphError, Play, PositionalStrategy};
use crate::normal_form::{GameStructure, NormalFormGame};
use crate::player::Player;
use crate::prefs::PreferenceProfile;
use crate::subset::SubsetWord;
use crate::transfer::{
    transfer, transfer_finite_height, CallCounter, OracleError, TransferError, WinLoseOracle, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutcomeRule {
    /// Least infinitely-seen color to outcome.
    Priority { map: BTreeMap<usize, usize>, bottom: usize },
    /// Cluster set to outcome; `default` covers sets missing from `map`.
    Muller {
        map: BTreeMap<ColorSet, usize>,
        default: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiOutcomeGraphGame {
    arena: Arena,
    start: usize,
    rule: OutcomeRule,
    preferences: PreferenceProfile,
}

impl MultiOutcomeGraphGame {
    pub fn new(
        arena: Arena,
        start: usize,
        rule: OutcomeRule,
        preferences: PreferenceProfile,
    ) -> Result<Self, GraphError> {
        arena.check_vertex(start)?;
        if preferences.players() != 2 {
            return Err(GraphError::PlayerCount(preferences.players()));
        }
        let size = preferences.get(0).size();
        let check = |o: usize| {
            if o < size {
                Ok(())
            } else {
                Err(GraphError::OutcomeOutOfRange { outcome: o, size })
            }
        };
        let colors = arena.occurring_colors();
        match &rule {
            OutcomeRule::Priority { map, bottom } => {
                check(*bottom)?;
                for &o in map.values() {
                    check(o)?;
                }
                if let Some(c) = colors.iter().find(|c| !map.contains_key(c)) {
                    return Err(GraphError::MissingOutcome(format!("color {c}")));
                }
            }
            OutcomeRule::Muller { map, default } => {
                if colors.len() > MAX_MULLER_COLORS {
                    return Err(GraphError::TooManyColors {
                        count: colors.len(),
                        cap: MAX_MULLER_COLORS,
                    });
                }
                let occurring = ColorSet::from_colors(colors.iter().copied())?;
                for &o in map.values().chain(default) {
                    check(o)?;
                }
                if default.is_none() {
                    if let Some(s) = occurring.subsets().find(|s| !s.is_empty() && !map.contains_key(s)) {
                        return Err(GraphError::MissingOutcome(format!("color set {s}")));
                    }
                }
            }
        }
        Ok(MultiOutcomeGraphGame {
            arena,
            start,
            rule,
            preferences,
        })
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn rule(&self) -> &OutcomeRule {
        &self.rule
    }

    pub fn preferences(&self) -> &PreferenceProfile {
        &self.preferences
    }

    pub fn outcome_count(&self) -> usize {
        self.preferences.get(0).size()
    }

    pub fn is_priority(&self) -> bool {
        matches!(self.rule, OutcomeRule::Priority { .. })
    }

    /// Outcome of a play whose cycle carries exactly `colors`.
    pub fn outcome_of_colors(&self, colors: &[usize]) -> usize {
        match &self.rule {
            OutcomeRule::Priority { map, bottom } => match colors.iter().min() {
                Some(c) => map[c],
                None => *bottom,
            },
            OutcomeRule::Muller { map, default } => {
                let set = ColorSet::from_colors(colors.iter().copied()).expect("colors were validated");
                map.get(&set).copied().or(*default).expect("outcome map was validated")
            }
        }
    }

    pub fn outcome_of_play(&self, play: &Play) -> usize {
        self.outcome_of_colors(&play.cycle_colors(&self.arena))
    }

    pub fn outcome_of(&self, first: &FiniteMemoryStrategy, second: &FiniteMemoryStrategy) -> usize {
        self.outcome_of_play(&play_of(&self.arena, self.start, first, second))
    }

    /// The parity arena whose winner agrees with the derived win-lose game
    /// of `label`: color `c` becomes `2c` when its outcome is a win for
    /// player 1, and `2c + 1` otherwise.
    pub fn renamed_parity_arena(&self, label: &SubsetWord) -> Arena {
        let OutcomeRule::Priority { map, .. } = &self.rule else {
            panic!("color renaming applies to priority games");
        };
        let colors = self
            .arena
            .colors()
            .iter()
            .map(|c| 2 * c + usize::from(!label.contains(map[c])))
            .collect();
        self.arena.recolored(colors).expect("same vertex count")
    }
}

fn check_label(game: &MultiOutcomeGraphGame, label: &SubsetWord) -> Result<(), OracleError> {
    if label.universe() == game.outcome_count() {
        Ok(())
    } else {
        Err(OracleError::Failed(format!(
            "label {label} does not cover {} outcomes",
            game.outcome_count()
        )))
    }
}

/// Solves derived games of a priority game through color renaming and the
/// parity solver. Witnesses are positional.
#[derive(Debug, Clone, Copy)]
pub struct PriorityOracle<'a> {
    game: &'a MultiOutcomeGraphGame,
}

impl<'a> PriorityOracle<'a> {
    pub fn new(game: &'a MultiOutcomeGraphGame) -> Result<Self, GraphError> {
        if !game.is_priority() {
            return Err(GraphError::InvalidStrategy("priority oracle on a Muller game".into()));
        }
        Ok(PriorityOracle { game })
    }
}

impl WinLoseOracle for PriorityOracle<'_> {
    type Strategy = PositionalStrategy;

    fn outcome_count(&self) -> usize {
        self.game.outcome_count()
    }

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError> {
        Ok(self.strategy(label)?.player)
    }

    fn strategy(&self, label: &SubsetWord) -> Result<Witness<PositionalStrategy>, OracleError> {
        check_label(self.game, label)?;
        let renamed = self.game.renamed_parity_arena(label);
        let sol = solve_parity(&renamed, self.game.start);
        Ok(Witness {
            player: sol.winner,
            strategy: sol.strategy,
            restricted: true,
        })
    }
}

/// Solves derived games of a Muller game through the LAR reduction.
/// Witnesses are finite-memory.
#[derive(Debug, Clone, Copy)]
pub struct MullerOracle<'a> {
    game: &'a MultiOutcomeGraphGame,
}

impl<'a> MullerOracle<'a> {
    pub fn new(game: &'a MultiOutcomeGraphGame) -> Self {
        MullerOracle { game }
    }
}

impl WinLoseOracle for MullerOracle<'_> {
    type Strategy = FiniteMemoryStrategy;

    fn outcome_count(&self) -> usize {
        self.game.outcome_count()
    }

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError> {
        Ok(self.strategy(label)?.player)
    }

    fn strategy(&self, label: &SubsetWord) -> Result<Witness<FiniteMemoryStrategy>, OracleError> {
        check_label(self.game, label)?;
        let game = self.game;
        let sol = solve_muller_with(&game.arena, game.start, |set| {
            label.contains(game.outcome_of_colors(&set.iter().collect::<Vec<_>>()))
        })
        .map_err(|e| OracleError::Failed(e.to_string()))?;
        Ok(Witness {
            player: sol.winner,
            strategy: sol.strategy,
            restricted: true,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphProfile {
    Positional([PositionalStrategy; 2]),
    FiniteMemory([FiniteMemoryStrategy; 2]),
}

impl GraphProfile {
    pub fn machines(&self, arena: &Arena) -> [FiniteMemoryStrategy; 2] {
        match self {
            GraphProfile::Positional(p) => p.each_ref().map(|s| s.to_finite_memory(arena)),
            GraphProfile::FiniteMemory(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEquilibrium {
    pub profile: GraphProfile,
    pub outcome: usize,
    pub restricted: bool,
    pub counter: CallCounter,
}

/// A Nash equilibrium of a multi-outcome graph game: positional for
/// priority games (through the rank-pair reduction), finite-memory for
/// Muller games. The profile is checked against every deviation before it
/// is returned.
pub fn multi_outcome_ne(game: &MultiOutcomeGraphGame) -> Result<GraphEquilibrium, GraphError> {
    let (profile, restricted, counter, (target, map)) = match game.rule {
        OutcomeRule::Priority { .. } => {
            let oracle = PriorityOracle::new(game)?;
            let (run, reduction) = transfer_finite_height(&oracle, &game.preferences)?;
            let restricted = run.first.restricted && run.second.restricted;
            let profile = GraphProfile::Positional([run.first.strategy, run.second.strategy]);
            (profile, restricted, run.counter, (run.outcome, reduction.outcome_map))
        }
        OutcomeRule::Muller { .. } => {
            let oracle = MullerOracle::new(game);
            let run = transfer(&oracle, &game.preferences)?;
            let restricted = run.first.restricted && run.second.restricted;
            let profile = GraphProfile::FiniteMemory([run.first.strategy, run.second.strategy]);
            (
                profile,
                restricted,
                run.counter,
                (run.outcome, (0..game.outcome_count()).collect::<Vec<_>>()),
            )
        }
    };
    let [s1, s2] = profile.machines(&game.arena);
    let outcome = game.outcome_of(&s1, &s2);
    if map[outcome] != target {
        return Err(TransferError::NotDetermined(format!(
            "profile plays outcome {outcome} outside the transferred class"
        ))
        .into());
    }
    if let Some(dev) = find_profitable_deviation(game, &s1, &s2) {
        return Err(TransferError::NotDetermined(format!("{} deviates to outcome {}", dev.player, dev.outcome)).into());
    }
    Ok(GraphEquilibrium {
        profile,
        outcome,
        restricted,
        counter,
    })
}

/// The normal form over positional strategies, with the strategies behind
/// each index.
pub fn positional_normal_form(
    game: &MultiOutcomeGraphGame,
    cap: usize,
) -> Result<(NormalFormGame, [Vec<PositionalStrategy>; 2]), GraphError> {
    let arena = &game.arena;
    let mut lists = Vec::with_capacity(2);
    for p in Player::BOTH {
        let count = PositionalStrategy::count(arena, p)
            .filter(|&c| c <= cap)
            .ok_or(GraphError::TooLarge {
                what: "positional strategy",
                count: PositionalStrategy::count(arena, p).unwrap_or(usize::MAX),
                cap,
            })?;
        lists.push(
            (0..count)
                .map(|i| PositionalStrategy::nth(arena, p, i))
                .collect::<Vec<_>>(),
        );
    }
    let profiles = lists[0].len() * lists[1].len();
    if profiles > cap {
        return Err(GraphError::TooLarge {
            what: "profile",
            count: profiles,
            cap,
        });
    }
    let machines: Vec<Vec<FiniteMemoryStrategy>> = lists
        .iter()
        .map(|l| l.iter().map(|s| s.to_finite_memory(arena)).collect())
        .collect();
    let outcomes = game.preferences.outcomes().expect("two preferences").clone();
    let structure = GameStructure::from_fn(vec![lists[0].len(), lists[1].len()], outcomes, |s| {
        game.outcome_of(&machines[0][s[0]], &machines[1][s[1]])
    })
    .map_err(|e| GraphError::Transfer(e.into()))?;
    let nf = NormalFormGame::new(structure, game.preferences.clone()).map_err(|e| GraphError::Transfer(e.into()))?;
    let second = lists.pop().expect("two lists");
    let first = lists.pop().expect("two lists");
    Ok((nf, [first, second]))
}

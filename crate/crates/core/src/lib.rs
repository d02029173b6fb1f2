//! Multi-outcome Nash equilibria from two-player win-lose determinacy.
//!
//! The central piece is [`transfer`]: given any procedure that solves the
//! win-lose games derived from a two-player game structure (a
//! [`transfer::WinLoseOracle`]), it computes a pure Nash equilibrium of every
//! game with acyclic preferences built on that structure, using at most `n`
//! winner queries and two strategy queries for `n` outcomes.
//!
//! Concrete oracles are provided for normal-form structures (brute force),
//! finite game trees (backward induction), and graph games (parity games via
//! Zielonka's algorithm, Muller games via a latest-appearance-record
//! reduction). The [`corpus`] module rebuilds a collection of small
//! three-player counterexamples and checks their claims by enumeration.

pub mod corpus;
pub mod extensive;
pub mod graph;
pub mod io;
pub mod normal_form;
pub mod player;
pub mod prefs;
pub mod random;
pub mod subset;
pub mod transfer;

pub use normal_form::{GameError, GameStructure, NormalFormGame, StrategyProfile, WinLoseGame};
pub use player::Player;
pub use prefs::{Height, OutcomeSet, PrefError, Preference, PreferenceProfile, RankFunction};
pub use subset::SubsetWord;
pub use transfer::{CallCounter, TransferError, WinLoseOracle, Witness};

use thiserror::Error;

/// Umbrella error for callers that mix several modules (the CLI, the FFI).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Pref(#[from] PrefError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Tree(#[from] extensive::TreeError),
    #[error(transparent)]
    Io(#[from] io::FormatError),
    #[error(transparent)]
    Corpus(#[from] corpus::CorpusError),
}

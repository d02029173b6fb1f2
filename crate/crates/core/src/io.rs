//! JSON input and output for games, trees and graph games.
//!
//! Every document carries `"type"` (`game`, `tree` or `graph`) and an
//! optional `"format"` version, currently 1. Outcomes are given either as
//! a count or as a list of distinct labels; wherever an outcome is
//! referenced, its index or its label may be used. Preferences are either
//! `{"order": [...]}`, least preferred first, or `{"pairs": [[x, y], ...]}`
//! meaning `x` is less preferred than `y`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extensive::{GameTree, TreeError, TreeShape};
use crate::graph::{Arena, ColorSet, GraphError, MultiOutcomeGraphGame, OutcomeRule};
use crate::normal_form::{GameError, GameStructure, NormalFormGame};
use crate::player::Player;
use crate::prefs::{OutcomeSet, PrefError, Preference, PreferenceProfile};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("unknown outcome {0:?}")]
    UnknownOutcome(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Pref(#[from] PrefError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutcomesDoc {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutcomeRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PreferenceDoc {
    Order { order: Vec<OutcomeRef> },
    Pairs { pairs: Vec<(OutcomeRef, OutcomeRef)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    #[serde(default = "version")]
    pub format: u32,
    pub strategies: Vec<usize>,
    pub outcomes: OutcomesDoc,
    /// Outcome per profile, row-major with the last player fastest.
    pub v: Vec<OutcomeRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preferences: Option<Vec<PreferenceDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeDoc {
    Leaf {
        leaf: OutcomeRef,
    },
    /// `owner` is 1 or 2.
    Node {
        owner: u8,
        children: Vec<NodeDoc>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    #[serde(default = "version")]
    pub format: u32,
    pub outcomes: OutcomesDoc,
    pub root: NodeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preferences: Option<Vec<PreferenceDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MullerEntryDoc {
    pub colors: Vec<usize>,
    pub outcome: OutcomeRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleDoc {
    /// `(color, outcome)` pairs and the outcome of the empty cluster set.
    Priority {
        colors: Vec<(usize, OutcomeRef)>,
        bottom: OutcomeRef,
    },
    Muller {
        sets: Vec<MullerEntryDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        default: Option<OutcomeRef>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    #[serde(default = "version")]
    pub format: u32,
    /// Owner of each vertex, 1 or 2.
    pub owners: Vec<u8>,
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<usize>,
    pub start: usize,
    /// The last three fields are omitted together for a bare arena.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<OutcomesDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preferences: Option<Vec<PreferenceDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Document {
    Game(GameDoc),
    Tree(TreeDoc),
    Graph(GraphDoc),
}

fn version() -> u32 {
    FORMAT_VERSION
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(FormatError::Version(v))
    }
}

/// A loaded document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Loaded {
    Game {
        structure: GameStructure,
        preferences: Option<PreferenceProfile>,
    },
    Tree {
        tree: GameTree,
        preferences: Option<PreferenceProfile>,
    },
    Graph(MultiOutcomeGraphGame),
    Arena {
        arena: Arena,
        start: usize,
    },
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn load(text: &str) -> Result<Loaded, FormatError> {
    parse(text)?.load()
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

impl OutcomesDoc {
    pub fn to_set(&self) -> Result<OutcomeSet, FormatError> {
        Ok(match self {
            OutcomesDoc::Count(n) => OutcomeSet::new(*n)?,
            OutcomesDoc::Labels(l) => OutcomeSet::labelled(l.iter().cloned())?,
        })
    }

    pub fn of(set: &OutcomeSet) -> Self {
        match set.labels() {
            Some(l) => OutcomesDoc::Labels(l.to_vec()),
            None => OutcomesDoc::Count(set.size()),
        }
    }
}

impl OutcomeRef {
    pub fn resolve(&self, set: &OutcomeSet) -> Result<usize, FormatError> {
        match self {
            OutcomeRef::Index(i) if *i < set.size() => Ok(*i),
            OutcomeRef::Index(i) => Err(PrefError::OutOfRange {
                index: *i,
                size: set.size(),
            }
            .into()),
            OutcomeRef::Label(l) => set.index_of(l).ok_or_else(|| FormatError::UnknownOutcome(l.clone())),
        }
    }

    /// The label when the set has labels, the index otherwise.
    pub fn of(set: &OutcomeSet, outcome: usize) -> Self {
        match set.labels() {
            Some(l) => OutcomeRef::Label(l[outcome].clone()),
            None => OutcomeRef::Index(outcome),
        }
    }
}

impl PreferenceDoc {
    pub fn to_preference(&self, set: &OutcomeSet) -> Result<Preference, FormatError> {
        Ok(match self {
            PreferenceDoc::Order { order } => {
                let order = order.iter().map(|o| o.resolve(set)).collect::<Result<Vec<_>, _>>()?;
                Preference::linear(set.clone(), &order)?
            }
            PreferenceDoc::Pairs { pairs } => {
                let pairs = pairs
                    .iter()
                    .map(|(x, y)| Ok((x.resolve(set)?, y.resolve(set)?)))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                Preference::new(set.clone(), pairs)?
            }
        })
    }

    /// Strict linear orders are written as orders, everything else as pairs.
    pub fn of(pref: &Preference) -> Self {
        let set = pref.outcomes();
        if pref.is_strict_linear() {
            let order = pref.linear_extension().expect("linear orders are acyclic");
            PreferenceDoc::Order {
                order: order.into_iter().map(|o| OutcomeRef::of(set, o)).collect(),
            }
        } else {
            PreferenceDoc::Pairs {
                pairs: pref
                    .pairs()
                    .into_iter()
                    .map(|(x, y)| (OutcomeRef::of(set, x), OutcomeRef::of(set, y)))
                    .collect(),
            }
        }
    }
}

fn load_profile(docs: &[PreferenceDoc], set: &OutcomeSet) -> Result<PreferenceProfile, FormatError> {
    let prefs = docs
        .iter()
        .map(|d| d.to_preference(set))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PreferenceProfile::new(prefs)?)
}

fn profile_doc(prefs: &PreferenceProfile) -> Vec<PreferenceDoc> {
    prefs.iter().map(PreferenceDoc::of).collect()
}

fn player_of(owner: u8) -> Result<Player, FormatError> {
    match owner {
        1 => Ok(Player::One),
        2 => Ok(Player::Two),
        o => Err(FormatError::Invalid(format!("owner must be 1 or 2, got {o}"))),
    }
}

fn owner_of(player: Player) -> u8 {
    player.index() as u8 + 1
}

impl Document {
    pub fn load(&self) -> Result<Loaded, FormatError> {
        match self {
            Document::Game(d) => {
                check_version(d.format)?;
                let set = d.outcomes.to_set()?;
                let v = d.v.iter().map(|o| o.resolve(&set)).collect::<Result<Vec<_>, _>>()?;
                let structure = GameStructure::new(d.strategies.clone(), set.clone(), v)?;
                let preferences = d.preferences.as_ref().map(|p| load_profile(p, &set)).transpose()?;
                if let Some(p) = &preferences {
                    NormalFormGame::new(structure.clone(), p.clone())?;
                }
                Ok(Loaded::Game { structure, preferences })
            }
            Document::Tree(d) => {
                check_version(d.format)?;
                let set = d.outcomes.to_set()?;
                let shape = node_shape(&d.root, &set)?;
                let tree = GameTree::new(&shape, set.clone())?;
                let preferences = d.preferences.as_ref().map(|p| load_profile(p, &set)).transpose()?;
                if let Some(p) = &preferences {
                    if p.players() != 2 {
                        return Err(GameError::PlayerCount {
                            expected: 2,
                            found: p.players(),
                        }
                        .into());
                    }
                }
                Ok(Loaded::Tree { tree, preferences })
            }
            Document::Graph(d) => {
                check_version(d.format)?;
                let owned = d
                    .owners
                    .iter()
                    .map(|&o| Ok(player_of(o)? == Player::One))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                let n = owned.len();
                let mut succ = vec![Vec::new(); n];
                for &(u, v) in &d.edges {
                    succ.get_mut(u)
                        .ok_or(GraphError::BadVertex { index: u, count: n })?
                        .push(v);
                }
                let arena = Arena::new(owned, succ, d.colors.clone())?;
                let (outcomes, rule, prefs) = match (&d.outcomes, &d.rule, &d.preferences) {
                    (None, None, None) => {
                        arena.check_vertex(d.start)?;
                        return Ok(Loaded::Arena { arena, start: d.start });
                    }
                    (Some(o), Some(r), Some(p)) => (o, r, p),
                    _ => {
                        return Err(FormatError::Invalid(
                            "graph games need outcomes, rule and preferences together".into(),
                        ))
                    }
                };
                let set = outcomes.to_set()?;
                let rule = match rule {
                    RuleDoc::Priority { colors, bottom } => OutcomeRule::Priority {
                        map: colors
                            .iter()
                            .map(|(c, o)| Ok((*c, o.resolve(&set)?)))
                            .collect::<Result<BTreeMap<_, _>, FormatError>>()?,
                        bottom: bottom.resolve(&set)?,
                    },
                    RuleDoc::Muller { sets, default } => OutcomeRule::Muller {
                        map: sets
                            .iter()
                            .map(|e| {
                                Ok((
                                    ColorSet::from_colors(e.colors.iter().copied())?,
                                    e.outcome.resolve(&set)?,
                                ))
                            })
                            .collect::<Result<BTreeMap<_, _>, FormatError>>()?,
                        default: default.as_ref().map(|o| o.resolve(&set)).transpose()?,
                    },
                };
                let prefs = load_profile(prefs, &set)?;
                Ok(Loaded::Graph(MultiOutcomeGraphGame::new(arena, d.start, rule, prefs)?))
            }
        }
    }
}

fn node_shape(node: &NodeDoc, set: &OutcomeSet) -> Result<TreeShape, FormatError> {
    Ok(match node {
        NodeDoc::Leaf { leaf } => TreeShape::Leaf(leaf.resolve(set)?),
        NodeDoc::Node { owner, children } => TreeShape::Node(
            player_of(*owner)?,
            children.iter().map(|c| node_shape(c, set)).collect::<Result<_, _>>()?,
        ),
    })
}

fn shape_node(shape: &TreeShape, set: &OutcomeSet) -> NodeDoc {
    match shape {
        TreeShape::Leaf(o) => NodeDoc::Leaf {
            leaf: OutcomeRef::of(set, *o),
        },
        TreeShape::Node(p, children) => NodeDoc::Node {
            owner: owner_of(*p),
            children: children.iter().map(|c| shape_node(c, set)).collect(),
        },
    }
}

pub fn structure_doc(structure: &GameStructure, preferences: Option<&PreferenceProfile>) -> Document {
    let set = structure.outcomes();
    Document::Game(GameDoc {
        format: FORMAT_VERSION,
        strategies: structure.strategy_counts().to_vec(),
        outcomes: OutcomesDoc::of(set),
        v: structure.tensor().iter().map(|&o| OutcomeRef::of(set, o)).collect(),
        preferences: preferences.map(profile_doc),
    })
}

pub fn game_doc(game: &NormalFormGame) -> Document {
    structure_doc(game.structure(), Some(game.preferences()))
}

pub fn tree_doc(tree: &GameTree, preferences: Option<&PreferenceProfile>) -> Document {
    Document::Tree(TreeDoc {
        format: FORMAT_VERSION,
        outcomes: OutcomesDoc::of(tree.outcomes()),
        root: shape_node(&tree.shape(), tree.outcomes()),
        preferences: preferences.map(profile_doc),
    })
}

pub fn graph_doc(game: &MultiOutcomeGraphGame) -> Document {
    let arena = game.arena();
    let set = game.preferences().get(0).outcomes();
    let rule = match game.rule() {
        OutcomeRule::Priority { map, bottom } => RuleDoc::Priority {
            colors: map.iter().map(|(&c, &o)| (c, OutcomeRef::of(set, o))).collect(),
            bottom: OutcomeRef::of(set, *bottom),
        },
        OutcomeRule::Muller { map, default } => RuleDoc::Muller {
            sets: map
                .iter()
                .map(|(s, &o)| MullerEntryDoc {
                    colors: s.iter().collect(),
                    outcome: OutcomeRef::of(set, o),
                })
                .collect(),
            default: default.map(|o| OutcomeRef::of(set, o)),
        },
    };
    Document::Graph(GraphDoc {
        format: FORMAT_VERSION,
        owners: (0..arena.vertex_count()).map(|v| owner_of(arena.owner(v))).collect(),
        edges: arena.edges(),
        colors: arena.colors().to_vec(),
        start: game.start(),
        outcomes: Some(OutcomesDoc::of(set)),
        rule: Some(rule),
        preferences: Some(profile_doc(game.preferences())),
    })
}

pub fn arena_doc(arena: &Arena, start: usize) -> Document {
    Document::Graph(GraphDoc {
        format: FORMAT_VERSION,
        owners: (0..arena.vertex_count()).map(|v| owner_of(arena.owner(v))).collect(),
        edges: arena.edges(),
        colors: arena.colors().to_vec(),
        start,
        outcomes: None,
        rule: None,
        preferences: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn game_round_trip() {
        let entry = corpus::build("prop_5_6").unwrap();
        let prefs = corpus::prop_5_6_partial_preferences();
        let doc = structure_doc(&entry.structure, Some(&prefs));
        let back = load(&to_json(&doc)).unwrap();
        assert_eq!(
            back,
            Loaded::Game {
                structure: entry.structure,
                preferences: Some(prefs)
            }
        );
    }

    #[test]
    fn tree_round_trip() {
        let tree = corpus::tree_xyz();
        let prefs = corpus::tree_xyz_payoff_preferences();
        let back = load(&to_json(&tree_doc(&tree, Some(&prefs)))).unwrap();
        assert_eq!(
            back,
            Loaded::Tree {
                tree,
                preferences: Some(prefs)
            }
        );
    }

    #[test]
    fn graph_round_trip() {
        let text = r#"{
            "type": "graph",
            "owners": [1, 2, 2],
            "edges": [[0, 1], [0, 2], [1, 1], [2, 2], [1, 0]],
            "colors": [0, 1, 2],
            "start": 0,
            "outcomes": ["lo", "hi"],
            "rule": {"muller": {"sets": [{"colors": [2], "outcome": "hi"}], "default": "lo"}},
            "preferences": [{"order": ["lo", "hi"]}, {"pairs": [["hi", "lo"]]}]
        }"#;
        let Loaded::Graph(g) = load(text).unwrap() else {
            panic!("graph expected")
        };
        assert_eq!(load(&to_json(&graph_doc(&g))).unwrap(), Loaded::Graph(g.clone()));
        let bare = load(&to_json(&arena_doc(g.arena(), 1))).unwrap();
        assert_eq!(
            bare,
            Loaded::Arena {
                arena: g.arena().clone(),
                start: 1
            }
        );
    }

    #[test]
    fn errors_carry_positions() {
        match load("{\n  \"type\": \"game\",\n  \"strategies\": [2,\n}") {
            Err(FormatError::Json { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"type":"game","strategies":[1,1],"outcomes":["X"],"v":["Q"]}"#;
        assert!(matches!(load(bad), Err(FormatError::UnknownOutcome(_))));
        let version = r#"{"type":"game","format":2,"strategies":[1],"outcomes":1,"v":[0]}"#;
        assert!(matches!(load(version), Err(FormatError::Version(2))));
    }
}

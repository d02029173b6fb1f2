//! Finite two-player game trees with perfect information.
//!
//! Nodes are numbered in preorder. A player's strategy picks a child at
//! every node the player owns, reached or not, and is indexed in mixed radix
//! over those nodes with the first node in preorder most significant.
//! Player `a` is [`Player::One`] and player `b` is [`Player::Two`].

use thiserror::Error;

use crate::normal_form::{GameError, GameStructure, NormalFormGame, StrategyProfile};
use crate::player::Player;
use crate::prefs::{OutcomeSet, PreferenceProfile};
use crate::subset::SubsetWord;
use crate::transfer::{transfer, CallCounter, OracleError, TransferError, WinLoseOracle, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("node {0} has no children")]
    Childless(usize),
    #[error("leaf {node} holds outcome {outcome}, out of range for {size} outcomes")]
    OutcomeOutOfRange { node: usize, outcome: usize, size: usize },
    #[error("invalid tree strategy: {0}")]
    BadStrategy(String),
    #[error("{count} strategies for {player} exceed cap {cap}")]
    TooLarge { player: Player, count: usize, cap: usize },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

/// Nested description of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeShape {
    Leaf(usize),
    Node(Player, Vec<TreeShape>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Leaf(usize),
    Inner { owner: Player, children: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTree {
    nodes: Vec<Node>,
    outcomes: OutcomeSet,
}

/// A choice of child index at every node of one player, in preorder.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeStrategy {
    pub player: Player,
    pub choices: Vec<usize>,
}

impl GameTree {
    pub fn new(shape: &TreeShape, outcomes: OutcomeSet) -> Result<Self, TreeError> {
        let mut nodes = Vec::new();
        flatten(shape, &mut nodes);
        for (i, node) in nodes.iter().enumerate() {
            match node {
                Node::Leaf(o) if *o >= outcomes.size() => {
                    return Err(TreeError::OutcomeOutOfRange {
                        node: i,
                        outcome: *o,
                        size: outcomes.size(),
                    })
                }
                Node::Inner { children, .. } if children.is_empty() => return Err(TreeError::Childless(i)),
                _ => {}
            }
        }
        Ok(GameTree { nodes, outcomes })
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn shape(&self) -> TreeShape {
        self.shape_at(0)
    }

    fn shape_at(&self, node: usize) -> TreeShape {
        match &self.nodes[node] {
            Node::Leaf(o) => TreeShape::Leaf(*o),
            Node::Inner { owner, children } => {
                TreeShape::Node(*owner, children.iter().map(|&c| self.shape_at(c)).collect())
            }
        }
    }

    /// Nodes owned by `player`, in preorder.
    pub fn owned_nodes(&self, player: Player) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| matches!(&self.nodes[i], Node::Inner { owner, .. } if *owner == player))
            .collect()
    }

    fn arity(&self, node: usize) -> usize {
        match &self.nodes[node] {
            Node::Inner { children, .. } => children.len(),
            Node::Leaf(_) => 0,
        }
    }

    pub fn strategy_count(&self, player: Player) -> Option<usize> {
        self.owned_nodes(player)
            .into_iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(self.arity(v)))
    }

    pub fn strategy_from_index(&self, player: Player, mut index: usize) -> TreeStrategy {
        let nodes = self.owned_nodes(player);
        let mut choices = vec![0; nodes.len()];
        for (k, &v) in nodes.iter().enumerate().rev() {
            let d = self.arity(v);
            choices[k] = index % d;
            index /= d;
        }
        TreeStrategy { player, choices }
    }

    pub fn strategy_index(&self, strategy: &TreeStrategy) -> usize {
        self.owned_nodes(strategy.player)
            .iter()
            .zip(&strategy.choices)
            .fold(0, |acc, (&v, &c)| acc * self.arity(v) + c)
    }

    pub fn check_strategy(&self, strategy: &TreeStrategy) -> Result<(), TreeError> {
        let nodes = self.owned_nodes(strategy.player);
        if nodes.len() != strategy.choices.len() {
            return Err(TreeError::BadStrategy(format!(
                "{} owns {} nodes, strategy has {} choices",
                strategy.player,
                nodes.len(),
                strategy.choices.len()
            )));
        }
        for (&v, &c) in nodes.iter().zip(&strategy.choices) {
            if c >= self.arity(v) {
                return Err(TreeError::BadStrategy(format!("child {c} at node {v}")));
            }
        }
        Ok(())
    }

    /// Outcome of the leaf reached from the root.
    ///
    /// # Panics
    ///
    /// Panics if the strategies do not fit the tree.
    pub fn play_tree(&self, first: &TreeStrategy, second: &TreeStrategy) -> usize {
        let lookup = |s: &TreeStrategy, v: usize| {
            let nodes = self.owned_nodes(s.player);
            s.choices[nodes.binary_search(&v).expect("owned node")]
        };
        let mut v = 0;
        loop {
            match &self.nodes[v] {
                Node::Leaf(o) => return *o,
                Node::Inner { owner, children } => {
                    let s = if *owner == first.player { first } else { second };
                    v = children[lookup(s, v)];
                }
            }
        }
    }

    /// The normal form over full strategies: rows are player `a`'s.
    pub fn to_normal_form(&self, cap: usize) -> Result<GameStructure, TreeError> {
        let counts = Player::BOTH.map(|p| self.strategy_count(p).unwrap_or(usize::MAX));
        for (p, &count) in Player::BOTH.iter().zip(&counts) {
            if count > cap {
                return Err(TreeError::TooLarge { player: *p, count, cap });
            }
        }
        if counts[0].saturating_mul(counts[1]) > cap {
            return Err(GameError::TooLarge {
                what: "profile",
                count: counts[0].saturating_mul(counts[1]),
                cap,
            }
            .into());
        }
        let first: Vec<TreeStrategy> = (0..counts[0])
            .map(|i| self.strategy_from_index(Player::One, i))
            .collect();
        let second: Vec<TreeStrategy> = (0..counts[1])
            .map(|i| self.strategy_from_index(Player::Two, i))
            .collect();
        Ok(GameStructure::from_fn(counts.to_vec(), self.outcomes.clone(), |s| {
            self.play_tree(&first[s[0]], &second[s[1]])
        })?)
    }
}

fn flatten(shape: &TreeShape, nodes: &mut Vec<Node>) -> usize {
    let id = nodes.len();
    match shape {
        TreeShape::Leaf(o) => nodes.push(Node::Leaf(*o)),
        TreeShape::Node(owner, kids) => {
            nodes.push(Node::Inner {
                owner: *owner,
                children: Vec::new(),
            });
            let ids: Vec<usize> = kids.iter().map(|k| flatten(k, nodes)).collect();
            if let Node::Inner { children, .. } = &mut nodes[id] {
                *children = ids;
            }
        }
    }
    id
}

/// Solves derived win-lose games of a tree by backward induction. The
/// witness picks, at each of its owner's nodes, the first child from which
/// the owner wins, and the first child where it does not win anywhere.
#[derive(Debug, Clone)]
pub struct BackwardInductionOracle {
    tree: GameTree,
}

impl BackwardInductionOracle {
    pub fn new(tree: GameTree) -> Self {
        BackwardInductionOracle { tree }
    }

    pub fn tree(&self) -> &GameTree {
        &self.tree
    }

    /// Winner of the subtree at every node.
    pub fn node_winners(&self, label: &SubsetWord) -> Vec<Player> {
        let nodes = &self.tree.nodes;
        let mut win = vec![Player::One; nodes.len()];
        for v in (0..nodes.len()).rev() {
            win[v] = match &nodes[v] {
                Node::Leaf(o) => {
                    if label.contains(*o) {
                        Player::One
                    } else {
                        Player::Two
                    }
                }
                Node::Inner { owner, children } => {
                    if children.iter().any(|&c| win[c] == *owner) {
                        *owner
                    } else {
                        owner.opponent()
                    }
                }
            };
        }
        win
    }

    fn check_label(&self, label: &SubsetWord) -> Result<(), OracleError> {
        if label.universe() == self.tree.outcomes.size() {
            Ok(())
        } else {
            Err(OracleError::Failed(format!(
                "label {label} does not cover {} outcomes",
                self.tree.outcomes.size()
            )))
        }
    }
}

impl WinLoseOracle for BackwardInductionOracle {
    type Strategy = TreeStrategy;

    fn outcome_count(&self) -> usize {
        self.tree.outcomes.size()
    }

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError> {
        self.check_label(label)?;
        Ok(self.node_winners(label)[0])
    }

    fn strategy(&self, label: &SubsetWord) -> Result<Witness<TreeStrategy>, OracleError> {
        self.check_label(label)?;
        let win = self.node_winners(label);
        let player = win[0];
        let choices = self
            .tree
            .owned_nodes(player)
            .into_iter()
            .map(|v| match &self.tree.nodes[v] {
                Node::Inner { children, .. } => children.iter().position(|&c| win[c] == player).unwrap_or(0),
                Node::Leaf(_) => unreachable!("owned nodes are inner"),
            })
            .collect();
        Ok(Witness {
            player,
            strategy: TreeStrategy { player, choices },
            restricted: true,
        })
    }
}

/// Backward induction with witnesses reported as normal-form strategy
/// indices, for use with [`crate::transfer::transfer_equilibrium`].
#[derive(Debug, Clone)]
pub struct IndexedTreeOracle(pub BackwardInductionOracle);

impl WinLoseOracle for IndexedTreeOracle {
    type Strategy = usize;

    fn outcome_count(&self) -> usize {
        self.0.outcome_count()
    }

    fn winner(&self, label: &SubsetWord) -> Result<Player, OracleError> {
        self.0.winner(label)
    }

    fn strategy(&self, label: &SubsetWord) -> Result<Witness<usize>, OracleError> {
        let w = self.0.strategy(label)?;
        Ok(Witness {
            player: w.player,
            strategy: self.0.tree.strategy_index(&w.strategy),
            restricted: w.restricted,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEquilibrium {
    pub first: TreeStrategy,
    pub second: TreeStrategy,
    /// The same profile as normal-form strategy indices.
    pub profile: StrategyProfile,
    pub outcome: usize,
    pub counter: CallCounter,
}

/// Transfer with the backward-induction oracle, checked on the normal form.
pub fn kuhn_via_transfer(tree: &GameTree, prefs: &PreferenceProfile, cap: usize) -> Result<TreeEquilibrium, TreeError> {
    let oracle = BackwardInductionOracle::new(tree.clone());
    let run = transfer(&oracle, prefs)?;
    let profile = StrategyProfile::new([
        tree.strategy_index(&run.first.strategy),
        tree.strategy_index(&run.second.strategy),
    ]);
    let game = NormalFormGame::new(tree.to_normal_form(cap)?, prefs.clone())?;
    if let Some((player, alt)) = game.improving_deviation(&profile) {
        return Err(TransferError::NotDetermined(format!(
            "profile {profile} is not a Nash equilibrium: player {} improves with strategy {alt}",
            player + 1
        ))
        .into());
    }
    Ok(TreeEquilibrium {
        first: run.first.strategy,
        second: run.second.strategy,
        profile,
        outcome: run.outcome,
        counter: run.counter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefs::Preference;

    use Player::{One as A, Two as B};

    /// X, Y, Z as 0, 1, 2.
    fn xyz_tree() -> GameTree {
        let shape = TreeShape::Node(
            B,
            vec![
                TreeShape::Node(
                    A,
                    vec![
                        TreeShape::Node(B, vec![TreeShape::Leaf(0), TreeShape::Leaf(1)]),
                        TreeShape::Leaf(2),
                    ],
                ),
                TreeShape::Leaf(1),
            ],
        );
        GameTree::new(&shape, OutcomeSet::labelled(["X", "Y", "Z"]).unwrap()).unwrap()
    }

    #[test]
    fn strategy_counts_and_single_leaf() {
        let t = xyz_tree();
        let st = t.to_normal_form(100).unwrap();
        assert_eq!(st.strategy_counts(), &[2, 4]);
        let leaf = GameTree::new(&TreeShape::Leaf(0), OutcomeSet::new(1).unwrap()).unwrap();
        assert_eq!(leaf.to_normal_form(10).unwrap().strategy_counts(), &[1, 1]);
        let none = TreeStrategy {
            player: A,
            choices: vec![],
        };
        let none2 = TreeStrategy {
            player: B,
            choices: vec![],
        };
        assert_eq!(leaf.play_tree(&none, &none2), 0);
    }

    #[test]
    fn index_round_trip() {
        let t = xyz_tree();
        for i in 0..4 {
            assert_eq!(t.strategy_index(&t.strategy_from_index(B, i)), i);
        }
        assert_eq!(t.strategy_from_index(B, 3).choices, vec![1, 1]);
    }

    #[test]
    fn second_tree_label() {
        // X and Z win for a, Y wins for b.
        let t = xyz_tree();
        let oracle = BackwardInductionOracle::new(t.clone());
        let label = SubsetWord::from_indices(3, [0, 2]);
        let w = oracle.strategy(&label).unwrap();
        assert_eq!(w.player, B);
        assert_eq!(w.strategy.choices[0], 1);
        for i in 0..2 {
            let a = t.strategy_from_index(A, i);
            assert!(!label.contains(t.play_tree(&a, &w.strategy)));
        }
        assert_eq!(oracle.winner(&SubsetWord::full(3)).unwrap(), A);
    }

    #[test]
    fn oracle_matches_normal_form() {
        let t = xyz_tree();
        let st = t.to_normal_form(100).unwrap();
        let oracle = BackwardInductionOracle::new(t);
        for label in SubsetWord::all(3) {
            let wl = st.derive_win_lose(label.clone()).unwrap();
            assert_eq!(
                wl.winning_strategy().map(|(p, _)| p),
                Some(oracle.winner(&label).unwrap())
            );
        }
    }

    #[test]
    fn leftmost_game() {
        let t = xyz_tree();
        let o = t.outcomes().clone();
        // X=(4,2), Y=(1,0), Z=(3,3).
        let pa = Preference::linear(o.clone(), &[1, 2, 0]).unwrap();
        let pb = Preference::linear(o, &[1, 0, 2]).unwrap();
        let prefs = PreferenceProfile::new(vec![pa, pb]).unwrap();
        let eq = kuhn_via_transfer(&t, &prefs, 100).unwrap();
        assert!(eq.counter.winner_calls <= 3 && eq.counter.strategy_calls <= 2);
        let g = NormalFormGame::new(t.to_normal_form(100).unwrap(), prefs).unwrap();
        assert!(g.is_nash_equilibrium(&eq.profile));
    }
}

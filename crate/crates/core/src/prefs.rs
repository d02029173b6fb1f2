//! Outcomes, preference relations and their order-theoretic properties.
//!
//! A [`Preference`] is an arbitrary binary relation over outcome indices where
//! `x ≺ y` reads "the player strictly prefers `y` to `x`". Nothing forces it to
//! be transitive or acyclic; operations that need acyclicity check for it and
//! fail with [`PrefError::CyclicPreference`].

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::subset::SubsetWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefError {
    #[error("an outcome set needs at least one outcome")]
    EmptyOutcomeSet,
    #[error("duplicate outcome label {0:?}")]
    DuplicateLabel(String),
    #[error("outcome index {index} out of range for {size} outcomes")]
    OutOfRange { index: usize, size: usize },
    #[error("preference relation is cyclic")]
    CyclicPreference,
    #[error("preferences are defined over different outcome sets")]
    MismatchedOutcomes,
    #[error("relation is not a strict linear order")]
    NotStrictLinear,
    #[error("a linear order must list every outcome exactly once")]
    BadLinearOrder,
}

/// The outcomes `0..size`, optionally with display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl OutcomeSet {
    pub fn new(size: usize) -> Result<Self, PrefError> {
        if size == 0 {
            return Err(PrefError::EmptyOutcomeSet);
        }
        Ok(OutcomeSet { size, labels: None })
    }

    pub fn labelled<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, PrefError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(PrefError::EmptyOutcomeSet);
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(PrefError::DuplicateLabel(l.clone()));
            }
        }
        Ok(OutcomeSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an outcome: its label, or its index.
    pub fn name(&self, outcome: usize) -> String {
        match &self.labels {
            Some(l) => l[outcome].clone(),
            None => outcome.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    fn check(&self, index: usize) -> Result<(), PrefError> {
        if index < self.size {
            Ok(())
        } else {
            Err(PrefError::OutOfRange { index, size: self.size })
        }
    }
}

/// Height of a preference: number of outcomes on its longest chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Height {
    Finite(usize),
    /// The relation has a cycle, so chains are arbitrarily long.
    Unbounded,
}

impl Height {
    pub fn finite(self) -> Option<usize> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Unbounded => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Ranks compatible with a preference: `x ≺ y` implies `rank(x) < rank(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    ranks: Vec<usize>,
}

impl RankFunction {
    pub fn rank(&self, outcome: usize) -> usize {
        self.ranks[outcome]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// One more than the largest rank.
    pub fn levels(&self) -> usize {
        self.ranks.iter().max().map_or(0, |m| m + 1)
    }
}

/// A (strict) preference relation over an [`OutcomeSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preference {
    outcomes: OutcomeSet,
    less: Vec<bool>,
}

impl Preference {
    /// `(x, y)` in `pairs` means `x ≺ y`.
    pub fn new(outcomes: OutcomeSet, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PrefError> {
        let n = outcomes.size();
        let mut less = vec![false; n * n];
        for (x, y) in pairs {
            outcomes.check(x)?;
            outcomes.check(y)?;
            less[x * n + y] = true;
        }
        Ok(Preference { outcomes, less })
    }

    /// The empty relation: every outcome is equally good.
    pub fn indifferent(outcomes: OutcomeSet) -> Self {
        let n = outcomes.size();
        Preference {
            outcomes,
            less: vec![false; n * n],
        }
    }

    /// Strict linear order listing outcomes from least to most preferred.
    pub fn linear(outcomes: OutcomeSet, order: &[usize]) -> Result<Self, PrefError> {
        let n = outcomes.size();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(PrefError::BadLinearOrder);
        }
        for &o in order {
            outcomes.check(o)?;
            if std::mem::replace(&mut seen[o], true) {
                return Err(PrefError::BadLinearOrder);
            }
        }
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (order[i], order[j])));
        Preference::new(outcomes, pairs)
    }

    /// Builds `x ≺ y` from a predicate over all ordered pairs.
    pub fn from_fn(outcomes: OutcomeSet, mut less: impl FnMut(usize, usize) -> bool) -> Self {
        let n = outcomes.size();
        let table = (0..n * n).map(|k| less(k / n, k % n)).collect();
        Preference { outcomes, less: table }
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn size(&self) -> usize {
        self.outcomes.size()
    }

    /// `x ≺ y`: the player strictly prefers `y` over `x`.
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.less[x * self.size() + y]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n * n).filter(|&k| self.less[k]).map(|k| (k / n, k % n)).collect()
    }

    pub fn inverse(&self) -> Preference {
        let n = self.size();
        Preference::from_fn(self.outcomes.clone(), |x, y| self.less[y * n + x])
    }

    fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(move |&y| self.prefers(x, y))
    }

    fn predecessors(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(move |&x| self.prefers(x, y))
    }

    /// Kahn's algorithm; `None` when a cycle (self-loops included) remains.
    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.size();
        let mut indegree: Vec<usize> = (0..n).map(|y| self.predecessors(y).count()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&y| indegree[y] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = ready.pop() {
            order.push(x);
            for y in self.successors(x) {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Longest chain `o_0 ≺ o_1 ≺ … ≺ o_k`, counted in outcomes.
    pub fn height(&self) -> Height {
        match self.rank() {
            Ok(r) => Height::Finite(r.levels()),
            Err(_) => Height::Unbounded,
        }
    }

    /// Minimal ranks: the length (in edges) of the longest chain ending at
    /// each outcome.
    pub fn rank(&self) -> Result<RankFunction, PrefError> {
        let order = self.topological_order().ok_or(PrefError::CyclicPreference)?;
        let mut ranks = vec![0; self.size()];
        for &x in &order {
            for y in self.successors(x) {
                ranks[y] = ranks[y].max(ranks[x] + 1);
            }
        }
        Ok(RankFunction { ranks })
    }

    /// A strict linear extension, least preferred outcome first.
    ///
    /// Stable: outcomes are taken in ascending index order, each preceded by
    /// its still-unplaced predecessors (recursively, also in ascending order).
    pub fn linear_extension(&self) -> Result<Vec<usize>, PrefError> {
        if !self.is_acyclic() {
            return Err(PrefError::CyclicPreference);
        }
        let mut placed = vec![false; self.size()];
        let mut order = Vec::with_capacity(self.size());
        for root in 0..self.size() {
            self.place_after_predecessors(root, &mut placed, &mut order);
        }
        Ok(order)
    }

    fn place_after_predecessors(&self, x: usize, placed: &mut [bool], order: &mut Vec<usize>) {
        if placed[x] {
            return;
        }
        for p in 0..self.size() {
            if self.prefers(p, x) {
                self.place_after_predecessors(p, placed, order);
            }
        }
        placed[x] = true;
        order.push(x);
    }

    /// Irreflexive, transitive and total on distinct outcomes.
    pub fn is_strict_linear(&self) -> bool {
        let n = self.size();
        for x in 0..n {
            if self.prefers(x, x) {
                return false;
            }
            for y in 0..n {
                if x != y && self.prefers(x, y) == self.prefers(y, x) {
                    return false;
                }
                for z in 0..n {
                    if self.prefers(x, y) && self.prefers(y, z) && !self.prefers(x, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Outcomes reachable from `subset` through `≺` (reflexive-transitive
    /// closure): the upward cone generated by the subset.
    pub fn upward_cone(&self, subset: &SubsetWord) -> SubsetWord {
        let mut cone = subset.clone();
        let mut stack: Vec<usize> = subset.iter().collect();
        while let Some(x) = stack.pop() {
            for y in self.successors(x) {
                if !cone.contains(y) {
                    cone.set(y, true);
                    stack.push(y);
                }
            }
        }
        cone
    }

    /// Lowest-index outcome of `subset` with no strictly preferred outcome in
    /// `subset`. `None` for the empty subset or when every member is beaten
    /// (possible only for cyclic relations).
    pub fn maximal_in(&self, subset: &SubsetWord) -> Option<usize> {
        subset.iter().find(|&x| !subset.iter().any(|y| self.prefers(x, y)))
    }
}

/// One preference per player over a shared outcome set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreferenceProfile {
    prefs: Vec<Preference>,
}

impl PreferenceProfile {
    pub fn new(prefs: Vec<Preference>) -> Result<Self, PrefError> {
        if let Some(first) = prefs.first() {
            if prefs.iter().any(|p| p.outcomes() != first.outcomes()) {
                return Err(PrefError::MismatchedOutcomes);
            }
        }
        Ok(PreferenceProfile { prefs })
    }

    pub fn players(&self) -> usize {
        self.prefs.len()
    }

    pub fn get(&self, player: usize) -> &Preference {
        &self.prefs[player]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Preference> {
        self.prefs.iter()
    }

    pub fn outcomes(&self) -> Option<&OutcomeSet> {
        self.prefs.first().map(Preference::outcomes)
    }
}

/// Power-set lift of a finite strict linear order.
///
/// `linear` lists outcomes from smallest to largest. `a` is below `b` iff the
/// sets differ and the smallest outcome of their symmetric difference lies in
/// `a`. Equivalently, the complement of `a` read along `linear` is
/// lexicographically smaller than the complement of `b`.
pub fn lift_less(linear: &[usize], a: &SubsetWord, b: &SubsetWord) -> bool {
    linear
        .iter()
        .find(|&&o| a.contains(o) != b.contains(o))
        .is_some_and(|&o| a.contains(o))
}

/// Power-set lift of an arbitrary relation: some `x ∈ a \ b` lies strictly
/// below every `y ∈ b \ a`.
///
/// Only linear inputs come with order laws; on other relations this is just
/// the defining formula.
pub fn lift_less_relation(pref: &Preference, a: &SubsetWord, b: &SubsetWord) -> bool {
    let n = pref.size();
    (0..n).filter(|&x| a.contains(x) && !b.contains(x)).any(|x| {
        (0..n)
            .filter(|&y| b.contains(y) && !a.contains(y))
            .all(|y| pref.prefers(x, y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pref(n: usize, pairs: &[(usize, usize)]) -> Preference {
        Preference::new(OutcomeSet::new(n).unwrap(), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn acyclicity() {
        assert!(pref(3, &[(0, 1), (1, 2)]).is_acyclic());
        assert!(!pref(2, &[(0, 1), (1, 0)]).is_acyclic());
        assert!(pref(3, &[]).is_acyclic());
        assert!(!pref(1, &[(0, 0)]).is_acyclic());
    }

    #[test]
    fn heights() {
        assert_eq!(pref(3, &[(0, 1), (1, 2)]).height(), Height::Finite(3));
        assert_eq!(pref(3, &[]).height(), Height::Finite(1));
        assert_eq!(pref(1, &[(0, 0)]).height(), Height::Unbounded);
    }

    #[test]
    fn ranks() {
        assert_eq!(pref(3, &[(0, 1), (1, 2)]).rank().unwrap().ranks(), &[0, 1, 2]);
        assert_eq!(pref(3, &[]).rank().unwrap().ranks(), &[0, 0, 0]);
        assert_eq!(pref(3, &[(0, 2), (1, 2)]).rank().unwrap().ranks(), &[0, 0, 1]);
        assert_eq!(pref(2, &[(0, 1), (1, 0)]).rank(), Err(PrefError::CyclicPreference));
    }

    #[test]
    fn linear_extensions() {
        assert_eq!(pref(2, &[(0, 1)]).linear_extension().unwrap(), vec![0, 1]);
        assert_eq!(pref(3, &[]).linear_extension().unwrap(), vec![0, 1, 2]);
        assert_eq!(pref(3, &[(2, 0)]).linear_extension().unwrap(), vec![2, 0, 1]);
        assert_eq!(
            pref(2, &[(1, 0), (0, 1)]).linear_extension(),
            Err(PrefError::CyclicPreference)
        );
    }

    #[test]
    fn lift_worked_example() {
        // o1 < … < o5 as indices 0..5.
        let linear = [0, 1, 2, 3, 4];
        let a = SubsetWord::from_indices(5, [1, 2, 3, 4]);
        let b = SubsetWord::from_indices(5, [1, 3]);
        assert!(lift_less(&linear, &a, &b));
        assert!(!lift_less(&linear, &b, &a));
        assert_eq!(a.complement().to_string(), "10000");
        assert_eq!(b.complement().to_string(), "10101");
        assert!(!lift_less(&linear, &a, &a));
    }

    #[test]
    fn labels_must_be_distinct() {
        assert_eq!(
            OutcomeSet::labelled(["x", "x"]),
            Err(PrefError::DuplicateLabel("x".into()))
        );
        assert_eq!(OutcomeSet::new(0), Err(PrefError::EmptyOutcomeSet));
        assert!(matches!(
            Preference::new(OutcomeSet::new(2).unwrap(), [(0, 2)]),
            Err(PrefError::OutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn cone_and_maximal() {
        let p = pref(4, &[(0, 1), (1, 2), (3, 2)]);
        let cone = p.upward_cone(&SubsetWord::from_indices(4, [0]));
        assert_eq!(cone.iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(p.maximal_in(&SubsetWord::from_indices(4, [0, 1, 3])), Some(1));
        assert!(p.is_acyclic() && !p.is_strict_linear());
        assert!(Preference::linear(OutcomeSet::new(3).unwrap(), &[2, 0, 1])
            .unwrap()
            .is_strict_linear());
    }
}

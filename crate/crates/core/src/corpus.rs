//! Small games with machine-checkable claims: the introductory tree and
//! arrays, and the three-player structures with no transfer property.
//!
//! Strategy `k` of a table with one-based labels is index `k - 1` here.
//! Player `a` picks the row, `b` the column and `c` the array.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::extensive::{GameTree, TreeError, TreeShape};
use crate::normal_form::{GameError, GameStructure, NormalFormGame, StrategyProfile, DEFAULT_PROFILE_CAP};
use crate::player::Player;
use crate::prefs::{OutcomeSet, PrefError, Preference, PreferenceProfile};
use crate::random::{random_acyclic, seeded};
use crate::subset::SubsetWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus entry {0:?}")]
    UnknownName(String),
    #[error("corpus entry {0:?} is listed but has infinite strategy sets")]
    NotExecutable(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Pref(#[from] PrefError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimKind {
    NoEquilibrium(PreferenceProfile),
    HasEquilibrium(PreferenceProfile),
    IsEquilibrium {
        preferences: PreferenceProfile,
        profile: StrategyProfile,
    },
    NotEquilibrium {
        preferences: PreferenceProfile,
        profile: StrategyProfile,
    },
    /// The full equilibrium list, in lexicographic order.
    ExactEquilibria {
        preferences: PreferenceProfile,
        profiles: Vec<StrategyProfile>,
    },
    /// Winning strategy of the derived win-lose game, as returned by
    /// [`crate::WinLoseGame::winning_strategy`].
    WinningStrategy {
        label: SubsetWord,
        expected: Option<(Player, usize)>,
    },
    Determined(bool),
    /// Every slice of a three-player structure is determined.
    SlicesDetermined,
    /// Every merger of two of the three players is determined.
    MergersDetermined,
    /// The slice fixing `player` to `strategy`, row-major.
    Section {
        player: usize,
        strategy: usize,
        expected: Vec<usize>,
    },
    /// For every map from the structure's outcomes into `outcomes`, the
    /// relabelled game under `preferences` has an equilibrium.
    EveryRelabelling {
        outcomes: OutcomeSet,
        preferences: PreferenceProfile,
    },
    /// Every profile of acyclic preferences of height at most `max_height`
    /// yields a game with an equilibrium.
    ShortChains {
        max_height: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub label: String,
    pub kind: ClaimKind,
}

impl Claim {
    fn new(label: impl Into<String>, kind: ClaimKind) -> Self {
        Claim {
            label: label.into(),
            kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub summary: String,
    pub structure: GameStructure,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexEntry {
    pub name: &'static str,
    pub executable: bool,
    pub summary: &'static str,
}

pub const INDEX: &[IndexEntry] = &[
    IndexEntry {
        name: "tree_xyz",
        executable: true,
        summary: "two-player tree with leaves X, Y, Z, Y and its instantiations",
    },
    IndexEntry {
        name: "bimatrix_two_equilibria",
        executable: true,
        summary: "2x2 payoff game with two equilibria",
    },
    IndexEntry {
        name: "bimatrix_pennies",
        executable: true,
        summary: "2x2 matching-pennies payoffs, no equilibrium",
    },
    IndexEntry {
        name: "bimatrix_coordination",
        executable: true,
        summary: "symmetric 2x2 payoff game with two diagonal equilibria",
    },
    IndexEntry {
        name: "win_lose_row",
        executable: true,
        summary: "win-lose game won by the row player",
    },
    IndexEntry {
        name: "win_lose_column",
        executable: true,
        summary: "win-lose game won by the column player",
    },
    IndexEntry {
        name: "win_lose_none",
        executable: true,
        summary: "win-lose game without winning strategy",
    },
    IndexEntry {
        name: "structure_xy_yx",
        executable: true,
        summary: "2x2 structure X Y / Y X, not determined",
    },
    IndexEntry {
        name: "structure_xz_yy",
        executable: true,
        summary: "2x2 structure X Z / Y Y, determined",
    },
    IndexEntry {
        name: "structure_xzy_yyy",
        executable: true,
        summary: "2x3 structure X Z Y / Y Y Y, determined",
    },
    IndexEntry {
        name: "prop_5_1",
        executable: false,
        summary: "games over infinite strategy sets (statement only)",
    },
    IndexEntry {
        name: "prop_5_2",
        executable: false,
        summary: "games over infinite strategy sets (statement only)",
    },
    IndexEntry {
        name: "remark_5_3",
        executable: true,
        summary: "2x2x2 game without equilibrium whose 0/1 relabellings all have one",
    },
    IndexEntry {
        name: "prop_5_4",
        executable: true,
        summary: "n x n x n family without equilibrium under linear orders (prop_5_4:N, default N=4)",
    },
    IndexEntry {
        name: "prop_5_5",
        executable: true,
        summary: "6x6x6 cube with determined slices and mergers but no equilibrium",
    },
    IndexEntry {
        name: "prop_5_6",
        executable: true,
        summary: "4x7x7 cuboid with equilibria for chain-free preferences only",
    },
];

pub fn build(name: &str) -> Result<CorpusEntry, CorpusError> {
    if let Some(arg) = name.strip_prefix("prop_5_4:") {
        let n = arg
            .parse()
            .map_err(|_| CorpusError::BadParameter(format!("prop_5_4 size {arg:?}")))?;
        return prop_5_4(n);
    }
    match name {
        "tree_xyz" => tree_xyz_entry(),
        "bimatrix_two_equilibria" => bimatrix(
            name,
            "2x2 payoff game with two equilibria",
            &[(1, 0), (5, 0), (2, 4), (5, 3)],
            Some(vec![[0, 1], [1, 0]]),
        ),
        "bimatrix_pennies" => bimatrix(
            name,
            "2x2 matching-pennies payoffs",
            &[(0, 1), (1, 0), (1, 0), (0, 1)],
            Some(vec![]),
        ),
        "bimatrix_coordination" => bimatrix(
            name,
            "symmetric 2x2 payoff game",
            &[(2, 1), (0, 0), (0, 0), (1, 2)],
            Some(vec![[0, 0], [1, 1]]),
        ),
        "win_lose_row" => win_lose(name, [1, 1, 0, 0], Some((Player::One, 1))),
        "win_lose_column" => win_lose(name, [0, 1, 0, 1], Some((Player::Two, 1))),
        "win_lose_none" => win_lose(name, [1, 0, 0, 1], None),
        "structure_xy_yx" => labelled_structure(name, &["X", "Y"], 2, &[0, 1, 1, 0], false),
        "structure_xz_yy" => labelled_structure(name, &["X", "Y", "Z"], 2, &[0, 2, 1, 1], true),
        "structure_xzy_yyy" => labelled_structure(name, &["X", "Y", "Z"], 3, &[0, 2, 1, 1, 1, 1], true),
        "remark_5_3" => remark_5_3(),
        "prop_5_4" => prop_5_4(4),
        "prop_5_5" => prop_5_5(),
        "prop_5_6" => prop_5_6(),
        "prop_5_1" | "prop_5_2" => Err(CorpusError::NotExecutable(name.into())),
        _ => Err(CorpusError::UnknownName(name.into())),
    }
}

fn profile_of(p: [usize; 2]) -> StrategyProfile {
    StrategyProfile::new(p)
}

/// Outcomes are the distinct payoff pairs in order of first appearance;
/// each player prefers a greater own payoff.
fn payoff_game(payoffs: &[(i64, i64)], counts: Vec<usize>) -> Result<NormalFormGame, CorpusError> {
    let mut distinct: Vec<(i64, i64)> = Vec::new();
    for p in payoffs {
        if !distinct.contains(p) {
            distinct.push(*p);
        }
    }
    let outcomes = OutcomeSet::labelled(distinct.iter().map(|(a, b)| format!("({a},{b})")))?;
    let v = payoffs
        .iter()
        .map(|p| distinct.iter().position(|d| d == p).expect("listed"))
        .collect();
    let st = GameStructure::new(counts, outcomes.clone(), v)?;
    let first = Preference::from_fn(outcomes.clone(), |x, y| distinct[x].0 < distinct[y].0);
    let second = Preference::from_fn(outcomes, |x, y| distinct[x].1 < distinct[y].1);
    Ok(NormalFormGame::from_parts(st, vec![first, second])?)
}

fn bimatrix(
    name: &str,
    summary: &str,
    payoffs: &[(i64, i64)],
    equilibria: Option<Vec<[usize; 2]>>,
) -> Result<CorpusEntry, CorpusError> {
    let g = payoff_game(payoffs, vec![2, 2])?;
    let mut claims = Vec::new();
    if let Some(list) = equilibria {
        let profiles: Vec<StrategyProfile> = list.into_iter().map(profile_of).collect();
        let label = if profiles.is_empty() {
            "no equilibrium".to_string()
        } else {
            format!("exactly {} equilibria", profiles.len())
        };
        claims.push(Claim::new(
            label,
            ClaimKind::ExactEquilibria {
                preferences: g.preferences().clone(),
                profiles,
            },
        ));
    }
    Ok(CorpusEntry {
        name: name.into(),
        summary: summary.into(),
        structure: g.structure().clone(),
        claims,
    })
}

fn win_lose(name: &str, v: [usize; 4], expected: Option<(Player, usize)>) -> Result<CorpusEntry, CorpusError> {
    let outcomes = OutcomeSet::labelled(["(1,0)", "(0,1)"])?;
    let st = GameStructure::new(vec![2, 2], outcomes, v.to_vec())?;
    let label = SubsetWord::from_indices(2, [0]);
    let text = match expected {
        Some((p, s)) => format!("{p} wins with strategy {s}"),
        None => "no winning strategy".into(),
    };
    let wl = st.derive_win_lose(label.clone())?.to_game();
    let mut claims = vec![Claim::new(text, ClaimKind::WinningStrategy { label, expected })];
    let kind = if expected.is_some() {
        ClaimKind::HasEquilibrium(wl.preferences().clone())
    } else {
        ClaimKind::NoEquilibrium(wl.preferences().clone())
    };
    claims.push(Claim::new("equilibrium exists iff a winning strategy does", kind));
    Ok(CorpusEntry {
        name: name.into(),
        summary: "2x2 win-lose game".into(),
        structure: st,
        claims,
    })
}

fn labelled_structure(
    name: &str,
    labels: &[&str],
    cols: usize,
    v: &[usize],
    determined: bool,
) -> Result<CorpusEntry, CorpusError> {
    let st = GameStructure::new(vec![2, cols], OutcomeSet::labelled(labels.iter().copied())?, v.to_vec())?;
    let label = if determined { "determined" } else { "not determined" };
    Ok(CorpusEntry {
        name: name.into(),
        summary: format!("two-player structure, {label}"),
        structure: st,
        claims: vec![Claim::new(label, ClaimKind::Determined(determined))],
    })
}

/// Root owned by `b`; its left child is `a`'s node, whose left child is a
/// second `b` node over leaves X and Y and whose right child is Z; the
/// root's right child is Y. Outcomes X, Y, Z are 0, 1, 2.
pub fn tree_xyz() -> GameTree {
    use Player::{One as A, Two as B};
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
    GameTree::new(&shape, OutcomeSet::labelled(["X", "Y", "Z"]).expect("distinct")).expect("valid tree")
}

/// Payoffs X=(4,2), Y=(1,0), Z=(3,3), each player preferring more.
pub fn tree_xyz_payoff_preferences() -> PreferenceProfile {
    let o = OutcomeSet::labelled(["X", "Y", "Z"]).expect("distinct");
    let a = Preference::linear(o.clone(), &[1, 2, 0]).expect("permutation");
    let b = Preference::linear(o, &[1, 0, 2]).expect("permutation");
    PreferenceProfile::new(vec![a, b]).expect("shared outcomes")
}

/// Win-lose preferences for a label: player 1 prefers labelled outcomes,
/// player 2 the others.
pub fn win_lose_preferences(label: &SubsetWord, outcomes: &OutcomeSet) -> PreferenceProfile {
    let a = Preference::from_fn(outcomes.clone(), |x, y| !label.contains(x) && label.contains(y));
    let b = Preference::from_fn(outcomes.clone(), |x, y| label.contains(x) && !label.contains(y));
    PreferenceProfile::new(vec![a, b]).expect("shared outcomes")
}

fn tree_xyz_entry() -> Result<CorpusEntry, CorpusError> {
    let tree = tree_xyz();
    let st = tree.to_normal_form(DEFAULT_PROFILE_CAP)?;
    let payoff = tree_xyz_payoff_preferences();
    // a plays left; b plays right at the root and right below.
    let right_right = StrategyProfile::new([0, 3]);
    let second_game = win_lose_preferences(&SubsetWord::from_indices(3, [0, 2]), st.outcomes());
    let claims = vec![
        Claim::new("all derived win-lose games determined", ClaimKind::Determined(true)),
        Claim::new(
            "right-right profile is not an equilibrium under payoffs",
            ClaimKind::NotEquilibrium {
                preferences: payoff.clone(),
                profile: right_right.clone(),
            },
        ),
        Claim::new(
            "right-right profile is an equilibrium of the win-lose instance X,Z for a",
            ClaimKind::IsEquilibrium {
                preferences: second_game,
                profile: right_right,
            },
        ),
        Claim::new("payoff game has an equilibrium", ClaimKind::HasEquilibrium(payoff)),
    ];
    Ok(CorpusEntry {
        name: "tree_xyz".into(),
        summary: "normal form of the two-player tree with leaves X, Y, Z, Y".into(),
        structure: st,
        claims,
    })
}

fn three_player_claims(st: &GameStructure) -> Vec<Claim> {
    vec![
        Claim::new(
            format!("all {} slices determined", st.strategy_counts().iter().sum::<usize>()),
            ClaimKind::SlicesDetermined,
        ),
        Claim::new("all 3 mergers determined", ClaimKind::MergersDetermined),
    ]
}

/// `x`, `y`, `z` as 0, 1, 2; `l` is strategy 0 and `r` strategy 1.
pub fn remark_5_3_structure() -> GameStructure {
    let (x, y, z) = (0, 1, 2);
    GameStructure::from_fn(
        vec![2, 2, 2],
        OutcomeSet::labelled(["x", "y", "z"]).expect("distinct"),
        |s| match (s[0], s[1], s[2]) {
            (0, 0, 0) | (0, 1, 0) | (1, 1, 0) => y,
            (1, 0, 0) | (0, 0, 1) | (0, 1, 1) => z,
            _ => x,
        },
    )
    .expect("valid shape")
}

/// Outcome `(i, j, k)` of `{0,1}^3` is index `4i + 2j + k`; each player
/// prefers its own coordinate set.
pub fn bit_vector_preferences() -> PreferenceProfile {
    let o =
        OutcomeSet::labelled((0..8).map(|m| format!("({},{},{})", m >> 2 & 1, m >> 1 & 1, m & 1))).expect("distinct");
    let prefs = (0..3)
        .map(|p| {
            let bit = 2 - p;
            Preference::from_fn(o.clone(), |x, y| x >> bit & 1 == 0 && y >> bit & 1 == 1)
        })
        .collect();
    PreferenceProfile::new(prefs).expect("shared outcomes")
}

fn remark_5_3() -> Result<CorpusEntry, CorpusError> {
    let st = remark_5_3_structure();
    let o = st.outcomes().clone();
    let (x, y, z) = (0, 1, 2);
    let a = Preference::linear(o.clone(), &[z, y, x])?;
    let b = Preference::linear(o, &[x, y, z])?;
    let prefs = PreferenceProfile::new(vec![a, b.clone(), b])?;
    let bits = bit_vector_preferences();
    Ok(CorpusEntry {
        name: "remark_5_3".into(),
        summary: "2x2x2 game over x, y, z".into(),
        structure: st,
        claims: vec![
            Claim::new(
                "no equilibrium under the linear orders",
                ClaimKind::NoEquilibrium(prefs),
            ),
            Claim::new(
                "every relabelling into {0,1}^3 has an equilibrium",
                ClaimKind::EveryRelabelling {
                    outcomes: bits.outcomes().expect("three players").clone(),
                    preferences: bits,
                },
            ),
        ],
    })
}

/// The `n × n × n` structure over outcomes `0..=n`, with one-based
/// arguments as in the defining table.
pub fn prop_5_4_value(n: usize, a: usize, b: usize, c: usize) -> usize {
    if c == n {
        if a == n {
            0
        } else if a == b && a < n {
            a + 1
        } else {
            n
        }
    } else if a == n && b == 1 {
        n
    } else if 1 < c && (a == c || b == c) {
        c
    } else {
        1
    }
}

pub fn prop_5_4_structure(n: usize) -> Result<GameStructure, CorpusError> {
    if n < 2 {
        return Err(CorpusError::BadParameter(format!("prop_5_4 needs n >= 2, got {n}")));
    }
    Ok(GameStructure::from_fn(vec![n; 3], OutcomeSet::new(n + 1)?, |s| {
        prop_5_4_value(n, s[0] + 1, s[1] + 1, s[2] + 1)
    })?)
}

/// `b` and `c` order `0..=n` as usual; `a` uses the inverse.
pub fn prop_5_4_preferences(n: usize) -> Result<PreferenceProfile, CorpusError> {
    let o = OutcomeSet::new(n + 1)?;
    let usual = Preference::linear(o, &(0..=n).collect::<Vec<_>>())?;
    Ok(PreferenceProfile::new(vec![usual.inverse(), usual.clone(), usual])?)
}

/// Payoff vectors `(-2k, k, k)` for outcome `k`, each player preferring
/// more. They sum to zero.
pub fn prop_5_4_zero_sum_preferences(n: usize) -> Result<PreferenceProfile, CorpusError> {
    let o = OutcomeSet::new(n + 1)?;
    let payoff = |k: usize, p: usize| -> i64 {
        let k = k as i64;
        if p == 0 {
            -2 * k
        } else {
            k
        }
    };
    let prefs = (0..3)
        .map(|p| Preference::from_fn(o.clone(), |x, y| payoff(x, p) < payoff(y, p)))
        .collect();
    Ok(PreferenceProfile::new(prefs)?)
}

/// The four displayed arrays for `n = 4`, indexed by `c`.
pub const PROP_5_4_SECTIONS: [[usize; 16]; 4] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 4, 1, 1, 1],
    [1, 2, 1, 1, 2, 2, 2, 2, 1, 2, 1, 1, 4, 2, 1, 1],
    [1, 1, 3, 1, 1, 1, 3, 1, 3, 3, 3, 3, 4, 1, 3, 1],
    [2, 4, 4, 4, 4, 3, 4, 4, 4, 4, 4, 4, 0, 0, 0, 0],
];

pub fn prop_5_4(n: usize) -> Result<CorpusEntry, CorpusError> {
    let st = prop_5_4_structure(n)?;
    let mut claims = vec![
        Claim::new(
            "no equilibrium under the linear orders",
            ClaimKind::NoEquilibrium(prop_5_4_preferences(n)?),
        ),
        Claim::new(
            "no equilibrium under zero-sum payoffs (-2k,k,k)",
            ClaimKind::NoEquilibrium(prop_5_4_zero_sum_preferences(n)?),
        ),
        Claim::new(
            format!("preferences of height at most {n} always have an equilibrium"),
            ClaimKind::ShortChains { max_height: n },
        ),
    ];
    if n == 4 {
        for (c, expected) in PROP_5_4_SECTIONS.iter().enumerate() {
            claims.push(Claim::new(
                format!("section c={} matches the table", c + 1),
                ClaimKind::Section {
                    player: 2,
                    strategy: c,
                    expected: expected.to_vec(),
                },
            ));
        }
    }
    Ok(CorpusEntry {
        name: if n == 4 {
            "prop_5_4".into()
        } else {
            format!("prop_5_4:{n}")
        },
        summary: format!("{n}x{n}x{n} structure over outcomes 0..={n}"),
        structure: st,
        claims,
    })
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

/// The Latin square `X Y Z / Y Z X / Z X Y`.
const LATIN: [[usize; 3]; 3] = [[X, Y, Z], [Y, Z, X], [Z, X, Y]];

/// One-based arguments. The block `a ≤ 3, b ≥ 4, c ≥ 4` is the cylinder
/// along `a` with the square of block `b ≥ 4, c ≥ 4` read over `(b, c)`.
pub fn prop_5_5_value(a: usize, b: usize, c: usize) -> usize {
    // Rows 4..6 of the outer faces, keyed by the pair of large indices.
    let face = |p: usize, q: usize| -> usize {
        match (p, q) {
            (4, 1) | (5, 3) | (6, 2) => X,
            (4, 2) | (5, 1) | (6, 3) => Y,
            _ => Z,
        }
    };
    let high = |p: usize, q: usize| -> usize {
        match (p, q) {
            (4, 4) | (5, 6) | (6, 5) => X,
            (4, 5) | (5, 4) | (6, 6) => Y,
            _ => Z,
        }
    };
    match (a <= 3, b <= 3, c <= 3) {
        (true, true, _) => LATIN[a - 1][b - 1],
        (_, false, true) => face(b, c),
        (false, _, false) => high(a, c),
        (false, true, true) => face(a, b),
        (true, false, false) => high(b, c),
    }
}

pub fn prop_5_5_structure() -> GameStructure {
    GameStructure::from_fn(
        vec![6; 3],
        OutcomeSet::labelled(["X", "Y", "Z"]).expect("distinct"),
        |s| prop_5_5_value(s[0] + 1, s[1] + 1, s[2] + 1),
    )
    .expect("valid shape")
}

/// `v(·,·,1)` as displayed.
pub const PROP_5_5_SECTION_1: [usize; 36] = [
    X, Y, Z, X, Y, Z, //
    Y, Z, X, X, Y, Z, //
    Z, X, Y, X, Y, Z, //
    X, Y, Z, X, Y, Z, //
    Y, Z, X, X, Y, Z, //
    Z, X, Y, X, Y, Z,
];

/// Player `p` prefers its unit vector to both others.
pub fn unit_vector_preferences() -> PreferenceProfile {
    top_choice_preferences([X, Y, Z])
}

/// Each player's listed outcome beats the other two, which are incomparable.
pub fn top_choice_preferences(tops: [usize; 3]) -> PreferenceProfile {
    let o = OutcomeSet::labelled(["X", "Y", "Z"]).expect("distinct");
    let prefs = tops
        .iter()
        .map(|&t| Preference::from_fn(o.clone(), |x, y| x != t && y == t))
        .collect();
    PreferenceProfile::new(prefs).expect("shared outcomes")
}

fn prop_5_5() -> Result<CorpusEntry, CorpusError> {
    let st = prop_5_5_structure();
    let mut claims = vec![Claim::new(
        "no equilibrium with X, Y, Z as unit vectors",
        ClaimKind::NoEquilibrium(unit_vector_preferences()),
    )];
    claims.extend(three_player_claims(&st));
    claims.push(Claim::new(
        "section c=1 matches the table",
        ClaimKind::Section {
            player: 2,
            strategy: 0,
            expected: PROP_5_5_SECTION_1.to_vec(),
        },
    ));
    Ok(CorpusEntry {
        name: "prop_5_5".into(),
        summary: "6x6x6 cube over X, Y, Z".into(),
        structure: st,
        claims,
    })
}

/// One-based arguments.
pub fn prop_5_6_value(a: usize, b: usize, c: usize) -> usize {
    let wide = |b: usize, c: usize| match (b, c) {
        (5, 1) | (6, 3) | (7, 2) => X,
        (5, 2) | (6, 1) | (7, 3) => Y,
        _ => Z,
    };
    // Low rows over the first four columns.
    let low = |a: usize, b: usize| match (a, b) {
        (1, 1) | (2, 2) | (1, 3) | (2, 4) => X,
        (1, 2) | (2, 1) => Y,
        _ => Z,
    };
    // Low rows over the last four arrays.
    let late_low = |a: usize, c: usize| match (a, c) {
        (1, 5) | (2, 4) => X,
        (1, 7) | (2, 6) => Y,
        _ => Z,
    };
    let high_early = |a: usize, b: usize| match (a, b) {
        (3, 1) | (4, 2) | (3, 3) | (4, 4) => X,
        (3, 2) | (4, 1) => Y,
        _ => Z,
    };
    let high_late = |a: usize, c: usize| match (a, c) {
        (3, 5) | (4, 4) => X,
        (3, 7) | (4, 6) => Y,
        _ => Z,
    };
    match (a <= 2, b <= 4, c <= 3) {
        (_, false, true) => wide(b, c),
        (true, true, _) => low(a, b),
        (true, false, false) => late_low(a, c),
        (false, _, false) => high_late(a, c),
        (false, true, true) => high_early(a, b),
    }
}

pub fn prop_5_6_structure() -> GameStructure {
    GameStructure::from_fn(
        vec![4, 7, 7],
        OutcomeSet::labelled(["X", "Y", "Z"]).expect("distinct"),
        |s| prop_5_6_value(s[0] + 1, s[1] + 1, s[2] + 1),
    )
    .expect("valid shape")
}

pub const PROP_5_6_SECTION_1: [usize; 28] = [
    X, Y, X, Z, X, Y, Z, //
    Y, X, Z, X, X, Y, Z, //
    X, Y, X, Z, X, Y, Z, //
    Y, X, Z, X, X, Y, Z,
];

pub const PROP_5_6_SECTION_7: [usize; 28] = [
    X, Y, X, Z, Y, Y, Y, //
    Y, X, Z, X, Z, Z, Z, //
    Y, Y, Y, Y, Y, Y, Y, //
    Z, Z, Z, Z, Z, Z, Z,
];

/// Preferred outcomes of `a`, `b`, `c` and the one-based equilibrium.
pub const PROP_5_6_TABLE: [([usize; 3], [usize; 3]); 6] = [
    ([Z, X, Y], [1, 1, 1]),
    ([Z, Y, X], [1, 2, 1]),
    ([Y, X, Z], [1, 3, 1]),
    ([Y, Z, X], [1, 4, 1]),
    ([X, Y, Z], [4, 7, 7]),
    ([X, Z, Y], [4, 7, 6]),
];

/// `Z <a Y <a X`, `X <b Z <b Y`, `Y <c X <c Z`.
pub fn prop_5_6_linear_preferences() -> PreferenceProfile {
    let o = OutcomeSet::labelled(["X", "Y", "Z"]).expect("distinct");
    let prefs = [[Z, Y, X], [X, Z, Y], [Y, X, Z]]
        .iter()
        .map(|order| Preference::linear(o.clone(), order).expect("permutation"))
        .collect();
    PreferenceProfile::new(prefs).expect("shared outcomes")
}

/// `Z <a Y <a X`, `X, Z <b Y`, `X, Y <c Z`.
pub fn prop_5_6_partial_preferences() -> PreferenceProfile {
    let o = OutcomeSet::labelled(["X", "Y", "Z"]).expect("distinct");
    let a = Preference::linear(o.clone(), &[Z, Y, X]).expect("permutation");
    let b = Preference::new(o.clone(), [(X, Y), (Z, Y)]).expect("in range");
    let c = Preference::new(o, [(X, Z), (Y, Z)]).expect("in range");
    PreferenceProfile::new(vec![a, b, c]).expect("shared outcomes")
}

fn prop_5_6() -> Result<CorpusEntry, CorpusError> {
    let st = prop_5_6_structure();
    let mut claims = Vec::new();
    for (tops, profile) in PROP_5_6_TABLE {
        let name = |o: usize| ["X", "Y", "Z"][o];
        claims.push(Claim::new(
            format!(
                "a:{} b:{} c:{} has equilibrium ({},{},{})",
                name(tops[0]),
                name(tops[1]),
                name(tops[2]),
                profile[0],
                profile[1],
                profile[2]
            ),
            ClaimKind::IsEquilibrium {
                preferences: top_choice_preferences(tops),
                profile: StrategyProfile::new(profile.map(|k| k - 1)),
            },
        ));
    }
    claims.push(Claim::new(
        "no equilibrium under the three linear orders",
        ClaimKind::NoEquilibrium(prop_5_6_linear_preferences()),
    ));
    claims.push(Claim::new(
        "no equilibrium with only the top outcomes of b and c ordered",
        ClaimKind::NoEquilibrium(prop_5_6_partial_preferences()),
    ));
    claims.push(Claim::new(
        "preferences of height at most 2 always have an equilibrium",
        ClaimKind::ShortChains { max_height: 2 },
    ));
    claims.extend(three_player_claims(&st));
    for (c, expected) in [(0, &PROP_5_6_SECTION_1), (6, &PROP_5_6_SECTION_7)] {
        claims.push(Claim::new(
            format!("section c={} matches the table", c + 1),
            ClaimKind::Section {
                player: 2,
                strategy: c,
                expected: expected.to_vec(),
            },
        ));
    }
    Ok(CorpusEntry {
        name: "prop_5_6".into(),
        summary: "4x7x7 cuboid over X, Y, Z".into(),
        structure: st,
        claims,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Samples per sampled claim.
    pub samples: usize,
    /// Largest preference space checked exhaustively.
    pub exhaustive_limit: usize,
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            samples: 1000,
            exhaustive_limit: 100_000,
            cap: DEFAULT_PROFILE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    Exhaustive { cases: usize },
    Sampled { samples: usize, seed: u64 },
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Exhaustive { cases: 1 } => f.write_str("exhaustive, 1 case"),
            Evidence::Exhaustive { cases } => write!(f, "exhaustive, {cases} cases"),
            Evidence::Sampled { samples, seed } => write!(f, "sampled, {samples} samples, seed {seed}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimResult {
    pub label: String,
    pub passed: bool,
    pub evidence: Evidence,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub entry: String,
    pub results: Vec<ClaimResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.entry)?;
        for r in &self.results {
            let mark = if r.passed { "ok" } else { "FAILED" };
            writeln!(f, "  [{mark}] {}: {} ({})", r.label, r.detail, r.evidence)?;
        }
        Ok(())
    }
}

pub fn verify(entry: &CorpusEntry, options: &VerifyOptions) -> Report {
    let results = entry
        .claims
        .iter()
        .enumerate()
        .map(|(i, claim)| {
            let seed = options.seed.wrapping_add(i as u64);
            match check(&entry.structure, &claim.kind, options, seed) {
                Ok((passed, evidence, detail)) => ClaimResult {
                    label: claim.label.clone(),
                    passed,
                    evidence,
                    detail,
                },
                Err(e) => ClaimResult {
                    label: claim.label.clone(),
                    passed: false,
                    evidence: Evidence::Exhaustive { cases: 0 },
                    detail: format!("error: {e}"),
                },
            }
        })
        .collect();
    Report {
        entry: entry.name.clone(),
        results,
    }
}

fn confirmed(ok: bool) -> &'static str {
    if ok {
        "confirmed"
    } else {
        "refuted"
    }
}

fn check(
    st: &GameStructure,
    kind: &ClaimKind,
    options: &VerifyOptions,
    seed: u64,
) -> Result<(bool, Evidence, String), CorpusError> {
    let one = Evidence::Exhaustive { cases: 1 };
    let game = |prefs: &PreferenceProfile| NormalFormGame::new(st.clone(), prefs.clone());
    Ok(match kind {
        ClaimKind::NoEquilibrium(prefs) => {
            let found = game(prefs)?.first_ne(options.cap)?;
            let detail = match &found {
                None => "no NE: confirmed".to_string(),
                Some(p) => format!("found equilibrium {p}"),
            };
            (
                found.is_none(),
                Evidence::Exhaustive {
                    cases: st.profile_count(),
                },
                detail,
            )
        }
        ClaimKind::HasEquilibrium(prefs) => {
            let found = game(prefs)?.first_ne(options.cap)?;
            let detail = match &found {
                Some(p) => format!("equilibrium {p}"),
                None => "no equilibrium found".into(),
            };
            (
                found.is_some(),
                Evidence::Exhaustive {
                    cases: st.profile_count(),
                },
                detail,
            )
        }
        ClaimKind::IsEquilibrium { preferences, profile } => {
            let g = game(preferences)?;
            st.check_profile(profile)?;
            let ok = g.is_nash_equilibrium(profile);
            (ok, one, format!("{profile}: {}", confirmed(ok)))
        }
        ClaimKind::NotEquilibrium { preferences, profile } => {
            let g = game(preferences)?;
            st.check_profile(profile)?;
            let dev = g.improving_deviation(profile);
            let detail = match dev {
                Some((p, s)) => format!("{profile}: player {} improves with strategy {s}", p + 1),
                None => format!("{profile} is an equilibrium"),
            };
            (dev.is_some(), one, detail)
        }
        ClaimKind::ExactEquilibria { preferences, profiles } => {
            let all = game(preferences)?.find_all_ne(options.cap)?;
            let list: Vec<String> = all.iter().map(ToString::to_string).collect();
            (
                &all == profiles,
                Evidence::Exhaustive {
                    cases: st.profile_count(),
                },
                format!("equilibria [{}]", list.join(", ")),
            )
        }
        ClaimKind::WinningStrategy { label, expected } => {
            let got = st.derive_win_lose(label.clone())?.winning_strategy();
            let detail = match got {
                Some((p, s)) => format!("{p} wins with strategy {s}"),
                None => "no winning strategy".into(),
            };
            (got == *expected, one, detail)
        }
        ClaimKind::Determined(expected) => {
            let d = st.is_determined(options.cap)?;
            let detail = if d { "determined" } else { "not determined" };
            (
                d == *expected,
                Evidence::Exhaustive {
                    cases: 1 << st.outcome_count(),
                },
                detail.into(),
            )
        }
        ClaimKind::SlicesDetermined => {
            let mut total = 0;
            let mut good = 0;
            for p in 0..3 {
                for s in 0..st.strategy_counts()[p] {
                    total += 1;
                    good += usize::from(st.slice(p, s)?.is_determined(options.cap)?);
                }
            }
            (
                good == total,
                Evidence::Exhaustive { cases: total },
                format!("{good}/{total} slices determined"),
            )
        }
        ClaimKind::MergersDetermined => {
            let mut good = 0;
            for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                good += usize::from(st.merge(x, y)?.is_determined(options.cap)?);
            }
            (
                good == 3,
                Evidence::Exhaustive { cases: 3 },
                format!("{good}/3 mergers determined"),
            )
        }
        ClaimKind::Section {
            player,
            strategy,
            expected,
        } => {
            let got = st.slice(*player, *strategy)?;
            let ok = got.tensor() == expected.as_slice();
            (ok, one, format!("section {}", if ok { "matches" } else { "differs" }))
        }
        ClaimKind::EveryRelabelling { outcomes, preferences } => {
            let n = st.outcome_count();
            let k = outcomes.size();
            let total = k
                .checked_pow(n as u32)
                .filter(|&t| t <= options.exhaustive_limit)
                .ok_or_else(|| {
                    CorpusError::BadParameter(format!("{k}^{n} relabellings exceed the exhaustive limit"))
                })?;
            let mut good = 0;
            let mut first_bad = None;
            for code in 0..total {
                let map: Vec<usize> = (0..n).map(|i| code / k.pow(i as u32) % k).collect();
                let relabelled = st.map_outcomes(outcomes.clone(), |o| map[o])?;
                let g = NormalFormGame::new(relabelled, preferences.clone())?;
                if g.first_ne(options.cap)?.is_some() {
                    good += 1;
                } else if first_bad.is_none() {
                    first_bad = Some(map);
                }
            }
            let mut detail = format!("{good}/{total} instantiations have NE");
            if let Some(m) = first_bad {
                detail.push_str(&format!(", first failure {m:?}"));
            }
            (good == total, Evidence::Exhaustive { cases: total }, detail)
        }
        ClaimKind::ShortChains { max_height } => short_chains(st, *max_height, options, seed)?,
    })
}

/// Acyclic relations of height at most `max_height`, when there are few
/// enough outcomes to list them.
fn short_relations(outcomes: &OutcomeSet, max_height: usize) -> Option<Vec<Preference>> {
    let n = outcomes.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    if pairs.len() > 12 {
        return None;
    }
    Some(
        (0..1u32 << pairs.len())
            .map(|m| {
                let chosen = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &p)| p);
                Preference::new(outcomes.clone(), chosen).expect("in range")
            })
            .filter(|p| p.height().finite().is_some_and(|h| h <= max_height))
            .collect(),
    )
}

pub fn random_short_relation<R: Rng + ?Sized>(rng: &mut R, outcomes: &OutcomeSet, max_height: usize) -> Preference {
    loop {
        let density = rng.gen_range(0.2..1.0);
        let p = random_acyclic(rng, outcomes, density);
        if p.height().finite().is_some_and(|h| h <= max_height) {
            return p;
        }
    }
}

fn short_chains(
    st: &GameStructure,
    max_height: usize,
    options: &VerifyOptions,
    seed: u64,
) -> Result<(bool, Evidence, String), CorpusError> {
    let outcomes = st.outcomes();
    let players = st.players();
    let has_ne = |prefs: Vec<Preference>| -> Result<bool, CorpusError> {
        let g = NormalFormGame::from_parts(st.clone(), prefs)?;
        Ok(g.first_ne(options.cap)?.is_some())
    };
    let listed = short_relations(outcomes, max_height).filter(|l| {
        l.len()
            .checked_pow(players as u32)
            .is_some_and(|t| t <= options.exhaustive_limit)
    });
    if let Some(list) = listed {
        let total = list.len().pow(players as u32);
        let mut good = 0;
        for code in 0..total {
            let prefs = (0..players)
                .map(|p| list[code / list.len().pow(p as u32) % list.len()].clone())
                .collect();
            good += usize::from(has_ne(prefs)?);
        }
        return Ok((
            good == total,
            Evidence::Exhaustive { cases: total },
            format!(
                "{good}/{total} preference profiles have NE ({} relations each)",
                list.len()
            ),
        ));
    }
    let mut rng = seeded(seed);
    let mut good = 0;
    for _ in 0..options.samples {
        let prefs = (0..players)
            .map(|_| random_short_relation(&mut rng, outcomes, max_height))
            .collect();
        good += usize::from(has_ne(prefs)?);
    }
    Ok((
        good == options.samples,
        Evidence::Sampled {
            samples: options.samples,
            seed,
        },
        format!("{good}/{} sampled preference profiles have NE", options.samples),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_executable_entry_builds() {
        for e in INDEX {
            let built = build(e.name);
            assert_eq!(built.is_ok(), e.executable, "{}", e.name);
        }
        assert!(matches!(build("nope"), Err(CorpusError::UnknownName(_))));
        assert!(matches!(build("prop_5_4:1"), Err(CorpusError::BadParameter(_))));
    }

    #[test]
    fn remark_arrays() {
        let st = remark_5_3_structure();
        let (x, y, z) = (0, 1, 2);
        assert_eq!(st.slice(2, 0).unwrap().tensor(), &[y, y, z, y]);
        assert_eq!(st.slice(2, 1).unwrap().tensor(), &[z, z, x, x]);
    }

    #[test]
    fn three_chain_relations() {
        let o = OutcomeSet::new(3).unwrap();
        assert_eq!(short_relations(&o, 2).unwrap().len(), 13);
    }

    #[test]
    fn small_entries_verify() {
        for name in [
            "tree_xyz",
            "bimatrix_two_equilibria",
            "bimatrix_pennies",
            "bimatrix_coordination",
            "win_lose_row",
            "win_lose_column",
            "win_lose_none",
            "structure_xy_yx",
            "structure_xz_yy",
            "structure_xzy_yyy",
            "remark_5_3",
        ] {
            let report = verify(&build(name).unwrap(), &VerifyOptions::default());
            assert!(report.all_passed(), "{report}");
        }
    }
}

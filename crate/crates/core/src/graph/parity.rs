//! Parity games, min-even convention: player 1 wins a play iff the least
//! color seen infinitely often is even. Solved by Zielonka's recursive
//! attractor decomposition.

use super::{Arena, Play, PositionalStrategy};
use crate::player::Player;

/// Winning regions of a parity arena, each with a positional strategy that
/// wins from every vertex of its region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityRegions {
    pub winner: Vec<Player>,
    pub strategies: [PositionalStrategy; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySolution {
    pub winner: Player,
    /// Wins for `winner` against every opposing strategy.
    pub strategy: PositionalStrategy,
}

pub fn play_winner(arena: &Arena, play: &Play) -> Player {
    Player::of_priority(play.min_cycle_color(arena))
}

pub fn solve_parity(arena: &Arena, start: usize) -> ParitySolution {
    let regions = zielonka(arena);
    let winner = regions.winner[start];
    let [one, two] = regions.strategies;
    ParitySolution {
        winner,
        strategy: match winner {
            Player::One => one,
            Player::Two => two,
        },
    }
}

pub fn zielonka(arena: &Arena) -> ParityRegions {
    let n = arena.vertex_count();
    let solved = solve(arena, &vec![true; n]);
    let winner: Vec<Player> = solved
        .winner
        .iter()
        .map(|w| w.expect("every vertex is won by someone"))
        .collect();
    let strategies = Player::BOTH.map(|p| {
        let next = (0..n)
            .map(|v| {
                (arena.owner(v) == p).then(|| match (winner[v] == p, solved.moves[v]) {
                    (true, Some(w)) => w,
                    _ => arena.successors(v)[0],
                })
            })
            .collect();
        PositionalStrategy::new(arena, p, next).expect("moves follow edges")
    });
    ParityRegions { winner, strategies }
}

struct Partial {
    winner: Vec<Option<Player>>,
    /// Winning move at vertices owned by the vertex's winner.
    moves: Vec<Option<usize>>,
}

/// Vertices of `alive` from which `player` forces a visit to `target`,
/// recording attracting moves for `player` in `moves`.
fn attractor(arena: &Arena, player: Player, target: &[bool], alive: &[bool], moves: &mut [Option<usize>]) -> Vec<bool> {
    let n = arena.vertex_count();
    let mut attr = target.to_vec();
    let mut escapes: Vec<usize> = (0..n)
        .map(|v| arena.successors(v).iter().filter(|&&w| alive[w]).count())
        .collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| attr[v]).collect();
    while let Some(w) = stack.pop() {
        for &v in arena.predecessors(w) {
            if !alive[v] || attr[v] {
                continue;
            }
            if arena.owner(v) == player {
                moves[v] = Some(w);
            } else {
                escapes[v] -= 1;
                if escapes[v] > 0 {
                    continue;
                }
            }
            attr[v] = true;
            stack.push(v);
        }
    }
    attr
}

fn solve(arena: &Arena, alive: &[bool]) -> Partial {
    let n = arena.vertex_count();
    let mut out = Partial {
        winner: vec![None; n],
        moves: vec![None; n],
    };
    let Some(p) = (0..n).filter(|&v| alive[v]).map(|v| arena.color(v)).min() else {
        return out;
    };
    let me = Player::of_priority(p);
    let them = me.opponent();
    let top: Vec<bool> = (0..n).map(|v| alive[v] && arena.color(v) == p).collect();
    let mut moves = vec![None; n];
    let attr = attractor(arena, me, &top, alive, &mut moves);
    for v in (0..n).filter(|&v| top[v] && arena.owner(v) == me) {
        moves[v] = arena.successors(v).iter().copied().find(|&w| alive[w]);
    }
    let rest: Vec<bool> = (0..n).map(|v| alive[v] && !attr[v]).collect();
    let sub = solve(arena, &rest);

    if !sub.winner.contains(&Some(them)) {
        for v in (0..n).filter(|&v| alive[v]) {
            out.winner[v] = Some(me);
            out.moves[v] = if rest[v] { sub.moves[v] } else { moves[v] };
        }
        return out;
    }

    let lost: Vec<bool> = sub.winner.iter().map(|&w| w == Some(them)).collect();
    let mut their_moves = vec![None; n];
    let gone = attractor(arena, them, &lost, alive, &mut their_moves);
    let remaining: Vec<bool> = (0..n).map(|v| alive[v] && !gone[v]).collect();
    let sub2 = solve(arena, &remaining);
    for v in (0..n).filter(|&v| alive[v]) {
        if gone[v] {
            out.winner[v] = Some(them);
            out.moves[v] = if lost[v] { sub.moves[v] } else { their_moves[v] };
        } else {
            out.winner[v] = sub2.winner[v];
            out.moves[v] = sub2.moves[v];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::positional_play;

    #[test]
    fn single_vertex() {
        for (color, winner) in [(0, Player::One), (1, Player::Two), (4, Player::One)] {
            let a = Arena::from_edges(1, &[0], &[(0, 0)], vec![color]).unwrap();
            assert_eq!(solve_parity(&a, 0).winner, winner);
        }
    }

    #[test]
    fn player_one_escapes_odd_loop() {
        // Vertex 0 (player 2) loops on color 1 or moves to 1; vertex 1
        // (player 1) loops on color 2 or returns.
        let a = Arena::from_edges(2, &[1], &[(0, 0), (0, 1), (1, 1), (1, 0)], vec![1, 2]).unwrap();
        let regions = zielonka(&a);
        assert_eq!(regions.winner, vec![Player::Two, Player::One]);
        let sol = solve_parity(&a, 1);
        assert_eq!(sol.strategy.move_at(1), Some(1));
    }

    #[test]
    fn winners_beat_every_positional_opponent() {
        let a = Arena::from_edges(
            4,
            &[0, 2],
            &[(0, 1), (0, 2), (1, 0), (1, 3), (2, 2), (2, 3), (3, 0), (3, 1)],
            vec![3, 2, 1, 0],
        )
        .unwrap();
        let regions = zielonka(&a);
        for start in 0..4 {
            let w = regions.winner[start];
            let mine = &regions.strategies[w.index()];
            for other in PositionalStrategy::enumerate(&a, w.opponent()) {
                let play = match w {
                    Player::One => positional_play(&a, start, mine, &other),
                    Player::Two => positional_play(&a, start, &other, mine),
                };
                assert_eq!(play_winner(&a, &play), w, "start {start}");
            }
        }
    }
}

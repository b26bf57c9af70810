use std::collections::{HashSet, VecDeque};


use serde::Serialize;

use super::Game;
use crate::algebra::WilkeAlgebra;
use crate::words::{UpWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantifier {
    AllIn,
    ExistsIn,
}

/// A play `prefix · cycle^ω` given by edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LassoPlay {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl LassoPlay {
    pub fn trace(&self, game: &Game) -> Option<UpWord> {
        let word = |es: &[usize]| Word(es.iter().filter_map(|&e| game.edges[e].letter).collect());
        UpWord::new(word(&self.prefix), word(&self.cycle)).ok()
    }

    /// Edges chain from `start` and the cycle closes.
    pub fn is_play_from(&self, game: &Game, start: usize) -> bool {
        let mut cur = start;
        for &e in self.prefix.iter().chain(&self.cycle) {
            if game.edges[e].src != cur {
                return false;
            }
            cur = game.edges[e].tgt;
        }
        let cycle_start = self.prefix.last().map_or(start, |&e| game.edges[e].tgt);
        !self.cycle.is_empty() && cur == cycle_start
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayCheck {
    pub holds: bool,
    pub witness: Option<LassoPlay>,
}

/// Element index with 0 for the identity and `s + 1` for `s ∈ S_+`.
fn step(a: &WilkeAlgebra, p: usize, letter: Option<usize>) -> usize {
    match (p, letter) {
        (p, None) => p,
        (0, Some(c)) => a.letter(c) + 1,
        (p, Some(c)) => a.mul(p - 1, a.letter(c)) + 1,
    }
}

fn allowed<'g>(game: &'g Game, restrict: &[Option<usize>], v: usize) -> &'g [usize] {
    match restrict.get(v).copied().flatten() {
        Some(e) => {
            let pos = game.out[v].iter().position(|&x| x == e).expect("chosen edge leaves its node");
            &game.out[v][pos..=pos]
        }
        None => &game.out[v],
    }
}

/// BFS over `(node, element)` from `(from, id)`; returns parent edges.
fn explore(
    game: &Game,
    restrict: &[Option<usize>],
    a: &WilkeAlgebra,
    from: usize,
) -> Vec<Option<(usize, usize)>> {
    let m = a.splus_len() + 1;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; game.len() * m];
    let mut seen = vec![false; game.len() * m];
    let mut queue = VecDeque::from([(from, 0usize)]);
    seen[from * m] = true;
    while let Some((v, p)) = queue.pop_front() {
        for &e in allowed(game, restrict, v) {
            let edge = game.edges[e];
            let q = step(a, p, edge.letter);
            let idx = edge.tgt * m + q;
            if !seen[idx] {
                seen[idx] = true;
                parent[idx] = Some((v * m + p, e));
                queue.push_back((edge.tgt, q));
            }
        }
    }
    // mark the root as reached without a parent
    parent[from * m] = parent[from * m].or(Some((usize::MAX, usize::MAX)));
    parent
}

fn path_to(parent: &[Option<(usize, usize)>], root: usize, mut idx: usize) -> Vec<usize> {
    let mut path = Vec::new();
    while idx != root {
        let (prev, e) = parent[idx].expect("reached");
        path.push(e);
        idx = prev;
    }
    path.reverse();
    path
}

/// A lasso from `start` in the graph restricted by `restrict` (one chosen edge
/// per node, or `None` for all edges) whose trace is accepted iff `accepted`.
pub fn find_lasso(
    game: &Game,
    restrict: &[Option<usize>],
    a: &WilkeAlgebra,
    start: usize,
    accepted: bool,
) -> Option<LassoPlay> {
    let m = a.splus_len() + 1;
    let reach = explore(game, restrict, a, start);
    let nodes: Vec<usize> = (0..game.len()).filter(|&v| (0..m).any(|p| reach[v * m + p].is_some())).collect();
    for &q in &nodes {
        // cycle images at q: paths from (q, id) back to q with a non-identity image
        let cyc = explore(game, restrict, a, q);
        for t in 1..m {
            let back = cyc[q * m + t];
            if back.is_none() {
                continue;
            }
            let omega = a.omega(t - 1);
            for p in 0..m {
                if reach[q * m + p].is_none() {
                    continue;
                }
                let x = if p == 0 { omega } else { a.mixed(p - 1, omega) };
                if a.accepts(x) == accepted {
                    let prefix = path_to(&reach, start * m, q * m + p);
                    let cycle = path_to(&cyc, q * m, q * m + t);
                    return Some(LassoPlay { prefix, cycle });
                }
            }
        }
    }
    None
}

/// Universal (every play's trace in `F`) or existential check from `start`.
/// The witness is a violating play for `AllIn` and a satisfying one for
/// `ExistsIn`.
pub fn check_plays(
    game: &Game,
    restrict: &[Option<usize>],
    a: &WilkeAlgebra,
    start: usize,
    quantifier: Quantifier,
) -> PlayCheck {
    match quantifier {
        Quantifier::AllIn => {
            let w = find_lasso(game, restrict, a, start, false);
            PlayCheck { holds: w.is_none(), witness: w }
        }
        Quantifier::ExistsIn => {
            let w = find_lasso(game, restrict, a, start, true);
            PlayCheck { holds: w.is_some(), witness: w }
        }
    }
}

/// Traces of every lasso from `start` with at most `max_prefix` prefix edges
/// and `1..=max_cycle` cycle edges, normalized and deduplicated.
pub fn brute_force_lassos(game: &Game, start: usize, max_prefix: usize, max_cycle: usize) -> Vec<UpWord> {
    // layer k holds the (node, letters) pairs of walks with k edges
    let walks = |from: usize, max: usize| -> Vec<HashSet<(usize, Vec<usize>)>> {
        let mut layers = vec![HashSet::from([(from, Vec::new())])];
        for _ in 0..max {
            let next: HashSet<(usize, Vec<usize>)> = layers
                .last()
                .unwrap()
                .iter()
                .flat_map(|(v, w)| {
                    game.out[*v].iter().map(move |&e| {
                        let edge = game.edges[e];
                        let mut w2 = w.clone();
                        w2.extend(edge.letter);
                        (edge.tgt, w2)
                    })
                })
                .collect();
            layers.push(next);
        }
        layers
    };
    let closed: Vec<HashSet<Vec<usize>>> = (0..game.len())
        .map(|q| {
            walks(q, max_cycle)
                .into_iter()
                .skip(1)
                .flatten()
                .filter(|(v, w)| *v == q && !w.is_empty())
                .map(|(_, w)| w)
                .collect()
        })
        .collect();
    let prefixes: HashSet<(usize, Vec<usize>)> = walks(start, max_prefix).into_iter().flatten().collect();
    let mut out: HashSet<UpWord> = HashSet::new();
    for (q, u) in &prefixes {
        for v in &closed[*q] {
            let up = UpWord::new(Word(u.clone()), Word(v.clone())).expect("non-empty cycle word");
            out.insert(up.normalize());
        }
    }
    let mut v: Vec<UpWord> = out.into_iter().collect();
    v.sort_by(|a, b| (a.prefix(), a.period()).cmp(&(b.prefix(), b.period())));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::games::{Edge, EdgeArena, Player};
    use crate::words::Alphabet;

    fn one_node(owner: Player, letters: &[usize]) -> Game {
        let edges = letters.iter().map(|&c| Edge { src: 0, letter: Some(c), tgt: 0 }).collect();
        EdgeArena::new(Alphabet::from_chars("ab"), vec!["v".into()], vec![owner], edges).unwrap().game()
    }

    #[test]
    fn self_loop_examples() {
        let a = fixtures::gf_a();
        let g = one_node(Player::P1, &[0]);
        assert!(check_plays(&g, &[None], &a, 0, Quantifier::AllIn).holds);
        let g = one_node(Player::P2, &[0, 1]);
        let r = check_plays(&g, &[None], &a, 0, Quantifier::AllIn);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert!(w.is_play_from(&g, 0));
        assert_eq!(g.edges[w.cycle[0]].letter, Some(1));
        assert!(check_plays(&g, &[None], &a, 0, Quantifier::ExistsIn).holds);
    }

    #[test]
    fn restriction_picks_one_edge() {
        let a = fixtures::gf_a();
        let g = one_node(Player::P1, &[0, 1]);
        assert!(check_plays(&g, &[Some(0)], &a, 0, Quantifier::AllIn).holds);
        assert!(!check_plays(&g, &[Some(1)], &a, 0, Quantifier::AllIn).holds);
    }

    #[test]
    fn brute_force_on_a_two_loop_node() {
        let g = one_node(Player::P1, &[0, 1]);
        let words = brute_force_lassos(&g, 0, 1, 2);
        // periods a, b, ab (ba normalizes to ab after a prefix) with prefixes ε, a, b
        assert!(words.len() >= 3);
        assert!(words.iter().all(|w| w.normalize() == *w));
    }
}

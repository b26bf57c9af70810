use std::collections::BTreeMap;

use serde::Serialize;

use super::plays::find_lasso;
use super::{Edge, Game, Player};
use crate::algebra::WilkeAlgebra;
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// Default bound on enumerated strategies per query; `POSLAB_CAP` overrides it.
pub const DEFAULT_STRATEGY_CAP: usize = 1_000_000;

fn strategy_cap() -> usize {
    crate::cap_from_env("POSLAB_CAP", DEFAULT_STRATEGY_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionalStrategy {
    pub owner: Player,
    /// Chosen edge index per owned node, on the nodes the search reached.
    pub moves: BTreeMap<usize, usize>,
}

impl PositionalStrategy {
    pub fn restriction(&self, n: usize) -> Vec<Option<usize>> {
        let mut r = vec![None; n];
        for (&v, &e) in &self.moves {
            r[v] = Some(e);
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeResult {
    pub wins: bool,
    pub strategy: Option<PositionalStrategy>,
}

/// The player's plays from `start` all win: for `P1` every trace is in `F`,
/// for `P2` none is.
pub(crate) fn wins_from(game: &Game, restrict: &[Option<usize>], a: &WilkeAlgebra, player: Player, start: usize) -> bool {
    find_lasso(game, restrict, a, start, player == Player::P2).is_none()
}

/// Enumerates positional strategies of `player` on the nodes reachable from
/// `roots`, branching lazily in lexicographic order of node and edge index.
/// Returns the first complete choice accepted by `accept`.
pub(crate) struct StrategySearch<'g, F> {
    game: &'g Game,
    player: Player,
    cap: usize,
    leaves: usize,
    accept: F,
}

impl<'g, F: FnMut(&[Option<usize>]) -> bool> StrategySearch<'g, F> {
    pub(crate) fn new(game: &'g Game, player: Player, cap: usize, accept: F) -> Self {
        StrategySearch { game, player, cap, leaves: 0, accept }
    }

    pub(crate) fn run(&mut self, roots: &[usize]) -> Result<Option<Vec<Option<usize>>>> {
        let n = self.game.len();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        for &r in roots.iter().rev() {
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
        self.go(vec![None; n], seen, stack)
    }

    fn go(
        &mut self,
        mut choice: Vec<Option<usize>>,
        mut seen: Vec<bool>,
        mut stack: Vec<usize>,
    ) -> Result<Option<Vec<Option<usize>>>> {
        let g = self.game;
        while let Some(v) = stack.pop() {
            if g.owner[v] == self.player && choice[v].is_none() {
                if g.out[v].len() == 1 {
                    choice[v] = Some(g.out[v][0]);
                } else {
                    for &e in &g.out[v] {
                        let mut c = choice.clone();
                        let mut s = seen.clone();
                        let mut st = stack.clone();
                        c[v] = Some(e);
                        let t = g.edges[e].tgt;
                        if !s[t] {
                            s[t] = true;
                            st.push(t);
                        }
                        if let Some(found) = self.go(c, s, st)? {
                            return Ok(Some(found));
                        }
                    }
                    return Ok(None);
                }
            }
            let owned = g.owner[v] == self.player;
            for &e in &g.out[v] {
                if owned && choice[v] != Some(e) {
                    continue;
                }
                let t = g.edges[e].tgt;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        self.leaves += 1;
        if self.leaves > self.cap {
            return Err(Error::CapExceeded { what: "positional strategy enumeration".into(), cap: self.cap });
        }
        Ok(if (self.accept)(&choice) { Some(choice) } else { None })
    }
}

fn to_strategy(player: Player, choice: &[Option<usize>]) -> PositionalStrategy {
    PositionalStrategy {
        owner: player,
        moves: choice.iter().enumerate().filter_map(|(v, c)| c.map(|e| (v, e))).collect(),
    }
}

/// A positional strategy of `player` winning from every root, if one exists.
pub(crate) fn positional_win(
    game: &Game,
    a: &WilkeAlgebra,
    player: Player,
    roots: &[usize],
    cap: usize,
) -> Result<Option<PositionalStrategy>> {
    let mut search = StrategySearch::new(game, player, cap, |c: &[Option<usize>]| {
        roots.iter().all(|&r| wins_from(game, c, a, player, r))
    });
    Ok(search.run(roots)?.map(|c| to_strategy(player, &c)))
}

/// Per node: does `player` win with some positional strategy from it.
pub fn solve_positional(game: &Game, a: &WilkeAlgebra, player: Player) -> Result<Vec<NodeResult>> {
    let cap = strategy_cap();
    (0..game.len())
        .map(|q| {
            let s = positional_win(game, a, player, &[q], cap)?;
            Ok(NodeResult { wins: s.is_some(), strategy: s })
        })
        .collect()
}

/// One positional strategy for `P1` winning from all of `q`.
pub fn solve_uniform_positional(game: &Game, a: &WilkeAlgebra, q: &[usize]) -> Result<Option<PositionalStrategy>> {
    positional_win(game, a, Player::P1, q, strategy_cap())
}

/// Deterministic letter-reading memory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monitor {
    pub states: Vec<String>,
    pub initial: usize,
    /// `update[m][letter]`.
    pub update: Vec<Vec<usize>>,
}

impl Monitor {
    pub fn new(states: Vec<String>, initial: usize, update: Vec<Vec<usize>>) -> Result<Monitor> {
        let n = states.len();
        if initial >= n || update.len() != n || update.iter().flatten().any(|&t| t >= n) {
            return Err(Error::Schema("monitor tables out of range".into()));
        }
        if update.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(Error::Schema("monitor rows differ in length".into()));
        }
        Ok(Monitor { states, initial, update })
    }

    pub fn trivial(letters: usize) -> Monitor {
        Monitor { states: vec!["m".into()], initial: 0, update: vec![vec![0; letters]] }
    }

    /// An initial state and one state per letter, remembering the last letter.
    pub fn previous_label(alphabet: &Alphabet) -> Monitor {
        let k = alphabet.len();
        let mut states = vec!["init".to_string()];
        states.extend(alphabet.letters().iter().map(|l| format!("last-{l}")));
        Monitor { states, initial: 0, update: vec![(1..=k).collect(); k + 1] }
    }

    /// Two states: before and after the first occurrence of `letter`.
    pub fn seen_letter(alphabet: &Alphabet, letter: usize) -> Monitor {
        let k = alphabet.len();
        let l = alphabet.name(letter);
        let before = (0..k).map(|c| usize::from(c == letter)).collect();
        Monitor { states: vec![format!("no-{l}"), format!("seen-{l}")], initial: 0, update: vec![before, vec![1; k]] }
    }

    /// Counts occurrences of `letter` modulo `n` since the last other letter.
    pub fn block_parity(alphabet: &Alphabet, letter: usize, n: usize) -> Monitor {
        let k = alphabet.len();
        let update = (0..n).map(|m| (0..k).map(|c| if c == letter { (m + 1) % n } else { 0 }).collect()).collect();
        Monitor { states: (0..n).map(|m| format!("run{m}")).collect(), initial: 0, update }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    fn next(&self, m: usize, letter: Option<usize>) -> usize {
        letter.map_or(m, |c| self.update[m][c])
    }
}

/// `game × monitor`; node `(v, m)` has index `v * |M| + m`, and each product
/// edge remembers its original edge.
fn product_game(game: &Game, monitor: &Monitor) -> (Game, Vec<usize>) {
    let k = monitor.len();
    let mut owner = Vec::with_capacity(game.len() * k);
    for v in 0..game.len() {
        owner.extend(std::iter::repeat(game.owner[v]).take(k));
    }
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for (i, e) in game.edges.iter().enumerate() {
        for m in 0..k {
            edges.push(Edge { src: e.src * k + m, letter: e.letter, tgt: e.tgt * k + monitor.next(m, e.letter) });
            origin.push(i);
        }
    }
    (Game::new(owner, edges), origin)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonitorStrategy {
    pub monitor: Monitor,
    /// `(node, memory state) ↦ edge index` on reached pairs.
    pub moves: BTreeMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemoryWin {
    pub wins: bool,
    pub strategy: Option<MonitorStrategy>,
}

/// Solves positionally on `game × monitor` from `(q, initial)` for each `q`.
pub fn solve_monitor_memory(game: &Game, a: &WilkeAlgebra, monitor: &Monitor, player: Player) -> Result<Vec<MemoryWin>> {
    if monitor.update.iter().any(|r| r.len() != a.alphabet().len()) {
        return Err(Error::AlphabetMismatch("monitor and objective read different alphabets".into()));
    }
    let (prod, origin) = product_game(game, monitor);
    let k = monitor.len();
    let cap = strategy_cap();
    (0..game.len())
        .map(|q| {
            let s = positional_win(&prod, a, player, &[q * k + monitor.initial], cap)?;
            Ok(MemoryWin {
                wins: s.is_some(),
                strategy: s.map(|s| MonitorStrategy {
                    monitor: monitor.clone(),
                    moves: s.moves.iter().map(|(&pv, &pe)| ((pv / k, pv % k), origin[pe])).collect(),
                }),
            })
        })
        .collect()
}

/// Re-checks a monitor strategy on `game × monitor` from each start.
pub fn verify_monitor_strategy(game: &Game, a: &WilkeAlgebra, strategy: &MonitorStrategy, starts: &[usize]) -> bool {
    let m = &strategy.monitor;
    let k = m.len();
    let (prod, _) = product_game(game, m);
    let mut restrict = vec![None; prod.len()];
    for (&(v, q), &e) in &strategy.moves {
        if game.edges[e].src != v || q >= k {
            return false;
        }
        restrict[v * k + q] = Some(e * k + q);
    }
    starts.iter().all(|&s| find_lasso(&prod, &restrict, a, s * k + m.initial, false).is_none())
}

#[derive(Clone, Copy, Debug)]
enum Work {
    Expand(usize),
    Traverse(usize, usize),
}

#[derive(Clone)]
struct JointState {
    update: Vec<Option<usize>>,
    used: usize,
    choice: Vec<Option<usize>>,
    seen: Vec<bool>,
    /// Traversed product edges `(src, original edge, tgt)`.
    arcs: Vec<(usize, usize, usize)>,
    work: Vec<Work>,
}

struct JointSearch<'g> {
    game: &'g Game,
    a: &'g WilkeAlgebra,
    k: usize,
    letters: usize,
    starts: &'g [usize],
    cap: usize,
    leaves: usize,
}

impl JointSearch<'_> {
    fn partial_game(&self, st: &JointState) -> Game {
        let owner = (0..self.game.len() * self.k).map(|p| self.game.owner[p / self.k]).collect();
        let edges = st.arcs.iter().map(|&(s, e, t)| Edge { src: s, letter: self.game.edges[e].letter, tgt: t }).collect();
        Game::new(owner, edges)
    }

    /// Some play of the explored part already loses; completions only add plays.
    fn doomed(&self, st: &JointState) -> bool {
        let g = self.partial_game(st);
        self.starts.iter().any(|&s| find_lasso(&g, &[], self.a, s * self.k, false).is_some())
    }

    fn go(&mut self, mut st: JointState) -> Result<Option<JointState>> {
        let k = self.k;
        while let Some(w) = st.work.pop() {
            match w {
                Work::Expand(p) => {
                    let v = p / k;
                    let out = &self.game.out[v];
                    if self.game.owner[v] == Player::P1 {
                        let e = match st.choice[p] {
                            Some(e) => e,
                            None if out.len() == 1 => out[0],
                            None => {
                                if self.doomed(&st) {
                                    return Ok(None);
                                }
                                for &e in out {
                                    let mut s = st.clone();
                                    s.choice[p] = Some(e);
                                    s.work.push(Work::Traverse(p, e));
                                    if let Some(found) = self.go(s)? {
                                        return Ok(Some(found));
                                    }
                                }
                                return Ok(None);
                            }
                        };
                        st.choice[p] = Some(e);
                        st.work.push(Work::Traverse(p, e));
                    } else {
                        st.work.extend(out.iter().rev().map(|&e| Work::Traverse(p, e)));
                    }
                }
                Work::Traverse(p, e) => {
                    let (v, m) = (p / k, p % k);
                    let edge = self.game.edges[e];
                    let next = match edge.letter {
                        None => m,
                        Some(c) => match st.update[m * self.letters + c] {
                            Some(t) => t,
                            None => {
                                // existing memory states, then one fresh state
                                let options = (st.used + 1).min(k);
                                for t in 0..options {
                                    let mut s = st.clone();
                                    s.update[m * self.letters + c] = Some(t);
                                    s.used = s.used.max(t + 1);
                                    s.work.push(Work::Traverse(p, e));
                                    if let Some(found) = self.go(s)? {
                                        return Ok(Some(found));
                                    }
                                }
                                return Ok(None);
                            }
                        },
                    };
                    debug_assert_eq!(edge.src, v);
                    let q = edge.tgt * k + next;
                    st.arcs.push((p, e, q));
                    if !st.seen[q] {
                        st.seen[q] = true;
                        st.work.push(Work::Expand(q));
                    }
                }
            }
        }
        self.leaves += 1;
        if self.leaves > self.cap {
            return Err(Error::CapExceeded { what: "memory strategy enumeration".into(), cap: self.cap });
        }
        let g = self.partial_game(&st);
        let wins = self.starts.iter().all(|&s| find_lasso(&g, &[], self.a, s * k, false).is_none());
        Ok(if wins { Some(st) } else { None })
    }
}

/// Does `P1` win from all of `starts` with one monitor of at most `k` states?
/// The returned monitor is as small as possible.
///
/// A positional win needs no memory, and a positional `P2` win defeats every
/// `P1` strategy; only the remaining cases run the joint search over monitor
/// transitions and moves, which introduces memory states in order.
pub fn solve_bounded_memory(game: &Game, a: &WilkeAlgebra, k: usize, starts: &[usize]) -> Result<Option<MonitorStrategy>> {
    let cap = strategy_cap();
    let letters = a.alphabet().len();
    if k == 0 {
        return Err(Error::Unsupported("memory needs at least one state".into()));
    }
    if let Some(s) = positional_win(game, a, Player::P1, starts, cap)? {
        return Ok(Some(MonitorStrategy {
            monitor: Monitor::trivial(letters),
            moves: s.moves.iter().map(|(&v, &e)| ((v, 0), e)).collect(),
        }));
    }
    if k == 1 {
        return Ok(None);
    }
    for &s in starts {
        if positional_win(game, a, Player::P2, &[s], cap)?.is_some() {
            return Ok(None);
        }
    }
    for size in 2..=k {
        if let Some(w) = joint_search(game, a, size, starts, cap)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn joint_search(game: &Game, a: &WilkeAlgebra, k: usize, starts: &[usize], cap: usize) -> Result<Option<MonitorStrategy>> {
    let letters = a.alphabet().len();
    let n = game.len();
    let mut seen = vec![false; n * k];
    for &s in starts {
        seen[s * k] = true;
    }
    let st = JointState {
        update: vec![None; k * letters],
        used: 1,
        choice: vec![None; n * k],
        seen,
        arcs: Vec::new(),
        work: starts.iter().rev().map(|&s| Work::Expand(s * k)).collect(),
    };
    let mut search = JointSearch { game, a, k, letters, starts, cap, leaves: 0 };
    Ok(search.go(st)?.map(|st| {
        let used = st.used;
        let update = (0..used)
            .map(|m| (0..letters).map(|c| st.update[m * letters + c].unwrap_or(m)).collect())
            .collect();
        let monitor = Monitor { states: (0..used).map(|m| format!("m{m}")).collect(), initial: 0, update };
        let moves = st
            .choice
            .iter()
            .enumerate()
            .filter_map(|(p, c)| c.map(|e| ((p / k, p % k), e)))
            .collect();
        MonitorStrategy { monitor, moves }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::games::{EdgeArena, Quantifier};

    fn two_loops(owner: Player) -> Game {
        let edges = vec![Edge { src: 0, letter: Some(0), tgt: 0 }, Edge { src: 0, letter: Some(1), tgt: 0 }];
        EdgeArena::new(Alphabet::from_chars("ab"), vec!["v".into()], vec![owner], edges).unwrap().game()
    }

    #[test]
    fn p1_picks_the_a_loop() {
        let g = two_loops(Player::P1);
        let r = solve_positional(&g, &fixtures::gf_a(), Player::P1).unwrap();
        assert!(r[0].wins);
        assert_eq!(r[0].strategy.as_ref().unwrap().moves[&0], 0);
        let p2 = solve_positional(&g, &fixtures::gf_a(), Player::P2).unwrap();
        assert!(!p2[0].wins);
    }

    #[test]
    fn trivial_monitor_matches_positional() {
        let g = two_loops(Player::P2);
        let a = fixtures::gf_a();
        let m = solve_monitor_memory(&g, &a, &Monitor::trivial(2), Player::P1).unwrap();
        let p = solve_positional(&g, &a, Player::P1).unwrap();
        assert_eq!(m[0].wins, p[0].wins);
    }

    #[test]
    fn returned_strategies_reverify() {
        let g = two_loops(Player::P1);
        let a = fixtures::gf_a();
        let s = solve_positional(&g, &a, Player::P1).unwrap()[0].strategy.clone().unwrap();
        let r = s.restriction(g.len());
        assert!(crate::games::check_plays(&g, &r, &a, 0, Quantifier::AllIn).holds);
    }

    #[test]
    fn cap_is_reported() {
        // a chain of binary P1 choices
        let n = 12;
        let mut edges = Vec::new();
        for v in 0..n {
            edges.push(Edge { src: v, letter: Some(0), tgt: (v + 1) % n });
            edges.push(Edge { src: v, letter: Some(1), tgt: (v + 1) % n });
        }
        let g = Game::new(vec![Player::P1; n], edges);
        let mut s = StrategySearch::new(&g, Player::P1, 100, |_: &[Option<usize>]| false);
        assert!(matches!(s.run(&[0]), Err(Error::CapExceeded { .. })));
    }
}

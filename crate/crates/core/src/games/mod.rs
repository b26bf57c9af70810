//! Arenas with edge or state labels, the play check against an algebra
//! objective, positional and monitor-memory solvers, and the gadget arenas
//! that witness non-positionality.

mod gadgets;
mod plays;
mod solve;

pub use gadgets::{build_gadget, Gadget, GadgetKind, GadgetParams};
pub(crate) use solve::StrategySearch;
pub use plays::{brute_force_lassos, check_plays, find_lasso, LassoPlay, PlayCheck, Quantifier};
pub use solve::{
    solve_bounded_memory, solve_monitor_memory, solve_positional, solve_uniform_positional, verify_monitor_strategy, MemoryWin,
    Monitor, MonitorStrategy, NodeResult, PositionalStrategy, DEFAULT_STRATEGY_CAP,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }

    pub fn from_number(n: u64) -> Result<Player> {
        match n {
            1 => Ok(Player::P1),
            2 => Ok(Player::P2),
            _ => Err(Error::Schema(format!("owner must be 1 or 2, got {n}"))),
        }
    }
}

/// An edge of an edge-labelled arena; `None` reads no letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub letter: Option<usize>,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeArena {
    pub alphabet: Alphabet,
    pub nodes: Vec<String>,
    pub owner: Vec<Player>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateArena {
    pub alphabet: Alphabet,
    pub nodes: Vec<String>,
    pub owner: Vec<Player>,
    pub label: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arena {
    Edge(EdgeArena),
    State(StateArena),
}

fn common_violations(nodes: &[String], owner: &[Player], srcs: &[usize], tgts: &[usize]) -> Vec<String> {
    let n = nodes.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push("arena has no nodes".into());
    }
    if owner.len() != n {
        out.push(format!("{} owners for {n} nodes", owner.len()));
    }
    for (i, name) in nodes.iter().enumerate() {
        if nodes[..i].contains(name) {
            out.push(format!("duplicate node id {name:?}"));
        }
    }
    let mut has_out = vec![false; n];
    for (&s, &t) in srcs.iter().zip(tgts) {
        if s >= n || t >= n {
            out.push(format!("edge {s} -> {t} leaves the node range"));
        } else {
            has_out[s] = true;
        }
    }
    for (v, ok) in has_out.iter().enumerate() {
        if !ok {
            out.push(format!("node {} has no outgoing edge", nodes[v]));
        }
    }
    out
}

impl EdgeArena {
    pub fn new(alphabet: Alphabet, nodes: Vec<String>, owner: Vec<Player>, edges: Vec<Edge>) -> Result<Self> {
        let a = EdgeArena { alphabet, nodes, owner, edges };
        let v = a.validate();
        if v.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidArena(v))
        }
    }

    /// Totality, index ranges, and absence of cycles that read no letter.
    pub fn validate(&self) -> Vec<String> {
        let srcs: Vec<usize> = self.edges.iter().map(|e| e.src).collect();
        let tgts: Vec<usize> = self.edges.iter().map(|e| e.tgt).collect();
        let mut out = common_violations(&self.nodes, &self.owner, &srcs, &tgts);
        for e in &self.edges {
            if e.letter.is_some_and(|c| c >= self.alphabet.len()) {
                out.push(format!("edge {} -> {} has an unknown letter", e.src, e.tgt));
            }
        }
        if out.is_empty() {
            if let Some(v) = silent_cycle(self.nodes.len(), &self.edges) {
                out.push(format!("a cycle through {} reads no letter", self.nodes[v]));
            }
        }
        out
    }

    pub fn game(&self) -> Game {
        Game::new(self.owner.clone(), self.edges.clone())
    }
}

/// A node on a cycle made only of letterless edges, if any.
fn silent_cycle(n: usize, edges: &[Edge]) -> Option<usize> {
    let mut succ = vec![Vec::new(); n];
    for e in edges.iter().filter(|e| e.letter.is_none()) {
        succ[e.src].push(e.tgt);
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut mark = vec![0u8; n];
    fn dfs(v: usize, succ: &[Vec<usize>], mark: &mut [u8]) -> Option<usize> {
        mark[v] = 1;
        for &t in &succ[v] {
            if mark[t] == 1 {
                return Some(t);
            }
            if mark[t] == 0 {
                if let Some(x) = dfs(t, succ, mark) {
                    return Some(x);
                }
            }
        }
        mark[v] = 2;
        None
    }
    (0..n).find_map(|v| if mark[v] == 0 { dfs(v, &succ, &mut mark) } else { None })
}

impl StateArena {
    pub fn new(
        alphabet: Alphabet,
        nodes: Vec<String>,
        owner: Vec<Player>,
        label: Vec<usize>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let a = StateArena { alphabet, nodes, owner, label, edges };
        let v = a.validate();
        if v.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidArena(v))
        }
    }

    pub fn validate(&self) -> Vec<String> {
        let srcs: Vec<usize> = self.edges.iter().map(|e| e.0).collect();
        let tgts: Vec<usize> = self.edges.iter().map(|e| e.1).collect();
        let mut out = common_violations(&self.nodes, &self.owner, &srcs, &tgts);
        if self.label.len() != self.nodes.len() {
            out.push(format!("{} labels for {} nodes", self.label.len(), self.nodes.len()));
        } else if let Some(v) = (0..self.nodes.len()).find(|&v| self.label[v] >= self.alphabet.len()) {
            out.push(format!("node {} has an unknown label", self.nodes[v]));
        }
        out
    }

    /// Moving from `v` reads the label of `v`.
    pub fn game(&self) -> Game {
        let edges = self.edges.iter().map(|&(s, t)| Edge { src: s, letter: Some(self.label[s]), tgt: t }).collect();
        Game::new(self.owner.clone(), edges)
    }
}

impl Arena {
    pub fn validate(&self) -> Vec<String> {
        match self {
            Arena::Edge(a) => a.validate(),
            Arena::State(a) => a.validate(),
        }
    }

    pub fn game(&self) -> Game {
        match self {
            Arena::Edge(a) => a.game(),
            Arena::State(a) => a.game(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Arena::Edge(a) => &a.alphabet,
            Arena::State(a) => &a.alphabet,
        }
    }

    pub fn nodes(&self) -> &[String] {
        match self {
            Arena::Edge(a) => &a.nodes,
            Arena::State(a) => &a.nodes,
        }
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        self.nodes().iter().position(|n| n == id).ok_or_else(|| Error::Schema(format!("unknown node {id:?}")))
    }
}

/// The graph every solver works on: owners and letter-or-silent edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    pub owner: Vec<Player>,
    pub edges: Vec<Edge>,
    pub out: Vec<Vec<usize>>,
}

impl Game {
    pub fn new(owner: Vec<Player>, edges: Vec<Edge>) -> Game {
        let mut out = vec![Vec::new(); owner.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
        }
        Game { owner, edges, out }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }
}

/// Edge arena whose edges read the label of their target, plus a fresh
/// `P2` node `*` entering each candidate.
pub fn state_to_edge(s: &StateArena, candidates: &[usize]) -> Result<EdgeArena> {
    if candidates.is_empty() {
        return Err(Error::InvalidArena(vec!["the fresh node * needs at least one candidate".into()]));
    }
    let n = s.nodes.len();
    if let Some(&c) = candidates.iter().find(|&&c| c >= n) {
        return Err(Error::InvalidArena(vec![format!("candidate {c} is not a node")]));
    }
    let mut nodes = s.nodes.clone();
    nodes.push("*".into());
    let mut owner = s.owner.clone();
    owner.push(Player::P2);
    let mut edges: Vec<Edge> =
        s.edges.iter().map(|&(v, t)| Edge { src: v, letter: Some(s.label[t]), tgt: t }).collect();
    edges.extend(candidates.iter().map(|&w| Edge { src: n, letter: Some(s.label[w]), tgt: w }));
    EdgeArena::new(s.alphabet.clone(), nodes, owner, edges)
}

/// State arena on the pairs `(c, v')` of letters and targets of edges; the
/// state `(c, v')` is labelled `c` and owned like `v'`.
pub fn edge_to_state(e: &EdgeArena) -> Result<StateArena> {
    if e.edges.iter().any(|x| x.letter.is_none()) {
        return Err(Error::Unsupported("edge_to_state needs every edge to read a letter".into()));
    }
    let mut pairs: Vec<(usize, usize)> = e.edges.iter().map(|x| (x.letter.unwrap(), x.tgt)).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let index = |p: (usize, usize)| pairs.binary_search(&p).expect("pair exists");
    let mut edges = Vec::new();
    for (i, &(_, v)) in pairs.iter().enumerate() {
        for x in e.edges.iter().filter(|x| x.src == v) {
            edges.push((i, index((x.letter.unwrap(), x.tgt))));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let nodes = pairs.iter().map(|&(c, v)| format!("{}@{}", e.alphabet.name(c), e.nodes[v])).collect();
    let owner = pairs.iter().map(|&(_, v)| e.owner[v]).collect();
    let label = pairs.iter().map(|&(c, _)| c).collect();
    StateArena::new(e.alphabet.clone(), nodes, owner, label, edges)
}

/// Appends a chain of fresh nodes reading `w` from `src` to `tgt`; an empty
/// word becomes one silent edge. Fresh nodes belong to `P1` and have one
/// successor each.
pub(crate) fn add_word_path(
    nodes: &mut Vec<String>,
    owner: &mut Vec<Player>,
    edges: &mut Vec<Edge>,
    src: usize,
    w: &Word,
    tgt: usize,
    tag: &str,
) {
    if w.is_empty() {
        edges.push(Edge { src, letter: None, tgt });
        return;
    }
    let mut cur = src;
    for (i, &c) in w.letters().iter().enumerate() {
        let next = if i + 1 == w.len() {
            tgt
        } else {
            nodes.push(format!("{tag}{}", i + 1));
            owner.push(Player::P1);
            nodes.len() - 1
        };
        edges.push(Edge { src: cur, letter: Some(c), tgt: next });
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab")
    }

    #[test]
    fn validation_examples() {
        let a = EdgeArena::new(ab(), vec!["v".into()], vec![Player::P1], vec![Edge { src: 0, letter: Some(0), tgt: 0 }]);
        assert!(a.is_ok());
        let b = EdgeArena::new(
            ab(),
            vec!["v".into(), "w".into()],
            vec![Player::P1, Player::P2],
            vec![Edge { src: 0, letter: Some(0), tgt: 1 }],
        );
        match b {
            Err(Error::InvalidArena(v)) => assert_eq!(v.len(), 1, "{v:?}"),
            other => panic!("{other:?}"),
        }
        let silent = EdgeArena::new(ab(), vec!["v".into()], vec![Player::P1], vec![Edge { src: 0, letter: None, tgt: 0 }]);
        assert!(silent.is_err());
    }

    #[test]
    fn conversions() {
        let s = StateArena::new(ab(), vec!["x".into(), "y".into()], vec![Player::P1; 2], vec![0, 1], vec![(0, 1), (1, 1)])
            .unwrap();
        let e = state_to_edge(&s, &[0]).unwrap();
        assert_eq!(e.edges.len(), 3);
        assert!(state_to_edge(&s, &[]).is_err());

        let loop_a = EdgeArena::new(ab(), vec!["v".into()], vec![Player::P1], vec![Edge { src: 0, letter: Some(0), tgt: 0 }])
            .unwrap();
        let st = edge_to_state(&loop_a).unwrap();
        assert_eq!((st.nodes.len(), st.edges.clone(), st.label.clone()), (1, vec![(0, 0)], vec![0]));

        let par = EdgeArena::new(
            ab(),
            vec!["v".into(), "w".into()],
            vec![Player::P1, Player::P2],
            vec![Edge { src: 0, letter: Some(0), tgt: 1 }, Edge { src: 0, letter: Some(1), tgt: 1 }, Edge {
                src: 1,
                letter: Some(0),
                tgt: 0,
            }],
        )
        .unwrap();
        let st = edge_to_state(&par).unwrap();
        assert_eq!(st.nodes, vec!["a@v", "a@w", "b@w"]);
    }
}

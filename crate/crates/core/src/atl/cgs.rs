use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::games::{Edge, Game, Player};
use crate::words::Alphabet;

/// A concurrent game structure. Joint moves are indexed in mixed radix over
/// the agents' action lists, agent 0 least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cgs {
    pub states: Vec<String>,
    pub props: Vec<BTreeSet<String>>,
    pub agents: Vec<String>,
    /// `actions[state][agent]`.
    pub actions: Vec<Vec<Vec<String>>>,
    /// `transition[state][profile code]`; `None` marks a missing entry.
    pub transition: Vec<Vec<Option<usize>>>,
}

impl Cgs {
    pub fn new(
        states: Vec<String>,
        props: Vec<BTreeSet<String>>,
        agents: Vec<String>,
        actions: Vec<Vec<Vec<String>>>,
        transition: Vec<Vec<Option<usize>>>,
    ) -> Result<Cgs> {
        let g = Cgs { states, props, agents, actions, transition };
        let v = g.validate();
        if v.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidCgs(v))
        }
    }

    /// One agent `1` whose actions at `x` name the successors of `x`.
    pub fn from_graph(states: Vec<String>, props: Vec<BTreeSet<String>>, succ: &[Vec<usize>]) -> Result<Cgs> {
        let actions = succ
            .iter()
            .map(|ts| vec![ts.iter().map(|&t| format!("to-{}", states.get(t).map_or("?", String::as_str))).collect()])
            .collect();
        let transition = succ.iter().map(|ts| ts.iter().map(|&t| Some(t)).collect()).collect();
        Cgs::new(states, props, vec!["1".into()], actions, transition)
    }

    pub fn validate(&self) -> Vec<String> {
        let n = self.states.len();
        let mut out = Vec::new();
        if n == 0 {
            out.push("no states".into());
        }
        if self.agents.is_empty() {
            out.push("no agents".into());
        }
        for (i, a) in self.agents.iter().enumerate() {
            if self.agents[..i].contains(a) {
                out.push(format!("duplicate agent {a:?}"));
            }
        }
        for (i, s) in self.states.iter().enumerate() {
            if self.states[..i].contains(s) {
                out.push(format!("duplicate state {s:?}"));
            }
        }
        if self.props.len() != n || self.actions.len() != n || self.transition.len() != n {
            out.push("per-state tables have the wrong length".into());
            return out;
        }
        for x in 0..n {
            let acts = &self.actions[x];
            if acts.len() != self.agents.len() {
                out.push(format!("state {} lists actions for {} agents", self.states[x], acts.len()));
                continue;
            }
            if let Some(k) = acts.iter().position(Vec::is_empty) {
                out.push(format!("agent {} has no action at {}", self.agents[k], self.states[x]));
                continue;
            }
            let profiles: usize = acts.iter().map(Vec::len).product();
            if self.transition[x].len() != profiles {
                out.push(format!("state {} has {} transitions for {profiles} profiles", self.states[x], self.transition[x].len()));
                continue;
            }
            for (code, t) in self.transition[x].iter().enumerate() {
                match t {
                    None => out.push(format!("missing transition at {} for profile {:?}", self.states[x], self.profile_names(x, code))),
                    Some(t) if *t >= n => out.push(format!("transition at {} leaves the state range", self.states[x])),
                    _ => {}
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_index(&self, id: &str) -> Result<usize> {
        self.states.iter().position(|s| s == id).ok_or_else(|| Error::Schema(format!("unknown state {id:?}")))
    }

    pub fn agent_index(&self, id: &str) -> Result<usize> {
        self.agents.iter().position(|s| s == id).ok_or_else(|| Error::Schema(format!("unknown agent {id:?}")))
    }

    /// Action indices of each agent in profile `code` at `x`.
    pub fn decode(&self, x: usize, mut code: usize) -> Vec<usize> {
        self.actions[x]
            .iter()
            .map(|a| {
                let i = code % a.len();
                code /= a.len();
                i
            })
            .collect()
    }

    pub fn encode(&self, x: usize, profile: &[usize]) -> usize {
        self.actions[x].iter().zip(profile).rev().fold(0, |acc, (a, &i)| acc * a.len() + i)
    }

    fn profile_names(&self, x: usize, code: usize) -> Vec<String> {
        self.decode(x, code).iter().enumerate().map(|(k, &i)| self.actions[x][k][i].clone()).collect()
    }

    pub fn successors(&self, x: usize) -> BTreeSet<usize> {
        self.transition[x].iter().flatten().copied().collect()
    }
}

/// The turn-based expansion for a coalition: the coalition picks its part of
/// the profile at each state, then the other agents complete it. Intermediate
/// nodes carry no label, so a play reads one letter per CGS state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalitionArena {
    pub alphabet: Alphabet,
    pub nodes: Vec<String>,
    pub owner: Vec<Player>,
    pub label: Vec<Option<usize>>,
    pub edges: Vec<(usize, usize)>,
    /// Node `x` is CGS state `x`; later nodes are `(state, coalition move)`.
    pub states: usize,
}

impl CoalitionArena {
    pub fn game(&self) -> Game {
        let edges = self.edges.iter().map(|&(s, t)| Edge { src: s, letter: self.label[s], tgt: t }).collect();
        Game::new(self.owner.clone(), edges)
    }
}

pub(crate) fn expand(g: &Cgs, coalition: &[usize], alphabet: Alphabet, labels: &[usize]) -> CoalitionArena {
    let n = g.len();
    let mut nodes = g.states.clone();
    let mut owner = vec![Player::P1; n];
    let mut label: Vec<Option<usize>> = labels.iter().map(|&l| Some(l)).collect();
    let mut edges = Vec::new();
    for x in 0..n {
        let mut by_move: Vec<(Vec<usize>, BTreeSet<usize>)> = Vec::new();
        for (code, t) in g.transition[x].iter().enumerate() {
            let profile = g.decode(x, code);
            let key: Vec<usize> = coalition.iter().map(|&k| profile[k]).collect();
            let t = t.expect("validated CGS");
            match by_move.iter_mut().find(|(k, _)| *k == key) {
                Some((_, ts)) => {
                    ts.insert(t);
                }
                None => by_move.push((key, BTreeSet::from([t]))),
            }
        }
        by_move.sort();
        for (key, targets) in by_move {
            let names: Vec<&str> = key.iter().zip(coalition).map(|(&i, &k)| g.actions[x][k][i].as_str()).collect();
            nodes.push(format!("{}|{}", g.states[x], names.join(",")));
            owner.push(Player::P2);
            label.push(None);
            let m = nodes.len() - 1;
            edges.push((x, m));
            edges.extend(targets.into_iter().map(|t| (m, t)));
        }
    }
    CoalitionArena { alphabet, nodes, owner, label, edges, states: n }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_state() -> Cgs {
        Cgs::new(vec!["s".into()], vec![BTreeSet::new()], vec!["1".into()], vec![vec![vec!["a".into()]]], vec![vec![Some(0)]])
            .unwrap()
    }

    #[test]
    fn validation() {
        assert!(one_state().validate().is_empty());
        let mut g = one_state();
        g.actions[0][0].push("b".into());
        g.transition[0].push(None);
        assert_eq!(g.validate().len(), 1);
    }

    #[test]
    fn profile_codes_round_trip() {
        let g = Cgs::new(
            vec!["s".into()],
            vec![BTreeSet::new()],
            vec!["1".into(), "2".into()],
            vec![vec![vec!["a".into(), "b".into()], vec!["x".into(), "y".into(), "z".into()]]],
            vec![vec![Some(0); 6]],
        )
        .unwrap();
        for code in 0..6 {
            assert_eq!(g.encode(0, &g.decode(0, code)), code);
        }
    }

    #[test]
    fn expansion_degrees() {
        let g = Cgs::from_graph(vec!["x".into(), "y".into()], vec![BTreeSet::new(); 2], &[vec![0, 1], vec![0]]).unwrap();
        let ab = Alphabet::truth_vectors(0);
        let full = expand(&g, &[0], ab.clone(), &[0, 0]);
        let game = full.game();
        for v in full.states..game.len() {
            assert_eq!(game.out[v].len(), 1);
        }
        let none = expand(&g, &[], ab, &[0, 0]);
        let game = none.game();
        for v in 0..none.states {
            assert_eq!(game.out[v].len(), 1);
        }
        assert_eq!(game.out[2].len(), 2);
    }
}

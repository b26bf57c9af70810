use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::cgs::Cgs;
use super::check::{holds_at, Semantics};
use super::formula::{StateFormula, TemplateKind};
use crate::algebra::WilkeAlgebra;
use crate::automata::{dpa_to_wilke, Dpa};
use crate::error::{Error, Result};
use crate::games::{check_plays, Edge, Game, Player, Quantifier};
use crate::words::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorKind {
    Gffg,
    Gu,
    Gfgf,
}

impl SeparatorKind {
    pub const ALL: [SeparatorKind; 3] = [SeparatorKind::Gffg, SeparatorKind::Gu, SeparatorKind::Gfgf];

    pub fn name(self) -> &'static str {
        match self {
            SeparatorKind::Gffg => "gffg",
            SeparatorKind::Gu => "gu",
            SeparatorKind::Gfgf => "gfgf",
        }
    }

    /// Largest supported depth; the `gu` family grows as `4^i`.
    pub fn max_depth(self) -> usize {
        match self {
            SeparatorKind::Gu => 4,
            _ => 8,
        }
    }
}

impl fmt::Display for SeparatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeparatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeparatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown separator kind {s:?}")))
    }
}

/// A single-agent structure with the states where the separating property
/// must hold and those where it must fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    pub kind: SeparatorKind,
    pub depth: usize,
    pub cgs: Cgs,
    pub satisfied: Vec<String>,
    pub violated: Vec<String>,
}

impl Separator {
    /// The separating property as a fragment formula; the `gfgf` property
    /// `E(GFp ∧ GFq)` lies outside every fragment.
    pub fn formula(&self) -> Option<StateFormula> {
        let a = StateFormula::atom;
        match self.kind {
            SeparatorKind::Gffg => Some(StateFormula::coal(&["1"], TemplateKind::Gffg, vec![a("a"), a("b")])),
            SeparatorKind::Gu => Some(StateFormula::coal(&["1"], TemplateKind::Gu, vec![a("p"), a("q")])),
            SeparatorKind::Gfgf => None,
        }
    }

    /// Does the separating property hold at `state`?
    pub fn holds(&self, state: usize) -> Result<bool> {
        match self.formula() {
            Some(f) => holds_at(&self.cgs, &f, state, Semantics::Positional),
            None => Ok(exists_path(&self.cgs, &["p", "q"], &dpa_to_wilke(&gfgf_dpa())?, state)),
        }
    }

    /// Every annotation agrees with the property.
    pub fn verify(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for (ids, want) in [(&self.satisfied, true), (&self.violated, false)] {
            for id in ids {
                if self.holds(self.cgs.state_index(id)?)? != want {
                    bad.push(format!("{} {}: expected {want}", self.kind, id));
                }
            }
        }
        Ok(bad)
    }
}

/// `GFp ∧ GFq` over truth vectors of `(p, q)`.
pub fn gfgf_dpa() -> Dpa {
    let ab = Alphabet::truth_vectors(2);
    // state 0 waits for p, state 1 for q; priority 2 when q closes a round
    let delta = vec![
        (0..4).map(|v| if v & 1 == 1 { if v & 2 == 2 { (0, 2) } else { (1, 1) } } else { (0, 1) }).collect(),
        (0..4).map(|v| if v & 2 == 2 { (0, 2) } else { (1, 1) }).collect(),
    ];
    Dpa::new(ab, vec!["want-p".into(), "want-q".into()], 0, delta).expect("total")
}

/// Some path from `state` has its trace of `props` truth vectors in `a`.
fn exists_path(g: &Cgs, props: &[&str], a: &WilkeAlgebra, state: usize) -> bool {
    let label: Vec<usize> = g
        .props
        .iter()
        .map(|ps| props.iter().enumerate().fold(0, |acc, (j, p)| acc | (usize::from(ps.contains(*p)) << j)))
        .collect();
    let edges = (0..g.len())
        .flat_map(|x| g.successors(x).into_iter().map(move |t| (x, t)))
        .map(|(x, t)| Edge { src: x, letter: Some(label[x]), tgt: t })
        .collect();
    let game = Game::new(vec![Player::P1; g.len()], edges);
    check_plays(&game, &[], a, state, Quantifier::ExistsIn).holds
}

struct Graph {
    names: Vec<String>,
    props: Vec<BTreeSet<String>>,
    succ: Vec<Vec<usize>>,
}

impl Graph {
    fn new() -> Graph {
        Graph { names: Vec::new(), props: Vec::new(), succ: Vec::new() }
    }

    fn node(&mut self, name: String, props: &[&str]) -> usize {
        self.names.push(name);
        self.props.push(props.iter().map(|p| p.to_string()).collect());
        self.succ.push(Vec::new());
        self.names.len() - 1
    }

    fn edge(&mut self, s: usize, t: usize) {
        if !self.succ[s].contains(&t) {
            self.succ[s].push(t);
        }
    }

    fn finish(self) -> Result<Cgs> {
        Cgs::from_graph(self.names, self.props, &self.succ)
    }
}

pub fn build_separator(kind: SeparatorKind, depth: usize) -> Result<Separator> {
    if depth == 0 || depth > kind.max_depth() {
        return Err(Error::Unsupported(format!("{kind} separators exist for depths 1..={}", kind.max_depth())));
    }
    let (cgs, satisfied, violated) = match kind {
        SeparatorKind::Gffg => gffg(depth)?,
        SeparatorKind::Gfgf => gfgf(depth)?,
        SeparatorKind::Gu => gu(depth)?,
    };
    Ok(Separator { kind, depth, cgs, satisfied: vec![satisfied], violated: vec![violated] })
}

/// `M_i` and the chain `N_i, …, N_1`; `M_i` and `N_{j+1}` exit into `N_j`.
fn gffg(depth: usize) -> Result<(Cgs, String, String)> {
    let mut g = Graph::new();
    let (dot, round, cross) = (&["a", "b"][..], &[][..], &["b"][..]);
    let mut below: Option<usize> = None;
    for j in 1..=depth {
        let alpha = g.node(format!("alpha{j}"), dot);
        let beta = g.node(format!("beta{j}"), round);
        let gamma = g.node(format!("gamma{j}"), cross);
        for (s, t) in [(alpha, beta), (alpha, gamma), (beta, alpha), (beta, beta), (gamma, gamma)] {
            g.edge(s, t);
        }
        if let Some(n) = below {
            g.edge(beta, n);
            g.edge(gamma, n);
        }
        if j == depth {
            let a = g.node(format!("a{j}"), dot);
            let b = g.node(format!("b{j}"), round);
            let c = g.node(format!("c{j}"), cross);
            for (s, t) in [(a, b), (a, c), (b, a), (c, a), (b, b), (c, c)] {
                g.edge(s, t);
            }
            if let Some(n) = below {
                g.edge(b, n);
                g.edge(c, n);
            }
        }
        below = Some(alpha);
    }
    Ok((g.finish()?, format!("a{depth}"), format!("alpha{depth}")))
}

/// `N_i` and the chain `M_i, …, M_1`; `N_{j+1}` and `M_{j+1}` exit into `M_j`.
fn gfgf(depth: usize) -> Result<(Cgs, String, String)> {
    let mut g = Graph::new();
    let mut below: Option<usize> = None;
    for j in 1..=depth {
        let a = g.node(format!("a{j}"), &["p"]);
        let b = g.node(format!("b{j}"), &["q"]);
        for (s, t) in [(a, b), (b, b), (a, a)] {
            g.edge(s, t);
        }
        if j == depth {
            let alpha = g.node(format!("alpha{j}"), &["p"]);
            let beta = g.node(format!("beta{j}"), &["q"]);
            for (s, t) in [(alpha, beta), (beta, alpha), (beta, beta), (alpha, alpha)] {
                g.edge(s, t);
            }
            if let Some(m) = below {
                g.edge(beta, m);
            }
        }
        if let Some(m) = below {
            g.edge(b, m);
        }
        below = Some(a);
    }
    Ok((g.finish()?, format!("alpha{depth}"), format!("a{depth}")))
}

fn label_props(v: usize) -> Vec<&'static str> {
    [(1, "p"), (2, "q")].iter().filter(|(b, _)| v & b != 0).map(|&(_, p)| p).collect()
}

/// `p U q` on a finite sequence of truth vectors (bit 0 `p`, bit 1 `q`).
fn finite_until(seq: &[usize]) -> bool {
    seq.iter().position(|&v| v & 2 != 0).is_some_and(|k| seq[..k].iter().all(|&v| v & 1 != 0))
}

/// All sequences of truth vectors with length `1..=max`.
fn sequences(max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max {
        layer = layer.iter().flat_map(|s| (0..4).map(move |v| [s.clone(), vec![v]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// States `s_0…s_i`, `s'_1…s'_i` and `l_1…l_i`; `σ_j` loops at `s_j` violate
/// `pUq`, `σ'_j` loops at `s'_j` are all sequences, and `w_j` paths satisfying
/// `pUq` lead from `s_j` and `s'_j` down to `s_{j-1}`; `s_j → l_j → s'_j`.
fn gu(depth: usize) -> Result<(Cgs, String, String)> {
    let mut g = Graph::new();
    let pq = &["p"][..];
    let s0 = g.node("s0".into(), pq);
    g.edge(s0, s0);
    let mut prev = s0;
    let path = |g: &mut Graph, tag: String, from: usize, seq: &[usize], to: usize| {
        let mut cur = from;
        for (k, &v) in seq.iter().enumerate() {
            let x = g.node(format!("{tag}.{k}"), &label_props(v));
            g.edge(cur, x);
            cur = x;
        }
        g.edge(cur, to);
    };
    for j in 1..=depth {
        let s = g.node(format!("s{j}"), pq);
        let sp = g.node(format!("s'{j}"), pq);
        let l = g.node(format!("l{j}"), &[]);
        g.edge(s, l);
        g.edge(l, sp);
        for (idx, seq) in sequences(j).iter().enumerate() {
            if finite_until(seq) {
                path(&mut g, format!("w{j}:{idx}"), s, seq, prev);
                path(&mut g, format!("w'{j}:{idx}"), sp, seq, prev);
            } else {
                path(&mut g, format!("sigma{j}:{idx}"), s, seq, s);
            }
            path(&mut g, format!("sigma'{j}:{idx}"), sp, seq, sp);
        }
        prev = s;
    }
    Ok((g.finish()?, format!("s'{depth}"), format!("s{depth}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let m = build_separator(SeparatorKind::Gffg, 1).unwrap();
        assert_eq!(m.cgs.len(), 6);
        let n1 = m.cgs.state_index("gamma1").unwrap();
        let c1 = m.cgs.state_index("c1").unwrap();
        assert_eq!(m.cgs.successors(n1).len(), 1);
        assert_eq!(m.cgs.successors(c1).len(), 2);

        let f = build_separator(SeparatorKind::Gfgf, 1).unwrap();
        let b1 = f.cgs.state_index("b1").unwrap();
        let beta1 = f.cgs.state_index("beta1").unwrap();
        assert_eq!((f.cgs.successors(b1).len(), f.cgs.successors(beta1).len()), (1, 2));

        let u = build_separator(SeparatorKind::Gu, 1).unwrap();
        // s'_1 loops through all four one-state paths; s_1 only through the
        // two that violate pUq
        let sp = u.cgs.state_index("s'1").unwrap();
        let s = u.cgs.state_index("s1").unwrap();
        assert_eq!(u.cgs.successors(sp).len(), 4 + 2);
        assert_eq!(u.cgs.successors(s).len(), 1 + 2 + 2);
        assert!(build_separator(SeparatorKind::Gu, 5).is_err());
        assert!(build_separator(SeparatorKind::Gffg, 0).is_err());
    }

    #[test]
    fn depth_one_verdicts() {
        for kind in SeparatorKind::ALL {
            let s = build_separator(kind, 1).unwrap();
            assert!(s.verify().unwrap().is_empty(), "{kind}");
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{add_word_path, Arena, Edge, EdgeArena, Player, StateArena};
use crate::error::{Error, Result};
use crate::words::{Alphabet, UpWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Cond1,
    Cond2,
    OmegaCf,
    ResidualOrder,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 4] = [GadgetKind::Cond1, GadgetKind::Cond2, GadgetKind::OmegaCf, GadgetKind::ResidualOrder];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Cond1 => "cond1",
            GadgetKind::Cond2 => "cond2",
            GadgetKind::OmegaCf => "omega_cf",
            GadgetKind::ResidualOrder => "residual_order",
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GadgetKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown gadget kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetParams {
    Cond1 { u: Word, v: Word, w: Word, x: Word },
    Cond2 { u: Word, v: Word, w: Word, x: Word },
    OmegaCf { u: Word, v: Word, w: Word, x: Word, j: usize, k: usize },
    /// Entries `u` and `v` (non-empty) meet at a node labelled `a`, which
    /// branches into the lassos `x` and `y`.
    ResidualOrder { u: Word, v: Word, a: usize, x: UpWord, y: UpWord },
}

impl GadgetParams {
    pub fn kind(&self) -> GadgetKind {
        match self {
            GadgetParams::Cond1 { .. } => GadgetKind::Cond1,
            GadgetParams::Cond2 { .. } => GadgetKind::Cond2,
            GadgetParams::OmegaCf { .. } => GadgetKind::OmegaCf,
            GadgetParams::ResidualOrder { .. } => GadgetKind::ResidualOrder,
        }
    }

    /// Parses `key=value` pairs separated by commas, e.g. `u=,v=a,w=b,x=b`.
    /// Finite words use the alphabet's letter syntax; `x` and `y` of the
    /// residual gadget are UP-words, `j` and `k` integers.
    pub fn parse(kind: GadgetKind, alphabet: &Alphabet, text: &str) -> Result<GadgetParams> {
        let mut map = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate parameter {k}")));
            }
        }
        let mut take = |key: &str| map.remove(key).ok_or_else(|| Error::Parse(format!("missing parameter {key}")));
        let word = |s: String| alphabet.parse_word(&s);
        let int = |s: String| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        let params = match kind {
            GadgetKind::Cond1 | GadgetKind::Cond2 => {
                let (u, v, w, x) = (word(take("u")?)?, word(take("v")?)?, word(take("w")?)?, word(take("x")?)?);
                if kind == GadgetKind::Cond1 {
                    GadgetParams::Cond1 { u, v, w, x }
                } else {
                    GadgetParams::Cond2 { u, v, w, x }
                }
            }
            GadgetKind::OmegaCf => GadgetParams::OmegaCf {
                u: word(take("u")?)?,
                v: word(take("v")?)?,
                w: word(take("w")?)?,
                x: word(take("x")?)?,
                j: int(take("j")?)?,
                k: int(take("k")?)?,
            },
            GadgetKind::ResidualOrder => GadgetParams::ResidualOrder {
                u: word(take("u")?)?,
                v: word(take("v")?)?,
                a: alphabet.index_of(&take("a")?)?,
                x: alphabet.parse_up_word(&take("x")?)?,
                y: alphabet.parse_up_word(&take("y")?)?,
            },
        };
        if let Some(extra) = map.keys().next() {
            return Err(Error::Parse(format!("unexpected parameter {extra}")));
        }
        Ok(params)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub arena: Arena,
    pub starts: Vec<usize>,
}

fn unsupported(msg: &str) -> Error {
    Error::Unsupported(msg.into())
}

struct Builder {
    nodes: Vec<String>,
    owner: Vec<Player>,
    edges: Vec<Edge>,
}

impl Builder {
    fn new(named: &[(&str, Player)]) -> Builder {
        Builder {
            nodes: named.iter().map(|(n, _)| n.to_string()).collect(),
            owner: named.iter().map(|&(_, p)| p).collect(),
            edges: Vec::new(),
        }
    }

    fn path(&mut self, src: usize, w: &Word, tgt: usize, tag: &str) {
        add_word_path(&mut self.nodes, &mut self.owner, &mut self.edges, src, w, tgt, tag);
    }

    fn finish(self, alphabet: &Alphabet) -> Result<EdgeArena> {
        EdgeArena::new(alphabet.clone(), self.nodes, self.owner, self.edges)
    }
}

/// Builds the arena for `params`; every node is reachable from a start.
pub fn build_gadget(alphabet: &Alphabet, params: &GadgetParams) -> Result<Gadget> {
    let check = |ws: &[&Word]| ws.iter().try_for_each(|w| alphabet.check_word(w));
    let kind = params.kind();
    let arena = match params {
        GadgetParams::Cond1 { u, v, w, x } => {
            check(&[u, v, w, x])?;
            if v.is_empty() || x.is_empty() {
                return Err(unsupported("cond1 needs non-empty loop words v and x"));
            }
            let mut b = Builder::new(&[("n1", Player::P1), ("n2", Player::P1), ("n3", Player::P1)]);
            b.path(0, u, 1, "u");
            b.path(1, v, 1, "v");
            b.path(1, w, 2, "w");
            b.path(2, x, 2, "x");
            Arena::Edge(b.finish(alphabet)?)
        }
        GadgetParams::Cond2 { u, v, w, x } => {
            check(&[u, v, w, x])?;
            if w.is_empty() || (v.is_empty() && x.is_empty()) {
                return Err(unsupported("cond2 needs a non-empty w and a non-empty vx"));
            }
            let mut b = Builder::new(&[("n1", Player::P1), ("n2", Player::P1), ("n3", Player::P1)]);
            b.path(0, u, 1, "u");
            b.path(1, v, 2, "v");
            b.path(2, w, 2, "w");
            b.path(2, x, 1, "x");
            Arena::Edge(b.finish(alphabet)?)
        }
        GadgetParams::OmegaCf { u, v, w, x, j, k } => {
            check(&[u, v, w, x])?;
            let (j, k) = (*j, *k);
            if j == 0 || j >= k {
                return Err(unsupported("omega_cf needs 1 <= j < k"));
            }
            if x.is_empty() || (v.is_empty() && w.is_empty() && j == 1) {
                return Err(unsupported("omega_cf needs a non-empty x and a letter on every cycle"));
            }
            let mut b = Builder::new(&[
                ("n1", Player::P1),
                ("n2", Player::P1),
                ("n3", Player::P2),
                ("n4", Player::P1),
                ("n5", Player::P1),
            ]);
            b.path(0, u, 1, "u");
            b.path(1, v, 2, "v");
            b.path(2, &x.repeat(j - 1), 3, "short");
            b.path(2, &x.repeat(k - 1), 3, "long");
            b.path(3, &Word::empty(), 4, "");
            b.path(3, &x.repeat(k - j), 4, "gap");
            b.path(3, x, 4, "one");
            b.path(4, w, 1, "w");
            Arena::Edge(b.finish(alphabet)?)
        }
        GadgetParams::ResidualOrder { u, v, a, x, y } => {
            check(&[u, v, x.prefix(), x.period(), y.prefix(), y.period()])?;
            if u.is_empty() || v.is_empty() || *a >= alphabet.len() {
                return Err(unsupported("residual_order needs non-empty u, v and a letter a"));
            }
            return residual_gadget(alphabet, u, v, *a, x, y);
        }
    };
    Ok(Gadget { kind, arena, starts: vec![0] })
}

fn residual_gadget(alphabet: &Alphabet, u: &Word, v: &Word, a: usize, x: &UpWord, y: &UpWord) -> Result<Gadget> {
    let mut nodes = Vec::new();
    let mut owner = Vec::new();
    let mut label = Vec::new();
    let mut edges = Vec::new();
    let mut add = |nodes: &mut Vec<String>, name: String, p: Player, l: usize| {
        nodes.push(name);
        owner.push(p);
        label.push(l);
        nodes.len() - 1
    };
    let u_nodes: Vec<usize> =
        u.letters().iter().enumerate().map(|(i, &c)| add(&mut nodes, format!("u{i}"), Player::P2, c)).collect();
    let v_nodes: Vec<usize> =
        v.letters().iter().enumerate().map(|(i, &c)| add(&mut nodes, format!("v{i}"), Player::P2, c)).collect();
    let merge = add(&mut nodes, "merge".into(), Player::P1, a);
    for path in [&u_nodes, &v_nodes] {
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
        }
        edges.push((*path.last().expect("non-empty entry"), merge));
    }
    for (tag, lasso) in [("x", x), ("y", y)] {
        let letters: Vec<usize> = lasso.prefix().letters().iter().chain(lasso.period().letters()).copied().collect();
        let ids: Vec<usize> =
            letters.iter().enumerate().map(|(i, &c)| add(&mut nodes, format!("{tag}{i}"), Player::P2, c)).collect();
        edges.push((merge, ids[0]));
        for w in ids.windows(2) {
            edges.push((w[0], w[1]));
        }
        edges.push((*ids.last().expect("non-empty lasso"), ids[lasso.prefix().len()]));
    }
    let arena = StateArena::new(alphabet.clone(), nodes, owner, label, edges)?;
    Ok(Gadget { kind: GadgetKind::ResidualOrder, arena: Arena::State(arena), starts: vec![u_nodes[0], v_nodes[0]] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab")
    }

    #[test]
    fn parse_round_trip() {
        let p = GadgetParams::parse(GadgetKind::Cond1, &ab(), "u=,v=a,w=b,x=b").unwrap();
        let w = |s: &str| ab().parse_word(s).unwrap();
        assert_eq!(p, GadgetParams::Cond1 { u: Word::empty(), v: w("a"), w: w("b"), x: w("b") });
        assert!(GadgetParams::parse(GadgetKind::Cond1, &ab(), "u=,v=a,w=b").is_err());
        assert!(GadgetParams::parse(GadgetKind::Cond1, &ab(), "u=,v=a,w=b,x=b,z=a").is_err());
        assert_eq!("omega_cf".parse::<GadgetKind>().unwrap(), GadgetKind::OmegaCf);
    }

    #[test]
    fn shapes() {
        let p = GadgetParams::parse(GadgetKind::Cond1, &ab(), "u=,v=a,w=b,x=b").unwrap();
        let g = build_gadget(&ab(), &p).unwrap();
        assert_eq!(g.arena.nodes().len(), 3);
        assert_eq!(g.arena.game().edges.len(), 4);

        let p = GadgetParams::parse(GadgetKind::OmegaCf, &ab(), "u=,v=,w=b,x=a,j=1,k=3").unwrap();
        let g = build_gadget(&ab(), &p).unwrap();
        assert!(g.arena.validate().is_empty());

        let p = GadgetParams::parse(GadgetKind::ResidualOrder, &ab(), "u=a,v=b,a=a,x=(a),y=(b)").unwrap();
        let g = build_gadget(&ab(), &p).unwrap();
        assert_eq!(g.starts.len(), 2);
        assert_eq!(g.arena.nodes().len(), 5);
    }

    #[test]
    fn degenerate_parameters_rejected() {
        let p = GadgetParams::parse(GadgetKind::OmegaCf, &ab(), "u=,v=,w=,x=a,j=1,k=2").unwrap();
        assert!(build_gadget(&ab(), &p).is_err());
        let p = GadgetParams::parse(GadgetKind::OmegaCf, &ab(), "u=,v=,w=b,x=a,j=2,k=2").unwrap();
        assert!(build_gadget(&ab(), &p).is_err());
    }
}

//! JSON interchange for algebras, DPAs, arenas and CGSs. Every document
//! carries `"format_version": 1`; output keys are sorted.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::WilkeAlgebra;
use crate::atl::Cgs;
use crate::automata::Dpa;
use crate::error::{Error, Result};
use crate::games::{Arena, Edge, EdgeArena, Player, StateArena};
use crate::words::Alphabet;

pub const FORMAT_VERSION: u64 = 1;

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    // `Value` keeps object keys in a sorted map
    let v = serde_json::to_value(doc)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn parse_versioned<T: DeserializeOwned>(text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text)?;
    match v.get("format_version").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => {}
        Some(n) => return Err(Error::Schema(format!("unsupported format_version {n}"))),
        None => return Err(Error::Schema("missing format_version".into())),
    }
    serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))
}

fn alphabet(letters: Vec<String>) -> Result<Alphabet> {
    Alphabet::new(letters)
}

fn letter(ab: &Alphabet, name: &str) -> Result<usize> {
    ab.index_of(name).map_err(|_| Error::Schema(format!("unknown letter {name:?}")))
}

fn index(names: &[String], id: &str, what: &str) -> Result<usize> {
    names.iter().position(|n| n == id).ok_or_else(|| Error::Schema(format!("unknown {what} {id:?}")))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub format_version: u64,
    pub letters: Vec<String>,
    pub splus: Vec<String>,
    pub somega: Vec<String>,
    pub product: Vec<Vec<usize>>,
    pub mixed: Vec<Vec<usize>>,
    pub omega: Vec<usize>,
    pub letter_image: BTreeMap<String, usize>,
    pub accepting: Vec<usize>,
}

pub fn algebra_doc(a: &WilkeAlgebra) -> AlgebraDoc {
    let ab = a.alphabet();
    AlgebraDoc {
        format_version: FORMAT_VERSION,
        letters: ab.letters().to_vec(),
        splus: a.splus_names().to_vec(),
        somega: a.somega_names().to_vec(),
        product: a.product_table().to_vec(),
        mixed: a.mixed_table().to_vec(),
        omega: a.omega_table().to_vec(),
        letter_image: a.letter_images().iter().enumerate().map(|(l, &s)| (ab.name(l).to_string(), s)).collect(),
        accepting: a.accepting_set().iter().copied().collect(),
    }
}

pub fn algebra_to_json(a: &WilkeAlgebra) -> Result<String> {
    to_json(&algebra_doc(a))
}

pub fn algebra_from_json(text: &str) -> Result<WilkeAlgebra> {
    let d: AlgebraDoc = parse_versioned(text)?;
    let ab = alphabet(d.letters)?;
    if d.letter_image.len() != ab.len() {
        return Err(Error::Schema("letter_image must name every letter".into()));
    }
    let mut images = vec![0; ab.len()];
    for (name, s) in &d.letter_image {
        images[letter(&ab, name)?] = *s;
    }
    WilkeAlgebra::new(ab, d.splus, d.somega, d.product, d.mixed, d.omega, images, d.accepting)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DpaTransition {
    pub src: String,
    pub letter: String,
    pub tgt: String,
    pub priority: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DpaDoc {
    pub format_version: u64,
    pub letters: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<DpaTransition>,
}

pub fn dpa_to_json(d: &Dpa) -> Result<String> {
    let transitions = d
        .delta
        .iter()
        .enumerate()
        .flat_map(|(q, row)| {
            row.iter().enumerate().map(move |(a, &(t, priority))| DpaTransition {
                src: d.states[q].clone(),
                letter: d.alphabet.name(a).to_string(),
                tgt: d.states[t].clone(),
                priority,
            })
        })
        .collect();
    to_json(&DpaDoc {
        format_version: FORMAT_VERSION,
        letters: d.alphabet.letters().to_vec(),
        states: d.states.clone(),
        initial: d.states[d.initial].clone(),
        transitions,
    })
}

pub fn dpa_from_json(text: &str) -> Result<Dpa> {
    let d: DpaDoc = parse_versioned(text)?;
    let ab = alphabet(d.letters)?;
    let ts: Vec<(&str, &str, &str, u32)> =
        d.transitions.iter().map(|t| (t.src.as_str(), t.letter.as_str(), t.tgt.as_str(), t.priority)).collect();
    Dpa::from_transitions(ab, d.states.clone(), &d.initial, &ts)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaNode {
    pub id: String,
    pub owner: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaEdge {
    pub src: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letter: Option<String>,
    pub tgt: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaDoc {
    pub format_version: u64,
    pub kind: String,
    pub letters: Vec<String>,
    pub nodes: Vec<ArenaNode>,
    pub edges: Vec<ArenaEdge>,
    /// Free-form metadata such as start nodes or expected verdicts; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<Value>,
}

pub fn arena_to_json(a: &Arena) -> Result<String> {
    to_json(&arena_doc(a))
}

pub fn arena_doc(a: &Arena) -> ArenaDoc {
    let ab = a.alphabet();
    let names = a.nodes();
    let node = |i: usize, owner: Player, label: Option<usize>| ArenaNode {
        id: names[i].clone(),
        owner: owner.number(),
        label: label.map(|l| ab.name(l).to_string()),
    };
    let (kind, nodes, edges) = match a {
        Arena::Edge(e) => (
            "edge",
            e.owner.iter().enumerate().map(|(i, &o)| node(i, o, None)).collect(),
            e.edges
                .iter()
                .map(|x| ArenaEdge {
                    src: names[x.src].clone(),
                    letter: x.letter.map(|l| ab.name(l).to_string()),
                    tgt: names[x.tgt].clone(),
                })
                .collect(),
        ),
        Arena::State(s) => (
            "state",
            s.owner.iter().enumerate().map(|(i, &o)| node(i, o, Some(s.label[i]))).collect(),
            s.edges.iter().map(|&(x, y)| ArenaEdge { src: names[x].clone(), letter: None, tgt: names[y].clone() }).collect(),
        ),
    };
    ArenaDoc { format_version: FORMAT_VERSION, kind: kind.into(), letters: ab.letters().to_vec(), nodes, edges, annotations: None }
}

pub fn arena_from_json(text: &str) -> Result<Arena> {
    let d: ArenaDoc = parse_versioned(text)?;
    let ab = alphabet(d.letters)?;
    let names: Vec<String> = d.nodes.iter().map(|n| n.id.clone()).collect();
    let owner = d
        .nodes
        .iter()
        .map(|n| Player::from_number(n.owner.into()).map_err(|_| Error::Schema(format!("owner of {} must be 1 or 2", n.id))))
        .collect::<Result<Vec<_>>>()?;
    let ends = |e: &ArenaEdge| -> Result<(usize, usize)> { Ok((index(&names, &e.src, "node")?, index(&names, &e.tgt, "node")?)) };
    match d.kind.as_str() {
        "edge" => {
            let edges = d
                .edges
                .iter()
                .map(|e| {
                    let (src, tgt) = ends(e)?;
                    // an edge without a letter is silent
                    let l = e.letter.as_deref().map(|name| letter(&ab, name)).transpose()?;
                    Ok(Edge { src, letter: l, tgt })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Arena::Edge(EdgeArena::new(ab, names, owner, edges)?))
        }
        "state" => {
            let label = d
                .nodes
                .iter()
                .map(|n| letter(&ab, n.label.as_deref().ok_or_else(|| Error::Schema(format!("node {} needs a label", n.id)))?))
                .collect::<Result<Vec<_>>>()?;
            let edges = d.edges.iter().map(ends).collect::<Result<Vec<_>>>()?;
            Ok(Arena::State(StateArena::new(ab, names, owner, label, edges)?))
        }
        k => Err(Error::Schema(format!("arena kind must be \"edge\" or \"state\", got {k:?}"))),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CgsState {
    pub id: String,
    pub props: BTreeSet<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CgsTransition {
    pub state: String,
    pub profile: Vec<String>,
    pub tgt: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CgsDoc {
    pub format_version: u64,
    pub states: Vec<CgsState>,
    pub agents: Vec<String>,
    pub actions: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    pub transitions: Vec<CgsTransition>,
    /// Free-form metadata such as start nodes or expected verdicts; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<Value>,
}

pub fn cgs_to_json(g: &Cgs) -> Result<String> {
    to_json(&cgs_doc(g))
}

pub fn cgs_doc(g: &Cgs) -> CgsDoc {
    let states = g.states.iter().zip(&g.props).map(|(id, props)| CgsState { id: id.clone(), props: props.clone() }).collect();
    let actions = g
        .states
        .iter()
        .zip(&g.actions)
        .map(|(s, per)| (s.clone(), g.agents.iter().cloned().zip(per.iter().cloned()).collect()))
        .collect();
    let mut transitions = Vec::new();
    for (x, row) in g.transition.iter().enumerate() {
        for (code, t) in row.iter().enumerate() {
            if let Some(t) = t {
                let profile = g.decode(x, code).iter().enumerate().map(|(i, &m)| g.actions[x][i][m].clone()).collect();
                transitions.push(CgsTransition { state: g.states[x].clone(), profile, tgt: g.states[*t].clone() });
            }
        }
    }
    CgsDoc { format_version: FORMAT_VERSION, states, agents: g.agents.clone(), actions, transitions, annotations: None }
}

pub fn cgs_from_json(text: &str) -> Result<Cgs> {
    let d: CgsDoc = parse_versioned(text)?;
    let states: Vec<String> = d.states.iter().map(|s| s.id.clone()).collect();
    let props = d.states.iter().map(|s| s.props.clone()).collect();
    let actions = states
        .iter()
        .map(|s| {
            let per = d.actions.get(s).ok_or_else(|| Error::Schema(format!("no actions for state {s:?}")))?;
            d.agents
                .iter()
                .map(|a| per.get(a).cloned().ok_or_else(|| Error::Schema(format!("no actions for agent {a:?} at {s:?}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<Vec<Vec<String>>>>>()?;
    let mut transition: Vec<Vec<Option<usize>>> =
        actions.iter().map(|per| vec![None; per.iter().map(Vec::len).product()]).collect();
    for t in &d.transitions {
        let x = index(&states, &t.state, "state")?;
        if t.profile.len() != d.agents.len() {
            return Err(Error::Schema(format!("profile at {} must name one action per agent", t.state)));
        }
        let profile = t
            .profile
            .iter()
            .enumerate()
            .map(|(i, m)| index(&actions[x][i], m, "action"))
            .collect::<Result<Vec<_>>>()?;
        // mixed radix, agent 0 least significant
        let code = profile.iter().zip(&actions[x]).rev().fold(0, |acc, (&m, acts)| acc * acts.len() + m);
        transition[x][code] = Some(index(&states, &t.tgt, "state")?);
    }
    Cgs::new(states, props, d.agents, actions, transition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atl::{build_separator, SeparatorKind};
    use crate::fixtures;
    use crate::games::{build_gadget, GadgetKind, GadgetParams};

    #[test]
    fn round_trips_are_byte_stable() {
        for fx in fixtures::corpus() {
            let s = algebra_to_json(&fx.algebra).unwrap();
            assert_eq!(algebra_to_json(&algebra_from_json(&s).unwrap()).unwrap(), s, "{}", fx.name);
        }
        let d = fixtures::gf_a_dpa();
        let s = dpa_to_json(&d).unwrap();
        assert_eq!(dpa_from_json(&s).unwrap(), d);
        let ab = Alphabet::from_chars("ab");
        for (kind, params) in [(GadgetKind::Cond1, "u=,v=a,w=b,x=b"), (GadgetKind::ResidualOrder, "u=a,v=b,a=a,x=(a),y=(b)")] {
            let g = build_gadget(&ab, &GadgetParams::parse(kind, &ab, params).unwrap()).unwrap();
            let s = arena_to_json(&g.arena).unwrap();
            assert_eq!(arena_from_json(&s).unwrap(), g.arena);
        }
        let sep = build_separator(SeparatorKind::Gffg, 2).unwrap();
        let s = cgs_to_json(&sep.cgs).unwrap();
        assert_eq!(cgs_from_json(&s).unwrap(), sep.cgs);
    }

    #[test]
    fn two_agent_profiles_round_trip() {
        let g = crate::random::random_cgs(4, 2, 3, &["p"], 5);
        assert_eq!(cgs_from_json(&cgs_to_json(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn schema_errors() {
        let s = algebra_to_json(&fixtures::gf_a()).unwrap();
        assert!(matches!(algebra_from_json(&s.replace("\"format_version\": 1", "\"format_version\": 2")), Err(Error::Schema(_))));
        assert!(matches!(algebra_from_json(&s.replace("\"accepting\"", "\"accept\"")), Err(Error::Schema(_))));
        assert!(matches!(algebra_from_json("{"), Err(Error::Json(_))));
    }
}

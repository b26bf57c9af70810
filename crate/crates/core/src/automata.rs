//! Deterministic parity automata (transition-based, max-even acceptance) and
//! finite-word DFAs, with compilation of parity automata into Wilke algebras.

use std::collections::HashMap;

use crate::algebra::WilkeAlgebra;
use crate::error::{Error, Result};
use crate::words::{Alphabet, UpWord};

pub const DEFAULT_ALGEBRA_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpa {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub initial: usize,
    /// `delta[q][a] = (target, priority)`.
    pub delta: Vec<Vec<(usize, u32)>>,
}

impl Dpa {
    pub fn new(alphabet: Alphabet, states: Vec<String>, initial: usize, delta: Vec<Vec<(usize, u32)>>) -> Result<Self> {
        if initial >= states.len() {
            return Err(Error::Schema("initial state out of range".into()));
        }
        if delta.len() != states.len() {
            return Err(Error::Shape("one transition row per state".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Shape(format!("state {} needs one transition per letter", states[q])));
            }
            if row.iter().any(|&(t, _)| t >= states.len()) {
                return Err(Error::Shape(format!("state {} has a target out of range", states[q])));
            }
        }
        Ok(Dpa { alphabet, states, initial, delta })
    }

    /// Builds from named transitions; every (state, letter) must be covered once.
    pub fn from_transitions(
        alphabet: Alphabet,
        states: Vec<String>,
        initial: &str,
        transitions: &[(&str, &str, &str, u32)],
    ) -> Result<Self> {
        let idx = |s: &str| {
            states.iter().position(|x| x == s).ok_or_else(|| Error::Schema(format!("unknown state {s:?}")))
        };
        let mut delta: Vec<Vec<Option<(usize, u32)>>> = vec![vec![None; alphabet.len()]; states.len()];
        for &(src, letter, tgt, prio) in transitions {
            let (q, a, t) = (idx(src)?, alphabet.index_of(letter)?, idx(tgt)?);
            if delta[q][a].replace((t, prio)).is_some() {
                return Err(Error::Schema(format!("duplicate transition ({src}, {letter})")));
            }
        }
        let mut rows = Vec::new();
        for (q, row) in delta.into_iter().enumerate() {
            let mut full = Vec::new();
            for (a, cell) in row.into_iter().enumerate() {
                full.push(cell.ok_or_else(|| {
                    Error::Schema(format!("missing transition ({}, {})", states[q], alphabet.name(a)))
                })?);
            }
            rows.push(full);
        }
        let init = idx(initial)?;
        Dpa::new(alphabet, states, init, rows)
    }

    pub fn max_priority(&self) -> u32 {
        self.delta.iter().flatten().map(|&(_, p)| p).max().unwrap_or(0)
    }

    pub fn step(&self, q: usize, a: usize) -> (usize, u32) {
        self.delta[q][a]
    }

    fn run(&self, q: usize, w: &[usize]) -> (usize, u32) {
        w.iter().fold((q, 0), |(q, p), &a| {
            let (t, pa) = self.delta[q][a];
            (t, p.max(pa))
        })
    }
}

pub fn dpa_up_membership(d: &Dpa, w: &UpWord) -> Result<bool> {
    d.alphabet.check_word(w.prefix())?;
    d.alphabet.check_word(w.period())?;
    let (mut q, _) = d.run(d.initial, w.prefix().letters());
    let mut first_seen: HashMap<usize, usize> = HashMap::new();
    let mut prios = Vec::new();
    while !first_seen.contains_key(&q) {
        first_seen.insert(q, prios.len());
        let (t, p) = d.run(q, w.period().letters());
        prios.push(p);
        q = t;
    }
    let max = prios[first_seen[&q]..].iter().copied().max().unwrap_or(0);
    Ok(max % 2 == 0)
}

/// Shifts every priority by one.
pub fn dpa_complement(d: &Dpa) -> Dpa {
    let delta = d.delta.iter().map(|row| row.iter().map(|&(t, p)| (t, p + 1)).collect()).collect();
    Dpa { delta, ..d.clone() }
}

/// Transition-monoid algebra: `S_+` holds maps state ↦ (state, max priority).
pub fn dpa_to_wilke(d: &Dpa) -> Result<WilkeAlgebra> {
    dpa_to_wilke_capped(d, crate::cap_from_env("POSLAB_CAP", DEFAULT_ALGEBRA_CAP))
}

pub fn dpa_to_wilke_capped(d: &Dpa, cap: usize) -> Result<WilkeAlgebra> {
    type Map = Vec<(usize, u32)>;
    let k = d.alphabet.len();
    let nq = d.states.len();
    let compose = |f: &Map, g: &Map| -> Map {
        f.iter().map(|&(q, p)| {
            let (r, pg) = g[q];
            (r, p.max(pg))
        }).collect()
    };
    let mut index: HashMap<Map, usize> = HashMap::new();
    let mut elems: Vec<Map> = Vec::new();
    let mut letter_image = Vec::with_capacity(k);
    for a in 0..k {
        let f: Map = (0..nq).map(|q| d.delta[q][a]).collect();
        let i = *index.entry(f.clone()).or_insert_with(|| {
            elems.push(f);
            elems.len() - 1
        });
        letter_image.push(i);
    }
    let gens: Vec<Map> = letter_image.iter().map(|&i| elems[i].clone()).collect();
    let mut head = 0;
    while head < elems.len() {
        for g in &gens {
            let h = compose(&elems[head], g);
            if !index.contains_key(&h) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { what: "transition monoid size".into(), cap });
                }
                index.insert(h.clone(), elems.len());
                elems.push(h);
            }
        }
        head += 1;
    }
    let n = elems.len();
    let product: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| index[&compose(&elems[i], &elems[j])]).collect()).collect();

    // acceptance of f^ω from each state: follow f until a state repeats
    let omega_vec = |f: &Map| -> Vec<bool> {
        let mut bits = vec![false; nq];
        for (start, bit) in bits.iter_mut().enumerate() {
            let mut pos: HashMap<usize, usize> = HashMap::new();
            let mut trail: Vec<u32> = Vec::new();
            let mut q = start;
            while !pos.contains_key(&q) {
                pos.insert(q, trail.len());
                trail.push(f[q].1);
                q = f[q].0;
            }
            *bit = trail[pos[&q]..].iter().max().copied().unwrap_or(0) % 2 == 0;
        }
        bits
    };
    let mut oindex: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut ovecs: Vec<Vec<bool>> = Vec::new();
    fn intern(v: Vec<bool>, oindex: &mut HashMap<Vec<bool>, usize>, ovecs: &mut Vec<Vec<bool>>) -> usize {
        if let Some(&i) = oindex.get(&v) {
            return i;
        }
        oindex.insert(v.clone(), ovecs.len());
        ovecs.push(v);
        ovecs.len() - 1
    }
    let omega: Vec<usize> = elems.iter().map(|f| intern(omega_vec(f), &mut oindex, &mut ovecs)).collect();
    let act = |f: &Map, v: &[bool]| -> Vec<bool> { f.iter().map(|&(q, _)| v[q]).collect() };
    for f in &elems {
        for &o in &omega {
            let v = act(f, &ovecs[o].clone());
            intern(v, &mut oindex, &mut ovecs);
        }
    }
    let mixed: Vec<Vec<usize>> =
        elems.iter().map(|f| ovecs.iter().map(|v| oindex[&act(f, v)]).collect()).collect();
    let accepting: Vec<usize> = (0..ovecs.len()).filter(|&i| ovecs[i][d.initial]).collect();

    let splus = elems
        .iter()
        .map(|f| f.iter().map(|&(q, p)| format!("{}:{}", d.states[q], p)).collect::<Vec<_>>().join(","))
        .map(|s| format!("[{s}]"))
        .collect();
    let somega = ovecs
        .iter()
        .map(|v| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>())
        .map(|s| format!("<{s}>"))
        .collect();
    WilkeAlgebra::new(d.alphabet.clone(), splus, somega, product, mixed, omega, letter_image, accepting)
}

/// Complete DFA over finite words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub delta: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

impl Dfa {
    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        self.accepting[w.iter().fold(self.initial, |q, &a| self.delta[q][a])]
    }

    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        let mut out = Vec::new();
        while let Some(q) = stack.pop() {
            out.push(q);
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `L(p) ⊆ L(q)` by searching the product for an accepting/rejecting pair.
    pub fn language_included(&self, p: usize, q: usize) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(p, q)];
        seen.insert((p, q));
        while let Some((x, y)) = stack.pop() {
            if self.accepting[x] && !self.accepting[y] {
                return false;
            }
            for a in 0..self.alphabet.len() {
                let next = (self.delta[x][a], self.delta[y][a]);
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        true
    }
}

/// The languages of the reachable states form an inclusion chain.
pub fn dfa_residual_order(m: &Dfa) -> bool {
    let r = m.reachable();
    r.iter().enumerate().all(|(i, &p)| {
        r[i + 1..].iter().all(|&q| m.language_included(p, q) || m.language_included(q, p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::classify;
    use crate::fixtures;
    use crate::random::{random_dpa, random_up_words};

    #[test]
    fn gf_a_dpa_membership() {
        let d = fixtures::gf_a_dpa();
        let ab = d.alphabet.clone();
        assert!(dpa_up_membership(&d, &ab.parse_up_word("(ab)").unwrap()).unwrap());
        assert!(!dpa_up_membership(&d, &ab.parse_up_word("a(b)").unwrap()).unwrap());
        let c = dpa_complement(&d);
        assert!(dpa_up_membership(&c, &ab.parse_up_word("a(b)").unwrap()).unwrap());
    }

    #[test]
    fn all_accepting_dpa() {
        let d = Dpa::from_transitions(Alphabet::from_chars("a"), vec!["q".into()], "q", &[("q", "a", "q", 0)]).unwrap();
        let a = dpa_to_wilke(&d).unwrap();
        assert_eq!((a.splus_len(), a.somega_len(), a.accepting_set().len()), (1, 1, 1));
        let c = dpa_complement(&d);
        assert!(!dpa_up_membership(&c, &d.alphabet.parse_up_word("(a)").unwrap()).unwrap());
    }

    #[test]
    fn gf_a_dpa_algebra() {
        let a = dpa_to_wilke(&fixtures::gf_a_dpa()).unwrap();
        assert_eq!(a.splus_len(), 2);
        assert_eq!(a.somega_len(), 2);
        assert_eq!(a.accepting_set().len(), 1);
    }

    #[test]
    fn abc_dpa_classifies() {
        let a = dpa_to_wilke(&fixtures::abc_omega_dpa()).unwrap();
        let r = classify(&a).unwrap();
        assert!(r.state_positional && !r.edge_positional);
        let h = classify(&fixtures::abc_omega()).unwrap();
        assert_eq!((h.state_positional, h.edge_positional), (r.state_positional, r.edge_positional));
    }

    #[test]
    fn missing_transition_named() {
        let err = Dpa::from_transitions(Alphabet::from_chars("ab"), vec!["q".into()], "q", &[("q", "a", "q", 0)])
            .unwrap_err();
        assert!(err.to_string().contains("(q, b)"), "{err}");
    }

    #[test]
    fn algebra_agrees_with_automaton() {
        let mut dpas: Vec<Dpa> = fixtures::dpa_corpus().into_iter().map(|(_, d)| d).collect();
        dpas.extend((0..50).map(|seed| random_dpa(4, 2, 3, seed)));
        for (i, d) in dpas.iter().enumerate() {
            let a = dpa_to_wilke(d).unwrap();
            assert!(a.validate().is_empty(), "dpa {i}: {:?}", a.validate());
            let c = dpa_complement(&dpa_complement(d));
            let n = if i < 10 { 1000 } else { 200 };
            for w in random_up_words(d.alphabet.len(), n, 6, 6, i as u64) {
                assert_eq!(a.up_membership(&w).unwrap(), dpa_up_membership(d, &w).unwrap());
                assert_eq!(dpa_up_membership(&c, &w).unwrap(), dpa_up_membership(d, &w).unwrap());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = random_dpa(4, 3, 3, 7);
        assert!(matches!(dpa_to_wilke_capped(&d, 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn dfa_residual_examples() {
        let sink = Dfa { alphabet: Alphabet::from_chars("a"), initial: 0, delta: vec![vec![0]], accepting: vec![true] };
        assert!(dfa_residual_order(&sink));
    }
}

//! Seeded generators for property tests and the oracle runner.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{syntactic_quotient, WilkeAlgebra};
use crate::atl::Cgs;
use crate::automata::{dpa_to_wilke_capped, Dpa};
use crate::games::{Edge, EdgeArena, Player};
use crate::words::{Alphabet, UpWord, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word(r: &mut impl Rng, k: usize, len: usize) -> Word {
    Word((0..len).map(|_| r.gen_range(0..k)).collect())
}

/// `n` UP-words over `k` letters with prefix length `0..=max_prefix` and
/// period length `1..=max_period`.
pub fn random_up_words(k: usize, n: usize, max_prefix: usize, max_period: usize, seed: u64) -> Vec<UpWord> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let p = r.gen_range(0..=max_prefix);
            let q = r.gen_range(1..=max_period);
            UpWord::new(random_word(&mut r, k, p), random_word(&mut r, k, q)).expect("non-empty period")
        })
        .collect()
}

/// A total DPA over the letters `a, b, c, …` with priorities below `priorities`.
pub fn random_dpa(states: usize, letters: usize, priorities: u32, seed: u64) -> Dpa {
    let mut r = rng(seed);
    random_dpa_with(&mut r, states, letters, priorities)
}

fn random_dpa_with(r: &mut impl Rng, states: usize, letters: usize, priorities: u32) -> Dpa {
    let alphabet = Alphabet::from_chars(&"abcdefgh"[..letters]);
    let delta = (0..states)
        .map(|_| (0..letters).map(|_| (r.gen_range(0..states), r.gen_range(0..priorities))).collect())
        .collect();
    let names = (0..states).map(|q| format!("q{q}")).collect();
    Dpa::new(alphabet, names, 0, delta).expect("well-formed")
}

/// A random trim algebra with `|S_+| ≤ max_splus`: the transition algebra of a
/// random DPA with a random accepting set, optionally reduced to its syntactic
/// quotient.
pub fn random_trim_algebra(max_splus: usize, seed: u64) -> WilkeAlgebra {
    let mut r = rng(seed);
    loop {
        let states = r.gen_range(1..=3);
        let letters = r.gen_range(1..=3);
        let d = random_dpa_with(&mut r, states, letters, 3);
        let Ok(a) = dpa_to_wilke_capped(&d, 4 * max_splus + 4) else { continue };
        let acc: Vec<usize> = (0..a.somega_len()).filter(|_| r.gen_bool(0.5)).collect();
        let a = a.with_accepting(acc);
        let a = if r.gen_bool(0.5) { syntactic_quotient(&a).expect("trim input") } else { a };
        if a.splus_len() <= max_splus {
            return a;
        }
    }
}

/// A random trim algebra with exactly `size` elements in `S_+`.
pub fn random_trim_algebra_of_size(size: usize, seed: u64) -> WilkeAlgebra {
    let mut r = rng(seed);
    loop {
        let states = r.gen_range(2..=5);
        let letters = r.gen_range(2..=3);
        let d = random_dpa_with(&mut r, states, letters, 3);
        let Ok(a) = dpa_to_wilke_capped(&d, size) else { continue };
        if a.splus_len() == size {
            let acc: Vec<usize> = (0..a.somega_len()).filter(|_| r.gen_bool(0.5)).collect();
            return a.with_accepting(acc);
        }
    }
}

/// A one-state DPA giving letter `i` a random priority below `priorities`:
/// a parity condition on edge colours. With `priorities = 3` it is a single
/// Rabin pair (`2` must recur, `3` eventually stops).
pub fn random_colouring(letters: usize, priorities: u32, seed: u64) -> Dpa {
    let mut r = rng(seed);
    random_dpa_with(&mut r, 1, letters, priorities)
}

/// A total edge arena with `1..=max_nodes` nodes, out-degree `1..=max_out`,
/// random owners and letters.
pub fn random_edge_arena(max_nodes: usize, letters: usize, max_out: usize, seed: u64) -> EdgeArena {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_nodes);
    let mut edges = Vec::new();
    for v in 0..n {
        for _ in 0..r.gen_range(1..=max_out) {
            let e = Edge { src: v, letter: Some(r.gen_range(0..letters)), tgt: r.gen_range(0..n) };
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    let owner = (0..n).map(|_| if r.gen_bool(0.5) { Player::P1 } else { Player::P2 }).collect();
    let names = (0..n).map(|v| format!("v{v}")).collect();
    EdgeArena::new(Alphabet::from_chars(&"abcdefgh"[..letters]), names, owner, edges).expect("total by construction")
}

/// A CGS with `1..=max_states` states, agents "1".."n" and random props from `props`.
pub fn random_cgs(max_states: usize, agents: usize, max_actions: usize, props: &[&str], seed: u64) -> Cgs {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_states);
    let labels = (0..n).map(|_| props.iter().filter(|_| r.gen_bool(0.5)).map(|p| p.to_string()).collect()).collect();
    let actions: Vec<Vec<Vec<String>>> = (0..n)
        .map(|_| (0..agents).map(|_| (0..r.gen_range(1..=max_actions)).map(|i| format!("m{i}")).collect()).collect())
        .collect();
    let transition = actions
        .iter()
        .map(|acts| {
            let profiles: usize = acts.iter().map(Vec::len).product();
            (0..profiles).map(|_| Some(r.gen_range(0..n))).collect()
        })
        .collect();
    let states = (0..n).map(|s| format!("s{s}")).collect();
    let agents = (1..=agents).map(|a| a.to_string()).collect();
    Cgs::new(states, labels, agents, actions, transition).expect("total by construction")
}

//! The reference corpus: named languages with their expected classification.

use crate::algebra::{syntactic_quotient, WilkeAlgebra};
use crate::automata::{dpa_to_wilke, Dpa};
use crate::words::Alphabet;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn build(
    letters: &str,
    splus: &[&str],
    somega: &[&str],
    product: Vec<Vec<usize>>,
    mixed: Vec<Vec<usize>>,
    omega: Vec<usize>,
    letter_image: Vec<usize>,
    accepting: Vec<usize>,
) -> WilkeAlgebra {
    WilkeAlgebra::new(
        Alphabet::from_chars(letters),
        names(splus),
        names(somega),
        product,
        mixed,
        omega,
        letter_image,
        accepting,
    )
    .expect("fixture tables are well-shaped")
}

fn from_dpa(d: &Dpa) -> WilkeAlgebra {
    syntactic_quotient(&dpa_to_wilke(d).expect("fixture DPA compiles")).expect("trim")
}

fn dpa(letters: Alphabet, states: &[&str], initial: &str, t: &[(&str, &str, &str, u32)]) -> Dpa {
    Dpa::from_transitions(letters, names(states), initial, t).expect("fixture DPA is total")
}

/// One element, everything accepted.
pub fn trivial() -> WilkeAlgebra {
    build("a", &["1"], &["top"], vec![vec![0]], vec![vec![0]], vec![0], vec![0], vec![0])
}

/// `Σ^ω` over `{a}` presented through the group `Z/2`; not aperiodic as given,
/// its syntactic quotient is trivial.
pub fn z2() -> WilkeAlgebra {
    build("a", &["a", "aa"], &["a^w"], vec![vec![1, 0], vec![0, 1]], vec![vec![0], vec![0]], vec![0, 0], vec![0], vec![0])
}

/// Infinitely many `a`.
pub fn gf_a() -> WilkeAlgebra {
    build(
        "ab",
        &["has-a", "no-a"],
        &["inf-a", "fin-a"],
        vec![vec![0, 0], vec![0, 1]],
        vec![vec![0, 1], vec![0, 1]],
        vec![0, 1],
        vec![0, 1],
        vec![0],
    )
}

/// Infinitely many `b`.
pub fn gf_b() -> WilkeAlgebra {
    build(
        "ab",
        &["has-b", "no-b"],
        &["inf-b", "fin-b"],
        vec![vec![0, 0], vec![0, 1]],
        vec![vec![0, 1], vec![0, 1]],
        vec![0, 1],
        vec![1, 0],
        vec![0],
    )
}

/// At least one `a`.
pub fn f_a() -> WilkeAlgebra {
    build(
        "ab",
        &["has-a", "no-a"],
        &["seen-a", "never-a-tail"],
        vec![vec![0, 0], vec![0, 1]],
        vec![vec![0, 0], vec![0, 1]],
        vec![0, 1],
        vec![0, 1],
        vec![0],
    )
}

/// At least one `b`.
pub fn f_b() -> WilkeAlgebra {
    build(
        "ab",
        &["has-b", "no-b"],
        &["seen-b", "never-b-tail"],
        vec![vec![0, 0], vec![0, 1]],
        vec![vec![0, 0], vec![0, 1]],
        vec![0, 1],
        vec![1, 0],
        vec![0],
    )
}

/// Both letters occur somewhere.
pub fn fa_fb() -> WilkeAlgebra {
    build(
        "ab",
        &["a-only", "b-only", "both"],
        &["a-only-tail", "b-only-tail", "both-seen"],
        vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]],
        vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]],
        vec![0, 1, 2],
        vec![0, 1],
        vec![2],
    )
}

/// Both letters occur infinitely often.
pub fn gfa_gfb() -> WilkeAlgebra {
    build(
        "ab",
        &["a-only", "b-only", "both"],
        &["inf-a-only", "inf-b-only", "inf-both"],
        vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]],
        vec![vec![0, 1, 2]; 3],
        vec![0, 1, 2],
        vec![0, 1],
        vec![2],
    )
}

pub fn gf_a_dpa() -> Dpa {
    dpa(Alphabet::from_chars("ab"), &["q"], "q", &[("q", "a", "q", 2), ("q", "b", "q", 1)])
}

/// `GFa ∧ FGb` over truth vectors of `a, b`: letters `-`, `a`, `b`, `ab`.
pub fn gfa_fgb_dpa() -> Dpa {
    let ab = Alphabet::new(["-", "a", "b", "ab"]).expect("distinct");
    dpa(ab, &["q"], "q", &[("q", "-", "q", 3), ("q", "a", "q", 3), ("q", "b", "q", 1), ("q", "ab", "q", 2)])
}

/// `G(p ∨ Xp)`: never two consecutive positions without `p`.
pub fn g_p_or_xp_dpa() -> Dpa {
    let ab = Alphabet::new(["-", "p"]).expect("distinct");
    dpa(
        ab,
        &["last-p", "last-not-p", "dead"],
        "last-p",
        &[
            ("last-p", "p", "last-p", 2),
            ("last-p", "-", "last-not-p", 2),
            ("last-not-p", "p", "last-p", 2),
            ("last-not-p", "-", "dead", 1),
            ("dead", "p", "dead", 1),
            ("dead", "-", "dead", 1),
        ],
    )
}

/// The factor `bb` occurs finitely often.
pub fn fin_bb_dpa() -> Dpa {
    dpa(
        Alphabet::from_chars("ab"),
        &["q0", "q1"],
        "q0",
        &[("q0", "a", "q0", 0), ("q0", "b", "q1", 0), ("q1", "a", "q0", 0), ("q1", "b", "q1", 1)],
    )
}

/// The single word `(abc)^ω`.
pub fn abc_omega_dpa() -> Dpa {
    dpa(
        Alphabet::from_chars("abc"),
        &["s0", "s1", "s2", "sink"],
        "s0",
        &[
            ("s0", "a", "s1", 2),
            ("s0", "b", "sink", 1),
            ("s0", "c", "sink", 1),
            ("s1", "b", "s2", 2),
            ("s1", "a", "sink", 1),
            ("s1", "c", "sink", 1),
            ("s2", "c", "s0", 2),
            ("s2", "a", "sink", 1),
            ("s2", "b", "sink", 1),
            ("sink", "a", "sink", 1),
            ("sink", "b", "sink", 1),
            ("sink", "c", "sink", 1),
        ],
    )
}

/// `a^ω ∪ b^ω`.
pub fn aw_bw_dpa() -> Dpa {
    dpa(
        Alphabet::from_chars("ab"),
        &["init", "A", "B", "sink"],
        "init",
        &[
            ("init", "a", "A", 2),
            ("init", "b", "B", 2),
            ("A", "a", "A", 2),
            ("A", "b", "sink", 1),
            ("B", "b", "B", 2),
            ("B", "a", "sink", 1),
            ("sink", "a", "sink", 1),
            ("sink", "b", "sink", 1),
        ],
    )
}

/// `a^ω ∪ bab^ω`.
pub fn aw_babw_dpa() -> Dpa {
    dpa(
        Alphabet::from_chars("ab"),
        &["init", "A", "B1", "B2", "B3", "sink"],
        "init",
        &[
            ("init", "a", "A", 2),
            ("init", "b", "B1", 2),
            ("A", "a", "A", 2),
            ("A", "b", "sink", 1),
            ("B1", "a", "B2", 2),
            ("B1", "b", "sink", 1),
            ("B2", "b", "B3", 2),
            ("B2", "a", "sink", 1),
            ("B3", "b", "B3", 2),
            ("B3", "a", "sink", 1),
            ("sink", "a", "sink", 1),
            ("sink", "b", "sink", 1),
        ],
    )
}

/// Infinitely many `b`, and eventually every `a`-block between two `b`s has odd
/// length.
pub fn odd_blocks_dpa() -> Dpa {
    dpa(
        Alphabet::from_chars("ab"),
        &["E", "O"],
        "E",
        &[("E", "a", "O", 1), ("O", "a", "E", 1), ("O", "b", "E", 2), ("E", "b", "E", 3)],
    )
}

pub fn gfa_fgb() -> WilkeAlgebra {
    from_dpa(&gfa_fgb_dpa())
}

pub fn g_p_or_xp() -> WilkeAlgebra {
    from_dpa(&g_p_or_xp_dpa())
}

pub fn fin_bb() -> WilkeAlgebra {
    from_dpa(&fin_bb_dpa())
}

pub fn abc_omega() -> WilkeAlgebra {
    from_dpa(&abc_omega_dpa())
}

pub fn aw_bw() -> WilkeAlgebra {
    from_dpa(&aw_bw_dpa())
}

pub fn aw_babw() -> WilkeAlgebra {
    from_dpa(&aw_babw_dpa())
}

pub fn odd_blocks() -> WilkeAlgebra {
    from_dpa(&odd_blocks_dpa())
}

pub fn dpa_corpus() -> Vec<(&'static str, Dpa)> {
    vec![
        ("gf_a", gf_a_dpa()),
        ("gfa_fgb", gfa_fgb_dpa()),
        ("g_p_or_xp", g_p_or_xp_dpa()),
        ("fin_bb", fin_bb_dpa()),
        ("abc_omega", abc_omega_dpa()),
        ("aw_bw", aw_bw_dpa()),
        ("aw_babw", aw_babw_dpa()),
        ("odd_blocks", odd_blocks_dpa()),
    ]
}

/// Corpus members over the alphabet `{a, b}`.
pub fn two_letter_corpus() -> Vec<(&'static str, WilkeAlgebra)> {
    vec![
        ("gf_a", gf_a()),
        ("gf_b", gf_b()),
        ("f_a", f_a()),
        ("f_b", f_b()),
        ("fa_fb", fa_fb()),
        ("gfa_gfb", gfa_gfb()),
        ("fin_bb", fin_bb()),
        ("aw_bw", aw_bw()),
        ("aw_babw", aw_babw()),
        ("odd_blocks", odd_blocks()),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub prefix_independent: bool,
    pub one_player_positional: bool,
    pub edge_positional: bool,
    pub state_positional: bool,
    pub aperiodic_syntactic: bool,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub algebra: WilkeAlgebra,
    pub expected: Expected,
}

fn fx(name: &'static str, algebra: WilkeAlgebra, flags: [bool; 5]) -> Fixture {
    let [prefix_independent, one_player_positional, edge_positional, state_positional, aperiodic_syntactic] = flags;
    Fixture {
        name,
        algebra,
        expected: Expected {
            prefix_independent,
            one_player_positional,
            edge_positional,
            state_positional,
            aperiodic_syntactic,
        },
    }
}

/// Every fixture with its expected flags, in the order
/// prefix-independent, 1P-positional, edge, state, aperiodic.
pub fn corpus() -> Vec<Fixture> {
    const T: bool = true;
    const F: bool = false;
    vec![
        fx("trivial", trivial(), [T, T, T, T, T]),
        fx("z2", z2(), [T, T, T, T, T]),
        fx("gf_a", gf_a(), [T, T, T, T, T]),
        fx("gf_b", gf_b(), [T, T, T, T, T]),
        fx("f_a", f_a(), [F, T, T, T, T]),
        fx("f_b", f_b(), [F, T, T, T, T]),
        fx("fa_fb", fa_fb(), [F, F, F, T, T]),
        fx("gfa_gfb", gfa_gfb(), [T, F, F, T, T]),
        fx("gfa_fgb", gfa_fgb(), [T, T, T, T, T]),
        fx("g_p_or_xp", g_p_or_xp(), [F, T, T, T, T]),
        fx("fin_bb", fin_bb(), [T, T, T, T, T]),
        fx("abc_omega", abc_omega(), [F, F, F, T, T]),
        fx("aw_bw", aw_bw(), [F, T, F, T, T]),
        fx("aw_babw", aw_babw(), [F, F, F, F, T]),
        fx("odd_blocks", odd_blocks(), [T, F, F, F, F]),
    ]
}

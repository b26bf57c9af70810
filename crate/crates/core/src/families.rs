//! Concrete positional families: `Σ*(SR)^ω` with a subword-closed `R` given by
//! an anti-dictionary, Rabin conditions built from them, and unions of `FG(A)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::algebra::{boolean_combine, syntactic_quotient, BoolOp, WilkeAlgebra};
use crate::automata::{dpa_to_wilke, Dfa, Dpa};
use crate::error::{Error, Result};
use crate::words::{subword_leq, Alphabet, UpWord, Word};

/// Minimal forbidden subwords of a subword-closed language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiDictionary {
    alphabet: Alphabet,
    words: Vec<Word>,
}

fn minimize(words: Vec<Word>) -> Vec<Word> {
    let mut ws: Vec<Word> = words.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    ws.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Word> = Vec::new();
    for w in ws {
        if !kept.iter().any(|k| subword_leq(k.letters(), w.letters())) {
            kept.push(w);
        }
    }
    kept
}

impl AntiDictionary {
    /// Builds a dictionary, dropping words that contain another entry.
    pub fn new(alphabet: Alphabet, words: Vec<Word>) -> Result<Self> {
        for w in &words {
            alphabet.check_word(w)?;
        }
        let n = words.len();
        let kept = minimize(words);
        if kept.len() != n {
            log::warn!("anti-dictionary was not minimal; kept {} of {n} words", kept.len());
        }
        Ok(AntiDictionary { alphabet, words: kept })
    }

    pub fn parse(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let ws = words.iter().map(|w| alphabet.parse_word(w)).collect::<Result<Vec<_>>>()?;
        AntiDictionary::new(alphabet, ws)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Entries in shortlex order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_minimal(&self) -> bool {
        minimize(self.words.clone()).len() == self.words.len()
    }

    /// The word avoids every entry.
    pub fn allows(&self, w: &[usize]) -> bool {
        self.words.iter().all(|d| !subword_leq(d.letters(), w))
    }
}

/// Split `xy`, `uv` of dictionary words for which neither `xv` nor `uy`
/// contains an entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    pub x: String,
    pub y: String,
    pub u: String,
    pub v: String,
}

/// Total order of residuals, decided on the dictionary: every `xy, uv ∈ D`
/// has some entry below `xv` or below `uy`.
pub fn antidict_totally_ordered(d: &AntiDictionary) -> Result<(bool, Option<SplitWitness>)> {
    if !d.is_minimal() {
        return Err(Error::InvalidFamily("anti-dictionary is not minimal".into()));
    }
    let fmt = |s: &[usize]| d.alphabet.format_word(&Word(s.to_vec()));
    for w1 in &d.words {
        for w2 in &d.words {
            for i in 0..=w1.len() {
                let (x, y) = w1.letters().split_at(i);
                for j in 0..=w2.len() {
                    let (u, v) = w2.letters().split_at(j);
                    let xv: Vec<usize> = x.iter().chain(v).copied().collect();
                    let uy: Vec<usize> = u.iter().chain(y).copied().collect();
                    if d.allows(&xv) && d.allows(&uy) {
                        return Ok((false, Some(SplitWitness { x: fmt(x), y: fmt(y), u: fmt(u), v: fmt(v) })));
                    }
                }
            }
        }
    }
    Ok((true, None))
}

/// `D ∪ {a}`, re-minimized.
pub fn antidict_extend_letter(d: &AntiDictionary, a: usize) -> Result<AntiDictionary> {
    let mut words = d.words.clone();
    words.push(Word(vec![a]));
    d.alphabet.check_word(&Word(vec![a]))?;
    Ok(AntiDictionary { alphabet: d.alphabet.clone(), words: minimize(words) })
}

/// DFA for the words avoiding every entry. A state records, per entry, the
/// length of its longest prefix embedded so far; one absorbing state rejects.
pub fn subseq_dfa(d: &AntiDictionary) -> Dfa {
    let k = d.alphabet.len();
    let start = vec![0usize; d.words.len()];
    let dead = |v: &[usize]| v.iter().zip(&d.words).any(|(&c, w)| c == w.len());
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut states: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    // the empty entry rejects everything, including the empty word
    let start = if dead(&start) { d.words.iter().map(Word::len).collect() } else { start };
    index.insert(start.clone(), 0);
    states.push(start);
    queue.push_back(0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    while let Some(q) = queue.pop_front() {
        let cur = states[q].clone();
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: Vec<usize> = if dead(&cur) {
                cur.clone()
            } else {
                cur.iter().zip(&d.words).map(|(&c, w)| if c < w.len() && w.0[c] == a { c + 1 } else { c }).collect()
            };
            // all dead vectors collapse into one sink
            let key = if dead(&next) { vec![usize::MAX] } else { next.clone() };
            let t = match index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = states.len();
                    index.insert(key, t);
                    states.push(next);
                    queue.push_back(t);
                    t
                }
            };
            row.push(t);
        }
        if delta.len() <= q {
            delta.resize(q + 1, Vec::new());
        }
        delta[q] = row;
    }
    let accepting = states.iter().map(|v| !dead(v)).collect();
    Dfa { alphabet: d.alphabet.clone(), initial: 0, delta, accepting }
}

/// `Σ*(SR)^ω`: infinitely many `S`-letters, and eventually every block between
/// two of them lies in `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrFamily {
    s_letters: Vec<usize>,
    antidict: AntiDictionary,
}

impl SrFamily {
    pub fn new(s_letters: impl IntoIterator<Item = usize>, antidict: AntiDictionary) -> Result<Self> {
        let s: Vec<usize> = s_letters.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if s.is_empty() {
            return Err(Error::InvalidFamily("S must contain a letter".into()));
        }
        let k = antidict.alphabet.len();
        if let Some(&a) = s.iter().find(|&&a| a >= k) {
            return Err(Error::UnknownLetter(format!("#{a}")));
        }
        if let Some(w) = antidict.words.iter().find(|w| w.letters().iter().any(|a| s.contains(a))) {
            return Err(Error::InvalidFamily(format!(
                "anti-dictionary entry {:?} uses a letter of S",
                antidict.alphabet.format_word(w)
            )));
        }
        Ok(SrFamily { s_letters: s, antidict })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.antidict.alphabet
    }

    pub fn s_letters(&self) -> &[usize] {
        &self.s_letters
    }

    pub fn antidict(&self) -> &AntiDictionary {
        &self.antidict
    }

    fn is_s(&self, a: usize) -> bool {
        self.s_letters.binary_search(&a).is_ok()
    }
}

pub fn sr_membership(fam: &SrFamily, w: &UpWord) -> bool {
    let v = w.period().letters();
    let Some(first) = v.iter().position(|&a| fam.is_s(a)) else { return false };
    // rotate so the period starts right after an S-letter
    let mut rot = v.to_vec();
    rot.rotate_left(first + 1);
    rot.split(|&a| fam.is_s(a)).all(|block| fam.antidict.allows(block))
}

/// Parity automaton over the block DFA: an `S`-letter closing a block in `R`
/// has priority 2, one closing a block outside `R` has 3, other letters have 1.
pub fn sr_to_dpa(fam: &SrFamily) -> Dpa {
    let m = subseq_dfa(&fam.antidict);
    let k = fam.alphabet().len();
    let delta = (0..m.states())
        .map(|q| {
            (0..k)
                .map(|a| {
                    if fam.is_s(a) {
                        (m.initial, if m.accepting[q] { 2 } else { 3 })
                    } else {
                        (m.delta[q][a], 1)
                    }
                })
                .collect()
        })
        .collect();
    let names = (0..m.states()).map(|q| format!("r{q}")).collect();
    Dpa::new(fam.alphabet().clone(), names, m.initial, delta).expect("block DFA is complete")
}

/// Rabin pair: `U` visited infinitely often, `V` finitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabinPair {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

/// The SR family of one pair: `S = U \ V` and every letter of `V` forbidden.
pub fn rabin_pair_family(alphabet: &Alphabet, pair: &RabinPair) -> Result<SrFamily> {
    let s: Vec<usize> = pair.u.iter().copied().filter(|a| !pair.v.contains(a)).collect();
    if s.is_empty() {
        return Err(Error::InvalidFamily("U \\ V is empty".into()));
    }
    let words = pair.v.iter().map(|&a| Word(vec![a])).collect();
    SrFamily::new(s, AntiDictionary::new(alphabet.clone(), words)?)
}

pub fn rabin_membership(pairs: &[RabinPair], w: &UpWord) -> bool {
    let period = w.period().letters();
    pairs.iter().any(|p| p.u.iter().any(|a| period.contains(a)) && p.v.iter().all(|a| !period.contains(a)))
}

/// Union of the per-pair SR languages, reduced to its syntactic algebra.
pub fn rabin_family(alphabet: &Alphabet, pairs: &[RabinPair]) -> Result<WilkeAlgebra> {
    let (first, rest) = pairs.split_first().ok_or_else(|| Error::InvalidFamily("no Rabin pairs".into()))?;
    let compile = |p: &RabinPair| -> Result<WilkeAlgebra> {
        syntactic_quotient(&dpa_to_wilke(&sr_to_dpa(&rabin_pair_family(alphabet, p)?))?)
    };
    let mut acc = compile(first)?;
    for p in rest {
        acc = syntactic_quotient(&boolean_combine(&acc, &compile(p)?, BoolOp::Union)?)?;
    }
    Ok(acc)
}

/// `FG(A_1) ∪ … ∪ FG(A_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgFamily {
    alphabet: Alphabet,
    sets: Vec<BTreeSet<usize>>,
}

impl FgFamily {
    pub fn new(alphabet: Alphabet, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        if let Some(&a) = sets.iter().flatten().find(|&&a| a >= alphabet.len()) {
            return Err(Error::UnknownLetter(format!("#{a}")));
        }
        let sets = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(FgFamily { alphabet, sets })
    }

    pub fn parse(alphabet: Alphabet, sets: &[&str]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|s| Ok(alphabet.parse_word(s)?.0.into_iter().collect()))
            .collect::<Result<Vec<_>>>()?;
        FgFamily::new(alphabet, sets)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }
}

pub fn fg_membership(fam: &FgFamily, w: &UpWord) -> bool {
    fam.sets.iter().any(|a| w.period().letters().iter().all(|l| a.contains(l)))
}

/// Pairwise intersections.
pub fn fg_intersect(f: &FgFamily, g: &FgFamily) -> Result<FgFamily> {
    if f.alphabet != g.alphabet {
        return Err(Error::AlphabetMismatch("FG families over different alphabets".into()));
    }
    let sets = f.sets.iter().flat_map(|a| g.sets.iter().map(move |b| a & b)).collect();
    FgFamily::new(f.alphabet.clone(), sets)
}

/// Preimage under the morphism sending source letter `x` to `h[x]`: each `A_i`
/// becomes the set of letters whose image stays inside `A_i`.
pub fn fg_inverse_image(fam: &FgFamily, source: Alphabet, h: &[Word]) -> Result<FgFamily> {
    if h.len() != source.len() {
        return Err(Error::Shape(format!("morphism needs {} images", source.len())));
    }
    for w in h {
        if w.is_empty() {
            return Err(Error::InvalidFamily("morphism images must be non-empty".into()));
        }
        fam.alphabet.check_word(w)?;
    }
    let sets = fam
        .sets
        .iter()
        .map(|a| (0..h.len()).filter(|&x| h[x].letters().iter().all(|l| a.contains(l))).collect())
        .collect();
    FgFamily::new(source, sets)
}

/// Content algebra: `S_+` and `S_ω` are non-empty letter sets, products are
/// unions, `s^ω = s`, and `s · x = x`.
pub fn fg_algebra(fam: &FgFamily) -> Result<WilkeAlgebra> {
    let k = fam.alphabet.len();
    if k > 12 {
        return Err(Error::Unsupported("FG algebras support at most 12 letters".into()));
    }
    let n = (1usize << k) - 1;
    // element i is the letter set with bitmask i + 1
    let name = |i: usize| {
        let m = i + 1;
        let letters: Vec<&str> = (0..k).filter(|b| m >> b & 1 == 1).map(|b| fam.alphabet.name(b)).collect();
        format!("{{{}}}", letters.join(","))
    };
    let names: Vec<String> = (0..n).map(name).collect();
    let product = (0..n).map(|i| (0..n).map(|j| ((i + 1) | (j + 1)) - 1).collect()).collect();
    let mixed = (0..n).map(|_| (0..n).collect()).collect();
    let omega = (0..n).collect();
    let letter_image = (0..k).map(|a| (1usize << a) - 1).collect();
    let within = |i: usize, a: &BTreeSet<usize>| (0..k).all(|b| (i + 1) >> b & 1 == 0 || a.contains(&b));
    let accepting = (0..n).filter(|&i| fam.sets.iter().any(|a| within(i, a))).collect();
    WilkeAlgebra::new(fam.alphabet.clone(), names.clone(), names, product, mixed, omega, letter_image, accepting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::classify;
    use crate::automata::{dfa_residual_order, dpa_up_membership};
    use crate::random::random_up_words;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab")
    }

    fn fin_bb_family() -> SrFamily {
        SrFamily::new([0], AntiDictionary::parse(ab(), &["bb"]).unwrap()).unwrap()
    }

    #[test]
    fn antidict_examples() {
        let d = AntiDictionary::parse(ab(), &["bb"]).unwrap();
        assert!(antidict_totally_ordered(&d).unwrap().0);
        let d = AntiDictionary::parse(ab(), &["ab", "ba"]).unwrap();
        let (ok, w) = antidict_totally_ordered(&d).unwrap();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!((w.x.as_str(), w.y.as_str(), w.u.as_str(), w.v.as_str()), ("a", "b", "b", "a"));
        let d = AntiDictionary::parse(Alphabet::from_chars("abc"), &["bb", "a"]).unwrap();
        assert!(antidict_totally_ordered(&d).unwrap().0);
    }

    #[test]
    fn construction_minimizes() {
        let d = AntiDictionary::parse(ab(), &["ab", "a", "aab"]).unwrap();
        assert_eq!(d.words(), &[Word(vec![0])]);
    }

    #[test]
    fn extend_examples() {
        let d = AntiDictionary::parse(ab(), &["bb"]).unwrap();
        let e = antidict_extend_letter(&d, 0).unwrap();
        assert_eq!(e.words(), &[Word(vec![0]), Word(vec![1, 1])]);
        let d = AntiDictionary::parse(ab(), &["ab"]).unwrap();
        assert_eq!(antidict_extend_letter(&d, 0).unwrap().words(), &[Word(vec![0])]);
    }

    #[test]
    fn subseq_dfa_examples() {
        let w = |s: &str| ab().parse_word(s).unwrap().0;
        let m = subseq_dfa(&AntiDictionary::parse(ab(), &["bb"]).unwrap());
        assert!(m.accepts(&w("ab")) && m.accepts(&w("ba")) && m.accepts(&w("")));
        // scattered embedding: both contain b·b
        assert!(!m.accepts(&w("abba")) && !m.accepts(&w("bab")));
        assert!(dfa_residual_order(&m));
        let m = subseq_dfa(&AntiDictionary::parse(ab(), &["a"]).unwrap());
        for word in Word::all_up_to(2, 0, 4) {
            assert_eq!(m.accepts(word.letters()), !word.letters().contains(&0));
        }
        let m = subseq_dfa(&AntiDictionary::parse(ab(), &["ab", "ba"]).unwrap());
        assert!(!dfa_residual_order(&m));
    }

    #[test]
    fn sr_examples() {
        let fam = fin_bb_family();
        let up = |s: &str| ab().parse_up_word(s).unwrap();
        assert!(sr_membership(&fam, &up("(ab)")));
        assert!(!sr_membership(&fam, &up("(aabb)")));
        assert!(!sr_membership(&fam, &up("a(b)")));
        let d = sr_to_dpa(&fam);
        assert!(dpa_up_membership(&d, &up("(ab)")).unwrap());
        assert!(!dpa_up_membership(&d, &up("(aabb)")).unwrap());
        let all = SrFamily::new([0, 1], AntiDictionary::new(ab(), vec![]).unwrap()).unwrap();
        assert!(sr_membership(&all, &up("(a)")));
        assert!(dpa_up_membership(&sr_to_dpa(&all), &up("(a)")).unwrap());
    }

    #[test]
    fn sr_family_rejects_s_letters_in_dictionary() {
        let d = AntiDictionary::parse(ab(), &["ab"]).unwrap();
        assert!(matches!(SrFamily::new([0], d), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn rabin_examples() {
        let abc = Alphabet::from_chars("abc");
        let pairs = [RabinPair { u: vec![0], v: vec![1] }];
        let a = rabin_family(&abc, &pairs).unwrap();
        let up = |s: &str| abc.parse_up_word(s).unwrap();
        assert!(a.up_membership(&up("(ac)")).unwrap());
        assert!(!a.up_membership(&up("(ab)")).unwrap());
        assert!(classify(&a).unwrap().edge_positional);
    }

    #[test]
    fn rabin_encodes_parity() {
        // letters are priorities 0..3, max-even acceptance: (2 inf, 3 fin) or (0 inf, 1..3 fin)
        let pr = Alphabet::new(["0", "1", "2", "3"]).unwrap();
        let pairs = [RabinPair { u: vec![2], v: vec![3] }, RabinPair { u: vec![0], v: vec![1, 2, 3] }];
        let a = rabin_family(&pr, &pairs).unwrap();
        for w in random_up_words(4, 500, 4, 5, 3) {
            let max = *w.period().letters().iter().max().unwrap();
            assert_eq!(a.up_membership(&w).unwrap(), max % 2 == 0);
            assert_eq!(rabin_membership(&pairs, &w), max % 2 == 0);
        }
        assert!(classify(&a).unwrap().edge_positional);
    }

    #[test]
    fn rabin_rejects_empty_s() {
        let pairs = [RabinPair { u: vec![0], v: vec![0] }];
        assert!(rabin_family(&ab(), &pairs).is_err());
        assert!(rabin_family(&ab(), &[]).is_err());
    }

    #[test]
    fn fg_examples() {
        let abc = Alphabet::from_chars("abc");
        let up = |s: &str| abc.parse_up_word(s).unwrap();
        let fam = FgFamily::parse(abc.clone(), &["a"]).unwrap();
        assert!(fg_membership(&fam, &up("b(a)")));
        let f = FgFamily::parse(abc.clone(), &["ab"]).unwrap();
        let g = FgFamily::parse(abc.clone(), &["bc"]).unwrap();
        assert_eq!(fg_intersect(&f, &g).unwrap(), FgFamily::parse(abc.clone(), &["b"]).unwrap());
        let xy = Alphabet::from_chars("xy");
        let h = [abc.parse_word("ab").unwrap(), abc.parse_word("ac").unwrap()];
        let inv = fg_inverse_image(&f, xy.clone(), &h).unwrap();
        assert_eq!(inv, FgFamily::parse(xy, &["x"]).unwrap());
    }

    #[test]
    fn fg_algebra_agrees_and_is_positional() {
        let abc = Alphabet::from_chars("abc");
        let fam = FgFamily::parse(abc, &["ab", "c"]).unwrap();
        let a = fg_algebra(&fam).unwrap();
        assert!(a.validate().is_empty());
        for w in random_up_words(3, 300, 3, 5, 1) {
            assert_eq!(a.up_membership(&w).unwrap(), fg_membership(&fam, &w));
        }
        let r = classify(&a).unwrap();
        assert!(r.prefix_independent && r.edge_positional);
    }
}

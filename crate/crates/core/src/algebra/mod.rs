//! Finite Wilke algebras `(S_+, S_ω)` recognising ω-regular languages, and the
//! positionality checks that run on them.

mod checks;
mod classify;
mod product;
mod quotient;

pub use checks::{
    check_closure_conditions, check_prefix_independent_positionality, is_aperiodic,
    is_prefix_independent, residuals, ClosureMode, ClosureVerdict, ResidualGroup, ResidualSet,
    Residuals,
};
pub use classify::{classify, ClassificationReport};
pub use product::{boolean_combine, complement, product_algebra, BoolOp, ProductAlgebra};
pub(crate) use product::product_with_images;
pub use quotient::syntactic_quotient;

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Alphabet, UpWord, Word};

/// An element of `S_+` or the identity adjoined for empty words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Id,
    Plus(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilkeAlgebra {
    alphabet: Alphabet,
    splus: Vec<String>,
    somega: Vec<String>,
    product: Vec<Vec<usize>>,
    mixed: Vec<Vec<usize>>,
    omega: Vec<usize>,
    letter_image: Vec<usize>,
    accepting: Vec<bool>,
}

/// One named component of a counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPart {
    pub role: String,
    pub element: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub parts: Vec<WitnessPart>,
}

impl Witness {
    pub fn element(&self, role: &str) -> Option<&str> {
        self.parts.iter().find(|p| p.role == role).map(|p| p.element.as_str())
    }
}

impl WilkeAlgebra {
    /// Builds an algebra after checking that all tables are shape-complete.
    /// Axioms are checked separately by [`WilkeAlgebra::validate`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabet: Alphabet,
        splus: Vec<String>,
        somega: Vec<String>,
        product: Vec<Vec<usize>>,
        mixed: Vec<Vec<usize>>,
        omega: Vec<usize>,
        letter_image: Vec<usize>,
        accepting: Vec<usize>,
    ) -> Result<Self> {
        let (n, m) = (splus.len(), somega.len());
        let shape = |msg: String| Err(Error::Shape(msg));
        if n == 0 || m == 0 {
            return shape("S_+ and S_ω must be non-empty".into());
        }
        if product.len() != n || product.iter().any(|r| r.len() != n) {
            return shape(format!("product table must be {n}x{n}"));
        }
        if mixed.len() != n || mixed.iter().any(|r| r.len() != m) {
            return shape(format!("mixed table must be {n}x{m}"));
        }
        if omega.len() != n {
            return shape(format!("omega table must have {n} entries"));
        }
        if letter_image.len() != alphabet.len() {
            return shape(format!("letter image must have {} entries", alphabet.len()));
        }
        if product.iter().flatten().chain(&letter_image).any(|&s| s >= n) {
            return shape("S_+ index out of range".into());
        }
        if mixed.iter().flatten().chain(&omega).chain(&accepting).any(|&x| x >= m) {
            return shape("S_ω index out of range".into());
        }
        let mut acc = vec![false; m];
        for x in accepting {
            acc[x] = true;
        }
        Ok(WilkeAlgebra { alphabet, splus, somega, product, mixed, omega, letter_image, accepting: acc })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn splus_len(&self) -> usize {
        self.splus.len()
    }

    pub fn somega_len(&self) -> usize {
        self.somega.len()
    }

    pub fn splus_names(&self) -> &[String] {
        &self.splus
    }

    pub fn somega_names(&self) -> &[String] {
        &self.somega
    }

    pub fn product_table(&self) -> &[Vec<usize>] {
        &self.product
    }

    pub fn mixed_table(&self) -> &[Vec<usize>] {
        &self.mixed
    }

    pub fn omega_table(&self) -> &[usize] {
        &self.omega
    }

    pub fn letter_images(&self) -> &[usize] {
        &self.letter_image
    }

    pub fn accepting_set(&self) -> Vec<usize> {
        (0..self.somega.len()).filter(|&x| self.accepting[x]).collect()
    }

    /// Same tables with a different accepting set.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = usize>) -> WilkeAlgebra {
        let mut a = self.clone();
        a.accepting = vec![false; a.somega.len()];
        for x in accepting {
            a.accepting[x] = true;
        }
        a
    }

    pub fn name(&self, e: Elem) -> &str {
        match e {
            Elem::Id => "id",
            Elem::Plus(s) => &self.splus[s],
        }
    }

    pub fn omega_name(&self, x: usize) -> &str {
        &self.somega[x]
    }

    pub fn letter(&self, a: usize) -> usize {
        self.letter_image[a]
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.product[s][t]
    }

    pub fn mixed(&self, s: usize, x: usize) -> usize {
        self.mixed[s][x]
    }

    pub fn omega(&self, s: usize) -> usize {
        self.omega[s]
    }

    pub fn accepts(&self, x: usize) -> bool {
        self.accepting[x]
    }

    /// `p · s` with `p` possibly the identity.
    pub fn lmul(&self, p: Elem, s: usize) -> usize {
        match p {
            Elem::Id => s,
            Elem::Plus(p) => self.product[p][s],
        }
    }

    /// `s · p` with `p` possibly the identity.
    pub fn rmul(&self, s: usize, p: Elem) -> usize {
        match p {
            Elem::Id => s,
            Elem::Plus(p) => self.product[s][p],
        }
    }

    pub fn emul(&self, p: Elem, q: Elem) -> Elem {
        match (p, q) {
            (Elem::Id, q) => q,
            (p, Elem::Id) => p,
            (Elem::Plus(p), Elem::Plus(q)) => Elem::Plus(self.product[p][q]),
        }
    }

    /// Mixed product `p · x` with `p` possibly the identity.
    pub fn act(&self, p: Elem, x: usize) -> usize {
        match p {
            Elem::Id => x,
            Elem::Plus(p) => self.mixed[p][x],
        }
    }

    /// All of `S_+ ∪ {id}`, identity first.
    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        std::iter::once(Elem::Id).chain((0..self.splus.len()).map(Elem::Plus))
    }

    pub fn image_of_word(&self, w: &Word) -> Result<Elem> {
        self.alphabet.check_word(w)?;
        Ok(self.image(w.letters()))
    }

    pub(crate) fn image(&self, w: &[usize]) -> Elem {
        w.iter().fold(Elem::Id, |acc, &a| Elem::Plus(self.lmul(acc, self.letter_image[a])))
    }

    /// Image in `S_ω` of an UP-word.
    pub fn omega_image(&self, w: &UpWord) -> Result<usize> {
        self.alphabet.check_word(w.prefix())?;
        self.alphabet.check_word(w.period())?;
        Ok(self.omega_image_unchecked(w))
    }

    pub(crate) fn omega_image_unchecked(&self, w: &UpWord) -> usize {
        let Elem::Plus(v) = self.image(w.period().letters()) else { unreachable!("non-empty period") };
        self.act(self.image(w.prefix().letters()), self.omega[v])
    }

    pub fn up_membership(&self, w: &UpWord) -> Result<bool> {
        Ok(self.accepting[self.omega_image(w)?])
    }

    /// Shortest preimage word of each `S_+` element (BFS over letter images);
    /// `None` for elements that are not word images.
    pub fn shortest_words(&self) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.splus.len()];
        let mut queue = VecDeque::new();
        for (a, &s) in self.letter_image.iter().enumerate() {
            if words[s].is_none() {
                words[s] = Some(Word(vec![a]));
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for (a, &l) in self.letter_image.iter().enumerate() {
                let t = self.product[s][l];
                if words[t].is_none() {
                    let mut w = words[s].clone().unwrap();
                    w.0.push(a);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// Shortest preimage beginning with letter `l` of each element of `P_l`.
    pub fn shortest_words_from(&self, l: usize) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.splus.len()];
        let first = self.letter_image[l];
        words[first] = Some(Word(vec![l]));
        let mut queue = VecDeque::from([first]);
        while let Some(s) = queue.pop_front() {
            for (a, &g) in self.letter_image.iter().enumerate() {
                let t = self.product[s][g];
                if words[t].is_none() {
                    let mut w = words[s].clone().unwrap();
                    w.0.push(a);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// A short UP-word preimage for each `S_ω` element reachable as `t · s^ω`.
    pub fn omega_words(&self) -> Vec<Option<UpWord>> {
        let words = self.shortest_words();
        let mut best: Vec<Option<UpWord>> = vec![None; self.somega.len()];
        let size = |w: &UpWord| w.prefix().len() + w.period().len();
        for (s, ws) in words.iter().enumerate() {
            let Some(ws) = ws else { continue };
            for t in self.elems() {
                let wt = match t {
                    Elem::Id => Word::empty(),
                    Elem::Plus(t) => match &words[t] {
                        Some(w) => w.clone(),
                        None => continue,
                    },
                };
                let x = self.act(t, self.omega[s]);
                let cand = UpWord::new(wt, ws.clone()).expect("non-empty period");
                if best[x].as_ref().map_or(true, |b| size(&cand) < size(b)) {
                    best[x] = Some(cand);
                }
            }
        }
        best
    }

    /// Trimness: every element of `S_+` is a word image and every element of
    /// `S_ω` is `s^ω` or `t · s^ω`. Returns a description of the first failure.
    pub fn trim_violation(&self) -> Option<String> {
        let words = self.shortest_words();
        if let Some(s) = words.iter().position(Option::is_none) {
            return Some(format!("S_+ element {} is not the image of a word", self.splus[s]));
        }
        let reached = self.omega_words();
        if let Some(x) = reached.iter().position(Option::is_none) {
            return Some(format!("S_ω element {} is not of the form t·s^ω", self.somega[x]));
        }
        None
    }

    pub fn is_trim(&self) -> bool {
        self.trim_violation().is_none()
    }

    pub(crate) fn require_trim(&self) -> Result<()> {
        match self.trim_violation() {
            Some(v) => Err(Error::NotTrim(v)),
            None => Ok(()),
        }
    }

    /// Lists violated axioms; each entry names the identity and one witness.
    pub fn validate(&self) -> Vec<String> {
        let n = self.splus.len();
        let m = self.somega.len();
        let sp = &self.splus;
        let mut out = Vec::new();
        'assoc: for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if self.mul(self.mul(s, t), u) != self.mul(s, self.mul(t, u)) {
                        out.push(format!("associativity fails at ({},{},{})", sp[s], sp[t], sp[u]));
                        break 'assoc;
                    }
                }
            }
        }
        'mixed: for s in 0..n {
            for t in 0..n {
                for x in 0..m {
                    if self.mixed(self.mul(s, t), x) != self.mixed(s, self.mixed(t, x)) {
                        out.push(format!(
                            "mixed associativity fails at ({},{},{})",
                            sp[s], sp[t], self.somega[x]
                        ));
                        break 'mixed;
                    }
                }
            }
        }
        'conj: for s in 0..n {
            for t in 0..n {
                if self.omega(self.mul(s, t)) != self.mixed(s, self.omega(self.mul(t, s))) {
                    out.push(format!("(st)^ω = s(ts)^ω fails at ({},{})", sp[s], sp[t]));
                    break 'conj;
                }
            }
        }
        'power: for s in 0..n {
            let mut p = s;
            for k in 2..=n + 1 {
                p = self.mul(p, s);
                if self.omega(p) != self.omega(s) {
                    out.push(format!("(s^{k})^ω = s^ω fails at {}", sp[s]));
                    break 'power;
                }
            }
        }
        if let Some(v) = self.trim_violation() {
            out.push(v);
        }
        out
    }

    pub fn witness_part(&self, role: &str, e: Elem, words: &[Option<Word>]) -> WitnessPart {
        let word = match e {
            Elem::Id => String::new(),
            Elem::Plus(s) => words[s].as_ref().map(|w| self.alphabet.format_word(w)).unwrap_or_default(),
        };
        WitnessPart { role: role.into(), element: self.name(e).into(), word }
    }

    pub fn omega_witness_part(&self, role: &str, x: usize, words: &[Option<UpWord>]) -> WitnessPart {
        let word = words[x].as_ref().map(|w| self.alphabet.format_up_word(w)).unwrap_or_default();
        WitnessPart { role: role.into(), element: self.somega[x].clone(), word }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_algebra_is_valid() {
        let a = fixtures::trivial();
        assert!(a.validate().is_empty());
    }

    #[test]
    fn broken_associativity_is_reported() {
        // s·t = e0 except e0·e0 = e1, which is not associative
        let product = vec![vec![1, 0], vec![0, 0]];
        let a = WilkeAlgebra::new(
            Alphabet::from_chars("a"),
            vec!["e0".into(), "e1".into()],
            vec!["x".into()],
            product,
            vec![vec![0]; 2],
            vec![0; 2],
            vec![0],
            vec![0],
        )
        .unwrap();
        let v = a.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].starts_with("associativity") && v[0].contains("e0"), "{v:?}");
    }

    #[test]
    fn shape_errors() {
        let r = WilkeAlgebra::new(
            Alphabet::from_chars("a"),
            vec!["s".into()],
            vec!["x".into()],
            vec![vec![0, 0]],
            vec![vec![0]],
            vec![0],
            vec![0],
            vec![],
        );
        assert!(matches!(r, Err(Error::Shape(_))));
    }

    #[test]
    fn gf_a_images_and_membership() {
        let a = fixtures::gf_a();
        assert!(a.validate().is_empty());
        let ab = a.alphabet().clone();
        let img = |s: &str| a.name(a.image_of_word(&ab.parse_word(s).unwrap()).unwrap()).to_string();
        assert_eq!(img("a"), "has-a");
        assert_eq!(img("bb"), "no-a");
        assert_eq!(img(""), "id");
        let up = |s: &str| a.up_membership(&ab.parse_up_word(s).unwrap()).unwrap();
        assert!(up("(ab)"));
        assert!(!up("a(b)"));
        assert!(a.image_of_word(&Word(vec![7])).is_err());
    }

    #[test]
    fn finbb_contains_ab_omega() {
        let a = fixtures::fin_bb();
        let w = a.alphabet().parse_up_word("(ab)").unwrap();
        assert!(a.up_membership(&w).unwrap());
    }

    #[test]
    fn non_trim_is_detected() {
        let a = fixtures::gf_a();
        // an extra S_+ element nobody reaches
        let b = WilkeAlgebra::new(
            a.alphabet().clone(),
            vec!["has-a".into(), "no-a".into(), "ghost".into()],
            a.somega_names().to_vec(),
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            vec![vec![0, 0], vec![0, 1], vec![0, 1]],
            vec![0, 1, 1],
            a.letter_images().to_vec(),
            vec![0],
        )
        .unwrap();
        assert!(!b.is_trim());
        assert!(b.validate().iter().any(|v| v.contains("ghost")));
    }
}

//! Finite words, ultimately periodic words and the subword order.

use std::fmt;

use crate::error::{Error, Result};

/// Ordered list of distinct letter names. Letters are addressed by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::Schema("alphabet must not be empty".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.contains(|c: char| c.is_whitespace() || c == '.' || c == '(' || c == ')') {
                return Err(Error::Schema(format!("invalid letter name {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::Schema(format!("duplicate letter {l:?}")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// One letter per character of `s`.
    pub fn from_chars(s: &str) -> Self {
        Alphabet::new(s.chars().map(|c| c.to_string())).expect("distinct characters")
    }

    /// The truth-vector alphabet over `width` propositions; letter `i` has bit `j`
    /// set iff proposition `j` holds. Names are bit strings, proposition 0 first.
    pub fn truth_vectors(width: usize) -> Self {
        let letters = (0..1usize << width)
            .map(|i| (0..width).map(|j| if i >> j & 1 == 1 { '1' } else { '0' }).collect::<String>());
        if width == 0 {
            return Alphabet { letters: vec!["-".into()] };
        }
        Alphabet::new(letters).expect("distinct bit strings")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.letters[letter]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.letters
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    fn single_chars(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses a finite word. Over single-character alphabets the word is read
    /// character by character; otherwise letters are separated by `.` or whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        let mut syms = Vec::new();
        if self.single_chars() && !text.contains('.') && !text.contains(' ') {
            for c in text.chars() {
                syms.push(self.index_of(&c.to_string())?);
            }
        } else {
            for tok in text.split(|c: char| c == '.' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                syms.push(self.index_of(tok)?);
            }
        }
        Ok(Word(syms))
    }

    /// Parses `prefix(period)`; a bare word `w` is read as `(w)`.
    pub fn parse_up_word(&self, text: &str) -> Result<UpWord> {
        let text = text.trim();
        let (prefix, period) = match text.find('(') {
            Some(open) => {
                let close = text
                    .rfind(')')
                    .filter(|&c| c > open && c == text.len() - 1)
                    .ok_or_else(|| Error::Parse(format!("malformed UP-word {text:?}")))?;
                (&text[..open], &text[open + 1..close])
            }
            None => ("", text),
        };
        UpWord::new(self.parse_word(prefix)?, self.parse_word(period)?)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let sep = if self.single_chars() { "" } else { "." };
        w.0.iter().map(|&a| self.letters[a].as_str()).collect::<Vec<_>>().join(sep)
    }

    pub fn format_up_word(&self, w: &UpWord) -> String {
        format!("{}({})", self.format_word(&w.prefix), self.format_word(&w.period))
    }

    /// Checks that every symbol of `w` is a letter index of this alphabet.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&a| a >= self.len()) {
            Some(a) => Err(Error::UnknownLetter(format!("#{a}"))),
            None => Ok(()),
        }
    }
}

/// A finite word as a sequence of letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// All words of length `min..=max` over `k` letters, shortlex order.
    pub fn all_up_to(k: usize, min: usize, max: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer = vec![Word::empty()];
        for len in 0..=max {
            if len >= min {
                out.extend(layer.iter().cloned());
            }
            layer = layer
                .iter()
                .flat_map(|w| (0..k).map(move |a| {
                    let mut v = w.0.clone();
                    v.push(a);
                    Word(v)
                }))
                .collect();
        }
        out
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpWord {
    prefix: Word,
    period: Word,
}

impl UpWord {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(UpWord { prefix, period })
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Letter at position `i` of the infinite word.
    pub fn at(&self, i: usize) -> usize {
        let p = self.prefix.len();
        if i < p {
            self.prefix.0[i]
        } else {
            self.period.0[(i - p) % self.period.len()]
        }
    }

    /// Canonical representative: primitive period and shortest prefix.
    pub fn normalize(&self) -> UpWord {
        let v = &self.period.0;
        let n = v.len();
        let root = (1..=n)
            .find(|&d| n % d == 0 && (d..n).all(|i| v[i] == v[i - d]))
            .unwrap_or(n);
        let mut period: Vec<usize> = v[..root].to_vec();
        let mut prefix = self.prefix.0.clone();
        while let (Some(&last), Some(&plast)) = (prefix.last(), period.last()) {
            if last != plast {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        UpWord { prefix: Word(prefix), period: Word(period) }
    }

    /// Shifts the word by dropping its first `k` letters.
    pub fn suffix(&self, k: usize) -> UpWord {
        let p = self.prefix.len();
        if k <= p {
            UpWord { prefix: Word(self.prefix.0[k..].to_vec()), period: self.period.clone() }
        } else {
            let mut period = self.period.0.clone();
            let n = period.len();
            period.rotate_left((k - p) % n);
            UpWord { prefix: Word::empty(), period: Word(period) }
        }
    }
}

/// Equality of the denoted infinite words.
pub fn up_equal(a: &UpWord, b: &UpWord) -> bool {
    a.normalize() == b.normalize()
}

/// `u` is a scattered subword of `v`.
pub fn subword_leq(u: &[usize], v: &[usize]) -> bool {
    let mut it = v.iter();
    u.iter().all(|a| it.any(|b| b == a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab")
    }

    fn up(s: &str) -> UpWord {
        ab().parse_up_word(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let n = up("ab(ab)").normalize();
        assert_eq!(ab().format_up_word(&n), "(ab)");
        let n = up("a(ba)").normalize();
        assert_eq!(ab().format_up_word(&n), "(ab)");
        let n = up("(abab)").normalize();
        assert_eq!(ab().format_up_word(&n), "(ab)");
        assert!(up_equal(&up("(a)"), &up("aaa(aa)")));
        assert!(!up_equal(&up("(ab)"), &up("(ba)")));
    }

    #[test]
    fn empty_period_rejected() {
        assert!(matches!(UpWord::new(Word::empty(), Word::empty()), Err(Error::EmptyPeriod)));
        assert!(ab().parse_up_word("a()").is_err());
    }

    #[test]
    fn subword_examples() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap().0;
        assert!(subword_leq(&w("bb"), &w("abab")));
        assert!(!subword_leq(&w("bb"), &w("aba")));
        assert!(subword_leq(&w(""), &w("")));
        assert!(!subword_leq(&w("a"), &w("")));
    }

    #[test]
    fn multi_char_letters_need_separators() {
        let a = Alphabet::new(["_", "p", "pq"]).unwrap();
        let w = a.parse_word("pq._.p").unwrap();
        assert_eq!(w.0, vec![2, 0, 1]);
        assert_eq!(a.format_word(&w), "pq._.p");
        assert!(a.parse_word("x").is_err());
    }

    #[test]
    fn truth_vector_names() {
        let a = Alphabet::truth_vectors(2);
        assert_eq!(a.letters(), &["00", "10", "01", "11"]);
    }

    fn arb_up() -> impl Strategy<Value = UpWord> {
        (prop::collection::vec(0..2usize, 0..5), prop::collection::vec(0..2usize, 1..5))
            .prop_map(|(u, v)| UpWord::new(Word(u), Word(v)).unwrap())
    }

    proptest! {
        #[test]
        fn normalize_preserves_the_word(w in arb_up()) {
            let n = w.normalize();
            for i in 0..40 {
                prop_assert_eq!(w.at(i), n.at(i));
            }
            prop_assert_eq!(n.normalize(), n.clone());
            prop_assert!(n.period().len() <= w.period().len());
        }

        #[test]
        fn up_equal_is_pointwise(a in arb_up(), b in arb_up()) {
            // prefixes shorter than 5 and period lcm at most 12: 40 positions decide equality
            let pointwise = (0..40).all(|i| a.at(i) == b.at(i));
            prop_assert_eq!(up_equal(&a, &b), pointwise);
        }
    }
}

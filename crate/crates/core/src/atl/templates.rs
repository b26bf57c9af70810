use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::formula::TemplateKind;
use crate::algebra::{syntactic_quotient, WilkeAlgebra};
use crate::automata::{dpa_to_wilke, Dpa};
use crate::error::{Error, Result};
use crate::words::{Alphabet, UpWord};

fn bit(v: usize, j: usize) -> bool {
    v >> j & 1 == 1
}

/// A deterministic parity automaton for the template over the truth vectors
/// of its arguments (bit `j` is argument `j`).
pub fn template_dpa(kind: TemplateKind) -> Dpa {
    let width = kind.arity();
    let alphabet = Alphabet::truth_vectors(width);
    // (state names, initial, step)
    let (states, step): (&[&str], fn(usize, usize) -> (usize, u32)) = match kind {
        TemplateKind::Next => (&["init", "check", "acc", "rej"], |q, v| match q {
            0 => (1, 1),
            1 if bit(v, 0) => (2, 2),
            1 => (3, 1),
            2 => (2, 2),
            _ => (3, 1),
        }),
        TemplateKind::Until => (&["wait", "acc", "rej"], |q, v| match q {
            0 if bit(v, 1) => (1, 2),
            0 if bit(v, 0) => (0, 1),
            0 => (2, 1),
            1 => (1, 2),
            _ => (2, 1),
        }),
        TemplateKind::Release => (&["wait", "acc", "rej"], |q, v| match q {
            0 if !bit(v, 1) => (2, 1),
            0 if bit(v, 0) => (1, 2),
            0 => (0, 2),
            1 => (1, 2),
            _ => (2, 1),
        }),
        TemplateKind::Gffg => (&["q"], |_, v| match (bit(v, 0), bit(v, 1)) {
            (_, false) => (0, 3),
            (true, true) => (0, 2),
            (false, true) => (0, 1),
        }),
        TemplateKind::Gffgg => (&["ok", "dead"], |q, v| match (q, bit(v, 0), bit(v, 1), bit(v, 2)) {
            (1, ..) | (_, _, _, false) => (1, 1),
            (_, _, false, _) => (0, 3),
            (_, true, true, _) => (0, 2),
            _ => (0, 1),
        }),
        TemplateKind::Gu => (&["ok", "dead"], |q, v| match (q, bit(v, 0), bit(v, 1)) {
            (1, ..) | (_, false, false) => (1, 1),
            (_, _, true) => (0, 2),
            _ => (0, 1),
        }),
        TemplateKind::Gxor => (&["last-true", "last-false", "dead"], |q, v| match (q, bit(v, 0)) {
            (2, _) | (1, false) => (2, 1),
            (_, true) => (0, 2),
            (_, false) => (1, 2),
        }),
    };
    let delta = (0..states.len()).map(|q| (0..alphabet.len()).map(|v| step(q, v)).collect()).collect();
    Dpa::new(alphabet, states.iter().map(|s| s.to_string()).collect(), 0, delta).expect("template DPA is total")
}

/// The syntactic algebra of the template, computed once per kind.
pub fn template_algebra(kind: TemplateKind) -> WilkeAlgebra {
    static CACHE: OnceLock<Mutex<HashMap<TemplateKind, WilkeAlgebra>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("template cache");
    map.entry(kind)
        .or_insert_with(|| {
            let a = dpa_to_wilke(&template_dpa(kind)).expect("template DPAs are small");
            syntactic_quotient(&a).expect("transition algebras are trim")
        })
        .clone()
}

/// Direct LTL semantics on `w`; letters are truth vectors of width
/// `kind.arity()`.
pub fn eval_path_on_lasso(kind: TemplateKind, w: &UpWord) -> Result<bool> {
    let width = kind.arity();
    let (p, q) = (w.prefix().len(), w.period().len());
    if let Some(&v) = w.prefix().letters().iter().chain(w.period().letters()).find(|&&v| v >> width != 0) {
        return Err(Error::Shape(format!("letter {v} is wider than {width} bits")));
    }
    let n = p + q;
    let holds = |i: usize, j: usize| bit(w.at(i), j);
    // positions 0..n cover every suffix; a witness for U is found within n steps
    let until = |i: usize, a: &dyn Fn(usize) -> bool, b: &dyn Fn(usize) -> bool| {
        (i..i + n).find(|&k| b(k)).is_some_and(|k| (i..k).all(|m| a(m)))
    };
    let inf = |j: usize| (p..n).any(|i| holds(i, j));
    let always_later = |j: usize| (p..n).all(|i| holds(i, j));
    let always = |j: usize| (0..n).all(|i| holds(i, j));
    Ok(match kind {
        TemplateKind::Next => holds(1, 0),
        TemplateKind::Until => until(0, &|i| holds(i, 0), &|i| holds(i, 1)),
        TemplateKind::Release => !until(0, &|i| !holds(i, 0), &|i| !holds(i, 1)),
        TemplateKind::Gffg => inf(0) && always_later(1),
        TemplateKind::Gffgg => inf(0) && always_later(1) && always(2),
        TemplateKind::Gu => (0..n).all(|i| until(i, &|k| holds(k, 0), &|k| holds(k, 1))),
        TemplateKind::Gxor => (0..n).all(|i| holds(i, 0) || holds(i + 1, 0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_closure_conditions, classify, ClosureMode};
    use crate::automata::dpa_up_membership;
    use crate::random::random_up_words;

    fn up(kind: TemplateKind, s: &str) -> UpWord {
        Alphabet::truth_vectors(kind.arity()).parse_up_word(s).unwrap()
    }

    #[test]
    fn lasso_examples() {
        // letters are bit strings, argument 0 first
        assert!(eval_path_on_lasso(TemplateKind::Until, &up(TemplateKind::Until, "10.(01)")).unwrap());
        assert!(eval_path_on_lasso(TemplateKind::Gffg, &up(TemplateKind::Gffg, "(11)")).unwrap());
        assert!(eval_path_on_lasso(TemplateKind::Gu, &up(TemplateKind::Gu, "(10.11)")).unwrap());
        assert!(!eval_path_on_lasso(TemplateKind::Gu, &up(TemplateKind::Gu, "11.(00)")).unwrap());
        assert!(eval_path_on_lasso(TemplateKind::Gxor, &up(TemplateKind::Gxor, "(1.0)")).unwrap());
        assert!(!eval_path_on_lasso(TemplateKind::Gxor, &up(TemplateKind::Gxor, "1.0.0.(1)")).unwrap());
        let wide = UpWord::new(crate::words::Word::empty(), crate::words::Word(vec![4])).unwrap();
        assert!(eval_path_on_lasso(TemplateKind::Gu, &wide).is_err());
    }

    #[test]
    fn until_p_p_is_p() {
        for w in random_up_words(4, 200, 3, 3, 11) {
            // duplicate argument 0 into argument 1
            let dup = |v: usize| (v & 1) * 3;
            let w2 = UpWord::new(
                crate::words::Word(w.prefix().letters().iter().map(|&v| dup(v)).collect()),
                crate::words::Word(w.period().letters().iter().map(|&v| dup(v)).collect()),
            )
            .unwrap();
            assert_eq!(eval_path_on_lasso(TemplateKind::Until, &w2).unwrap(), w2.at(0) & 1 == 1);
        }
    }

    #[test]
    fn dpa_agrees_with_semantics() {
        for (i, kind) in TemplateKind::ALL.into_iter().enumerate() {
            let d = template_dpa(kind);
            let a = template_algebra(kind);
            for w in random_up_words(d.alphabet.len(), 1000, 5, 5, 40 + i as u64) {
                let want = eval_path_on_lasso(kind, &w).unwrap();
                assert_eq!(dpa_up_membership(&d, &w).unwrap(), want, "{kind:?} {w:?}");
                assert_eq!(a.up_membership(&w).unwrap(), want, "{kind:?} {w:?}");
            }
        }
    }

    #[test]
    fn classification() {
        for kind in [TemplateKind::Gffg, TemplateKind::Gffgg, TemplateKind::Gu, TemplateKind::Gxor] {
            let r = classify(&template_algebra(kind)).unwrap();
            assert!(r.state_positional && r.edge_positional, "{kind:?}");
        }
        assert!(classify(&template_algebra(TemplateKind::Gffg)).unwrap().prefix_independent);
        assert_eq!(classify(&template_algebra(TemplateKind::Gxor)).unwrap().residual_count, 3);
        // Next is not one-player positional once letters sit on edges, but is
        // on state-labelled arenas such as coalition games
        assert!(!classify(&template_algebra(TemplateKind::Next)).unwrap().one_player_positional);
        for kind in TemplateKind::ALL {
            let r = check_closure_conditions(&template_algebra(kind), ClosureMode::StateBranching).unwrap();
            assert!(r.cond1 && r.cond2, "{kind:?}");
        }
    }
}

use std::collections::HashMap;

use super::{Elem, WilkeAlgebra};
use crate::error::Result;

/// Groups indices by signature; returns the class of each index, classes
/// numbered in order of their smallest member.
fn classes_by<K: Eq + std::hash::Hash>(n: usize, sig: impl Fn(usize) -> K) -> (Vec<usize>, Vec<usize>) {
    let mut seen: HashMap<K, usize> = HashMap::new();
    let mut class = Vec::with_capacity(n);
    let mut reps = Vec::new();
    for i in 0..n {
        let next = reps.len();
        let c = *seen.entry(sig(i)).or_insert(next);
        if c == next {
            reps.push(i);
        }
        class.push(c);
    }
    (class, reps)
}

/// The quotient by the syntactic congruence of the accepting set.
pub fn syntactic_quotient(a: &WilkeAlgebra) -> Result<WilkeAlgebra> {
    a.require_trim()?;
    let n = a.splus_len();
    let m = a.somega_len();
    let elems: Vec<Elem> = a.elems().collect();

    let (oclass, oreps) = classes_by(m, |x| elems.iter().map(|&p| a.accepts(a.act(p, x))).collect::<Vec<bool>>());

    let (pclass, preps) = classes_by(n, |s| {
        let mut sig = Vec::new();
        for &p in &elems {
            let ps = a.lmul(p, s);
            for &r in &elems {
                let psr = a.rmul(ps, r);
                sig.extend((0..m).map(|x| a.accepts(a.mixed(psr, x))));
            }
            for &q in &elems {
                let qs = a.lmul(q, s);
                for &r in &elems {
                    sig.push(a.accepts(a.act(p, a.omega(a.rmul(qs, r)))));
                }
            }
        }
        sig
    });

    let product = preps.iter().map(|&s| preps.iter().map(|&t| pclass[a.mul(s, t)]).collect()).collect();
    let mixed = preps.iter().map(|&s| oreps.iter().map(|&x| oclass[a.mixed(s, x)]).collect()).collect();
    let omega = preps.iter().map(|&s| oclass[a.omega(s)]).collect();
    let letter_image = a.letter_images().iter().map(|&s| pclass[s]).collect();
    let accepting = (0..oreps.len()).filter(|&c| a.accepts(oreps[c])).collect();
    WilkeAlgebra::new(
        a.alphabet().clone(),
        preps.iter().map(|&s| a.splus_names()[s].clone()).collect(),
        oreps.iter().map(|&x| a.somega_names()[x].clone()).collect(),
        product,
        mixed,
        omega,
        letter_image,
        accepting,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product_algebra;
    use crate::fixtures;

    #[test]
    fn syntactic_input_is_fixpoint() {
        for a in [fixtures::gf_a(), fixtures::fa_fb(), fixtures::abc_omega()] {
            let q = syntactic_quotient(&a).unwrap();
            assert_eq!((q.splus_len(), q.somega_len()), (a.splus_len(), a.somega_len()));
        }
    }

    #[test]
    fn redundant_element_merges() {
        // GF-a with a duplicate of "no-a" reached by the letter c
        let a = fixtures::gf_a();
        let abc = crate::words::Alphabet::from_chars("abc");
        let dup = WilkeAlgebra::new(
            abc,
            vec!["has-a".into(), "no-a".into(), "no-a'".into()],
            a.somega_names().to_vec(),
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            vec![vec![0, 0], vec![0, 1], vec![0, 1]],
            vec![0, 1, 1],
            vec![0, 1, 2],
            vec![0],
        )
        .unwrap();
        assert!(dup.validate().is_empty(), "{:?}", dup.validate());
        let q = syntactic_quotient(&dup).unwrap();
        assert_eq!(q.splus_len(), 2);
    }

    #[test]
    fn square_of_gf_a_collapses() {
        let a = fixtures::gf_a();
        let p = product_algebra(&a, &a).unwrap();
        let diag = p.with_accepting(|x, y| a.accepts(x) && a.accepts(y));
        let q = syntactic_quotient(&diag).unwrap();
        assert_eq!((q.splus_len(), q.somega_len()), (2, 2));
    }
}

use std::collections::HashMap;

use super::WilkeAlgebra;
use crate::error::{Error, Result};

/// The subalgebra of `A × B` generated by the pairs of letter images, with its
/// component maps; an accepting set is chosen afterwards.
#[derive(Clone, Debug)]
pub struct ProductAlgebra {
    tables: WilkeAlgebra,
    splus_pairs: Vec<(usize, usize)>,
    somega_pairs: Vec<(usize, usize)>,
}

impl ProductAlgebra {
    pub fn splus_pairs(&self) -> &[(usize, usize)] {
        &self.splus_pairs
    }

    pub fn somega_pairs(&self) -> &[(usize, usize)] {
        &self.somega_pairs
    }

    pub fn with_accepting(&self, accept: impl Fn(usize, usize) -> bool) -> WilkeAlgebra {
        let acc = self.somega_pairs.iter().enumerate().filter(|(_, &(x, y))| accept(x, y)).map(|(i, _)| i);
        self.tables.with_accepting(acc)
    }
}

struct Interner {
    index: HashMap<(usize, usize), usize>,
    pairs: Vec<(usize, usize)>,
}

impl Interner {
    fn new() -> Self {
        Interner { index: HashMap::new(), pairs: Vec::new() }
    }

    fn get(&mut self, p: (usize, usize)) -> (usize, bool) {
        if let Some(&i) = self.index.get(&p) {
            return (i, false);
        }
        let i = self.pairs.len();
        self.index.insert(p, i);
        self.pairs.push(p);
        (i, true)
    }
}

/// Componentwise product restricted to word images, so the result is trim.
pub fn product_algebra(a: &WilkeAlgebra, b: &WilkeAlgebra) -> Result<ProductAlgebra> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            a.alphabet().letters(),
            b.alphabet().letters()
        )));
    }
    product_with_images(a, b, a.alphabet().clone(), a.letter_images().iter().copied().zip(b.letter_images().iter().copied()).collect())
}

/// Product over an arbitrary alphabet whose letters map to the given pairs.
pub(crate) fn product_with_images(
    a: &WilkeAlgebra,
    b: &WilkeAlgebra,
    alphabet: crate::words::Alphabet,
    images: Vec<(usize, usize)>,
) -> Result<ProductAlgebra> {
    let mut plus = Interner::new();
    let mut queue = Vec::new();
    let letter_image: Vec<usize> = images
        .iter()
        .map(|&p| {
            let (i, fresh) = plus.get(p);
            if fresh {
                queue.push(i);
            }
            i
        })
        .collect();
    // closure under right multiplication by generators reaches every word image
    let mut head = 0;
    while head < queue.len() {
        let (s, t) = plus.pairs[queue[head]];
        head += 1;
        for &(ga, gb) in &images {
            let (i, fresh) = plus.get((a.mul(s, ga), b.mul(t, gb)));
            if fresh {
                queue.push(i);
            }
        }
    }
    let n = plus.pairs.len();
    let product: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let (s, t) = plus.pairs[i];
            (0..n)
                .map(|j| {
                    let (u, v) = plus.pairs[j];
                    plus.index[&(a.mul(s, u), b.mul(t, v))]
                })
                .collect()
        })
        .collect();

    let mut om = Interner::new();
    let omega: Vec<usize> = (0..n)
        .map(|i| {
            let (s, t) = plus.pairs[i];
            om.get((a.omega(s), b.omega(t))).0
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let (s, t) = plus.pairs[i];
            let (x, y) = om.pairs[omega[j]];
            om.get((a.mixed(s, x), b.mixed(t, y)));
        }
    }
    let m = om.pairs.len();
    let mixed: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let (s, t) = plus.pairs[i];
            (0..m)
                .map(|k| {
                    let (x, y) = om.pairs[k];
                    om.index[&(a.mixed(s, x), b.mixed(t, y))]
                })
                .collect()
        })
        .collect();
    let splus = plus.pairs.iter().map(|&(s, t)| format!("({},{})", a.splus_names()[s], b.splus_names()[t])).collect();
    let somega = om.pairs.iter().map(|&(x, y)| format!("({},{})", a.somega_names()[x], b.somega_names()[y])).collect();
    let tables = WilkeAlgebra::new(alphabet, splus, somega, product, mixed, omega, letter_image, vec![])?;
    Ok(ProductAlgebra { tables, splus_pairs: plus.pairs, somega_pairs: om.pairs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
}

pub fn boolean_combine(a: &WilkeAlgebra, b: &WilkeAlgebra, op: BoolOp) -> Result<WilkeAlgebra> {
    let p = product_algebra(a, b)?;
    Ok(match op {
        BoolOp::Union => p.with_accepting(|x, y| a.accepts(x) || b.accepts(y)),
        BoolOp::Intersection => p.with_accepting(|x, y| a.accepts(x) && b.accepts(y)),
    })
}

pub fn complement(a: &WilkeAlgebra) -> WilkeAlgebra {
    let acc = (0..a.somega_len()).filter(|&x| !a.accepts(x));
    a.with_accepting(acc)
}

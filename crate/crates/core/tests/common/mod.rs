#![allow(dead_code)]

use matchcost::{Alphabet, Pattern, Symbol, TextModel};

pub const TWO_CONTEXT: &str = include_str!("../../../../models/two_context.json");

pub fn alphabet(sigma: usize) -> Alphabet {
    Alphabet::from_chars(&"abcd"[..sigma]).unwrap()
}

/// Every string of length `len` over `sigma` symbols, lexicographically.
pub fn strings(sigma: usize, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = sigma.pow(len as u32);
    (0..total).map(move |mut i| {
        let mut s = vec![0; len];
        for c in s.iter_mut().rev() {
            *c = (i % sigma) as Symbol;
            i /= sigma;
        }
        s
    })
}

pub fn patterns(sigma: usize, m: usize) -> impl Iterator<Item = Pattern> {
    let a = alphabet(sigma);
    strings(sigma, m).map(move |s| Pattern::new(a.clone(), s).unwrap())
}

pub fn uniform(sigma: usize) -> TextModel {
    TextModel::iid(alphabet(sigma), &vec![1.0 / sigma as f64; sigma]).unwrap()
}

pub fn two_context() -> TextModel {
    TextModel::from_json(TWO_CONTEXT).unwrap()
}

pub fn factors(s: &[Symbol]) -> std::collections::BTreeSet<Vec<Symbol>> {
    let mut out = std::collections::BTreeSet::new();
    for i in 0..=s.len() {
        for j in i..=s.len() {
            out.insert(s[i..j].to_vec());
        }
    }
    out
}

//! Deterministic string indexes over a symbol sequence: the suffix
//! automaton (DAWG) and the factor oracle.
//!
//! Both are stored as dense per-state transition rows of alphabet size;
//! a missing transition is the FAIL state.

use crate::alphabet::Symbol;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// A deterministic automaton read symbol by symbol from its initial state.
pub trait StringIndex {
    fn initial(&self) -> usize;

    /// Successor of `state` on `symbol`, or `None` for FAIL.
    fn step(&self, state: usize, symbol: Symbol) -> Option<usize>;

    /// The source string the index was built for.
    fn source(&self) -> &[Symbol];

    /// Number of transitions taken reading `input` left to right before the
    /// first failure (the failing transition is not counted).
    fn count_transitions_before_fail(&self, input: impl IntoIterator<Item = Symbol>) -> usize
    where
        Self: Sized,
    {
        let mut state = self.initial();
        let mut count = 0;
        for c in input {
            match self.step(state, c) {
                Some(next) => {
                    state = next;
                    count += 1;
                }
                None => break,
            }
        }
        count
    }

    /// The state reached after reading all of `input`, if it never fails.
    fn run(&self, input: &[Symbol]) -> Option<usize> {
        input
            .iter()
            .try_fold(self.initial(), |state, &c| self.step(state, c))
    }
}

/// Minimal deterministic automaton accepting the suffixes of a string.
///
/// A string is read without failing iff it is a factor of the source.
#[derive(Clone, Debug)]
pub struct SuffixAutomaton {
    sigma: usize,
    source: Vec<Symbol>,
    next: Vec<u32>,
    link: Vec<u32>,
    len: Vec<usize>,
    accepting: Vec<bool>,
}

impl SuffixAutomaton {
    /// Online construction with suffix links.
    pub fn build(source: &[Symbol], sigma: usize) -> Result<Self> {
        if source.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if let Some(&c) = source.iter().find(|&&c| c as usize >= sigma) {
            return Err(Error::SymbolOutOfRange(c as usize));
        }
        let mut sa = SuffixAutomaton {
            sigma,
            source: source.to_vec(),
            next: vec![NONE; sigma],
            link: vec![NONE],
            len: vec![0],
            accepting: Vec::new(),
        };
        let mut last = 0usize;
        for &c in source {
            last = sa.extend(last, c as usize);
        }
        sa.accepting = vec![false; sa.len.len()];
        let mut p = last as u32;
        while p != NONE {
            sa.accepting[p as usize] = true;
            p = sa.link[p as usize];
        }
        Ok(sa)
    }

    fn new_state(&mut self, len: usize, link: u32) -> usize {
        self.next.extend(std::iter::repeat_n(NONE, self.sigma));
        self.len.push(len);
        self.link.push(link);
        self.len.len() - 1
    }

    fn extend(&mut self, last: usize, c: usize) -> usize {
        let sigma = self.sigma;
        let cur = self.new_state(self.len[last] + 1, NONE);
        let mut p = last as u32;
        while p != NONE && self.next[p as usize * sigma + c] == NONE {
            self.next[p as usize * sigma + c] = cur as u32;
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur] = 0;
            return cur;
        }
        let p = p as usize;
        let q = self.next[p * sigma + c] as usize;
        if self.len[p] + 1 == self.len[q] {
            self.link[cur] = q as u32;
            return cur;
        }
        let clone = self.new_state(self.len[p] + 1, self.link[q]);
        let row: Vec<u32> = self.next[q * sigma..(q + 1) * sigma].to_vec();
        self.next[clone * sigma..(clone + 1) * sigma].copy_from_slice(&row);
        let mut p = p as u32;
        while p != NONE && self.next[p as usize * sigma + c] == q as u32 {
            self.next[p as usize * sigma + c] = clone as u32;
            p = self.link[p as usize];
        }
        self.link[q] = clone as u32;
        self.link[cur] = clone as u32;
        cur
    }

    pub fn num_states(&self) -> usize {
        self.len.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.next.iter().filter(|&&t| t != NONE).count()
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    /// Whether `input` is a suffix of the source.
    pub fn accepts(&self, input: &[Symbol]) -> bool {
        self.run(input).is_some_and(|q| self.accepting[q])
    }

    /// Suffix link of `state` (`None` for the initial state).
    pub fn suffix_link(&self, state: usize) -> Option<usize> {
        let l = self.link[state];
        (l != NONE).then_some(l as usize)
    }
}

impl StringIndex for SuffixAutomaton {
    fn initial(&self) -> usize {
        0
    }

    fn step(&self, state: usize, symbol: Symbol) -> Option<usize> {
        let t = *self.next.get(state * self.sigma + symbol as usize)?;
        (t != NONE).then_some(t as usize)
    }

    fn source(&self) -> &[Symbol] {
        &self.source
    }
}

/// Factor oracle: `m + 1` states, accepting every factor of the source
/// (and possibly a few more strings). All states are non-failing.
#[derive(Clone, Debug)]
pub struct FactorOracle {
    sigma: usize,
    source: Vec<Symbol>,
    next: Vec<u32>,
    supply: Vec<u32>,
}

impl FactorOracle {
    /// Online construction with supply links.
    pub fn build(source: &[Symbol], sigma: usize) -> Result<Self> {
        if source.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if let Some(&c) = source.iter().find(|&&c| c as usize >= sigma) {
            return Err(Error::SymbolOutOfRange(c as usize));
        }
        let m = source.len();
        let mut next = vec![NONE; (m + 1) * sigma];
        let mut supply = vec![NONE; m + 1];
        for i in 1..=m {
            let c = source[i - 1] as usize;
            next[(i - 1) * sigma + c] = i as u32;
            let mut k = supply[i - 1];
            while k != NONE && next[k as usize * sigma + c] == NONE {
                next[k as usize * sigma + c] = i as u32;
                k = supply[k as usize];
            }
            supply[i] = if k == NONE {
                0
            } else {
                next[k as usize * sigma + c]
            };
        }
        Ok(FactorOracle {
            sigma,
            source: source.to_vec(),
            next,
            supply,
        })
    }

    pub fn num_states(&self) -> usize {
        self.supply.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.next.iter().filter(|&&t| t != NONE).count()
    }

    /// All defined transitions as `(from, symbol, to)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        self.next
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t != NONE)
            .map(move |(i, &t)| (i / self.sigma, (i % self.sigma) as Symbol, t as usize))
    }

    pub fn accepts(&self, input: &[Symbol]) -> bool {
        self.run(input).is_some()
    }
}

impl StringIndex for FactorOracle {
    fn initial(&self) -> usize {
        0
    }

    fn step(&self, state: usize, symbol: Symbol) -> Option<usize> {
        let t = *self.next.get(state * self.sigma + symbol as usize)?;
        (t != NONE).then_some(t as usize)
    }

    fn source(&self) -> &[Symbol] {
        &self.source
    }
}

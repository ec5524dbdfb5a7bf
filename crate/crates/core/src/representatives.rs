//! Sets of window representatives.
//!
//! A window (a length-`m` string) is represented by its longest suffix that
//! belongs to a fixed string set `R` containing the empty string. When `R`
//! is closed under taking prefixes, the representative of a shifted window
//! `a[1..] c` depends only on the representative of `a` and on `c`, which
//! yields the transition function `delta`. When in addition all windows with
//! the same representative share cost and shift under an algorithm, `R` is
//! *compatible* with it and the representatives can replace the windows in
//! the cost-counting automaton.
//!
//! Two base sets are provided: the substrings of the pattern (for BM, BMH
//! and B(N)DM) and the reversed strings read by the factor oracle of the
//! reversed pattern (for BOM).
//!
//! For BM over alphabets of four or more symbols the substring set is not
//! always compatible: when the representative is exactly the matched pattern
//! suffix, the bad-character shift can still depend on which symbol
//! mismatched in front of it. [`RepSet::compatible`] detects such
//! representatives and refines the set by one symbol of left context until
//! it is compatible.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::alphabet::{Pattern, Symbol};
use crate::error::{Error, Result};
use crate::index::StringIndex;
use crate::matchers::{Algorithm, Matcher, WindowVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    /// All substrings of the pattern, including the empty string.
    Substring,
    /// All `x` such that the factor oracle of the reversed pattern reads
    /// `x` reversed without failing.
    Oracle,
}

impl ClosureKind {
    pub fn name(self) -> &'static str {
        match self {
            ClosureKind::Substring => "substring",
            ClosureKind::Oracle => "oracle",
        }
    }

    pub fn supports(self, algorithm: Algorithm) -> bool {
        match self {
            ClosureKind::Substring => algorithm != Algorithm::Bom,
            ClosureKind::Oracle => algorithm == Algorithm::Bom,
        }
    }

    /// The base closure the reduced construction uses for `algorithm`.
    pub fn for_algorithm(algorithm: Algorithm) -> Self {
        if algorithm == Algorithm::Bom {
            ClosureKind::Oracle
        } else {
            ClosureKind::Substring
        }
    }
}

impl fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An indexed set of window representatives with its transition function
/// and, once annotated, the cost and shift of every reachable representative.
#[derive(Clone, Debug)]
pub struct RepSet {
    kind: ClosureKind,
    pattern: Pattern,
    reps: Vec<Vec<Symbol>>,
    lookup: HashMap<Vec<Symbol>, usize>,
    delta: Vec<usize>,
    base_len: usize,
    algorithm: Option<Algorithm>,
    annotations: Vec<Option<WindowVerdict>>,
}

impl RepSet {
    pub fn substring_closure(pattern: &Pattern) -> Self {
        let s = pattern.symbols();
        let mut set = BTreeSet::new();
        for i in 0..=s.len() {
            for j in i..=s.len() {
                set.insert(s[i..j].to_vec());
            }
        }
        RepSet::from_strings(ClosureKind::Substring, pattern, set, None)
    }

    pub fn oracle_closure(pattern: &Pattern) -> Self {
        let matcher = Matcher::new(pattern);
        let oracle = matcher.oracle();
        let sigma = pattern.alphabet().size();
        let mut set = BTreeSet::new();
        // The oracle is acyclic, so every path is finite. Paths spell the
        // representatives reversed.
        let mut stack = vec![(oracle.initial(), Vec::<Symbol>::new())];
        while let Some((state, path)) = stack.pop() {
            for c in 0..sigma as Symbol {
                if let Some(next) = oracle.step(state, c) {
                    let mut p = path.clone();
                    p.push(c);
                    stack.push((next, p));
                }
            }
            set.insert(path.into_iter().rev().collect());
        }
        RepSet::from_strings(ClosureKind::Oracle, pattern, set, None)
    }

    /// The base closure for `algorithm`, refined until compatible, and
    /// annotated.
    pub fn compatible(pattern: &Pattern, algorithm: Algorithm) -> Result<Self> {
        let mut reps = match ClosureKind::for_algorithm(algorithm) {
            ClosureKind::Substring => RepSet::substring_closure(pattern),
            ClosureKind::Oracle => RepSet::oracle_closure(pattern),
        };
        loop {
            let (annotations, conflicts) = reps.annotations_for(algorithm)?;
            if conflicts.is_empty() {
                reps.algorithm = Some(algorithm);
                reps.annotations = annotations;
                return Ok(reps);
            }
            reps = reps.refine(&conflicts);
        }
    }

    fn from_strings(
        kind: ClosureKind,
        pattern: &Pattern,
        set: BTreeSet<Vec<Symbol>>,
        base_len: Option<usize>,
    ) -> Self {
        let mut reps: Vec<Vec<Symbol>> = set.into_iter().collect();
        reps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let lookup: HashMap<Vec<Symbol>, usize> = reps
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let mut out = RepSet {
            kind,
            pattern: pattern.clone(),
            base_len: base_len.unwrap_or(reps.len()),
            annotations: vec![None; reps.len()],
            reps,
            lookup,
            delta: Vec::new(),
            algorithm: None,
        };
        let m = pattern.len();
        let sigma = pattern.alphabet().size();
        let mut delta = Vec::with_capacity(out.reps.len() * sigma);
        let mut buf = Vec::with_capacity(m + 1);
        for r in &out.reps {
            for c in 0..sigma as Symbol {
                buf.clear();
                buf.extend_from_slice(r);
                buf.push(c);
                let start = buf.len().saturating_sub(m);
                delta.push(out.rep_of(&buf[start..]));
            }
        }
        out.delta = delta;
        out
    }

    /// Adds one symbol of left context in front of every prefix of each
    /// conflicting representative. The result stays prefix-closed.
    fn refine(&self, conflicts: &[usize]) -> Self {
        let m = self.pattern.len();
        let sigma = self.pattern.alphabet().size();
        let mut set: BTreeSet<Vec<Symbol>> = self.reps.iter().cloned().collect();
        for &r in conflicts {
            let rep = &self.reps[r];
            for len in 0..=rep.len().min(m - 1) {
                for c in 0..sigma as Symbol {
                    let mut s = Vec::with_capacity(len + 1);
                    s.push(c);
                    s.extend_from_slice(&rep[..len]);
                    set.insert(s);
                }
            }
        }
        RepSet::from_strings(self.kind, &self.pattern, set, Some(self.base_len))
    }

    pub fn kind(&self) -> ClosureKind {
        self.kind
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Size of the unrefined base closure.
    pub fn base_len(&self) -> usize {
        self.base_len
    }

    pub fn is_refined(&self) -> bool {
        self.reps.len() != self.base_len
    }

    pub fn rep(&self, r: usize) -> &[Symbol] {
        &self.reps[r]
    }

    pub fn reps(&self) -> impl Iterator<Item = &[Symbol]> {
        self.reps.iter().map(Vec::as_slice)
    }

    pub fn contains(&self, s: &[Symbol]) -> bool {
        self.lookup.contains_key(s)
    }

    pub fn index_of(&self, s: &[Symbol]) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    /// Index of the empty representative.
    pub fn empty(&self) -> usize {
        self.lookup[&Vec::new()]
    }

    /// Index of the longest suffix of `a` in the set.
    pub fn rep_of(&self, a: &[Symbol]) -> usize {
        (0..=a.len())
            .find_map(|start| self.lookup.get(&a[start..]).copied())
            .expect("the empty string is always a representative")
    }

    pub fn delta(&self, r: usize, c: Symbol) -> usize {
        self.delta[r * self.pattern.alphabet().size() + c as usize]
    }

    pub fn algorithm(&self) -> Option<Algorithm> {
        self.algorithm
    }

    pub fn annotation(&self, r: usize) -> Option<WindowVerdict> {
        self.annotations[r]
    }

    /// Annotates every representative that occurs as the representative of
    /// some window with that window's verdict under `algorithm`.
    ///
    /// Fails if the closure kind does not suit the algorithm, or if windows
    /// sharing a representative disagree.
    pub fn annotate(mut self, algorithm: Algorithm) -> Result<Self> {
        let (annotations, conflicts) = self.annotations_for(algorithm)?;
        if let Some(&r) = conflicts.first() {
            let verdicts = self.witness_verdicts(&Matcher::new(&self.pattern), algorithm, r)?;
            let alpha = self.pattern.alphabet();
            let (w1, v1) = &verdicts[0];
            let (w2, v2) = verdicts
                .iter()
                .find(|(_, v)| v != v1)
                .expect("conflict has two verdicts");
            return Err(Error::CompatibilityViolation {
                rep: alpha.decode(&self.reps[r]),
                first: format!("{} {v1}", alpha.decode(w1)),
                second: format!("{} {v2}", alpha.decode(w2)),
            });
        }
        self.algorithm = Some(algorithm);
        self.annotations = annotations;
        Ok(self)
    }

    #[allow(clippy::type_complexity)]
    fn annotations_for(
        &self,
        algorithm: Algorithm,
    ) -> Result<(Vec<Option<WindowVerdict>>, Vec<usize>)> {
        if !self.kind.supports(algorithm) {
            return Err(Error::IncompatibleClosure {
                algorithm: algorithm.name(),
                closure: self.kind.name(),
            });
        }
        let matcher = Matcher::new(&self.pattern);
        let mut annotations = vec![None; self.reps.len()];
        let mut conflicts = Vec::new();
        for (r, slot) in annotations.iter_mut().enumerate() {
            let verdicts = self.witness_verdicts(&matcher, algorithm, r)?;
            if let Some((_, first)) = verdicts.first() {
                if verdicts.iter().any(|(_, v)| v != first) {
                    conflicts.push(r);
                }
                *slot = Some(*first);
            }
        }
        Ok((annotations, conflicts))
    }

    /// One witness window per blocking left symbol of representative `r`,
    /// with its verdict. Empty iff no window has `r` as representative.
    fn witness_verdicts(
        &self,
        matcher: &Matcher,
        algorithm: Algorithm,
        r: usize,
    ) -> Result<Vec<(Vec<Symbol>, WindowVerdict)>> {
        let m = self.pattern.len();
        let rep = &self.reps[r];
        if rep.len() > m {
            return Ok(Vec::new());
        }
        if rep.len() == m {
            return Ok(vec![(rep.clone(), matcher.verdict(algorithm, rep)?)]);
        }
        let sigma = self.pattern.alphabet().size() as Symbol;
        let mut out = Vec::new();
        for c in 0..sigma {
            let mut s = Vec::with_capacity(m);
            s.push(c);
            s.extend_from_slice(rep);
            if self.contains(&s) {
                continue;
            }
            if let Some(w) = self.extend_left(s, m) {
                debug_assert_eq!(self.rep_of(&w), r);
                let v = matcher.verdict(algorithm, &w)?;
                out.push((w, v));
            }
        }
        Ok(out)
    }

    /// Extends `s` to the left up to length `m` without creating a suffix in
    /// the set longer than the original representative. Depth-first; `None`
    /// if every extension is blocked.
    fn extend_left(&self, s: Vec<Symbol>, m: usize) -> Option<Vec<Symbol>> {
        if s.len() == m {
            return Some(s);
        }
        let sigma = self.pattern.alphabet().size() as Symbol;
        for c in 0..sigma {
            let mut t = Vec::with_capacity(m);
            t.push(c);
            t.extend_from_slice(&s);
            if !self.contains(&t) {
                if let Some(w) = self.extend_left(t, m) {
                    return Some(w);
                }
            }
        }
        None
    }
}

//! Deterministic arithmetic automata counting character accesses.
//!
//! A state is a pair `(label, k)`: `label` stands for the last `m` symbols
//! read (the full window in the naive encoding, its representative in the
//! reduced one) and `k` is the number of symbols still to read before the
//! current window is complete. Entering a state with `k == 0` emits the cost
//! of the window; every other state emits 0. The value of a text is the sum
//! of emissions along its run, starting from 0.
//!
//! Only states reachable from the start state `(S, m)` are stored.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{Pattern, Symbol};
use crate::error::{Error, Result};
use crate::matchers::{Algorithm, Matcher, WindowVerdict};
use crate::representatives::RepSet;

/// Default cap on `σ^m (m + 1)` for [`Daa::naive`].
pub const DEFAULT_NAIVE_GUARD: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    /// States are (window, counter) pairs.
    Naive,
    /// States are (representative, counter) pairs.
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaaState {
    /// The window or representative string.
    pub label: Vec<Symbol>,
    /// Index of the representative in its [`RepSet`] (reduced encoding).
    pub rep: Option<usize>,
    pub counter: usize,
    pub emission: usize,
}

#[derive(Clone, Debug)]
pub struct Daa {
    pattern: Pattern,
    algorithm: Algorithm,
    encoding: Encoding,
    states: Vec<DaaState>,
    next: Vec<u32>,
    full_size: u128,
}

/// Label-independent part of the construction: breadth-first closure over
/// `(label, counter)` pairs.
fn explore<L, F, V, E>(
    m: usize,
    sigma: usize,
    start: L,
    mut step: F,
    mut verdict: V,
    mut to_state: E,
) -> Result<(Vec<DaaState>, Vec<u32>)>
where
    L: Clone + Eq + std::hash::Hash,
    F: FnMut(&L, Symbol) -> L,
    V: FnMut(&L) -> Result<WindowVerdict>,
    E: FnMut(&L, usize, usize) -> DaaState,
{
    let mut ids: HashMap<(L, usize), usize> = HashMap::new();
    let mut labels: Vec<(L, usize)> = Vec::new();
    let mut states = Vec::new();
    let mut next: Vec<u32> = Vec::new();
    let mut queue = VecDeque::new();

    ids.insert((start.clone(), m), 0);
    labels.push((start.clone(), m));
    states.push(to_state(&start, m, 0));
    queue.push_back(0usize);

    while let Some(id) = queue.pop_front() {
        let (label, k) = labels[id].clone();
        let counter = if k > 0 {
            k - 1
        } else {
            verdict(&label)?.shift - 1
        };
        let row_start = next.len();
        next.resize(row_start + sigma, 0);
        for c in 0..sigma as Symbol {
            let succ = step(&label, c);
            let key = (succ, counter);
            let target = match ids.get(&key) {
                Some(&t) => t,
                None => {
                    let emission = if counter == 0 {
                        verdict(&key.0)?.cost
                    } else {
                        0
                    };
                    states.push(to_state(&key.0, counter, emission));
                    labels.push(key.clone());
                    ids.insert(key, states.len() - 1);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                }
            };
            next[row_start + c as usize] = target as u32;
        }
    }
    // Rows were appended in BFS order, which equals id order.
    Ok((states, next))
}

impl Daa {
    /// The direct encoding over all windows. Exponential in `m`; refuses to
    /// build when `σ^m (m + 1)` exceeds `guard`.
    pub fn naive(pattern: &Pattern, algorithm: Algorithm, guard: u128) -> Result<Self> {
        let m = pattern.len();
        let sigma = pattern.alphabet().size();
        let full_size = (sigma as u128)
            .checked_pow(m as u32)
            .and_then(|w| w.checked_mul(m as u128 + 1))
            .unwrap_or(u128::MAX);
        if full_size > guard {
            return Err(Error::GuardExceeded {
                what: "naive automaton states",
                needed: full_size,
                limit: guard,
            });
        }
        let matcher = Matcher::new(pattern);
        let mut cache: HashMap<Vec<Symbol>, WindowVerdict> = HashMap::new();
        let (states, next) = explore(
            m,
            sigma,
            pattern.symbols().to_vec(),
            |w: &Vec<Symbol>, c| {
                let mut s = w[1..].to_vec();
                s.push(c);
                s
            },
            |w| match cache.get(w) {
                Some(&v) => Ok(v),
                None => {
                    let v = matcher.verdict(algorithm, w)?;
                    cache.insert(w.clone(), v);
                    Ok(v)
                }
            },
            |w, counter, emission| DaaState {
                label: w.clone(),
                rep: None,
                counter,
                emission,
            },
        )?;
        Ok(Daa {
            pattern: pattern.clone(),
            algorithm,
            encoding: Encoding::Naive,
            states,
            next,
            full_size,
        })
    }

    /// The reduced encoding over an annotated representative set.
    pub fn reduced(pattern: &Pattern, algorithm: Algorithm, reps: &RepSet) -> Result<Self> {
        if reps.pattern() != pattern {
            return Err(Error::InvalidArgument(
                "representative set was built for a different pattern".into(),
            ));
        }
        if reps.algorithm() != Some(algorithm) {
            return Err(Error::InvalidArgument(format!(
                "representative set is not annotated for {algorithm}"
            )));
        }
        let m = pattern.len();
        let sigma = pattern.alphabet().size();
        let annotation = |r: &usize| {
            reps.annotation(*r)
                .ok_or_else(|| Error::MissingAnnotation(pattern.alphabet().decode(reps.rep(*r))))
        };
        let (states, next) = explore(
            m,
            sigma,
            reps.rep_of(pattern.symbols()),
            |&r, c| reps.delta(r, c),
            annotation,
            |&r, counter, emission| DaaState {
                label: reps.rep(r).to_vec(),
                rep: Some(r),
                counter,
                emission,
            },
        )?;
        Ok(Daa {
            pattern: pattern.clone(),
            algorithm,
            encoding: Encoding::Reduced,
            states,
            next,
            full_size: reps.len() as u128 * (m as u128 + 1),
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn sigma(&self) -> usize {
        self.pattern.alphabet().size()
    }

    pub fn start(&self) -> usize {
        0
    }

    /// Number of reachable (stored) states.
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Size of the full state space `|labels| (m + 1)`, reachable or not.
    pub fn full_size(&self) -> u128 {
        self.full_size
    }

    pub fn state(&self, q: usize) -> &DaaState {
        &self.states[q]
    }

    pub fn states(&self) -> &[DaaState] {
        &self.states
    }

    pub fn next(&self, q: usize, c: Symbol) -> usize {
        self.next[q * self.sigma() + c as usize] as usize
    }

    pub fn emission(&self, q: usize) -> usize {
        self.states[q].emission
    }

    /// Finds the state with the given label and counter.
    pub fn find(&self, label: &[Symbol], counter: usize) -> Option<usize> {
        self.states
            .iter()
            .position(|s| s.label == label && s.counter == counter)
    }

    /// Total cost of `text`: the sum of emissions along its run.
    pub fn value(&self, text: &[Symbol]) -> Result<usize> {
        self.pattern.alphabet().check(text)?;
        let mut q = self.start();
        let mut v = 0;
        for &c in text {
            q = self.next(q, c);
            v += self.emission(q);
        }
        Ok(v)
    }

    /// Line-oriented listing: one line per state with its id, label (`ε`
    /// for the empty string), counter, successor per symbol and emission.
    pub fn dump(&self) -> String {
        let alpha = self.pattern.alphabet();
        let mut out = String::new();
        let _ = write!(out, "# id\tlabel\tk");
        for &c in alpha.symbols() {
            let _ = write!(out, "\t{c}");
        }
        let _ = writeln!(out, "\temission");
        for (q, s) in self.states.iter().enumerate() {
            let _ = write!(out, "{q}\t{}\t{}", label_string(alpha, &s.label), s.counter);
            for c in 0..self.sigma() as Symbol {
                let _ = write!(out, "\t{}", self.next(q, c));
            }
            let _ = writeln!(out, "\t{}", s.emission);
        }
        out
    }
}

/// Human-readable label, `ε` for the empty string.
pub fn label_string(alphabet: &crate::Alphabet, label: &[Symbol]) -> String {
    if label.is_empty() {
        "ε".to_string()
    } else {
        alphabet.decode(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::matchers::run_matcher;

    fn setup(s: &str) -> (Alphabet, Pattern) {
        let a = Alphabet::from_chars("ab").unwrap();
        let p = Pattern::parse(&a, s).unwrap();
        (a, p)
    }

    fn reduced(p: &Pattern, alg: Algorithm) -> Daa {
        Daa::reduced(p, alg, &RepSet::compatible(p, alg).unwrap()).unwrap()
    }

    #[test]
    fn naive_aa_state_bound() {
        let (_, p) = setup("aa");
        let d = Daa::naive(&p, Algorithm::Bmh, DEFAULT_NAIVE_GUARD).unwrap();
        assert_eq!(d.full_size(), 12);
        assert!(d.num_states() <= 12);
    }

    #[test]
    fn naive_run_on_abbaa() {
        let (a, p) = setup("aa");
        let d = Daa::naive(&p, Algorithm::Bmh, DEFAULT_NAIVE_GUARD).unwrap();
        let mut q = d.start();
        let mut visited = Vec::new();
        for c in a.encode("abbaa").unwrap() {
            q = d.next(q, c);
            visited.push((a.decode(&d.state(q).label), d.state(q).counter));
        }
        let expected = [("aa", 1), ("ab", 0), ("bb", 1), ("ba", 0), ("aa", 0)];
        let expected: Vec<_> = expected.iter().map(|&(s, k)| (s.to_string(), k)).collect();
        assert_eq!(visited, expected);
        assert_eq!(d.value(&a.encode("abbaa").unwrap()).unwrap(), 5);
    }

    #[test]
    fn emissions_only_at_counter_zero() {
        let (_, p) = setup("ab");
        for alg in Algorithm::ALL {
            let d = Daa::naive(&p, alg, DEFAULT_NAIVE_GUARD).unwrap();
            for s in d.states() {
                assert_eq!(s.emission == 0, s.counter > 0, "{alg} {s:?}");
            }
        }
    }

    #[test]
    fn reduced_bmh_aa_edge_list() {
        let (a, p) = setup("aa");
        let d = reduced(&p, Algorithm::Bmh);
        assert_eq!(d.full_size(), 9);
        assert_eq!(d.num_states(), 7);
        let id = |s: &str, k| d.find(&a.encode(s).unwrap(), k).unwrap();
        assert_eq!(d.next(id("", 1), 0), id("a", 0));
        assert_eq!(d.next(id("aa", 2), 1), id("", 1));
        assert!(d.find(&a.encode("a").unwrap(), 2).is_none());
        assert!(d.find(&[], 2).is_none());
    }

    #[test]
    fn value_examples() {
        let (a, p) = setup("aa");
        let d = reduced(&p, Algorithm::Bmh);
        assert_eq!(d.value(&a.encode("abbaa").unwrap()).unwrap(), 5);
        assert_eq!(d.value(&[]).unwrap(), 0);
        assert!(matches!(d.value(&[0, 5]), Err(Error::SymbolOutOfRange(5))));
    }

    #[test]
    fn naive_guard() {
        let a = Alphabet::from_chars("acgt").unwrap();
        let p = Pattern::parse(&a, "acgtacgtacgt").unwrap();
        assert!(matches!(
            Daa::naive(&p, Algorithm::Bm, DEFAULT_NAIVE_GUARD),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn reduced_rejects_foreign_rep_sets() {
        let (_, p) = setup("aa");
        let (_, q) = setup("ab");
        let reps = RepSet::compatible(&q, Algorithm::Bmh).unwrap();
        assert!(Daa::reduced(&p, Algorithm::Bmh, &reps).is_err());
        let reps = RepSet::compatible(&p, Algorithm::Bm).unwrap();
        assert!(Daa::reduced(&p, Algorithm::Bmh, &reps).is_err());
        let unannotated = RepSet::substring_closure(&p);
        assert!(Daa::reduced(&p, Algorithm::Bmh, &unannotated).is_err());
    }

    #[test]
    fn naive_and_reduced_agree_with_matcher_on_random_texts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for s in ["aab", "abab", "bbab"] {
            let (_, p) = setup(s);
            for alg in Algorithm::ALL {
                let naive = Daa::naive(&p, alg, DEFAULT_NAIVE_GUARD).unwrap();
                let red = reduced(&p, alg);
                for _ in 0..100 {
                    let n = rng.gen_range(0..20);
                    let t: Vec<Symbol> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                    let expect = run_matcher(alg, &p, &t).total_cost;
                    assert_eq!(naive.value(&t).unwrap(), expect);
                    assert_eq!(red.value(&t).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn dump_lists_every_state() {
        let (_, p) = setup("aa");
        let d = reduced(&p, Algorithm::Bmh);
        let dump = d.dump();
        assert_eq!(dump.lines().count(), 8);
        assert!(dump.starts_with("# id\tlabel\tk\ta\tb\temission\n0\taa\t2\t"));
    }
}

//! Per-window cost and shift functions of the four window-based matchers,
//! and a reference executor that slides windows over a concrete text.
//!
//! Windows are compared right to left. For a window `w` and pattern `s` of
//! length `m`, the *mismatch index* `i` is the smallest `i >= 1` with
//! `w[m - i] != s[m - i]`.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Pattern, Symbol};
use crate::error::{Error, Result};
use crate::index::{FactorOracle, StringIndex, SuffixAutomaton};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Boyer-Moore: bad-character and (strong) good-suffix rules.
    Bm,
    /// Boyer-Moore-Horspool: bad-character rule on the last window symbol.
    Bmh,
    /// Backward (nondeterministic) DAWG matching. BDM and BNDM share cost
    /// and shift functions; the deterministic suffix automaton is used.
    Bndm,
    /// Backward oracle matching.
    Bom,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Bm,
        Algorithm::Bmh,
        Algorithm::Bndm,
        Algorithm::Bom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bm => "bm",
            Algorithm::Bmh => "bmh",
            Algorithm::Bndm => "bndm",
            Algorithm::Bom => "bom",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bm" => Ok(Algorithm::Bm),
            "bmh" | "horspool" => Ok(Algorithm::Bmh),
            "bndm" | "bdm" => Ok(Algorithm::Bndm),
            "bom" => Ok(Algorithm::Bom),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm {other:?}"
            ))),
        }
    }
}

/// Cost (character accesses) and shift of one window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WindowVerdict {
    pub cost: usize,
    pub shift: usize,
}

impl WindowVerdict {
    pub fn new(cost: usize, shift: usize) -> Self {
        WindowVerdict { cost, shift }
    }
}

impl fmt::Display for WindowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(cost {}, shift {})", self.cost, self.shift)
    }
}

fn check_window(pattern: &Pattern, window: &[Symbol]) -> Result<()> {
    if window.len() != pattern.len() {
        return Err(Error::LengthMismatch {
            expected: pattern.len(),
            got: window.len(),
        });
    }
    Ok(())
}

fn check_mismatch_index(m: usize, i: usize, window: &[Symbol]) -> Result<()> {
    if i == 0 || i > m || window.len() != m {
        return Err(Error::MismatchIndexOutOfRange { index: i, m });
    }
    Ok(())
}

/// The mismatch index of `window`, or `None` on a full match.
fn mismatch_index(pattern: &[Symbol], window: &[Symbol]) -> Option<usize> {
    let m = pattern.len();
    (1..=m).find(|&i| window[m - i] != pattern[m - i])
}

/// Right-to-left comparison cost shared by BM and BMH.
pub fn bm_cost(pattern: &Pattern, window: &[Symbol]) -> Result<usize> {
    check_window(pattern, window)?;
    Ok(mismatch_index(pattern.symbols(), window).unwrap_or(pattern.len()))
}

/// Bad-character shift for a mismatch at window position `m - i`: align the
/// mismatched symbol with its rightmost occurrence in `s[..m - i]`.
pub fn bad_character(pattern: &Pattern, window: &[Symbol], i: usize) -> Result<usize> {
    let m = pattern.len();
    check_mismatch_index(m, i, window)?;
    let s = pattern.symbols();
    let c = window[m - i];
    Ok((1..=m - i)
        .find(|&k| s[m - i - k] == c)
        .unwrap_or(m - i + 1))
}

/// Good-suffix shift for a mismatch at window position `m - i`.
///
/// Realigns the matched suffix `w[m-i+1..]` with its rightmost other
/// occurrence in `s[..m-1]` whose preceding symbol differs from the pattern
/// symbol `s[m-i]` that just mismatched (an occurrence at position 0 has no
/// preceding symbol and always qualifies). Failing that, aligns the longest
/// pattern prefix that is a suffix of the matched part; failing that, shifts
/// by `m`.
///
/// Comparing against the window symbol `w[m-i]` instead would exclude
/// exactly the occurrences that can still match and lets the search skip
/// occurrences (S = ab on text aab).
pub fn good_suffix(pattern: &Pattern, window: &[Symbol], i: usize) -> Result<usize> {
    let m = pattern.len();
    check_mismatch_index(m, i, window)?;
    let s = pattern.symbols();
    let matched = &window[m - i + 1..];
    let mismatched = s[m - i];
    let reoccurrence = (0..=m - i)
        .rev()
        .find(|&k| &s[k..k + i - 1] == matched && (k == 0 || s[k - 1] != mismatched));
    if let Some(k) = reoccurrence {
        return Ok(m - i - k + 1);
    }
    let prefix = (0..i.saturating_sub(1))
        .rev()
        .find(|&k| s[..=k] == window[m - k - 1..]);
    Ok(match prefix {
        Some(k) => m - k - 1,
        None => m,
    })
}

pub fn bm_verdict(pattern: &Pattern, window: &[Symbol]) -> Result<WindowVerdict> {
    check_window(pattern, window)?;
    let m = pattern.len();
    Ok(match mismatch_index(pattern.symbols(), window) {
        Some(i) => WindowVerdict::new(
            i,
            bad_character(pattern, window, i)?.max(good_suffix(pattern, window, i)?),
        ),
        None => WindowVerdict::new(m, m - pattern.longest_proper_border()),
    })
}

pub fn bmh_verdict(pattern: &Pattern, window: &[Symbol]) -> Result<WindowVerdict> {
    Ok(WindowVerdict::new(
        bm_cost(pattern, window)?,
        bad_character(pattern, window, 1)?,
    ))
}

/// B(N)DM verdict. `sa` must be the suffix automaton of the reversed pattern.
pub fn bdm_verdict(
    pattern: &Pattern,
    window: &[Symbol],
    sa: &SuffixAutomaton,
) -> Result<WindowVerdict> {
    check_window(pattern, window)?;
    if sa.source() != pattern.reversed() {
        return Err(Error::IndexMismatch);
    }
    let m = pattern.len();
    let mut state = sa.initial();
    let mut read = 0;
    // Longest proper pattern prefix seen as a window suffix; 0 always counts.
    let mut prefix = 0;
    for t in 1..=m {
        match sa.step(state, window[m - t]) {
            Some(q) => {
                state = q;
                read = t;
                if t < m && sa.is_accepting(q) {
                    prefix = t;
                }
            }
            None => break,
        }
    }
    let cost = if window == pattern.symbols() {
        m
    } else {
        read + 1
    };
    Ok(WindowVerdict::new(cost, m - prefix))
}

/// BOM verdict. `fo` must be the factor oracle of the reversed pattern.
pub fn bom_verdict(
    pattern: &Pattern,
    window: &[Symbol],
    fo: &FactorOracle,
) -> Result<WindowVerdict> {
    check_window(pattern, window)?;
    if fo.source() != pattern.reversed() {
        return Err(Error::IndexMismatch);
    }
    let m = pattern.len();
    if window == pattern.symbols() {
        return Ok(WindowVerdict::new(m, 1));
    }
    let read = fo.count_transitions_before_fail(window.iter().rev().copied());
    Ok(WindowVerdict::new(read + 1, m - read))
}

/// One examined window of a [`MatchTrace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub start: usize,
    pub verdict: WindowVerdict,
    pub is_match: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchTrace {
    pub entries: Vec<TraceEntry>,
    pub total_cost: usize,
}

impl MatchTrace {
    pub fn match_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().filter(|e| e.is_match).map(|e| e.start)
    }
}

/// A pattern together with the indexes its verdicts need.
#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Pattern,
    suffix_automaton: SuffixAutomaton,
    oracle: FactorOracle,
}

impl Matcher {
    pub fn new(pattern: &Pattern) -> Self {
        let rev = pattern.reversed();
        let sigma = pattern.alphabet().size();
        // Pattern construction guarantees a nonempty in-range sequence.
        let suffix_automaton = SuffixAutomaton::build(&rev, sigma).expect("valid pattern");
        let oracle = FactorOracle::build(&rev, sigma).expect("valid pattern");
        Matcher {
            pattern: pattern.clone(),
            suffix_automaton,
            oracle,
        }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn suffix_automaton(&self) -> &SuffixAutomaton {
        &self.suffix_automaton
    }

    pub fn oracle(&self) -> &FactorOracle {
        &self.oracle
    }

    pub fn verdict(&self, algorithm: Algorithm, window: &[Symbol]) -> Result<WindowVerdict> {
        match algorithm {
            Algorithm::Bm => bm_verdict(&self.pattern, window),
            Algorithm::Bmh => bmh_verdict(&self.pattern, window),
            Algorithm::Bndm => bdm_verdict(&self.pattern, window, &self.suffix_automaton),
            Algorithm::Bom => bom_verdict(&self.pattern, window, &self.oracle),
        }
    }

    /// Slides windows over `text` from position 0, applying each verdict's
    /// shift, until the next window would overhang the end of the text.
    pub fn run(&self, algorithm: Algorithm, text: &[Symbol]) -> MatchTrace {
        let m = self.pattern.len();
        let mut trace = MatchTrace::default();
        let mut start = 0;
        while start + m <= text.len() {
            let window = &text[start..start + m];
            let verdict = self
                .verdict(algorithm, window)
                .expect("window length equals pattern length");
            trace.total_cost += verdict.cost;
            trace.entries.push(TraceEntry {
                start,
                verdict,
                is_match: window == self.pattern.symbols(),
            });
            start += verdict.shift;
        }
        trace
    }
}

/// Convenience wrapper around [`Matcher::run`].
pub fn run_matcher(algorithm: Algorithm, pattern: &Pattern, text: &[Symbol]) -> MatchTrace {
    Matcher::new(pattern).run(algorithm, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn pat(a: &Alphabet, s: &str) -> Pattern {
        Pattern::parse(a, s).unwrap()
    }

    fn win(a: &Alphabet, s: &str) -> Vec<Symbol> {
        a.encode(s).unwrap()
    }

    #[test]
    fn bm_cost_examples() {
        let a = ab();
        let s = pat(&a, "aa");
        assert_eq!(bm_cost(&s, &win(&a, "aa")).unwrap(), 2);
        assert_eq!(bm_cost(&s, &win(&a, "ab")).unwrap(), 1);
        let abc = Alphabet::from_chars("abc").unwrap();
        assert_eq!(bm_cost(&pat(&abc, "abc"), &win(&abc, "abc")).unwrap(), 3);
        assert!(matches!(
            bm_cost(&s, &win(&a, "aab")),
            Err(Error::LengthMismatch {
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn bad_character_examples() {
        let a = ab();
        let s = pat(&a, "aa");
        assert_eq!(bad_character(&s, &win(&a, "ab"), 1).unwrap(), 2);
        assert_eq!(bad_character(&s, &win(&a, "ba"), 2).unwrap(), 1);
        assert_eq!(
            bad_character(&pat(&a, "aaa"), &win(&a, "aab"), 1).unwrap(),
            3
        );
        assert!(bad_character(&s, &win(&a, "ab"), 0).is_err());
        assert!(bad_character(&s, &win(&a, "ab"), 3).is_err());
    }

    #[test]
    fn good_suffix_examples() {
        let a = ab();
        // The empty suffix at k = 1 is preceded by s_0 = a = s_1, so only
        // k = 0 qualifies.
        assert_eq!(good_suffix(&pat(&a, "aa"), &win(&a, "ab"), 1).unwrap(), 2);
        assert_eq!(good_suffix(&pat(&a, "ab"), &win(&a, "aa"), 1).unwrap(), 1);
        assert_eq!(good_suffix(&pat(&a, "aa"), &win(&a, "ba"), 2).unwrap(), 1);
        assert_eq!(good_suffix(&pat(&a, "ab"), &win(&a, "bb"), 2).unwrap(), 2);
        assert!(good_suffix(&pat(&a, "ab"), &win(&a, "bb"), 3).is_err());
    }

    #[test]
    fn good_suffix_prefix_rule() {
        // S = abab, window ?bab with mismatch at position 0 (i = 4): the
        // matched suffix "bab" does not reoccur, but prefix "ab" aligns.
        let a = ab();
        assert_eq!(
            good_suffix(&pat(&a, "abab"), &win(&a, "bbab"), 4).unwrap(),
            2
        );
    }

    #[test]
    fn bm_verdict_examples() {
        let a = ab();
        let s = pat(&a, "aa");
        assert_eq!(
            bm_verdict(&s, &win(&a, "ab")).unwrap(),
            WindowVerdict::new(1, 2)
        );
        assert_eq!(
            bm_verdict(&s, &win(&a, "ba")).unwrap(),
            WindowVerdict::new(2, 1)
        );
        assert_eq!(
            bm_verdict(&s, &win(&a, "aa")).unwrap(),
            WindowVerdict::new(2, 1)
        );
    }

    #[test]
    fn bmh_verdict_examples() {
        let a = ab();
        let s = pat(&a, "aa");
        assert_eq!(
            bmh_verdict(&s, &win(&a, "bb")).unwrap(),
            WindowVerdict::new(1, 2)
        );
        assert_eq!(
            bmh_verdict(&s, &win(&a, "ba")).unwrap(),
            WindowVerdict::new(2, 1)
        );
        let xy = Alphabet::from_chars("abxy").unwrap();
        assert_eq!(
            bmh_verdict(&pat(&xy, "ab"), &win(&xy, "xy")).unwrap(),
            WindowVerdict::new(1, 2)
        );
    }

    #[test]
    fn bdm_and_bom_verdict_examples() {
        let a = ab();
        let m = Matcher::new(&pat(&a, "aa"));
        for alg in [Algorithm::Bndm, Algorithm::Bom] {
            assert_eq!(
                m.verdict(alg, &win(&a, "ab")).unwrap(),
                WindowVerdict::new(1, 2)
            );
            assert_eq!(
                m.verdict(alg, &win(&a, "ba")).unwrap(),
                WindowVerdict::new(2, 1)
            );
            assert_eq!(
                m.verdict(alg, &win(&a, "aa")).unwrap(),
                WindowVerdict::new(2, 1)
            );
        }
    }

    #[test]
    fn index_for_another_pattern_is_rejected() {
        let a = ab();
        let other = Matcher::new(&pat(&a, "ab"));
        let s = pat(&a, "aa");
        assert_eq!(
            bdm_verdict(&s, &win(&a, "aa"), other.suffix_automaton()),
            Err(Error::IndexMismatch)
        );
        assert_eq!(
            bom_verdict(&s, &win(&a, "aa"), other.oracle()),
            Err(Error::IndexMismatch)
        );
    }

    #[test]
    fn bmh_trace_on_abbaa() {
        let a = ab();
        let trace = run_matcher(Algorithm::Bmh, &pat(&a, "aa"), &win(&a, "abbaa"));
        let starts: Vec<_> = trace.entries.iter().map(|e| e.start).collect();
        assert_eq!(starts, vec![0, 2, 3]);
        assert_eq!(trace.total_cost, 5);
        assert_eq!(trace.match_positions().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn short_texts() {
        let a = ab();
        for alg in Algorithm::ALL {
            let t = run_matcher(alg, &pat(&a, "aa"), &win(&a, "a"));
            assert_eq!(t, MatchTrace::default());
        }
        assert_eq!(
            run_matcher(Algorithm::Bmh, &pat(&a, "aa"), &win(&a, "aaa")).total_cost,
            4
        );
        let bm = run_matcher(Algorithm::Bm, &pat(&a, "aa"), &win(&a, "aa"));
        assert_eq!(bm.entries.len(), 1);
        assert!(bm.entries[0].is_match);
        assert_eq!(bm.total_cost, 2);
    }

    #[test]
    fn algorithm_names_parse() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert_eq!("BDM".parse::<Algorithm>().unwrap(), Algorithm::Bndm);
        assert!("kmp".parse::<Algorithm>().is_err());
    }
}

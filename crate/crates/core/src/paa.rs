//! Probabilistic arithmetic automata induced by a cost-counting DAA and a
//! text model, and the exact distribution of the accumulated cost.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::daa::Daa;
use crate::error::{Error, Result};
use crate::textmodel::TextModel;

/// Relative tolerance used to decide whether two horizon estimates of the
/// long-run access rate agree.
pub const RATE_CONVERGENCE_TOLERANCE: f64 = 1e-3;

/// Product of a DAA and a text model, restricted to states reachable with
/// positive probability.
#[derive(Clone, Debug)]
pub struct Paa {
    pattern_len: usize,
    states: Vec<(usize, usize)>,
    emission: Vec<usize>,
    succ: Vec<Vec<(usize, f64)>>,
}

impl Paa {
    /// Transition probability from `(q, c)` to `(q', c')` is the total
    /// probability of symbols `a` with `delta(q, a) = q'` and context move
    /// `c -a-> c'`.
    pub fn induce(daa: &Daa, model: &TextModel) -> Result<Self> {
        let alpha = daa.pattern().alphabet();
        if alpha != model.alphabet() {
            return Err(Error::AlphabetMismatch(
                alpha.to_string(),
                model.alphabet().to_string(),
            ));
        }
        let start = (daa.start(), model.start());
        let mut ids = HashMap::from([(start, 0usize)]);
        let mut states = vec![start];
        let mut succ = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let (q, c) = states[id];
            let mut row: Vec<(usize, f64)> = Vec::new();
            for mv in model.moves(c) {
                let key = (daa.next(q, mv.symbol), mv.to);
                let target = *ids.entry(key).or_insert_with(|| {
                    states.push(key);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                });
                match row.iter_mut().find(|(t, _)| *t == target) {
                    Some((_, p)) => *p += mv.p,
                    None => row.push((target, mv.p)),
                }
            }
            succ.push(row);
        }
        let emission = states.iter().map(|&(q, _)| daa.emission(q)).collect();
        Ok(Paa {
            pattern_len: daa.pattern().len(),
            states,
            emission,
            succ,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    /// The `(DAA state, context)` pair behind product state `i`.
    pub fn state(&self, i: usize) -> (usize, usize) {
        self.states[i]
    }

    pub fn emission(&self, i: usize) -> usize {
        self.emission[i]
    }

    pub fn successors(&self, i: usize) -> &[(usize, f64)] {
        &self.succ[i]
    }

    /// Finds the product state for a DAA state and context.
    pub fn find(&self, daa_state: usize, context: usize) -> Option<usize> {
        self.states.iter().position(|&s| s == (daa_state, context))
    }

    /// Exact distribution of the total cost on a random text of length `n`.
    ///
    /// Holds, per product state, the mass of every accumulated value as a
    /// dense band `[offset, offset + len)`.
    pub fn distribution(&self, n: usize) -> Distribution {
        let k = self.states.len();
        let mut cur: Vec<Option<Band>> = vec![None; k];
        cur[self.start()] = Some(Band {
            offset: 0,
            mass: vec![1.0],
        });
        let mut ranges: Vec<Option<(usize, usize)>> = vec![None; k];
        for _ in 0..n {
            ranges.fill(None);
            for (s, band) in cur.iter().enumerate() {
                let Some(band) = band else { continue };
                for &(t, _) in &self.succ[s] {
                    let lo = band.offset + self.emission[t];
                    let hi = lo + band.mass.len();
                    ranges[t] = Some(match ranges[t] {
                        Some((a, b)) => (a.min(lo), b.max(hi)),
                        None => (lo, hi),
                    });
                }
            }
            let mut next: Vec<Option<Band>> = ranges
                .iter()
                .map(|r| {
                    r.map(|(lo, hi)| Band {
                        offset: lo,
                        mass: vec![0.0; hi - lo],
                    })
                })
                .collect();
            for (s, band) in cur.iter().enumerate() {
                let Some(band) = band else { continue };
                for &(t, p) in &self.succ[s] {
                    let target = next[t].as_mut().expect("range computed above");
                    let at = band.offset + self.emission[t] - target.offset;
                    for (dst, &src) in target.mass[at..at + band.mass.len()]
                        .iter_mut()
                        .zip(&band.mass)
                    {
                        *dst += p * src;
                    }
                }
            }
            cur = next;
        }
        let mut pmf = BTreeMap::new();
        for band in cur.iter().flatten() {
            for (i, &p) in band.mass.iter().enumerate() {
                if p != 0.0 {
                    *pmf.entry((band.offset + i) as u64).or_insert(0.0) += p;
                }
            }
        }
        Distribution { n, pmf }
    }

    /// Expected total cost after each of `0..=steps` symbols.
    pub fn expectations(&self, steps: usize) -> Vec<f64> {
        let mut mass = vec![0.0; self.states.len()];
        mass[self.start()] = 1.0;
        let mut next = vec![0.0; self.states.len()];
        let mut out = Vec::with_capacity(steps + 1);
        let mut acc = 0.0;
        out.push(acc);
        for _ in 0..steps {
            next.fill(0.0);
            for (s, &w) in mass.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                for &(t, p) in &self.succ[s] {
                    next[t] += w * p;
                }
            }
            acc += next
                .iter()
                .zip(&self.emission)
                .map(|(&w, &e)| w * e as f64)
                .sum::<f64>();
            out.push(acc);
            std::mem::swap(&mut mass, &mut next);
        }
        out
    }

    /// Finite-horizon estimate of the long-run accesses per text symbol,
    /// `(E[X_2N] - E[X_N]) / N`. This is a heuristic: it is compared with the
    /// same estimate over `[N/2, N]` and flagged as not converged when the
    /// two differ by more than [`RATE_CONVERGENCE_TOLERANCE`].
    pub fn mean_rate(&self, horizon: usize) -> Result<RateEstimate> {
        let m = self.pattern_len;
        if horizon < 2 * m {
            return Err(Error::InvalidArgument(format!(
                "horizon {horizon} must be at least twice the pattern length {m}"
            )));
        }
        let e = self.expectations(2 * horizon);
        let half = horizon / 2;
        let estimate = (e[2 * horizon] - e[horizon]) / horizon as f64;
        let previous = (e[horizon] - e[half]) / (horizon - half) as f64;
        Ok(RateEstimate {
            horizon,
            estimate,
            previous_estimate: previous,
            expectation_half: e[half],
            expectation_n: e[horizon],
            expectation_2n: e[2 * horizon],
            converged: (estimate - previous).abs() <= RATE_CONVERGENCE_TOLERANCE,
        })
    }
}

#[derive(Clone, Debug)]
struct Band {
    offset: usize,
    mass: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateEstimate {
    pub horizon: usize,
    pub estimate: f64,
    pub previous_estimate: f64,
    pub expectation_half: f64,
    pub expectation_n: f64,
    pub expectation_2n: f64,
    pub converged: bool,
}

/// Probability mass function of a nonnegative integer cost.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    /// Text length.
    pub n: usize,
    pub pmf: BTreeMap<u64, f64>,
}

impl Distribution {
    pub fn point(n: usize, value: u64) -> Self {
        Distribution {
            n,
            pmf: BTreeMap::from([(value, 1.0)]),
        }
    }

    pub fn probability(&self, value: u64) -> f64 {
        self.pmf.get(&value).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.pmf.values().sum()
    }

    pub fn min_value(&self) -> Option<u64> {
        self.pmf.keys().next().copied()
    }

    pub fn max_value(&self) -> Option<u64> {
        self.pmf.keys().next_back().copied()
    }

    pub fn mean(&self) -> f64 {
        self.pmf.iter().map(|(&v, &p)| v as f64 * p).sum()
    }

    /// `(mean, variance)`; the variance is clamped at 0 against rounding.
    pub fn moments(&self) -> (f64, f64) {
        let mean = self.mean();
        let second: f64 = self.pmf.iter().map(|(&v, &p)| (v as f64).powi(2) * p).sum();
        (mean, (second - mean * mean).max(0.0))
    }

    /// Total variation distance `½ Σ |p(v) − q(v)|`.
    pub fn tv_distance(&self, other: &Distribution) -> f64 {
        let mut sum = 0.0;
        for (v, &p) in &self.pmf {
            sum += (p - other.probability(*v)).abs();
        }
        for (v, &q) in &other.pmf {
            if !self.pmf.contains_key(v) {
                sum += q.abs();
            }
        }
        sum / 2.0
    }
}

//! Finite-memory text models.
//!
//! A model moves between finitely many contexts and emits one symbol per
//! move: from context `c` it emits `a` and enters `c'` with probability
//! `phi(c, a, c')`. I.i.d. texts, order-`r` Markov chains and
//! symbol-emitting HMMs are all special cases.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Tolerance on the normalization of probability rows.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// One outgoing move of a context.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Move {
    pub symbol: Symbol,
    pub to: usize,
    pub p: f64,
}

#[derive(Clone, Debug)]
pub struct TextModel {
    alphabet: Alphabet,
    start: usize,
    rows: Vec<Vec<Move>>,
    labels: Vec<String>,
}

fn check_probability(what: impl FnOnce() -> String, p: f64) -> Result<()> {
    if p.is_nan() || p < 0.0 || p.is_infinite() {
        return Err(Error::NegativeProbability { what: what(), p });
    }
    Ok(())
}

fn check_sum(what: impl FnOnce() -> String, sum: f64) -> Result<()> {
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::Normalization { what: what(), sum });
    }
    Ok(())
}

impl TextModel {
    /// Builds a model from `(from, symbol, to, p)` entries. Repeated
    /// `(from, symbol, to)` entries are summed; zero entries are dropped.
    pub fn new(
        alphabet: Alphabet,
        contexts: usize,
        start: usize,
        transitions: impl IntoIterator<Item = (usize, Symbol, usize, f64)>,
    ) -> Result<Self> {
        if contexts == 0 {
            return Err(Error::InvalidModel(
                "at least one context is required".into(),
            ));
        }
        if start >= contexts {
            return Err(Error::InvalidModel(format!(
                "start context {start} out of range 0..{contexts}"
            )));
        }
        let mut merged: Vec<BTreeMap<(Symbol, usize), f64>> = vec![BTreeMap::new(); contexts];
        for (from, symbol, to, p) in transitions {
            if from >= contexts || to >= contexts {
                return Err(Error::InvalidModel(format!(
                    "transition {from} -> {to} references a context outside 0..{contexts}"
                )));
            }
            alphabet.check(&[symbol])?;
            check_probability(|| format!("context {from}"), p)?;
            *merged[from].entry((symbol, to)).or_insert(0.0) += p;
        }
        let mut rows = Vec::with_capacity(contexts);
        for (c, row) in merged.into_iter().enumerate() {
            let sum: f64 = row.values().sum();
            check_sum(|| format!("context {c}"), sum)?;
            rows.push(
                row.into_iter()
                    .filter(|&(_, p)| p > 0.0)
                    .map(|((symbol, to), p)| Move { symbol, to, p })
                    .collect(),
            );
        }
        Ok(TextModel {
            alphabet,
            start,
            rows,
            labels: (0..contexts).map(|c| format!("c{c}")).collect(),
        })
    }

    /// Independent symbols with the given per-symbol probabilities.
    pub fn iid(alphabet: Alphabet, probs: &[f64]) -> Result<Self> {
        if probs.len() != alphabet.size() {
            return Err(Error::InvalidModel(format!(
                "{} probabilities for {} symbols",
                probs.len(),
                alphabet.size()
            )));
        }
        for (i, &p) in probs.iter().enumerate() {
            check_probability(|| format!("symbol {:?}", alphabet.symbol(i as Symbol)), p)?;
        }
        check_sum(|| "symbol distribution".into(), probs.iter().sum())?;
        TextModel::new(
            alphabet,
            1,
            0,
            probs
                .iter()
                .enumerate()
                .map(|(a, &p)| (0, a as Symbol, 0, p)),
        )
    }

    /// Order-`r` Markov chain.
    ///
    /// `initial` is the distribution of the first `r` symbols, indexed by the
    /// block read as a base-σ number (first symbol most significant).
    /// `conditional[h * σ + a]` is the probability of `a` after history `h`
    /// (same indexing). Histories shorter than `r` become burn-in contexts
    /// whose next-symbol probabilities are conditionals of `initial`. Only
    /// contexts reachable with positive probability are kept.
    pub fn markov(
        alphabet: Alphabet,
        order: usize,
        initial: &[f64],
        conditional: &[f64],
    ) -> Result<Self> {
        let sigma = alphabet.size();
        if order == 0 {
            return Err(Error::InvalidModel(
                "Markov order must be at least 1".into(),
            ));
        }
        let blocks = sigma
            .checked_pow(order as u32)
            .filter(|&b| b <= 1 << 20)
            .ok_or_else(|| Error::InvalidModel(format!("order {order} is too large")))?;
        if initial.len() != blocks || conditional.len() != blocks * sigma {
            return Err(Error::InvalidModel(format!(
                "order {order} over {sigma} symbols needs {blocks} initial and {} conditional entries",
                blocks * sigma
            )));
        }
        for &p in initial.iter().chain(conditional) {
            check_probability(|| "Markov table".into(), p)?;
        }
        check_sum(|| "initial distribution".into(), initial.iter().sum())?;
        for h in 0..blocks {
            check_sum(
                || format!("history {}", decode_block(&alphabet, h, order)),
                conditional[h * sigma..(h + 1) * sigma].iter().sum(),
            )?;
        }

        // Mass of all initial blocks starting with `prefix`.
        let prefix_mass = |prefix: &[Symbol]| -> f64 {
            let span = sigma.pow((order - prefix.len()) as u32);
            let base = prefix.iter().fold(0, |acc, &a| acc * sigma + a as usize) * span;
            initial[base..base + span].iter().sum()
        };

        let mut ids: HashMap<Vec<Symbol>, usize> = HashMap::new();
        let mut histories: Vec<Vec<Symbol>> = vec![Vec::new()];
        ids.insert(Vec::new(), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut transitions = Vec::new();
        while let Some(c) = queue.pop_front() {
            let h = histories[c].clone();
            let probs: Vec<f64> = if h.len() < order {
                let total = prefix_mass(&h);
                (0..sigma as Symbol)
                    .map(|a| {
                        let mut ha = h.clone();
                        ha.push(a);
                        prefix_mass(&ha) / total
                    })
                    .collect()
            } else {
                let idx = h.iter().fold(0, |acc, &a| acc * sigma + a as usize);
                conditional[idx * sigma..(idx + 1) * sigma].to_vec()
            };
            for (a, p) in probs.into_iter().enumerate() {
                if p <= 0.0 {
                    continue;
                }
                let mut next = h.clone();
                next.push(a as Symbol);
                if next.len() > order {
                    next.remove(0);
                }
                let to = *ids.entry(next.clone()).or_insert_with(|| {
                    histories.push(next);
                    queue.push_back(histories.len() - 1);
                    histories.len() - 1
                });
                transitions.push((c, a as Symbol, to, p));
            }
        }
        let labels = histories.iter().map(|h| alphabet.decode(h)).collect();
        let mut model = TextModel::new(alphabet, histories.len(), 0, transitions)?;
        model.labels = labels;
        Ok(model)
    }

    /// Parses an inline model specification:
    ///
    /// * `iid:a=0.3,b=0.7`
    /// * `markov:<initial>|<conditional>`, e.g.
    ///   `markov:a=0.5,b=0.5|aa=0.9,ab=0.1,ba=0.5,bb=0.5`. Initial keys are
    ///   the first `r` symbols, conditional keys are a length-`r` history
    ///   followed by the next symbol.
    ///
    /// The alphabet is the symbols in order of first appearance.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidModel(format!("{msg} in {spec:?}"));
        let parse_pairs = |body: &str| -> Result<Vec<(Vec<char>, f64)>> {
            body.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|pair| {
                    let (k, v) = pair
                        .split_once('=')
                        .ok_or_else(|| bad(format!("expected key=probability, got {pair:?}")))?;
                    let p: f64 = v
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("bad probability {v:?}")))?;
                    Ok((k.trim().chars().collect(), p))
                })
                .collect()
        };
        let infer_alphabet = |keys: &[&[(Vec<char>, f64)]]| -> Result<Alphabet> {
            let mut seen = Vec::new();
            for &c in keys
                .iter()
                .flat_map(|ks| ks.iter())
                .flat_map(|(k, _)| k.iter())
            {
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            Alphabet::new(seen)
        };

        if let Some(body) = spec.strip_prefix("iid:") {
            let pairs = parse_pairs(body)?;
            if pairs.iter().any(|(k, _)| k.len() != 1) {
                return Err(bad("i.i.d. keys must be single symbols".into()));
            }
            let alphabet = infer_alphabet(&[&pairs])?;
            let mut probs = vec![0.0; alphabet.size()];
            for (k, p) in &pairs {
                probs[alphabet.index(k[0])? as usize] += p;
            }
            TextModel::iid(alphabet, &probs)
        } else if let Some(body) = spec.strip_prefix("markov:") {
            let (init, cond) = body
                .split_once('|')
                .ok_or_else(|| bad("expected <initial>|<conditional>".into()))?;
            let init = parse_pairs(init)?;
            let cond = parse_pairs(cond)?;
            let order = cond
                .first()
                .map(|(k, _)| k.len().saturating_sub(1))
                .ok_or_else(|| bad("empty conditional table".into()))?;
            if order == 0
                || cond.iter().any(|(k, _)| k.len() != order + 1)
                || init.iter().any(|(k, _)| k.len() != order)
            {
                return Err(bad(
                    "initial keys need length r and conditional keys length r + 1".into(),
                ));
            }
            let alphabet = infer_alphabet(&[&init, &cond])?;
            let sigma = alphabet.size();
            let blocks = sigma
                .checked_pow(order as u32)
                .filter(|&b| b <= 1 << 20)
                .ok_or_else(|| bad(format!("order {order} is too large")))?;
            let index = |k: &[char]| -> Result<usize> {
                k.iter()
                    .try_fold(0, |acc, &c| Ok(acc * sigma + alphabet.index(c)? as usize))
            };
            let mut initial = vec![0.0; blocks];
            for (k, p) in &init {
                initial[index(k)?] += p;
            }
            let mut conditional = vec![0.0; blocks * sigma];
            let mut present = vec![false; blocks];
            for (k, p) in &cond {
                conditional[index(k)?] += p;
                present[index(&k[..order])?] = true;
            }
            if let Some(h) = present.iter().position(|&x| !x) {
                return Err(bad(format!(
                    "missing conditional row for history {:?}",
                    decode_block(&alphabet, h, order)
                )));
            }
            TextModel::markov(alphabet, order, &initial, &conditional)
        } else {
            Err(bad("expected an iid: or markov: prefix".into()))
        }
    }

    /// Parses a model document (JSON).
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidModel(format!("malformed model document: {e}")))?;
        TextModel::from_document(&doc)
    }

    pub fn from_document(doc: &ModelDocument) -> Result<Self> {
        let chars = doc
            .alphabet
            .iter()
            .map(|s| single_char(s))
            .collect::<Result<Vec<char>>>()?;
        let alphabet = Alphabet::new(chars)?;
        let transitions = doc
            .transitions
            .iter()
            .map(|t| {
                let symbol = alphabet.index(single_char(&t.symbol)?)?;
                Ok((t.from, symbol, t.to, t.p))
            })
            .collect::<Result<Vec<_>>>()?;
        TextModel::new(alphabet, doc.contexts, doc.start, transitions)
    }

    pub fn to_document(&self) -> ModelDocument {
        ModelDocument {
            alphabet: self
                .alphabet
                .symbols()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            contexts: self.rows.len(),
            start: self.start,
            transitions: self
                .rows
                .iter()
                .enumerate()
                .flat_map(|(from, row)| {
                    row.iter().map(move |mv| TransitionDocument {
                        from,
                        symbol: self.alphabet.symbol(mv.symbol).to_string(),
                        to: mv.to,
                        p: mv.p,
                    })
                })
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_contexts(&self) -> usize {
        self.rows.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn moves(&self, context: usize) -> &[Move] {
        &self.rows[context]
    }

    pub fn label(&self, context: usize) -> &str {
        &self.labels[context]
    }

    /// `phi(from, symbol, to)`.
    pub fn phi(&self, from: usize, symbol: Symbol, to: usize) -> f64 {
        self.rows[from]
            .iter()
            .filter(|mv| mv.symbol == symbol && mv.to == to)
            .map(|mv| mv.p)
            .sum()
    }

    /// Probability that a random text starts with `x` (forward algorithm
    /// over contexts).
    pub fn text_probability(&self, x: &[Symbol]) -> Result<f64> {
        self.alphabet.check(x)?;
        let mut alpha = vec![0.0; self.rows.len()];
        alpha[self.start] = 1.0;
        let mut next = vec![0.0; self.rows.len()];
        for &a in x {
            next.fill(0.0);
            for (c, &mass) in alpha.iter().enumerate() {
                if mass == 0.0 {
                    continue;
                }
                for mv in self.rows[c].iter().filter(|mv| mv.symbol == a) {
                    next[mv.to] += mass * mv.p;
                }
            }
            std::mem::swap(&mut alpha, &mut next);
        }
        Ok(alpha.iter().sum())
    }

    /// Draws a text of length `n` using `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<Symbol> {
        let mut context = self.start;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let row = &self.rows[context];
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            // Rows sum to 1 only up to rounding; fall back to the last move.
            let mv = row
                .iter()
                .find(|mv| {
                    acc += mv.p;
                    u < acc
                })
                .unwrap_or_else(|| row.last().expect("rows are nonempty"));
            out.push(mv.symbol);
            context = mv.to;
        }
        out
    }

    /// Deterministic sampling from a seed.
    pub fn sample_text(&self, n: usize, seed: u64) -> Vec<Symbol> {
        self.sample(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

impl fmt::Display for TextModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} contexts over {}, start {}",
            self.rows.len(),
            self.alphabet,
            self.labels[self.start]
        )
    }
}

fn single_char(s: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::InvalidModel(format!(
            "symbol {s:?} must be a single character"
        ))),
    }
}

fn decode_block(alphabet: &Alphabet, mut idx: usize, len: usize) -> String {
    let sigma = alphabet.size();
    let mut out = vec![0 as Symbol; len];
    for slot in out.iter_mut().rev() {
        *slot = (idx % sigma) as Symbol;
        idx /= sigma;
    }
    alphabet.decode(&out)
}

/// On-disk model document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub alphabet: Vec<String>,
    pub contexts: usize,
    pub start: usize,
    pub transitions: Vec<TransitionDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDocument {
    pub from: usize,
    pub symbol: String,
    pub to: usize,
    pub p: f64,
}

//! Ground truths: exhaustive enumeration of all texts of a given length and
//! seeded Monte Carlo sampling, both replaying the matchers directly.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Pattern, Symbol};
use crate::error::{Error, Result};
use crate::matchers::{Algorithm, Matcher};
use crate::paa::Distribution;
use crate::textmodel::TextModel;

/// Default maximum number of texts [`brute_distribution`] enumerates.
pub const DEFAULT_BRUTE_GUARD: u128 = 1 << 20;

fn check_alphabet(pattern: &Pattern, model: &TextModel) -> Result<()> {
    if pattern.alphabet() != model.alphabet() {
        return Err(Error::AlphabetMismatch(
            pattern.alphabet().to_string(),
            model.alphabet().to_string(),
        ));
    }
    Ok(())
}

/// Exact cost distribution by enumerating every text of length `n` in
/// lexicographic order of symbol indices.
pub fn brute_distribution(
    pattern: &Pattern,
    algorithm: Algorithm,
    model: &TextModel,
    n: usize,
    guard: u128,
) -> Result<Distribution> {
    check_alphabet(pattern, model)?;
    let sigma = pattern.alphabet().size();
    let needed = (sigma as u128)
        .checked_pow(n as u32)
        .filter(|&k| k <= guard)
        .ok_or(Error::GuardExceeded {
            what: "texts to enumerate",
            needed: (sigma as u128).saturating_pow(n.min(u32::MAX as usize) as u32),
            limit: guard,
        })?;
    let matcher = Matcher::new(pattern);
    let mut pmf = BTreeMap::new();
    let mut text: Vec<Symbol> = vec![0; n];
    for _ in 0..needed {
        let p = model.text_probability(&text)?;
        if p > 0.0 {
            let cost = matcher.run(algorithm, &text).total_cost as u64;
            *pmf.entry(cost).or_insert(0.0) += p;
        }
        // Odometer increment, last position fastest.
        for c in text.iter_mut().rev() {
            *c += 1;
            if (*c as usize) < sigma {
                break;
            }
            *c = 0;
        }
    }
    Ok(Distribution { n, pmf })
}

/// Sampled cost counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    pub n: usize,
    pub samples: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl EmpiricalDistribution {
    pub fn pmf(&self) -> Distribution {
        let total = self.samples as f64;
        Distribution {
            n: self.n,
            pmf: self
                .counts
                .iter()
                .map(|(&v, &c)| (v, c as f64 / total))
                .collect(),
        }
    }
}

/// Runs the matcher on `samples` texts drawn from `model` with a ChaCha8
/// stream seeded by `seed`.
pub fn monte_carlo(
    pattern: &Pattern,
    algorithm: Algorithm,
    model: &TextModel,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<EmpiricalDistribution> {
    check_alphabet(pattern, model)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let matcher = Matcher::new(pattern);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let text = model.sample(n, &mut rng);
        *counts
            .entry(matcher.run(algorithm, &text).total_cost as u64)
            .or_insert(0) += 1;
    }
    Ok(EmpiricalDistribution { n, samples, counts })
}

pub fn tv_distance(a: &Distribution, b: &Distribution) -> f64 {
    a.tv_distance(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn uniform() -> TextModel {
        TextModel::iid(Alphabet::from_chars("ab").unwrap(), &[0.5, 0.5]).unwrap()
    }

    fn aa(model: &TextModel) -> Pattern {
        Pattern::parse(model.alphabet(), "aa").unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let m = uniform();
        let d = brute_distribution(&aa(&m), Algorithm::Bmh, &m, 3, DEFAULT_BRUTE_GUARD).unwrap();
        assert_eq!(d.pmf, BTreeMap::from([(1, 0.5), (3, 0.25), (4, 0.25)]));
        let d = brute_distribution(&aa(&m), Algorithm::Bmh, &m, 1, DEFAULT_BRUTE_GUARD).unwrap();
        assert_eq!(d.pmf, BTreeMap::from([(0, 1.0)]));
    }

    #[test]
    fn enumeration_under_two_context_model() {
        let m = TextModel::from_json(crate::textmodel::tests::TWO_CONTEXT).unwrap();
        let d = brute_distribution(&aa(&m), Algorithm::Bmh, &m, 2, DEFAULT_BRUTE_GUARD).unwrap();
        assert!((d.probability(1) - 0.36).abs() < 1e-12);
        assert!((d.probability(2) - 0.64).abs() < 1e-12);
    }

    #[test]
    fn enumeration_guard() {
        let m = uniform();
        let err = brute_distribution(&aa(&m), Algorithm::Bm, &m, 21, DEFAULT_BRUTE_GUARD);
        assert!(matches!(err, Err(Error::GuardExceeded { .. })));
        assert!(brute_distribution(&aa(&m), Algorithm::Bm, &m, 4, 16).is_ok());
        assert!(brute_distribution(&aa(&m), Algorithm::Bm, &m, 5, 16).is_err());
    }

    #[test]
    fn sampling_examples() {
        let m = uniform();
        let p = aa(&m);
        let exact = brute_distribution(&p, Algorithm::Bmh, &m, 3, DEFAULT_BRUTE_GUARD).unwrap();
        let e = monte_carlo(&p, Algorithm::Bmh, &m, 3, 100_000, 1).unwrap();
        assert_eq!(e.counts.values().sum::<u64>(), e.samples);
        assert!(tv_distance(&e.pmf(), &exact) <= 0.02);

        let one = monte_carlo(&p, Algorithm::Bmh, &m, 3, 1, 9).unwrap();
        assert_eq!(one.pmf().pmf.len(), 1);
        assert_eq!(one.pmf().total(), 1.0);

        assert_eq!(
            monte_carlo(&p, Algorithm::Bom, &m, 10, 500, 42).unwrap(),
            monte_carlo(&p, Algorithm::Bom, &m, 10, 500, 42).unwrap()
        );
        assert!(monte_carlo(&p, Algorithm::Bom, &m, 10, 0, 42).is_err());
    }

    #[test]
    fn sampling_converges() {
        let m = TextModel::from_json(crate::textmodel::tests::TWO_CONTEXT).unwrap();
        let p = Pattern::parse(m.alphabet(), "aba").unwrap();
        let exact = brute_distribution(&p, Algorithm::Bm, &m, 10, DEFAULT_BRUTE_GUARD).unwrap();
        let small = monte_carlo(&p, Algorithm::Bm, &m, 10, 1_000, 5)
            .unwrap()
            .pmf();
        let large = monte_carlo(&p, Algorithm::Bm, &m, 10, 100_000, 5)
            .unwrap()
            .pmf();
        assert!(tv_distance(&large, &exact) < tv_distance(&small, &exact));
    }
}

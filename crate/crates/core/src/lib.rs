//! Exact distributions of the number of text-character accesses made by
//! window-based exact string matching algorithms (Boyer-Moore, Horspool,
//! backward DAWG matching and backward oracle matching) on random texts.
//!
//! The pipeline is:
//!
//! 1. per-window cost and shift functions ([`matchers`]), driven by string
//!    indexes over the reversed pattern ([`index`]);
//! 2. a set of window representatives grouping windows with equal cost and
//!    shift ([`representatives`]);
//! 3. a deterministic arithmetic automaton summing costs over a text
//!    ([`daa`]);
//! 4. its product with a finite-memory text model ([`textmodel`]), and a
//!    dynamic program over the product yielding the exact distribution
//!    ([`paa`]).
//!
//! [`oracle`] holds the brute-force and Monte Carlo ground truths used to
//! validate all of the above.

pub mod alphabet;
pub mod daa;
pub mod error;
pub mod index;
pub mod matchers;
pub mod oracle;
pub mod output;
pub mod paa;
pub mod representatives;
pub mod textmodel;

pub use alphabet::{Alphabet, Pattern, Symbol};
pub use daa::Daa;
pub use error::{Error, Result};
pub use matchers::{Algorithm, MatchTrace, Matcher, WindowVerdict};
pub use paa::{Distribution, Paa};
pub use representatives::{ClosureKind, RepSet};
pub use textmodel::TextModel;

/// Builds the reduced automaton for `pattern` and `algorithm`, induces the
/// product with `model`, and returns the exact cost distribution for texts
/// of length `n`.
pub fn analyze(
    pattern: &Pattern,
    algorithm: Algorithm,
    model: &TextModel,
    n: usize,
) -> Result<Distribution> {
    let reps = RepSet::compatible(pattern, algorithm)?;
    let daa = Daa::reduced(pattern, algorithm, &reps)?;
    let paa = Paa::induce(&daa, model)?;
    Ok(paa.distribution(n))
}
